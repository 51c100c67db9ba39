//! Sign distributions, real phase structures, twisted edges and the GF(2)
//! spaces of admissible and dividing twist sets.

mod realpart;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub use realpart::{count_components_direct, real_part, ComponentKind, ComponentReport, Piece, RealComponent, RealPart, Stratum};

use crate::curve::{EdgeId, PrimitiveCycle, TropicalCurve, VertexId};
use crate::error::{Error, Result};
use crate::gf2::{solve_affine, Gf2Matrix, Gf2Subspace, Gf2Vector, PhaseLine, Solution, Z2Pair};
use crate::num::{det, Lattice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignDistribution {
    signs: BTreeMap<Lattice, i8>,
}

impl SignDistribution {
    pub fn new(signs: BTreeMap<Lattice, i8>) -> Result<Self> {
        if let Some((p, s)) = signs.iter().find(|(_, s)| **s != 1 && **s != -1) {
            return Err(Error::Validation(format!("sign at {p} is {s}, expected +1 or -1")));
        }
        Ok(SignDistribution { signs })
    }

    pub fn constant(curve: &TropicalCurve, s: i8) -> Self {
        SignDistribution { signs: curve.dual.points.iter().map(|&p| (p, s)).collect() }
    }

    pub fn from_fn(curve: &TropicalCurve, f: impl Fn(Lattice) -> i8) -> Self {
        SignDistribution { signs: curve.dual.points.iter().map(|&p| (p, f(p))).collect() }
    }

    /// Checks that every lattice point of the Newton polygon has a sign.
    pub fn validate(&self, curve: &TropicalCurve) -> Result<()> {
        match curve.dual.points.iter().find(|p| !self.signs.contains_key(p)) {
            Some(p) => Err(Error::Validation(format!("sign distribution is missing {p}"))),
            None => Ok(()),
        }
    }

    pub fn get(&self, p: Lattice) -> Result<i8> {
        self.signs.get(&p).copied().ok_or(Error::UnknownPoint(p))
    }

    pub fn signs(&self) -> &BTreeMap<Lattice, i8> {
        &self.signs
    }

    pub fn negate(&self) -> Self {
        SignDistribution { signs: self.signs.iter().map(|(p, s)| (*p, -s)).collect() }
    }

    /// The symmetric re-signing `v ↦ δ(ε(v))`.
    pub fn resign(&self, eps: Z2Pair) -> Self {
        SignDistribution { signs: self.signs.iter().map(|(p, s)| (*p, if eps.pairing(*p) { -s } else { *s })).collect() }
    }

    pub fn is_constant(&self) -> bool {
        let mut it = self.signs.values();
        match it.next() {
            Some(first) => it.all(|s| s == first),
            None => true,
        }
    }
}

/// `δ(ε(v)) = (−1)^{ε·v} δ(v)`.
pub fn extend_sign(delta: &SignDistribution, eps: Z2Pair, v: Lattice) -> Result<i8> {
    let s = delta.get(v)?;
    Ok(if eps.pairing(v) { -s } else { s })
}

/// One phase line per edge of the curve, indexed by edge id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPhaseStructure {
    lines: Vec<PhaseLine>,
}

impl RealPhaseStructure {
    /// Builds and validates a structure from explicit lines.
    pub fn new(curve: &TropicalCurve, lines: Vec<PhaseLine>) -> Result<Self> {
        let s = RealPhaseStructure { lines };
        s.validate(curve)?;
        Ok(s)
    }

    pub fn line(&self, e: EdgeId) -> PhaseLine {
        self.lines[e]
    }

    pub fn lines(&self) -> &[PhaseLine] {
        &self.lines
    }

    pub fn translate(&self, t: Z2Pair) -> Self {
        RealPhaseStructure { lines: self.lines.iter().map(|l| l.translate(t)).collect() }
    }

    pub fn equivalent_up_to_symmetry(&self, o: &RealPhaseStructure) -> bool {
        Z2Pair::ALL.iter().any(|&t| &self.translate(t) == o)
    }

    /// Direction and vertex conditions.
    pub fn validate(&self, curve: &TropicalCurve) -> Result<()> {
        if self.lines.len() != curve.edges.len() {
            return Err(Error::InvalidPhase(format!("{} lines for {} edges", self.lines.len(), curve.edges.len())));
        }
        for (e, ed) in curve.edges.iter().enumerate() {
            if self.lines[e].dir() != ed.dir_mod2() {
                return Err(Error::InvalidPhase(format!("edge {e}: line direction differs from edge direction mod 2")));
            }
        }
        for (v, vx) in curve.vertices.iter().enumerate() {
            for &f in &vx.edges {
                for eps in self.lines[f].elements() {
                    let others = vx.edges.iter().filter(|&&g| g != f && self.lines[g].contains(eps)).count();
                    if others != 1 {
                        return Err(Error::InvalidPhase(format!("vertex {v}: {eps} lies on {others} other edges")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The element of (Z/2)² lying on no edge line at vertex `v`.
    pub fn missing_at(&self, curve: &TropicalCurve, v: VertexId) -> Z2Pair {
        let vx = &curve.vertices[v];
        *Z2Pair::ALL
            .iter()
            .find(|&&eps| vx.edges.iter().all(|&f| !self.lines[f].contains(eps)))
            .expect("vertex condition leaves exactly one element uncovered")
    }

    /// The edge at `v`, other than `e`, whose line contains `eps`.
    pub fn partner(&self, curve: &TropicalCurve, v: VertexId, e: EdgeId, eps: Z2Pair) -> EdgeId {
        *curve.vertices[v]
            .edges
            .iter()
            .find(|&&g| g != e && self.lines[g].contains(eps))
            .expect("vertex condition gives a partner edge")
    }
}

/// Lines at a vertex determined by its uncovered element.
fn lines_from_missing(curve: &TropicalCurve, v: VertexId, missing: Z2Pair) -> [(EdgeId, PhaseLine); 3] {
    curve.vertices[v].edges.map(|f| {
        let d = curve.edges[f].dir_mod2();
        let others: Vec<Z2Pair> = Z2Pair::ALL.into_iter().filter(|&x| x != missing && x != missing + d).collect();
        (f, PhaseLine::from_pair(others[0], others[1]))
    })
}

pub fn phase_from_signs(curve: &TropicalCurve, delta: &SignDistribution) -> Result<RealPhaseStructure> {
    delta.validate(curve)?;
    let lines = curve
        .edges
        .iter()
        .map(|ed| {
            let (p, q) = ed.dual;
            let opposite: Vec<Z2Pair> = Z2Pair::ALL
                .into_iter()
                .filter(|&eps| extend_sign(delta, eps, p).unwrap() != extend_sign(delta, eps, q).unwrap())
                .collect();
            assert_eq!(opposite.len(), 2, "primitive dual edge has two sign-changing copies");
            PhaseLine::from_pair(opposite[0], opposite[1])
        })
        .collect();
    let s = RealPhaseStructure { lines };
    debug_assert!(s.validate(curve).is_ok());
    Ok(s)
}

/// Signs on the dual triangle of `v` inducing the phase lines of its three
/// edges, normalized to `+1` at the first triangle corner.
pub fn cell_signs(curve: &TropicalCurve, phase: &RealPhaseStructure, v: VertexId) -> BTreeMap<Lattice, i8> {
    let cell = curve.vertices[v].cell;
    let line_of = |signs: &BTreeMap<Lattice, i8>, p: Lattice, q: Lattice| {
        let flip = |eps: Z2Pair, x: Lattice| if eps.pairing(x) { -signs[&x] } else { signs[&x] };
        let opp: Vec<Z2Pair> = Z2Pair::ALL.into_iter().filter(|&eps| flip(eps, p) != flip(eps, q)).collect();
        PhaseLine::from_pair(opp[0], opp[1])
    };
    for k in 0..4 {
        let signs: BTreeMap<Lattice, i8> =
            [(cell[0], 1), (cell[1], if k & 1 == 0 { 1 } else { -1 }), (cell[2], if k & 2 == 0 { 1 } else { -1 })].into();
        if curve.vertices[v].edges.iter().all(|&f| {
            let (p, q) = curve.edges[f].dual;
            line_of(&signs, p, q) == phase.line(f)
        }) {
            return signs;
        }
    }
    unreachable!("a valid phase structure is induced by signs on each triangle")
}

/// Recovers a sign distribution inducing `phase`, normalized to `+1` at the
/// smallest lattice point.
pub fn signs_from_phase(curve: &TropicalCurve, phase: &RealPhaseStructure) -> Result<SignDistribution> {
    let mut signs: BTreeMap<Lattice, i8> = BTreeMap::new();
    let start = curve.dual.points[0];
    signs.insert(start, 1);
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        let sp = signs[&p];
        for (e, de) in curve.dual.edges.iter().enumerate() {
            if !de.has(p) {
                continue;
            }
            let q = de.other(p);
            let sq = if phase.line(e).contains(Z2Pair::ZERO) { -sp } else { sp };
            match signs.get(&q) {
                Some(&s) if s != sq => {
                    return Err(Error::InvalidPhase("sign reconstruction is inconsistent".into()));
                }
                Some(_) => {}
                None => {
                    signs.insert(q, sq);
                    queue.push_back(q);
                }
            }
        }
    }
    SignDistribution::new(signs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSet {
    edges: BTreeSet<EdgeId>,
    vector: Gf2Vector,
}

impl TwistSet {
    pub fn empty(curve: &TropicalCurve) -> Self {
        TwistSet { edges: BTreeSet::new(), vector: Gf2Vector::zeros(curve.num_bounded()) }
    }

    pub fn all(curve: &TropicalCurve) -> Self {
        Self::from_edges(curve, curve.bounded.iter().copied()).expect("bounded edges")
    }

    pub fn from_edges(curve: &TropicalCurve, edges: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let mut t = Self::empty(curve);
        for e in edges {
            let k = curve
                .bounded_index(e)
                .ok_or_else(|| Error::Validation(format!("edge {e} is not a bounded edge")))?;
            if t.edges.insert(e) {
                t.vector.set(k, true);
            }
        }
        Ok(t)
    }

    pub fn from_vector(curve: &TropicalCurve, v: &Gf2Vector) -> Self {
        assert_eq!(v.len(), curve.num_bounded());
        TwistSet { edges: v.ones().map(|k| curve.bounded[k]).collect(), vector: v.clone() }
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn vector(&self) -> &Gf2Vector {
        &self.vector
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn union(&self, curve: &TropicalCurve, o: &TwistSet) -> TwistSet {
        Self::from_edges(curve, self.edges.union(&o.edges).copied()).expect("bounded edges")
    }

    pub fn sum(&self, curve: &TropicalCurve, o: &TwistSet) -> TwistSet {
        Self::from_vector(curve, &self.vector.xor(&o.vector))
    }
}

/// Sign rule for a bounded edge with dual endpoints `v1, v2` and opposite
/// cell vertices `v3, v4`.
pub fn twisted_by_signs(delta: &SignDistribution, v: [Lattice; 4]) -> Result<bool> {
    let s = |p: Lattice| delta.get(p).map(i32::from);
    if Z2Pair::from_lattice(v[2]) != Z2Pair::from_lattice(v[3]) {
        Ok(s(v[0])? * s(v[1])? * s(v[2])? * s(v[3])? == 1)
    } else {
        Ok(s(v[2])? * s(v[3])? == -1)
    }
}

/// The four dual points `v1, v2, v3, v4` around a bounded edge.
pub fn edge_quad(curve: &TropicalCurve, e: EdgeId) -> [Lattice; 4] {
    let de = &curve.dual.edges[e];
    assert!(de.is_interior(), "edge {e} is unbounded");
    [de.a, de.b, curve.dual.apex(de.cells[0], de), curve.dual.apex(de.cells[1], de)]
}

pub fn twists_from_signs(curve: &TropicalCurve, delta: &SignDistribution) -> Result<TwistSet> {
    delta.validate(curve)?;
    let mut out = Vec::new();
    for &e in &curve.bounded {
        if twisted_by_signs(delta, edge_quad(curve, e))? {
            out.push(e);
        }
    }
    TwistSet::from_edges(curve, out)
}

/// Sidedness test: the partner edges of one phase element at the two ends
/// of `e` lie on opposite sides of the line through `e`.
pub fn is_twisted(curve: &TropicalCurve, phase: &RealPhaseStructure, e: EdgeId) -> bool {
    let ed = &curve.edges[e];
    let head = ed.head.expect("twist is defined on bounded edges");
    let eps = phase.line(e).rep();
    let f = phase.partner(curve, ed.tail, e, eps);
    let g = phase.partner(curve, head, e, eps);
    let sf = det(ed.dir, curve.edges[f].dir_from(ed.tail)).signum();
    let sg = det(ed.dir, curve.edges[g].dir_from(head)).signum();
    sf != sg
}

pub fn twists_from_phase(curve: &TropicalCurve, phase: &RealPhaseStructure) -> TwistSet {
    TwistSet::from_edges(curve, curve.bounded.iter().copied().filter(|&e| is_twisted(curve, phase, e)))
        .expect("bounded edges")
}

fn cycle_constraints(curve: &TropicalCurve, cycles: &[PrimitiveCycle]) -> (Vec<Gf2Vector>, Vec<Gf2Vector>) {
    let n = curve.num_bounded();
    let mut adm = Vec::new();
    let mut par = Vec::new();
    for c in cycles {
        let idx = |f: &dyn Fn(Lattice) -> bool| {
            Gf2Vector::from_support(
                n,
                c.edges.iter().filter(|&&e| f(curve.edges[e].dir)).map(|&e| curve.bounded_index(e).unwrap()),
            )
        };
        adm.push(idx(&|d| d.i.rem_euclid(2) == 1));
        adm.push(idx(&|d| d.j.rem_euclid(2) == 1));
        par.push(idx(&|_| true));
    }
    (adm, par)
}

pub fn is_admissible(curve: &TropicalCurve, t: &TwistSet) -> bool {
    let (adm, _) = cycle_constraints(curve, &curve.primitive_cycles());
    adm.iter().all(|a| !a.dot(t.vector()))
}

pub fn is_dividing(curve: &TropicalCurve, t: &TwistSet) -> Result<bool> {
    let (adm, par) = cycle_constraints(curve, &curve.primitive_cycles());
    if adm.iter().any(|a| a.dot(t.vector())) {
        return Err(Error::NotAdmissible);
    }
    Ok(par.iter().all(|p| !p.dot(t.vector())))
}

fn linear_solution(curve: &TropicalCurve, rows: Vec<Gf2Vector>) -> Gf2Subspace {
    let cons: Vec<(Gf2Vector, bool)> = rows.into_iter().map(|r| (r, false)).collect();
    match solve_affine(curve.num_bounded(), &cons) {
        Solution::Linear(s) => s,
        other => unreachable!("homogeneous system gave {other:?}"),
    }
}

pub fn adm_space(curve: &TropicalCurve) -> Gf2Subspace {
    let (adm, _) = cycle_constraints(curve, &curve.primitive_cycles());
    linear_solution(curve, adm)
}

pub fn div_space(curve: &TropicalCurve) -> Gf2Subspace {
    let (mut adm, par) = cycle_constraints(curve, &curve.primitive_cycles());
    adm.extend(par);
    linear_solution(curve, adm)
}

/// The full constraint list of Div(C) for use with `solve_affine`.
pub fn div_constraints(curve: &TropicalCurve) -> Vec<(Gf2Vector, bool)> {
    let (mut adm, par) = cycle_constraints(curve, &curve.primitive_cycles());
    adm.extend(par);
    adm.into_iter().map(|r| (r, false)).collect()
}

/// Propagates a real phase structure from a twist set. The seed edge gets a
/// line through the seed element; the remaining binary choice at the seed
/// vertex is fixed by taking the smaller uncovered element.
pub fn phase_from_twists(
    curve: &TropicalCurve,
    t: &TwistSet,
    seed: Option<(EdgeId, Z2Pair)>,
) -> Result<RealPhaseStructure> {
    if !is_admissible(curve, t) {
        return Err(Error::NotAdmissible);
    }
    let (e0, eps0) = seed.unwrap_or((0, Z2Pair::ZERO));
    let d0 = curve.edges[e0].dir_mod2();
    let v0 = curve.edges[e0].tail;
    let m0 = *Z2Pair::ALL.iter().find(|&&m| m != eps0 && m != eps0 + d0).unwrap();

    let mut missing: Vec<Option<Z2Pair>> = vec![None; curve.vertices.len()];
    missing[v0] = Some(m0);
    let mut queue = VecDeque::from([v0]);
    while let Some(v) = queue.pop_front() {
        let mv = missing[v].unwrap();
        for &e in &curve.vertices[v].edges {
            let Some(w) = curve.edges[e].other_end(v) else { continue };
            let d = curve.edges[e].dir_mod2();
            let want = t.contains(e);
            let fits: Vec<Z2Pair> = [mv, mv + d]
                .into_iter()
                .filter(|&mw| local_twist(curve, e, v, mv, w, mw) == want)
                .collect();
            assert_eq!(fits.len(), 1, "exactly one continuation across an edge matches its twist");
            match missing[w] {
                None => {
                    missing[w] = Some(fits[0]);
                    queue.push_back(w);
                }
                Some(mw) if mw != fits[0] => return Err(Error::NotAdmissible),
                Some(_) => {}
            }
        }
    }
    let mut lines: Vec<Option<PhaseLine>> = vec![None; curve.edges.len()];
    for (v, m) in missing.iter().enumerate() {
        for (f, l) in lines_from_missing(curve, v, m.expect("curve graph is connected")) {
            match lines[f] {
                Some(old) if old != l => return Err(Error::NotAdmissible),
                _ => lines[f] = Some(l),
            }
        }
    }
    let s = RealPhaseStructure { lines: lines.into_iter().map(Option::unwrap).collect() };
    s.validate(curve)?;
    Ok(s)
}

/// Twist status of the bounded edge `e` between `v` and `w` when their
/// uncovered elements are `mv` and `mw`.
fn local_twist(curve: &TropicalCurve, e: EdgeId, v: VertexId, mv: Z2Pair, w: VertexId, mw: Z2Pair) -> bool {
    let lv = lines_from_missing(curve, v, mv);
    let lw = lines_from_missing(curve, w, mw);
    let le = lv.iter().find(|(f, _)| *f == e).unwrap().1;
    let eps = le.rep();
    let dir = curve.edges[e].dir_from(v);
    let side = |u: VertexId, ls: &[(EdgeId, PhaseLine); 3]| {
        let (f, _) = ls.iter().find(|(f, l)| *f != e && l.contains(eps)).unwrap();
        det(dir, curve.edges[*f].dir_from(u)).signum()
    };
    side(v, &lv) != side(w, &lw)
}

/// `A_T = (|γ_i ∩ γ_j ∩ T| mod 2)` over primitive cycles.
pub fn cycle_matrix(curve: &TropicalCurve, t: &TwistSet) -> Gf2Matrix {
    let cycles = curve.primitive_cycles();
    let g = cycles.len();
    let mut m = Gf2Matrix::zeros(g, g);
    for i in 0..g {
        for j in 0..g {
            let n = cycles[i].edges.iter().filter(|e| t.contains(**e) && cycles[j].edges.contains(e)).count();
            m.set(i, j, n % 2 == 1);
        }
    }
    m
}

pub fn count_components_matrix(curve: &TropicalCurve, t: &TwistSet) -> Result<usize> {
    if !is_admissible(curve, t) {
        return Err(Error::NotAdmissible);
    }
    Ok(1 + cycle_matrix(curve, t).kernel().dim())
}
