//! Hyperbolicity of real tropical curves: globally via the twist matrix,
//! point-wise via the fan of lines through a point, and the honeycomb
//! bridge calculus.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::curve::{EdgeId, TropicalCurve, VertexId};
use crate::error::{Error, Result};
use crate::gf2::{solve_affine, AffineFlat, Gf2Vector, Solution, Z2Pair};
use crate::intersect::{is_relatively_twisted, ray_crossings, IntersectionComponent, IntersectionKind, RealCurve};
use crate::num::{centroid, det, q, Lattice, Point, Q};
use crate::realstruct::{
    count_components_direct, count_components_matrix, div_constraints, div_space, is_dividing, is_twisted,
    phase_from_signs, real_part, signs_from_phase, twists_from_phase, Piece, RealPhaseStructure, SignDistribution,
    TwistSet,
};
use crate::TropicalPolynomial;

/// Face labels of the fan at a point.
pub const ETAS: [Lattice; 3] = [Lattice::new(1, 0), Lattice::new(0, 1), Lattice::new(1, 1)];

/// Outward direction of the ray labelled `eta`.
pub fn ray_dir(eta: Lattice) -> Lattice {
    if eta == Lattice::new(1, 1) {
        Lattice::new(-1, -1)
    } else {
        eta
    }
}

fn up_to_sign(d: Lattice) -> Lattice {
    if d.i < 0 || (d.i == 0 && d.j < 0) {
        d.neg()
    } else {
        d
    }
}

/// Kernel dimension of the twist matrix, and whether it certifies hyperbolicity.
pub fn is_hyperbolic(curve: &TropicalCurve, t: &TwistSet) -> Result<(bool, usize)> {
    let d = curve.require_degree()?;
    let dividing = is_dividing(curve, t)?;
    let kernel_dim = count_components_matrix(curve, t)? - 1;
    Ok((dividing && kernel_dim == d.div_ceil(2) as usize - 1, kernel_dim))
}

/// The subdivision of the plane by three rays from `apex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaV {
    pub apex: Point,
}

impl SigmaV {
    /// Linear forms whose non-negativity cuts out the closed face `σ_η`.
    fn forms(eta: Lattice) -> [Lattice; 2] {
        match (eta.i, eta.j) {
            (1, 1) => [Lattice::new(1, 0), Lattice::new(0, 1)],
            (1, 0) => [Lattice::new(-1, 0), Lattice::new(-1, 1)],
            _ => [Lattice::new(0, -1), Lattice::new(1, -1)],
        }
    }

    /// Open face containing `p`, or `None` on a ray.
    pub fn face_of(&self, p: &Point) -> Option<Lattice> {
        let (dx, dy) = p.sub(&self.apex);
        ETAS.into_iter().find(|&eta| {
            Self::forms(eta).iter().all(|f| (q(f.i) * &dx + q(f.j) * &dy).is_positive())
        })
    }

    /// Parameter interval of `a + t·dir`, `t ∈ [0, len]`, inside the closed face.
    fn clip(&self, eta: Lattice, a: &Point, dir: Lattice, len: Option<&Q>) -> Option<(Q, Option<Q>)> {
        let (ax, ay) = a.sub(&self.apex);
        let mut lo = Q::zero();
        let mut hi = len.cloned();
        for f in Self::forms(eta) {
            let c0 = q(f.i) * &ax + q(f.j) * &ay;
            let c1 = q(f.i * dir.i + f.j * dir.j);
            if c1.is_zero() {
                if c0.is_negative() {
                    return None;
                }
            } else {
                let t = -c0 / &c1;
                if c1.is_positive() {
                    lo = lo.max(t);
                } else {
                    hi = Some(hi.map_or(t.clone(), |h| h.min(t)));
                }
            }
        }
        match &hi {
            Some(h) if *h <= lo => None,
            _ => Some((lo, hi)),
        }
    }
}

pub fn sigma_v(v: &Point) -> SigmaV {
    SigmaV { apex: v.clone() }
}

/// Every ray of the fan at `v` meets the curve transversely inside edges.
pub fn is_generic(v: &Point, curve: &TropicalCurve) -> Result<bool> {
    if curve.on_curve(v) {
        return Err(Error::PointOnCurve);
    }
    Ok(ETAS.iter().all(|&eta| ray_crossings(curve, v, ray_dir(eta)).is_some()))
}

/// Failed condition of the point-wise criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Failure {
    /// A vertex in the face `eta` has no edge of direction `eta`.
    VertexDirection { vertex: VertexId, eta: Lattice },
    /// An edge crossing the ray `zeta` with determinant 2 misses the query element.
    RayPhase { edge: EdgeId, zeta: Lattice },
    /// A bounded edge inside its own face is not twisted.
    UntwistedEdge { edge: EdgeId },
    /// The overlap of a bounded edge with the pencil line is relatively twisted.
    RelativelyTwisted { edge: EdgeId },
}

impl Failure {
    pub fn condition(&self) -> u8 {
        match self {
            Failure::VertexDirection { .. } => 1,
            Failure::RayPhase { .. } => 2,
            Failure::UntwistedEdge { .. } | Failure::RelativelyTwisted { .. } => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointVerdict {
    pub sample: Point,
    pub failure: Option<Failure>,
}

impl PointVerdict {
    pub fn hyperbolic(&self) -> bool {
        self.failure.is_none()
    }
}

fn line_with_vertex(u: &Point) -> TropicalCurve {
    let coeffs: BTreeMap<Lattice, Q> = [
        (Lattice::new(0, 0), Q::zero()),
        (Lattice::new(1, 0), -u.x.clone()),
        (Lattice::new(0, 1), -u.y.clone()),
    ]
    .into();
    TropicalCurve::from_polynomial(TropicalPolynomial::new(coeffs).expect("line support"))
        .expect("a line is non-singular")
}

/// The phase structures of a line, one per sign class.
fn line_phases(l: &TropicalCurve) -> Vec<RealPhaseStructure> {
    let pts = [Lattice::new(1, 0), Lattice::new(0, 1)];
    (0..4)
        .map(|k| {
            let signs: BTreeMap<Lattice, i8> = [
                (Lattice::new(0, 0), 1),
                (pts[0], if k & 1 == 0 { 1 } else { -1 }),
                (pts[1], if k & 2 == 0 { 1 } else { -1 }),
            ]
            .into();
            phase_from_signs(l, &SignDistribution::new(signs).unwrap()).unwrap()
        })
        .collect()
}

/// Fan at a generic point together with the ray crossings of the curve.
pub struct PointContext<'a> {
    curve: &'a TropicalCurve,
    fan: SigmaV,
    crossings: Vec<(Lattice, Vec<(EdgeId, Point)>)>,
}

impl<'a> PointContext<'a> {
    pub fn new(curve: &'a TropicalCurve, v: &Point) -> Result<Self> {
        if curve.on_curve(v) {
            return Err(Error::PointOnCurve);
        }
        let mut crossings = Vec::new();
        for zeta in ETAS {
            let Some(c) = ray_crossings(curve, v, ray_dir(zeta)) else {
                return Err(Error::UnsupportedConfiguration(format!("point {v} is not generic")));
            };
            crossings.push((zeta, c));
        }
        Ok(PointContext { curve, fan: sigma_v(v), crossings })
    }

    pub fn point(&self) -> &Point {
        &self.fan.apex
    }

    /// Point-wise criterion for the real point `(v, eps)`.
    pub fn verdict(&self, phase: &RealPhaseStructure, eps: Z2Pair) -> Result<PointVerdict> {
        let failure = self.first_failure(phase, eps)?;
        Ok(PointVerdict { sample: self.fan.apex.clone(), failure })
    }

    fn first_failure(&self, phase: &RealPhaseStructure, eps: Z2Pair) -> Result<Option<Failure>> {
        let (curve, fan, v) = (self.curve, &self.fan, &self.fan.apex);
        for (vid, vx) in curve.vertices.iter().enumerate() {
            let eta = fan.face_of(&vx.pos).expect("generic points keep vertices off the rays");
            if vx.edges.iter().any(|&f| det(curve.edges[f].dir, eta).abs() > 1) {
                return Ok(Some(Failure::VertexDirection { vertex: vid, eta }));
            }
        }
        for (zeta, hits) in &self.crossings {
            for (e, _) in hits {
                if det(curve.edges[*e].dir, *zeta).abs() == 2 && !phase.line(*e).contains(eps) {
                    return Ok(Some(Failure::RayPhase { edge: *e, zeta: *zeta }));
                }
            }
        }
        for e in curve.bounded.iter().copied() {
            let ed = &curve.edges[e];
            let eta = up_to_sign(ed.dir);
            if !ETAS.contains(&eta) {
                continue;
            }
            let len = curve.edge_len(e).expect("bounded");
            let tail = &curve.vertices[ed.tail].pos;
            let Some((lo, hi)) = fan.clip(eta, tail, ed.dir, Some(&len)) else { continue };
            let hi = hi.expect("bounded");
            let (t_cross, w) = match (lo.is_zero(), hi == len) {
                (true, true) => {
                    if !is_twisted(curve, phase, e) {
                        return Ok(Some(Failure::UntwistedEdge { edge: e }));
                    }
                    continue;
                }
                (true, false) => (hi, ed.tail),
                (false, true) => (lo, ed.head.expect("bounded")),
                (false, false) => {
                    return Err(Error::UnsupportedConfiguration(format!("edge {e} crosses two rays")));
                }
            };
            let u = tail.add_dir(ed.dir, &t_cross);
            let l = line_with_vertex(&u);
            let wpos = &curve.vertices[w].pos;
            let toward = |target: &Point| {
                let (dx, dy) = target.sub(&u);
                l.edges.iter().position(|le| {
                    (q(le.dir.i) * &dy - q(le.dir.j) * &dx).is_zero()
                        && (q(le.dir.i) * &dx + q(le.dir.j) * &dy).is_positive()
                })
            };
            let e_over = toward(wpos).expect("the overlap lies on a ray of the pencil line");
            let e_through = toward(v).expect("the pencil line passes through the point");
            let mut fitting = line_phases(&l)
                .into_iter()
                .filter(|lp| lp.line(e_through).contains(eps) && lp.line(e_over) == phase.line(e));
            let lp = fitting.next().expect("a matching line phase exists");
            assert!(fitting.next().is_none(), "the matching line phase is unique");
            let comp = IntersectionComponent {
                kind: IntersectionKind::SegmentOverlap {
                    start: wpos.clone(),
                    end: u.clone(),
                    e,
                    e2: e_over,
                    v: w,
                    v2: 0,
                },
                multiplicity: 2,
            };
            if is_relatively_twisted(RealCurve::new(curve, phase), RealCurve::new(&l, &lp), &comp)? {
                return Ok(Some(Failure::RelativelyTwisted { edge: e }));
            }
        }
        Ok(None)
    }
}

/// Point-wise criterion at a generic point `v` for the real point `(v, eps)`.
pub fn hyperbolic_at(curve: &TropicalCurve, phase: &RealPhaseStructure, v: &Point, eps: Z2Pair) -> Result<PointVerdict> {
    PointContext::new(curve, v)?.verdict(phase, eps)
}

/// Convex polygon of `alpha`'s complement component clipped to a box that
/// contains every curve vertex.
pub fn component_polygon(curve: &TropicalCurve, alpha: Lattice) -> Vec<Point> {
    let mut r = Q::one();
    for v in &curve.vertices {
        r = r.max(v.pos.x.abs()).max(v.pos.y.abs());
    }
    let r = r + q(2);
    let mut poly = vec![
        Point::new(-r.clone(), -r.clone()),
        Point::new(r.clone(), -r.clone()),
        Point::new(r.clone(), r.clone()),
        Point::new(-r.clone(), r.clone()),
    ];
    let a = curve.poly.coeff(alpha).expect("alpha in support").clone();
    for (&beta, b) in curve.poly.coeffs() {
        if beta == alpha {
            continue;
        }
        // Keep a_α + α·X ≥ a_β + β·X.
        let g = alpha.sub(beta);
        let f = |p: &Point| &a - b + q(g.i) * &p.x + q(g.j) * &p.y;
        let mut next = Vec::new();
        for k in 0..poly.len() {
            let (p, s) = (&poly[k], &poly[(k + 1) % poly.len()]);
            let (fp, fs) = (f(p), f(s));
            if !fp.is_negative() {
                next.push(p.clone());
            }
            if (fp.is_negative() && fs.is_positive()) || (fp.is_positive() && fs.is_negative()) {
                let t = &fp / (&fp - &fs);
                next.push(Point::new(&p.x + &t * (&s.x - &p.x), &p.y + &t * (&s.y - &p.y)));
            }
        }
        poly = next;
    }
    poly
}

const SAMPLE_RETRIES: i64 = 64;

/// The `k`-th generic sample point of a component: a point between the
/// polygon centroid and one of its corners, nudged along a fixed rational
/// schedule until it is generic.
pub fn generic_sample(curve: &TropicalCurve, alpha: Lattice, k: usize) -> Result<Point> {
    curve.component(alpha)?;
    let poly = component_polygon(curve, alpha);
    let c = centroid(&poly);
    let base = if k == 0 { c.clone() } else { c.midpoint(&poly[(k - 1) % poly.len()]).midpoint(&c) };
    let (ex, ey) = (&poly[0].x - &c.x, &poly[0].y - &c.y);
    let scale = (ex.abs() + ey.abs()) / q(1000);
    for j in 0..SAMPLE_RETRIES {
        let p = base.translate(&(q(j) * &scale / q(97)), &(q(j) * &scale / q(89)));
        if curve.in_component(alpha, &p) && !curve.on_curve(&p) && is_generic(&p, curve)? {
            return Ok(p);
        }
    }
    Err(Error::NotGenericAfterRetries(alpha))
}

pub fn hyperbolic_wrt_point(
    curve: &TropicalCurve,
    phase: &RealPhaseStructure,
    alpha: Lattice,
    eps: Z2Pair,
) -> Result<PointVerdict> {
    hyperbolic_at(curve, phase, &generic_sample(curve, alpha, 0)?, eps)
}

#[derive(Clone, Debug, Serialize)]
pub struct PointRecord {
    pub component: Lattice,
    pub eps: Z2Pair,
    pub hyperbolic: bool,
    pub failure: Option<Failure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HyperbolicityReport {
    pub hyperbolic: bool,
    pub kernel_dim: usize,
    pub stable: bool,
    /// Locus from the nesting of the real part.
    pub h: BTreeSet<Lattice>,
    pub rh: BTreeSet<Piece>,
    /// Locus from the point-wise criterion.
    pub h_pointwise: BTreeSet<Lattice>,
    pub rh_pointwise: BTreeSet<Piece>,
    pub per_point: Vec<PointRecord>,
}

impl HyperbolicityReport {
    pub fn methods_agree(&self) -> bool {
        self.h == self.h_pointwise && self.rh == self.rh_pointwise
    }
}

pub fn hyperbolicity_locus(curve: &TropicalCurve, phase: &RealPhaseStructure) -> Result<HyperbolicityReport> {
    let d = curve.require_degree()?;
    phase.validate(curve)?;
    let t = twists_from_phase(curve, phase);
    let (hyperbolic, kernel_dim) = is_hyperbolic(curve, &t)?;

    let mut rh = BTreeSet::new();
    if hyperbolic {
        let report = count_components_direct(&real_part(curve, phase)?);
        if d == 1 {
            for &a in &curve.dual.points {
                for eps in Z2Pair::ALL {
                    rh.insert((a, eps));
                }
            }
        } else {
            assert!(report.ovals_nested_chain(), "a hyperbolic curve has a single chain of ovals");
            rh = report.innermost_oval().expect("hyperbolic curves of degree ≥ 2 have an oval").interior.clone();
        }
    }
    let h = rh.iter().map(|(a, _)| *a).collect();

    let mut per_point = Vec::new();
    for &alpha in &curve.dual.points {
        let ctx = PointContext::new(curve, &generic_sample(curve, alpha, 0)?)?;
        for eps in Z2Pair::ALL {
            let verdict = ctx.verdict(phase, eps)?;
            per_point.push(PointRecord { component: alpha, eps, hyperbolic: verdict.hyperbolic(), failure: verdict.failure });
        }
    }
    let rh_pointwise: BTreeSet<Piece> =
        per_point.iter().filter(|r| r.hyperbolic).map(|r| (r.component, r.eps)).collect();
    let h_pointwise = rh_pointwise.iter().map(|(a, _)| *a).collect();
    Ok(HyperbolicityReport {
        hyperbolic,
        kernel_dim,
        stable: is_stable_limit(curve, phase),
        h,
        rh,
        h_pointwise,
        rh_pointwise,
        per_point,
    })
}

pub fn is_stable_limit(curve: &TropicalCurve, phase: &RealPhaseStructure) -> bool {
    curve.is_honeycomb()
        && twists_from_phase(curve, phase).len() == curve.num_bounded()
        && signs_from_phase(curve, phase).is_ok_and(|s| s.is_constant())
}

/// Interior line of the dual triangle carrying a multi-bridge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BridgeLine {
    /// `x = c`
    Vertical(i64),
    /// `y = c`
    Horizontal(i64),
    /// `x + y = s`
    Diagonal(i64),
}

impl BridgeLine {
    fn contains(self, p: Lattice) -> bool {
        match self {
            BridgeLine::Vertical(c) => p.i == c,
            BridgeLine::Horizontal(c) => p.j == c,
            BridgeLine::Diagonal(s) => p.i + p.j == s,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiBridge {
    pub line: BridgeLine,
    pub edges: Vec<EdgeId>,
    pub direction: Lattice,
}

fn require_honeycomb(curve: &TropicalCurve) -> Result<u32> {
    if !curve.is_honeycomb() {
        return Err(Error::NotHoneycomb);
    }
    curve.require_degree()
}

fn graph_components_without(curve: &TropicalCurve, removed: &[EdgeId]) -> usize {
    let n = curve.vertices.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &e in &curve.vertices[v].edges {
                if removed.contains(&e) {
                    continue;
                }
                if let Some(w) = curve.edges[e].other_end(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
    }
    count
}

pub fn multi_bridges(curve: &TropicalCurve) -> Result<Vec<MultiBridge>> {
    let d = require_honeycomb(curve)? as i64;
    let lines = (1..d)
        .map(BridgeLine::Vertical)
        .chain((1..d).map(BridgeLine::Horizontal))
        .chain((1..d).map(BridgeLine::Diagonal));
    let mut out = Vec::new();
    for line in lines {
        let edges: Vec<EdgeId> = curve
            .bounded
            .iter()
            .copied()
            .filter(|&e| {
                let (a, b) = curve.edges[e].dual;
                line.contains(a) && line.contains(b)
            })
            .collect();
        assert!(!edges.is_empty());
        let direction = up_to_sign(curve.edges[edges[0]].dir);
        assert!(edges.iter().all(|&e| up_to_sign(curve.edges[e].dir) == direction));
        assert_eq!(graph_components_without(curve, &edges), 2, "a multi-bridge disconnects the curve");
        out.push(MultiBridge { line, edges, direction });
    }
    Ok(out)
}

pub fn bridge_twists(curve: &TropicalCurve, bridges: &[MultiBridge]) -> TwistSet {
    TwistSet::from_edges(curve, bridges.iter().flat_map(|b| b.edges.iter().copied()))
        .expect("bridge edges are bounded")
}

/// Bridges that must be twisted for `alpha` to lie in the locus: left of,
/// below, and diagonally above `alpha`.
fn constraining(curve: &TropicalCurve, alpha: Lattice) -> Result<Vec<MultiBridge>> {
    Ok(multi_bridges(curve)?
        .into_iter()
        .filter(|b| match b.line {
            BridgeLine::Vertical(c) => c < alpha.i,
            BridgeLine::Horizontal(c) => c < alpha.j,
            BridgeLine::Diagonal(s) => s > alpha.i + alpha.j,
        })
        .collect())
}

pub fn honeycomb_locus(curve: &TropicalCurve, t: &TwistSet) -> Result<BTreeSet<Lattice>> {
    require_honeycomb(curve)?;
    if !is_dividing(curve, t).unwrap_or(false) {
        return Err(Error::NotDividing);
    }
    let mut out = BTreeSet::new();
    for &alpha in &curve.dual.points {
        if constraining(curve, alpha)?.iter().all(|b| b.edges.iter().all(|&e| t.contains(e))) {
            out.insert(alpha);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct HypAlphaFlat {
    pub alpha: Lattice,
    pub flat: AffineFlat,
    pub constraining_bridges: Vec<MultiBridge>,
}

impl HypAlphaFlat {
    pub fn codim(&self, curve: &TropicalCurve) -> usize {
        div_space(curve).dim() - self.flat.direction.dim()
    }
}

pub fn hyp_alpha_flat(curve: &TropicalCurve, alpha: Lattice) -> Result<HypAlphaFlat> {
    require_honeycomb(curve)?;
    if curve.dual.point_index(alpha).is_none() {
        return Err(Error::UnknownPoint(alpha));
    }
    let bridges = constraining(curve, alpha)?;
    let n = curve.num_bounded();
    let mut cons = div_constraints(curve);
    for b in &bridges {
        for &e in &b.edges {
            cons.push((Gf2Vector::unit(n, curve.bounded_index(e).unwrap()), true));
        }
    }
    let flat = match solve_affine(n, &cons) {
        Solution::Affine(f) => f,
        Solution::Linear(s) => AffineFlat { origin: Gf2Vector::zeros(n), direction: s },
        Solution::Empty => unreachable!("the union of the constraining bridges is dividing"),
    };
    let origin = bridge_twists(curve, &bridges);
    assert!(flat.contains(origin.vector()));
    Ok(HypAlphaFlat { alpha, flat: AffineFlat { origin: origin.vector().clone(), direction: flat.direction }, constraining_bridges: bridges })
}

#[cfg(test)]
mod tests;
