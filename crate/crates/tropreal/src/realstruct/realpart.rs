//! The patchworked real part in the four-quadrant model of RP², and a
//! direct component count with oval/pseudo-line classification.
//!
//! Pieces of RP² minus the curve are pairs `(α, ε)`: the symmetric copy
//! `ε(α^∨)` of a complement component. Pieces in one quadrant are joined
//! across edge copies absent from the real part; pieces touching a boundary
//! stratum are glued to their mirror across it. Orientation is tracked as a
//! parity that flips when crossing the line at infinity, which identifies the
//! disc side of each oval.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::RealPhaseStructure;
use crate::curve::{EdgeId, TropicalCurve, VertexId};
use crate::error::Result;
use crate::gf2::Z2Pair;
use crate::num::Lattice;

/// Boundary side of the tropical projective plane, named by where it sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Stratum {
    /// `x = −∞`, reached by rays of direction (−1,0).
    Left,
    /// `y = −∞`, reached by rays of direction (0,−1).
    Bottom,
    /// The line at infinity, reached by rays of direction (1,1).
    Infinity,
}

impl Stratum {
    pub fn of_ray(dir: Lattice) -> Option<Stratum> {
        match (dir.i, dir.j) {
            (-1, 0) => Some(Stratum::Left),
            (0, -1) => Some(Stratum::Bottom),
            (1, 1) => Some(Stratum::Infinity),
            _ => None,
        }
    }

    /// Copies differing by this element are identified along the stratum.
    pub fn glue(self) -> Z2Pair {
        match self {
            Stratum::Left => Z2Pair::new(true, false),
            Stratum::Bottom => Z2Pair::new(false, true),
            Stratum::Infinity => Z2Pair::new(true, true),
        }
    }

    fn flips_orientation(self) -> bool {
        self == Stratum::Infinity
    }

    fn touched_by(p: Lattice, d: i64) -> Vec<Stratum> {
        let mut out = Vec::new();
        if p.i == 0 {
            out.push(Stratum::Left);
        }
        if p.j == 0 {
            out.push(Stratum::Bottom);
        }
        if p.i + p.j == d {
            out.push(Stratum::Infinity);
        }
        out
    }
}

pub type Piece = (Lattice, Z2Pair);

#[derive(Clone, Debug)]
pub struct RealPart {
    pub degree: u32,
    pub points: Vec<Lattice>,
    /// Dual endpoints per edge: the two pieces an edge copy separates.
    pub edge_sides: Vec<(Lattice, Lattice)>,
    pub edge_copies: BTreeSet<(EdgeId, Z2Pair)>,
    /// Vertex copies in the closure, with the two edges they join.
    pub vertex_copies: Vec<(VertexId, Z2Pair, [EdgeId; 2])>,
    /// Ray copies `(e, ε)` and `(e, ε + glue)` meeting on a boundary stratum.
    pub boundary_gluings: Vec<(EdgeId, Z2Pair, Z2Pair, Stratum)>,
    /// Piece identifications along boundary strata.
    pub piece_gluings: Vec<(Piece, Piece, Stratum)>,
}

pub fn real_part(curve: &TropicalCurve, phase: &RealPhaseStructure) -> Result<RealPart> {
    let d = curve.require_degree()?;
    phase.validate(curve)?;
    let mut edge_copies = BTreeSet::new();
    for e in 0..curve.edges.len() {
        for eps in phase.line(e).elements() {
            edge_copies.insert((e, eps));
        }
    }
    let mut vertex_copies = Vec::new();
    for (v, vx) in curve.vertices.iter().enumerate() {
        for eps in Z2Pair::ALL {
            let on: Vec<EdgeId> = vx.edges.iter().copied().filter(|&f| phase.line(f).contains(eps)).collect();
            match on.len() {
                0 => {}
                2 => vertex_copies.push((v, eps, [on[0], on[1]])),
                n => unreachable!("vertex copy joins {n} edges"),
            }
        }
    }
    let mut boundary_gluings = Vec::new();
    for (e, ed) in curve.edges.iter().enumerate() {
        if ed.is_bounded() {
            continue;
        }
        let s = Stratum::of_ray(ed.dir).expect("rays of a degree-d curve point to a boundary side");
        let [a, b] = phase.line(e).elements();
        debug_assert_eq!(a + b, s.glue());
        boundary_gluings.push((e, a, b, s));
    }
    let mut piece_gluings = Vec::new();
    for &p in &curve.dual.points {
        for s in Stratum::touched_by(p, d as i64) {
            for eps in Z2Pair::ALL {
                let other = eps + s.glue();
                if eps < other {
                    piece_gluings.push(((p, eps), (p, other), s));
                }
            }
        }
    }
    Ok(RealPart {
        degree: d,
        points: curve.dual.points.clone(),
        edge_sides: curve.edges.iter().map(|e| e.dual).collect(),
        edge_copies,
        vertex_copies,
        boundary_gluings,
        piece_gluings,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentKind {
    Oval,
    PseudoLine,
}

#[derive(Clone, Debug, Serialize)]
pub struct RealComponent {
    pub edge_copies: Vec<(EdgeId, Z2Pair)>,
    pub kind: ComponentKind,
    /// 1 for outermost ovals; 0 for a pseudo-line.
    pub depth: usize,
    /// Pieces on the disc side of an oval (empty for a pseudo-line).
    #[serde(skip)]
    pub interior: BTreeSet<Piece>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub count: usize,
    pub components: Vec<RealComponent>,
    /// Innermost enclosing oval of each component.
    pub parent: Vec<Option<usize>>,
    /// Connected components of RP² minus the real part.
    pub regions: usize,
}

impl ComponentReport {
    pub fn ovals(&self) -> usize {
        self.components.iter().filter(|c| c.kind == ComponentKind::Oval).count()
    }

    pub fn pseudo_lines(&self) -> usize {
        self.components.iter().filter(|c| c.kind == ComponentKind::PseudoLine).count()
    }

    /// `true` iff the ovals form one chain `1 ⊃ 2 ⊃ ...`.
    pub fn ovals_nested_chain(&self) -> bool {
        let mut depths: Vec<usize> =
            self.components.iter().filter(|c| c.kind == ComponentKind::Oval).map(|c| c.depth).collect();
        depths.sort();
        depths.iter().enumerate().all(|(k, &d)| d == k + 1)
    }

    pub fn innermost_oval(&self) -> Option<&RealComponent> {
        self.components.iter().filter(|c| c.kind == ComponentKind::Oval).max_by_key(|c| c.depth)
    }
}

/// Union-find tracking a parity along paths.
struct ParityUf {
    parent: Vec<usize>,
    parity: Vec<bool>,
    odd_cycle: Vec<bool>,
}

impl ParityUf {
    fn new(n: usize) -> Self {
        ParityUf { parent: (0..n).collect(), parity: vec![false; n], odd_cycle: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (r, p) = self.find(self.parent[x]);
        self.parent[x] = r;
        self.parity[x] ^= p;
        (r, self.parity[x])
    }

    fn union(&mut self, a: usize, b: usize, flip: bool) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb ^ flip {
                self.odd_cycle[ra] = true;
            }
            return;
        }
        self.parent[rb] = ra;
        self.parity[rb] = pa ^ pb ^ flip;
        let odd = self.odd_cycle[rb];
        self.odd_cycle[ra] |= odd;
    }

    fn root(&mut self, x: usize) -> usize {
        self.find(x).0
    }

    fn orientable(&mut self, x: usize) -> bool {
        let r = self.root(x);
        !self.odd_cycle[r]
    }

    fn classes(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.root(x) == x).count()
    }
}

struct Regions<'a> {
    rp: &'a RealPart,
    index: BTreeMap<Lattice, usize>,
}

impl<'a> Regions<'a> {
    fn new(rp: &'a RealPart) -> Self {
        Regions { rp, index: rp.points.iter().enumerate().map(|(k, p)| (*p, k)).collect() }
    }

    fn node(&self, p: Piece) -> usize {
        self.index[&p.0] * 4 + p.1.index()
    }

    fn piece(&self, n: usize) -> Piece {
        (self.rp.points[n / 4], Z2Pair::ALL[n % 4])
    }

    /// Pieces glued with every edge copy for which `blocks` is false.
    fn build(&self, blocks: impl Fn(EdgeId, Z2Pair) -> bool) -> ParityUf {
        let mut uf = ParityUf::new(self.rp.points.len() * 4);
        for &(a, b, s) in &self.rp.piece_gluings {
            uf.union(self.node(a), self.node(b), s.flips_orientation());
        }
        for (e, &(p, q)) in self.rp.edge_sides.iter().enumerate() {
            for eps in Z2Pair::ALL {
                if !blocks(e, eps) {
                    uf.union(self.node((p, eps)), self.node((q, eps)), false);
                }
            }
        }
        uf
    }
}

pub fn count_components_direct(rp: &RealPart) -> ComponentReport {
    // Components of the real part: edge copies joined at vertex copies and
    // across boundary gluings.
    let copies: Vec<(EdgeId, Z2Pair)> = rp.edge_copies.iter().copied().collect();
    let pos: BTreeMap<(EdgeId, Z2Pair), usize> = copies.iter().enumerate().map(|(k, c)| (*c, k)).collect();
    let mut uf = ParityUf::new(copies.len());
    for &(_, eps, [f, g]) in &rp.vertex_copies {
        uf.union(pos[&(f, eps)], pos[&(g, eps)], false);
    }
    for &(e, a, b, _) in &rp.boundary_gluings {
        uf.union(pos[&(e, a)], pos[&(e, b)], false);
    }
    let mut groups: BTreeMap<usize, Vec<(EdgeId, Z2Pair)>> = BTreeMap::new();
    for (k, c) in copies.iter().enumerate() {
        groups.entry(uf.root(k)).or_default().push(*c);
    }
    let mut comps: Vec<Vec<(EdgeId, Z2Pair)>> = groups.into_values().collect();
    comps.sort();

    let regions = Regions::new(rp);
    let full_regions = regions.build(|e, eps| rp.edge_copies.contains(&(e, eps))).classes();

    let mut components: Vec<RealComponent> = Vec::new();
    for comp in &comps {
        let member: BTreeSet<(EdgeId, Z2Pair)> = comp.iter().copied().collect();
        let without = regions.build(|e, eps| rp.edge_copies.contains(&(e, eps)) && !member.contains(&(e, eps)));
        let mut without = without;
        let merged = full_regions - without.classes();
        let kind = match merged {
            1 => ComponentKind::Oval,
            0 => ComponentKind::PseudoLine,
            n => unreachable!("removing one component merged {n} regions"),
        };
        let interior = if kind == ComponentKind::Oval {
            // Disc side: the orientable side when only this oval is present.
            let mut alone = regions.build(|e, eps| member.contains(&(e, eps)));
            let (e, eps) = comp[0];
            let (p, q) = rp.edge_sides[e];
            let (np, nq) = (regions.node((p, eps)), regions.node((q, eps)));
            let (op, oq) = (alone.orientable(np), alone.orientable(nq));
            assert!(op != oq, "an oval bounds exactly one disc");
            let inside = alone.root(if op { np } else { nq });
            (0..rp.points.len() * 4).filter(|&n| alone.root(n) == inside).map(|n| regions.piece(n)).collect()
        } else {
            BTreeSet::new()
        };
        components.push(RealComponent { edge_copies: comp.clone(), kind, depth: 0, interior });
    }

    // Nesting: an oval lies inside another if its adjacent pieces do.
    let n = components.len();
    let inside = |a: usize, b: usize| -> bool {
        let (e, eps) = components[a].edge_copies[0];
        let (p, _) = rp.edge_sides[e];
        a != b && components[b].kind == ComponentKind::Oval && components[b].interior.contains(&(p, eps))
    };
    let containers: Vec<Vec<usize>> = (0..n).map(|a| (0..n).filter(|&b| inside(a, b)).collect()).collect();
    for a in 0..n {
        if components[a].kind == ComponentKind::Oval {
            components[a].depth = containers[a].len() + 1;
        }
    }
    let parent = containers
        .iter()
        .map(|cs| cs.iter().copied().max_by_key(|&b| components[b].depth))
        .collect();
    ComponentReport { count: components.len(), components, parent, regions: full_regions }
}
