//! Regular subdivision of a lattice polygon induced by the upper convex hull
//! of lifted points, restricted to the unimodular (non-singular) case.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::num::{orient, Lattice, Q};

/// An edge of the dual subdivision, endpoints sorted (`a < b`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualEdge {
    pub a: Lattice,
    pub b: Lattice,
    /// Indices of the one (boundary) or two (interior) adjacent triangles.
    pub cells: Vec<usize>,
}

impl DualEdge {
    pub fn is_interior(&self) -> bool {
        self.cells.len() == 2
    }

    pub fn has(&self, p: Lattice) -> bool {
        self.a == p || self.b == p
    }

    pub fn other(&self, p: Lattice) -> Lattice {
        if self.a == p {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Clone, Debug)]
pub struct DualSubdivision {
    /// Vertices of the Newton polygon, counter-clockwise, no collinear repeats.
    pub polygon: Vec<Lattice>,
    /// All lattice points of the polygon, sorted.
    pub points: Vec<Lattice>,
    /// Unimodular triangles, each stored counter-clockwise.
    pub cells: Vec<[Lattice; 3]>,
    /// Sorted by `(a, b)`.
    pub edges: Vec<DualEdge>,
    /// Twice the Euclidean area of the polygon.
    pub area2: i64,
}

impl DualSubdivision {
    pub fn point_index(&self, p: Lattice) -> Option<usize> {
        self.points.binary_search(&p).ok()
    }

    pub fn edge_index(&self, p: Lattice, q: Lattice) -> Option<usize> {
        let (a, b) = if p < q { (p, q) } else { (q, p) };
        self.edges.binary_search_by(|e| (e.a, e.b).cmp(&(a, b))).ok()
    }

    pub fn is_interior_point(&self, p: Lattice) -> bool {
        polygon_contains(&self.polygon, p) == Containment::Interior
    }

    /// The vertex of cell `c` not on the dual edge `e`.
    pub fn apex(&self, cell: usize, e: &DualEdge) -> Lattice {
        *self.cells[cell]
            .iter()
            .find(|p| !e.has(**p))
            .expect("triangle has a vertex off each of its edges")
    }
}

/// Counter-clockwise convex hull, collinear points dropped.
pub fn convex_hull(points: &[Lattice]) -> Vec<Lattice> {
    let mut pts: Vec<Lattice> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Lattice> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Lattice> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn polygon_area2(poly: &[Lattice]) -> i64 {
    let n = poly.len();
    (0..n).map(|k| crate::num::det(poly[k], poly[(k + 1) % n])).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Interior,
    Boundary,
    Outside,
}

pub fn polygon_contains(poly: &[Lattice], p: Lattice) -> Containment {
    let n = poly.len();
    let mut on_edge = false;
    for k in 0..n {
        let o = orient(poly[k], poly[(k + 1) % n], p);
        if o < 0 {
            return Containment::Outside;
        }
        if o == 0 {
            on_edge = true;
        }
    }
    if on_edge {
        Containment::Boundary
    } else {
        Containment::Interior
    }
}

pub fn lattice_points(poly: &[Lattice]) -> Vec<Lattice> {
    let (imin, imax) = (poly.iter().map(|p| p.i).min().unwrap(), poly.iter().map(|p| p.i).max().unwrap());
    let (jmin, jmax) = (poly.iter().map(|p| p.j).min().unwrap(), poly.iter().map(|p| p.j).max().unwrap());
    let mut out = Vec::new();
    for i in imin..=imax {
        for j in jmin..=jmax {
            let p = Lattice::new(i, j);
            if polygon_contains(poly, p) != Containment::Outside {
                out.push(p);
            }
        }
    }
    out
}

/// Lifted heights scaled to a common integer denominator.
struct Heights(BTreeMap<Lattice, BigInt>);

impl Heights {
    fn new(coeffs: &BTreeMap<Lattice, Q>) -> Self {
        let l = coeffs.values().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        Heights(coeffs.iter().map(|(p, c)| (*p, (c * Q::from_integer(l.clone())).to_integer())).collect())
    }

    /// Positive iff `s` lies strictly above the plane through the lifts of
    /// the counter-clockwise triangle `abc`, zero iff on it.
    fn above(&self, a: Lattice, b: Lattice, c: Lattice, s: Lattice) -> BigInt {
        let h = |p: Lattice| &self.0[&p] - &self.0[&a];
        let (u, v, w) = (b.sub(a), c.sub(a), s.sub(a));
        let big = |x: i64| BigInt::from(x);
        let d = h(b) * big(v.i * w.j - v.j * w.i) - h(c) * big(u.i * w.j - u.j * w.i) + h(s) * big(u.i * v.j - u.j * v.i);
        let o = orient(a, b, c);
        if o > 0 {
            d
        } else {
            -d
        }
    }
}

fn singular(msg: impl Into<String>) -> Error {
    Error::SingularSubdivision(msg.into())
}

/// Computes the regular subdivision of the support's convex hull lifted by
/// `coeffs`, failing unless it is a unimodular triangulation using every
/// lattice point.
pub fn regular_subdivision(coeffs: &BTreeMap<Lattice, Q>) -> Result<DualSubdivision> {
    let support: Vec<Lattice> = coeffs.keys().copied().collect();
    let polygon = convex_hull(&support);
    if polygon.len() < 3 {
        return Err(Error::DegeneratePolygon);
    }
    let area2 = polygon_area2(&polygon);
    let points = lattice_points(&polygon);
    if let Some(p) = points.iter().find(|p| !coeffs.contains_key(p)) {
        return Err(singular(format!("lattice point {p} has no finite coefficient")));
    }
    let heights = Heights::new(coeffs);

    // Gift-wrap across edges starting from the first boundary segment.
    let p0 = polygon[0];
    let x0 = points
        .iter()
        .copied()
        .filter(|&p| p != p0 && orient(p0, polygon[1], p) == 0 && polygon_contains(&polygon, p) != Containment::Outside)
        .filter(|p| crate::num::dot(p.sub(p0), polygon[1].sub(p0)) > 0)
        .min_by_key(|p| crate::num::dot(p.sub(p0), p.sub(p0)))
        .expect("hull edge has an endpoint");

    let wrap = |a: Lattice, b: Lattice| -> Option<Lattice> {
        // Triangle on the left of the directed edge a -> b.
        let mut cand = points.iter().copied().filter(|&s| orient(a, b, s) > 0);
        let mut best = cand.next()?;
        for s in cand {
            if heights.above(a, b, best, s).is_positive() {
                best = s;
            }
        }
        Some(best)
    };

    let mut cells: BTreeSet<[Lattice; 3]> = BTreeSet::new();
    let mut seen: BTreeSet<(Lattice, Lattice)> = BTreeSet::new();
    let mut queue: VecDeque<(Lattice, Lattice)> = VecDeque::new();
    queue.push_back((p0, x0));
    let key = |a: Lattice, b: Lattice| if a < b { (a, b) } else { (b, a) };
    let mut first = true;
    while let Some((a, b)) = queue.pop_front() {
        // For the seed, look left; afterwards the known triangle is on the
        // left so the new one is on the right.
        let tri = if first {
            first = false;
            match wrap(a, b) {
                Some(s) => [a, b, s],
                None => return Err(singular("no cell on the seed edge")),
            }
        } else {
            match wrap(b, a) {
                Some(s) => [b, a, s],
                None => continue,
            }
        };
        if cells.len() > 4 * points.len() {
            return Err(singular("subdivision walk did not close"));
        }
        let mut sorted = tri;
        sorted.sort();
        if !cells.insert(sorted) {
            continue;
        }
        seen.insert(key(tri[0], tri[1]));
        for (u, v) in [(tri[1], tri[2]), (tri[2], tri[0]), (tri[0], tri[1])] {
            if seen.insert(key(u, v)) {
                queue.push_back((u, v));
            }
        }
    }

    let mut ccw_cells: Vec<[Lattice; 3]> = Vec::new();
    let mut total = 0;
    let mut used: BTreeSet<Lattice> = BTreeSet::new();
    for c in &cells {
        let mut t = *c;
        if orient(t[0], t[1], t[2]) < 0 {
            t.swap(1, 2);
        }
        let a2 = orient(t[0], t[1], t[2]);
        if a2 != 1 {
            return Err(singular(format!("cell {} {} {} has area {}/2", t[0], t[1], t[2], a2)));
        }
        for &s in &points {
            if t.contains(&s) {
                continue;
            }
            if !heights.above(t[0], t[1], t[2], s).is_negative() {
                return Err(singular(format!(
                    "lifted point {s} is not strictly below the facet over {} {} {}",
                    t[0], t[1], t[2]
                )));
            }
        }
        total += a2;
        used.extend(t);
        ccw_cells.push(t);
    }
    if total != area2 {
        return Err(singular("cells do not tile the polygon"));
    }
    if let Some(p) = points.iter().find(|p| !used.contains(p)) {
        return Err(singular(format!("lattice point {p} is not a vertex")));
    }

    let mut by_edge: BTreeMap<(Lattice, Lattice), Vec<usize>> = BTreeMap::new();
    for (k, t) in ccw_cells.iter().enumerate() {
        for (u, v) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
            by_edge.entry(key(u, v)).or_default().push(k);
        }
    }
    let mut edges = Vec::with_capacity(by_edge.len());
    for ((a, b), cs) in by_edge {
        if cs.len() > 2 {
            return Err(singular("edge shared by more than two cells"));
        }
        if cs.len() == 1 {
            let on_boundary = is_on_same_side(&polygon, a, b);
            if !on_boundary {
                return Err(singular("interior edge with a single cell"));
            }
        }
        edges.push(DualEdge { a, b, cells: cs });
    }
    Ok(DualSubdivision { polygon, points, cells: ccw_cells, edges, area2 })
}

fn is_on_same_side(poly: &[Lattice], a: Lattice, b: Lattice) -> bool {
    let n = poly.len();
    (0..n).any(|k| orient(poly[k], poly[(k + 1) % n], a) == 0 && orient(poly[k], poly[(k + 1) % n], b) == 0)
}
