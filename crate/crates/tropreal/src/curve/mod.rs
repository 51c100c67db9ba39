//! Non-singular plane tropical curves (max-plus convention).
//!
//! A curve is the corner locus of `max (a_ij + i x + j y)`. Its combinatorics
//! is dual to the regular subdivision of the Newton polygon; only unimodular
//! triangulations using every lattice point are accepted.

mod subdivision;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

pub use subdivision::{convex_hull, lattice_points, polygon_contains, Containment, DualEdge, DualSubdivision};

use crate::error::{Error, Result};
use crate::num::{det, dot, q, Lattice, Point, Q};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial {
    coeffs: BTreeMap<Lattice, Q>,
}

impl TropicalPolynomial {
    pub fn new(coeffs: BTreeMap<Lattice, Q>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Validation("empty support".into()));
        }
        if let Some(p) = coeffs.keys().find(|p| p.i < 0 || p.j < 0) {
            return Err(Error::Validation(format!("support point {p} has a negative exponent")));
        }
        Ok(TropicalPolynomial { coeffs })
    }

    pub fn coeffs(&self) -> &BTreeMap<Lattice, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, p: Lattice) -> Option<&Q> {
        self.coeffs.get(&p)
    }

    pub fn monomial(&self, p: Lattice, x: &Point) -> Q {
        &self.coeffs[&p] + q(p.i) * &x.x + q(p.j) * &x.y
    }

    pub fn eval(&self, x: &Point) -> Q {
        self.coeffs.keys().map(|p| self.monomial(*p, x)).max().expect("non-empty support")
    }

    /// Support points whose monomial attains the maximum at `x`.
    pub fn argmax(&self, x: &Point) -> Vec<Lattice> {
        let m = self.eval(x);
        self.coeffs.keys().copied().filter(|p| self.monomial(*p, x) == m).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub pos: Point,
    /// Dual triangle, counter-clockwise.
    pub cell: [Lattice; 3],
    pub edges: [EdgeId; 3],
}

#[derive(Clone, Debug)]
pub struct Edge {
    /// Dual edge endpoints, sorted.
    pub dual: (Lattice, Lattice),
    pub tail: VertexId,
    /// `None` for an unbounded ray.
    pub head: Option<VertexId>,
    /// Primitive direction from `tail` towards `head` (outward for rays).
    pub dir: Lattice,
}

impl Edge {
    pub fn is_bounded(&self) -> bool {
        self.head.is_some()
    }

    pub fn ends(&self) -> Vec<VertexId> {
        match self.head {
            Some(h) => vec![self.tail, h],
            None => vec![self.tail],
        }
    }

    /// Primitive direction pointing away from vertex `v`.
    pub fn dir_from(&self, v: VertexId) -> Lattice {
        if v == self.tail {
            self.dir
        } else {
            self.dir.neg()
        }
    }

    pub fn other_end(&self, v: VertexId) -> Option<VertexId> {
        if v == self.tail {
            self.head
        } else {
            Some(self.tail)
        }
    }

    pub fn dir_mod2(&self) -> crate::gf2::Z2Pair {
        crate::gf2::Z2Pair::from_lattice(self.dir)
    }
}

#[derive(Clone, Debug)]
pub struct TropicalCurve {
    pub poly: TropicalPolynomial,
    pub dual: DualSubdivision,
    pub vertices: Vec<Vertex>,
    /// Indexed like `dual.edges`.
    pub edges: Vec<Edge>,
    /// Bounded edges in increasing id order; positions index GF(2) vectors.
    pub bounded: Vec<EdgeId>,
    bounded_pos: Vec<Option<usize>>,
    pub degree: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveCycle {
    pub center: Lattice,
    /// Bounded edges in cyclic order.
    pub edges: Vec<EdgeId>,
    /// `vertices[k]` and `vertices[k+1]` are joined by `edges[k]`.
    pub vertices: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ComplementComponent {
    pub dual_point: Lattice,
    pub bounded: bool,
    pub boundary_edges: Vec<EdgeId>,
}

fn solve_vertex(poly: &TropicalPolynomial, t: &[Lattice; 3]) -> Point {
    // (p2 - p1) . X = a1 - a2 and (p3 - p1) . X = a1 - a3.
    let a = |p: Lattice| poly.coeff(p).expect("cell vertex in support").clone();
    let (u, v) = (t[1].sub(t[0]), t[2].sub(t[0]));
    let (r1, r2) = (a(t[0]) - a(t[1]), a(t[0]) - a(t[2]));
    let dt = q(det(u, v));
    let x = (&r1 * q(v.j) - &r2 * q(u.j)) / &dt;
    let y = (q(u.i) * &r2 - q(v.i) * &r1) / &dt;
    Point::new(x, y)
}

impl TropicalCurve {
    /// Corner locus of `poly` with its dual subdivision.
    pub fn from_polynomial(poly: TropicalPolynomial) -> Result<Self> {
        let dual = subdivision::regular_subdivision(poly.coeffs())?;
        let vertices_pos: Vec<Point> = dual.cells.iter().map(|t| solve_vertex(&poly, t)).collect();
        let mut edges = Vec::with_capacity(dual.edges.len());
        let mut incident: Vec<Vec<EdgeId>> = vec![Vec::new(); dual.cells.len()];
        for (id, de) in dual.edges.iter().enumerate() {
            let normal = de.b.sub(de.a).rot90();
            let t0 = de.cells[0];
            let apex = dual.apex(t0, de);
            // Outward normal of cell t0 along this dual edge.
            let out = if dot(normal, apex.sub(de.a)) < 0 { normal } else { normal.neg() };
            let edge = if de.cells.len() == 2 {
                let t1 = de.cells[1];
                let (dx, dy) = vertices_pos[t1].sub(&vertices_pos[t0]);
                let along = q(out.i) * &dx + q(out.j) * &dy;
                if along <= Q::zero() || q(out.i) * &dy != q(out.j) * &dx {
                    return Err(Error::SingularSubdivision("bounded edge of non-positive length".into()));
                }
                Edge { dual: (de.a, de.b), tail: t0, head: Some(t1), dir: out }
            } else {
                Edge { dual: (de.a, de.b), tail: t0, head: None, dir: out }
            };
            for v in edge.ends() {
                incident[v].push(id);
            }
            edges.push(edge);
        }
        let vertices: Vec<Vertex> = dual
            .cells
            .iter()
            .zip(vertices_pos)
            .zip(incident)
            .map(|((cell, pos), inc)| {
                let arr: [EdgeId; 3] = inc.try_into().expect("every vertex is 3-valent");
                Vertex { pos, cell: *cell, edges: arr }
            })
            .collect();
        let bounded: Vec<EdgeId> = (0..edges.len()).filter(|&e| edges[e].is_bounded()).collect();
        let mut bounded_pos = vec![None; edges.len()];
        for (k, &e) in bounded.iter().enumerate() {
            bounded_pos[e] = Some(k);
        }
        let degree = standard_degree(&dual.polygon);
        let curve = TropicalCurve { poly, dual, vertices, edges, bounded, bounded_pos, degree };
        curve.check_balancing();
        Ok(curve)
    }

    /// Degree-`d` honeycomb from the lift `a_ij = -(i² + ij + j²)`.
    pub fn honeycomb(d: u32) -> Self {
        assert!(d >= 1, "honeycomb degree must be positive");
        let d = d as i64;
        let mut coeffs = BTreeMap::new();
        for i in 0..=d {
            for j in 0..=d - i {
                coeffs.insert(Lattice::new(i, j), q(-(i * i + i * j + j * j)));
            }
        }
        let poly = TropicalPolynomial::new(coeffs).expect("valid support");
        let curve = TropicalCurve::from_polynomial(poly).expect("standard triangulation is unimodular");
        assert!(curve.is_honeycomb(), "honeycomb lift produced a non-honeycomb curve");
        curve
    }

    fn check_balancing(&self) {
        for (v, vx) in self.vertices.iter().enumerate() {
            let s = vx.edges.iter().fold(Lattice::new(0, 0), |acc, &e| acc.add(self.edges[e].dir_from(v)));
            assert_eq!(s, Lattice::new(0, 0), "vertex {v} is not balanced");
        }
    }

    pub fn num_bounded(&self) -> usize {
        self.bounded.len()
    }

    /// Position of a bounded edge in GF(2) vectors over bounded edges.
    pub fn bounded_index(&self, e: EdgeId) -> Option<usize> {
        self.bounded_pos[e]
    }

    pub fn edge_by_dual(&self, p: Lattice, q: Lattice) -> Option<EdgeId> {
        self.dual.edge_index(p, q)
    }

    pub fn require_degree(&self) -> Result<u32> {
        self.degree.ok_or(Error::DegreeUnset)
    }

    /// Every edge direction is one of ±(1,0), ±(0,1), ±(1,1).
    pub fn is_honeycomb(&self) -> bool {
        self.degree.is_some()
            && self.edges.iter().all(|e| {
                let d = if e.dir.i < 0 || (e.dir.i == 0 && e.dir.j < 0) { e.dir.neg() } else { e.dir };
                d == Lattice::new(1, 0) || d == Lattice::new(0, 1) || d == Lattice::new(1, 1)
            })
    }

    /// The vertex shared by two edges, if any.
    pub fn common_vertex(&self, e: EdgeId, f: EdgeId) -> Option<VertexId> {
        let fe = self.edges[f].ends();
        self.edges[e].ends().into_iter().find(|v| fe.contains(v))
    }

    pub fn primitive_cycles(&self) -> Vec<PrimitiveCycle> {
        let mut out = Vec::new();
        for &c in &self.dual.points {
            if !self.dual.is_interior_point(c) {
                continue;
            }
            let mut inc: Vec<EdgeId> = (0..self.dual.edges.len()).filter(|&k| self.dual.edges[k].has(c)).collect();
            inc.sort_by(|&x, &y| {
                let vx = self.dual.edges[x].other(c).sub(c);
                let vy = self.dual.edges[y].other(c).sub(c);
                angle_cmp(vx, vy)
            });
            let n = inc.len();
            let vertices: Vec<VertexId> = (0..n)
                .map(|k| {
                    let (e, f) = (inc[k], inc[(k + 1) % n]);
                    self.common_vertex(e, f).expect("consecutive edges around a point share a cell")
                })
                .collect();
            let mut edges = inc;
            edges.rotate_left(1);
            out.push(PrimitiveCycle { center: c, edges, vertices });
        }
        out
    }

    pub fn complement_components(&self) -> Result<Vec<ComplementComponent>> {
        self.require_degree()?;
        Ok(self
            .dual
            .points
            .iter()
            .map(|&p| ComplementComponent {
                dual_point: p,
                bounded: self.dual.is_interior_point(p),
                boundary_edges: (0..self.edges.len()).filter(|&k| self.dual.edges[k].has(p)).collect(),
            })
            .collect())
    }

    pub fn component(&self, alpha: Lattice) -> Result<ComplementComponent> {
        self.complement_components()?
            .into_iter()
            .find(|c| c.dual_point == alpha)
            .ok_or(Error::UnknownPoint(alpha))
    }

    /// `x` lies in the open region where the monomial of `alpha` strictly dominates.
    pub fn in_component(&self, alpha: Lattice, x: &Point) -> bool {
        let m = self.poly.monomial(alpha, x);
        self.poly.coeffs().keys().all(|&p| p == alpha || self.poly.monomial(p, x) < m)
    }

    pub fn on_curve(&self, x: &Point) -> bool {
        self.poly.argmax(x).len() >= 2
    }

    /// Point of an edge at parameter `t` from its tail.
    pub fn edge_point(&self, e: EdgeId, t: &Q) -> Point {
        self.vertices[self.edges[e].tail].pos.add_dir(self.edges[e].dir, t)
    }

    /// Parameter length of a bounded edge (`head = tail + len * dir`).
    pub fn edge_len(&self, e: EdgeId) -> Option<Q> {
        let ed = &self.edges[e];
        let h = ed.head?;
        let (dx, dy) = self.vertices[h].pos.sub(&self.vertices[ed.tail].pos);
        Some(if ed.dir.i != 0 { dx / q(ed.dir.i) } else { dy / q(ed.dir.j) })
    }
}

/// Angular order starting at direction (1,0), counter-clockwise.
pub fn angle_cmp(a: Lattice, b: Lattice) -> std::cmp::Ordering {
    let half = |v: Lattice| v.j < 0 || (v.j == 0 && v.i < 0);
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&det(a, b)))
}

fn standard_degree(polygon: &[Lattice]) -> Option<u32> {
    if polygon.len() != 3 {
        return None;
    }
    let mut p = polygon.to_vec();
    p.sort();
    let d = p[2].i;
    (d > 0 && p == vec![Lattice::new(0, 0), Lattice::new(0, d), Lattice::new(d, 0)]).then_some(d as u32)
}

impl fmt::Display for TropicalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "vertices: {}, edges: {} ({} bounded), cells: {}",
            self.vertices.len(),
            self.edges.len(),
            self.bounded.len(),
            self.dual.cells.len()
        )?;
        if let Some(d) = self.degree {
            writeln!(f, "degree: {d}")?;
        }
        Ok(())
    }
}
