//! Seeded generators of random instances for property tests and the
//! built-in verification suite.

use std::collections::BTreeMap;

use rand::Rng;

use crate::curve::{TropicalCurve, TropicalPolynomial};
use crate::gf2::Z2Pair;
use crate::num::{q, qf, Lattice, Point};
use crate::intersect::{intersection_components, IntersectionComponent, IntersectionKind};
use crate::realstruct::{div_space, phase_from_signs, RealPhaseStructure, SignDistribution, TwistSet};

/// A random non-singular curve of degree `d`: a strictly concave quadratic
/// lift with a random positive definite form, a random linear part and
/// small noise. Retries until the subdivision is unimodular.
pub fn random_curve<R: Rng>(rng: &mut R, d: u32) -> TropicalCurve {
    let d = d as i64;
    loop {
        let a = rng.gen_range(1..=6i64);
        let c = rng.gen_range(1..=6i64);
        let bmax = ((4 * a * c) as f64).sqrt().ceil() as i64;
        let b = rng.gen_range(-bmax..=bmax);
        if b * b >= 4 * a * c {
            continue;
        }
        let (lx, ly) = (rng.gen_range(-30..=30i64), rng.gen_range(-30..=30i64));
        let mut coeffs = BTreeMap::new();
        for i in 0..=d {
            for j in 0..=d - i {
                let quad = -(a * i * i + b * i * j + c * j * j) * 12 + lx * i + ly * j;
                let noise = rng.gen_range(-5..=5i64);
                coeffs.insert(Lattice::new(i, j), qf(quad * 7 + noise, 7));
            }
        }
        let poly = TropicalPolynomial::new(coeffs).expect("valid support");
        if let Ok(curve) = TropicalCurve::from_polynomial(poly) {
            return curve;
        }
    }
}

pub fn random_signs<R: Rng>(rng: &mut R, curve: &TropicalCurve) -> SignDistribution {
    let signs = curve.dual.points.iter().map(|&p| (p, if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
    SignDistribution::new(signs).expect("signs are ±1")
}

pub fn random_eps<R: Rng>(rng: &mut R) -> Z2Pair {
    Z2Pair::ALL[rng.gen_range(0..4)]
}

/// Uniform random element of Div(C).
pub fn random_dividing<R: Rng>(rng: &mut R, curve: &TropicalCurve) -> TwistSet {
    let div = div_space(curve);
    let coeffs: Vec<bool> = (0..div.dim()).map(|_| rng.gen_bool(0.5)).collect();
    TwistSet::from_vector(curve, &div.element(&coeffs))
}

/// A translate of `curve` by a random rational vector.
pub fn random_translate<R: Rng>(rng: &mut R, curve: &TropicalCurve) -> TropicalCurve {
    let t = Point::new(qf(rng.gen_range(-400..=400), 97), qf(rng.gen_range(-400..=400), 89));
    translate(curve, &t)
}

/// `curve` moved by `t`: the coefficient of `x^i y^j` shifts by `-(i,j)·t`.
pub fn translate(curve: &TropicalCurve, t: &Point) -> TropicalCurve {
    let coeffs = curve
        .poly
        .coeffs()
        .iter()
        .map(|(p, c)| (*p, c - q(p.i) * &t.x - q(p.j) * &t.y))
        .collect();
    TropicalCurve::from_polynomial(TropicalPolynomial::new(coeffs).expect("same support"))
        .expect("translation preserves the subdivision")
}

/// Two real curves meeting in a segment overlap, with equal phases on the
/// overlapping edges.
pub struct OverlapFixture {
    pub a: TropicalCurve,
    pub pa: RealPhaseStructure,
    pub b: TropicalCurve,
    pub pb: RealPhaseStructure,
    pub component: IntersectionComponent,
}

/// Places a vertex of a random second curve inside a bounded edge of a
/// random first curve so that one of its edges runs along it past the far
/// end. Retries on configurations with unsupported components.
pub fn random_overlap<R: Rng>(rng: &mut R) -> OverlapFixture {
    loop {
        let (d1, d2) = (rng.gen_range(2..=4), rng.gen_range(1..=3));
        let a = random_curve(rng, d1);
        let b0 = random_curve(rng, d2);
        let mut options = Vec::new();
        for &e in &a.bounded {
            for (v2, vx) in b0.vertices.iter().enumerate() {
                for &f in &vx.edges {
                    let df = b0.edges[f].dir_from(v2);
                    if df == a.edges[e].dir || df == a.edges[e].dir.neg() {
                        options.push((e, v2, f));
                    }
                }
            }
        }
        if options.is_empty() {
            continue;
        }
        let (e, v2, f) = options[rng.gen_range(0..options.len())];
        let ed = &a.edges[e];
        let len = a.edge_len(e).unwrap();
        let k = rng.gen_range(1..=3i64);
        let df = b0.edges[f].dir_from(v2);
        // Overlap runs from the placed vertex to the end of e that f points at.
        let t = &len * qf(k, 4);
        let rest = if df == ed.dir { &len - &t } else { t.clone() };
        if b0.edge_len(f).is_some_and(|l| l <= rest) {
            continue;
        }
        let target = a.vertices[ed.tail].pos.add_dir(ed.dir, &t);
        let (dx, dy) = target.sub(&b0.vertices[v2].pos);
        let b = translate(&b0, &Point::new(dx, dy));
        let pa = phase_from_signs(&a, &random_signs(rng, &a)).unwrap();
        let mut pb = phase_from_signs(&b, &random_signs(rng, &b)).unwrap();
        let (la, lb) = (pa.line(e), pb.line(f));
        if la != lb {
            let shift = Z2Pair::ALL.into_iter().find(|&s| lb.translate(s) == la).unwrap();
            pb = pb.translate(shift);
        }
        let Ok(comps) = intersection_components(&a, &b) else { continue };
        let found = comps
            .into_iter()
            .find(|c| matches!(c.kind, IntersectionKind::SegmentOverlap { e: e1, e2, .. } if e1 == e && e2 == f));
        if let Some(component) = found {
            return OverlapFixture { a, pa, b, pb, component };
        }
    }
}
