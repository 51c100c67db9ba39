use std::collections::BTreeMap;

use super::*;
use crate::num::qf;
use crate::realstruct::{phase_from_signs, SignDistribution};
use crate::TropicalPolynomial;

fn line_at(ux: Q, uy: Q) -> TropicalCurve {
    let coeffs: BTreeMap<Lattice, Q> =
        [(Lattice::new(0, 0), q(0)), (Lattice::new(1, 0), -ux), (Lattice::new(0, 1), -uy)].into();
    TropicalCurve::from_polynomial(TropicalPolynomial::new(coeffs).unwrap()).unwrap()
}

fn plus(c: &TropicalCurve) -> RealPhaseStructure {
    phase_from_signs(c, &SignDistribution::constant(c, 1)).unwrap()
}

#[test]
fn line_vertex_inside_honeycomb_edge() {
    let h = TropicalCurve::honeycomb(2);
    let l = line_at(q(0), q(0));
    let comps = intersection_components(&h, &l).unwrap();
    let eie: Vec<_> = comps.iter().filter(|c| matches!(c.kind, IntersectionKind::EdgeInEdge { .. })).collect();
    assert_eq!(eie.len(), 1);
    let IntersectionKind::EdgeInEdge { inner_of, inner, .. } = eie[0].kind else { unreachable!() };
    assert_eq!(inner_of, Which::First);
    let ends: Vec<Point> = h.edges[inner].ends().iter().map(|&v| h.vertices[v].pos.clone()).collect();
    assert!(ends.contains(&Point::new(q(1), q(1))) && ends.contains(&Point::new(q(2), q(2))));
    assert_eq!(eie[0].multiplicity, 2);
    assert_eq!(comps.iter().map(|c| c.multiplicity).sum::<u32>(), 2);
}

#[test]
fn line_vertex_on_diagonal_gives_segment_overlap() {
    let h = TropicalCurve::honeycomb(2);
    let l = line_at(qf(3, 2), qf(3, 2));
    let comps = intersection_components(&h, &l).unwrap();
    let so: Vec<_> = comps.iter().filter(|c| matches!(c.kind, IntersectionKind::SegmentOverlap { .. })).collect();
    assert_eq!(so.len(), 1);
    let IntersectionKind::SegmentOverlap { start, end, .. } = &so[0].kind else { unreachable!() };
    assert_eq!(start, &Point::new(q(2), q(2)));
    assert_eq!(end, &Point::new(qf(3, 2), qf(3, 2)));
    assert_eq!(bezout_total(&h, &l).unwrap(), 2);
}

#[test]
fn transverse_multiplicities() {
    for m in 1..=4i64 {
        let coeffs: BTreeMap<Lattice, Q> =
            [(Lattice::new(0, 0), q(0)), (Lattice::new(1, 0), q(0)), (Lattice::new(m, 1), q(0))].into();
        let c = TropicalCurve::from_polynomial(TropicalPolynomial::new(coeffs).unwrap()).unwrap();
        // The (1,1) ray of this line crosses the ray of direction (1, 1 - m) at (1, 1 - m).
        let l = line_at(q(-1), q(-1 - m));
        let comps = intersection_components(&c, &l).unwrap();
        let hit: Vec<_> = comps
            .iter()
            .filter(|k| matches!(k.kind, IntersectionKind::TransversePoint { e, .. } if c.edges[e].dir.i * (m - 1) + c.edges[e].dir.j == 0))
            .collect();
        assert_eq!(hit.len(), 1, "m = {m}");
        assert_eq!(hit[0].multiplicity, m as u32);
    }
    assert!(matches!(transverse_multiplicity(Lattice::new(1, 1), Lattice::new(-1, -1)), Err(Error::ParallelDirections)));
}

#[test]
fn lift_normalisation() {
    assert_eq!(LiftOutcome::forced(1, 0, None), LiftOutcome::ForcedReal { count: 1, locations: None });
    assert_eq!(LiftOutcome::forced(0, 2, None), LiftOutcome::ForcedPairs { pairs: 2 });
    assert_eq!(LiftOutcome::forced(1, 1, None), LiftOutcome::ForcedMixed { reals: 1, pairs: 1 });
}

#[test]
fn transverse_lifts_by_parity() {
    let a = line_at(q(0), q(0));
    let b = line_at(q(1), q(2));
    let (pa, pb) = (plus(&a), plus(&b));
    let comps = intersection_components(&a, &b).unwrap();
    assert_eq!(comps.len(), 1);
    let out = real_lift(RealCurve::new(&a, &pa), RealCurve::new(&b, &pb), &comps[0]).unwrap();
    assert_eq!(out.real_count(), Some(1));
}

#[test]
fn identical_curves_are_unsupported() {
    let h = TropicalCurve::honeycomb(2);
    assert!(matches!(intersection_components(&h, &h), Err(Error::UnsupportedConfiguration(_))));
}

#[test]
fn relative_twist_wrong_kind() {
    let a = line_at(q(0), q(0));
    let b = line_at(q(1), q(2));
    let (pa, pb) = (plus(&a), plus(&b));
    let comps = intersection_components(&a, &b).unwrap();
    let (ra, rb) = (RealCurve::new(&a, &pa), RealCurve::new(&b, &pb));
    assert!(matches!(is_relatively_twisted(ra, rb, &comps[0]), Err(Error::WrongKind)));
    assert!(matches!(tangency_possible(ra, rb, &comps[0]), Err(Error::WrongKind)));
}
