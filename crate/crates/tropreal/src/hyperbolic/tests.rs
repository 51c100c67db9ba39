use super::*;
use crate::num::qf;
use crate::realstruct::{phase_from_twists, TwistSet};

fn honeycomb_plus(d: u32) -> (TropicalCurve, RealPhaseStructure) {
    let c = TropicalCurve::honeycomb(d);
    let p = phase_from_signs(&c, &SignDistribution::constant(&c, 1)).unwrap();
    (c, p)
}

fn bridge(c: &TropicalCurve, line: BridgeLine) -> MultiBridge {
    multi_bridges(c).unwrap().into_iter().find(|b| b.line == line).unwrap()
}

#[test]
fn empty_twists_quartic_not_hyperbolic() {
    let c = TropicalCurve::honeycomb(4);
    assert_eq!(is_hyperbolic(&c, &TwistSet::empty(&c)).unwrap(), (false, 3));
}

#[test]
fn stable_quintic_hyperbolic() {
    let (c, p) = honeycomb_plus(5);
    assert_eq!(is_hyperbolic(&c, &twists_from_phase(&c, &p)).unwrap(), (true, 2));
    assert!(is_stable_limit(&c, &p));
}

#[test]
fn fan_faces() {
    let f = sigma_v(&Point::origin());
    assert_eq!(f.face_of(&Point::new(q(1), q(2))), Some(Lattice::new(1, 1)));
    assert_eq!(f.face_of(&Point::new(q(-1), q(0))), Some(Lattice::new(1, 0)));
    assert_eq!(f.face_of(&Point::new(q(0), q(-1))), Some(Lattice::new(0, 1)));
    assert_eq!(f.face_of(&Point::new(q(-1), q(-1))), None);
    assert_eq!(f.face_of(&Point::new(q(3), q(0))), None);
}

#[test]
fn genericity() {
    let c = TropicalCurve::honeycomb(2);
    assert!(is_generic(&Point::origin(), &c).unwrap());
    // The ray (-1,-1) from here runs into the vertex (2,2).
    assert!(!is_generic(&Point::new(qf(5, 2), qf(5, 2)), &c).unwrap());
    // The ray (1,0) from here contains the edge from (2,2) to (3,2).
    assert!(!is_generic(&Point::new(qf(1, 2), q(2)), &c).unwrap());
    assert!(matches!(is_generic(&Point::new(q(1), q(1)), &c), Err(Error::PointOnCurve)));
}

#[test]
fn stable_honeycomb_every_point_with_zero_eps() {
    let (c, p) = honeycomb_plus(3);
    for &a in &c.dual.points {
        let v = hyperbolic_wrt_point(&c, &p, a, Z2Pair::ZERO).unwrap();
        assert!(v.hyperbolic(), "{a}: {:?}", v.failure);
    }
}

#[test]
fn honeycomb_failures_are_condition_three() {
    let c = TropicalCurve::honeycomb(4);
    let t = bridge_twists(&c, &[bridge(&c, BridgeLine::Diagonal(3))]);
    let p = phase_from_twists(&c, &t, None).unwrap();
    let r = hyperbolicity_locus(&c, &p).unwrap();
    for rec in &r.per_point {
        if let Some(f) = &rec.failure {
            assert_eq!(f.condition(), 3);
        }
    }
    let neg = r.per_point.iter().find(|x| x.component == Lattice::new(2, 1)).unwrap();
    assert!(!neg.hyperbolic);
}

#[test]
fn single_diagonal_bridge_locus() {
    let c = TropicalCurve::honeycomb(4);
    let t = bridge_twists(&c, &[bridge(&c, BridgeLine::Diagonal(3))]);
    assert_eq!(honeycomb_locus(&c, &t).unwrap(), [Lattice::new(1, 1)].into());
    let p = phase_from_twists(&c, &t, None).unwrap();
    let r = hyperbolicity_locus(&c, &p).unwrap();
    assert!(r.hyperbolic);
    assert_eq!(r.h, [Lattice::new(1, 1)].into());
    assert_eq!(r.rh.len(), 1);
    assert!(r.methods_agree(), "{:?} vs {:?}", r.rh, r.rh_pointwise);
}

#[test]
fn stable_locus_is_everything() {
    for d in 1..=4 {
        let (c, p) = honeycomb_plus(d);
        let r = hyperbolicity_locus(&c, &p).unwrap();
        assert!(r.hyperbolic && r.stable);
        assert_eq!(r.h.len(), c.dual.points.len());
        assert!(r.methods_agree(), "d = {d}: {:?} vs {:?}", r.rh, r.rh_pointwise);
    }
}

#[test]
fn non_hyperbolic_locus_empty() {
    let c = TropicalCurve::honeycomb(4);
    let p = phase_from_twists(&c, &TwistSet::empty(&c), None).unwrap();
    let r = hyperbolicity_locus(&c, &p).unwrap();
    assert!(!r.hyperbolic && r.h.is_empty() && r.methods_agree());
}

#[test]
fn bridge_census() {
    assert_eq!(multi_bridges(&TropicalCurve::honeycomb(4)).unwrap().len(), 9);
    let c2 = TropicalCurve::honeycomb(2);
    let b2 = multi_bridges(&c2).unwrap();
    assert_eq!(b2.len(), 3);
    assert!(b2.iter().all(|b| b.edges.len() == 1));
    let line = TropicalCurve::from_polynomial(
        TropicalPolynomial::new(
            [(Lattice::new(0, 0), q(0)), (Lattice::new(1, 0), q(0)), (Lattice::new(0, 2), q(-1)), (Lattice::new(0, 1), q(0)), (Lattice::new(1, 1), q(1)), (Lattice::new(2, 0), q(-3))].into(),
        )
        .unwrap(),
    )
    .unwrap();
    if !line.is_honeycomb() {
        assert!(matches!(multi_bridges(&line), Err(Error::NotHoneycomb)));
    }
}

#[test]
fn alpha_flats() {
    let c = TropicalCurve::honeycomb(4);
    let f = hyp_alpha_flat(&c, Lattice::new(1, 1)).unwrap();
    assert_eq!(f.codim(&c), 1);
    assert_eq!(f.constraining_bridges[0].line, BridgeLine::Diagonal(3));
    assert_eq!(f.flat.direction.dim(), 8);
    let f0 = hyp_alpha_flat(&c, Lattice::new(0, 0)).unwrap();
    assert_eq!(f0.codim(&c), 3);
}

#[test]
fn honeycomb_locus_needs_dividing() {
    let c = TropicalCurve::honeycomb(3);
    let one = TwistSet::from_edges(&c, [c.primitive_cycles()[0].edges[0]]).unwrap();
    assert!(matches!(honeycomb_locus(&c, &one), Err(Error::NotDividing)));
}
