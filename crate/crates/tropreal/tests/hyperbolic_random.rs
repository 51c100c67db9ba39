use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropreal::hyperbolic::*;
use tropreal::realstruct::{phase_from_twists, TwistSet};
use tropreal::sample::random_dividing;
use tropreal::{TropicalCurve, Z2Pair};

#[test]
fn honeycomb_loci_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let start = Instant::now();
    let mut nonempty = 0;
    for trial in 0..50 {
        let d = 2 + trial % 4;
        let c = TropicalCurve::honeycomb(d);
        let t = random_dividing(&mut rng, &c);
        let p = phase_from_twists(&c, &t, None).unwrap();
        let r = hyperbolicity_locus(&c, &p).unwrap();
        let hl = honeycomb_locus(&c, &t).unwrap();
        assert_eq!(r.h, hl, "trial {trial}, d = {d}");
        assert!(r.methods_agree(), "trial {trial}: {:?} vs {:?}", r.rh, r.rh_pointwise);
        assert_eq!(r.hyperbolic, !r.h.is_empty());
        nonempty += usize::from(!hl.is_empty());
    }
    eprintln!("{nonempty} hyperbolic of 50 in {:?}", start.elapsed());
}

#[test]
fn verdict_independent_of_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for d in 2..=4 {
        let c = TropicalCurve::honeycomb(d);
        let t = random_dividing(&mut rng, &c);
        let p = phase_from_twists(&c, &t, None).unwrap();
        for &a in &c.dual.points {
            for eps in Z2Pair::ALL {
                let verdicts: Vec<bool> = (0..5)
                    .map(|k| hyperbolic_at(&c, &p, &generic_sample(&c, a, k).unwrap(), eps).unwrap().hyperbolic())
                    .collect();
                assert!(verdicts.iter().all(|&x| x == verdicts[0]), "d = {d}, {a}, {eps}: {verdicts:?}");
            }
        }
    }
}

#[test]
fn disjoint_dividing_addition_keeps_hyperbolicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    for d in 2..=5 {
        let c = TropicalCurve::honeycomb(d);
        let bridges = multi_bridges(&c).unwrap();
        for _ in 0..20 {
            let t = random_dividing(&mut rng, &c);
            if !is_hyperbolic(&c, &t).unwrap().0 {
                continue;
            }
            // Any union of bridges avoiding T is dividing with disjoint support.
            let free: Vec<MultiBridge> =
                bridges.iter().filter(|b| b.edges.iter().all(|&e| !t.contains(e))).cloned().collect();
            let extra = bridge_twists(&c, &free);
            let sum: TwistSet = t.sum(&c, &extra);
            assert!(is_hyperbolic(&c, &sum).unwrap().0, "d = {d}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}
