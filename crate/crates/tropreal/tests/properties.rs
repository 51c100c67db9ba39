use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropreal::gf2::{Gf2Matrix, Gf2Vector};
use tropreal::intersect::intersection_components;
use tropreal::num::{qf, Point};
use tropreal::realstruct::{
    is_dividing, phase_from_signs, signs_from_phase, twists_from_phase, twists_from_signs,
};
use tropreal::sample::{random_curve, random_dividing, random_eps, random_signs, translate};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(rows in 1usize..8, cols in 1usize..8, bits in proptest::collection::vec(any::<bool>(), 64)) {
        let m = Gf2Matrix::from_bits(&(0..rows).map(|r| bits[r * 8..r * 8 + cols].to_vec()).collect::<Vec<_>>());
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.dim(), cols);
        for k in 0..ker.dim() {
            let coeffs: Vec<bool> = (0..ker.dim()).map(|j| j == k).collect();
            prop_assert!(m.mul_vec(&ker.element(&coeffs)).is_zero());
        }
    }

    #[test]
    fn twists_ignore_sign_symmetries(seed in any::<u64>(), d in 1u32..=4) {
        let mut r = rng(seed);
        let c = random_curve(&mut r, d);
        let delta = random_signs(&mut r, &c);
        let eps = random_eps(&mut r);
        let t = twists_from_signs(&c, &delta).unwrap();
        prop_assert_eq!(&twists_from_signs(&c, &delta.negate()).unwrap(), &t);
        prop_assert_eq!(&twists_from_signs(&c, &delta.resign(eps)).unwrap(), &t);
    }

    #[test]
    fn signs_survive_phase_round_trip(seed in any::<u64>(), d in 1u32..=4) {
        let mut r = rng(seed);
        let c = random_curve(&mut r, d);
        let p = phase_from_signs(&c, &random_signs(&mut r, &c)).unwrap();
        let back = signs_from_phase(&c, &p).unwrap();
        prop_assert_eq!(phase_from_signs(&c, &back).unwrap(), p.clone());
        prop_assert_eq!(twists_from_signs(&c, &back).unwrap(), twists_from_phase(&c, &p));
    }

    #[test]
    fn dividing_sets_are_closed_under_sum(seed in any::<u64>(), d in 2u32..=5) {
        let mut r = rng(seed);
        let c = random_curve(&mut r, d);
        let (a, b) = (random_dividing(&mut r, &c), random_dividing(&mut r, &c));
        prop_assert!(is_dividing(&c, &a).unwrap());
        prop_assert!(is_dividing(&c, &a.sum(&c, &b)).unwrap());
    }

    #[test]
    fn intersections_move_with_translation(seed in any::<u64>(), d1 in 1u32..=3, d2 in 1u32..=3, tx in -50i64..50, ty in -50i64..50) {
        let mut r = rng(seed);
        let (a, b) = (random_curve(&mut r, d1), random_curve(&mut r, d2));
        let Ok(before) = intersection_components(&a, &b) else { return Ok(()) };
        let t = Point::new(qf(tx, 7), qf(ty, 11));
        let (ta, tb) = (translate(&a, &t), translate(&b, &t));
        let after = intersection_components(&ta, &tb).unwrap();
        let shifted = |p: &Point| Point::new(&p.x + &t.x, &p.y + &t.y);
        let mut x: Vec<_> = before.iter().map(|c| (c.kind_name(), shifted(&c.location(&a, &b)).to_string(), c.multiplicity)).collect();
        let mut y: Vec<_> = after.iter().map(|c| (c.kind_name(), c.location(&ta, &tb).to_string(), c.multiplicity)).collect();
        x.sort();
        y.sort();
        prop_assert_eq!(x, y);
    }
}

#[test]
fn vector_support_round_trip() {
    let v = Gf2Vector::from_support(9, [0, 4, 8]);
    assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 4, 8]);
}
