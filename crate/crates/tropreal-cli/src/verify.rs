//! Randomized cross-checks between independent computations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropreal::gf2::{solve_affine, Solution};
use tropreal::hyperbolic::{honeycomb_locus, hyperbolicity_locus};
use tropreal::intersect::{bezout_total, is_relatively_twisted, relatively_twisted_by_signs, RealCurve};
use tropreal::realstruct::*;
use tropreal::sample::{random_curve, random_dividing, random_eps, random_overlap, random_signs, random_translate};
use tropreal::TropicalCurve;

pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub mismatches: usize,
}

impl CheckResult {
    pub fn line(&self) -> String {
        let status = if self.mismatches == 0 { "ok" } else { "MISMATCH" };
        format!("{status:8} {:52} {} cases, {} mismatches", self.name, self.cases, self.mismatches)
    }
}

fn check(name: &'static str, cases: usize, mut f: impl FnMut(usize) -> bool) -> CheckResult {
    let mismatches = (0..cases).filter(|&k| !f(k)).count();
    CheckResult { name, cases, mismatches }
}

pub fn run(seed: u64, trials: usize) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    out.push(check("component count: twist matrix vs real part", trials, |k| {
        let c = random_curve(&mut rng, 1 + (k % 5) as u32);
        let delta = random_signs(&mut rng, &c);
        let (Ok(p), Ok(t)) = (phase_from_signs(&c, &delta), twists_from_signs(&c, &delta)) else { return false };
        let direct = real_part(&c, &p).map(|rp| count_components_direct(&rp).count);
        is_admissible(&c, &t) && count_components_matrix(&c, &t).ok() == direct.ok()
    }));

    out.push(check("twists: sign rule vs geometric sidedness", trials, |k| {
        let c = random_curve(&mut rng, 1 + (k % 5) as u32);
        let delta = random_signs(&mut rng, &c);
        let p = phase_from_signs(&c, &delta).unwrap();
        twists_from_signs(&c, &delta).ok() == Some(twists_from_phase(&c, &p))
    }));

    out.push(check("sign symmetries give equal twists", trials, |k| {
        let c = random_curve(&mut rng, 1 + (k % 5) as u32);
        let delta = random_signs(&mut rng, &c);
        let eps = random_eps(&mut rng);
        let t = twists_from_signs(&c, &delta).unwrap();
        let p = phase_from_signs(&c, &delta).unwrap();
        let moved = phase_from_signs(&c, &delta.resign(eps)).unwrap();
        twists_from_signs(&c, &delta.negate()).ok() == Some(t.clone())
            && twists_from_signs(&c, &delta.resign(eps)).ok() == Some(t)
            && moved == p.translate(eps)
    }));

    out.push(check("dividing test vs affine membership", trials, |k| {
        let c = random_curve(&mut rng, 1 + (k % 5) as u32);
        let t = twists_from_signs(&c, &random_signs(&mut rng, &c)).unwrap();
        let member = match solve_affine(c.num_bounded(), &div_constraints(&c)) {
            Solution::Empty => false,
            s => s.contains(t.vector()),
        };
        is_dividing(&c, &t).ok() == Some(member)
    }));

    out.push(check("phase from twists reproduces the twists", trials, |k| {
        let c = random_curve(&mut rng, 1 + (k % 5) as u32);
        let t = twists_from_signs(&c, &random_signs(&mut rng, &c)).unwrap();
        phase_from_twists(&c, &t, None).is_ok_and(|p| twists_from_phase(&c, &p) == t)
    }));

    out.push(check("honeycomb loci: nesting vs point-wise vs bridges", trials.div_ceil(5), |k| {
        let c = TropicalCurve::honeycomb(2 + (k % 3) as u32);
        let t = random_dividing(&mut rng, &c);
        let p = phase_from_twists(&c, &t, None).unwrap();
        let Ok(r) = hyperbolicity_locus(&c, &p) else { return false };
        r.methods_agree() && honeycomb_locus(&c, &t).is_ok_and(|h| h == r.h)
    }));

    out.push(check("relative twist: sidedness vs signs", trials, |_| {
        let fx = random_overlap(&mut rng);
        let (a, b) = (RealCurve::new(&fx.a, &fx.pa), RealCurve::new(&fx.b, &fx.pb));
        is_relatively_twisted(a, b, &fx.component).ok() == relatively_twisted_by_signs(a, b, &fx.component).ok()
    }));

    out.push(check("Bezout totals on random translates", trials, |_| {
        let (d1, d2) = (rng.gen_range(1..=4u32), rng.gen_range(1..=4u32));
        let a = random_curve(&mut rng, d1);
        let b0 = random_curve(&mut rng, d2);
        let b = random_translate(&mut rng, &b0);
        bezout_total(&a, &b).ok() == Some(d1 * d2)
    }));
    out
}
