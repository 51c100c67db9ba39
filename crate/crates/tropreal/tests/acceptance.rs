//! End-to-end acceptance suite. Prints one line per criterion and exits
//! non-zero if any criterion fails or overruns its time limit.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropreal::gf2::{solve_affine, Gf2Matrix, Gf2Subspace, Solution};
use tropreal::hyperbolic::*;
use tropreal::intersect::*;
use tropreal::num::{q, qf};
use tropreal::realstruct::*;
use tropreal::sample::{random_curve, random_dividing, random_overlap, random_signs, random_translate};
use tropreal::{Lattice, Point, TropicalCurve, TropicalPolynomial, Z2Pair, Q};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn plus_phase(c: &TropicalCurve) -> RealPhaseStructure {
    phase_from_signs(c, &SignDistribution::constant(c, 1)).unwrap()
}

fn stable_honeycombs() -> Check {
    for d in 1..=6u32 {
        let c = TropicalCurve::honeycomb(d);
        let p = plus_phase(&c);
        let t = twists_from_phase(&c, &p);
        let bounded = 3 * binom(d as u64, 2) as usize;
        ensure!(c.num_bounded() == bounded && t.len() == bounded, "d={d}: {} twisted of {}", t.len(), c.num_bounded());
        ensure!(is_stable_limit(&c, &p), "d={d}: not a stable limit");
        let want_kernel = d.div_ceil(2) as usize - 1;
        ensure!(is_hyperbolic(&c, &t).unwrap() == (true, want_kernel), "d={d}: is_hyperbolic");
        let want_count = d.div_ceil(2) as usize;
        let m = count_components_matrix(&c, &t).unwrap();
        let direct = count_components_direct(&real_part(&c, &p).unwrap());
        ensure!(m == want_count && direct.count == want_count, "d={d}: counts {m}, {}", direct.count);
        let r = hyperbolicity_locus(&c, &p).unwrap();
        let all = binom(d as u64 + 2, 2) as usize;
        ensure!(r.h.len() == all && r.h_pointwise.len() == all, "d={d}: |H| = {}, {}", r.h.len(), r.h_pointwise.len());
        ensure!(r.methods_agree(), "d={d}: real loci differ");
    }
    Ok(())
}

fn bridge(c: &TropicalCurve, line: BridgeLine) -> MultiBridge {
    multi_bridges(c).unwrap().into_iter().find(|b| b.line == line).unwrap()
}

fn single_diagonal_bridge() -> Check {
    let c = TropicalCurve::honeycomb(4);
    let t = bridge_twists(&c, &[bridge(&c, BridgeLine::Diagonal(3))]);
    let want: BTreeSet<Lattice> = [Lattice::new(1, 1)].into();
    ensure!(honeycomb_locus(&c, &t).unwrap() == want, "bridge rule locus");
    let p = phase_from_twists(&c, &t, None).unwrap();
    let r = hyperbolicity_locus(&c, &p).unwrap();
    ensure!(r.h == want && r.h_pointwise == want, "H = {:?} / {:?}", r.h, r.h_pointwise);
    ensure!(r.rh.len() == 1 && r.rh == r.rh_pointwise, "ℝH = {:?} / {:?}", r.rh, r.rh_pointwise);
    Ok(())
}

fn dimension_formulas() -> Check {
    for d in 2..=7u32 {
        let c = TropicalCurve::honeycomb(d);
        let n = c.num_bounded();
        let dd = d as u64;
        ensure!(n as u64 == 3 * binom(dd, 2), "d={d}: {n} bounded edges");
        ensure!(c.primitive_cycles().len() as u64 == binom(dd - 1, 2), "d={d}: genus");
        let div = div_space(&c);
        ensure!(div.dim() as u64 == 3 * (dd - 1), "d={d}: dim Div = {}", div.dim());
        let bridges = multi_bridges(&c).unwrap();
        ensure!(bridges.len() as u64 == 3 * (dd - 1), "d={d}: {} bridges", bridges.len());
        let mut seen = BTreeSet::new();
        for b in &bridges {
            for &e in &b.edges {
                ensure!(seen.insert(e), "d={d}: bridges share edge {e}");
            }
        }
        let vecs: Vec<_> = bridges.iter().map(|b| bridge_twists(&c, std::slice::from_ref(b)).vector().clone()).collect();
        ensure!(vecs.iter().all(|v| div.contains(v)), "d={d}: a bridge is not dividing");
        ensure!(Gf2Subspace::span(n, vecs).dim() == div.dim(), "d={d}: bridges do not span Div");
    }
    Ok(())
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..200 {
        let d = 1 + trial % 5;
        let c = random_curve(&mut rng, d);
        let delta = random_signs(&mut rng, &c);
        let p = phase_from_signs(&c, &delta).unwrap();
        let t = twists_from_signs(&c, &delta).unwrap();
        ensure!(is_admissible(&c, &t), "trial {trial}: not admissible");
        let m = count_components_matrix(&c, &t).unwrap();
        let direct = count_components_direct(&real_part(&c, &p).unwrap()).count;
        ensure!(m == direct, "trial {trial}: matrix {m} vs direct {direct}");
        let member = match solve_affine(c.num_bounded(), &div_constraints(&c)) {
            Solution::Empty => false,
            s => s.contains(t.vector()),
        };
        ensure!(is_dividing(&c, &t).unwrap() == member, "trial {trial}: dividing vs membership");
    }
    Ok(())
}

fn honeycomb_triple() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for trial in 0..50 {
        let d = 2 + trial % 4;
        let c = TropicalCurve::honeycomb(d);
        let t = random_dividing(&mut rng, &c);
        let p = phase_from_twists(&c, &t, None).unwrap();
        let r = hyperbolicity_locus(&c, &p).unwrap();
        let bridge_rule = honeycomb_locus(&c, &t).unwrap();
        ensure!(r.h == bridge_rule && r.h_pointwise == bridge_rule, "trial {trial}: {:?} {:?} {:?}", r.h, r.h_pointwise, bridge_rule);
        ensure!(r.rh == r.rh_pointwise, "trial {trial}: real loci differ");
    }
    Ok(())
}

fn line_at(ux: Q, uy: Q) -> TropicalCurve {
    let coeffs: BTreeMap<Lattice, Q> =
        [(Lattice::new(0, 0), q(0)), (Lattice::new(1, 0), -ux), (Lattice::new(0, 1), -uy)].into();
    TropicalCurve::from_polynomial(TropicalPolynomial::new(coeffs).unwrap()).unwrap()
}

fn line_phases(l: &TropicalCurve) -> Vec<RealPhaseStructure> {
    (0..4)
        .map(|k| {
            let s = |b: bool| if b { -1 } else { 1 };
            let signs: BTreeMap<Lattice, i8> =
                [(Lattice::new(0, 0), 1), (Lattice::new(1, 0), s(k & 1 == 1)), (Lattice::new(0, 1), s(k & 2 == 2))].into();
            phase_from_signs(l, &SignDistribution::new(signs).unwrap()).unwrap()
        })
        .collect()
}

fn lift(a: &TropicalCurve, pa: &RealPhaseStructure, b: &TropicalCurve, pb: &RealPhaseStructure, c: &IntersectionComponent) -> LiftOutcome {
    real_lift(RealCurve::new(a, pa), RealCurve::new(b, pb), c).unwrap()
}

fn indeterminate() -> LiftOutcome {
    LiftOutcome::Indeterminate {
        possible: vec![LiftType::TwoReal, LiftType::ConjugatePair, LiftType::TangentDoubleReal],
        note: Indeterminacy::TangencyExceptional,
    }
}

fn transverse_rows() -> Check {
    for m in 1..=4i64 {
        let coeffs: BTreeMap<Lattice, Q> =
            [(Lattice::new(0, 0), q(0)), (Lattice::new(1, 0), q(0)), (Lattice::new(m, 1), q(0))].into();
        let c = TropicalCurve::from_polynomial(TropicalPolynomial::new(coeffs).unwrap()).unwrap();
        let l = line_at(q(-1), q(-1 - m));
        let comps = intersection_components(&c, &l).unwrap();
        let comp = comps
            .iter()
            .find(|k| k.location(&c, &l) == Point::new(q(1), q(1 - m)))
            .ok_or(format!("m={m}: crossing not found"))?;
        let IntersectionKind::TransversePoint { e, e2, .. } = comp.kind else { return Err(format!("m={m}: kind")) };
        ensure!(comp.multiplicity == m as u32, "m={m}: multiplicity {}", comp.multiplicity);
        let pc = plus_phase(&c);
        for pl in line_phases(&l) {
            let got = lift(&c, &pc, &l, &pl, comp);
            let m = m as u32;
            let want = if m % 2 == 1 {
                LiftOutcome::forced(1, (m - 1) / 2, None)
            } else if pc.line(e) == pl.line(e2) {
                LiftOutcome::forced(2, (m - 2) / 2, None)
            } else {
                LiftOutcome::ForcedPairs { pairs: m / 2 }
            };
            ensure!(got == want, "m={m}: {got} vs {want}");
        }
    }
    // Row outcomes spelled out.
    ensure!(LiftOutcome::forced(1, 1, None) == LiftOutcome::ForcedMixed { reals: 1, pairs: 1 }, "m=3 shape");
    ensure!(LiftOutcome::forced(2, 0, None) == LiftOutcome::ForcedReal { count: 2, locations: None }, "m=2 shape");
    Ok(())
}

fn edge_in_edge_rows() -> Check {
    let c = TropicalCurve::honeycomb(2);
    let l = line_at(q(0), q(0));
    let comps = intersection_components(&c, &l).unwrap();
    let comp = comps.iter().find(|k| matches!(k.kind, IntersectionKind::EdgeInEdge { .. })).ok_or("no edge-in-edge")?;
    let IntersectionKind::EdgeInEdge { inner, host, .. } = comp.kind else { unreachable!() };
    ensure!(comp.multiplicity == 2, "multiplicity");
    let twisted = plus_phase(&c);
    let straight = phase_from_twists(&c, &TwistSet::empty(&c), None).unwrap();
    let mut seen = [false; 3];
    for pc in [&twisted, &straight] {
        for pl in line_phases(&l) {
            let got = lift(&c, pc, &l, &pl, comp);
            let tang = tangency_possible(RealCurve::new(&c, pc), RealCurve::new(&l, &pl), comp).unwrap();
            let (want, want_tang, row) = if pc.line(inner) != pl.line(host) {
                let locs = vec![Point::new(q(1), q(1)), Point::new(q(2), q(2))];
                let mut got_locs = match &got {
                    LiftOutcome::ForcedReal { locations: Some(l), .. } => l.clone(),
                    _ => vec![],
                };
                got_locs.sort();
                ensure!(got_locs == locs, "real points not at the edge vertices: {got}");
                (LiftOutcome::forced(2, 0, Some(got_locs)), false, 0)
            } else if is_twisted(&c, pc, inner) {
                (LiftOutcome::forced(2, 0, None), false, 1)
            } else {
                (indeterminate(), true, 2)
            };
            seen[row] = true;
            let got = match got {
                LiftOutcome::ForcedReal { count, locations: Some(mut l) } => {
                    l.sort();
                    LiftOutcome::ForcedReal { count, locations: Some(l) }
                }
                g => g,
            };
            ensure!(got == want, "edge in edge: {got} vs {want}");
            ensure!(tang == want_tang, "tangency flag");
        }
    }
    ensure!(seen.iter().all(|&s| s), "edge-in-edge rows covered: {seen:?}");
    Ok(())
}

fn segment_overlap_rows() -> Check {
    let c = TropicalCurve::honeycomb(2);
    let l = line_at(qf(3, 2), qf(3, 2));
    let comps = intersection_components(&c, &l).unwrap();
    let comp = comps.iter().find(|k| matches!(k.kind, IntersectionKind::SegmentOverlap { .. })).ok_or("no overlap")?;
    let IntersectionKind::SegmentOverlap { e, e2, .. } = comp.kind else { unreachable!() };
    ensure!(comp.multiplicity == 2, "multiplicity");
    let mut seen = [false; 3];
    for mask in 0..8u32 {
        let t = TwistSet::from_edges(&c, (0..3).filter(|k| mask >> k & 1 == 1).map(|k| c.bounded[k])).unwrap();
        let pc = phase_from_twists(&c, &t, None).unwrap();
        for pl in line_phases(&l) {
            let (a, b) = (RealCurve::new(&c, &pc), RealCurve::new(&l, &pl));
            let got = lift(&c, &pc, &l, &pl, comp);
            let tang = tangency_possible(a, b, comp).unwrap();
            if pc.line(e) != pl.line(e2) {
                seen[0] = true;
                let want = LiftOutcome::ForcedReal {
                    count: 2,
                    locations: Some(vec![Point::new(q(2), q(2)), Point::new(qf(3, 2), qf(3, 2))]),
                };
                ensure!(got == want && !tang, "distinct phases: {got}");
                ensure!(matches!(is_relatively_twisted(a, b, comp), Err(tropreal::Error::PhasesDiffer)), "undefined twist");
                continue;
            }
            let rel = is_relatively_twisted(a, b, comp).unwrap();
            ensure!(rel == relatively_twisted_by_signs(a, b, comp).unwrap(), "sign formulation disagrees");
            if rel {
                seen[2] = true;
                ensure!(got == indeterminate() && tang, "relatively twisted: {got}");
            } else {
                seen[1] = true;
                ensure!(got == LiftOutcome::forced(2, 0, None) && !tang, "relatively non-twisted: {got}");
            }
        }
    }
    ensure!(seen.iter().all(|&s| s), "segment-overlap rows covered: {seen:?}");
    Ok(())
}

/// Coincident-mod-2 case of the sign criterion: relatively twisted exactly
/// when the products over both dual edge ends are -1.
fn relative_sign_products() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut hits = 0;
    for _ in 0..60 {
        let fx = random_overlap(&mut rng);
        let IntersectionKind::SegmentOverlap { e, e2, v, v2, .. } = fx.component.kind else { unreachable!() };
        let (d1, d2) = (cell_signs(&fx.a, &fx.pa, v), cell_signs(&fx.b, &fx.pb, v2));
        let (p1, p2) = fx.a.edges[e].dual;
        let (q1, q2) = fx.b.edges[e2].dual;
        let (w1, w2) = if q2.sub(q1) == p2.sub(p1) { (q1, q2) } else { (q2, q1) };
        let apex = |cell: &BTreeMap<Lattice, i8>, x: Lattice, y: Lattice| *cell.keys().find(|k| **k != x && **k != y).unwrap();
        let (v3, v3b) = (apex(&d1, p1, p2), apex(&d2, q1, q2));
        let shift = p1.sub(w1);
        if Z2Pair::from_lattice(v3) != Z2Pair::from_lattice(v3b.add(shift)) {
            continue;
        }
        hits += 1;
        let prod = |vi: Lattice, wi: Lattice| d1[&v3] * d1[&vi] * d2[&v3b] * d2[&wi];
        let rel = is_relatively_twisted(RealCurve::new(&fx.a, &fx.pa), RealCurve::new(&fx.b, &fx.pb), &fx.component).unwrap();
        ensure!(prod(p1, w1) == prod(p2, w2), "products differ between the two ends");
        ensure!(rel == (prod(p1, w1) == -1), "coincident case mismatch");
    }
    ensure!(hits > 0, "no coincident-mod-2 fixture");
    Ok(())
}

fn lift_table() -> Check {
    transverse_rows()?;
    edge_in_edge_rows()?;
    segment_overlap_rows()?;
    relative_sign_products()
}

fn bezout() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    for trial in 0..50 {
        let (d1, d2) = (rng.gen_range(1..=4u32), rng.gen_range(1..=4u32));
        let a = random_curve(&mut rng, d1);
        let b0 = random_curve(&mut rng, d2);
        let b = random_translate(&mut rng, &b0);
        let total = bezout_total(&a, &b).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure!(total == d1 * d2, "trial {trial}: {total} ≠ {}", d1 * d2);
        let pa = phase_from_signs(&a, &random_signs(&mut rng, &a)).unwrap();
        let pb = phase_from_signs(&b, &random_signs(&mut rng, &b)).unwrap();
        for comp in intersection_components(&a, &b).unwrap() {
            let out = lift(&a, &pa, &b, &pb, &comp);
            if let Some(r) = out.real_count() {
                ensure!(r % 2 == comp.multiplicity % 2, "trial {trial}: parity of {out}");
            }
        }
    }
    Ok(())
}

fn degree_six_fixture() -> Check {
    let c = TropicalCurve::honeycomb(6);
    let diagonals: Vec<MultiBridge> =
        multi_bridges(&c).unwrap().into_iter().filter(|b| matches!(b.line, BridgeLine::Diagonal(_))).collect();
    let t = bridge_twists(&c, &diagonals);
    ensure!(is_dividing(&c, &t).unwrap(), "not dividing");
    let a = cycle_matrix(&c, &t);
    let cycles = c.primitive_cycles();
    let mut ranks = Vec::new();
    for s in 2..=5 {
        let idx: Vec<usize> = (0..cycles.len()).filter(|&k| cycles[k].center.i + cycles[k].center.j == s).collect();
        let mut block = Gf2Matrix::zeros(idx.len(), idx.len());
        for (r, &i) in idx.iter().enumerate() {
            for (col, &j) in idx.iter().enumerate() {
                block.set(r, col, a.get(i, j));
            }
        }
        ranks.push(block.rank());
    }
    ensure!(ranks == vec![0, 2, 2, 4], "block ranks {ranks:?}");
    ensure!(is_hyperbolic(&c, &t).unwrap() == (true, 2), "is_hyperbolic");
    let p = phase_from_twists(&c, &t, None).unwrap();
    let rep = count_components_direct(&real_part(&c, &p).unwrap());
    ensure!(rep.count == 3 && rep.ovals() == 3, "{} components", rep.count);
    let mut depths: Vec<usize> = rep.components.iter().map(|k| k.depth).collect();
    depths.sort();
    ensure!(depths == vec![1, 2, 3], "depths {depths:?}");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Check); 8] = [
        ("stable honeycombs d=1..6", Duration::from_secs(2), stable_honeycombs),
        ("single diagonal bridge on the quartic", Duration::from_secs(1), single_diagonal_bridge),
        ("dimension formulas d=2..7", Duration::from_secs(1), dimension_formulas),
        ("matrix/direct/dividing oracles, 200 random", Duration::from_secs(30), oracle_equivalence),
        ("honeycomb locus triple agreement, 50 random", Duration::from_secs(60), honeycomb_triple),
        ("lift classification table", Duration::from_secs(1), lift_table),
        ("Bezout totals and parity, 50 random", Duration::from_secs(10), bezout),
        ("degree-6 nested-oval fixture", Duration::from_secs(2), degree_six_fixture),
    ];
    let mut ok = true;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = run();
        let took = start.elapsed();
        let pass = res.is_ok() && took <= *limit;
        ok &= pass;
        let detail = match (&res, took <= *limit) {
            (Err(e), _) => format!(": {e}"),
            (Ok(()), false) => ": over time limit".to_string(),
            _ => String::new(),
        };
        println!(
            "criterion {}: {} {name} ({:.3}s / {}s){detail}",
            k + 1,
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
