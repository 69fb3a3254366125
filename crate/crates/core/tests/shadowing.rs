#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use rand::Rng;
use symdyn::seed::stream;
use symdyn::shadowing::{alternating_blocks, geometric_schedule, AverageShadowParams};
use symdyn::stats::omega_bar_estimate;
use symdyn::*;

#[test]
fn shadows_are_admissible_and_keep_class() {
    let mut rng = stream(21, 0);
    for _ in 0..30 {
        let n = rng.gen_range(1..=5);
        let s = random_transitive_sft(&mut rng, n);
        let g = symbolic_transition_graph(&s);
        let d = cyclic_decomposition(&(0..s.size()).collect::<Vec<_>>(), &g).unwrap();
        for trial in 0..20 {
            let m = rng.gen_range(1..=5);
            let first = rng.gen_range(0..s.size()) as Symbol;
            let po = random_pseudo_orbit(&s, first, rng.gen_range(1..40), m, trial).unwrap();
            let r = sft_shadow(&s, &po).unwrap();
            assert!(s.contains(&r.shadow_point));
            assert!(r.same_class);
            assert_eq!(d.class(r.shadow_point.first() as usize), d.class(first as usize));
            assert!(r.epsilon_achieved <= (1.0 - m as f64).exp2());
            assert!(is_along_d(&s, &po).unwrap());
        }
    }
}

#[test]
fn shadow_constant_is_attained_and_optimal() {
    let full = SymbolicSystem::full_shift(2);
    let candidates = small_points(2, 8);
    for m in 1..=4usize {
        // x_1 agrees with shift(x_0) on exactly m symbols.
        let mut w = vec![0; m];
        w.push(1);
        let po = PseudoOrbit::symbolic(
            &full,
            vec![SymbolicPoint::constant(0), SymbolicPoint::new(&w, &[0])],
            (-(m as f64)).exp2(),
        )
        .unwrap();
        let r = sft_shadow(&full, &po).unwrap();
        assert_eq!(r.epsilon_achieved, (-(m as f64 + 1.0)).exp2());
        let best = candidates
            .iter()
            .map(|c| verify_shadowing(&full, &po, c, 1.0, 16).unwrap().1)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(best, r.epsilon_achieved);
    }
}

#[test]
fn dsp_verdicts_are_uniform() {
    let mut rng = stream(22, 0);
    for k in 0..10 {
        let n = rng.gen_range(1..=5);
        let s = random_transitive_sft(&mut rng, n);
        let r = dsp_check(&s, rng.gen_range(1..=4), 20, 24, k).unwrap();
        assert!(r.uniform);
        assert!(r.classes.iter().all(|c| c.pass));
    }
}

#[test]
fn dsp_is_deterministic_across_thread_counts() {
    let s = SymbolicSystem::from_matrix(vec![
        vec![false, true, false],
        vec![false, false, true],
        vec![true, true, false],
    ])
    .unwrap();
    let a = dsp_check(&s, 3, 50, 32, 99).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| dsp_check(&s, 3, 50, 32, 99).unwrap());
    assert_eq!(a, b);
}

fn block_specs() -> Vec<(SymbolicSystem, Vec<SymbolicPoint>, Vec<SymbolicPoint>)> {
    let full = SymbolicSystem::full_shift(2);
    let golden = SymbolicSystem::from_matrix(vec![vec![true, true], vec![true, false]]).unwrap();
    let period3 = SymbolicSystem::from_matrix(vec![
        vec![false, true, false, false],
        vec![false, false, true, true],
        vec![true, false, false, false],
        vec![true, false, false, false],
    ])
    .unwrap();
    let mut out = Vec::new();
    for (ratio, first) in [(4.0, 16), (3.0, 9), (2.0, 32)] {
        let a = vec![SymbolicPoint::constant(0), SymbolicPoint::constant(1)];
        let xs = alternating_blocks(&full, &a, &geometric_schedule(2, first, ratio, 1 << 13)).unwrap();
        out.push((full.clone(), a, xs));
        let a = vec![SymbolicPoint::constant(0), SymbolicPoint::periodic(&[0, 1])];
        let xs = alternating_blocks(&golden, &a, &geometric_schedule(2, first, ratio, 1 << 13)).unwrap();
        out.push((golden.clone(), a, xs));
        let a = vec![SymbolicPoint::periodic(&[0, 1, 2]), SymbolicPoint::periodic(&[0, 1, 3])];
        let xs = alternating_blocks(&period3, &a, &geometric_schedule(2, first, ratio, 1 << 13)).unwrap();
        out.push((period3.clone(), a, xs));
    }
    out
}

#[test]
fn average_shadow_contract() {
    for (s, _, xs) in block_specs() {
        let t = average_shadow_trace(&s, &xs, &AverageShadowParams::default()).unwrap();
        let tol_in = *t.input_defects.last().unwrap();
        assert!(t.final_error() < 5.0 * tol_in + t.schedule_bound, "{} vs {tol_in} + {}", t.final_error(), t.schedule_bound);
        assert!(t.class_preserved);
        assert!(s.contains(&t.point));
        assert!(t.levels.iter().all(|l| l.verified));
        assert!(t.distance_to_start < t.epsilon);
    }
}

#[test]
fn cesaro_invariance_transfers_omega_bar() {
    for (s, anchors, xs) in block_specs() {
        let t = average_shadow_trace(&s, &xs, &AverageShadowParams::default()).unwrap();
        let ys = orbit(&s, &t.point, xs.len()).unwrap().samples;
        let mut cands = Vec::new();
        for a in &anchors {
            for k in 0..a.period_len() {
                cands.push(a.shift_by(k));
            }
        }
        let ex = omega_bar_estimate(&s, &xs, &cands, 1.0 / 64.0, 0.01, 0.5).unwrap();
        let ey = omega_bar_estimate(&s, &ys, &cands, 1.0 / 64.0, 0.01, 0.5).unwrap();
        assert_eq!(ex.members, ey.members);
    }
}
