//! Built-in verification suite: ten numbered criteria covering the
//! analytic densities, the separability wall, the concurrence ceiling,
//! closed-form families, the eigensolver, the quaterbit surface, and
//! determinism. Each criterion reports one pass/fail line.
//!
//! The eigenvalue oracle here is deliberately independent of the Jacobi
//! path: characteristic-polynomial coefficients via Faddeev-LeVerrier,
//! critical points from the closed-form cubic, roots bracketed between
//! them and bisected.

use std::time::Instant;

use crate::analysis::{
    estimate_density, ks_two_sample, run_experiment, spearman, ExperimentName, ExperimentSpec,
};
use crate::entanglement::{
    binary_entropy, boundary_state, max_c2, max_entangled_mixture, ppt_min_eigenvalue,
    pure_concurrence, qubit_concurrence, rebit_concurrence, werner_concurrence, werner_state,
};
use crate::linalg::{sym_eigvals4, Matrix4};
use crate::sampling::{
    collect_samples, derive_substream, sample_mixed, sample_pure, sample_unit_quaternion,
    SampleConfig,
};
use crate::scalar::ScalarKind;

/// Seed used by every criterion.
const VERIFY_SEED: u64 = 42;

/// Sample count for the Monte Carlo criteria.
const VERIFY_SAMPLES: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionOutcome {
    /// The single report line for this criterion.
    pub fn line(&self) -> String {
        format!(
            "criterion {:2} {:32} {}  {}",
            self.index,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

fn outcome(index: usize, name: &'static str, passed: bool, detail: String) -> CriterionOutcome {
    CriterionOutcome {
        index,
        name,
        passed,
        detail,
    }
}

/// Pure-state squared-concurrence density for the Real kind: L1 distance
/// against `1/(2 sqrt(c2))` excluding bin 0 below 0.02, mean within
/// 1/3 +- 0.003, under 30 s single-threaded.
pub fn criterion_1() -> CriterionOutcome {
    let start = Instant::now();
    let cfg = SampleConfig::new(ScalarKind::Real, VERIFY_SEED, VERIFY_SAMPLES, 1)
        .expect("static config");
    let spec = ExperimentSpec::new(ExperimentName::Fig3C2Pure, cfg, 50).expect("static spec");
    let table = run_experiment(&spec).expect("experiment runs");
    let l1 = table.meta.extra["l1_excluding_first_bin"];
    let mean = table.meta.extra["mean_c2"];
    let secs = start.elapsed().as_secs_f64();
    let passed = l1 < 0.02 && (mean - 1.0 / 3.0).abs() < 0.003 && secs < 30.0;
    outcome(
        1,
        "pure_rebit_density",
        passed,
        format!("L1 excl. bin 0 = {l1:.4} (< 0.02), mean C^2 = {mean:.4} (1/3 +- 0.003), {secs:.1} s"),
    )
}

/// Pure-state squared-concurrence density for the Complex kind: full L1
/// against `(3/2) sqrt(1 - c2)` below 0.02, mean within 2/5 +- 0.003.
pub fn criterion_2() -> CriterionOutcome {
    let cfg = SampleConfig::new(ScalarKind::Complex, VERIFY_SEED, VERIFY_SAMPLES, 1)
        .expect("static config");
    let spec = ExperimentSpec::new(ExperimentName::Fig3C2Pure, cfg, 50).expect("static spec");
    let table = run_experiment(&spec).expect("experiment runs");
    let l1 = table.meta.extra["l1"];
    let mean = table.meta.extra["mean_c2"];
    let passed = l1 < 0.02 && (mean - 0.4).abs() < 0.003;
    outcome(
        2,
        "pure_qubit_density",
        passed,
        format!("L1 = {l1:.4} (< 0.02), mean C^2 = {mean:.4} (2/5 +- 0.003)"),
    )
}

/// Every Complex-kind mixed sample with R >= 3 is separable: concurrence
/// below 1e-9 and partial-transpose minimum eigenvalue above -1e-9.
pub fn criterion_3() -> CriterionOutcome {
    let cfg = SampleConfig::new(ScalarKind::Complex, VERIFY_SEED, VERIFY_SAMPLES, 1)
        .expect("static config");
    let stats: Vec<(bool, bool)> = collect_samples(&cfg, |rng| {
        let rho = sample_mixed(ScalarKind::Complex, rng).expect("complex mixed sampling");
        if rho.participation_ratio() >= 3.0 {
            let c = qubit_concurrence(&rho).expect("validated state");
            let pt = ppt_min_eigenvalue(&rho).expect("validated state");
            (true, c >= 1e-9 || pt < -1e-9)
        } else {
            (false, false)
        }
    });
    let n_ge3 = stats.iter().filter(|s| s.0).count();
    let exceptions = stats.iter().filter(|s| s.1).count();
    let passed = exceptions == 0 && n_ge3 > 0;
    outcome(
        3,
        "separability_wall",
        passed,
        format!("{n_ge3} of {VERIFY_SAMPLES} samples at R >= 3, exceptions = {exceptions}"),
    )
}

/// No Real-kind mixed sample exceeds the concurrence ceiling, and the
/// extremal family saturates it to 1e-12 on a 101-point grid.
pub fn criterion_4() -> CriterionOutcome {
    let cfg = SampleConfig::new(ScalarKind::Real, VERIFY_SEED, VERIFY_SAMPLES, 1)
        .expect("static config");
    let excesses: Vec<f64> = collect_samples(&cfg, |rng| {
        let rho = sample_mixed(ScalarKind::Real, rng).expect("real mixed sampling");
        let c = rebit_concurrence(&rho).expect("real kind");
        c * c - max_c2(rho.participation_ratio()).expect("R in [1, 4]")
    });
    let violations = excesses.iter().filter(|&&e| e > 1e-9).count();
    let max_excess = excesses.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    let mut max_gap: f64 = 0.0;
    for i in 0..=100 {
        let t = i as f64 / 100.0;
        let rho = boundary_state(t).expect("t in [0, 1]");
        let c = rebit_concurrence(&rho).expect("real kind");
        let bound = max_c2(rho.participation_ratio()).expect("R in [1, 4]");
        max_gap = max_gap.max((c * c - bound).abs());
    }
    let passed = violations == 0 && max_gap < 1e-12;
    outcome(
        4,
        "concurrence_ceiling",
        passed,
        format!(
            "violations = {violations}, max excess = {max_excess:.2e}, saturation gap = {max_gap:.2e}"
        ),
    )
}

/// The rank-two mixtures keep concurrence 1 to 1e-12 on a 101-point
/// grid while the participation ratio sweeps [1, 2].
pub fn criterion_5() -> CriterionOutcome {
    let mut max_c_err: f64 = 0.0;
    let mut r_min = f64::INFINITY;
    let mut r_max = f64::NEG_INFINITY;
    for i in 0..=100 {
        let p = i as f64 / 100.0;
        let rho = max_entangled_mixture(p).expect("p in [0, 1]");
        let c = rebit_concurrence(&rho).expect("real kind");
        max_c_err = max_c_err.max((c - 1.0).abs());
        let r = rho.participation_ratio();
        r_min = r_min.min(r);
        r_max = r_max.max(r);
    }
    let passed = max_c_err < 1e-12
        && (r_min - 1.0).abs() < 1e-12
        && (r_max - 2.0).abs() < 1e-12;
    outcome(
        5,
        "entangled_mixtures",
        passed,
        format!("max |C - 1| = {max_c_err:.2e}, R in [{r_min:.3}, {r_max:.3}]"),
    )
}

/// Mixed-state entanglement density decreases: Spearman correlation of
/// bin index against density at or below -0.9 for both kinds.
pub fn criterion_6() -> CriterionOutcome {
    let mut details = Vec::new();
    let mut passed = true;
    for kind in [ScalarKind::Real, ScalarKind::Complex] {
        let cfg = SampleConfig::new(kind, VERIFY_SEED, VERIFY_SAMPLES, 1).expect("static config");
        let es: Vec<f64> = collect_samples(&cfg, |rng| {
            let rho = sample_mixed(kind, rng).expect("kind admits mixed sampling");
            crate::entanglement::entanglement_of_formation(&rho).expect("kind has a measure")
        });
        let est = estimate_density(&es, 0.0, 1.0, 20).expect("non-empty samples");
        let idx: Vec<f64> = (0..est.bins()).map(|i| i as f64).collect();
        let rho_s = spearman(&idx, est.density()).expect("non-constant density");
        passed &= rho_s <= -0.9;
        details.push(format!("{} {rho_s:.3}", kind.bit_name()));
    }
    outcome(
        6,
        "monotone_entanglement_density",
        passed,
        format!("Spearman (<= -0.9): {}", details.join(", ")),
    )
}

/// Jacobi eigenvalues match the characteristic-polynomial root oracle to
/// 1e-10 over 10^4 random symmetric matrices.
pub fn criterion_7() -> CriterionOutcome {
    use rand::Rng;
    use rand_distr::StandardNormal;
    let mut rng = derive_substream(VERIFY_SEED, 0);
    let mut max_diff: f64 = 0.0;
    for _ in 0..10_000 {
        let g = Matrix4::<f64>::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
        let a = g.add(&g.transpose()).scale(0.5);
        let jacobi = sym_eigvals4(&a).expect("symmetric input");
        let oracle = char_poly_eigvals4(&a);
        for (x, y) in jacobi.iter().zip(oracle.iter()) {
            max_diff = max_diff.max((x - y).abs());
        }
    }
    let passed = max_diff < 1e-10;
    outcome(
        7,
        "eigensolver_oracle",
        passed,
        format!("max |Jacobi - polynomial roots| = {max_diff:.2e} over 10^4 draws"),
    )
}

/// Werner-family concurrence matches the hand-derived closed form
/// `max(0, (3p - 1)/2)` to 1e-10 on a 101-point grid.
pub fn criterion_8() -> CriterionOutcome {
    let mut max_diff: f64 = 0.0;
    for i in 0..=100 {
        let p = i as f64 / 100.0;
        let c = qubit_concurrence(&werner_state(p).expect("p in [0, 1]")).expect("valid state");
        max_diff = max_diff.max((c - werner_concurrence(p)).abs());
    }
    let passed = max_diff < 1e-10;
    outcome(
        8,
        "werner_closed_form",
        passed,
        format!("max |C - closed form| = {max_diff:.2e} on the p-grid"),
    )
}

/// The quaterbit surface equals `h(x + y)` to 1e-12 on the grid and is
/// invariant under a random unit-quaternion phase on C1, 10^3 trials.
pub fn criterion_9() -> CriterionOutcome {
    use crate::entanglement::QuaterbitPair;
    let cfg = SampleConfig::new(ScalarKind::Quaternion, VERIFY_SEED, 1, 1).expect("static config");
    let spec =
        ExperimentSpec::new(ExperimentName::Fig4QuaterbitSurface, cfg, 50).expect("static spec");
    let table = run_experiment(&spec).expect("grid experiment");
    let mut max_grid: f64 = 0.0;
    for row in &table.rows {
        if let [crate::analysis::Cell::Num(x), crate::analysis::Cell::Num(y), crate::analysis::Cell::Num(e)] =
            row.as_slice()
        {
            max_grid = max_grid.max((e - binary_entropy(x + y).expect("x + y <= 1")).abs());
        }
    }

    use rand::Rng;
    let mut rng = derive_substream(VERIFY_SEED, 1);
    let mut max_phase: f64 = 0.0;
    for _ in 0..1_000 {
        let u: f64 = rng.gen();
        let c1 = sample_unit_quaternion(&mut rng).scale(u.sqrt());
        let c2 = sample_unit_quaternion(&mut rng).scale((1.0 - u).sqrt());
        let pair = QuaterbitPair::new(c1, c2).expect("normalized by construction");
        let q = sample_unit_quaternion(&mut rng);
        let phased = QuaterbitPair::new(c1 * q, c2).expect("unit phase preserves the norm");
        max_phase = max_phase.max((pair.entanglement() - phased.entanglement()).abs());
    }
    let passed = max_grid < 1e-12 && max_phase < 1e-12;
    outcome(
        9,
        "quaterbit_surface",
        passed,
        format!("grid gap = {max_grid:.2e}, phase gap = {max_phase:.2e}"),
    )
}

/// Identical (seed, workers) runs serialize byte-identically, and
/// workers 1 vs 8 agree in distribution (two-sample KS < 0.01).
pub fn criterion_10() -> CriterionOutcome {
    let run = || {
        let cfg = SampleConfig::new(ScalarKind::Complex, VERIFY_SEED, 100_000, 3)
            .expect("static config");
        let spec = ExperimentSpec::new(ExperimentName::Fig3C2Pure, cfg, 50).expect("static spec");
        run_experiment(&spec).expect("experiment runs").to_csv()
    };
    let identical = run() == run();

    let draw = |workers: u64| -> Vec<f64> {
        let cfg = SampleConfig::new(ScalarKind::Complex, VERIFY_SEED, 100_000, workers)
            .expect("static config");
        collect_samples(&cfg, |rng| {
            let c = pure_concurrence(
                &sample_pure(ScalarKind::Complex, rng).expect("complex pure sampling"),
            );
            c * c
        })
    };
    let ks = ks_two_sample(&draw(1), &draw(8)).expect("non-empty samples");
    let passed = identical && ks < 0.01;
    outcome(
        10,
        "determinism",
        passed,
        format!("byte-identical = {identical}, workers 1 vs 8 KS = {ks:.4} (< 0.01)"),
    )
}

/// Run all ten criteria in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ]
}

/// Eigenvalues of a symmetric 4x4 matrix from its characteristic
/// polynomial, descending. Independent of the Jacobi path: coefficients
/// by Faddeev-LeVerrier, critical points from the closed-form cubic,
/// one root bisected inside each monotone piece.
///
/// Accurate for well-separated spectra and for exactly degenerate
/// integer-entry cases; near-degenerate spectra (gaps around 1e-6) lose
/// accuracy to root clustering, which random draws avoid.
pub fn char_poly_eigvals4(a: &Matrix4<f64>) -> [f64; 4] {
    // p(x) = x^4 + c3 x^3 + c2 x^2 + c1 x + c0 via Faddeev-LeVerrier.
    let id = Matrix4::<f64>::identity();
    let m1 = *a;
    let c3 = -m1.trace();
    let m2 = a.matmul(&m1.add(&id.scale(c3)));
    let c2 = -m2.trace() / 2.0;
    let m3 = a.matmul(&m2.add(&id.scale(c2)));
    let c1 = -m3.trace() / 3.0;
    let m4 = a.matmul(&m3.add(&id.scale(c1)));
    let c0 = -m4.trace() / 4.0;

    let p = |x: f64| (((x + c3) * x + c2) * x + c1) * x + c0;
    let dp = |x: f64| ((4.0 * x + 3.0 * c3) * x + 2.0 * c2) * x + c1;

    // Critical points: roots of the cubic p'(x)/4, all real for a
    // symmetric matrix. Trigonometric solution of the depressed cubic.
    let b = 3.0 * c3 / 4.0;
    let c = c2 / 2.0;
    let d = c1 / 4.0;
    let dep_p = c - b * b / 3.0;
    let dep_q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let shift = -b / 3.0;
    let mut nodes = if dep_p >= -1e-300 {
        // Triple (or numerically collapsed) critical point.
        [shift, shift, shift]
    } else {
        let m = 2.0 * (-dep_p / 3.0).sqrt();
        let theta = (3.0 * dep_q / (dep_p * m)).clamp(-1.0, 1.0).acos();
        let mut out = [0.0; 3];
        for (k, slot) in out.iter_mut().enumerate() {
            let t = m * ((theta - 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos();
            let mut x = t + shift;
            // Newton polish on p' (well-conditioned for simple roots).
            for _ in 0..2 {
                let d2p = (12.0 * x + 6.0 * c3) * x + 2.0 * c2;
                if d2p != 0.0 {
                    x -= dp(x) / d2p;
                }
            }
            *slot = x;
        }
        out.sort_by(f64::total_cmp);
        out
    };
    nodes.sort_by(f64::total_cmp);

    // Gershgorin bounds pad the outer brackets.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..4 {
        let radius: f64 = (0..4)
            .filter(|&j| j != i)
            .map(|j| a.entry(i, j).abs())
            .sum();
        lo = lo.min(a.entry(i, i) - radius);
        hi = hi.max(a.entry(i, i) + radius);
    }
    let brackets = [
        (lo - 1.0, nodes[0]),
        (nodes[0], nodes[1]),
        (nodes[1], nodes[2]),
        (nodes[2], hi + 1.0),
    ];

    let scale = 1.0 + c3.abs() + c2.abs() + c1.abs() + c0.abs();
    let end_tol = 1e-9 * scale;
    let mut roots = [0.0; 4];
    for (slot, &(a_end, b_end)) in roots.iter_mut().zip(brackets.iter()) {
        let (fa, fb) = (p(a_end), p(b_end));
        *slot = if fa.abs() <= end_tol {
            a_end
        } else if fb.abs() <= end_tol {
            b_end
        } else if fa * fb < 0.0 {
            let (mut x_lo, mut x_hi, mut f_lo) = (a_end, b_end, fa);
            for _ in 0..200 {
                let mid = 0.5 * (x_lo + x_hi);
                if mid <= x_lo || mid >= x_hi {
                    break;
                }
                let fm = p(mid);
                if (fm < 0.0) == (f_lo < 0.0) {
                    x_lo = mid;
                    f_lo = fm;
                } else {
                    x_hi = mid;
                }
            }
            let mut x = 0.5 * (x_lo + x_hi);
            for _ in 0..3 {
                let d = dp(x);
                if d != 0.0 {
                    let next = x - p(x) / d;
                    if next >= a_end && next <= b_end {
                        x = next;
                    }
                }
            }
            x
        } else {
            // Near-double root at a bracket end beyond the endpoint
            // tolerance; take the closer end.
            if fa.abs() <= fb.abs() {
                a_end
            } else {
                b_end
            }
        };
    }
    roots.sort_by(|x, y| y.total_cmp(x));
    roots
}
