//! Histogram density estimation, analytic reference curves, and
//! distribution distances.
//!
//! Experiments that tie sampling, entanglement measures, and these
//! estimators into named result tables live in [`experiments`].

pub mod experiments;

pub use experiments::{
    run_experiment, Cell, ExperimentName, ExperimentSpec, ResultTable, TableMeta,
};

use crate::entanglement::EntanglementError;
use crate::sampling::SamplingError;
use crate::scalar::ScalarKind;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("empty sample set")]
    EmptySampleSet,
    #[error("{bins} bins requested; at least 2 required")]
    TooFewBins { bins: usize },
    #[error("sample {value} outside [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("input lengths {left} and {right} do not match")]
    MismatchedLengths { left: usize, right: usize },
    #[error("{name} = {value} lies outside its domain")]
    DomainViolation { name: &'static str, value: f64 },
    #[error("kind {kind} is not supported for {context}")]
    KindNotSupported {
        kind: ScalarKind,
        context: &'static str,
    },
    #[error("experiment {name} does not accept kind {kind}")]
    IncompatibleKind { name: &'static str, kind: ScalarKind },
    #[error("correlation undefined for constant input")]
    ConstantInput,
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error(transparent)]
    Entanglement(#[from] EntanglementError),
}

/// Samples may stick out of the histogram range by round-off up to this
/// much; they are clamped onto the nearest edge.
const RANGE_SLACK: f64 = 1e-12;

/// A normalized histogram over `bins` equal-width cells: the recorded
/// values are per-unit-x densities, so they sum to 1 after weighting by
/// the bin width.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityEstimate {
    bin_edges: Vec<f64>,
    density: Vec<f64>,
    n: usize,
}

impl DensityEstimate {
    pub fn bins(&self) -> usize {
        self.density.len()
    }

    pub fn lo(&self) -> f64 {
        self.bin_edges[0]
    }

    pub fn hi(&self) -> f64 {
        *self.bin_edges.last().expect("edges are non-empty")
    }

    /// All `bins + 1` edges, ascending.
    pub fn bin_edges(&self) -> &[f64] {
        &self.bin_edges
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bin_width(&self) -> f64 {
        (self.hi() - self.lo()) / self.bins() as f64
    }

    /// Total probability mass; 1 up to round-off.
    pub fn integral(&self) -> f64 {
        let w = self.bin_width();
        self.density.iter().map(|d| d * w).sum()
    }
}

/// Normalized histogram density of `samples` over `[lo, hi]`.
///
/// Values beyond the range by at most 1e-12 are clamped onto the edge;
/// anything further out is an error, as is an empty sample set or fewer
/// than 2 bins.
pub fn estimate_density(
    samples: &[f64],
    lo: f64,
    hi: f64,
    bins: usize,
) -> Result<DensityEstimate, AnalysisError> {
    if bins < 2 {
        return Err(AnalysisError::TooFewBins { bins });
    }
    if !(hi > lo) {
        return Err(AnalysisError::DomainViolation {
            name: "histogram range",
            value: hi - lo,
        });
    }
    if samples.is_empty() {
        return Err(AnalysisError::EmptySampleSet);
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0u64; bins];
    for &x in samples {
        if x < lo - RANGE_SLACK || x > hi + RANGE_SLACK {
            return Err(AnalysisError::OutOfRange { value: x, lo, hi });
        }
        let x = x.clamp(lo, hi);
        let idx = (((x - lo) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let scale = 1.0 / (samples.len() as f64 * width);
    let bin_edges = (0..=bins)
        .map(|i| lo + i as f64 * width)
        .collect::<Vec<_>>();
    Ok(DensityEstimate {
        bin_edges,
        density: counts.iter().map(|&c| c as f64 * scale).collect(),
        n: samples.len(),
    })
}

/// Closed-form density of the squared concurrence for pure states:
/// `1/(2 sqrt(c2))` for the Real kind on `(0, 1]` (integrable
/// divergence at the origin, value 1/2 at `c2 = 1`), and
/// `(3/2) sqrt(1 - c2)` for the Complex kind on `[0, 1]`.
pub fn analytic_p_c2(kind: ScalarKind, c2: f64) -> Result<f64, AnalysisError> {
    match kind {
        ScalarKind::Real => {
            if c2 <= 0.0 || c2 > 1.0 + RANGE_SLACK {
                return Err(AnalysisError::DomainViolation {
                    name: "squared concurrence",
                    value: c2,
                });
            }
            Ok(0.5 / c2.min(1.0).sqrt())
        }
        ScalarKind::Complex => {
            if !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&c2) {
                return Err(AnalysisError::DomainViolation {
                    name: "squared concurrence",
                    value: c2,
                });
            }
            Ok(1.5 * (1.0 - c2.clamp(0.0, 1.0)).sqrt())
        }
        ScalarKind::Quaternion => Err(AnalysisError::KindNotSupported {
            kind,
            context: "pure-state squared-concurrence density",
        }),
    }
}

/// Average of `f` over `[lo, hi]` by a 16-point midpoint rule; never
/// evaluates `f` at the interval ends.
pub fn bin_average(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    const POINTS: usize = 16;
    let h = (hi - lo) / POINTS as f64;
    (0..POINTS).map(|k| f(lo + (k as f64 + 0.5) * h)).sum::<f64>() / POINTS as f64
}

fn l1_from(emp: &DensityEstimate, f: &impl Fn(f64) -> f64, start: usize) -> f64 {
    let w = emp.bin_width();
    let edges = emp.bin_edges();
    emp.density()
        .iter()
        .enumerate()
        .skip(start)
        .map(|(i, d)| (d - bin_average(f, edges[i], edges[i + 1])).abs() * w)
        .sum()
}

/// L1 distance between an empirical density and a reference curve,
/// comparing each bin's density against the curve's 16-point midpoint
/// bin average.
pub fn l1_distance(emp: &DensityEstimate, f: impl Fn(f64) -> f64) -> f64 {
    l1_from(emp, &f, 0)
}

/// [`l1_distance`] with bin 0 left out, for curves with an integrable
/// divergence at the lower edge where a pointwise bin comparison is
/// meaningless.
pub fn l1_distance_excluding_first(emp: &DensityEstimate, f: impl Fn(f64) -> f64) -> f64 {
    l1_from(emp, &f, 1)
}

/// One-sample Kolmogorov-Smirnov statistic against a reference CDF.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64, AnalysisError> {
    if samples.is_empty() {
        return Err(AnalysisError::EmptySampleSet);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / n).abs());
        d = d.max((f - (i as f64 + 1.0) / n).abs());
    }
    Ok(d)
}

/// Two-sample Kolmogorov-Smirnov statistic: the largest gap between the
/// two empirical CDFs, with ties consumed jointly.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64, AnalysisError> {
    if a.is_empty() || b.is_empty() {
        return Err(AnalysisError::EmptySampleSet);
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|p, q| p.total_cmp(q));
    ys.sort_by(|p, q| p.total_cmp(q));
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < xs.len() || j < ys.len() {
        let v = match (xs.get(i), ys.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => break,
        };
        while i < xs.len() && xs[i] <= v {
            i += 1;
        }
        while j < ys.len() && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    Ok(d)
}

/// Ranks with ties replaced by the average of the positions they span.
fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // Positions i..=j (0-based) share the rank (i + j)/2 + 1.
        let shared = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = shared;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation with average-tie ranks; errors on
/// mismatched lengths, fewer than 2 points, or constant input.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64, AnalysisError> {
    if x.len() != y.len() {
        return Err(AnalysisError::MismatchedLengths {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(AnalysisError::EmptySampleSet);
    }
    let rx = average_ranks(x);
    let ry = average_ranks(y);
    let n = x.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in rx.iter().zip(ry.iter()) {
        cov += (a - mx) * (b - my);
        vx += (a - mx) * (a - mx);
        vy += (b - my) * (b - my);
    }
    if vx == 0.0 || vy == 0.0 {
        return Err(AnalysisError::ConstantInput);
    }
    Ok(cov / (vx * vy).sqrt())
}
