//! Named experiments tying sampling, entanglement measures, and density
//! estimation into self-describing result tables.
//!
//! Each experiment is a deterministic function of (name, kind, seed,
//! count, workers, bins): samples come from per-worker substreams, and
//! tables serialize to CSV (metadata as `#` comment lines, 12
//! significant digits) or JSON (`{"metadata": .., "rows": ..}`).

use std::collections::BTreeMap;

use super::{analytic_p_c2, bin_average, estimate_density, l1_distance, l1_distance_excluding_first, AnalysisError};
use crate::entanglement::{
    boundary_state, entanglement_of_formation, eof_from_concurrence, max_c2, pure_concurrence,
    qubit_concurrence, rebit_concurrence, QuaterbitPair,
};
use crate::sampling::{collect_samples, sample_mixed, sample_pure, SampleConfig};
use crate::scalar::ScalarKind;

/// Concurrence below this threshold counts as zero when classifying
/// sampled states as separable.
pub const SEPARABLE_C_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExperimentName {
    /// Participation-ratio density of mixed states, with the fraction of
    /// samples at R >= 3 that carry zero concurrence.
    Fig1RDist,
    /// Entanglement-of-formation density of mixed states with a
    /// pure-state overlay.
    Fig2EDist,
    /// Squared-concurrence density of pure states next to the
    /// closed-form curve.
    Fig3C2Pure,
    /// Entanglement surface of pure quaternionic Schmidt pairs on the
    /// triangular (x, y) grid.
    Fig4QuaterbitSurface,
    /// Scatter of (R, C^2) for real-kind mixed states with the ceiling
    /// curve and its extremal trace.
    BoundaryScan,
}

impl ExperimentName {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentName::Fig1RDist => "fig1_r_dist",
            ExperimentName::Fig2EDist => "fig2_e_dist",
            ExperimentName::Fig3C2Pure => "fig3_c2_pure",
            ExperimentName::Fig4QuaterbitSurface => "fig4_quaterbit_surface",
            ExperimentName::BoundaryScan => "boundary_scan",
        }
    }

    pub fn all() -> [ExperimentName; 5] {
        [
            ExperimentName::Fig1RDist,
            ExperimentName::Fig2EDist,
            ExperimentName::Fig3C2Pure,
            ExperimentName::Fig4QuaterbitSurface,
            ExperimentName::BoundaryScan,
        ]
    }

    pub fn compatible_kinds(&self) -> &'static [ScalarKind] {
        match self {
            ExperimentName::Fig1RDist | ExperimentName::Fig2EDist | ExperimentName::Fig3C2Pure => {
                &[ScalarKind::Real, ScalarKind::Complex]
            }
            ExperimentName::Fig4QuaterbitSurface => &[ScalarKind::Quaternion],
            ExperimentName::BoundaryScan => &[ScalarKind::Real],
        }
    }

    /// Histogram bins used when the caller does not choose: 60 for the
    /// participation ratio over [1, 4], 50 elsewhere.
    pub fn default_bins(&self) -> usize {
        match self {
            ExperimentName::Fig1RDist => 60,
            _ => 50,
        }
    }
}

impl std::fmt::Display for ExperimentName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A validated experiment request.
#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    name: ExperimentName,
    config: SampleConfig,
    bins: usize,
}

impl ExperimentSpec {
    pub fn new(
        name: ExperimentName,
        config: SampleConfig,
        bins: usize,
    ) -> Result<Self, AnalysisError> {
        if bins < 2 {
            return Err(AnalysisError::TooFewBins { bins });
        }
        if !name.compatible_kinds().contains(&config.kind) {
            return Err(AnalysisError::IncompatibleKind {
                name: name.as_str(),
                kind: config.kind,
            });
        }
        Ok(ExperimentSpec { name, config, bins })
    }

    pub fn name(&self) -> ExperimentName {
        self.name
    }

    pub fn config(&self) -> &SampleConfig {
        &self.config
    }

    pub fn bins(&self) -> usize {
        self.bins
    }
}

/// Table metadata; serialized ahead of the data in both output formats.
#[derive(Clone, Debug, PartialEq)]
pub struct TableMeta {
    pub name: &'static str,
    pub kind: &'static str,
    pub seed: u64,
    pub count: u64,
    pub workers: u64,
    pub bins: usize,
    pub version: &'static str,
    /// Experiment-specific scalar annotations, serialized in key order.
    pub extra: BTreeMap<&'static str, f64>,
}

impl TableMeta {
    fn for_spec(spec: &ExperimentSpec) -> Self {
        TableMeta {
            name: spec.name.as_str(),
            kind: spec.config.kind.bit_name(),
            seed: spec.config.seed,
            count: spec.config.count,
            workers: spec.config.workers,
            bins: spec.bins,
            version: env!("CARGO_PKG_VERSION"),
            extra: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(&'static str),
}

/// 12-significant-digit scientific notation; exact zero prints as `0`.
fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.11e}")
    }
}

/// An experiment result: metadata, column names, and rows of cells.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultTable {
    pub meta: TableMeta,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl ResultTable {
    /// CSV with `#`-prefixed metadata lines, a header row, LF endings,
    /// and 12-significant-digit numbers.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# name = {}\n", self.meta.name));
        out.push_str(&format!("# kind = {}\n", self.meta.kind));
        out.push_str(&format!("# seed = {}\n", self.meta.seed));
        out.push_str(&format!("# count = {}\n", self.meta.count));
        out.push_str(&format!("# workers = {}\n", self.meta.workers));
        out.push_str(&format!("# bins = {}\n", self.meta.bins));
        out.push_str(&format!("# version = {}\n", self.meta.version));
        for (key, value) in &self.meta.extra {
            out.push_str(&format!("# {key} = {}\n", fmt_sig12(*value)));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|cell| match cell {
                    Cell::Num(x) => fmt_sig12(*x),
                    Cell::Text(s) => s.to_string(),
                })
                .collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    /// Compact JSON `{"metadata": {..}, "rows": [{column: value, ..}]}`
    /// with keys in declaration order.
    pub fn to_json(&self) -> String {
        use serde_json::{Map, Number, Value};
        let num = |x: f64| {
            Value::Number(Number::from_f64(x).expect("table values are finite"))
        };
        let mut metadata = Map::new();
        metadata.insert("name".into(), Value::String(self.meta.name.into()));
        metadata.insert("kind".into(), Value::String(self.meta.kind.into()));
        metadata.insert("seed".into(), Value::Number(self.meta.seed.into()));
        metadata.insert("count".into(), Value::Number(self.meta.count.into()));
        metadata.insert("workers".into(), Value::Number(self.meta.workers.into()));
        metadata.insert("bins".into(), Value::Number((self.meta.bins as u64).into()));
        metadata.insert("version".into(), Value::String(self.meta.version.into()));
        for (key, value) in &self.meta.extra {
            metadata.insert((*key).into(), num(*value));
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row.iter()) {
                    let value = match cell {
                        Cell::Num(x) => num(*x),
                        Cell::Text(s) => Value::String((*s).into()),
                    };
                    obj.insert((*name).into(), value);
                }
                Value::Object(obj)
            })
            .collect();
        let mut root = Map::new();
        root.insert("metadata".into(), Value::Object(metadata));
        root.insert("rows".into(), Value::Array(rows));
        serde_json::to_string(&Value::Object(root)).expect("tables serialize")
    }
}

/// Run a named experiment; deterministic in the spec.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ResultTable, AnalysisError> {
    match spec.name {
        ExperimentName::Fig1RDist => fig1_r_dist(spec),
        ExperimentName::Fig2EDist => fig2_e_dist(spec),
        ExperimentName::Fig3C2Pure => fig3_c2_pure(spec),
        ExperimentName::Fig4QuaterbitSurface => fig4_quaterbit_surface(spec),
        ExperimentName::BoundaryScan => boundary_scan(spec),
    }
}

/// Concurrence of a mixed state by its kind's measure.
fn mixed_concurrence(rho: &crate::states::DensityMatrix) -> f64 {
    match rho.kind() {
        ScalarKind::Real => rebit_concurrence(rho),
        _ => qubit_concurrence(rho),
    }
    .expect("sampled states admit a concurrence")
}

fn histogram_rows(
    est: &super::DensityEstimate,
    extra_cols: impl Fn(usize) -> Vec<Cell>,
) -> Vec<Vec<Cell>> {
    (0..est.bins())
        .map(|i| {
            let mut row = vec![
                Cell::Num(est.bin_edges()[i]),
                Cell::Num(est.bin_edges()[i + 1]),
            ];
            row.extend(extra_cols(i));
            row
        })
        .collect()
}

fn fig1_r_dist(spec: &ExperimentSpec) -> Result<ResultTable, AnalysisError> {
    let kind = spec.config.kind;
    let stats: Vec<(f64, bool, bool)> = collect_samples(&spec.config, |rng| {
        let rho = sample_mixed(kind, rng).expect("kind admits mixed sampling");
        let r = rho.participation_ratio();
        if r >= 3.0 {
            (r, true, mixed_concurrence(&rho) < SEPARABLE_C_TOL)
        } else {
            (r, false, false)
        }
    });
    let rs: Vec<f64> = stats.iter().map(|s| s.0).collect();
    let est = estimate_density(&rs, 1.0, 4.0, spec.bins)?;
    let n_ge3 = stats.iter().filter(|s| s.1).count();
    let n_ge3_zero = stats.iter().filter(|s| s.2).count();

    let mut meta = TableMeta::for_spec(spec);
    meta.extra
        .insert("frac_r_ge_3", n_ge3 as f64 / stats.len() as f64);
    meta.extra.insert(
        "frac_r_ge_3_zero_concurrence",
        if n_ge3 == 0 {
            1.0
        } else {
            n_ge3_zero as f64 / n_ge3 as f64
        },
    );
    meta.extra.insert("r_separability_line", 3.0);

    Ok(ResultTable {
        meta,
        columns: vec!["r_lo", "r_hi", "density"],
        rows: histogram_rows(&est, |i| vec![Cell::Num(est.density()[i])]),
    })
}

fn fig2_e_dist(spec: &ExperimentSpec) -> Result<ResultTable, AnalysisError> {
    let kind = spec.config.kind;
    let pairs: Vec<(f64, f64)> = collect_samples(&spec.config, |rng| {
        let rho = sample_mixed(kind, rng).expect("kind admits mixed sampling");
        let e_mixed = entanglement_of_formation(&rho).expect("kind has a mixed measure");
        let psi = sample_pure(kind, rng).expect("kind admits pure sampling");
        let e_pure =
            eof_from_concurrence(pure_concurrence(&psi)).expect("concurrence is in range");
        (e_mixed, e_pure)
    });
    let mixed: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let pure: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let est_mixed = estimate_density(&mixed, 0.0, 1.0, spec.bins)?;
    let est_pure = estimate_density(&pure, 0.0, 1.0, spec.bins)?;

    Ok(ResultTable {
        meta: TableMeta::for_spec(spec),
        columns: vec!["e_lo", "e_hi", "mixed_density", "pure_density"],
        rows: histogram_rows(&est_mixed, |i| {
            vec![
                Cell::Num(est_mixed.density()[i]),
                Cell::Num(est_pure.density()[i]),
            ]
        }),
    })
}

fn fig3_c2_pure(spec: &ExperimentSpec) -> Result<ResultTable, AnalysisError> {
    let kind = spec.config.kind;
    let c2: Vec<f64> = collect_samples(&spec.config, |rng| {
        let c = pure_concurrence(&sample_pure(kind, rng).expect("kind admits pure sampling"));
        c * c
    });
    let est = estimate_density(&c2, 0.0, 1.0, spec.bins)?;
    let curve = |x: f64| analytic_p_c2(kind, x).expect("midpoints are interior");

    let mut meta = TableMeta::for_spec(spec);
    meta.extra
        .insert("mean_c2", c2.iter().sum::<f64>() / c2.len() as f64);
    match kind {
        ScalarKind::Real => {
            // The curve diverges (integrably) at the origin; bin 0 is
            // excluded from the distance and reported on its own.
            meta.extra
                .insert("l1_excluding_first_bin", l1_distance_excluding_first(&est, curve));
            meta.extra
                .insert("first_bin_mass", est.density()[0] * est.bin_width());
        }
        _ => {
            meta.extra.insert("l1", l1_distance(&est, curve));
        }
    }

    Ok(ResultTable {
        meta,
        columns: vec!["c2_lo", "c2_hi", "empirical_density", "analytic_density"],
        rows: histogram_rows(&est, |i| {
            let lo = est.bin_edges()[i];
            let hi = est.bin_edges()[i + 1];
            vec![
                Cell::Num(est.density()[i]),
                Cell::Num(bin_average(curve, lo, hi)),
            ]
        }),
    })
}

/// Grid step of the quaterbit surface: 1/64 along each axis.
const SURFACE_STEPS: usize = 64;

fn fig4_quaterbit_surface(spec: &ExperimentSpec) -> Result<ResultTable, AnalysisError> {
    let mut rows = Vec::new();
    for i in 0..=SURFACE_STEPS {
        for j in 0..=(SURFACE_STEPS - i) {
            let x = i as f64 / SURFACE_STEPS as f64;
            let y = j as f64 / SURFACE_STEPS as f64;
            let pair = QuaterbitPair::from_surface_coords(x, y)
                .expect("grid points satisfy x + y <= 1");
            rows.push(vec![
                Cell::Num(x),
                Cell::Num(y),
                Cell::Num(pair.entanglement()),
            ]);
        }
    }
    Ok(ResultTable {
        meta: TableMeta::for_spec(spec),
        columns: vec!["x", "y", "E"],
        rows,
    })
}

/// Grid points for the ceiling curve and the extremal trace.
const CURVE_POINTS: usize = 101;

fn boundary_scan(spec: &ExperimentSpec) -> Result<ResultTable, AnalysisError> {
    let samples: Vec<(f64, f64)> = collect_samples(&spec.config, |rng| {
        let rho = sample_mixed(ScalarKind::Real, rng).expect("real mixed sampling");
        let c = rebit_concurrence(&rho).expect("real kind");
        (rho.participation_ratio(), c * c)
    });

    let mut rows: Vec<Vec<Cell>> = Vec::with_capacity(samples.len() + 2 * CURVE_POINTS);
    let mut max_excess = f64::NEG_INFINITY;
    for &(r, c2) in &samples {
        max_excess = max_excess.max(c2 - max_c2(r)?);
        rows.push(vec![Cell::Text("sample"), Cell::Num(r), Cell::Num(c2)]);
    }
    for i in 0..CURVE_POINTS {
        let r = 1.0 + 3.0 * i as f64 / (CURVE_POINTS - 1) as f64;
        rows.push(vec![
            Cell::Text("max_curve"),
            Cell::Num(r),
            Cell::Num(max_c2(r)?),
        ]);
    }
    for i in 0..CURVE_POINTS {
        let t = i as f64 / (CURVE_POINTS - 1) as f64;
        let rho = boundary_state(t)?;
        let c = rebit_concurrence(&rho)?;
        rows.push(vec![
            Cell::Text("boundary_trace"),
            Cell::Num(rho.participation_ratio()),
            Cell::Num(c * c),
        ]);
    }

    let mut meta = TableMeta::for_spec(spec);
    meta.extra.insert("max_excess_above_bound", max_excess);

    Ok(ResultTable {
        meta,
        columns: vec!["series", "r", "c2"],
        rows,
    })
}
