//! Grid sweeps over dotted scenario paths.

use std::path::Path;
use std::str::FromStr;

use hif_core::network::feeder_channel;
use hif_core::phasor::PhasorSet;
use hif_core::WaveformRecord;
use rayon::prelude::*;

use crate::csvio::fmt_f64;
use crate::error::{Result, WorkbenchError};
use crate::run::{run, RunBundle};
use crate::scenario::Scenario;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub path: String,
    pub values: Vec<toml::Value>,
}

impl SweepAxis {
    pub fn new(path: impl Into<String>, values: impl IntoIterator<Item = impl Into<toml::Value>>) -> Self {
        Self { path: path.into(), values: values.into_iter().map(Into::into).collect() }
    }
}

/// `path=v1,v2,...`; each value is read as a TOML value, so `2` is an
/// integer, `0.5` a float and `"x"` a string.
impl FromStr for SweepAxis {
    type Err = WorkbenchError;

    fn from_str(s: &str) -> Result<Self> {
        let (path, list) = s
            .split_once('=')
            .ok_or_else(|| WorkbenchError::Validation(format!("axis {s:?}: expected path=v1,v2,...")))?;
        let values = list
            .split(',')
            .map(str::trim)
            .filter(|v| !v.is_empty())
            .map(|v| {
                toml::from_str::<toml::Table>(&format!("x = {v}"))
                    .ok()
                    .and_then(|mut t| t.remove("x"))
                    .ok_or_else(|| WorkbenchError::Validation(format!("axis {path}: cannot read value {v:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { path: path.trim().to_string(), values })
    }
}

/// Per-cell quantities a sweep can report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    /// Aggregated verdict, 1-based feeder or `undetermined`.
    Verdict,
    /// Verdict equals the configured faulty feeder.
    Correct,
    DecidedAt,
    /// Windows in which every feeder passed the amplitude gate.
    GatedWindows,
    Windows,
    /// Largest indicator between the faulty feeder and any other, last window.
    FaultyIndicatorMax,
    /// Classic method correct in every window.
    ClassicCorrect,
    /// Classic Δφ of the fault current, last window.
    FaultDeltaPhi,
    /// Peak |i_0f| over the analysed span.
    FaultCurrentPeak,
    /// Peak |i_0f| over the last cycle; near zero once the arc is extinguished.
    FaultCurrentFinal,
    EstimatedV,
    EstimatedD,
    /// Largest |Σ feeder currents + i_0N| over the record, relative to the
    /// peak current of any of those channels.
    KclResidual,
}

impl Metric {
    pub const ALL: [Metric; 13] = [
        Metric::Verdict,
        Metric::Correct,
        Metric::DecidedAt,
        Metric::GatedWindows,
        Metric::Windows,
        Metric::FaultyIndicatorMax,
        Metric::ClassicCorrect,
        Metric::FaultDeltaPhi,
        Metric::FaultCurrentPeak,
        Metric::FaultCurrentFinal,
        Metric::EstimatedV,
        Metric::EstimatedD,
        Metric::KclResidual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Verdict => "verdict",
            Metric::Correct => "correct",
            Metric::DecidedAt => "decided_at",
            Metric::GatedWindows => "gated_windows",
            Metric::Windows => "windows",
            Metric::FaultyIndicatorMax => "faulty_indicator_max",
            Metric::ClassicCorrect => "classic_correct",
            Metric::FaultDeltaPhi => "fault_delta_phi",
            Metric::FaultCurrentPeak => "fault_current_peak",
            Metric::FaultCurrentFinal => "fault_current_final",
            Metric::EstimatedV => "estimated_v",
            Metric::EstimatedD => "estimated_d",
            Metric::KclResidual => "kcl_residual",
        }
    }
}

impl FromStr for Metric {
    type Err = WorkbenchError;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| WorkbenchError::Validation(format!("unknown metric {s:?}")))
    }
}

/// Summary of one run, the numbers behind every [`Metric`].
#[derive(Debug, Clone, PartialEq)]
pub struct CellMetrics {
    pub verdict: Option<usize>,
    pub faulty: usize,
    pub decided_at: Option<f64>,
    pub gated_windows: usize,
    pub windows: usize,
    pub faulty_indicator_max: f64,
    pub classic_correct: bool,
    pub fault_delta_phi: f64,
    pub fault_current_peak: f64,
    pub fault_current_final: f64,
    pub estimated: Option<(f64, f64)>,
    pub kcl_residual: f64,
}

impl CellMetrics {
    pub fn from_bundle(b: &RunBundle) -> Result<Self> {
        let faulty = b.network.faulty_index;
        let id = &b.identification;
        let gated_windows = id.per_window.iter().filter(|w| all_valid(&w.valid)).count();
        let faulty_indicator_max = id
            .per_window
            .last()
            .map(|w| w.indicators[faulty].iter().flatten().fold(0.0, |a: f64, x| a.max(*x)))
            .unwrap_or(f64::NAN);
        let fault: &[PhasorSet] = b.stream("i_0f").expect("fault stream");
        let fault_delta_phi = fault
            .last()
            .map(hif_core::identify::classic_delta_phi)
            .transpose()
            .map_err(|e| WorkbenchError::core("classic", e))?
            .unwrap_or(f64::NAN);
        let i_f = b.record.channel("i_0f").map_err(|e| WorkbenchError::core("metrics", e))?;
        let start = ((b.analysis_start - b.record.t0()) * b.record.fs()).round() as usize;
        let peak = |x: &[f64]| x.iter().fold(0.0, |a: f64, v| a.max(v.abs()));
        let fault_current_peak = peak(&i_f[start.min(i_f.len())..]);
        let cycle = (b.record.fs() / b.scenario.analysis.f0).round() as usize;
        let fault_current_final = peak(&i_f[i_f.len().saturating_sub(cycle)..]);
        Ok(Self {
            verdict: id.aggregated_verdict,
            faulty,
            decided_at: id.decided_at,
            gated_windows,
            windows: id.per_window.len(),
            faulty_indicator_max,
            classic_correct: b.classic.iter().all(|c| c.verdict == Some(faulty)),
            fault_delta_phi,
            fault_current_peak,
            fault_current_final,
            estimated: b.estimate.as_ref().ok().map(|e| (e.v, e.d)),
            kcl_residual: kcl_residual(&b.record, b.network.feeders.len())?,
        })
    }

    pub fn correct(&self) -> bool {
        self.verdict == Some(self.faulty)
    }

    pub fn format(&self, m: Metric) -> String {
        let opt = |x: Option<f64>| x.map_or(String::new(), fmt_f64);
        match m {
            Metric::Verdict => self.verdict.map_or("undetermined".into(), |v| (v + 1).to_string()),
            Metric::Correct => self.correct().to_string(),
            Metric::DecidedAt => opt(self.decided_at),
            Metric::GatedWindows => self.gated_windows.to_string(),
            Metric::Windows => self.windows.to_string(),
            Metric::FaultyIndicatorMax => fmt_f64(self.faulty_indicator_max),
            Metric::ClassicCorrect => self.classic_correct.to_string(),
            Metric::FaultDeltaPhi => fmt_f64(self.fault_delta_phi),
            Metric::FaultCurrentPeak => fmt_f64(self.fault_current_peak),
            Metric::FaultCurrentFinal => fmt_f64(self.fault_current_final),
            Metric::EstimatedV => opt(self.estimated.map(|e| e.0)),
            Metric::EstimatedD => opt(self.estimated.map(|e| e.1)),
            Metric::KclResidual => fmt_f64(self.kcl_residual),
        }
    }
}

/// `max |Σ i_0i + i_0N| / max |i|` over every sample of the record.
pub fn kcl_residual(record: &WaveformRecord, feeders: usize) -> Result<f64> {
    let get = |c: &str| record.channel(c).map_err(|e| WorkbenchError::core("kcl", e));
    let mut cols = (0..feeders).map(|i| get(&feeder_channel(i))).collect::<Result<Vec<_>>>()?;
    cols.push(get("i_0N")?);
    let peak = cols.iter().flat_map(|c| c.iter()).fold(0.0, |a: f64, x| a.max(x.abs()));
    let worst = (0..record.len()).map(|s| cols.iter().map(|c| c[s]).sum::<f64>().abs()).fold(0.0, f64::max);
    Ok(if peak > 0.0 { worst / peak } else { worst })
}

fn all_valid(valid: &[Vec<bool>]) -> bool {
    valid.iter().enumerate().all(|(a, row)| row.iter().enumerate().all(|(b, v)| a == b || *v))
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub base: Scenario,
    pub axes: Vec<SweepAxis>,
    pub outputs: Vec<Metric>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if self.axes.is_empty() {
            return Err(WorkbenchError::Validation("sweep needs at least one axis".into()));
        }
        for a in &self.axes {
            if a.values.is_empty() {
                return Err(WorkbenchError::Validation(format!("axis {}: empty value list", a.path)));
            }
            if self.base.get_path(&a.path).is_none() && !optional_path(&a.path) {
                return Err(WorkbenchError::Validation(format!("axis {}: not a scenario parameter", a.path)));
            }
        }
        Ok(())
    }

    pub fn cell_count(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    /// Axis values of cell `index`, last axis varying fastest.
    pub fn coordinates(&self, mut index: usize) -> Vec<&toml::Value> {
        let mut out = vec![&self.axes[0].values[0]; self.axes.len()];
        for (slot, axis) in out.iter_mut().zip(&self.axes).rev() {
            *slot = &axis.values[index % axis.values.len()];
            index /= axis.values.len();
        }
        out
    }

    pub fn scenario(&self, index: usize) -> Result<Scenario> {
        let mut s = self.base.clone();
        for (axis, v) in self.axes.iter().zip(self.coordinates(index)) {
            s = s.with_path(&axis.path, v.clone())?;
        }
        Ok(s)
    }
}

fn optional_path(path: &str) -> bool {
    matches!(path, "seed" | "sim.noise_std")
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub index: usize,
    pub coordinates: Vec<toml::Value>,
    pub outcome: std::result::Result<CellMetrics, String>,
}

#[derive(Debug, Clone)]
pub struct SweepTable {
    pub axes: Vec<String>,
    pub outputs: Vec<Metric>,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// `cell,<axes...>,<metrics...>,error`
    pub fn to_csv(&self) -> String {
        let mut out = String::from("cell");
        for a in &self.axes {
            out.push(',');
            out.push_str(a);
        }
        for m in &self.outputs {
            out.push(',');
            out.push_str(m.name());
        }
        out.push_str(",error\n");
        for r in &self.rows {
            out.push_str(&r.index.to_string());
            for v in &r.coordinates {
                out.push(',');
                out.push_str(&value_text(v));
            }
            match &r.outcome {
                Ok(m) => {
                    for o in &self.outputs {
                        out.push(',');
                        out.push_str(&m.format(*o));
                    }
                    out.push_str(",\n");
                }
                Err(e) => {
                    out.push_str(&",".repeat(self.outputs.len()));
                    out.push(',');
                    out.push_str(&csv_quote(e));
                    out.push('\n');
                }
            }
        }
        out
    }
}

fn value_text(v: &toml::Value) -> String {
    match v {
        toml::Value::Float(f) => fmt_f64(*f),
        toml::Value::String(s) => csv_quote(s),
        other => csv_quote(&other.to_string()),
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Run every cell on `parallelism` worker threads. Row order and content do
/// not depend on the thread count; a failing cell is recorded, not fatal.
/// With `bundle_dir`, each cell writes its run bundle to `cell_NNNN/`.
pub fn sweep(spec: &SweepSpec, parallelism: usize, bundle_dir: Option<&Path>) -> Result<SweepTable> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .map_err(|e| WorkbenchError::Validation(format!("thread pool: {e}")))?;
    let rows = pool.install(|| {
        (0..spec.cell_count())
            .into_par_iter()
            .map(|index| {
                let outcome = spec.scenario(index).and_then(|s| {
                    let b = run(&s)?;
                    if let Some(dir) = bundle_dir {
                        b.write(dir.join(format!("cell_{index:04}")))?;
                    }
                    CellMetrics::from_bundle(&b)
                });
                SweepRow {
                    index,
                    coordinates: spec.coordinates(index).into_iter().cloned().collect(),
                    outcome: outcome.map_err(|e| format!("[{}] {e}", e.category())),
                }
            })
            .collect()
    });
    Ok(SweepTable { axes: spec.axes.iter().map(|a| a.path.clone()).collect(), outputs: spec.outputs.clone(), rows })
}
