//! Scenario files: one TOML table per module, every key optional.
//!
//! ```toml
//! seed = 7
//!
//! [network]
//! shares = [13.3, 10.8, 10.8, 24.7]
//! faulty = 2
//! v = -0.05
//! d = 0.2
//!
//! [source.arc]
//! p_loss = 1000.0
//! tau = 2.0
//! ```

use std::path::Path;

use hif_core::arc::{ArcParameters, DEFAULT_R_ARC_INIT, DEFAULT_R_CEILING, DEFAULT_R_FLOOR};
use hif_core::identify::{AmplitudeGate, IdentifyConfig, DEFAULT_K_CONSEC, DEFAULT_THR_DEG};
use hif_core::network::{
    CoupledSource, FaultSource, HarmonicComponent, InjectedCurrent, NetworkParameters, SimulationOptions, StartState,
};
use hif_core::phasor::nyquist_order;
use hif_core::waveform::samples_per_cycle;
use hif_core::{DEFAULT_F0, DEFAULT_FS, DEFAULT_MAX_ORDER};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Result, WorkbenchError};

/// Relative feeder lengths of the reference 4-feeder system; capacitances are
/// taken proportional to them.
pub const REFERENCE_SHARES: [f64; 4] = [13.3, 10.8, 10.8, 24.7];

/// Peak phase-to-earth voltage of a 10 kV system (V).
pub const DEFAULT_SOURCE_AMPLITUDE: f64 = 10_000.0 * std::f64::consts::SQRT_2 / 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Scenario {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub network: NetworkSection,
    pub source: SourceSection,
    pub sim: SimSection,
    pub analysis: AnalysisSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NetworkSection {
    pub f0: f64,
    /// Total zero-sequence capacitance (F).
    pub c_total: f64,
    /// Relative feeder capacitances; normalized on use.
    pub shares: Vec<f64>,
    /// Faulty feeder, 1-based.
    pub faulty: usize,
    pub v: f64,
    pub d: f64,
    /// Fraction of the total resistive conductance sitting on the coil; the
    /// rest is spread over the feeders in proportion to capacitance.
    pub coil_share: f64,
}

impl Default for NetworkSection {
    fn default() -> Self {
        Self {
            f0: DEFAULT_F0,
            c_total: 12e-6,
            shares: REFERENCE_SHARES.to_vec(),
            faulty: 1,
            v: -0.05,
            d: 0.2,
            coil_share: 0.6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceKind {
    /// Virtual source u_f behind the arc; the fault current is solved with the network.
    #[default]
    Coupled,
    /// Prescribed fault current i_0f.
    Injected,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarmonicSpec {
    pub k: u32,
    pub amplitude: f64,
    #[serde(default)]
    pub phase_deg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SourceSection {
    pub kind: SourceKind,
    /// Fundamental peak: volts of u_f when coupled, amperes of i_0f when injected.
    pub amplitude: f64,
    pub phase_deg: f64,
    /// Linear fault-path resistance (Ω), coupled only.
    pub series_resistance: f64,
    /// Extra harmonics (`k >= 2`) of u_f or i_0f.
    pub harmonics: Vec<HarmonicSpec>,
    pub arc: ArcSection,
}

impl Default for SourceSection {
    fn default() -> Self {
        Self {
            kind: SourceKind::Coupled,
            amplitude: DEFAULT_SOURCE_AMPLITUDE,
            phase_deg: 0.0,
            series_resistance: 1000.0,
            harmonics: Vec::new(),
            arc: ArcSection::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArcSection {
    pub p_loss: f64,
    pub tau: f64,
    pub r_series: f64,
    pub r_arc_init: f64,
    pub r_floor: f64,
    pub r_ceiling: f64,
}

impl Default for ArcSection {
    fn default() -> Self {
        Self {
            p_loss: 1000.0,
            tau: 2.0,
            r_series: 0.0,
            r_arc_init: DEFAULT_R_ARC_INIT,
            r_floor: DEFAULT_R_FLOOR,
            r_ceiling: DEFAULT_R_CEILING,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StartKind {
    #[default]
    Rest,
    /// Periodic steady state; injected sources only.
    Periodic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimSection {
    pub duration: f64,
    pub fs: f64,
    /// Cycles discarded before analysis.
    pub settle_cycles: usize,
    pub start: StartKind,
    /// Gaussian measurement noise added to every current and voltage channel (A or V).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_std: Option<f64>,
}

impl Default for SimSection {
    fn default() -> Self {
        Self { duration: 1.0, fs: DEFAULT_FS, settle_cycles: 20, start: StartKind::Rest, noise_std: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisSection {
    pub f0: f64,
    /// Highest harmonic order.
    pub m: u32,
    pub thr: f64,
    pub gate_relative: f64,
    pub gate_floor: f64,
    pub k_consec: usize,
}

impl Default for AnalysisSection {
    fn default() -> Self {
        let gate = AmplitudeGate::default();
        Self {
            f0: DEFAULT_F0,
            m: DEFAULT_MAX_ORDER,
            thr: DEFAULT_THR_DEG,
            gate_relative: gate.relative,
            gate_floor: gate.floor,
            k_consec: DEFAULT_K_CONSEC,
        }
    }
}

fn schema(key: &str, message: impl Into<String>) -> WorkbenchError {
    WorkbenchError::Schema { key: key.to_string(), line: None, message: message.into() }
}

impl Scenario {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let s: Scenario = toml::from_str(text).map_err(|e| {
            let line = e.span().map(|sp| line_of(text, sp.start));
            WorkbenchError::Schema { key: String::new(), line, message: e.message().trim().to_string() }
        })?;
        s.validate().map_err(|e| attach_line(e, text))?;
        Ok(s)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("scenario serializes")
    }

    /// SHA-256 of the canonical serialization, hex encoded.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_toml_string().as_bytes()))
    }

    pub fn validate(&self) -> Result<()> {
        let n = &self.network;
        if n.shares.len() < 2 {
            return Err(schema("network.shares", format!("need at least 2 feeders, got {}", n.shares.len())));
        }
        if n.shares.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(schema("network.shares", "shares must be positive"));
        }
        if n.faulty == 0 || n.faulty > n.shares.len() {
            return Err(schema("network.faulty", format!("must be in 1..={}", n.shares.len())));
        }
        if !(n.c_total.is_finite() && n.c_total > 0.0) {
            return Err(schema("network.c_total", "must be positive"));
        }
        if !(n.v.is_finite() && n.v < 1.0) {
            return Err(schema("network.v", "must be finite and < 1"));
        }
        if !(n.d.is_finite() && n.d >= 0.0) {
            return Err(schema("network.d", "must be >= 0"));
        }
        if !(0.0..=1.0).contains(&n.coil_share) {
            return Err(schema("network.coil_share", "must be in [0, 1]"));
        }
        self.network_parameters().map_err(|e| schema("network", e.to_string()))?;

        let n_cycle = samples_per_cycle(self.sim.fs, n.f0).map_err(|e| schema("sim.fs", e.to_string()))?;
        if n_cycle % 2 != 0 {
            return Err(schema(
                "sim.fs",
                format!("fs/f0 = {n_cycle} is odd; synchronized half-cycle windows need an even number of samples per cycle"),
            ));
        }
        if (self.analysis.f0 - n.f0).abs() > 1e-9 * n.f0 {
            return Err(schema("analysis.f0", format!("must equal network.f0 = {}", n.f0)));
        }
        let cycle = 1.0 / n.f0;
        let needed = (self.sim.settle_cycles as f64 + 2.0) * cycle;
        if !(self.sim.duration.is_finite() && self.sim.duration >= needed - 1e-12) {
            return Err(schema(
                "sim.duration",
                format!("must cover settle_cycles plus 2 analysis cycles ({needed} s)"),
            ));
        }
        match self.sim.noise_std {
            Some(s) if !(s.is_finite() && s >= 0.0) => return Err(schema("sim.noise_std", "must be >= 0")),
            Some(_) if self.seed.is_none() => {
                return Err(schema("seed", "a seed is required when sim.noise_std is set"));
            }
            _ => {}
        }

        let a = &self.analysis;
        if a.m < 3 || a.m > nyquist_order(n_cycle) {
            return Err(schema("analysis.m", format!("must be in 3..={}", nyquist_order(n_cycle))));
        }
        self.identify_config().validate().map_err(|e| schema("analysis", e.to_string()))?;

        let src = &self.source;
        for (i, h) in src.harmonics.iter().enumerate() {
            if h.k < 2 || h.k > nyquist_order(n_cycle) {
                return Err(schema(&format!("source.harmonics[{i}].k"), "must be >= 2 and below Nyquist"));
            }
            if !(h.amplitude.is_finite() && h.phase_deg.is_finite()) {
                return Err(schema(&format!("source.harmonics[{i}]"), "must be finite"));
            }
        }
        if !(src.amplitude.is_finite() && src.phase_deg.is_finite()) {
            return Err(schema("source.amplitude", "must be finite"));
        }
        match src.kind {
            SourceKind::Coupled => {
                if !(src.series_resistance.is_finite() && src.series_resistance >= 0.0) {
                    return Err(schema("source.series_resistance", "must be >= 0"));
                }
                self.arc_parameters().map_err(|e| schema("source.arc", e.to_string()))?;
                if self.sim.start == StartKind::Periodic {
                    return Err(schema("sim.start", "periodic start needs an injected source"));
                }
            }
            SourceKind::Injected => {}
        }
        Ok(())
    }

    pub fn network_parameters(&self) -> hif_core::Result<NetworkParameters> {
        let n = &self.network;
        NetworkParameters::from_ratios(n.f0, n.c_total, &n.shares, n.faulty.saturating_sub(1), n.v, n.d, n.coil_share)
    }

    pub fn arc_parameters(&self) -> hif_core::Result<ArcParameters> {
        let a = &self.source.arc;
        let p = ArcParameters {
            p_loss: a.p_loss,
            tau: a.tau,
            r_series: a.r_series,
            r_arc_init: a.r_arc_init,
            r_floor: a.r_floor,
            r_ceiling: a.r_ceiling,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn fault_source(&self) -> hif_core::Result<FaultSource> {
        let src = &self.source;
        let extra = src.harmonics.iter().map(|h| HarmonicComponent {
            k: h.k,
            amplitude: h.amplitude,
            phase: h.phase_deg.to_radians(),
        });
        Ok(match src.kind {
            SourceKind::Coupled => FaultSource::Coupled(CoupledSource {
                amplitude: src.amplitude,
                phase: src.phase_deg.to_radians(),
                harmonics: extra.collect(),
                series_resistance: src.series_resistance,
                arc: self.arc_parameters()?,
            }),
            SourceKind::Injected => {
                let mut h =
                    vec![HarmonicComponent { k: 1, amplitude: src.amplitude, phase: src.phase_deg.to_radians() }];
                h.extend(extra);
                FaultSource::Injected(InjectedCurrent::Harmonics(h))
            }
        })
    }

    pub fn simulation_options(&self) -> SimulationOptions {
        let start = match self.sim.start {
            StartKind::Rest => StartState::Rest,
            StartKind::Periodic => StartState::PeriodicSteadyState,
        };
        SimulationOptions { start, ..Default::default() }
    }

    pub fn identify_config(&self) -> IdentifyConfig {
        let a = &self.analysis;
        IdentifyConfig {
            thr_deg: a.thr,
            gate: AmplitudeGate { relative: a.gate_relative, floor: a.gate_floor },
            k_consec: a.k_consec,
            order: 3,
        }
    }

    /// Value at a dotted path such as `network.v`, or `None` when the path
    /// does not name a field of the resolved scenario.
    pub fn get_path(&self, path: &str) -> Option<toml::Value> {
        let mut v = &toml::Value::try_from(self).ok()?;
        for part in path.split('.') {
            v = v.get(part)?;
        }
        Some(v.clone())
    }

    /// Copy with one field replaced. Unknown paths and ill-typed values are
    /// schema errors naming the path.
    pub fn with_path(&self, path: &str, value: toml::Value) -> Result<Self> {
        let mut root = toml::Value::try_from(self).expect("scenario serializes");
        let parts: Vec<&str> = path.split('.').collect();
        if parts.iter().any(|p| p.is_empty()) {
            return Err(schema(path, "empty path segment"));
        }
        let (last, parents) = parts.split_last().expect("non-empty");
        let mut table = root.as_table_mut().expect("root is a table");
        for p in parents {
            table = table
                .get_mut(*p)
                .and_then(toml::Value::as_table_mut)
                .ok_or_else(|| schema(path, "path does not name a scenario field"))?;
        }
        table.insert((*last).to_string(), value);
        let s: Scenario = root.try_into().map_err(|e: toml::de::Error| schema(path, e.message().trim()))?;
        s.validate()?;
        Ok(s)
    }
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| WorkbenchError::io(path, e))?;
    Scenario::from_toml_str(&text)
}

pub fn save_scenario(scenario: &Scenario, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, scenario.to_toml_string()).map_err(|e| WorkbenchError::io(path, e))
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|b| *b == b'\n').count() + 1
}

fn attach_line(err: WorkbenchError, text: &str) -> WorkbenchError {
    match err {
        WorkbenchError::Schema { key, line: None, message } => {
            let line = locate_key(text, &key);
            WorkbenchError::Schema { key, line, message }
        }
        e => e,
    }
}

/// Line of the assignment that sets a dotted key, following `[table]`
/// headers and dotted keys. Array indices (`shares[2]`) point at the array.
fn locate_key(text: &str, key: &str) -> Option<usize> {
    let key = key.split('[').next().unwrap_or(key);
    let mut table = String::new();
    let mut header_line = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(h) = line.strip_prefix('[') {
            table = h.trim_start_matches('[').split(']').next().unwrap_or("").trim().to_string();
            if table == key {
                header_line = Some(i + 1);
            }
            continue;
        }
        let Some((lhs, _)) = line.split_once('=') else { continue };
        if line.starts_with('#') {
            continue;
        }
        let lhs: String = lhs.split('.').map(str::trim).collect::<Vec<_>>().join(".");
        let full = if table.is_empty() { lhs } else { format!("{table}.{lhs}") };
        if full == key || key.starts_with(&format!("{full}.")) {
            return Some(i + 1);
        }
    }
    header_line
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        Scenario::default().validate().unwrap();
        let s = Scenario::from_toml_str("").unwrap();
        assert_eq!(s, Scenario::default());
    }

    #[test]
    fn key_location() {
        let text = "seed = 1\n[network]\nv = -0.1\n\n[source.arc]\ntau = 3\n[sim]\nfs = 6425\n";
        assert_eq!(locate_key(text, "network.v"), Some(3));
        assert_eq!(locate_key(text, "source.arc.tau"), Some(6));
        assert_eq!(locate_key(text, "sim.fs"), Some(8));
        assert_eq!(locate_key(text, "seed"), Some(1));
        assert_eq!(locate_key(text, "sim.noise_std"), None);
        assert_eq!(locate_key("network.d = 0.3\n", "network.d"), Some(1));
    }

    #[test]
    fn path_access() {
        let s = Scenario::default();
        assert_eq!(s.get_path("network.v"), Some(toml::Value::Float(-0.05)));
        assert_eq!(s.get_path("network.nope"), None);
        let t = s.with_path("network.d", toml::Value::Integer(0)).unwrap();
        assert_eq!(t.network.d, 0.0);
        assert!(s.with_path("network.nope", toml::Value::Float(1.0)).is_err());
        assert!(s.with_path("nope.v", toml::Value::Float(1.0)).is_err());
        assert!(s.with_path("network.faulty", toml::Value::Integer(9)).is_err());
    }
}
