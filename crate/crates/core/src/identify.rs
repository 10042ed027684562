//! Faulty-feeder identification from 3rd-harmonic phase differences, the
//! classic fundamental-vs-3rd-harmonic baseline, and effective-area maps.

use serde::{Deserialize, Serialize};

use crate::angle::wrap_deg;
use crate::error::{ensure_finite, Error, Result};
use crate::phasor::PhasorSet;
use crate::theory::{damped_transfer, Role};

pub const DEFAULT_THR_DEG: f64 = 40.0;
pub const DEFAULT_K_CONSEC: usize = 5;

/// `|wrap(φa - φb - 180°)|`, in [0, 180].
pub fn pairwise_indicator(phi_a: f64, phi_b: f64) -> f64 {
    wrap_deg(phi_a - phi_b - 180.0).abs()
}

/// Harmonic amplitude gate: `A_k >= max(relative * A_1, floor)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeGate {
    pub relative: f64,
    /// Absolute floor (A).
    pub floor: f64,
}

impl Default for AmplitudeGate {
    fn default() -> Self {
        Self { relative: 0.005, floor: 0.01 }
    }
}

impl AmplitudeGate {
    pub fn passes(&self, set: &PhasorSet, k: u32) -> bool {
        match (set.get(1), set.get(k)) {
            (Some(h1), Some(hk)) => hk.amplitude >= (self.relative * h1.amplitude).max(self.floor),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentifyConfig {
    pub thr_deg: f64,
    pub gate: AmplitudeGate,
    pub k_consec: usize,
    /// Harmonic order compared between feeders.
    pub order: u32,
}

impl Default for IdentifyConfig {
    fn default() -> Self {
        Self { thr_deg: DEFAULT_THR_DEG, gate: AmplitudeGate::default(), k_consec: DEFAULT_K_CONSEC, order: 3 }
    }
}

impl IdentifyConfig {
    pub fn validate(&self) -> Result<()> {
        ensure_finite("thr", self.thr_deg)?;
        if !(0.0..=180.0).contains(&self.thr_deg) {
            return Err(Error::config(format!("thr must be in [0, 180] degrees, got {}", self.thr_deg)));
        }
        if self.k_consec == 0 {
            return Err(Error::config("k_consec must be >= 1"));
        }
        if self.order < 2 {
            return Err(Error::config("compared harmonic order must be >= 2"));
        }
        if !(self.gate.relative >= 0.0 && self.gate.floor >= 0.0) {
            return Err(Error::config("gate thresholds must be >= 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowResult {
    pub window_start: f64,
    /// `indicators[a][b]`, `None` on the diagonal.
    pub indicators: Vec<Vec<Option<f64>>>,
    /// Both channels of the pair pass the amplitude gate.
    pub valid: Vec<Vec<bool>>,
    pub verdict: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentificationResult {
    pub per_window: Vec<WindowResult>,
    pub aggregated_verdict: Option<usize>,
    /// Start of the window completing the first qualifying run.
    pub decided_at: Option<f64>,
    pub thr_deg: f64,
}

/// Per window, feeder `a` is the candidate iff every pair `(a, i)` is gated
/// valid with indicator `<= thr`; zero or several candidates leave the
/// window undetermined. The aggregated verdict is the unique feeder that is
/// the window verdict `k_consec` times in a row.
pub fn identify(streams: &[&[PhasorSet]], cfg: &IdentifyConfig) -> Result<IdentificationResult> {
    cfg.validate()?;
    let n = streams.len();
    if n < 2 {
        return Err(Error::config(format!("need >= 2 feeders, got {n}")));
    }
    let windows = streams[0].len();
    for s in streams {
        if s.len() != windows {
            return Err(Error::Synchronization("streams have different window counts".into()));
        }
        for (a, b) in s.iter().zip(streams[0].iter()) {
            if (a.window_start - b.window_start).abs() > 1e-9 {
                return Err(Error::Synchronization(format!(
                    "window boundaries differ: {} s vs {} s",
                    a.window_start, b.window_start
                )));
            }
        }
    }

    let mut per_window = Vec::with_capacity(windows);
    let mut run: Vec<usize> = vec![0; n];
    let mut qualified = vec![false; n];
    let mut decided_at = None;
    for w in 0..windows {
        let sets: Vec<&PhasorSet> = streams.iter().map(|s| &s[w]).collect();
        let phase: Vec<Option<f64>> = sets.iter().map(|p| p.get(cfg.order).map(|h| h.phase_deg)).collect();
        if phase.iter().any(Option::is_none) {
            return Err(Error::invalid(format!("phasor sets lack harmonic order {}", cfg.order)));
        }
        let gated: Vec<bool> = sets.iter().map(|p| cfg.gate.passes(p, cfg.order)).collect();
        let mut indicators = vec![vec![None; n]; n];
        let mut valid = vec![vec![false; n]; n];
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    indicators[a][b] = Some(pairwise_indicator(phase[a].unwrap(), phase[b].unwrap()));
                    valid[a][b] = gated[a] && gated[b];
                }
            }
        }
        let candidates: Vec<usize> = (0..n)
            .filter(|&a| (0..n).filter(|&b| b != a).all(|b| valid[a][b] && indicators[a][b].unwrap() <= cfg.thr_deg))
            .collect();
        let verdict = if candidates.len() == 1 { Some(candidates[0]) } else { None };
        for (f, r) in run.iter_mut().enumerate() {
            *r = if verdict == Some(f) { *r + 1 } else { 0 };
            if *r >= cfg.k_consec && !qualified[f] {
                qualified[f] = true;
                decided_at.get_or_insert(sets[0].window_start);
            }
        }
        per_window.push(WindowResult { window_start: sets[0].window_start, indicators, valid, verdict });
    }
    let winners: Vec<usize> = (0..n).filter(|f| qualified[*f]).collect();
    let (aggregated_verdict, decided_at) =
        if winners.len() == 1 { (Some(winners[0]), decided_at) } else { (None, None) };
    Ok(IdentificationResult { per_window, aggregated_verdict, decided_at, thr_deg: cfg.thr_deg })
}

/// Classic phase difference `wrap(3 φ1 - φ3)` in degrees.
pub fn classic_delta_phi(phasors: &PhasorSet) -> Result<f64> {
    let p1 = phasors.get(1).ok_or_else(|| Error::invalid("missing fundamental phasor"))?;
    let p3 = phasors.get(3).ok_or_else(|| Error::invalid("missing 3rd-harmonic phasor"))?;
    Ok(wrap_deg(3.0 * p1.phase_deg - p3.phase_deg))
}

/// The classic fault criterion `|Δφ - 180°| <= thr`.
pub fn classic_criterion(delta_phi: f64, thr_deg: f64) -> bool {
    wrap_deg(delta_phi - 180.0).abs() <= thr_deg
}

/// Shift a healthy feeder adds to the classic Δφ when feeder leakage is
/// neglected: `3 [180° + arctan(d/v)] - arctan(3d / (8 + v))`, unwrapped.
pub fn healthy_classic_shift_deg(v: f64, d: f64) -> f64 {
    3.0 * (180.0 + (d / v).atan().to_degrees()) - (3.0 * d / (8.0 + v)).atan().to_degrees()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapMethod {
    Proposed,
    Classic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapOptions {
    pub thr_deg: f64,
    /// Share of the healthy feeder compared against.
    pub c_healthy: f64,
    /// `R_Σ/R_0i`, applied to both feeders.
    pub r_feeder: f64,
    /// `R_Σ/R`.
    pub r_coil: f64,
    /// Fault-point classic Δφ assumed by the classic map (degrees).
    pub fault_delta_phi: f64,
}

impl Default for MapOptions {
    fn default() -> Self {
        Self { thr_deg: DEFAULT_THR_DEG, c_healthy: 0.2, r_feeder: 0.0, r_coil: 1.0, fault_delta_phi: 180.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapCell {
    pub v: f64,
    pub d: f64,
    /// Proposed: faulty-vs-healthy indicator. Classic: faulty `|Δφ - 180°|`.
    pub value: f64,
    /// Classic only: healthy `|Δφ - 180°|`.
    pub healthy_value: Option<f64>,
    pub pass: bool,
    /// Grid point at an undamped resonance; excluded from pass statistics.
    pub singular: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AreaMap {
    pub c_n: f64,
    pub method: MapMethod,
    pub cells: Vec<MapCell>,
}

impl AreaMap {
    pub fn evaluated(&self) -> impl Iterator<Item = &MapCell> {
        self.cells.iter().filter(|c| !c.singular)
    }

    pub fn pass_fraction(&self) -> f64 {
        let total = self.evaluated().count();
        if total == 0 {
            return 0.0;
        }
        self.evaluated().filter(|c| c.pass).count() as f64 / total as f64
    }

    pub fn failures(&self) -> usize {
        self.evaluated().filter(|c| !c.pass).count()
    }
}

/// Evenly spaced inclusive grid `start, start + step, ...` up to `stop`.
pub fn grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step + 1e-9).floor() as i64;
    (0..=n.max(-1)).map(|i| start + i as f64 * step).collect()
}

/// Default detuning grid `[-0.1, 0)` in steps of 0.005.
pub fn default_v_grid() -> Vec<f64> {
    grid(-0.1, -0.005, 0.005)
}

/// Default damping grid `[0, 0.5]` in steps of 0.01.
pub fn default_d_grid() -> Vec<f64> {
    grid(0.0, 0.5, 0.01)
}

pub fn effective_area_map(
    c_n: f64,
    v_grid: &[f64],
    d_grid: &[f64],
    method: MapMethod,
    opts: &MapOptions,
) -> Result<AreaMap> {
    ensure_finite("c_n", c_n)?;
    if !(c_n > 0.0 && c_n < 1.0) {
        return Err(Error::invalid(format!("c_n must be in (0, 1), got {c_n}")));
    }
    let mut cells = Vec::with_capacity(v_grid.len() * d_grid.len());
    for &v in v_grid {
        for &d in d_grid {
            let cell = if v.abs() < 1e-12 { None } else { map_cell(c_n, v, d, method, opts).ok() };
            cells.push(cell.unwrap_or(MapCell {
                v,
                d,
                value: f64::NAN,
                healthy_value: None,
                pass: false,
                singular: true,
            }));
        }
    }
    Ok(AreaMap { c_n, method, cells })
}

fn map_cell(c_n: f64, v: f64, d: f64, method: MapMethod, o: &MapOptions) -> Result<MapCell> {
    let rot =
        |k: u32, role: Role, c: f64| damped_transfer(v, d, k, role, c, o.r_feeder, o.r_coil).map(|t| t.rotation_deg);
    let faulty3 = rot(3, Role::Faulty, c_n)?;
    let healthy3 = rot(3, Role::Healthy(0), o.c_healthy)?;
    Ok(match method {
        MapMethod::Proposed => {
            let value = pairwise_indicator(faulty3, healthy3);
            MapCell { v, d, value, healthy_value: None, pass: value <= o.thr_deg, singular: false }
        }
        MapMethod::Classic => {
            let faulty = o.fault_delta_phi + 3.0 * rot(1, Role::Faulty, c_n)? - faulty3;
            let healthy = o.fault_delta_phi + 3.0 * rot(1, Role::Healthy(0), o.c_healthy)? - healthy3;
            let fv = wrap_deg(faulty - 180.0).abs();
            let hv = wrap_deg(healthy - 180.0).abs();
            MapCell {
                v,
                d,
                value: fv,
                healthy_value: Some(hv),
                pass: fv <= o.thr_deg && hv > o.thr_deg,
                singular: false,
            }
        }
    })
}
