//! Energy-balance arc model: `d ln R / dt = (P_loss - u*i) / tau`.
//!
//! The arc resistance is integrated in log space, which keeps it positive and
//! makes the zero-input solution exact.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::ode::rk4_step;
use crate::waveform::{samples_per_cycle, WaveformRecord};

/// Internal integration steps per output sample.
pub const OVERSAMPLE: usize = 10;
pub const DEFAULT_R_ARC_INIT: f64 = 1000.0;
pub const DEFAULT_R_FLOOR: f64 = 1e-2;
pub const DEFAULT_R_CEILING: f64 = 1e7;

/// `(P_loss [W], tau [J])` for the three reference cases, weakest to strongest.
pub const REFERENCE_SETS: [(f64, f64); 3] = [(2_000.0, 300.0), (16_000.0, 1_670.0), (46_000.0, 3_300.0)];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcParameters {
    /// Power dissipated to the surroundings (W).
    pub p_loss: f64,
    /// Energy time constant (J).
    pub tau: f64,
    /// Linear resistance in series with the arc (Ω).
    pub r_series: f64,
    pub r_arc_init: f64,
    pub r_floor: f64,
    pub r_ceiling: f64,
}

impl ArcParameters {
    pub fn new(p_loss: f64, tau: f64, r_series: f64) -> Result<Self> {
        let p = Self {
            p_loss,
            tau,
            r_series,
            r_arc_init: DEFAULT_R_ARC_INIT,
            r_floor: DEFAULT_R_FLOOR,
            r_ceiling: DEFAULT_R_CEILING,
        };
        p.validate()?;
        Ok(p)
    }

    /// One of [`REFERENCE_SETS`] (index 0, 1 or 2).
    pub fn reference(index: usize, r_series: f64) -> Result<Self> {
        let (p, tau) = *REFERENCE_SETS
            .get(index)
            .ok_or_else(|| Error::invalid(format!("reference set {index} does not exist")))?;
        Self::new(p, tau, r_series)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("p_loss", self.p_loss),
            ("tau", self.tau),
            ("r_series", self.r_series),
            ("r_arc_init", self.r_arc_init),
            ("r_floor", self.r_floor),
            ("r_ceiling", self.r_ceiling),
        ] {
            ensure_finite(name, v)?;
        }
        if self.p_loss <= 0.0 {
            return Err(Error::invalid(format!("p_loss must be > 0, got {}", self.p_loss)));
        }
        if self.tau <= 0.0 {
            return Err(Error::invalid(format!("tau must be > 0, got {}", self.tau)));
        }
        if self.r_series < 0.0 {
            return Err(Error::invalid(format!("r_series must be >= 0, got {}", self.r_series)));
        }
        if !(self.r_floor > 0.0 && self.r_floor < self.r_ceiling) {
            return Err(Error::invalid("need 0 < r_floor < r_ceiling"));
        }
        if self.r_arc_init <= 0.0 {
            return Err(Error::invalid(format!("r_arc_init must be > 0, got {}", self.r_arc_init)));
        }
        Ok(())
    }

    pub(crate) fn clamp_log(&self, x: f64) -> f64 {
        x.clamp(self.r_floor.ln(), self.r_ceiling.ln())
    }

    /// Rate of change of `ln R_arc` for a given arc power `u*i`.
    pub(crate) fn log_rate(&self, power: f64) -> f64 {
        (self.p_loss - power) / self.tau
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcState {
    pub r_arc: f64,
    pub t: f64,
}

impl ArcState {
    pub fn initial(params: &ArcParameters) -> Self {
        Self { r_arc: params.r_arc_init, t: 0.0 }
    }
}

/// Advance the arc resistance by `dt` holding `u_arc` and `i_arc` constant.
///
/// With constant power the log-space ODE has the exact solution
/// `R(t+dt) = R(t) * exp((P_loss - u*i) dt / tau)`; the result is clamped to
/// the parameter floor and ceiling.
pub fn arc_resistance_step(
    state: ArcState,
    u_arc: f64,
    i_arc: f64,
    dt: f64,
    params: &ArcParameters,
) -> Result<ArcState> {
    ensure_finite("u_arc", u_arc)?;
    ensure_finite("i_arc", i_arc)?;
    ensure_finite("dt", dt)?;
    ensure_finite("r_arc", state.r_arc)?;
    if dt <= 0.0 {
        return Err(Error::invalid(format!("dt must be > 0, got {dt}")));
    }
    if state.r_arc <= 0.0 {
        return Err(Error::invalid(format!("r_arc must be > 0, got {}", state.r_arc)));
    }
    params.validate()?;
    let x = state.r_arc.ln() + params.log_rate(u_arc * i_arc) * dt;
    Ok(ArcState { r_arc: params.clamp_log(x).exp(), t: state.t + dt })
}

/// `amplitude * sin(2π f t + phase)`, phase in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sinusoid {
    pub amplitude: f64,
    pub frequency: f64,
    pub phase: f64,
}

impl Sinusoid {
    pub fn at(&self, t: f64) -> f64 {
        self.amplitude * (2.0 * PI * self.frequency * t + self.phase).sin()
    }
}

/// Stiff sinusoidal source driving `r_series + R_arc`.
///
/// Channels: `i` (A), `u_arc` (V), `r_arc` (Ω).
pub fn simulate_arc_circuit(
    source: &Sinusoid,
    params: &ArcParameters,
    duration: f64,
    fs: f64,
) -> Result<WaveformRecord> {
    params.validate()?;
    ensure_finite("amplitude", source.amplitude)?;
    ensure_finite("phase", source.phase)?;
    ensure_finite("duration", duration)?;
    let f0 = source.frequency;
    samples_per_cycle(fs, f0)?;
    if fs < 20.0 * f0 {
        return Err(Error::config(format!("fs = {fs} Hz must be at least 20 x {f0} Hz")));
    }
    if duration < 2.0 / f0 - 0.5 / fs {
        return Err(Error::invalid(format!("duration {duration} s is shorter than two cycles")));
    }
    let n = (duration * fs).round() as usize;
    let h = 1.0 / (fs * OVERSAMPLE as f64);
    let r_total = |x: f64| params.r_series + x.exp();
    let rhs = |t: f64, x: &[f64; 1]| {
        // RK4 stages can overshoot the clamp; keep exp() finite
        let r = params.clamp_log(x[0]).exp();
        let i = source.at(t) / (params.r_series + r);
        [params.log_rate(i * i * r)]
    };

    let mut x = [params.clamp_log(params.r_arc_init.ln())];
    let (mut i_ch, mut u_ch, mut r_ch) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for s in 0..n {
        let t = s as f64 / fs;
        let r = x[0].exp();
        let i = source.at(t) / r_total(x[0]);
        i_ch.push(i);
        u_ch.push(i * r);
        r_ch.push(r);
        for j in 0..OVERSAMPLE {
            let tj = t + j as f64 * h;
            x = rk4_step(&rhs, tj, &x, h);
            x[0] = params.clamp_log(x[0]);
        }
    }
    WaveformRecord::new(fs, 0.0)?.with_channel("i", i_ch)?.with_channel("u_arc", u_ch)?.with_channel("r_arc", r_ch)
}

/// Distortion descriptors of one half-cycle of arc current.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistortionMetrics {
    /// Interpolated current zero crossing that opens the half-cycle (s).
    pub half_cycle_start: f64,
    /// Lag of the peak `r_arc` (parabolic interpolation around the largest
    /// sample) behind the opening zero crossing (s); `None`
    /// when `r_arc` is flat over the half-cycle.
    pub offset: Option<f64>,
    /// Time `r_arc` spends at or above the threshold fraction of its peak (s).
    pub duration: f64,
    /// Peak `r_arc` in the half-cycle (Ω).
    pub extent: f64,
}

pub const DEFAULT_DURATION_FRACTION: f64 = 0.5;

/// Per-half-cycle metrics with the default 50% duration threshold.
pub fn distortion_metrics(record: &WaveformRecord, f0: f64) -> Result<Vec<DistortionMetrics>> {
    distortion_metrics_with(record, f0, DEFAULT_DURATION_FRACTION)
}

/// Half-cycles are the intervals between consecutive interpolated zero
/// crossings of `i`; incomplete half-cycles at the record edges are skipped.
pub fn distortion_metrics_with(record: &WaveformRecord, f0: f64, fraction: f64) -> Result<Vec<DistortionMetrics>> {
    let i = record.channel("i")?;
    let r = record.channel("r_arc")?;
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::invalid(format!("duration fraction must be in (0, 1), got {fraction}")));
    }
    if !(f0.is_finite() && f0 > 0.0) {
        return Err(Error::invalid("f0 must be positive"));
    }
    if record.duration() < 1.0 / f0 - 0.5 * record.dt() {
        return Err(Error::invalid("record spans less than one cycle"));
    }
    let dt = record.dt();
    let half = 0.5 / f0;

    // (interpolated crossing time, index of first sample after it)
    let mut crossings = Vec::new();
    for s in 1..i.len() {
        let (a, b) = (i[s - 1], i[s]);
        if (a >= 0.0) != (b >= 0.0) {
            let frac = a / (a - b);
            crossings.push((record.time(s - 1) + frac * dt, s));
        }
    }

    let mut out = Vec::new();
    for w in crossings.windows(2) {
        let ((z0, s0), (_, s1)) = (w[0], w[1]);
        if s1 <= s0 {
            continue;
        }
        let seg = &r[s0..s1];
        let (k_max, &peak) =
            seg.iter().enumerate().fold((0, &f64::NEG_INFINITY), |acc, (k, v)| if *v > *acc.1 { (k, v) } else { acc });
        let low = seg.iter().cloned().fold(f64::INFINITY, f64::min);
        let flat = peak - low <= 1e-9 * peak.abs().max(1e-300);
        let offset = if flat {
            None
        } else {
            let t_peak = record.time(s0 + k_max) + vertex_shift(r, s0 + k_max) * dt;
            Some((t_peak - z0).clamp(0.0, half - 1e-15))
        };
        let above = seg.iter().filter(|v| **v >= fraction * peak).count();
        out.push(DistortionMetrics {
            half_cycle_start: z0,
            offset,
            duration: (above as f64 * dt).min(half),
            extent: peak,
        });
    }
    if out.is_empty() {
        return Err(Error::invalid("no complete current half-cycle in record"));
    }
    Ok(out)
}

/// Sub-sample position (in samples, within ±0.5) of the vertex of the
/// parabola through `x[s - 1]`, `x[s]`, `x[s + 1]`.
fn vertex_shift(x: &[f64], s: usize) -> f64 {
    if s == 0 || s + 1 >= x.len() {
        return 0.0;
    }
    let (a, b, c) = (x[s - 1], x[s], x[s + 1]);
    let curv = a - 2.0 * b + c;
    if curv >= 0.0 {
        return 0.0;
    }
    (0.5 * (a - c) / curv).clamp(-0.5, 0.5)
}
