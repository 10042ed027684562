//! Zero-sequence equivalent circuit of an n-feeder resonant-grounded network
//! and its time-domain simulator.
//!
//! State equations (lumped, line series impedances shorted):
//!
//! ```text
//! C_Σ du/dt = i_f - i_L - u / R_Σ        L di_L/dt = u
//! ```
//!
//! with `1/R_Σ = 1/R + Σ 1/R_0i`. Feeder currents are formed from the same
//! `du/dt`, so Kirchhoff's current law at the bus holds to rounding.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::arc::{ArcParameters, OVERSAMPLE};
use crate::error::{ensure_finite, Error, Result};
use crate::ode::rk4_step;
use crate::waveform::{samples_per_cycle, WaveformRecord};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeederSpec {
    pub name: String,
    /// Zero-sequence phase-to-earth capacitance (F).
    pub c0: f64,
    /// Phase-to-earth leakage resistance (Ω); `None` means infinite.
    pub r0: Option<f64>,
}

impl FeederSpec {
    pub fn new(name: impl Into<String>, c0: f64, r0: Option<f64>) -> Self {
        Self { name: name.into(), c0, r0 }
    }

    fn conductance(&self) -> f64 {
        self.r0.map_or(0.0, |r| 1.0 / r)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkParameters {
    pub f0: f64,
    pub feeders: Vec<FeederSpec>,
    /// Equivalent zero-sequence inductance (three times the coil's) (H).
    pub coil_l: f64,
    /// Parallel loss resistance of the coil path (Ω); `None` means infinite.
    pub coil_r: Option<f64>,
    /// Zero-based index of the feeder carrying the fault.
    pub faulty_index: usize,
}

/// Nominal operating band of the detuning index.
pub const NOMINAL_V_BAND: (f64, f64) = (-0.1, 0.0);

impl NetworkParameters {
    pub fn validate(&self) -> Result<()> {
        ensure_finite("f0", self.f0)?;
        ensure_finite("coil_l", self.coil_l)?;
        if self.f0 <= 0.0 {
            return Err(Error::invalid("f0 must be positive"));
        }
        if self.feeders.len() < 2 {
            return Err(Error::config(format!("need at least 2 feeders, got {}", self.feeders.len())));
        }
        if self.faulty_index >= self.feeders.len() {
            return Err(Error::invalid(format!(
                "faulty feeder index {} out of range for {} feeders",
                self.faulty_index,
                self.feeders.len()
            )));
        }
        for f in &self.feeders {
            if !(f.c0.is_finite() && f.c0 > 0.0) {
                return Err(Error::invalid(format!("feeder {:?}: c0 must be > 0", f.name)));
            }
            if let Some(r) = f.r0 {
                if !(r.is_finite() && r > 0.0) {
                    return Err(Error::invalid(format!("feeder {:?}: r0 must be > 0", f.name)));
                }
            }
        }
        if self.coil_l <= 0.0 {
            return Err(Error::invalid("coil_l must be > 0"));
        }
        if let Some(r) = self.coil_r {
            if !(r.is_finite() && r > 0.0) {
                return Err(Error::invalid("coil_r must be > 0"));
            }
        }
        Ok(())
    }

    pub fn omega0(&self) -> f64 {
        2.0 * PI * self.f0
    }

    /// Total capacitance C_0Σ (F).
    pub fn c_total(&self) -> f64 {
        self.feeders.iter().map(|f| f.c0).sum()
    }

    /// ω0² L C_0Σ.
    pub fn tuning(&self) -> f64 {
        self.omega0().powi(2) * self.coil_l * self.c_total()
    }

    pub fn coil_conductance(&self) -> f64 {
        self.coil_r.map_or(0.0, |r| 1.0 / r)
    }

    /// 1/R_Σ (S).
    pub fn total_conductance(&self) -> f64 {
        self.coil_conductance() + self.feeders.iter().map(FeederSpec::conductance).sum::<f64>()
    }

    /// Capacitive shares c_i = C_0i / C_0Σ.
    pub fn shares(&self) -> Vec<f64> {
        let c = self.c_total();
        self.feeders.iter().map(|f| f.c0 / c).collect()
    }

    /// r_R0i = R_Σ / R_0i for every feeder (all zero in a lossless network).
    pub fn feeder_resistive_shares(&self) -> Vec<f64> {
        let g = self.total_conductance();
        self.feeders.iter().map(|f| if g > 0.0 { f.conductance() / g } else { 0.0 }).collect()
    }

    /// r_R = R_Σ / R. Taken as 1 when the network has no resistive path.
    pub fn coil_resistive_share(&self) -> f64 {
        let g = self.total_conductance();
        if g > 0.0 {
            self.coil_conductance() / g
        } else {
            1.0
        }
    }

    pub fn detuning_index(&self) -> f64 {
        1.0 - 1.0 / self.tuning()
    }

    pub fn damping_ratio(&self) -> f64 {
        self.total_conductance() / (self.omega0() * self.c_total())
    }

    pub fn in_nominal_band(&self) -> bool {
        let v = self.detuning_index();
        v >= NOMINAL_V_BAND.0 && v < NOMINAL_V_BAND.1
    }

    pub fn faulty_share(&self) -> f64 {
        self.feeders[self.faulty_index].c0 / self.c_total()
    }

    /// Build a network from dimensionless targets.
    ///
    /// `shares` are normalized to sum to one. The total conductance
    /// `d ω0 C_Σ` is split as `coil_share` on the coil and the remainder over
    /// the feeders in proportion to their capacitance.
    pub fn from_ratios(
        f0: f64,
        c_total: f64,
        shares: &[f64],
        faulty_index: usize,
        v: f64,
        d: f64,
        coil_share: f64,
    ) -> Result<Self> {
        if !(c_total.is_finite() && c_total > 0.0) {
            return Err(Error::invalid("c_total must be > 0"));
        }
        if shares.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(Error::invalid("feeder shares must be > 0"));
        }
        let sum: f64 = shares.iter().sum();
        let feeders = shares
            .iter()
            .enumerate()
            .map(|(i, s)| FeederSpec::new(format!("F{}", i + 1), c_total * s / sum, None))
            .collect();
        let mut p = Self { f0, feeders, coil_l: 1.0, coil_r: None, faulty_index };
        let mut split = vec![0.0; shares.len()];
        for (x, s) in split.iter_mut().zip(shares) {
            *x = (1.0 - coil_share) * s / sum;
        }
        p.set_ratios(v, d, coil_share, &split)?;
        Ok(p)
    }

    /// Same capacitances and resistive split, new `(v, d)`. A lossless
    /// network gets its damping on the coil.
    pub fn retune(&self, v: f64, d: f64) -> Result<Self> {
        let mut p = self.clone();
        let coil = self.coil_resistive_share();
        let split = self.feeder_resistive_shares();
        p.set_ratios(v, d, coil, &split)?;
        Ok(p)
    }

    fn set_ratios(&mut self, v: f64, d: f64, coil_share: f64, feeder_split: &[f64]) -> Result<()> {
        ensure_finite("v", v)?;
        ensure_finite("d", d)?;
        if v >= 1.0 {
            return Err(Error::invalid(format!("detuning index must be < 1, got {v}")));
        }
        if d < 0.0 {
            return Err(Error::invalid(format!("damping ratio must be >= 0, got {d}")));
        }
        if !(0.0..=1.0).contains(&coil_share) {
            return Err(Error::invalid(format!("coil resistive share must be in [0, 1], got {coil_share}")));
        }
        let w = 2.0 * PI * self.f0;
        let c = self.c_total();
        self.coil_l = 1.0 / (w * w * c * (1.0 - v));
        let g = d * w * c;
        let as_r = |gi: f64| if gi > 0.0 { Some(1.0 / gi) } else { None };
        self.coil_r = as_r(coil_share * g);
        for (f, s) in self.feeders.iter_mut().zip(feeder_split) {
            f.r0 = as_r(s * g);
        }
        self.validate()
    }
}

pub fn detuning_index(params: &NetworkParameters) -> f64 {
    params.detuning_index()
}

pub fn damping_ratio(params: &NetworkParameters) -> f64 {
    params.damping_ratio()
}

/// `amplitude * sin(k ω0 t + phase)`, phase in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarmonicComponent {
    pub k: u32,
    pub amplitude: f64,
    pub phase: f64,
}

fn harmonic_sum(components: &[HarmonicComponent], w0: f64, t: f64) -> f64 {
    components.iter().map(|c| c.amplitude * (c.k as f64 * w0 * t + c.phase).sin()).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InjectedCurrent {
    /// Samples of i_0f taken from a record channel; interpolated with a
    /// Catmull-Rom cubic between samples.
    Sampled { record: WaveformRecord, channel: String },
    /// Analytic harmonic sum at multiples of the network's f0.
    Harmonics(Vec<HarmonicComponent>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoupledSource {
    /// Fundamental of the virtual source u_f (V peak).
    pub amplitude: f64,
    /// Radians.
    pub phase: f64,
    /// Extra harmonic content of u_f (load harmonics); `k >= 2`.
    pub harmonics: Vec<HarmonicComponent>,
    /// Lumped linear fault-path resistance (Ω), added to `arc.r_series`.
    pub series_resistance: f64,
    pub arc: ArcParameters,
}

impl CoupledSource {
    fn voltage(&self, w0: f64, t: f64) -> f64 {
        self.amplitude * (w0 * t + self.phase).sin() + harmonic_sum(&self.harmonics, w0, t)
    }

    fn series(&self) -> f64 {
        self.series_resistance + self.arc.r_series
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FaultSource {
    Injected(InjectedCurrent),
    Coupled(CoupledSource),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum StartState {
    /// u_0b(0) = 0, i_L(0) = 0.
    #[default]
    Rest,
    /// Start on the periodic orbit of the discretized system. Only for
    /// `InjectedCurrent::Harmonics`; needed for a lossless tank, whose free
    /// oscillation never decays.
    PeriodicSteadyState,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationOptions {
    pub start: StartState,
    /// Internal RK4 steps per output sample.
    pub oversample: usize,
}

impl Default for SimulationOptions {
    fn default() -> Self {
        Self { start: StartState::Rest, oversample: OVERSAMPLE }
    }
}

/// Channel name of feeder `index` (zero-based): `i_01`, `i_02`, ...
pub fn feeder_channel(index: usize) -> String {
    format!("i_0{}", index + 1)
}

/// Recommended transient to discard before steady-state analysis:
/// `max(20 cycles, 5 R_Σ C_Σ)`, infinite for a lossless network.
pub fn settling_time(params: &NetworkParameters) -> f64 {
    let g = params.total_conductance();
    let tau = if g > 0.0 { params.c_total() / g } else { f64::INFINITY };
    (20.0 / params.f0).max(5.0 * tau)
}

pub fn simulate_zero_sequence(
    params: &NetworkParameters,
    source: &FaultSource,
    duration: f64,
    fs: f64,
) -> Result<WaveformRecord> {
    simulate_zero_sequence_with(params, source, duration, fs, &SimulationOptions::default())
}

struct Circuit {
    w0: f64,
    c: f64,
    g: f64,
    l: f64,
    coil_g: f64,
    feeder_c: Vec<f64>,
    feeder_g: Vec<f64>,
    faulty: usize,
}

impl Circuit {
    fn new(p: &NetworkParameters) -> Self {
        Self {
            w0: p.omega0(),
            c: p.c_total(),
            g: p.total_conductance(),
            l: p.coil_l,
            coil_g: p.coil_conductance(),
            feeder_c: p.feeders.iter().map(|f| f.c0).collect(),
            feeder_g: p.feeders.iter().map(FeederSpec::conductance).collect(),
            faulty: p.faulty_index,
        }
    }

    fn du(&self, i_f: f64, u: f64, i_l: f64) -> f64 {
        (i_f - i_l - u * self.g) / self.c
    }
}

/// Column-oriented output buffers.
struct Channels {
    i_f: Vec<f64>,
    u: Vec<f64>,
    i_n: Vec<f64>,
    feeders: Vec<Vec<f64>>,
    r_arc: Option<Vec<f64>>,
}

impl Channels {
    fn new(n: usize, feeders: usize, with_arc: bool) -> Self {
        Self {
            i_f: Vec::with_capacity(n),
            u: Vec::with_capacity(n),
            i_n: Vec::with_capacity(n),
            feeders: vec![Vec::with_capacity(n); feeders],
            r_arc: with_arc.then(|| Vec::with_capacity(n)),
        }
    }

    fn push(&mut self, ckt: &Circuit, i_f: f64, u: f64, i_l: f64) {
        let du = ckt.du(i_f, u, i_l);
        self.i_f.push(i_f);
        self.u.push(u);
        self.i_n.push(i_l + u * ckt.coil_g);
        for (idx, ch) in self.feeders.iter_mut().enumerate() {
            let mut i = ckt.feeder_c[idx] * du + u * ckt.feeder_g[idx];
            if idx == ckt.faulty {
                i -= i_f;
            }
            ch.push(i);
        }
    }

    fn into_record(self, fs: f64, t0: f64) -> Result<WaveformRecord> {
        let mut rec = WaveformRecord::new(fs, t0)?
            .with_channel("i_0f", self.i_f)?
            .with_channel("u_0b", self.u)?
            .with_channel("i_0N", self.i_n)?;
        for (idx, ch) in self.feeders.into_iter().enumerate() {
            rec.push_channel(feeder_channel(idx), ch)?;
        }
        if let Some(r) = self.r_arc {
            rec.push_channel("r_arc", r)?;
        }
        Ok(rec)
    }
}

/// Catmull-Rom interpolation of a uniformly sampled signal at fractional
/// index `p`, clamping at the ends.
fn catmull_rom(y: &[f64], p: f64) -> f64 {
    let n = y.len();
    if n == 1 {
        return y[0];
    }
    let p = p.clamp(0.0, (n - 1) as f64);
    let i = (p.floor() as usize).min(n - 2);
    let t = p - i as f64;
    let at = |k: isize| y[k.clamp(0, n as isize - 1) as usize];
    let (p0, p1, p2, p3) = (at(i as isize - 1), at(i as isize), at(i as isize + 1), at(i as isize + 2));
    let t2 = t * t;
    let t3 = t2 * t;
    0.5 * (2.0 * p1 + (p2 - p0) * t + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t2 + (3.0 * p1 - p0 - 3.0 * p2 + p3) * t3)
}

pub fn simulate_zero_sequence_with(
    params: &NetworkParameters,
    source: &FaultSource,
    duration: f64,
    fs: f64,
    opts: &SimulationOptions,
) -> Result<WaveformRecord> {
    params.validate()?;
    ensure_finite("duration", duration)?;
    samples_per_cycle(fs, params.f0)?;
    if duration <= 0.0 {
        return Err(Error::invalid("duration must be > 0"));
    }
    if opts.oversample == 0 {
        return Err(Error::invalid("oversample must be >= 1"));
    }
    check_resonance(params, source)?;
    let n = (duration * fs).round() as usize;
    let h = 1.0 / (fs * opts.oversample as f64);
    let ckt = Circuit::new(params);

    match source {
        FaultSource::Injected(inj) => {
            let (i_f, t0): (Box<dyn Fn(f64) -> f64 + '_>, f64) = match inj {
                InjectedCurrent::Harmonics(comps) => {
                    for c in comps {
                        ensure_finite("harmonic amplitude", c.amplitude)?;
                        ensure_finite("harmonic phase", c.phase)?;
                    }
                    let w0 = ckt.w0;
                    (Box::new(move |t| harmonic_sum(comps, w0, t)), 0.0)
                }
                InjectedCurrent::Sampled { record, channel } => {
                    let y = record.channel(channel)?;
                    if y.iter().any(|v| !v.is_finite()) {
                        return Err(Error::invalid(format!("channel {channel:?} has non-finite samples")));
                    }
                    let span = (record.len().max(1) - 1) as f64 / record.fs();
                    if duration - 1.0 / fs > span + 1e-9 {
                        return Err(Error::Range(format!(
                            "simulation of {duration} s exceeds injected record span {span} s"
                        )));
                    }
                    let rfs = record.fs();
                    (Box::new(move |t| catmull_rom(y, t * rfs)), record.t0())
                }
            };
            let rhs = |t: f64, x: &[f64; 2]| [ckt.du(i_f(t), x[0], x[1]), x[0] / ckt.l];
            let step_cycle = |x0: [f64; 2], forced: bool, t_start: f64, steps: usize| {
                let zero = |_t: f64, x: &[f64; 2]| [ckt.du(0.0, x[0], x[1]), x[0] / ckt.l];
                let mut x = x0;
                for j in 0..steps {
                    let t = t_start + j as f64 * h;
                    x = if forced { rk4_step(&rhs, t, &x, h) } else { rk4_step(&zero, t, &x, h) };
                }
                x
            };
            let mut x = match opts.start {
                StartState::Rest => [0.0, 0.0],
                StartState::PeriodicSteadyState => {
                    if !matches!(inj, InjectedCurrent::Harmonics(_)) {
                        return Err(Error::config("periodic start needs an analytic harmonic injection"));
                    }
                    let steps = samples_per_cycle(fs, params.f0)? * opts.oversample;
                    let xf = step_cycle([0.0, 0.0], true, 0.0, steps);
                    let e1 = step_cycle([1.0, 0.0], false, 0.0, steps);
                    let e2 = step_cycle([0.0, 1.0], false, 0.0, steps);
                    // (I - Φ) x0 = x_forced
                    let (a, b, c, d) = (1.0 - e1[0], -e2[0], -e1[1], 1.0 - e2[1]);
                    let det = a * d - b * c;
                    if det.abs() < 1e-14 {
                        return Err(Error::SingularResonance("no isolated periodic orbit".into()));
                    }
                    [(d * xf[0] - b * xf[1]) / det, (a * xf[1] - c * xf[0]) / det]
                }
            };
            let mut out = Channels::new(n, params.feeders.len(), false);
            for s in 0..n {
                let t = s as f64 / fs;
                out.push(&ckt, i_f(t), x[0], x[1]);
                if s + 1 < n {
                    x = step_cycle(x, true, t, opts.oversample);
                }
            }
            out.into_record(fs, t0)
        }
        FaultSource::Coupled(src) => {
            src.arc.validate()?;
            ensure_finite("source amplitude", src.amplitude)?;
            ensure_finite("source phase", src.phase)?;
            ensure_finite("series resistance", src.series_resistance)?;
            if src.series_resistance < 0.0 {
                return Err(Error::invalid("series resistance must be >= 0"));
            }
            if opts.start != StartState::Rest {
                return Err(Error::config("coupled mode always starts from rest"));
            }
            let arc = &src.arc;
            let fault_current =
                |t: f64, x: &[f64; 3]| (src.voltage(ckt.w0, t) - x[0]) / (src.series() + arc.clamp_log(x[2]).exp());
            let rhs = |t: f64, x: &[f64; 3]| {
                let i = fault_current(t, x);
                [ckt.du(i, x[0], x[1]), x[0] / ckt.l, arc.log_rate(i * i * arc.clamp_log(x[2]).exp())]
            };
            let mut x = [0.0, 0.0, arc.clamp_log(arc.r_arc_init.ln())];
            let mut out = Channels::new(n, params.feeders.len(), true);
            for s in 0..n {
                let t = s as f64 / fs;
                out.push(&ckt, fault_current(t, &x), x[0], x[1]);
                if let Some(r) = out.r_arc.as_mut() {
                    r.push(x[2].exp());
                }
                for j in 0..opts.oversample {
                    x = rk4_step(&rhs, t + j as f64 * h, &x, h);
                    x[2] = arc.clamp_log(x[2]);
                }
            }
            out.into_record(fs, 0.0)
        }
    }
}

/// An undamped tank driven exactly at its natural frequency has no steady state.
fn check_resonance(params: &NetworkParameters, source: &FaultSource) -> Result<()> {
    if params.total_conductance() > 0.0 {
        return Ok(());
    }
    let s = params.tuning();
    let resonant = |k: u32| ((k as f64).powi(2) * s - 1.0).abs() < 1e-9;
    let orders: Vec<u32> = match source {
        FaultSource::Injected(InjectedCurrent::Harmonics(c)) => {
            c.iter().filter(|h| h.amplitude != 0.0).map(|h| h.k).collect()
        }
        FaultSource::Injected(InjectedCurrent::Sampled { .. }) => vec![1],
        FaultSource::Coupled(src) => std::iter::once(1).chain(src.harmonics.iter().map(|h| h.k)).collect(),
    };
    if let Some(k) = orders.into_iter().find(|k| resonant(*k)) {
        return Err(Error::SingularResonance(format!(
            "lossless network is tuned to harmonic {k} of the source (v = {:.3e}, d = 0)",
            params.detuning_index()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const W0: f64 = 2.0 * PI * 50.0;

    fn two_feeder(v: f64, d: f64) -> NetworkParameters {
        NetworkParameters::from_ratios(50.0, 10e-6, &[0.2, 0.8], 0, v, d, 1.0).unwrap()
    }

    /// Fundamental amplitude of the last full cycle, by direct projection.
    fn last_cycle_amp(x: &[f64], k: f64) -> f64 {
        let n = 128;
        let tail = &x[x.len() - n..];
        let (mut re, mut im) = (0.0, 0.0);
        for (s, v) in tail.iter().enumerate() {
            let a = 2.0 * PI * k * s as f64 / n as f64;
            re += v * a.cos();
            im += v * a.sin();
        }
        2.0 / n as f64 * (re * re + im * im).sqrt()
    }

    #[test]
    fn detuning_examples() {
        let mut p = two_feeder(0.0, 0.0);
        assert!(p.detuning_index().abs() < 1e-12);
        p.coil_l = 0.9091 / (W0 * W0 * p.c_total());
        assert!((detuning_index(&p) + 0.1).abs() < 1e-4);
        p.coil_l = 0.95 / (W0 * W0 * 10e-6);
        assert!((p.detuning_index() + 0.0526).abs() < 1e-4);
        // the reciprocal choice over-compensates instead
        p.coil_l = 1.0 / (W0 * W0 * 10e-6 * 0.95);
        assert!((p.detuning_index() - 0.05).abs() < 1e-12);
        p.coil_l = 0.95 / (W0 * W0 * 10e-6);
        assert!(p.in_nominal_band());
        p.coil_l *= 1.2;
        assert!(!p.in_nominal_band());
    }

    #[test]
    fn damping_examples() {
        let mut p = two_feeder(-0.05, 0.0);
        assert_eq!(damping_ratio(&p), 0.0);
        p.coil_r = Some(1.0 / (W0 * 10e-6 * 0.3));
        assert!((p.damping_ratio() - 0.3).abs() < 1e-6);
        for d in [0.0, 0.1, 0.25, 0.5] {
            assert!((two_feeder(-0.05, d).damping_ratio() - d).abs() < 1e-12);
        }
    }

    #[test]
    fn ratio_construction_and_retune() {
        let p = NetworkParameters::from_ratios(50.0, 12e-6, &[13.3, 10.8, 10.8, 24.7], 2, -0.07, 0.3, 0.4).unwrap();
        assert_relative_eq!(p.shares().iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(p.detuning_index(), -0.07, epsilon = 1e-12);
        assert_relative_eq!(p.damping_ratio(), 0.3, epsilon = 1e-12);
        assert_relative_eq!(p.coil_resistive_share(), 0.4, epsilon = 1e-12);
        let q = p.retune(-0.02, 0.1).unwrap();
        assert_relative_eq!(q.detuning_index(), -0.02, epsilon = 1e-12);
        assert_relative_eq!(q.damping_ratio(), 0.1, epsilon = 1e-12);
        assert_relative_eq!(q.coil_resistive_share(), 0.4, epsilon = 1e-12);
        for (a, b) in p.feeder_resistive_shares().iter().zip(q.feeder_resistive_shares()) {
            assert_relative_eq!(*a, b, epsilon = 1e-12);
        }
        let lossless = p.retune(-0.05, 0.0).unwrap();
        assert_eq!(lossless.total_conductance(), 0.0);
        assert_eq!(lossless.retune(-0.05, 0.2).unwrap().coil_resistive_share(), 1.0);
    }

    #[test]
    fn validation() {
        let mut p = two_feeder(-0.05, 0.1);
        p.feeders.pop();
        assert!(matches!(p.validate(), Err(Error::Config(_))));
        let mut p = two_feeder(-0.05, 0.1);
        p.faulty_index = 5;
        assert!(p.validate().is_err());
        let mut p = two_feeder(-0.05, 0.1);
        p.feeders[0].c0 = 0.0;
        assert!(p.validate().is_err());
    }

    #[test]
    fn zero_input_zero_output() {
        let p = two_feeder(-0.05, 0.2);
        let src = FaultSource::Injected(InjectedCurrent::Harmonics(vec![]));
        let rec = simulate_zero_sequence(&p, &src, 0.1, 6400.0).unwrap();
        for (_, ch) in rec.channels() {
            assert!(ch.iter().all(|x| *x == 0.0));
        }
        let names: Vec<_> = rec.channel_names().to_vec();
        assert_eq!(names, ["i_0f", "u_0b", "i_0N", "i_01", "i_02"]);
    }

    #[test]
    fn lossless_fundamental_ratio() {
        // |i_0n| / |i_0f| = (c_n - v) / (-v) = 3 at v = -0.1, c_n = 0.2
        let p = two_feeder(-0.1, 0.0);
        let src = FaultSource::Injected(InjectedCurrent::Harmonics(vec![HarmonicComponent {
            k: 1,
            amplitude: 10.0,
            phase: 0.3,
        }]));
        let opts = SimulationOptions { start: StartState::PeriodicSteadyState, ..Default::default() };
        let rec = simulate_zero_sequence_with(&p, &src, 0.2, 6400.0, &opts).unwrap();
        let ratio = last_cycle_amp(rec.channel("i_01").unwrap(), 1.0) / 10.0;
        assert!((ratio - 3.0).abs() < 0.03, "ratio {ratio}");
        // periodic start: first and last cycles agree
        let u = rec.channel("u_0b").unwrap();
        let peak = u.iter().cloned().fold(0.0, f64::max);
        for s in 0..128 {
            assert!((u[s] - u[u.len() - 128 + s]).abs() < 1e-6 * peak);
        }
    }

    #[test]
    fn resonance_is_rejected() {
        let p = two_feeder(0.0, 0.0);
        let src = FaultSource::Injected(InjectedCurrent::Harmonics(vec![HarmonicComponent {
            k: 1,
            amplitude: 1.0,
            phase: 0.0,
        }]));
        assert!(matches!(simulate_zero_sequence(&p, &src, 0.1, 6400.0), Err(Error::SingularResonance(_))));
        let damped = two_feeder(0.0, 0.1);
        assert!(simulate_zero_sequence(&damped, &src, 0.1, 6400.0).is_ok());
        assert!(matches!(simulate_zero_sequence(&damped, &src, 0.1, 6310.0), Err(Error::Config(_))));
    }

    #[test]
    fn sampled_injection_matches_analytic() {
        let p = two_feeder(-0.05, 0.3);
        let comps = vec![
            HarmonicComponent { k: 1, amplitude: 5.0, phase: 0.1 },
            HarmonicComponent { k: 3, amplitude: 1.0, phase: 2.0 },
        ];
        let analytic =
            simulate_zero_sequence(&p, &FaultSource::Injected(InjectedCurrent::Harmonics(comps.clone())), 0.2, 6400.0)
                .unwrap();
        let sampled_rec = WaveformRecord::new(6400.0, 0.0)
            .unwrap()
            .with_channel("i", (0..1281).map(|s| harmonic_sum(&comps, W0, s as f64 / 6400.0)).collect())
            .unwrap();
        let sampled = simulate_zero_sequence(
            &p,
            &FaultSource::Injected(InjectedCurrent::Sampled { record: sampled_rec, channel: "i".into() }),
            0.2,
            6400.0,
        )
        .unwrap();
        let a = analytic.channel("i_01").unwrap();
        let b = sampled.channel("i_01").unwrap();
        let peak = a.iter().map(|x| x.abs()).fold(0.0, f64::max);
        let err = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        assert!(err < 2e-3 * peak, "err {err} peak {peak}");
    }

    #[test]
    fn coupled_mode_runs_and_conserves_current() {
        let p = two_feeder(-0.05, 0.1);
        let src = FaultSource::Coupled(CoupledSource {
            amplitude: 8165.0,
            phase: 0.0,
            harmonics: vec![],
            series_resistance: 500.0,
            arc: ArcParameters::new(500.0, 1.0, 0.0).unwrap(),
        });
        let rec = simulate_zero_sequence(&p, &src, 0.2, 6400.0).unwrap();
        assert!(rec.has_channel("r_arc"));
        let names = ["i_0N", "i_01", "i_02"];
        let chans: Vec<_> = names.iter().map(|n| rec.channel(n).unwrap()).collect();
        let peak = chans.iter().flat_map(|c| c.iter()).map(|x| x.abs()).fold(0.0, f64::max);
        for s in 0..rec.len() {
            let sum: f64 = chans.iter().map(|c| c[s]).sum();
            assert!(sum.abs() <= 1e-9 * peak);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn kcl_holds(
            v in -0.3f64..0.2,
            d in 0.0f64..0.6,
            coil in 0.0f64..1.0,
            a1 in 0.1f64..50.0,
            a3 in 0.0f64..10.0,
            ph in -3.0f64..3.0,
        ) {
            let p = NetworkParameters::from_ratios(50.0, 8e-6, &[0.3, 0.2, 0.5], 1, v, d, coil).unwrap();
            prop_assume!(d > 0.0 || (p.tuning() - 1.0).abs() > 1e-3);
            let src = FaultSource::Injected(InjectedCurrent::Harmonics(vec![
                HarmonicComponent { k: 1, amplitude: a1, phase: ph },
                HarmonicComponent { k: 3, amplitude: a3, phase: -ph },
            ]));
            let rec = simulate_zero_sequence(&p, &src, 0.06, 6400.0).unwrap();
            let names = ["i_0N", "i_01", "i_02", "i_03"];
            let chans: Vec<_> = names.iter().map(|n| rec.channel(n).unwrap()).collect();
            let peak = chans.iter().flat_map(|c| c.iter()).map(|x| x.abs()).fold(0.0, f64::max);
            for s in 0..rec.len() {
                let sum: f64 = chans.iter().map(|c| c[s]).sum();
                prop_assert!(sum.abs() <= 1e-9 * peak.max(1e-12));
            }
        }
    }
}
