//! One-cycle harmonic phasors, sliding phasor streams and the
//! sinusoidal/distortional split.
//!
//! Phasors use the sine reference: `A sin(k ω0 (t - t_w) + φ)` has phasor
//! `(A, φ)`, where `t_w` is the window start.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle::{deg_to_rad, rad_to_deg, wrap_deg};
use crate::error::{Error, Result};
use crate::waveform::{samples_per_cycle, WaveformRecord};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Phasor {
    /// Peak amplitude.
    pub amplitude: f64,
    /// Degrees in (-180, 180].
    pub phase_deg: f64,
}

impl Phasor {
    pub fn from_complex(z: Complex64) -> Self {
        Self { amplitude: z.norm(), phase_deg: wrap_deg(rad_to_deg(z.arg())) }
    }

    /// `A e^{jφ}`.
    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.amplitude, deg_to_rad(self.phase_deg))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhasorSet {
    pub window_start: f64,
    pub f0: f64,
    /// Entry `k - 1` holds harmonic order `k`.
    pub harmonics: Vec<Phasor>,
}

impl PhasorSet {
    pub fn max_order(&self) -> u32 {
        self.harmonics.len() as u32
    }

    pub fn get(&self, k: u32) -> Option<Phasor> {
        if k == 0 {
            return None;
        }
        self.harmonics.get(k as usize - 1).copied()
    }

    pub fn fundamental(&self) -> Phasor {
        self.harmonics[0]
    }

    /// Phase of harmonic `k` referred to `t = 0` instead of the window start.
    pub fn absolute_phase_deg(&self, k: u32) -> Option<f64> {
        self.get(k).map(|p| wrap_deg(p.phase_deg - 360.0 * k as f64 * self.f0 * self.window_start))
    }

    /// Value of harmonic `k` at time `t` (absolute).
    pub fn harmonic_at(&self, k: u32, t: f64) -> f64 {
        match self.get(k) {
            Some(p) => {
                let arg = 2.0 * PI * self.f0 * k as f64 * (t - self.window_start) + deg_to_rad(p.phase_deg);
                p.amplitude * arg.sin()
            }
            None => 0.0,
        }
    }
}

/// Highest order resolvable with `n` samples per cycle.
pub fn nyquist_order(n: usize) -> u32 {
    (n / 2).saturating_sub(1) as u32
}

/// DFT of one full cycle `samples` at orders `1..=m`.
pub fn cycle_phasors(samples: &[f64], m: u32) -> Result<Vec<Phasor>> {
    let n = samples.len();
    if m < 1 || m > nyquist_order(n) {
        return Err(Error::config(format!(
            "harmonic order {m} outside 1..={} for {n} samples per cycle",
            nyquist_order(n)
        )));
    }
    let scale = 2.0 / n as f64;
    Ok((1..=m)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (s, x) in samples.iter().enumerate() {
                // reduce k*s mod n before the trig call to keep the angle small
                let a = 2.0 * PI * ((k as usize * s) % n) as f64 / n as f64;
                acc += Complex64::new(x * a.cos(), -x * a.sin());
            }
            // A sin(θ + φ) maps to A e^{j(φ - 90°)}
            Phasor::from_complex(acc * scale * Complex64::new(0.0, 1.0))
        })
        .collect())
}

fn window_index(record: &WaveformRecord, window_start: f64) -> Result<isize> {
    let pos = (window_start - record.t0()) * record.fs();
    let idx = pos.round();
    if (pos - idx).abs() > 1e-6 {
        return Err(Error::Synchronization(format!("window start {window_start} s is not on the sample grid")));
    }
    Ok(idx as isize)
}

/// Phasors of one fundamental cycle starting at `window_start` (s).
pub fn window_phasors(record: &WaveformRecord, channel: &str, window_start: f64, f0: f64, m: u32) -> Result<PhasorSet> {
    let x = record.channel(channel)?;
    let n = samples_per_cycle(record.fs(), f0)?;
    let start = window_index(record, window_start)?;
    if start < 0 || start as usize + n > x.len() {
        return Err(Error::Range(format!(
            "window [{window_start}, {}) s lies outside the record",
            window_start + 1.0 / f0
        )));
    }
    let start = start as usize;
    Ok(PhasorSet { window_start: record.time(start), f0, harmonics: cycle_phasors(&x[start..start + n], m)? })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub sinusoidal: WaveformRecord,
    pub distortional: WaveformRecord,
    /// Phasors of the last full cycle (steady state).
    pub phasors: PhasorSet,
    /// Phasors of every consecutive full cycle block, in time order.
    pub blocks: Vec<PhasorSet>,
}

impl DecompositionResult {
    pub fn channel(&self) -> &str {
        &self.sinusoidal.channel_names()[0]
    }

    /// Block whose span contains sample `s`; trailing partial-cycle samples
    /// use the last block.
    pub(crate) fn block_for_sample(&self, s: usize, n: usize) -> &PhasorSet {
        &self.blocks[(s / n).min(self.blocks.len() - 1)]
    }
}

/// Split `channel` into its fundamental and the residual.
///
/// The fundamental is fitted per cycle block, so slow amplitude changes are
/// followed; samples after the last full cycle continue the last block's fit.
pub fn decompose_waveform(record: &WaveformRecord, channel: &str, f0: f64, m: u32) -> Result<DecompositionResult> {
    let x = record.channel(channel)?;
    let n = samples_per_cycle(record.fs(), f0)?;
    if x.len() < n {
        return Err(Error::Range(format!("record holds {} samples, one cycle needs {n}", x.len())));
    }
    let blocks = (0..x.len() / n)
        .map(|b| {
            Ok(PhasorSet { window_start: record.time(b * n), f0, harmonics: cycle_phasors(&x[b * n..(b + 1) * n], m)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sinus = Vec::with_capacity(x.len());
    let mut dist = Vec::with_capacity(x.len());
    for (s, v) in x.iter().enumerate() {
        let block = &blocks[(s / n).min(blocks.len() - 1)];
        let f = block.harmonic_at(1, record.time(s));
        sinus.push(f);
        dist.push(v - f);
    }
    let phasors = blocks.last().cloned().expect("at least one block");
    Ok(DecompositionResult {
        sinusoidal: WaveformRecord::new(record.fs(), record.t0())?.with_channel(channel, sinus)?,
        distortional: WaveformRecord::new(record.fs(), record.t0())?.with_channel(channel, dist)?,
        phasors,
        blocks,
    })
}

/// `sinusoidal + p * distortional`.
pub fn recompose_scaled(dec: &DecompositionResult, p: f64) -> Result<WaveformRecord> {
    let name = dec.channel().to_string();
    let s = dec.sinusoidal.channel(&name)?;
    let d = dec.distortional.channel(&name)?;
    let y = s.iter().zip(d).map(|(a, b)| a + p * b).collect();
    WaveformRecord::new(dec.sinusoidal.fs(), dec.sinusoidal.t0())?.with_channel(name, y)
}

/// One-cycle windows advanced by half a cycle.
pub fn sliding_phasor_stream(record: &WaveformRecord, channel: &str, f0: f64, m: u32) -> Result<Vec<PhasorSet>> {
    let x = record.channel(channel)?;
    let n = samples_per_cycle(record.fs(), f0)?;
    if n % 2 != 0 {
        return Err(Error::config(format!("{n} samples per cycle is odd; half-cycle steps need fs/f0 even")));
    }
    let step = n / 2;
    let mut out = Vec::new();
    let mut start = 0;
    while start + n <= x.len() {
        out.push(PhasorSet {
            window_start: record.time(start),
            f0,
            harmonics: cycle_phasors(&x[start..start + n], m)?,
        });
        start += step;
    }
    Ok(out)
}

/// Streams for several channels of one record, on identical window boundaries.
pub fn sliding_phasor_streams(
    record: &WaveformRecord,
    channels: &[&str],
    f0: f64,
    m: u32,
) -> Result<Vec<Vec<PhasorSet>>> {
    channels.iter().map(|c| sliding_phasor_stream(record, c, f0, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const FS: f64 = 6400.0;
    const W0: f64 = 2.0 * PI * 50.0;

    fn record(len: usize, f: impl Fn(f64) -> f64) -> WaveformRecord {
        WaveformRecord::new(FS, 0.0).unwrap().with_channel("x", (0..len).map(|s| f(s as f64 / FS)).collect()).unwrap()
    }

    #[test]
    fn single_tone() {
        let r = record(128, |t| 5.0 * (W0 * t).sin());
        let p = window_phasors(&r, "x", 0.0, 50.0, 11).unwrap();
        assert_relative_eq!(p.fundamental().amplitude, 5.0, epsilon = 1e-12);
        assert!(p.fundamental().phase_deg.abs() < 1e-10);
        for k in 2..=11 {
            assert!(p.get(k).unwrap().amplitude < 1e-12);
        }
    }

    #[test]
    fn third_harmonic_phase() {
        let r = record(128, |t| 5.0 * (W0 * t).sin() + (3.0 * W0 * t + 120f64.to_radians()).sin());
        let p = window_phasors(&r, "x", 0.0, 50.0, 11).unwrap();
        let h3 = p.get(3).unwrap();
        assert!((h3.amplitude - 1.0).abs() < 1e-9);
        assert!((h3.phase_deg - 120.0).abs() < 1e-9);
    }

    #[test]
    fn window_errors() {
        let r = record(200, |t| (W0 * t).sin());
        assert!(matches!(window_phasors(&r, "x", 80.0 / FS, 50.0, 11), Err(Error::Range(_))));
        assert!(matches!(window_phasors(&r, "x", -1.0 / FS, 50.0, 11), Err(Error::Range(_))));
        assert!(matches!(window_phasors(&r, "x", 0.0, 50.0, 64), Err(Error::Config(_))));
        assert!(window_phasors(&r, "x", 0.0, 50.0, 63).is_ok());
        assert!(matches!(window_phasors(&r, "x", 0.3 / FS, 50.0, 11), Err(Error::Synchronization(_))));
        assert!(window_phasors(&r, "y", 0.0, 50.0, 11).is_err());
    }

    #[test]
    fn decomposition_of_known_mix() {
        let mix = |t: f64| 0.7 * (3.0 * W0 * t + 0.4).sin() + 0.2 * (5.0 * W0 * t - 1.0).sin();
        let r = record(128 * 6 + 17, |t| 10.0 * (W0 * t + 0.2).sin() + mix(t));
        let dec = decompose_waveform(&r, "x", 50.0, 11).unwrap();
        let d = dec.distortional.channel("x").unwrap();
        for (s, v) in d.iter().enumerate() {
            assert!((v - mix(s as f64 / FS)).abs() < 1e-9);
        }
        let s = dec.sinusoidal.channel("x").unwrap();
        for ((a, b), v) in s.iter().zip(d).zip(r.channel("x").unwrap()) {
            assert!((a + b - v).abs() <= 4.0 * f64::EPSILON * v.abs().max(1.0));
        }
        assert_eq!(dec.blocks.len(), 6);
    }

    #[test]
    fn pure_fundamental_has_no_residual() {
        let r = record(1280, |t| 3.0 * (W0 * t - 0.5).sin());
        let dec = decompose_waveform(&r, "x", 50.0, 11).unwrap();
        let rms = |v: &[f64]| (v.iter().map(|x| x * x).sum::<f64>() / v.len() as f64).sqrt();
        assert!(rms(dec.distortional.channel("x").unwrap()) < 1e-9 * rms(r.channel("x").unwrap()));
    }

    #[test]
    fn scaled_recomposition() {
        let r = record(640, |t| 4.0 * (W0 * t).sin() + (3.0 * W0 * t + 0.3).sin());
        let dec = decompose_waveform(&r, "x", 50.0, 11).unwrap();
        let same = recompose_scaled(&dec, 1.0).unwrap();
        for (a, b) in same.channel("x").unwrap().iter().zip(r.channel("x").unwrap()) {
            assert!((a - b).abs() < 1e-12);
        }
        let fund = recompose_scaled(&dec, 0.0).unwrap();
        let p0 = window_phasors(&fund, "x", 0.0, 50.0, 11).unwrap();
        assert!(p0.get(3).unwrap().amplitude < 1e-12);
        let plus = window_phasors(&same, "x", 0.0, 50.0, 11).unwrap();
        let minus = window_phasors(&recompose_scaled(&dec, -1.0).unwrap(), "x", 0.0, 50.0, 11).unwrap();
        let diff = wrap_deg(plus.get(3).unwrap().phase_deg - minus.get(3).unwrap().phase_deg);
        assert!((diff.abs() - 180.0).abs() < 1e-9);
    }

    #[test]
    fn stream_counts_and_stationarity() {
        let r = record(6400, |t| 2.0 * (W0 * t + 0.1).sin() + 0.3 * (3.0 * W0 * t - 2.0).sin());
        let s = sliding_phasor_stream(&r, "x", 50.0, 11).unwrap();
        assert_eq!(s.len(), 99);
        assert!((s.last().unwrap().window_start - 0.98).abs() < 1e-12);
        for w in &s {
            for k in 1..=11 {
                let (a, b) = (w.get(k).unwrap(), s[0].get(k).unwrap());
                assert!((a.amplitude - b.amplitude).abs() < 1e-9);
                if b.amplitude > 1e-6 {
                    // half-cycle steps move the window reference by k * 180°
                    assert!(wrap_deg(w.absolute_phase_deg(k).unwrap() - b.phase_deg).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn odd_cycle_length_rejected() {
        let r = WaveformRecord::new(6350.0, 0.0).unwrap().with_channel("x", vec![0.0; 1000]).unwrap();
        assert!(matches!(sliding_phasor_stream(&r, "x", 50.0, 11), Err(Error::Config(_))));
    }

    #[test]
    fn step_in_third_harmonic_settles_quickly() {
        let t_star = 0.2;
        let r = record(6400, |t| {
            let ph = if t < t_star { 0.0 } else { 100f64.to_radians() };
            (W0 * t).sin() + 0.2 * (3.0 * W0 * t + ph).sin()
        });
        let s = sliding_phasor_stream(&r, "x", 50.0, 11).unwrap();
        let first_after = s.iter().position(|w| w.window_start >= t_star).unwrap();
        // one window may straddle t*; after that every estimate is exact
        for w in &s[first_after..] {
            assert!(wrap_deg(w.absolute_phase_deg(3).unwrap() - 100.0).abs() < 1e-9);
        }
        assert!(first_after <= s.iter().position(|w| w.window_start + 0.02 > t_star).unwrap() + 2);
    }

    proptest! {
        #[test]
        fn delay_shifts_phase(k in 1u32..=11, delay in 0usize..128, ph in -3.0f64..3.0) {
            let r = record(256, |t| (k as f64 * W0 * t + ph).sin());
            let a = window_phasors(&r, "x", 0.0, 50.0, 11).unwrap();
            let b = window_phasors(&r, "x", delay as f64 / FS, 50.0, 11).unwrap();
            // a later window start sees the same tone advanced by k ω0 Δt
            let shift = wrap_deg(b.get(k).unwrap().phase_deg - a.get(k).unwrap().phase_deg);
            let expect = wrap_deg(k as f64 * 360.0 * delay as f64 / 128.0);
            prop_assert!(wrap_deg(shift - expect).abs() < 1e-8);
        }

        #[test]
        fn signal_delay_rotates_phase(k in 1u32..=11, delay in 0usize..500, ph in -3.0f64..3.0) {
            let dt = delay as f64 / FS / 7.0;
            let a = window_phasors(&record(128, |t| (k as f64 * W0 * t + ph).sin()), "x", 0.0, 50.0, 11).unwrap();
            let b = window_phasors(&record(128, |t| (k as f64 * W0 * (t - dt) + ph).sin()), "x", 0.0, 50.0, 11).unwrap();
            let shift = wrap_deg(b.get(k).unwrap().phase_deg - a.get(k).unwrap().phase_deg);
            let expect = -(k as f64) * 360.0 * 50.0 * dt;
            prop_assert!(wrap_deg(shift - expect).abs() < 1e-8);
        }

        #[test]
        fn parseval_bound(seed in proptest::collection::vec(-1.0f64..1.0, 128)) {
            let r = WaveformRecord::new(FS, 0.0).unwrap().with_channel("x", seed.clone()).unwrap();
            let p = window_phasors(&r, "x", 0.0, 50.0, 63).unwrap();
            let power: f64 = seed.iter().map(|x| x * x).sum::<f64>() / 128.0;
            let harm: f64 = p.harmonics.iter().map(|h| h.amplitude * h.amplitude / 2.0).sum();
            prop_assert!(harm <= power * (1.0 + 1e-12));
        }
    }
}
