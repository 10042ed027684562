//! Closed-form harmonic transfer from the fault-point current i_0f to the
//! zero-sequence current of every feeder and of the substation (coil) branch.
//!
//! With `v_H = 1 - (1 - v)/k²` and `d_H = d/k`, the k-th harmonic ratios are
//!
//! ```text
//! healthy i:   (r_R0i d_H + j c_i)          / (d_H + j v_H)
//! faulty n:    (d_H (r_R0n - 1) + j(c_n - v_H)) / (d_H + j v_H)
//! substation:  (r_R d_H - j (1 - v_H))      / (d_H + j v_H)
//! ```
//!
//! Each rotation is evaluated as a single arctangent of `num * conj(den)`,
//! adding π when its real part is negative, then wrapped to (-180°, 180°].

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angle::{rad_to_deg, wrap_deg};
use crate::error::{ensure_finite, Error, Result};
use crate::network::{feeder_channel, NetworkParameters};
use crate::phasor::{DecompositionResult, PhasorSet};
use crate::waveform::{samples_per_cycle, WaveformRecord};

/// `(1 - k²) / (1 - k² s)` with `s = ω0² L C_0Σ`.
pub fn harmonic_gain_factor(k: u32, s: f64) -> Result<f64> {
    ensure_finite("s", s)?;
    if k < 1 {
        return Err(Error::invalid("harmonic order must be >= 1"));
    }
    if s <= 0.0 {
        return Err(Error::invalid(format!("tuning s must be > 0, got {s}")));
    }
    let k2 = (k as f64).powi(2);
    let den = 1.0 - k2 * s;
    if den == 0.0 {
        return Err(Error::Singularity(format!("k^2 s = 1 at k = {k}")));
    }
    Ok((1.0 - k2) / den)
}

/// Midpoint of the gain-factor interval over `k >= 2`, used as a single
/// constant by the simplified lossless prediction.
pub fn simplified_gain_factor(s: f64) -> f64 {
    (1.0 / s + 3.0 / (4.0 * s - 1.0)) / 2.0
}

/// `v_H,k = 1 - (1 - v)/k²`. Also the largest faulty-feeder share `c_n` for
/// which the faulty feeder keeps the fault current's superposition sign.
pub fn superposition_threshold(v: f64, k: u32) -> f64 {
    1.0 - (1.0 - v) / (k as f64).powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Faulty,
    /// Zero-based feeder index.
    Healthy(usize),
    Substation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarmonicTransfer {
    pub role: Role,
    pub k: u32,
    pub gain: f64,
    /// Counterclockwise rotation in degrees, (-180, 180].
    pub rotation_deg: f64,
}

impl HarmonicTransfer {
    pub fn as_complex(&self) -> Complex64 {
        Complex64::from_polar(self.gain, self.rotation_deg.to_radians())
    }
}

/// Angle of `re + j im` built as arctan(im/re) plus a π branch for re < 0.
fn branch_angle(re: f64, im: f64) -> f64 {
    if re > 0.0 {
        (im / re).atan()
    } else if re < 0.0 {
        PI + (im / re).atan()
    } else if im > 0.0 {
        PI / 2.0
    } else if im < 0.0 {
        -PI / 2.0
    } else {
        0.0
    }
}

/// Damped closed form for one role and harmonic order.
///
/// `c` is the feeder's capacitive share (ignored for the substation),
/// `r_feeder` its resistive share `R_Σ/R_0i`, `r_coil` is `R_Σ/R`.
pub fn damped_transfer(
    v: f64,
    d: f64,
    k: u32,
    role: Role,
    c: f64,
    r_feeder: f64,
    r_coil: f64,
) -> Result<HarmonicTransfer> {
    for (name, x) in [("v", v), ("d", d), ("c", c), ("r_feeder", r_feeder), ("r_coil", r_coil)] {
        ensure_finite(name, x)?;
    }
    if k < 1 {
        return Err(Error::invalid("harmonic order must be >= 1"));
    }
    if d < 0.0 {
        return Err(Error::invalid(format!("damping ratio must be >= 0, got {d}")));
    }
    let vh = superposition_threshold(v, k);
    let dh = d / k as f64;
    if v * v + d * d == 0.0 || vh * vh + dh * dh == 0.0 {
        return Err(Error::Singularity(format!("undamped resonance at k = {k} (v = {v}, d = {d})")));
    }
    let num = match role {
        Role::Healthy(_) => Complex64::new(r_feeder * dh, c),
        Role::Faulty => Complex64::new(dh * (r_feeder - 1.0), c - vh),
        Role::Substation => Complex64::new(r_coil * dh, -(1.0 - vh)),
    };
    let den = Complex64::new(dh, vh);
    let z = num * den.conj();
    Ok(HarmonicTransfer {
        role,
        k,
        gain: num.norm() / den.norm(),
        rotation_deg: wrap_deg(rad_to_deg(branch_angle(z.re, z.im))),
    })
}

/// Positive constants of the lossless rewrite, for one order `k`.
///
/// `p3` and `p4` are per feeder (entry `faulty_index` is unused by the
/// healthy-feeder relations).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LosslessCoefficients {
    pub k: u32,
    pub p1: f64,
    pub p2: f64,
    pub p3: Vec<f64>,
    pub p4: Vec<f64>,
    pub p5: f64,
    pub p6: f64,
    pub harmonic_gain_factor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LosslessTransfer {
    pub coefficients: LosslessCoefficients,
    /// Faulty, healthy feeders in index order, then substation.
    pub transfers: Vec<HarmonicTransfer>,
}

fn signed_transfer(role: Role, k: u32, x: f64) -> HarmonicTransfer {
    HarmonicTransfer { role, k, gain: x.abs(), rotation_deg: if x < 0.0 { 180.0 } else { 0.0 } }
}

/// Lossless transfer from the detuning index and capacitive shares only.
/// With `simplified`, every `k >= 2` uses [`simplified_gain_factor`].
pub fn lossless_transfer_ratios(
    v: f64,
    shares: &[f64],
    faulty_index: usize,
    k: u32,
    simplified: bool,
) -> Result<LosslessTransfer> {
    ensure_finite("v", v)?;
    if v == 0.0 {
        return Err(Error::Singularity("v = 0: lossless network at resonance".into()));
    }
    if v >= 1.0 {
        return Err(Error::invalid("v must be < 1"));
    }
    if faulty_index >= shares.len() {
        return Err(Error::invalid("faulty index out of range"));
    }
    let s = 1.0 / (1.0 - v);
    let g = if k == 1 {
        0.0
    } else if simplified {
        simplified_gain_factor(s)
    } else {
        harmonic_gain_factor(k, s)?
    };
    let c_n = shares[faulty_index];
    let coefficients = LosslessCoefficients {
        k,
        p1: -v + c_n,
        p2: c_n * g,
        p3: shares.to_vec(),
        p4: shares.iter().map(|c| c * g).collect(),
        p5: 1.0 - v,
        p6: g,
        harmonic_gain_factor: g,
    };
    let co = &coefficients;
    let scale = 1.0 / -v;
    let mut transfers = Vec::with_capacity(shares.len() + 1);
    // fundamental: i_sinu coefficient; harmonics: that minus the Δ coefficient
    let faulty = if k == 1 { -co.p1 } else { -(co.p1 - co.p2) };
    transfers.push(signed_transfer(Role::Faulty, k, scale * faulty));
    for i in (0..shares.len()).filter(|i| *i != faulty_index) {
        let x = if k == 1 { -co.p3[i] } else { -(co.p3[i] - co.p4[i]) };
        transfers.push(signed_transfer(Role::Healthy(i), k, scale * x));
    }
    let sub = if k == 1 { co.p5 } else { co.p5 - co.p6 };
    transfers.push(signed_transfer(Role::Substation, k, scale * sub));
    Ok(LosslessTransfer { coefficients, transfers })
}

/// Lossless transfer of a network; resistive paths are ignored.
pub fn lossless_transfer(params: &NetworkParameters, k: u32) -> Result<LosslessTransfer> {
    params.validate()?;
    lossless_transfer_ratios(params.detuning_index(), &params.shares(), params.faulty_index, k, false)
}

/// Damped transfer of every role of a network at order `k`, in the same
/// order as [`lossless_transfer`].
pub fn network_transfers(params: &NetworkParameters, k: u32) -> Result<Vec<HarmonicTransfer>> {
    params.validate()?;
    let (v, d) = (params.detuning_index(), params.damping_ratio());
    let c = params.shares();
    let r = params.feeder_resistive_shares();
    let r_coil = params.coil_resistive_share();
    let n = params.faulty_index;
    let mut out = vec![damped_transfer(v, d, k, Role::Faulty, c[n], r[n], r_coil)?];
    for i in (0..c.len()).filter(|i| *i != n) {
        out.push(damped_transfer(v, d, k, Role::Healthy(i), c[i], r[i], r_coil)?);
    }
    out.push(damped_transfer(v, d, k, Role::Substation, 0.0, 0.0, r_coil)?);
    Ok(out)
}

/// Output channel for a role.
pub fn role_channel(role: Role, faulty_index: usize) -> String {
    match role {
        Role::Faulty => feeder_channel(faulty_index),
        Role::Healthy(i) => feeder_channel(i),
        Role::Substation => "i_0N".to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PredictionMode {
    /// Damped closed forms with the network's own resistive shares.
    Damped,
    /// Lossless closed forms (resistances ignored), optionally with the
    /// constant gain-factor simplification.
    Lossless { simplified: bool },
}

/// Theoretical feeder and substation currents from a decomposed i_0f.
///
/// Every harmonic of every cycle block is scaled and rotated by the role's
/// transfer and summed. Channels: `i_01..i_0n`, `i_0N`.
pub fn predict_feeder_waveforms(
    fault_dec: &DecompositionResult,
    params: &NetworkParameters,
    mode: PredictionMode,
) -> Result<WaveformRecord> {
    params.validate()?;
    let rec = &fault_dec.sinusoidal;
    let n = samples_per_cycle(rec.fs(), params.f0)?;
    let m = fault_dec.blocks.first().map_or(0, PhasorSet::max_order);
    if m == 0 {
        return Err(Error::invalid("decomposition holds no phasor blocks"));
    }
    if (fault_dec.phasors.f0 - params.f0).abs() > 1e-9 * params.f0 {
        return Err(Error::config("decomposition and network use different f0"));
    }
    // per order: role transfers
    let mut table = Vec::with_capacity(m as usize);
    for k in 1..=m {
        let t = match mode {
            PredictionMode::Damped => network_transfers(params, k)?,
            PredictionMode::Lossless { simplified } => {
                lossless_transfer_ratios(params.detuning_index(), &params.shares(), params.faulty_index, k, simplified)?
                    .transfers
            }
        };
        table.push(t);
    }
    let roles: Vec<Role> = table[0].iter().map(|t| t.role).collect();
    let w0 = 2.0 * PI * params.f0;
    let mut channels = vec![Vec::with_capacity(rec.len()); roles.len()];
    for s in 0..rec.len() {
        let t = rec.time(s);
        let block = fault_dec.block_for_sample(s, n);
        for (r, ch) in channels.iter_mut().enumerate() {
            let mut y = 0.0;
            for (k, p) in block.harmonics.iter().enumerate() {
                let tr = &table[k][r];
                let arg = w0 * (k + 1) as f64 * (t - block.window_start) + (p.phase_deg + tr.rotation_deg).to_radians();
                y += tr.gain * p.amplitude * arg.sin();
            }
            ch.push(y);
        }
    }
    // emit in feeder index order, substation last
    let mut order: Vec<usize> = (0..roles.len()).collect();
    let key = |role: Role| match role {
        Role::Faulty => params.faulty_index,
        Role::Healthy(i) => i,
        Role::Substation => usize::MAX,
    };
    order.sort_by_key(|i| key(roles[*i]));
    let mut out = WaveformRecord::new(rec.fs(), rec.t0())?;
    for i in order {
        out.push_channel(role_channel(roles[i], params.faulty_index), std::mem::take(&mut channels[i]))?;
    }
    Ok(out)
}

/// Transfers measured from a simulated or recorded window: every role's
/// phasor divided by the fault-current phasor at the same order.
///
/// Orders where the fault current has no content are skipped.
pub fn measure_transfers(
    record: &WaveformRecord,
    params: &NetworkParameters,
    window_start: f64,
    m: u32,
) -> Result<Vec<HarmonicTransfer>> {
    use crate::phasor::window_phasors;
    let f = window_phasors(record, "i_0f", window_start, params.f0, m)?;
    let peak = f.harmonics.iter().map(|p| p.amplitude).fold(0.0, f64::max);
    let mut roles = vec![Role::Faulty];
    roles.extend((0..params.feeders.len()).filter(|i| *i != params.faulty_index).map(Role::Healthy));
    roles.push(Role::Substation);
    let mut out = Vec::new();
    for role in roles {
        let p = window_phasors(record, &role_channel(role, params.faulty_index), window_start, params.f0, m)?;
        for k in 1..=m {
            let fk = f.get(k).expect("order present");
            if fk.amplitude <= 1e-9 * peak {
                continue;
            }
            let z = p.get(k).expect("order present").to_complex() / fk.to_complex();
            out.push(HarmonicTransfer { role, k, gain: z.norm(), rotation_deg: wrap_deg(rad_to_deg(z.arg())) });
        }
    }
    Ok(out)
}

/// Network ratios recovered from measured fundamental phasors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkEstimate {
    pub v: f64,
    pub d: f64,
    /// `R_Σ / R`.
    pub r_coil: f64,
    /// `R_Σ / R_0i` per feeder; the faulty entry is inferred (see
    /// [`estimate_network_parameters`]).
    pub r_feeders: Vec<f64>,
    /// Capacitive shares; the faulty entry is the configured `c_n`.
    pub shares: Vec<f64>,
}

/// Least-squares projections `(resistive, reactive)` of a current stream on
/// the bus-voltage axis, per volt: `I ≈ (g + j b) U` in phasor form.
fn project(u: &[PhasorSet], i: &[PhasorSet]) -> (f64, f64) {
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    for (pu, pi) in u.iter().zip(i) {
        let uu = pu.fundamental().to_complex();
        num += pi.fundamental().to_complex() * uu.conj();
        den += uu.norm_sqr();
    }
    let y = num / den;
    (y.re, y.im)
}

/// Estimate `(v, d, r_R, r_R0i)` from synchronized fundamental phasor streams.
///
/// Capacitive and resistive parts of each current are its projections on the
/// axes at `φ_0b + 90°` and `φ_0b`. The faulty feeder's own capacitance share
/// is the input `c_n`; its leakage is assumed proportional to its capacitance
/// with the pooled healthy-feeder ratio.
pub fn estimate_network_parameters(
    u_0b: &[PhasorSet],
    feeders: &[&[PhasorSet]],
    substation: &[PhasorSet],
    faulty_index: usize,
    c_n: f64,
    min_voltage: f64,
) -> Result<NetworkEstimate> {
    ensure_finite("c_n", c_n)?;
    if !(c_n > 0.0 && c_n < 1.0) {
        return Err(Error::invalid(format!("c_n must be in (0, 1), got {c_n}")));
    }
    if feeders.len() < 2 {
        return Err(Error::config("need at least 2 feeders"));
    }
    if faulty_index >= feeders.len() {
        return Err(Error::invalid("faulty index out of range"));
    }
    if u_0b.is_empty() {
        return Err(Error::CannotEstimate("no voltage windows".into()));
    }
    for s in feeders.iter().chain(std::iter::once(&substation)) {
        if s.len() != u_0b.len() || s.iter().zip(u_0b).any(|(a, b)| (a.window_start - b.window_start).abs() > 1e-9) {
            return Err(Error::Synchronization("phasor streams do not share window boundaries".into()));
        }
    }
    let weak = u_0b.iter().map(|p| p.fundamental().amplitude).fold(f64::INFINITY, f64::min);
    if !(weak > min_voltage) {
        return Err(Error::CannotEstimate(format!("bus voltage {weak:.3e} V is below the {min_voltage:.3e} V gate")));
    }
    let mut g_healthy = 0.0;
    let mut b_healthy = 0.0;
    let mut per_feeder = vec![(0.0, 0.0); feeders.len()];
    for (i, s) in feeders.iter().enumerate() {
        if i == faulty_index {
            continue;
        }
        per_feeder[i] = project(u_0b, s);
        g_healthy += per_feeder[i].0;
        b_healthy += per_feeder[i].1;
    }
    let (g_coil, b_coil) = project(u_0b, substation);
    // b_healthy = ω C_Σ (1 - c_n); the coil branch is inductive: b_coil = -1/(ω L)
    if !(b_healthy > 0.0) || !(b_coil < 0.0) {
        return Err(Error::CannotEstimate("reactive projections have unexpected signs".into()));
    }
    let wc = b_healthy / (1.0 - c_n);
    let s = wc / -b_coil;
    let v = 1.0 - 1.0 / s;
    let g_faulty = g_healthy / b_healthy * c_n * wc;
    let g_total = g_healthy + g_coil + g_faulty;
    let mut shares: Vec<f64> = per_feeder.iter().map(|(_, b)| b / wc).collect();
    shares[faulty_index] = c_n;
    let tiny = 1e-9 * wc;
    if g_total <= tiny {
        return Ok(NetworkEstimate { v, d: 0.0, r_coil: 1.0, r_feeders: vec![0.0; feeders.len()], shares });
    }
    let mut r_feeders: Vec<f64> = per_feeder.iter().map(|(g, _)| g / g_total).collect();
    r_feeders[faulty_index] = g_faulty / g_total;
    Ok(NetworkEstimate { v, d: g_total / wc, r_coil: g_coil / g_total, r_feeders, shares })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gain_factor_values() {
        assert_eq!(harmonic_gain_factor(1, 0.95).unwrap(), 0.0);
        assert!((harmonic_gain_factor(2, 0.9091).unwrap() - 1.1379).abs() < 1e-3);
        assert!((harmonic_gain_factor(10_000, 0.9091).unwrap() - 1.100).abs() < 1e-3);
        assert!(matches!(harmonic_gain_factor(2, 0.25), Err(Error::Singularity(_))));
    }

    #[test]
    fn threshold_value() {
        assert!((superposition_threshold(-0.1, 2) - 0.725).abs() < 1e-15);
    }

    #[test]
    fn lossless_examples() {
        let t = lossless_transfer_ratios(-0.1, &[0.2, 0.8], 0, 1, false).unwrap();
        let f = t.transfers[0];
        assert_eq!(f.role, Role::Faulty);
        assert!((f.gain - 3.0).abs() < 1e-12);
        assert_eq!(f.rotation_deg, 180.0);
        assert!(matches!(lossless_transfer_ratios(0.0, &[0.2, 0.8], 0, 1, false), Err(Error::Singularity(_))));
    }

    #[test]
    fn healthy_rotation_example() {
        let t = damped_transfer(-0.1, 0.5, 3, Role::Healthy(0), 0.2, 0.0, 1.0).unwrap();
        let expect = (1.5f64 / 7.9).atan().to_degrees();
        assert!((t.rotation_deg - expect).abs() < 1e-9);
        assert!((t.rotation_deg - 10.75).abs() < 0.05);
    }

    #[test]
    fn coefficients_positive_in_band() {
        for v in [-0.1, -0.07, -0.02, -0.001] {
            for k in 2..=11 {
                let t = lossless_transfer_ratios(v, &[0.3, 0.3, 0.4], 2, k, false).unwrap();
                let c = &t.coefficients;
                assert!(c.p1 > 0.0 && c.p2 > 0.0 && c.p5 > 0.0 && c.p6 > 0.0);
                assert!(c.p3.iter().chain(&c.p4).all(|x| *x > 0.0));
                let s = 1.0 / (1.0 - v);
                assert!(c.harmonic_gain_factor > 1.0 / s && c.harmonic_gain_factor <= 3.0 / (4.0 * s - 1.0) + 1e-12);
            }
        }
    }

    #[test]
    fn singular_inputs() {
        assert!(matches!(damped_transfer(0.0, 0.0, 1, Role::Faulty, 0.2, 0.0, 1.0), Err(Error::Singularity(_))));
        assert!(damped_transfer(0.0, 0.1, 1, Role::Faulty, 0.2, 0.0, 1.0).is_ok());
    }

    /// Independent route: solve the bus node with complex admittances.
    fn admittance_oracle(v: f64, d: f64, k: u32, c: &[f64], rf: &[f64], r_coil: f64, faulty: usize) -> Vec<Complex64> {
        // units: ω0 = 1, C_Σ = 1, so L = 1/(1 - v), 1/R_Σ = d
        let kf = k as f64;
        let l = 1.0 / (1.0 - v);
        let y_coil = Complex64::new(r_coil * d, -1.0 / (kf * l));
        let y_feed: Vec<Complex64> = c.iter().zip(rf).map(|(ci, ri)| Complex64::new(ri * d, kf * ci)).collect();
        let y_tot = y_coil + y_feed.iter().sum::<Complex64>();
        let u = Complex64::new(1.0, 0.0) / y_tot;
        let mut out = vec![];
        for (i, y) in y_feed.iter().enumerate() {
            let mut cur = y * u;
            if i == faulty {
                cur -= 1.0;
            }
            out.push(cur);
        }
        out.push(y_coil * u);
        out
    }

    proptest! {
        #[test]
        fn closed_form_matches_admittance_oracle(
            v in -0.3f64..0.2,
            d in 0.0f64..0.8,
            k in 1u32..=11,
            c1 in 0.05f64..1.0,
            c2 in 0.05f64..1.0,
            c3 in 0.05f64..1.0,
            split in proptest::collection::vec(0.0f64..1.0, 4),
        ) {
            prop_assume!(v.abs() > 1e-4 || d > 1e-4);
            let vh = superposition_threshold(v, k);
            prop_assume!(vh.abs() > 1e-4 || d > 1e-4);
            let sum = c1 + c2 + c3;
            let c = [c1 / sum, c2 / sum, c3 / sum];
            let tot: f64 = split.iter().sum::<f64>().max(1e-9);
            let r_coil = split[3] / tot;
            let rf = [split[0] / tot, split[1] / tot, split[2] / tot];
            let oracle = admittance_oracle(v, d, k, &c, &rf, r_coil, 1);
            let roles = [Role::Healthy(0), Role::Faulty, Role::Healthy(2)];
            for (i, role) in roles.iter().enumerate() {
                let t = damped_transfer(v, d, k, *role, c[i], rf[i], r_coil).unwrap();
                prop_assert!((t.as_complex() - oracle[i]).norm() <= 1e-9 * oracle[i].norm().max(1.0));
            }
            let t = damped_transfer(v, d, k, Role::Substation, 0.0, 0.0, r_coil).unwrap();
            prop_assert!((t.as_complex() - oracle[3]).norm() <= 1e-9 * oracle[3].norm().max(1.0));
        }

        #[test]
        fn lossless_antiphase(v in -0.1f64..-1e-3, k in 2u32..=11, cn in 0.01f64..0.7) {
            prop_assume!(cn < superposition_threshold(v, k));
            let t = lossless_transfer_ratios(v, &[cn, 1.0 - cn], 0, k, false).unwrap();
            let diff = wrap_deg(t.transfers[0].rotation_deg - t.transfers[1].rotation_deg);
            prop_assert_eq!(diff.abs(), 180.0);
        }

        #[test]
        fn rotation_is_continuous(v in -0.12f64..0.05, d in 0.0f64..0.6, k in 1u32..=5, c in 0.05f64..0.9, r in 0.0f64..1.0) {
            let eps = 1e-7;
            prop_assume!(v.abs() > 1e-3 || d > 1e-3);
            prop_assume!(superposition_threshold(v, k).abs() > 1e-3 || d > 1e-3);
            for role in [Role::Faulty, Role::Healthy(0), Role::Substation] {
                let a = damped_transfer(v, d, k, role, c, r, 1.0 - r).unwrap();
                let b = damped_transfer(v + eps, d + eps, k, role, c, r, 1.0 - r).unwrap();
                // the gain may pass through zero, where the angle jumps legitimately
                if a.gain > 1e-3 {
                    prop_assert!(wrap_deg(a.rotation_deg - b.rotation_deg).abs() < 1e-2);
                }
            }
        }
    }
}
