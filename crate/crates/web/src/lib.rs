//! Browser bindings for the interactive page in `www/`.
//!
//! Each exported call has a plain Rust twin returning `hif_core::Result`, so
//! the numerics are tested natively and the wasm layer only converts errors.

use hif_core::arc::{distortion_metrics, simulate_arc_circuit, ArcParameters, Sinusoid};
use hif_core::identify::{
    default_d_grid, default_v_grid, effective_area_map, identify, IdentifyConfig, MapMethod, MapOptions,
};
use hif_core::network::{feeder_channel, simulate_zero_sequence, CoupledSource, FaultSource, NetworkParameters};
use hif_core::phasor::sliding_phasor_stream;
use wasm_bindgen::prelude::*;

pub const F0: f64 = 50.0;
pub const FS: f64 = 6400.0;
const N: usize = 128;

/// Feeder capacitance shares of the demo network (sum 59.6).
pub const DEMO_SHARES: [f64; 4] = [13.3, 10.8, 10.8, 24.7];
const DEMO_C_TOTAL: f64 = 12e-6;
const DEMO_COIL_SHARE: f64 = 0.6;
/// 10 kV line-to-line, as a phase peak.
const DEMO_SOURCE: f64 = 8164.965809277261;
const DEMO_SERIES: f64 = 1000.0;
const DEMO_DURATION: f64 = 1.0;
const SETTLE_CYCLES: usize = 20;

#[wasm_bindgen]
pub struct ArcTrace {
    current: Vec<f64>,
    resistance: Vec<f64>,
    offsets_ms: Vec<f64>,
}

#[wasm_bindgen]
impl ArcTrace {
    pub fn current(&self) -> Vec<f64> {
        self.current.clone()
    }

    pub fn resistance(&self) -> Vec<f64> {
        self.resistance.clone()
    }

    /// Lag of the resistance peak behind each half-cycle's current zero.
    pub fn offsets_ms(&self) -> Vec<f64> {
        self.offsets_ms.clone()
    }

    pub fn fs(&self) -> f64 {
        FS
    }
}

/// Arc current and resistance over cycles 5-9 of a 20 kV source driving the
/// arc through `r_series`.
pub fn arc_trace_data(p_loss: f64, tau: f64, r_series: f64) -> hif_core::Result<ArcTrace> {
    let source = Sinusoid { amplitude: 20_000.0, frequency: F0, phase: 0.0 };
    let params = ArcParameters::new(p_loss, tau, r_series)?;
    let rec = simulate_arc_circuit(&source, &params, 9.0 / F0, FS)?.tail_from(5 * N);
    let offsets_ms = distortion_metrics(&rec, F0)?.iter().filter_map(|m| m.offset).map(|o| o * 1e3).collect();
    Ok(ArcTrace { current: rec.channel("i")?.to_vec(), resistance: rec.channel("r_arc")?.to_vec(), offsets_ms })
}

#[wasm_bindgen]
pub fn arc_trace(p_loss: f64, tau: f64, r_series: f64) -> Result<ArcTrace, JsError> {
    arc_trace_data(p_loss, tau, r_series).map_err(js)
}

#[wasm_bindgen]
pub struct AreaGrid {
    v: Vec<f64>,
    d: Vec<f64>,
    values: Vec<f64>,
    pass: Vec<u8>,
    pass_fraction: f64,
}

#[wasm_bindgen]
impl AreaGrid {
    pub fn v(&self) -> Vec<f64> {
        self.v.clone()
    }

    pub fn d(&self) -> Vec<f64> {
        self.d.clone()
    }

    /// Row-major over `v` then `d`; NaN at undamped resonance.
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }

    pub fn pass(&self) -> Vec<u8> {
        self.pass.clone()
    }

    pub fn pass_fraction(&self) -> f64 {
        self.pass_fraction
    }
}

pub fn area_grid_data(c_n: f64, classic: bool, thr: f64) -> hif_core::Result<AreaGrid> {
    let (v, d) = (default_v_grid(), default_d_grid());
    let method = if classic { MapMethod::Classic } else { MapMethod::Proposed };
    let opts = MapOptions { thr_deg: thr, ..Default::default() };
    let map = effective_area_map(c_n, &v, &d, method, &opts)?;
    let values = map.cells.iter().map(|c| if c.singular { f64::NAN } else { c.value }).collect();
    let pass = map.cells.iter().map(|c| u8::from(c.pass)).collect();
    Ok(AreaGrid { v, d, values, pass, pass_fraction: map.pass_fraction() })
}

#[wasm_bindgen]
pub fn area_grid(c_n: f64, classic: bool, thr: f64) -> Result<AreaGrid, JsError> {
    area_grid_data(c_n, classic, thr).map_err(js)
}

#[wasm_bindgen]
pub struct FeederDemo {
    verdict: u32,
    decided_at: f64,
    gated_windows: u32,
    windows: u32,
    phase3_deg: Vec<f64>,
    amp3: Vec<f64>,
    fault_current: Vec<f64>,
}

#[wasm_bindgen]
impl FeederDemo {
    /// One-based feeder number, 0 when undetermined.
    pub fn verdict(&self) -> u32 {
        self.verdict
    }

    /// Seconds after the settling span; NaN when undetermined.
    pub fn decided_at(&self) -> f64 {
        self.decided_at
    }

    pub fn gated_windows(&self) -> u32 {
        self.gated_windows
    }

    pub fn windows(&self) -> u32 {
        self.windows
    }

    /// 3rd-harmonic phase of each feeder in the last window.
    pub fn phase3_deg(&self) -> Vec<f64> {
        self.phase3_deg.clone()
    }

    pub fn amp3(&self) -> Vec<f64> {
        self.amp3.clone()
    }

    /// Last two cycles of `i_0f`.
    pub fn fault_current(&self) -> Vec<f64> {
        self.fault_current.clone()
    }
}

/// Arc fault on feeder `faulty` (one-based) of the 4-feeder demo network.
pub fn feeder_demo_data(
    faulty: usize,
    v: f64,
    d: f64,
    p_loss: f64,
    tau: f64,
    thr: f64,
) -> hif_core::Result<FeederDemo> {
    let params =
        NetworkParameters::from_ratios(F0, DEMO_C_TOTAL, &DEMO_SHARES, faulty.wrapping_sub(1), v, d, DEMO_COIL_SHARE)?;
    let source = FaultSource::Coupled(CoupledSource {
        amplitude: DEMO_SOURCE,
        phase: 0.0,
        harmonics: Vec::new(),
        series_resistance: DEMO_SERIES,
        arc: ArcParameters::new(p_loss, tau, 0.0)?,
    });
    let rec = simulate_zero_sequence(&params, &source, DEMO_DURATION, FS)?.tail_from(SETTLE_CYCLES * N);
    let streams = (0..DEMO_SHARES.len())
        .map(|i| sliding_phasor_stream(&rec, &feeder_channel(i), F0, 3))
        .collect::<hif_core::Result<Vec<_>>>()?;
    let refs: Vec<&[_]> = streams.iter().map(Vec::as_slice).collect();
    let cfg = IdentifyConfig { thr_deg: thr, ..Default::default() };
    let result = identify(&refs, &cfg)?;
    let gated = result
        .per_window
        .iter()
        .filter(|w| w.valid.iter().enumerate().all(|(a, row)| row.iter().enumerate().all(|(b, &ok)| a == b || ok)))
        .count();
    let last: Vec<_> = streams.iter().map(|s| s.last().and_then(|p| p.get(3))).collect();
    let i_0f = rec.channel("i_0f")?;
    Ok(FeederDemo {
        verdict: result.aggregated_verdict.map_or(0, |i| i as u32 + 1),
        decided_at: result.decided_at.map_or(f64::NAN, |t| t - rec.t0()),
        gated_windows: gated as u32,
        windows: result.per_window.len() as u32,
        phase3_deg: last.iter().map(|p| p.map_or(f64::NAN, |p| p.phase_deg)).collect(),
        amp3: last.iter().map(|p| p.map_or(f64::NAN, |p| p.amplitude)).collect(),
        fault_current: i_0f[i_0f.len().saturating_sub(2 * N)..].to_vec(),
    })
}

#[wasm_bindgen]
pub fn feeder_demo(faulty: usize, v: f64, d: f64, p_loss: f64, tau: f64, thr: f64) -> Result<FeederDemo, JsError> {
    feeder_demo_data(faulty, v, d, p_loss, tau, thr).map_err(js)
}

fn js(e: hif_core::Error) -> JsError {
    JsError::new(&e.to_string())
}
