//! End-to-end run of one scenario and its output bundle.

use std::fmt::Write as _;
use std::path::Path;

use hif_core::identify::{classic_criterion, classic_delta_phi, identify, IdentificationResult};
use hif_core::network::{feeder_channel, simulate_zero_sequence_with, NetworkParameters};
use hif_core::phasor::{decompose_waveform, sliding_phasor_stream, PhasorSet};
use hif_core::theory::{estimate_network_parameters, predict_feeder_waveforms, NetworkEstimate, PredictionMode};
use hif_core::waveform::samples_per_cycle;
use hif_core::WaveformRecord;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::csvio::{create_file, export_waveforms, fmt_f64, write_indicators, write_phasors};
use crate::error::{Result, WorkbenchError};
use crate::scenario::Scenario;

/// Minimum u_0b fundamental (V) for a window to enter parameter estimation.
const ESTIMATE_MIN_VOLTAGE: f64 = 1e-3;

/// Classic Δφ(I1-I3) of every feeder in one window.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicWindow {
    pub window_start: f64,
    pub delta_phi: Vec<f64>,
    /// Unique feeder meeting the classic fault criterion, if any.
    pub verdict: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct RunBundle {
    pub scenario: Scenario,
    pub network: NetworkParameters,
    /// Everything simulated, noise included.
    pub record: WaveformRecord,
    /// Start of the analysed span (s).
    pub analysis_start: f64,
    /// Sliding phasor streams of the analysed span, per channel.
    pub phasors: Vec<(String, Vec<PhasorSet>)>,
    pub feeder_names: Vec<String>,
    pub identification: IdentificationResult,
    pub classic: Vec<ClassicWindow>,
    /// Predicted feeder and substation currents over the last two analysed cycles.
    pub prediction: WaveformRecord,
    pub estimate: std::result::Result<NetworkEstimate, String>,
}

impl RunBundle {
    pub fn stream(&self, channel: &str) -> Option<&[PhasorSet]> {
        self.phasors.iter().find(|(n, _)| n == channel).map(|(_, s)| s.as_slice())
    }

    /// Feeder streams in feeder order.
    pub fn feeder_streams(&self) -> Vec<&[PhasorSet]> {
        (0..self.network.feeders.len()).map(|i| self.stream(&feeder_channel(i)).expect("feeder stream")).collect()
    }

    pub fn verdict_text(&self) -> String {
        let id = &self.identification;
        let name = |i: Option<usize>| i.map_or("undetermined".to_string(), |i| self.feeder_names[i].clone());
        let valid = id.per_window.iter().filter(|w| w.verdict.is_some()).count();
        let classic_hits = self.classic.iter().filter(|c| c.verdict == Some(self.network.faulty_index)).count();
        let mut s = String::new();
        let _ = writeln!(s, "verdict = {}", name(id.aggregated_verdict));
        let _ = writeln!(s, "configured_faulty = {}", self.feeder_names[self.network.faulty_index]);
        if let Some(t) = id.decided_at {
            let _ = writeln!(s, "decided_at_s = {t}");
        }
        let _ = writeln!(s, "thr_deg = {}", id.thr_deg);
        let _ = writeln!(s, "windows = {}", id.per_window.len());
        let _ = writeln!(s, "windows_with_candidate = {valid}");
        let _ = writeln!(s, "classic_windows_correct = {classic_hits}");
        match &self.estimate {
            Ok(e) => {
                let _ = writeln!(s, "estimated_v = {}", e.v);
                let _ = writeln!(s, "estimated_d = {}", e.d);
                let _ = writeln!(s, "estimated_r_coil = {}", e.r_coil);
            }
            Err(msg) => {
                let _ = writeln!(s, "estimate_error = {msg:?}");
            }
        }
        s
    }

    /// Writes `waveforms.csv`, `phasors.csv`, `indicators.csv`, `verdict.txt`,
    /// `prediction.csv` and `manifest` into `dir` (created if needed).
    pub fn write(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir).map_err(|e| WorkbenchError::io(dir, e))?;
        export_waveforms(&self.record, dir.join("waveforms.csv"))?;
        export_waveforms(&self.prediction, dir.join("prediction.csv"))?;
        write_phasors(&self.phasors, create_file(&dir.join("phasors.csv"))?)?;
        write_indicators(&self.identification, &self.feeder_names, create_file(&dir.join("indicators.csv"))?)?;
        let verdict = dir.join("verdict.txt");
        std::fs::write(&verdict, self.verdict_text()).map_err(|e| WorkbenchError::io(verdict, e))?;
        let manifest = dir.join("manifest");
        std::fs::write(&manifest, manifest_text(&self.scenario, self.analysis_start))
            .map_err(|e| WorkbenchError::io(manifest, e))
    }
}

/// Scenario hash, crate versions and the fully resolved scenario.
pub fn manifest_text(scenario: &Scenario, analysis_start: f64) -> String {
    format!(
        "# run manifest\nscenario_sha256 = \"{}\"\nhif_core = \"{}\"\nhif_workbench = \"{}\"\nanalysis_start_s = {}\n\n# resolved scenario\n{}",
        scenario.hash(),
        hif_core::VERSION,
        env!("CARGO_PKG_VERSION"),
        fmt_f64(analysis_start),
        scenario.to_toml_string()
    )
}

/// Adds zero-mean Gaussian noise to every channel except `r_arc`, in channel
/// order, from a ChaCha8 stream seeded with `seed`.
pub fn add_noise(record: &mut WaveformRecord, std: f64, seed: u64) -> Result<()> {
    if std == 0.0 {
        return Ok(());
    }
    let normal = Normal::new(0.0, std).map_err(|e| WorkbenchError::Validation(format!("noise: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    record.map_channels(|name, x| {
        if name != "r_arc" {
            for v in x.iter_mut() {
                *v += normal.sample(&mut rng);
            }
        }
    });
    Ok(())
}

/// Simulated record (noise included) of a scenario.
pub fn simulate(scenario: &Scenario) -> Result<WaveformRecord> {
    scenario.validate()?;
    let ctx = |what: &str| format!("{what} (scenario {})", &scenario.hash()[..12]);
    let params = scenario.network_parameters().map_err(|e| WorkbenchError::core(ctx("network"), e))?;
    let source = scenario.fault_source().map_err(|e| WorkbenchError::core(ctx("source"), e))?;
    let mut rec = simulate_zero_sequence_with(
        &params,
        &source,
        scenario.sim.duration,
        scenario.sim.fs,
        &scenario.simulation_options(),
    )
    .map_err(|e| WorkbenchError::core(ctx("simulation"), e))?;
    if let Some(std) = scenario.sim.noise_std {
        add_noise(&mut rec, std, scenario.seed.expect("validated: seed present with noise"))?;
    }
    Ok(rec)
}

pub fn classic_windows(feeders: &[&[PhasorSet]], thr_deg: f64) -> Result<Vec<ClassicWindow>> {
    let windows = feeders.first().map_or(0, |s| s.len());
    (0..windows)
        .map(|w| {
            let delta_phi = feeders
                .iter()
                .map(|s| classic_delta_phi(&s[w]))
                .collect::<hif_core::Result<Vec<f64>>>()
                .map_err(|e| WorkbenchError::core("classic method", e))?;
            let hits: Vec<usize> = (0..delta_phi.len()).filter(|&i| classic_criterion(delta_phi[i], thr_deg)).collect();
            let verdict = if hits.len() == 1 { Some(hits[0]) } else { None };
            Ok(ClassicWindow { window_start: feeders[0][w].window_start, delta_phi, verdict })
        })
        .collect()
}

/// Simulate, analyse, identify, predict and estimate.
pub fn run(scenario: &Scenario) -> Result<RunBundle> {
    let record = simulate(scenario)?;
    analyze_record(scenario, record)
}

/// Everything after the simulation, on an existing record with the simulator's
/// channel names.
pub fn analyze_record(scenario: &Scenario, record: WaveformRecord) -> Result<RunBundle> {
    let ctx = |what: &str| format!("{what} (scenario {})", &scenario.hash()[..12]);
    let network = scenario.network_parameters().map_err(|e| WorkbenchError::core(ctx("network"), e))?;
    let f0 = scenario.analysis.f0;
    let n = samples_per_cycle(record.fs(), f0).map_err(|e| WorkbenchError::core(ctx("analysis"), e))?;
    let skip = scenario.sim.settle_cycles * n;
    if record.len() < skip + 2 * n {
        return Err(WorkbenchError::Validation(format!(
            "record has {} samples; settling plus two cycles needs {}",
            record.len(),
            skip + 2 * n
        )));
    }
    let span = record.tail_from(skip);
    let analysis_start = span.t0();

    let mut channels: Vec<String> = ["i_0f", "u_0b", "i_0N"].iter().map(|s| s.to_string()).collect();
    channels.extend((0..network.feeders.len()).map(feeder_channel));
    let m = scenario.analysis.m;
    let mut phasors = Vec::with_capacity(channels.len());
    for c in channels {
        let s = sliding_phasor_stream(&span, &c, f0, m).map_err(|e| WorkbenchError::core(ctx("phasors"), e))?;
        phasors.push((c, s));
    }
    let find = |c: &str| phasors.iter().find(|(n, _)| n == c).map(|(_, s)| s.as_slice()).expect("stream");
    let feeder_streams: Vec<&[PhasorSet]> = (0..network.feeders.len()).map(|i| find(&feeder_channel(i))).collect();
    let identification =
        identify(&feeder_streams, &scenario.identify_config()).map_err(|e| WorkbenchError::core(ctx("identify"), e))?;
    let classic = classic_windows(&feeder_streams, scenario.analysis.thr)?;

    let last = span.tail_from(span.len() - 2 * n);
    let dec = decompose_waveform(&last, "i_0f", f0, m).map_err(|e| WorkbenchError::core(ctx("decomposition"), e))?;
    let prediction = predict_feeder_waveforms(&dec, &network, PredictionMode::Damped)
        .map_err(|e| WorkbenchError::core(ctx("prediction"), e))?;
    let estimate = estimate_network_parameters(
        find("u_0b"),
        &feeder_streams,
        find("i_0N"),
        network.faulty_index,
        network.faulty_share(),
        ESTIMATE_MIN_VOLTAGE,
    )
    .map_err(|e| e.to_string());
    let feeder_names = network.feeders.iter().map(|f| f.name.clone()).collect();

    Ok(RunBundle {
        scenario: scenario.clone(),
        network,
        record,
        analysis_start,
        phasors,
        feeder_names,
        identification,
        classic,
        prediction,
        estimate,
    })
}
