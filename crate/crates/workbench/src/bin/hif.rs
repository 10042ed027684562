use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hif_core::identify::{
    default_d_grid, default_v_grid, effective_area_map, identify, AmplitudeGate, IdentifyConfig, MapMethod, MapOptions,
};
use hif_core::network::feeder_channel;
use hif_core::phasor::{decompose_waveform, sliding_phasor_stream};
use hif_core::theory::{predict_feeder_waveforms, PredictionMode};
use hif_core::WaveformRecord;
use hif_workbench::csvio::{create_file, export_waveforms, fmt_f64, import_waveforms, write_indicators, write_phasors};
use hif_workbench::run::manifest_text;
use hif_workbench::{load_scenario, run, sweep, Metric, Result, Scenario, SweepAxis, SweepSpec, WorkbenchError};

/// High-impedance fault workbench: simulate resonant-grounded networks and
/// identify the faulty feeder from 3rd-harmonic zero-sequence currents.
#[derive(Parser)]
#[command(name = "hif", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Scenario file (TOML); built-in defaults when absent.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Seed for randomized elements (measurement noise).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Indicator threshold in degrees [default: 40, or the scenario's].
    #[arg(long, global = true)]
    thr: Option<f64>,
    /// Fundamental frequency in Hz [default: 50, or the scenario's].
    #[arg(long, global = true)]
    f0: Option<f64>,
    /// Sampling rate in Hz [default: 6400, or the scenario's].
    #[arg(long, global = true)]
    fs: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a scenario and write the full run bundle.
    Simulate,
    /// Sliding phasors and sinusoidal/distortional split of a waveform CSV.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Channels to analyse [default: all].
        #[arg(long, value_delimiter = ',')]
        channels: Vec<String>,
    },
    /// Feeder and substation currents predicted from the fault current `i_0f`.
    Predict {
        #[arg(long)]
        input: PathBuf,
        /// Use the lossless closed forms instead of the damped ones.
        #[arg(long)]
        lossless: bool,
    },
    /// Faulty-feeder identification from feeder currents in a waveform CSV.
    Identify {
        #[arg(long)]
        input: PathBuf,
        /// Feeder channels in order [default: i_01, i_02, ... as present].
        #[arg(long, value_delimiter = ',')]
        feeders: Vec<String>,
    },
    /// Effective-area map over the (v, d) grid.
    Map {
        /// Capacitance share of the faulty feeder.
        #[arg(long, default_value_t = 0.3)]
        c_n: f64,
        #[arg(long, value_enum, default_value_t = Method::Proposed)]
        method: Method,
    },
    /// Grid sweep over scenario parameters.
    Sweep {
        /// `path=v1,v2,...`, repeatable; e.g. `network.v=-0.1,-0.05`.
        #[arg(long = "axis", required = true)]
        axes: Vec<String>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Metrics to report [default: all].
        #[arg(long, value_delimiter = ',')]
        metrics: Vec<String>,
        /// Also write every cell's run bundle under `cell_NNNN/`.
        #[arg(long)]
        keep_bundles: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Proposed,
    Classic,
}

fn scenario(g: &Global) -> Result<Scenario> {
    let mut s = match &g.scenario {
        Some(p) => load_scenario(p)?,
        None => Scenario::default(),
    };
    if let Some(seed) = g.seed {
        s.seed = Some(seed);
    }
    if let Some(thr) = g.thr {
        s.analysis.thr = thr;
    }
    if let Some(f0) = g.f0 {
        s.network.f0 = f0;
        s.analysis.f0 = f0;
    }
    if let Some(fs) = g.fs {
        s.sim.fs = fs;
    }
    s.validate()?;
    Ok(s)
}

fn out_dir(g: &Global) -> Result<&Path> {
    std::fs::create_dir_all(&g.out).map_err(|e| WorkbenchError::io(&g.out, e))?;
    Ok(&g.out)
}

fn core(ctx: &str) -> impl Fn(hif_core::Error) -> WorkbenchError + '_ {
    move |e| WorkbenchError::core(ctx, e)
}

fn input(path: &Path, f0: f64) -> Result<WaveformRecord> {
    let rec = import_waveforms(path)?;
    hif_core::waveform::samples_per_cycle(rec.fs(), f0).map_err(core("input"))?;
    Ok(rec)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Simulate => {
            let s = scenario(g)?;
            let bundle = run(&s)?;
            let dir = out_dir(g)?;
            bundle.write(dir)?;
            print!("{}", bundle.verdict_text());
            println!("bundle: {}", dir.display());
        }
        Command::Analyze { input: path, channels } => {
            let s = scenario(g)?;
            let f0 = s.analysis.f0;
            let rec = input(path, f0)?;
            let names: Vec<String> = if channels.is_empty() {
                rec.channel_names().iter().filter(|n| *n != "r_arc").cloned().collect()
            } else {
                channels.clone()
            };
            let dir = out_dir(g)?;
            let mut streams = Vec::new();
            let mut split = WaveformRecord::new(rec.fs(), rec.t0()).map_err(core("analyze"))?;
            for n in &names {
                streams.push((n.clone(), sliding_phasor_stream(&rec, n, f0, s.analysis.m).map_err(core("analyze"))?));
                let dec = decompose_waveform(&rec, n, f0, s.analysis.m).map_err(core("analyze"))?;
                let len = dec.sinusoidal.len();
                let sinu = dec.sinusoidal.channel(n).map_err(core("analyze"))?.to_vec();
                let dist = dec.distortional.channel(n).map_err(core("analyze"))?.to_vec();
                if split.is_empty() && split.channel_names().is_empty() {
                    split = WaveformRecord::new(rec.fs(), dec.sinusoidal.t0()).map_err(core("analyze"))?;
                }
                debug_assert_eq!(len, sinu.len());
                split.push_channel(format!("{n}_sinu"), sinu).map_err(core("analyze"))?;
                split.push_channel(format!("{n}_dist"), dist).map_err(core("analyze"))?;
            }
            write_phasors(&streams, create_file(&dir.join("phasors.csv"))?)?;
            export_waveforms(&split, dir.join("decomposition.csv"))?;
            println!("{} channels, {} windows -> {}", names.len(), streams[0].1.len(), dir.display());
        }
        Command::Predict { input: path, lossless } => {
            let s = scenario(g)?;
            let rec = input(path, s.analysis.f0)?;
            let params = s.network_parameters().map_err(core("network"))?;
            let dec = decompose_waveform(&rec, "i_0f", s.analysis.f0, s.analysis.m).map_err(core("predict"))?;
            let mode = if *lossless { PredictionMode::Lossless { simplified: false } } else { PredictionMode::Damped };
            let pred = predict_feeder_waveforms(&dec, &params, mode).map_err(core("predict"))?;
            let dir = out_dir(g)?;
            export_waveforms(&pred, dir.join("prediction.csv"))?;
            println!("prediction: {}", dir.join("prediction.csv").display());
        }
        Command::Identify { input: path, feeders } => {
            let s = scenario(g)?;
            let f0 = s.analysis.f0;
            let rec = input(path, f0)?;
            let names: Vec<String> = if feeders.is_empty() {
                (0..).map(feeder_channel).take_while(|c| rec.has_channel(c)).collect()
            } else {
                feeders.clone()
            };
            let streams = names
                .iter()
                .map(|n| sliding_phasor_stream(&rec, n, f0, s.analysis.m.max(3)))
                .collect::<hif_core::Result<Vec<_>>>()
                .map_err(core("identify"))?;
            let refs: Vec<&[_]> = streams.iter().map(Vec::as_slice).collect();
            let cfg = IdentifyConfig {
                gate: AmplitudeGate { relative: s.analysis.gate_relative, floor: s.analysis.gate_floor },
                ..s.identify_config()
            };
            let result = identify(&refs, &cfg).map_err(core("identify"))?;
            let dir = out_dir(g)?;
            write_indicators(&result, &names, create_file(&dir.join("indicators.csv"))?)?;
            let verdict = result.aggregated_verdict.map_or("undetermined".to_string(), |i| names[i].clone());
            let mut text =
                format!("verdict = {verdict}\nthr_deg = {}\nwindows = {}\n", cfg.thr_deg, result.per_window.len());
            if let Some(t) = result.decided_at {
                text.push_str(&format!("decided_at_s = {t}\n"));
            }
            std::fs::write(dir.join("verdict.txt"), &text)
                .map_err(|e| WorkbenchError::io(dir.join("verdict.txt"), e))?;
            print!("{text}");
        }
        Command::Map { c_n, method } => {
            let s = scenario(g)?;
            let opts = MapOptions { thr_deg: s.analysis.thr, ..Default::default() };
            let method = match method {
                Method::Proposed => MapMethod::Proposed,
                Method::Classic => MapMethod::Classic,
            };
            let map =
                effective_area_map(*c_n, &default_v_grid(), &default_d_grid(), method, &opts).map_err(core("map"))?;
            let dir = out_dir(g)?;
            let mut text = String::from("v,d,value_deg,healthy_value_deg,pass,singular\n");
            for c in &map.cells {
                text.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    fmt_f64(c.v),
                    fmt_f64(c.d),
                    fmt_f64(c.value),
                    c.healthy_value.map_or(String::new(), fmt_f64),
                    c.pass,
                    c.singular
                ));
            }
            let path = dir.join("map.csv");
            std::fs::write(&path, text).map_err(|e| WorkbenchError::io(&path, e))?;
            println!(
                "pass fraction {:.4} ({} failing cells) -> {}",
                map.pass_fraction(),
                map.failures(),
                path.display()
            );
        }
        Command::Sweep { axes, jobs, metrics, keep_bundles } => {
            let base = scenario(g)?;
            let axes = axes.iter().map(|a| a.parse()).collect::<Result<Vec<SweepAxis>>>()?;
            let outputs = if metrics.is_empty() {
                Metric::ALL.to_vec()
            } else {
                metrics.iter().map(|m| m.parse()).collect::<Result<Vec<Metric>>>()?
            };
            let spec = SweepSpec { base, axes, outputs };
            let dir = out_dir(g)?;
            let table = sweep(&spec, *jobs, keep_bundles.then_some(dir))?;
            let path = dir.join("results.csv");
            std::fs::write(&path, table.to_csv()).map_err(|e| WorkbenchError::io(&path, e))?;
            std::fs::write(dir.join("manifest"), manifest_text(&spec.base, f64::NAN))
                .map_err(|e| WorkbenchError::io(dir.join("manifest"), e))?;
            let failed = table.rows.iter().filter(|r| r.outcome.is_err()).count();
            println!("{} cells ({failed} failed) -> {}", table.rows.len(), path.display());
        }
    }
    Ok(())
}
