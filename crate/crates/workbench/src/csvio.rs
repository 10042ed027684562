//! CSV files: waveforms (`t` plus one column per channel), phasor streams and
//! indicator tables.

use std::io::{Read, Write};
use std::path::Path;

use hif_core::identify::IdentificationResult;
use hif_core::phasor::PhasorSet;
use hif_core::WaveformRecord;

use crate::error::{Result, WorkbenchError};

/// Relative tolerance on sample spacing when importing.
const SPACING_TOL: f64 = 1e-6;

/// 17 significant digits: enough to round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_waveforms<W: Write>(record: &WaveformRecord, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let mut header = vec!["t".to_string()];
    header.extend(record.channel_names().iter().cloned());
    w.write_record(&header).map_err(csv_write)?;
    let cols: Vec<&[f64]> = record.channels().map(|(_, x)| x).collect();
    for s in 0..record.len() {
        let mut row = Vec::with_capacity(cols.len() + 1);
        row.push(fmt_f64(record.time(s)));
        row.extend(cols.iter().map(|c| fmt_f64(c[s])));
        w.write_record(&row).map_err(csv_write)?;
    }
    w.flush().map_err(|e| csv_write(e.into()))
}

pub fn export_waveforms(record: &WaveformRecord, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let f = std::fs::File::create(path).map_err(|e| WorkbenchError::io(path, e))?;
    write_waveforms(record, std::io::BufWriter::new(f))
}

fn csv_write(e: csv::Error) -> WorkbenchError {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => WorkbenchError::io("<csv output>", e),
        other => WorkbenchError::Validation(format!("csv write: {other:?}")),
    }
}

pub fn import_waveforms(path: impl AsRef<Path>) -> Result<WaveformRecord> {
    let path = path.as_ref();
    let f = std::fs::File::open(path).map_err(|e| WorkbenchError::io(path, e))?;
    read_waveforms(std::io::BufReader::new(f))
}

/// Parse a waveform CSV. The sample rate is inferred from the time column,
/// which must be strictly increasing and uniformly spaced.
pub fn read_waveforms<R: Read>(input: R) -> Result<WaveformRecord> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(input);
    let mut rows = rdr.records();
    let header = match rows.next() {
        None => return Err(WorkbenchError::Csv { row: 1, message: "missing header row".into() }),
        Some(r) => r.map_err(|e| WorkbenchError::Csv { row: 1, message: e.to_string() })?,
    };
    let names: Vec<String> = header.iter().map(|s| s.trim().to_string()).collect();
    if names.first().map(String::as_str) != Some("t") {
        return Err(WorkbenchError::Csv { row: 1, message: "missing header: first column must be `t`".into() });
    }
    if names.len() < 2 {
        return Err(WorkbenchError::Csv { row: 1, message: "no channel columns".into() });
    }
    if let Some(n) = names.iter().find(|n| n.parse::<f64>().is_ok()) {
        return Err(WorkbenchError::Csv {
            row: 1,
            message: format!("missing header: found numeric column name {n:?}"),
        });
    }
    let mut t = Vec::new();
    let mut cols = vec![Vec::new(); names.len() - 1];
    for (i, rec) in rows.enumerate() {
        let row = i + 2;
        let rec = rec.map_err(|e| WorkbenchError::Csv { row, message: e.to_string() })?;
        if rec.len() == 1 && rec.get(0).is_some_and(|s| s.trim().is_empty()) {
            continue;
        }
        if rec.len() != names.len() {
            return Err(WorkbenchError::Csv {
                row,
                message: format!("expected {} fields, found {}", names.len(), rec.len()),
            });
        }
        let mut vals = rec.iter().map(|s| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| WorkbenchError::Csv { row, message: format!("not a finite number: {s:?}") })
        });
        let ti = vals.next().expect("non-empty")?;
        if let Some(&prev) = t.last() {
            if ti <= prev {
                return Err(WorkbenchError::Csv { row, message: format!("time {ti} is not after {prev}") });
            }
        }
        t.push(ti);
        for (c, v) in cols.iter_mut().zip(vals) {
            c.push(v?);
        }
    }
    if t.len() < 2 {
        return Err(WorkbenchError::Csv { row: t.len() + 1, message: "need at least 2 samples".into() });
    }
    let first = t[1] - t[0];
    for (i, w) in t.windows(2).enumerate() {
        if ((w[1] - w[0]) - first).abs() > SPACING_TOL * first {
            return Err(WorkbenchError::Csv {
                row: i + 3,
                message: format!("non-uniform sample spacing at t = {}", w[1]),
            });
        }
    }
    let mut fs = (t.len() - 1) as f64 / (t[t.len() - 1] - t[0]);
    if (fs - fs.round()).abs() <= SPACING_TOL * fs {
        fs = fs.round();
    }
    let mut rec = WaveformRecord::new(fs, t[0]).map_err(|e| WorkbenchError::core("waveform csv", e))?;
    for (name, c) in names.into_iter().skip(1).zip(cols) {
        rec.push_channel(name, c).map_err(|e| WorkbenchError::Csv { row: 1, message: e.to_string() })?;
    }
    Ok(rec)
}

/// `window_start,channel,k,amplitude,phase_deg`
pub fn write_phasors<W: Write>(streams: &[(String, Vec<PhasorSet>)], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(["window_start", "channel", "k", "amplitude", "phase_deg"]).map_err(csv_write)?;
    let windows = streams.first().map_or(0, |s| s.1.len());
    for i in 0..windows {
        for (name, s) in streams {
            let set = &s[i];
            for (k, p) in set.harmonics.iter().enumerate() {
                w.write_record([
                    fmt_f64(set.window_start),
                    name.clone(),
                    (k + 1).to_string(),
                    fmt_f64(p.amplitude),
                    fmt_f64(p.phase_deg),
                ])
                .map_err(csv_write)?;
            }
        }
    }
    w.flush().map_err(|e| csv_write(e.into()))
}

/// `window_start,feeder_a,feeder_b,indicator_deg,valid`, one row per
/// unordered pair (the matrix is symmetric).
pub fn write_indicators<W: Write>(result: &IdentificationResult, names: &[String], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(["window_start", "feeder_a", "feeder_b", "indicator_deg", "valid"]).map_err(csv_write)?;
    for win in &result.per_window {
        let n = win.indicators.len();
        for a in 0..n {
            for b in a + 1..n {
                let ind = win.indicators[a][b].expect("off-diagonal entry");
                w.write_record([
                    fmt_f64(win.window_start),
                    names[a].clone(),
                    names[b].clone(),
                    fmt_f64(ind),
                    win.valid[a][b].to_string(),
                ])
                .map_err(csv_write)?;
            }
        }
    }
    w.flush().map_err(|e| csv_write(e.into()))
}

pub fn create_file(path: &Path) -> Result<std::io::BufWriter<std::fs::File>> {
    std::fs::File::create(path).map(std::io::BufWriter::new).map_err(|e| WorkbenchError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<WaveformRecord> {
        read_waveforms(text.as_bytes())
    }

    #[test]
    fn header_and_rows() {
        let r = parse("t,a,b\n0,1,2\n0.5,3,4\n1.0,5,6\n").unwrap();
        assert_eq!(r.fs(), 2.0);
        assert_eq!(r.channel("b").unwrap(), &[2.0, 4.0, 6.0]);
    }

    #[test]
    fn errors_carry_rows() {
        let row = |text: &str| match parse(text) {
            Err(WorkbenchError::Csv { row, .. }) => row,
            other => panic!("{other:?}"),
        };
        assert_eq!(row(""), 1);
        assert_eq!(row("0,1,2\n1,2,3\n"), 1);
        assert_eq!(row("t,a\n0,1\n1,2,3\n"), 3);
        assert_eq!(row("t,a\n0,1\n1,2\n0.5,3\n"), 4);
        assert_eq!(row("t,a\n0,1\n1,x\n"), 3);
        assert_eq!(row("t,a\n0,1\n1,2\n3,3\n"), 4);
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_f64(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(fmt_f64(1.0 / 3.0).parse::<f64>().unwrap(), 1.0 / 3.0);
        assert_eq!(fmt_f64(-1e-300).parse::<f64>().unwrap(), -1e-300);
    }
}
