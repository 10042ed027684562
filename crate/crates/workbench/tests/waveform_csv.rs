use hif_workbench::csvio::{export_waveforms, import_waveforms, read_waveforms, write_waveforms};
use hif_workbench::{run, Scenario, WorkbenchError};

#[test]
fn simulated_record_round_trips() {
    let mut s = Scenario::default();
    s.sim.duration = 0.5;
    let rec = run(&s).unwrap().record;
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("w.csv");
    export_waveforms(&rec, &p).unwrap();
    let back = import_waveforms(&p).unwrap();
    assert_eq!(back.fs(), rec.fs());
    assert_eq!(back.len(), rec.len());
    assert_eq!(back.channel_names(), rec.channel_names());
    for (name, x) in rec.channels() {
        let y = back.channel(name).unwrap();
        let peak = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let worst = x.iter().zip(y).fold(0.0f64, |a, (u, v)| a.max((u - v).abs()));
        assert!(worst <= 1e-12 * peak.max(1e-300), "{name}: {worst}");
    }
    let text = std::fs::read_to_string(&p).unwrap();
    assert!(!text.contains('\r'));
}

#[test]
fn three_channel_header() {
    let mut rec = hif_core::WaveformRecord::new(6400.0, 0.0).unwrap();
    for name in ["i_0f", "u_0b", "i_0N"] {
        rec.push_channel(name, vec![0.5; 10]).unwrap();
    }
    let mut out = Vec::new();
    write_waveforms(&rec, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,i_0f,u_0b,i_0N"));
    assert!(lines.all(|l| l.split(',').count() == 4));
}

#[test]
fn malformed_files_report_rows() {
    let row = |text: &str| match read_waveforms(text.as_bytes()) {
        Err(e @ WorkbenchError::Csv { .. }) => {
            assert_eq!(e.category(), "parse");
            match e {
                WorkbenchError::Csv { row, .. } => row,
                _ => unreachable!(),
            }
        }
        other => panic!("{other:?}"),
    };
    assert_eq!(row("1,2\n3,4\n"), 1);
    assert_eq!(row("t,a,b\n0,1,2\n0.1,1\n"), 3);
    assert_eq!(row("t,a\n0,1\n0.1,1\n0.05,1\n"), 4);
    assert_eq!(row("t,a\n0,1\n0.1,NaN\n"), 3);
}
