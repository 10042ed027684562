use hif_workbench::{sweep, Metric, Scenario, SweepAxis, SweepSpec};

fn small_network() -> Scenario {
    let mut s = Scenario::default();
    s.network.shares = vec![0.2, 0.3, 0.5];
    s.network.faulty = 1;
    s.sim.duration = 0.6;
    s
}

fn vd_spec() -> SweepSpec {
    SweepSpec {
        base: small_network(),
        axes: vec![SweepAxis::new("network.v", [-0.1, -0.05, -0.02]), SweepAxis::new("network.d", [0.1, 0.2, 0.4])],
        outputs: vec![Metric::Verdict, Metric::Correct, Metric::FaultyIndicatorMax],
    }
}

#[test]
fn three_by_three_all_correct() {
    let t = sweep(&vd_spec(), 4, None).unwrap();
    assert_eq!(t.rows.len(), 9);
    for r in &t.rows {
        let m = r.outcome.as_ref().unwrap();
        assert!(m.correct(), "cell {} {:?}: {m:?}", r.index, r.coordinates);
        assert!(m.faulty_indicator_max <= 40.0);
    }
    let csv = t.to_csv();
    assert_eq!(csv.lines().count(), 10);
    assert!(csv.starts_with("cell,network.v,network.d,verdict,correct,faulty_indicator_max,error\n"));
}

#[test]
fn parallelism_does_not_change_table() {
    let spec = vd_spec();
    assert_eq!(sweep(&spec, 1, None).unwrap().to_csv(), sweep(&spec, 8, None).unwrap().to_csv());
}

#[test]
fn empty_axis_is_rejected() {
    let mut spec = vd_spec();
    spec.axes.push(SweepAxis { path: "network.d".into(), values: vec![] });
    assert_eq!(sweep(&spec, 1, None).unwrap_err().category(), "config");
    spec.axes.clear();
    assert!(sweep(&spec, 1, None).is_err());
    let mut spec = vd_spec();
    spec.axes[0].path = "network.nope".into();
    assert!(sweep(&spec, 1, None).is_err());
}

#[test]
fn failing_cells_are_recorded_and_sweep_continues() {
    let mut spec = vd_spec();
    // faulty = 5 does not exist on a 3-feeder network
    spec.axes = vec![SweepAxis::new("network.faulty", [1i64, 5, 2])];
    let t = sweep(&spec, 2, None).unwrap();
    assert!(t.rows[0].outcome.is_ok() && t.rows[2].outcome.is_ok());
    let e = t.rows[1].outcome.as_ref().unwrap_err();
    assert!(e.starts_with("[config]"), "{e}");
    assert!(t.to_csv().lines().nth(2).unwrap().contains("[config]"));
}

#[test]
fn per_cell_bundles() {
    let mut spec = vd_spec();
    spec.axes = vec![SweepAxis::new("network.faulty", [1i64, 3])];
    let dir = tempfile::tempdir().unwrap();
    sweep(&spec, 2, Some(dir.path())).unwrap();
    for c in ["cell_0000", "cell_0001"] {
        assert!(dir.path().join(c).join("verdict.txt").is_file(), "{c}");
    }
}

#[test]
fn axis_from_command_line_form() {
    let a: SweepAxis = "source.arc.tau=1,2.5".parse().unwrap();
    assert_eq!(a.path, "source.arc.tau");
    assert_eq!(a.values.len(), 2);
    assert!("network.v".parse::<SweepAxis>().is_err());
}
