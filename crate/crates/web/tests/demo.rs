use hif_web::{arc_trace_data, area_grid_data, feeder_demo_data, DEMO_SHARES};

#[test]
fn arc_trace_has_four_cycles() {
    let t = arc_trace_data(2_000.0, 300.0, 1_000.0).unwrap();
    assert_eq!(t.current().len(), 4 * 128);
    assert_eq!(t.resistance().len(), 4 * 128);
    assert!(t.resistance().iter().all(|&r| r > 0.0));
    assert!(t.offsets_ms().len() >= 6);
}

#[test]
fn proposed_grid_covers_classic() {
    let p = area_grid_data(0.3, false, 40.0).unwrap();
    let c = area_grid_data(0.3, true, 40.0).unwrap();
    assert_eq!(p.values().len(), p.v().len() * p.d().len());
    assert_eq!(p.pass_fraction(), 1.0);
    assert!(c.pass_fraction() < p.pass_fraction());
    assert!(area_grid_data(1.5, false, 40.0).is_err());
}

#[test]
fn demo_finds_each_feeder() {
    for faulty in 1..=DEMO_SHARES.len() {
        let r = feeder_demo_data(faulty, -0.05, 0.2, 1_000.0, 2.0, 40.0).unwrap();
        assert_eq!(r.verdict() as usize, faulty);
        assert!(r.decided_at().is_finite());
        assert_eq!(r.fault_current().len(), 256);
        assert!(r.gated_windows() >= 5);
    }
    assert!(feeder_demo_data(0, -0.05, 0.2, 1_000.0, 2.0, 40.0).is_err());
}
