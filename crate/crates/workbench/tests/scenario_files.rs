use std::path::PathBuf;

use hif_workbench::scenario::{SourceKind, StartKind, REFERENCE_SHARES};
use hif_workbench::{load_scenario, save_scenario, Scenario, WorkbenchError};

fn shipped(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

const MINIMAL_LOSSLESS: &str = r#"
[network]
shares = [0.3, 0.7]
d = 0.0

[source]
kind = "injected"
amplitude = 5.0

[sim]
start = "periodic"
"#;

#[test]
fn minimal_two_feeder_config_gets_defaults() {
    let s = Scenario::from_toml_str(MINIMAL_LOSSLESS).unwrap();
    let d = Scenario::default();
    assert_eq!(s.network.shares, vec![0.3, 0.7]);
    assert_eq!(s.network.f0, 50.0);
    assert_eq!(s.sim.fs, 6400.0);
    assert_eq!(s.analysis.thr, 40.0);
    assert_eq!(s.analysis.k_consec, d.analysis.k_consec);
    assert_eq!(s.source.kind, SourceKind::Injected);
    assert_eq!(s.sim.start, StartKind::Periodic);
    assert_eq!(s.network.v, d.network.v);
}

#[test]
fn line_length_shares_normalize() {
    let s = load_scenario(shipped("field_4feeder.toml")).unwrap();
    assert_eq!(s.network.shares, REFERENCE_SHARES.to_vec());
    let c = s.network_parameters().unwrap().shares();
    assert!((c.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
    assert!((c[0] - 13.3 / 59.6).abs() < 1e-12);
    assert_eq!(c[1], c[2]);
}

#[test]
fn odd_samples_per_cycle_rejected_with_key_and_line() {
    let text = "[network]\nv = -0.05\n\n[sim]\nfs = 6450.0\n";
    let e = Scenario::from_toml_str(text).unwrap_err();
    match &e {
        WorkbenchError::Schema { key, line, message } => {
            assert_eq!(key, "sim.fs");
            assert_eq!(*line, Some(5));
            assert!(message.contains("odd") && message.contains("synchronized"), "{message}");
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(e.category(), "config");
    assert!(e.to_string().starts_with("line 5: `sim.fs`"), "{e}");
}

#[test]
fn unknown_keys_and_bad_types_name_the_line() {
    let e = Scenario::from_toml_str("[network]\nv = -0.05\nbogus = 3\n").unwrap_err();
    assert!(e.to_string().contains("line 3"), "{e}");
    let e = Scenario::from_toml_str("[sim]\nfs = \"fast\"\n").unwrap_err();
    assert!(e.to_string().contains("line 2"), "{e}");
}

#[test]
fn noise_requires_seed() {
    let e = Scenario::from_toml_str("[sim]\nnoise_std = 0.01\n").unwrap_err();
    assert!(matches!(&e, WorkbenchError::Schema { key, .. } if key == "seed"), "{e:?}");
    assert!(Scenario::from_toml_str("seed = 3\n[sim]\nnoise_std = 0.01\n").is_ok());
}

#[test]
fn save_load_is_a_fixpoint() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["field_4feeder.toml", "lossless_demo.toml", "heavy_damping.toml"] {
        let a = load_scenario(shipped(name)).unwrap();
        let p = dir.path().join(name);
        save_scenario(&a, &p).unwrap();
        let b = load_scenario(&p).unwrap();
        assert_eq!(a, b, "{name}");
        let q = dir.path().join("again.toml");
        save_scenario(&b, &q).unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), std::fs::read_to_string(&q).unwrap());
        assert_eq!(a.hash(), b.hash());
    }
}

#[test]
fn paths_resolve_and_replace() {
    let s = Scenario::default();
    assert_eq!(s.get_path("network.d").unwrap().as_float(), Some(s.network.d));
    assert!(s.get_path("network.nope").is_none());
    let t = s.with_path("source.arc.tau", toml::Value::Float(3.0)).unwrap();
    assert_eq!(t.source.arc.tau, 3.0);
    assert!(s.with_path("network.faulty", toml::Value::Integer(9)).is_err());
    assert!(s.with_path("network.v", toml::Value::String("x".into())).is_err());
}
