use grsse_core::codes::CodeRegistry;
use grsse_core::sweep::{emit_csv, run_sweep, SweepSpec, CSV_COLUMNS};

fn spec(json: &str) -> SweepSpec {
    SweepSpec::from_json(json).unwrap()
}

fn csv_of(spec: &SweepSpec) -> Vec<u8> {
    let rows = run_sweep(spec, &CodeRegistry::new()).unwrap();
    let mut out = Vec::new();
    emit_csv(&rows, &mut out).unwrap();
    out
}

#[test]
fn golay_ball_sweep() {
    let s = spec(r#"{"channel": "ball", "n": 24, "w": [0,1,2,3,4,5,6,7,8,9,10,11,12], "codes": ["golay"], "trials": 300, "seed": 4}"#);
    let rows = run_sweep(&s, &CodeRegistry::new()).unwrap();
    assert_eq!(rows.len(), 13);
    for (w, r) in rows.iter().enumerate() {
        assert!(r.error.is_none(), "{r:?}");
        assert!(r.flags.is_empty(), "{r:?}");
        assert!(r.max_distortion.unwrap() <= w as f64 / 24.0 + 1e-12);
        assert!(r.capacity.unwrap() <= r.analytic_rate.unwrap() + 1e-9);
        assert!(r.analytic_rate.unwrap() <= r.comm_bound.unwrap() + 1e-9);
    }
    // noiseless: the output must equal the input, so at least n bits are sent
    assert_eq!(rows[0].capacity, Some(1.0));
    assert_eq!(rows[0].max_distortion, Some(0.0));
    assert!(rows[0].uncompressed);
    // only the zero coset accepts: L is geometric with mean 2^12
    let mean_l = rows[0].mean_iterations.unwrap();
    assert!((mean_l - 4096.0).abs() < 4.0 * 4096.0 / (300f64).sqrt(), "{mean_l}");
}

#[test]
fn noiseless_bsc_is_uncompressed() {
    let s = spec(r#"{"channel": "bsc", "n": 8, "alpha": ["0", "1/4"], "codes": ["rep:8", "trivial:8"], "trials": 200, "cap": 200}"#);
    let rows = run_sweep(&s, &CodeRegistry::new()).unwrap();
    assert_eq!(rows[0].capacity, Some(1.0));
    assert!(rows[0].uncompressed);
    assert!(!rows[1].uncompressed);
    assert!(rows.iter().all(|r| r.flags.is_empty() && r.error.is_none()), "{rows:?}");
    assert_eq!(rows[1].backend, "exact");
}

#[test]
fn golay_bsc_rate_is_sandwiched() {
    let alphas: Vec<String> = (1..=10).map(|i| format!("\"{i}/100\"")).collect();
    let s = spec(&format!(r#"{{"channel": "bsc", "n": 24, "alpha": [{}], "codes": ["golay"], "trials": 200}}"#, alphas.join(",")));
    for r in run_sweep(&s, &CodeRegistry::new()).unwrap() {
        let rate = r.analytic_rate.unwrap();
        assert!(r.capacity.unwrap() <= rate, "{r:?}");
        assert!(rate <= r.comm_bound.unwrap(), "{r:?}");
        assert!(r.flags.is_empty(), "{r:?}");
    }
}

#[test]
fn sweeps_are_reproducible_and_cacheable() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!(
        r#"{{"channel": "bsc", "n": 12, "alpha": [0.05, "1/5"], "codes": ["rep:12", "2*parity:6", "trivial:12"], "trials": 500, "seed": 9, "epsilon": 0.01, "cache_dir": {:?}}}"#,
        dir.path().to_str().unwrap()
    );
    let s = spec(&text);
    let a = csv_of(&s);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
    let b = csv_of(&s);
    assert_eq!(a, b);
    let header = String::from_utf8(a.clone()).unwrap();
    assert_eq!(header.lines().next().unwrap(), CSV_COLUMNS.join(","));
    assert_eq!(header.lines().count(), 3);
    let other = spec(&text.replace("\"seed\": 9", "\"seed\": 10"));
    assert_ne!(csv_of(&other), a);
}

#[test]
fn bad_grid_points_are_reported_per_row() {
    let s = spec(r#"{"channel": "bsc", "n": 8, "alpha": ["3/2", "1/8"], "codes": ["trivial:8"], "trials": 10, "cap": 100}"#);
    let rows = run_sweep(&s, &CodeRegistry::new()).unwrap();
    assert!(rows[0].error.is_some());
    assert!(rows[1].error.is_none());
    let mut out = Vec::new();
    emit_csv(&rows, &mut out).unwrap();
    let mut reader = csv::Reader::from_reader(&out[..]);
    assert_eq!(reader.records().count(), 2);
}

#[test]
fn invalid_specs_are_rejected() {
    for bad in [
        r#"{"channel": "bsc", "n": 8, "codes": ["rep:8"]}"#,
        r#"{"channel": "bsc", "n": 8, "alpha": [0.1], "w": [1], "codes": ["rep:8"]}"#,
        r#"{"channel": "bsc", "n": 8, "alpha": [0.1], "codes": ["rep:8"], "trials": 0}"#,
        r#"{"channel": "bsc", "n": 8, "alpha": [0.1], "codes": ["rep:8"], "coder": "unary"}"#,
        r#"{"channel": "bsc", "n": 8, "alpha": [0.1], "codes": ["rep:8"], "typo": 1}"#,
    ] {
        assert!(SweepSpec::from_json(bad).is_err(), "{bad}");
    }
}
