//! Every preset carries expected verdicts; running them all is the regression suite.

use std::time::{Duration, Instant};

use depsym::scenario::{list_presets, run};

#[test]
fn every_preset_meets_its_expectations() {
    let mut failures = Vec::new();
    for p in list_presets() {
        let cfg = p.config().unwrap();
        let start = Instant::now();
        let out = run(&cfg).unwrap_or_else(|e| panic!("{}: {e}", p.name));
        let elapsed = start.elapsed();
        let r = &out.report;
        if !r.passed || elapsed > Duration::from_secs(60) {
            let unmet: Vec<_> = r.expectations.iter().filter(|x| !x.passed).map(|x| x.detail.clone()).collect();
            failures.push(format!("{} ({:.1}s): {unmet:?} {:?}", p.name, elapsed.as_secs_f64(), r.errors));
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn reports_round_trip_through_json() {
    let cfg = depsym::scenario::preset("IIA1-rotz").unwrap();
    let json = cfg.to_json().unwrap();
    assert_eq!(depsym::scenario::ScenarioConfig::from_json(&json).unwrap(), cfg);
    let report = run(&cfg).unwrap().report;
    let text = serde_json::to_string(&report).unwrap();
    assert!(text.contains("\"verdict\":\"holds\""));
}
