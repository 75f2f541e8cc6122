use sdtgraph::corpus::find;
use sdtgraph::report::*;

fn heawood() -> AnalysisReport {
    let g = find("Heawood").unwrap().graph();
    analyze(&g, "Heawood", GroupChoice::full(), &AnalysisOptions::default()).unwrap()
}

#[test]
fn report_is_deterministic_and_round_trips() {
    let a = heawood();
    let b = heawood();
    let text = a.to_json().unwrap();
    assert_eq!(text, b.to_json().unwrap());
    let back = AnalysisReport::from_json(&text).unwrap();
    assert_eq!(back, a);
    assert_eq!(back.to_json().unwrap(), text);
    assert!(text.contains(SCHEMA_VERSION));
    // Keys are sorted at the top level.
    let pos = |k: &str| text.find(&format!("\n  \"{k}\"")).unwrap();
    assert!(pos("alpha") < pos("girth") && pos("girth") < pos("verdict"));
}

#[test]
fn heawood_report_contents() {
    let r = heawood();
    let array = r.intersection.distance_regularity.array().unwrap();
    assert_eq!(array.to_string(), "{3,2,2;1,1,3}");
    assert_eq!(r.group.order, "336");
    assert_eq!(r.radii.len(), 2);
    assert!(r.violations().is_empty());
    assert!(r.timing.is_none());
}

#[test]
fn timing_is_optional() {
    let g = find("K4").unwrap().graph();
    let opts = AnalysisOptions { timing: true };
    let r = analyze(&g, "K4", GroupChoice::full(), &opts).unwrap();
    assert!(r.timing.is_some());
    assert!(r.to_json().unwrap().contains("milliseconds"));
}

#[test]
fn given_generators_are_checked() {
    let entry = find("K33").unwrap();
    let g = entry.graph();
    let choice = GroupChoice { id: "C3wrC2".into(), group: Some(entry.subgroup("C3wrC2").unwrap()) };
    let r = analyze(&g, "K33", choice, &AnalysisOptions::default()).unwrap();
    assert_eq!(r.group.order, "18");
    assert_eq!(r.radii[0].profile.orbits.len(), 2);

    let wrong = find("Petersen").unwrap().subgroup("x");
    assert!(wrong.is_err());
}
