use nielsenkit::corpus::{builtin_corpus, emit_corpus, evaluate, report_json, EvalOptions};
use nielsenkit::json::InstanceJson;

#[test]
fn every_instance_meets_its_expectations() {
    let opts = EvalOptions::default();
    for inst in builtin_corpus() {
        let ev = evaluate(&inst, &opts);
        assert_eq!(ev.exit_code(), 0, "{}", serde_json::to_string_pretty(&report_json(&ev)).unwrap());
    }
}

#[test]
fn emitted_files_round_trip_and_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let files = emit_corpus(dir.path()).unwrap();
    assert_eq!(files.len(), 3 + 4 + 11 + 7);
    for (file, inst) in files.iter().zip(builtin_corpus()) {
        let text = std::fs::read_to_string(dir.path().join(file)).unwrap();
        let back = InstanceJson::from_str(&text).unwrap();
        assert_eq!(back, inst, "{file}");
        assert_eq!(back.to_pretty(), text);
    }
}

#[test]
fn shipped_edge_maps() {
    let dir = tempfile::tempdir().unwrap();
    emit_corpus(dir.path()).unwrap();
    let read = |f: &str| -> serde_json::Value {
        serde_json::from_str(&std::fs::read_to_string(dir.path().join(f)).unwrap()).unwrap()
    };
    assert_eq!(read("ex6_1_n2.json")["edge_map"], serde_json::json!({"a1": ["a1", "a1"], "a2": ["a2", "a2"]}));
    assert_eq!(read("ex6_4.json")["edge_map"], serde_json::json!({"a": ["a-"], "b": ["a-", "b", "b"]}));
    let c3 = read("circle_k3.json");
    assert_eq!(c3["vertices"], serde_json::json!(["v"]));
    assert_eq!(c3["edge_map"], serde_json::json!({"e": ["e", "e", "e"]}));
}
