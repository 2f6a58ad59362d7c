use nielsenkit_web::{attracting, attracting_value, circle_value, invariants, invariants_value};
use serde_json::Value;

#[test]
fn squares_have_one_class() {
    let r = invariants_value("aa, bb").unwrap();
    let classes = r["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!((classes[0]["ind"].as_i64(), classes[0]["a"].as_i64()), (Some(-3), Some(4)));
}

#[test]
fn ray_prefix() {
    let r = attracting_value("A, Abb", 11).unwrap();
    let found = r.as_array().unwrap().iter().any(|c| c["attracting"].as_array().unwrap().iter().any(|w| w["prefix"] == "BBaBBBBaBBa"));
    assert!(found, "{r}");
}

#[test]
fn circle_indices() {
    for k in [-3i64, 2, 4] {
        let r = circle_value(k).unwrap();
        let classes = r["classes"].as_array().unwrap();
        assert_eq!(classes.len() as i64, (1 - k).abs());
        assert!(classes.iter().all(|c| c["ind"].as_i64() == Some((1 - k).signum()) && c["ind"] == c["ichr"]));
    }
    assert!(circle_value(0).is_err());
}

#[test]
fn errors_are_json() {
    let r: Value = serde_json::from_str(&invariants("a, q")).unwrap();
    assert!(r["error"].is_string(), "{r}");
    let r: Value = serde_json::from_str(&attracting("", 5)).unwrap();
    assert!(r["error"].is_string(), "{r}");
}
