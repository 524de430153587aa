use clawnet_web::{circle_json, detect_json, window_json, MAX_DEPTH};

#[test]
fn window_has_layout_and_edges() {
    let w = window_json("double_ray", 2, 3).unwrap();
    let vertices = w["vertices"].as_array().unwrap();
    // cells -3..=3, two slots each
    assert_eq!(vertices.len(), 14);
    assert!(vertices
        .iter()
        .all(|v| v["cell"].as_i64().unwrap().abs() <= 3));
    assert_eq!(w["ends"], 2);
    assert!(!w["edges"].as_array().unwrap().is_empty());
}

#[test]
fn circle_prefix_verifies() {
    let c = circle_json("ray", 3, 8, 1).unwrap();
    assert_eq!(c["passed"], true, "{c}");
    assert!(c["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|x| x["name"] == "cut-parity"));
    // a ray is not 2-connected
    assert!(circle_json("ray", 1, 8, 1)
        .unwrap_err()
        .contains("2-connected"));
}

#[test]
fn detect_reports_each_pattern() {
    let net = "graph 6\n0 1\n0 2\n1 2\n0 3\n1 4\n2 5\n";
    let d = detect_json(net, "all").unwrap();
    let found: Vec<bool> = d["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["found"].as_bool().unwrap())
        .collect();
    assert_eq!(found, vec![false, true, true]);
    assert!(detect_json(net, "hexagon").is_err());
    assert!(detect_json("graph 2\n0 5\n", "claw").is_err());
}

#[test]
fn bad_parameters_are_rejected() {
    assert!(window_json("ladder", 2, 3).is_err());
    assert!(window_json("ray", 0, 3).is_err());
    assert!(window_json("ray", 2, MAX_DEPTH + 1).is_err());
}
