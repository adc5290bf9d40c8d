use qrpnn_wasm::demo::{fixed_point_distances, model_names, recall_curve, recall_trace, MAX_N};

#[test]
fn lists_preset_models() {
    let names = model_names("example2").unwrap();
    assert_eq!(names.len(), 10);
    assert_eq!(names[0], "qhnn-hebbian");
    assert!(names.contains(&"qrpnn-exponential".to_string()));
    assert!(model_names("example9").is_err());
}

#[test]
fn recall_curve_shape() {
    let curve = recall_curve("example1", "qrpnn-exponential", 60, 10, 10, 7).unwrap();
    assert_eq!(curve.len(), 11);
    assert_eq!(curve[0], 1.0);
    assert!(curve.iter().all(|r| (0.0..=1.0).contains(r)));
    assert_eq!(curve, recall_curve("example1", "qrpnn-exponential", 60, 10, 10, 7).unwrap());
}

#[test]
fn stored_memories_do_not_move() {
    let d = fixed_point_distances("example2", "qrpnn-high-order", 50, 8, 1).unwrap();
    assert_eq!(d.len(), 8);
    assert!(d.iter().all(|&x| x <= 1e-6));
}

#[test]
fn trace_starts_noisy_and_ends_on_target() {
    let t = recall_trace("example2", "qrpnn-exponential", 80, 8, 0.3, 3).unwrap();
    assert!(t[0] > 0.0);
    assert!(*t.last().unwrap() <= 1e-3);
}

#[test]
fn bad_inputs_are_reported() {
    assert!(recall_curve("example1", "qrpnn-cubic", 10, 2, 1, 0).unwrap_err().contains("qrpnn-cubic"));
    assert!(recall_trace("example1", "qrpnn-identity", 10, 2, 1.5, 0).is_err());
    assert!(fixed_point_distances("example1", "qrpnn-identity", MAX_N + 1, 2, 0).is_err());
    assert!(fixed_point_distances("example1", "qrpnn-identity", 10, 0, 0).is_err());
}
