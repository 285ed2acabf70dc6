use std::f64::consts::{FRAC_PI_2, PI};

use serde_json::{json, Value};

use squeezed_qfi_web::{curve, grid, opt_time};

fn call(f: fn(&str) -> Result<String, String>, req: Value) -> Value {
    serde_json::from_str(&f(&req.to_string()).unwrap()).unwrap()
}

#[test]
fn curve_has_one_entry_per_point() {
    let out = call(
        curve,
        json!({"estimand": "T", "axis": "T", "lo": 0.05, "hi": 2.0, "points": 12, "t": 1.0, "r": 0.1, "theta": 1.0, "s": 0.5}),
    );
    for key in ["x", "gamma", "qfi"] {
        assert_eq!(out[key].as_array().unwrap().len(), 12, "{key}");
    }
    assert_eq!(out["x"][0], 0.05);
    assert!(out["qfi"]
        .as_array()
        .unwrap()
        .iter()
        .all(|q| q.as_f64().unwrap() >= 0.0));
}

#[test]
fn grid_rows_are_temperatures() {
    let out = call(
        grid,
        json!({"estimand": "T", "t_range": [0.0, 5.0], "temp_range": [0.1, 2.0], "t_points": 6, "temp_points": 4,
               "r": 1.5, "theta": PI, "s": 1.0}),
    );
    let rows = out["qfi"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 6));
    assert!(rows.iter().all(|r| r[0] == 0.0));
}

#[test]
fn opt_time_defaults_to_equatorial_probe() {
    let out = call(
        opt_time,
        json!({"estimand": "T", "temp_range": [0.4, 1.2], "temp_points": 3, "t_max": 20.0, "r": 0.5, "theta": FRAC_PI_2, "s": 0.5}),
    );
    let t_star: Vec<f64> = out["t_star"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(t_star.len(), 3);
    assert!(t_star.windows(2).all(|w| w[1] <= w[0]), "{t_star:?}");
}

#[test]
fn invalid_requests_are_errors() {
    assert!(curve("{").unwrap_err().starts_with("bad request"));
    let bad_s = json!({"estimand": "T", "axis": "T", "lo": 0.1, "hi": 1.0, "points": 3, "t": 1.0, "s": -1.0});
    assert!(curve(&bad_s.to_string()).is_err());
    let zero = json!({"estimand": "T", "temp_range": [0.4, 1.2], "temp_points": 0, "t_max": 5.0, "s": 1.0});
    assert!(opt_time(&zero.to_string()).is_err());
}
