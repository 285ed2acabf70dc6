use std::f64::consts::FRAC_PI_2;

use squeezed_qfi::sweep::{linspace, optimal_time, optimal_time_with};
use squeezed_qfi::{
    density_grid, qfi_point, sweep, Axis, BathPoint, Error, Estimand, FixedInputs, GridSpec, ProbeInit,
    QuadratureConfig, SpectralParams, SqueezeParams, SweepSpec, TimeSearch,
};

fn fixed(temp: f64, t: f64, r: f64, theta: f64, s: f64) -> FixedInputs {
    FixedInputs {
        point: BathPoint::new(temp, t).unwrap(),
        squeeze: SqueezeParams::new(r, theta).unwrap(),
        spectral: SpectralParams::with_unit_cutoff(s).unwrap(),
        probe: ProbeInit::equatorial(),
    }
}

#[test]
fn sweep_rows_follow_the_axis_and_match_point_calls() {
    let qc = QuadratureConfig::default();
    let spec = SweepSpec {
        estimand: Estimand::SqueezeAmplitude,
        axis: Axis::SqueezeAmplitude,
        range: (0.0, 2.0),
        points: 9,
        fixed: fixed(0.5, 1.0, 0.0, 1.0, 1.0),
    };
    let table = sweep(&spec, &qc).unwrap();
    let xs = linspace(0.0, 2.0, 9);
    assert_eq!(table.rows.len(), 9);
    for (row, &x) in table.rows.iter().zip(&xs) {
        assert_eq!(row.value, x);
        let f = fixed(0.5, 1.0, x, 1.0, 1.0);
        let direct = qfi_point(spec.estimand, &f.point, &f.squeeze, &f.spectral, &f.probe, &qc).unwrap();
        assert_eq!(row.qfi, direct.qfi);
    }
    assert_eq!(table.metadata.tool_version, squeezed_qfi::VERSION);
}

#[test]
fn grid_is_temperature_major() {
    let qc = QuadratureConfig::default();
    let spec = GridSpec {
        estimand: Estimand::Temperature,
        t_range: (0.0, 3.0),
        temp_range: (0.2, 1.0),
        t_points: 4,
        temp_points: 3,
        fixed: fixed(0.2, 0.0, 0.1, 1.0, 0.5),
    };
    let grid = density_grid(&spec, &qc).unwrap();
    assert_eq!(grid.samples.len(), 12);
    assert_eq!(grid.at(1, 2).inputs.point.temperature(), grid.temperatures[1]);
    assert_eq!(grid.at(1, 2).inputs.point.time(), grid.times[2]);
    assert_eq!(grid.samples[4].inputs.point.time(), 0.0);
    for ti in 0..3 {
        assert_eq!(grid.at(ti, 0).qfi, 0.0);
    }
}

#[test]
fn temperature_sweep_through_zero_is_rejected() {
    let spec = SweepSpec {
        estimand: Estimand::Temperature,
        axis: Axis::Temperature,
        range: (0.0, 1.0),
        points: 5,
        fixed: fixed(0.5, 1.0, 0.1, 1.0, 0.5),
    };
    assert!(matches!(
        sweep(&spec, &QuadratureConfig::default()),
        Err(Error::Domain(_))
    ));
}

#[test]
fn failures_report_the_offending_point() {
    let qc = QuadratureConfig {
        rel_tol: 1e-15,
        abs_tol: 1e-300,
        max_subdivisions: 2,
        ..QuadratureConfig::default()
    };
    let spec = SweepSpec {
        estimand: Estimand::Temperature,
        axis: Axis::Time,
        range: (1.0, 20.0),
        points: 3,
        fixed: fixed(0.5, 1.0, 1.0, 1.0, 0.5),
    };
    let err = sweep(&spec, &qc).unwrap_err();
    assert!(err.is_numerical());
    assert!(matches!(err, Error::AtPoint { ref axis, .. } if axis == "t"), "{err}");
}

#[test]
fn optimal_time_beats_its_coarse_grid() {
    let qc = QuadratureConfig::default();
    let f = fixed(0.5, 0.0, 0.5, FRAC_PI_2, 0.5);
    let best = optimal_time(0.5, Estimand::Temperature, &f, 20.0, &qc).unwrap();
    assert!(!best.flat);
    assert!(best.t_star > 0.0 && best.t_star < 20.0);
    for t in linspace(0.0, 20.0, 64) {
        let q = f
            .with_axis(Axis::Time, t)
            .unwrap()
            .evaluate(Estimand::Temperature, &qc)
            .unwrap()
            .qfi;
        assert!(q <= best.qfi_star, "t = {t}");
    }
    assert!(best.bracket <= 1e-4 * 20.0 + 1e-15);
}

#[test]
fn flat_profile_is_reported() {
    let qc = QuadratureConfig::default();
    let f = fixed(0.5, 0.0, 0.0, 0.0, 1.0);
    let res = optimal_time_with(0.5, Estimand::SqueezePhase, &f, 10.0, &qc, &TimeSearch::default()).unwrap();
    assert!(res.flat);
    assert_eq!((res.t_star, res.qfi_star), (0.0, 0.0));
}
