//! Browser bindings for the interactive demo page in `www/`.
//!
//! Every export takes a JSON request string and returns a JSON response
//! string, so only strings cross the JS boundary. The request handling
//! lives in plain Rust functions that are tested natively.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use squeezed_qfi::sweep::{linspace, optimal_time};
use squeezed_qfi::{
    density_grid, sweep, Axis, BathPoint, Estimand, FixedInputs, GridSpec, ProbeInit, QuadratureConfig, SpectralParams,
    SqueezeParams, SweepSpec,
};

fn one() -> f64 {
    1.0
}

fn equator() -> f64 {
    FRAC_PI_2
}

/// Bath inputs shared by all requests. Swept or gridded inputs may be omitted.
#[derive(Debug, Clone, Deserialize)]
pub struct BathRequest {
    pub estimand: Estimand,
    #[serde(rename = "T", default)]
    pub temp: f64,
    #[serde(default)]
    pub t: f64,
    #[serde(default)]
    pub r: f64,
    #[serde(default)]
    pub theta: f64,
    pub s: f64,
    #[serde(default = "one")]
    pub omega_c: f64,
    #[serde(default = "equator")]
    pub alpha: f64,
}

impl BathRequest {
    fn fixed(&self) -> Result<FixedInputs, String> {
        let err = |e: squeezed_qfi::Error| e.to_string();
        Ok(FixedInputs {
            point: BathPoint::new(self.temp, self.t).map_err(err)?,
            squeeze: SqueezeParams::new(self.r, self.theta).map_err(err)?,
            spectral: SpectralParams::new(self.s, self.omega_c).map_err(err)?,
            probe: ProbeInit::new(self.alpha).map_err(err)?,
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct CurveRequest {
    #[serde(flatten)]
    pub bath: BathRequest,
    pub axis: Axis,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveResponse {
    pub x: Vec<f64>,
    pub gamma: Vec<f64>,
    pub qfi: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct GridRequest {
    #[serde(flatten)]
    pub bath: BathRequest,
    pub t_range: (f64, f64),
    pub temp_range: (f64, f64),
    pub t_points: usize,
    pub temp_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridResponse {
    pub temperatures: Vec<f64>,
    pub times: Vec<f64>,
    /// qfi[i][j] at temperatures[i], times[j].
    pub qfi: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct OptTimeRequest {
    #[serde(flatten)]
    pub bath: BathRequest,
    pub temp_range: (f64, f64),
    pub temp_points: usize,
    pub t_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptTimeResponse {
    pub temperatures: Vec<f64>,
    pub t_star: Vec<f64>,
    pub qfi_star: Vec<f64>,
}

/// Requests use the default quadrature; the page trades nothing for speed.
fn config() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn parse<'a, T: Deserialize<'a>>(request: &'a str) -> Result<T, String> {
    serde_json::from_str(request).map_err(|e| format!("bad request: {e}"))
}

fn respond<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

pub fn curve(request: &str) -> Result<String, String> {
    let req: CurveRequest = parse(request)?;
    let spec = SweepSpec {
        estimand: req.bath.estimand,
        axis: req.axis,
        range: (req.lo, req.hi),
        points: req.points,
        fixed: req.bath.fixed()?,
    };
    let table = sweep(&spec, &config()).map_err(|e| e.to_string())?;
    respond(&CurveResponse {
        x: table.rows.iter().map(|r| r.value).collect(),
        gamma: table.rows.iter().map(|r| r.gamma).collect(),
        qfi: table.rows.iter().map(|r| r.qfi).collect(),
    })
}

pub fn grid(request: &str) -> Result<String, String> {
    let req: GridRequest = parse(request)?;
    let spec = GridSpec {
        estimand: req.bath.estimand,
        t_range: req.t_range,
        temp_range: req.temp_range,
        t_points: req.t_points,
        temp_points: req.temp_points,
        fixed: req.bath.fixed()?,
    };
    let grid = density_grid(&spec, &config()).map_err(|e| e.to_string())?;
    let qfi = grid
        .samples
        .chunks(grid.times.len())
        .map(|row| row.iter().map(|s| s.qfi).collect())
        .collect();
    respond(&GridResponse {
        temperatures: grid.temperatures,
        times: grid.times,
        qfi,
    })
}

pub fn opt_time(request: &str) -> Result<String, String> {
    let req: OptTimeRequest = parse(request)?;
    if req.temp_points == 0 {
        return Err("temp_points must be at least 1".into());
    }
    let fixed = req.bath.fixed()?;
    let temperatures = linspace(req.temp_range.0, req.temp_range.1, req.temp_points);
    let mut t_star = Vec::with_capacity(temperatures.len());
    let mut qfi_star = Vec::with_capacity(temperatures.len());
    for &temp in &temperatures {
        let res = optimal_time(temp, req.bath.estimand, &fixed, req.t_max, &config()).map_err(|e| e.to_string())?;
        t_star.push(res.t_star);
        qfi_star.push(res.qfi_star);
    }
    respond(&OptTimeResponse {
        temperatures,
        t_star,
        qfi_star,
    })
}

fn to_js(result: Result<String, String>) -> Result<String, JsError> {
    result.map_err(|e| JsError::new(&e))
}

/// QFI and Γ along one axis.
#[wasm_bindgen(js_name = qfiCurve)]
pub fn qfi_curve(request: &str) -> Result<String, JsError> {
    to_js(curve(request))
}

/// QFI over a (T, t) grid.
#[wasm_bindgen(js_name = qfiGrid)]
pub fn qfi_grid(request: &str) -> Result<String, JsError> {
    to_js(grid(request))
}

/// Optimal interaction time against temperature.
#[wasm_bindgen(js_name = optimalTimeCurve)]
pub fn optimal_time_curve(request: &str) -> Result<String, JsError> {
    to_js(opt_time(request))
}
