//! One-dimensional sweeps, (t, T) density grids and the optimal-time search.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decoherence::QuadratureConfig;
use crate::error::{Error, Result};
use crate::probe_state::ProbeInit;
use crate::qfi::{qfi_point, Estimand, QfiSample};
use crate::spectral_bath::{BathPoint, SpectralParams, SqueezeParams};

/// Input varied along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    #[serde(rename = "T")]
    Temperature,
    #[serde(rename = "t")]
    Time,
    #[serde(rename = "r")]
    SqueezeAmplitude,
    #[serde(rename = "theta")]
    SqueezePhase,
    #[serde(rename = "alpha")]
    Alpha,
}

impl Axis {
    pub fn label(&self) -> &'static str {
        match self {
            Axis::Temperature => "T",
            Axis::Time => "t",
            Axis::SqueezeAmplitude => "r",
            Axis::SqueezePhase => "theta",
            Axis::Alpha => "alpha",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" => Ok(Axis::Temperature),
            "t" => Ok(Axis::Time),
            "r" => Ok(Axis::SqueezeAmplitude),
            "theta" => Ok(Axis::SqueezePhase),
            "alpha" => Ok(Axis::Alpha),
            other => Err(Error::domain(format!(
                "unknown axis '{other}', expected one of T, t, r, theta, alpha"
            ))),
        }
    }
}

/// The inputs held fixed while something else varies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedInputs {
    pub point: BathPoint,
    pub squeeze: SqueezeParams,
    pub spectral: SpectralParams,
    pub probe: ProbeInit,
}

impl FixedInputs {
    /// Replace one input by `value`, validating it against its domain.
    pub fn with_axis(&self, axis: Axis, value: f64) -> Result<Self> {
        let mut out = *self;
        match axis {
            Axis::Temperature => out.point = BathPoint::new(value, self.point.time())?,
            Axis::Time => out.point = BathPoint::new(self.point.temperature(), value)?,
            Axis::SqueezeAmplitude => out.squeeze = SqueezeParams::new(value, self.squeeze.theta())?,
            Axis::SqueezePhase => out.squeeze = SqueezeParams::new(self.squeeze.r(), value)?,
            Axis::Alpha => out.probe = ProbeInit::new(value)?,
        }
        Ok(out)
    }

    pub fn evaluate(&self, estimand: Estimand, qc: &QuadratureConfig) -> Result<QfiSample> {
        qfi_point(estimand, &self.point, &self.squeeze, &self.spectral, &self.probe, qc)
    }
}

fn check_range(name: &str, range: (f64, f64), points: usize) -> Result<()> {
    let (lo, hi) = range;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::domain(format!("{name} range needs lo < hi, got {lo}:{hi}")));
    }
    if points < 2 {
        return Err(Error::domain(format!("{name} needs at least 2 points, got {points}")));
    }
    Ok(())
}

/// Equally spaced values including both end points.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (points - 1) as f64;
    (0..points)
        .map(|i| if i + 1 == points { hi } else { lo + step * i as f64 })
        .collect()
}

#[cfg(feature = "parallel")]
fn map_points<T, F>(values: &[f64], f: F) -> Vec<Result<T>>
where
    T: Send,
    F: Fn(f64) -> Result<T> + Sync + Send,
{
    use rayon::prelude::*;
    values.par_iter().map(|&v| f(v)).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_points<T, F>(values: &[f64], f: F) -> Vec<Result<T>>
where
    F: Fn(f64) -> Result<T>,
{
    values.iter().map(|&v| f(v)).collect()
}

fn at_point(axis: &str, value: f64) -> impl FnOnce(Error) -> Error + '_ {
    move |e| Error::AtPoint {
        axis: axis.to_string(),
        value,
        source: Box::new(e),
    }
}

/// One-dimensional sweep request.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub estimand: Estimand,
    pub axis: Axis,
    pub range: (f64, f64),
    pub points: usize,
    pub fixed: FixedInputs,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        check_range(self.axis.label(), self.range, self.points)?;
        // both ends must be legal values of the axis variable
        self.fixed.with_axis(self.axis, self.range.0)?;
        self.fixed.with_axis(self.axis, self.range.1)?;
        if self.estimand == Estimand::Temperature && self.axis == Axis::Temperature && self.range.0 <= 0.0 {
            return Err(Error::domain("temperature sweeps of the T-QFI must start above T = 0"));
        }
        Ok(())
    }
}

/// Provenance recorded alongside every table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableMetadata {
    pub tool_version: String,
    pub quadrature: QuadratureConfig,
    /// Wall-clock stamp filled in by front ends; not part of the data.
    pub timestamp: Option<String>,
}

impl TableMetadata {
    pub fn new(qc: &QuadratureConfig) -> Self {
        Self {
            tool_version: crate::VERSION.to_string(),
            quadrature: *qc,
            timestamp: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    pub gamma: f64,
    pub dgamma: f64,
    pub qfi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
    pub metadata: TableMetadata,
}

impl SweepTable {
    /// Row with the largest QFI; the first one on ties.
    pub fn argmax(&self) -> Option<&SweepRow> {
        self.rows.iter().fold(None, |best: Option<&SweepRow>, row| match best {
            Some(b) if b.qfi >= row.qfi => Some(b),
            _ => Some(row),
        })
    }

    /// Indices of strict interior local maxima of the QFI column.
    pub fn interior_maxima(&self) -> Vec<usize> {
        let q: Vec<f64> = self.rows.iter().map(|r| r.qfi).collect();
        (1..q.len().saturating_sub(1))
            .filter(|&i| q[i] > q[i - 1] && q[i] >= q[i + 1])
            .collect()
    }
}

/// Evaluate the QFI at `points` equally spaced values of the sweep axis.
pub fn sweep(spec: &SweepSpec, qc: &QuadratureConfig) -> Result<SweepTable> {
    spec.validate()?;
    qc.validate()?;
    let values = linspace(spec.range.0, spec.range.1, spec.points);
    let label = spec.axis.label();
    let rows = map_points(&values, |v| {
        let sample = spec
            .fixed
            .with_axis(spec.axis, v)
            .and_then(|fixed| fixed.evaluate(spec.estimand, qc))
            .map_err(at_point(label, v))?;
        Ok(SweepRow {
            value: v,
            gamma: sample.gamma,
            dgamma: sample.dgamma,
            qfi: sample.qfi,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        spec: *spec,
        rows,
        metadata: TableMetadata::new(qc),
    })
}

/// Two-dimensional (t, T) grid request.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub estimand: Estimand,
    pub t_range: (f64, f64),
    pub temp_range: (f64, f64),
    pub t_points: usize,
    pub temp_points: usize,
    pub fixed: FixedInputs,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        check_range("t", self.t_range, self.t_points)?;
        check_range("T", self.temp_range, self.temp_points)?;
        if self.t_range.0 < 0.0 {
            return Err(Error::domain("t range must not start below 0"));
        }
        if self.temp_range.0 < 0.0 {
            return Err(Error::domain("T range must not start below 0"));
        }
        if self.estimand == Estimand::Temperature && self.temp_range.0 <= 0.0 {
            return Err(Error::domain("T-QFI grids must start above T = 0"));
        }
        Ok(())
    }
}

/// Row-major grid of samples: temperature outer, time inner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityGrid {
    pub spec: GridSpec,
    pub temperatures: Vec<f64>,
    pub times: Vec<f64>,
    pub samples: Vec<QfiSample>,
    pub metadata: TableMetadata,
}

impl DensityGrid {
    pub fn at(&self, temp_index: usize, time_index: usize) -> &QfiSample {
        &self.samples[temp_index * self.times.len() + time_index]
    }
}

pub fn density_grid(spec: &GridSpec, qc: &QuadratureConfig) -> Result<DensityGrid> {
    spec.validate()?;
    qc.validate()?;
    let temperatures = linspace(spec.temp_range.0, spec.temp_range.1, spec.temp_points);
    let times = linspace(spec.t_range.0, spec.t_range.1, spec.t_points);
    let flat: Vec<f64> = (0..temperatures.len() * times.len()).map(|k| k as f64).collect();
    let nt = times.len();
    let samples = map_points(&flat, |k| {
        let k = k as usize;
        let (temp, t) = (temperatures[k / nt], times[k % nt]);
        BathPoint::new(temp, t)
            .and_then(|point| FixedInputs { point, ..spec.fixed }.evaluate(spec.estimand, qc))
            .map_err(|e| Error::AtPoint {
                axis: format!("t (at T = {temp})"),
                value: t,
                source: Box::new(e),
            })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(DensityGrid {
        spec: *spec,
        temperatures,
        times,
        samples,
        metadata: TableMetadata::new(qc),
    })
}

/// Controls for [`optimal_time`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeSearch {
    pub coarse_points: usize,
    /// Golden-section stops once the bracket is narrower than this times t_max.
    pub rel_bracket: f64,
}

impl Default for TimeSearch {
    fn default() -> Self {
        Self {
            coarse_points: 64,
            rel_bracket: 1e-4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimalTimeResult {
    pub temperature: f64,
    pub t_star: f64,
    pub qfi_star: f64,
    /// Width of the final golden-section bracket.
    pub bracket: f64,
    /// The coarse scan found no variation; t_star and qfi_star are then 0.
    pub flat: bool,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Interaction time in [0, t_max] that maximizes the QFI at `temperature`.
///
/// A coarse scan brackets the global maximum (the squeeze kernel can make
/// QFI(t) multi-modal), then golden-section search refines inside the
/// bracket. Ties go to the smallest t.
pub fn optimal_time(
    temperature: f64,
    estimand: Estimand,
    fixed: &FixedInputs,
    t_max: f64,
    qc: &QuadratureConfig,
) -> Result<OptimalTimeResult> {
    optimal_time_with(temperature, estimand, fixed, t_max, qc, &TimeSearch::default())
}

pub fn optimal_time_with(
    temperature: f64,
    estimand: Estimand,
    fixed: &FixedInputs,
    t_max: f64,
    qc: &QuadratureConfig,
    search: &TimeSearch,
) -> Result<OptimalTimeResult> {
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::domain(format!("t_max must be > 0, got {t_max}")));
    }
    if estimand == Estimand::Temperature && !(temperature > 0.0) {
        return Err(Error::domain("optimal time for the T-QFI requires T > 0"));
    }
    if search.coarse_points < 3 {
        return Err(Error::domain("coarse scan needs at least 3 points"));
    }
    qc.validate()?;
    let base = fixed.with_axis(Axis::Temperature, temperature)?;
    let qfi_at = |t: f64| -> Result<f64> {
        base.with_axis(Axis::Time, t)?
            .evaluate(estimand, qc)
            .map(|s| s.qfi)
            .map_err(at_point("t", t))
    };

    let grid = linspace(0.0, t_max, search.coarse_points);
    let coarse = map_points(&grid, qfi_at).into_iter().collect::<Result<Vec<_>>>()?;
    let (mut best_idx, mut best) = (0usize, coarse[0]);
    for (i, &q) in coarse.iter().enumerate() {
        if q > best {
            best_idx = i;
            best = q;
        }
    }
    let lowest = coarse.iter().copied().fold(f64::INFINITY, f64::min);
    if best - lowest < 1e-14 {
        return Ok(OptimalTimeResult {
            temperature,
            t_star: 0.0,
            qfi_star: 0.0,
            bracket: t_max,
            flat: true,
        });
    }

    let mut a = grid[best_idx.saturating_sub(1)];
    let mut b = grid[(best_idx + 1).min(grid.len() - 1)];
    let target = search.rel_bracket * t_max;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = qfi_at(c)?;
    let mut fd = qfi_at(d)?;
    while b - a > target {
        // >= keeps the left point on ties
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = qfi_at(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = qfi_at(d)?;
        }
    }
    let refined = if fc >= fd { c } else { d };
    let refined_q = qfi_at(refined)?;

    let (t_star, qfi_star) = if refined_q >= best {
        (refined, refined_q)
    } else {
        (grid[best_idx], best)
    };
    Ok(OptimalTimeResult {
        temperature,
        t_star,
        qfi_star,
        bracket: b - a,
        flat: false,
    })
}
