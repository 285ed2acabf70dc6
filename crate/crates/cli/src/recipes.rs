//! Named flag presets that regenerate each figure panel.
//!
//! A recipe fills in every flag of one panel. Panels that overlay several
//! curves take the first curve value by default; the remaining values are
//! listed in `curves` and are selected by passing that flag explicitly.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use squeezed_qfi::{Axis, Estimand};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecipeKind {
    Sweep,
    Grid,
    OptTime,
}

impl RecipeKind {
    pub fn command(&self) -> &'static str {
        match self {
            RecipeKind::Sweep => "sweep",
            RecipeKind::Grid => "grid",
            RecipeKind::OptTime => "opt-time",
        }
    }
}

/// Flag values supplied by a recipe; `None` leaves the flag to the user.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Preset {
    pub estimand: Option<Estimand>,
    pub axis: Option<Axis>,
    pub range: Option<(f64, f64)>,
    pub points: Option<usize>,
    pub temp: Option<f64>,
    pub time: Option<f64>,
    pub r: Option<f64>,
    pub theta: Option<f64>,
    pub s: Option<f64>,
    pub t_range: Option<(f64, f64)>,
    pub temp_range: Option<(f64, f64)>,
    pub t_points: Option<usize>,
    pub temp_points: Option<usize>,
    pub t_max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Recipe {
    pub name: String,
    pub kind: RecipeKind,
    pub preset: Preset,
    /// Flag varied across the overlaid curves, and its values.
    pub curves: Option<(&'static str, Vec<f64>)>,
}

const AMPLITUDES: [f64; 3] = [0.1, 0.8, 1.5];
const PHASES: [f64; 3] = [0.0, FRAC_PI_2, PI];
const TEMPERATURES: [f64; 3] = [0.1, 0.8, 1.5];

fn ohmicity_for(figure: u32) -> Option<f64> {
    match figure {
        1 | 2 | 7 => Some(0.5),
        3 | 4 | 8 => Some(1.0),
        5 | 6 | 9 => Some(3.0),
        _ => None,
    }
}

/// T- and t-sweeps of the temperature QFI (figures 1, 3, 5).
fn thermometry_panel(s: f64, panel: char) -> Option<(Preset, (&'static str, Vec<f64>))> {
    let base = Preset {
        estimand: Some(Estimand::Temperature),
        points: Some(200),
        s: Some(s),
        ..Default::default()
    };
    let temp_axis = Preset {
        axis: Some(Axis::Temperature),
        range: Some((0.01, 3.0)),
        time: Some(1.0),
        ..base
    };
    let time_axis = Preset {
        axis: Some(Axis::Time),
        range: Some((0.0, 10.0)),
        temp: Some(0.5),
        ..base
    };
    Some(match panel {
        'a' => (
            Preset {
                theta: Some(1.0),
                r: Some(AMPLITUDES[0]),
                ..temp_axis
            },
            ("r", AMPLITUDES.to_vec()),
        ),
        'b' => (
            Preset {
                r: Some(0.1),
                theta: Some(PHASES[0]),
                ..temp_axis
            },
            ("theta", PHASES.to_vec()),
        ),
        'c' => (
            Preset {
                theta: Some(1.0),
                r: Some(AMPLITUDES[0]),
                ..time_axis
            },
            ("r", AMPLITUDES.to_vec()),
        ),
        'd' => (
            Preset {
                r: Some(0.1),
                theta: Some(PHASES[0]),
                ..time_axis
            },
            ("theta", PHASES.to_vec()),
        ),
        _ => return None,
    })
}

/// r- and θ-sweeps of the squeezing QFIs (figures 2, 4, 6).
fn squeezing_panel(s: f64, panel: char) -> Option<(Preset, (&'static str, Vec<f64>))> {
    let base = Preset {
        points: Some(200),
        s: Some(s),
        time: Some(1.0),
        ..Default::default()
    };
    let amplitude = Preset {
        estimand: Some(Estimand::SqueezeAmplitude),
        axis: Some(Axis::SqueezeAmplitude),
        range: Some((0.0, 2.0)),
        ..base
    };
    let phase = Preset {
        estimand: Some(Estimand::SqueezePhase),
        axis: Some(Axis::SqueezePhase),
        range: Some((0.0, TAU)),
        ..base
    };
    Some(match panel {
        'a' => (
            Preset {
                theta: Some(1.0),
                temp: Some(TEMPERATURES[0]),
                ..amplitude
            },
            ("temp", TEMPERATURES.to_vec()),
        ),
        'b' => (
            Preset {
                temp: Some(0.5),
                theta: Some(PHASES[0]),
                ..amplitude
            },
            ("theta", PHASES.to_vec()),
        ),
        'c' => (
            Preset {
                temp: Some(0.5),
                r: Some(AMPLITUDES[0]),
                ..phase
            },
            ("r", AMPLITUDES.to_vec()),
        ),
        'd' => (
            Preset {
                r: Some(0.1),
                temp: Some(TEMPERATURES[0]),
                ..phase
            },
            ("temp", TEMPERATURES.to_vec()),
        ),
        _ => return None,
    })
}

/// (t, T) density grids (figures 7, 8, 9); panels pair r and θ.
fn grid_panel(s: f64, panel: char) -> Option<Preset> {
    let (r, theta) = match panel {
        'a' => (0.1, 1.0),
        'b' => (1.5, 1.0),
        'c' => (0.1, PI),
        'd' => (1.5, PI),
        _ => return None,
    };
    Some(Preset {
        estimand: Some(Estimand::Temperature),
        s: Some(s),
        r: Some(r),
        theta: Some(theta),
        t_range: Some((0.0, 10.0)),
        temp_range: Some((0.01, 3.0)),
        t_points: Some(50),
        temp_points: Some(50),
        ..Default::default()
    })
}

/// Look up a recipe by name, e.g. `fig1a`, `fig7c` or `fig10`.
pub fn lookup(name: &str) -> Option<Recipe> {
    let rest = name.strip_prefix("fig")?;
    if rest == "10" {
        return Some(Recipe {
            name: name.to_string(),
            kind: RecipeKind::OptTime,
            preset: Preset {
                estimand: Some(Estimand::Temperature),
                temp_range: Some((0.2, 2.0)),
                temp_points: Some(40),
                theta: Some(FRAC_PI_2),
                r: Some(0.5),
                s: Some(0.5),
                t_max: Some(20.0),
                ..Default::default()
            },
            curves: Some(("s", vec![0.5, 1.0, 3.0])),
        });
    }
    let mut chars = rest.chars();
    let figure = chars.next()?.to_digit(10)?;
    let panel = chars.next()?;
    if chars.next().is_some() {
        return None;
    }
    let s = ohmicity_for(figure)?;
    let (kind, preset, curves) = match figure {
        1 | 3 | 5 => {
            let (p, c) = thermometry_panel(s, panel)?;
            (RecipeKind::Sweep, p, Some(c))
        }
        2 | 4 | 6 => {
            let (p, c) = squeezing_panel(s, panel)?;
            (RecipeKind::Sweep, p, Some(c))
        }
        _ => (RecipeKind::Grid, grid_panel(s, panel)?, None),
    };
    Some(Recipe {
        name: name.to_string(),
        kind,
        preset,
        curves,
    })
}

/// Every recipe name, in figure order.
pub fn all_names() -> Vec<String> {
    let mut names = Vec::new();
    for fig in 1..=9 {
        for panel in ['a', 'b', 'c', 'd'] {
            names.push(format!("fig{fig}{panel}"));
        }
    }
    names.push("fig10".to_string());
    names
}
