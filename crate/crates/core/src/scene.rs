//! JSON scene files.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "epsilon": 0.5,
//!   "bounds": [[-5, -5], [5, 5]],
//!   "charges": [{ "position": [0, 0], "omega": ["1pi", "2pi"] }],
//!   "rays": [{ "origin": [-4, -4], "direction": [1, 1] }]
//! }
//! ```
//!
//! Charges may be plain radians or `"<k>pi"` literals; they are reduced on
//! load. Ray directions are normalized on load.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geodesics::{Bounds, ChargedPoint, Ray, Scene};
use crate::omega::OmegaValue;

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("missing key `{0}`")]
    MissingKey(String),

    #[error("malformed scene JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{entry}: expected {expected} values, got {actual}")]
    Arity {
        entry: String,
        expected: usize,
        actual: usize,
    },

    #[error("{entry}: cannot parse angle literal `{text}`")]
    BadAngle { entry: String, text: String },

    #[error("charges {first} and {second} lie within epsilon of each other")]
    ChargesWithinEpsilon { first: usize, second: usize },

    #[error("rays[{0}].direction is the zero vector")]
    ZeroDirection(usize),

    #[error("{entry}: {source}")]
    Invalid { entry: String, source: crate::Error },
}

/// Either radians or a `"<k>pi"` literal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AngleLiteral {
    Radians(f64),
    Text(String),
}

impl AngleLiteral {
    pub fn radians(&self) -> Option<f64> {
        match self {
            AngleLiteral::Radians(x) => Some(*x),
            AngleLiteral::Text(s) => parse_angle(s),
        }
    }
}

/// Parse `"1.5pi"`, `"-pi"`, `"2*pi"`, `"3π"` or a plain number of radians.
pub fn parse_angle(text: &str) -> Option<f64> {
    let t = text.trim().to_ascii_lowercase();
    let stem = t.strip_suffix("pi").or_else(|| t.strip_suffix('π'));
    match stem {
        Some(k) => {
            let k = k.trim().trim_end_matches('*').trim();
            let coeff = match k {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => k.parse::<f64>().ok()?,
            };
            coeff.is_finite().then_some(coeff * PI)
        }
        None => t.parse::<f64>().ok().filter(|x| x.is_finite()),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ChargeEntry {
    position: Vec<f64>,
    omega: Vec<AngleLiteral>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RayEntry {
    origin: Vec<f64>,
    direction: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SceneFile {
    dimension: usize,
    epsilon: f64,
    bounds: Vec<Vec<f64>>,
    #[serde(default)]
    charges: Vec<ChargeEntry>,
    #[serde(default)]
    rays: Vec<RayEntry>,
}

/// A scene together with the rays listed in its file.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedScene {
    pub scene: Scene,
    pub rays: Vec<Ray>,
}

fn arity(entry: String, expected: usize, actual: usize) -> Result<(), SceneError> {
    if expected == actual {
        Ok(())
    } else {
        Err(SceneError::Arity {
            entry,
            expected,
            actual,
        })
    }
}

pub fn parse_scene(text: &str) -> Result<LoadedScene, SceneError> {
    let file: SceneFile = serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        match msg
            .strip_prefix("missing field `")
            .and_then(|r| r.split('`').next())
        {
            Some(key) => SceneError::MissingKey(key.to_string()),
            None => SceneError::Json(e),
        }
    })?;
    let n = file.dimension;
    let invalid = |entry: &str| {
        let entry = entry.to_string();
        move |source| SceneError::Invalid { entry, source }
    };
    if n < 2 {
        return Err(SceneError::Invalid {
            entry: "dimension".into(),
            source: crate::Error::Dimension(n),
        });
    }

    arity("bounds".into(), 2, file.bounds.len())?;
    arity("bounds[0]".into(), n, file.bounds[0].len())?;
    arity("bounds[1]".into(), n, file.bounds[1].len())?;
    let bounds =
        Bounds::new(file.bounds[0].clone(), file.bounds[1].clone()).map_err(invalid("bounds"))?;

    let mut charges = Vec::with_capacity(file.charges.len());
    for (i, c) in file.charges.iter().enumerate() {
        arity(format!("charges[{i}].position"), n, c.position.len())?;
        arity(format!("charges[{i}].omega"), n, c.omega.len())?;
        let raw = c
            .omega
            .iter()
            .map(|a| {
                a.radians().ok_or_else(|| SceneError::BadAngle {
                    entry: format!("charges[{i}].omega"),
                    text: match a {
                        AngleLiteral::Text(s) => s.clone(),
                        AngleLiteral::Radians(x) => x.to_string(),
                    },
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        let omega = OmegaValue::reduce(&raw).map_err(invalid(&format!("charges[{i}].omega")))?;
        charges.push(ChargedPoint {
            position: c.position.clone(),
            omega,
        });
    }

    let mut rays = Vec::with_capacity(file.rays.len());
    for (i, r) in file.rays.iter().enumerate() {
        arity(format!("rays[{i}].origin"), n, r.origin.len())?;
        arity(format!("rays[{i}].direction"), n, r.direction.len())?;
        let len = r.direction.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len == 0.0 {
            return Err(SceneError::ZeroDirection(i));
        }
        if !len.is_finite() {
            return Err(SceneError::Invalid {
                entry: format!("rays[{i}].direction"),
                source: crate::Error::NotUnit { norm: len },
            });
        }
        if !bounds.contains(&r.origin) {
            return Err(SceneError::Invalid {
                entry: format!("rays[{i}].origin"),
                source: crate::Error::OriginOutsideBounds(r.origin.clone()),
            });
        }
        // unit directions are kept bit-exact
        let direction = if (len - 1.0).abs() <= 4.0 * f64::EPSILON {
            r.direction.clone()
        } else {
            r.direction.iter().map(|x| x / len).collect()
        };
        rays.push(Ray {
            origin: r.origin.clone(),
            direction,
        });
    }

    let scene = Scene::new(n, charges, file.epsilon, bounds).map_err(|e| match e {
        crate::Error::ChargesTooClose { first, second } => {
            SceneError::ChargesWithinEpsilon { first, second }
        }
        other => SceneError::Invalid {
            entry: "scene".into(),
            source: other,
        },
    })?;
    Ok(LoadedScene { scene, rays })
}

pub fn load_scene(path: impl AsRef<Path>) -> Result<LoadedScene, SceneError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| SceneError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_scene(&text)
}

/// Serialize a scene back to the file format, with reduced charges in radians.
pub fn scene_to_json(scene: &Scene, rays: &[Ray]) -> String {
    let file = SceneFile {
        dimension: scene.dimension(),
        epsilon: scene.epsilon(),
        bounds: vec![scene.bounds().min.clone(), scene.bounds().max.clone()],
        charges: scene
            .charges()
            .iter()
            .map(|c| ChargeEntry {
                position: c.position.clone(),
                omega: c
                    .omega
                    .components()
                    .iter()
                    .map(|&w| AngleLiteral::Radians(w))
                    .collect(),
            })
            .collect(),
        rays: rays
            .iter()
            .map(|r| RayEntry {
                origin: r.origin.clone(),
                direction: r.direction.clone(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("scene serializes");
    s.push('\n');
    s
}
