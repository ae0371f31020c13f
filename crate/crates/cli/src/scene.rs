//! Scene files: named fuzzy points, the pairs to analyse, and sampling grids.

use std::collections::HashMap;

use fuzgeo_core::{BBox, FuzzyPoint, Point2, Spread};
use serde::{Deserialize, Serialize};

use crate::commands::Command;
use crate::error::CliError;

pub const DEFAULT_ALPHA_LEVELS: usize = 101;
pub const DEFAULT_THETA_SAMPLES: usize = 10_000;
pub const DEFAULT_RESOLUTION: usize = 512;
pub const MIN_RESOLUTION: usize = 16;

/// The on-disk schema, before validation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub points: Vec<PointSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub analyses: Vec<Command>,
    #[serde(default)]
    pub grids: GridSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub t: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub name: String,
    pub core: [f64; 2],
    pub spread: SpreadSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpreadSpec {
    pub kind: SpreadKindSpec,
    #[serde(default)]
    pub radii: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpreadKindSpec {
    Circular,
    Elliptical,
    Crisp,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_levels: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_samples: Option<usize>,
    /// `[xmin, xmax, ymin, ymax]`; derived from the supports when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bbox: Option<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct NamedPoint {
    pub name: String,
    pub point: FuzzyPoint,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Grids {
    pub alpha_levels: usize,
    pub theta_samples: usize,
    pub bbox: Option<BBox>,
    pub resolution: usize,
}

/// A validated scene with defaults filled in.
#[derive(Clone, Debug)]
pub struct Scene {
    pub points: Vec<NamedPoint>,
    /// Indices into `points`.
    pub pairs: Vec<(usize, usize)>,
    pub analyses: Vec<Command>,
    pub grids: Grids,
    pub t: Vec<f64>,
}

impl Scene {
    pub fn pair_names(&self, pair: (usize, usize)) -> (&str, &str) {
        (&self.points[pair.0].name, &self.points[pair.1].name)
    }
}

pub fn parse_scene(text: &str) -> Result<Scene, CliError> {
    let file: SceneFile = serde_json::from_str(text).map_err(CliError::from_json)?;
    validate(file)
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

pub fn validate(file: SceneFile) -> Result<Scene, CliError> {
    if file.points.is_empty() {
        return Err(invalid("scene has no points"));
    }
    let mut index = HashMap::new();
    let mut points = Vec::with_capacity(file.points.len());
    for spec in &file.points {
        let name = &spec.name;
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            return Err(invalid(format!("point name {name:?} must be non-empty ASCII letters, digits, '_' or '-'")));
        }
        if index.insert(name.clone(), points.len()).is_some() {
            return Err(invalid(format!("duplicate point name {name:?}")));
        }
        let point = build_point(spec).map_err(|e| invalid(format!("point {name:?}: {e}")))?;
        points.push(NamedPoint { name: name.clone(), point });
    }

    let lookup =
        |n: &str| index.get(n).copied().ok_or_else(|| invalid(format!("pair references undefined point {n:?}")));
    let pairs = if file.pairs.is_empty() {
        if points.len() < 2 {
            return Err(invalid("a scene without pairs needs at least two points"));
        }
        vec![(0, 1)]
    } else {
        file.pairs.iter().map(|[a, b]| Ok((lookup(a)?, lookup(b)?))).collect::<Result<_, CliError>>()?
    };

    let g = &file.grids;
    let bbox = g
        .bbox
        .map(|[x0, x1, y0, y1]| BBox::new(x0, x1, y0, y1))
        .transpose()
        .map_err(|e| invalid(format!("grids.bbox: {e}")))?;
    let grids = Grids {
        alpha_levels: g.alpha_levels.unwrap_or(DEFAULT_ALPHA_LEVELS),
        theta_samples: g.theta_samples.unwrap_or(DEFAULT_THETA_SAMPLES),
        bbox,
        resolution: g.resolution.unwrap_or(DEFAULT_RESOLUTION),
    };
    check_grids(&grids)?;
    check_scales(&file.t)?;

    Ok(Scene { points, pairs, analyses: file.analyses, grids, t: file.t })
}

pub(crate) fn check_grids(grids: &Grids) -> Result<(), CliError> {
    if grids.alpha_levels < 2 {
        return Err(invalid(format!("alpha_levels must be at least 2, got {}", grids.alpha_levels)));
    }
    if grids.theta_samples < 4 {
        return Err(invalid(format!("theta_samples must be at least 4, got {}", grids.theta_samples)));
    }
    if grids.resolution < MIN_RESOLUTION {
        return Err(invalid(format!("resolution must be at least {MIN_RESOLUTION}, got {}", grids.resolution)));
    }
    Ok(())
}

pub(crate) fn check_scales(t: &[f64]) -> Result<(), CliError> {
    match t.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        Some(v) => Err(invalid(format!("scale t must be positive and finite, got {v}"))),
        None => Ok(()),
    }
}

fn build_point(spec: &PointSpec) -> Result<FuzzyPoint, String> {
    let [x, y] = spec.core;
    let radii = &spec.spread.radii;
    if let Some(r) = radii.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        return Err(format!("radius {r} must be positive and finite"));
    }
    let spread = match (spec.spread.kind, radii.as_slice()) {
        (SpreadKindSpec::Circular, [r]) => Spread::circular(*r),
        (SpreadKindSpec::Circular, [p1, p2]) if p1 == p2 => Spread::circular(*p1),
        (SpreadKindSpec::Circular, [p1, p2]) => Err(fuzgeo_core::Error::UnequalCircularRadii { p1: *p1, p2: *p2 }),
        (SpreadKindSpec::Circular, r) => {
            return Err(format!("circular spread takes one or two equal radii, got {}", r.len()))
        }
        (SpreadKindSpec::Elliptical, [p1, p2]) => Spread::elliptical(*p1, *p2),
        (SpreadKindSpec::Elliptical, r) => return Err(format!("elliptical spread takes two radii, got {}", r.len())),
        (SpreadKindSpec::Crisp, []) => Ok(Spread::crisp()),
        (SpreadKindSpec::Crisp, _) => return Err("crisp spread takes no radii".into()),
    }
    .map_err(|e| e.to_string())?;
    FuzzyPoint::new(Point2::new(x, y), spread).map_err(|e| e.to_string())
}
