//! Analyses over scene pairs and the artifacts they write.

use std::f64::consts::TAU;
use std::fs;
use std::path::{Path, PathBuf};

use fuzgeo_core::{
    accepted_branch, alpha_thresholds, classify_conic, closeness_spread, compute_midset, conic_coefficients,
    default_bbox, distance_alpha, endpoint_distances, fuzzy_distance, fuzzy_hausdorff, invariance_check, metric_md,
    overlap_case, AlphaGrid, FuzzyPoint, ProjectedFuzzyNumber,
};
use serde::{Deserialize, Serialize};

use crate::emit::{self, json, num, nums, Cell, Csv};
use crate::error::CliError;
use crate::scene::{check_grids, check_scales, Scene};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Distance,
    MetricCurve,
    Hausdorff,
    Midset,
    Classify,
    Invariance,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Distance => "distance",
            Command::MetricCurve => "metric-curve",
            Command::Hausdorff => "hausdorff",
            Command::Midset => "midset",
            Command::Classify => "classify",
            Command::Invariance => "invariance",
        }
    }

    fn formats(self) -> &'static [Format] {
        match self {
            Command::Distance => &[Format::Json, Format::Csv],
            Command::MetricCurve => &[Format::Csv, Format::Json],
            Command::Hausdorff | Command::Classify | Command::Invariance => &[Format::Json],
            Command::Midset => &[Format::Csv, Format::Svg, Format::Json],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        }
    }

    fn of(file: &str) -> Format {
        if file.ends_with(".csv") {
            Format::Csv
        } else if file.ends_with(".svg") {
            Format::Svg
        } else {
            Format::Json
        }
    }
}

/// Command-line overrides of the scene settings.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub alpha_levels: Option<usize>,
    pub resolution: Option<usize>,
    pub t: Option<Vec<f64>>,
    /// Restricts output to one format; every format the command supports is
    /// written when absent.
    pub format: Option<Format>,
}

/// Scales probed by `metric-curve` when neither the scene nor the command
/// line supplies any: ten per decade over `[1e-4, 1e4]`.
pub fn default_curve_scales() -> Vec<f64> {
    (0..=80).map(|k| 10f64.powf(-4.0 + k as f64 / 10.0)).collect()
}

pub const DEFAULT_INVARIANCE_SCALES: [f64; 3] = [0.5, 1.0, 10.0];

struct Ctx<'a> {
    scene: &'a Scene,
    alpha: AlphaGrid,
    resolution: usize,
    t: Option<Vec<f64>>,
}

type Artifact = (String, String);

/// Runs `command` on every pair of the scene and writes its artifacts into
/// `out`, which is created if needed. Returns the written paths in order.
pub fn run(command: Command, scene: &Scene, options: &Options, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    if let Some(f) = options.format {
        if !command.formats().contains(&f) {
            return Err(CliError::Usage(format!("{} does not produce {} output", command.name(), f.name())));
        }
    }
    let mut grids = scene.grids.clone();
    grids.alpha_levels = options.alpha_levels.unwrap_or(grids.alpha_levels);
    grids.resolution = options.resolution.unwrap_or(grids.resolution);
    check_grids(&grids)?;
    let t = options.t.clone().or_else(|| (!scene.t.is_empty()).then(|| scene.t.clone()));
    if let Some(t) = &t {
        if t.is_empty() {
            return Err(CliError::Validation("empty list of scales t".into()));
        }
        check_scales(t)?;
    }
    let ctx = Ctx {
        scene,
        alpha: AlphaGrid::uniform(grids.alpha_levels).map_err(|e| CliError::from_core("alpha grid", e))?,
        resolution: grids.resolution,
        t,
    };

    let mut artifacts = Vec::new();
    for &pair in &scene.pairs {
        let (na, nb) = scene.pair_names(pair);
        let (a, b) = (&scene.points[pair.0].point, &scene.points[pair.1].point);
        let stem = format!("{na}_{nb}");
        let context = format!("{} {na} {nb}", command.name());
        let produced = match command {
            Command::Distance => distance(&ctx, a, b, [na, nb], &stem),
            Command::MetricCurve => metric_curve(&ctx, a, b, [na, nb], &stem),
            Command::Hausdorff => hausdorff(a, b, [na, nb], &stem),
            Command::Midset => midset(&ctx, a, b, [na, nb], &stem, options.format),
            Command::Classify => classify(&ctx, a, b, [na, nb], &stem),
            Command::Invariance => invariance(&ctx, a, b, [na, nb], &stem),
        }
        .map_err(|e| match e {
            Failure::Core(e) => CliError::from_core(&context, e),
            Failure::Cli(e) => e,
        })?;
        artifacts.extend(produced);
    }

    fs::create_dir_all(out).map_err(|source| CliError::Output { path: out.to_path_buf(), source })?;
    let mut written = Vec::new();
    for (file, text) in artifacts {
        if options.format.is_some_and(|f| f != Format::of(&file)) {
            continue;
        }
        let path = out.join(file);
        fs::write(&path, text).map_err(|source| CliError::Output { path: path.clone(), source })?;
        written.push(path);
    }
    Ok(written)
}

enum Failure {
    Core(fuzgeo_core::Error),
    Cli(CliError),
}

impl From<fuzgeo_core::Error> for Failure {
    fn from(e: fuzgeo_core::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        Failure::Cli(e)
    }
}

type Produced = Result<Vec<Artifact>, Failure>;

fn angle(label: &str, theta: f64) -> Result<f64, CliError> {
    // rounding can land exactly on 2 pi
    let v = num(label, theta.rem_euclid(TAU))?;
    Ok(if v >= emit::round9(TAU) { 0.0 } else { v })
}

fn pair(names: [&str; 2]) -> [String; 2] {
    names.map(str::to_string)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistanceReport {
    pub pair: [String; 2],
    /// `(lower, middle, upper)` of the triangular summary.
    pub triple: [f64; 3],
    pub argmin: f64,
    pub argmax: f64,
    pub alpha_levels: usize,
    pub table: String,
    pub theta_grid: ThetaGridCheck,
}

/// Largest gap between the optimizer and a uniform angle grid over all
/// levels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaGridCheck {
    pub samples: usize,
    pub max_gap: f64,
}

fn distance(ctx: &Ctx, a: &FuzzyPoint, b: &FuzzyPoint, names: [&str; 2], stem: &str) -> Produced {
    let samples = ctx.scene.grids.theta_samples;
    let table = format!("distance_{stem}_alpha.csv");
    let mut csv = Csv::new(&["alpha", "lo", "mid", "hi", "lambda_lo", "argmin", "argmax", "fallback"]);
    let mut gap = 0.0_f64;
    for &alpha in ctx.alpha.levels() {
        let d = distance_alpha(a, b, alpha)?;
        csv.row(
            "distance",
            &[
                Cell::Num(alpha),
                Cell::Num(d.lo),
                Cell::Num(d.mid),
                Cell::Num(d.hi),
                Cell::Num(d.lambda_lo),
                Cell::Num(angle("argmin", d.argmin)?),
                Cell::Num(angle("argmax", d.argmax)?),
                Cell::Bool(d.fallback),
            ],
        )?;
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for k in 0..samples {
            let (l, h) = endpoint_distances(a, b, alpha, TAU * k as f64 / samples as f64)?;
            lo = lo.min(l);
            hi = hi.max(h);
        }
        gap = gap.max((d.lambda_lo - lo).abs()).max((d.hi - hi).abs());
    }
    let zero = distance_alpha(a, b, 0.0)?;
    let report = DistanceReport {
        pair: pair(names),
        triple: nums("distance triple", fuzzy_distance(a, b).triple().to_array())?,
        argmin: angle("argmin", zero.argmin)?,
        argmax: angle("argmax", zero.argmax)?,
        alpha_levels: ctx.alpha.len(),
        table: table.clone(),
        theta_grid: ThetaGridCheck { samples, max_gap: num("theta grid gap", gap)? },
    };
    Ok(vec![(format!("distance_{stem}.json"), json(&report)), (table, csv.finish())])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricCurveRow {
    pub t: f64,
    pub lo: f64,
    pub mid: f64,
    pub hi: f64,
    pub spread: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricCurveReport {
    pub pair: [String; 2],
    pub rows: Vec<MetricCurveRow>,
}

fn metric_curve(ctx: &Ctx, a: &FuzzyPoint, b: &FuzzyPoint, names: [&str; 2], stem: &str) -> Produced {
    let scales = ctx.t.clone().unwrap_or_else(default_curve_scales);
    let mut csv = Csv::new(&["t", "lo", "mid", "hi", "spread"]);
    let mut rows = Vec::new();
    for t in scales {
        let [lo, mid, hi] = nums("closeness", metric_md(a, b, t)?.value.triple().to_array())?;
        let row = MetricCurveRow { t: num("t", t)?, lo, mid, hi, spread: num("spread", closeness_spread(a, b, t)?)? };
        csv.row("closeness", &[Cell::Num(row.t), Cell::Num(lo), Cell::Num(mid), Cell::Num(hi), Cell::Num(row.spread)])?;
        rows.push(row);
    }
    let report = MetricCurveReport { pair: pair(names), rows };
    Ok(vec![(format!("metric_curve_{stem}.csv"), csv.finish()), (format!("metric_curve_{stem}.json"), json(&report))])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineReport {
    /// Coefficients of `a x + b y + c = 0`.
    pub coefficients: [f64; 3],
    pub theta: f64,
    pub anchor: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectedReport {
    pub point: String,
    pub triple: [f64; 3],
    pub core_coordinate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HausdorffReport {
    pub pair: [String; 2],
    pub triple: [f64; 3],
    /// Upper-cut left ends and lower-cut right ends of both projections.
    pub gammas: [f64; 4],
    pub line: LineReport,
    pub projected: [ProjectedReport; 2],
}

fn projected(name: &str, p: &ProjectedFuzzyNumber) -> Result<ProjectedReport, CliError> {
    Ok(ProjectedReport {
        point: name.to_string(),
        triple: nums("projected triple", p.value.triple().to_array())?,
        core_coordinate: num("core coordinate", p.core_coordinate())?,
    })
}

fn hausdorff(a: &FuzzyPoint, b: &FuzzyPoint, names: [&str; 2], stem: &str) -> Produced {
    let h = fuzzy_hausdorff(a, b)?;
    let (la, lb, lc) = h.line.coefficients();
    let anchor = h.line.anchor();
    let report = HausdorffReport {
        pair: pair(names),
        triple: nums("hausdorff triple", h.value.triple().to_array())?,
        gammas: nums("gamma", h.gammas())?,
        line: LineReport {
            coefficients: nums("line", [la, lb, lc])?,
            theta: num("line angle", h.line.theta())?,
            anchor: nums("anchor", [anchor.x, anchor.y])?,
        },
        projected: [projected(names[0], &h.projected.0)?, projected(names[1], &h.projected.1)?],
    };
    Ok(vec![(format!("hausdorff_{stem}.json"), json(&report))])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchReport {
    pub branch: String,
    pub class: String,
    pub polylines: usize,
    pub vertices: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MidsetLevelReport {
    pub alpha: f64,
    pub case: String,
    pub accepted_branch: Option<String>,
    pub file: String,
    pub branches: Vec<BranchReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MidsetReport {
    pub pair: [String; 2],
    /// `[xmin, xmax, ymin, ymax]`.
    pub bbox: [f64; 4],
    pub resolution: usize,
    pub levels: Vec<MidsetLevelReport>,
}

fn midset(ctx: &Ctx, a: &FuzzyPoint, b: &FuzzyPoint, names: [&str; 2], stem: &str, format: Option<Format>) -> Produced {
    let result = compute_midset(a, b, &ctx.alpha, ctx.scene.grids.bbox, ctx.resolution)?;
    let bb = result.bbox;
    let mut artifacts = Vec::new();
    let mut levels = Vec::new();
    for (idx, level) in result.levels.iter().enumerate() {
        let file = format!("midset_{stem}_alpha{idx:03}.csv");
        let mut csv = Csv::new(&["branch", "polyline", "vertex", "x", "y"]);
        let mut branches = Vec::new();
        for curve in &level.branches {
            for (k, line) in curve.polylines.iter().enumerate() {
                for (v, p) in line.iter().enumerate() {
                    csv.row(
                        "midset vertex",
                        &[Cell::Text(curve.branch.name()), Cell::Int(k), Cell::Int(v), Cell::Num(p.x), Cell::Num(p.y)],
                    )?;
                }
            }
            branches.push(BranchReport {
                branch: curve.branch.name().into(),
                class: curve.class.name().into(),
                polylines: curve.polylines.len(),
                vertices: curve.points().count(),
            });
        }
        artifacts.push((file.clone(), csv.finish()));
        levels.push(MidsetLevelReport {
            alpha: num("alpha", level.alpha)?,
            case: level.case.name().into(),
            accepted_branch: level.accepted.map(|t| t.name().into()),
            file,
            branches,
        });
    }
    if format.is_none_or(|f| f == Format::Svg) {
        artifacts.push((format!("midset_{stem}.svg"), emit::midset_svg(&result, [(names[0], a), (names[1], b)])?));
    }
    let report = MidsetReport {
        pair: pair(names),
        bbox: nums("bbox", [bb.xmin, bb.xmax, bb.ymin, bb.ymax])?,
        resolution: result.resolution,
        levels,
    };
    artifacts.push((format!("midset_{stem}.json"), json(&report)));
    Ok(artifacts)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdReport {
    pub n: Option<f64>,
    pub n1: Option<f64>,
    pub n2: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchClass {
    pub branch: String,
    pub class: String,
}

/// A maximal run of levels sharing one configuration. Bands between
/// thresholds are open intervals; a threshold inside `(0, 1)` forms its own
/// single-level band.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandReport {
    pub alpha_lo: f64,
    pub alpha_hi: f64,
    pub case: String,
    pub branches: Vec<BranchClass>,
    pub accepted_branch: Option<String>,
    /// Class of the accepted branch, when there is one.
    pub class: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelClass {
    pub alpha: f64,
    pub case: String,
    pub class: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyReport {
    pub pair: [String; 2],
    pub thresholds: ThresholdReport,
    pub bands: Vec<BandReport>,
    pub levels: Vec<LevelClass>,
}

/// Case name, active branch classes, accepted branch and its class.
type LevelClasses = (String, Vec<BranchClass>, Option<String>, Option<String>);

fn branch_classes(a: &FuzzyPoint, b: &FuzzyPoint, alpha: f64) -> Result<LevelClasses, Failure> {
    let case = overlap_case(a, b, alpha)?;
    let mut branches = Vec::new();
    let mut accepted_class = None;
    let accepted = accepted_branch(case);
    for &branch in case.active_branches() {
        let class = classify_conic(&conic_coefficients(a, b, alpha, branch)?).name().to_string();
        if Some(branch) == accepted {
            accepted_class = Some(class.clone());
        }
        branches.push(BranchClass { branch: branch.name().into(), class });
    }
    Ok((case.name().into(), branches, accepted.map(|t| t.name().into()), accepted_class))
}

fn opt(label: &str, v: Option<f64>) -> Result<Option<f64>, CliError> {
    v.map(|x| num(label, x)).transpose()
}

fn classify(ctx: &Ctx, a: &FuzzyPoint, b: &FuzzyPoint, names: [&str; 2], stem: &str) -> Produced {
    let th = alpha_thresholds(a, b)?;
    let mut cuts: Vec<f64> = [th.n, th.n1, th.n2].into_iter().flatten().filter(|&x| x > 0.0 && x < 1.0).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut edges = vec![0.0];
    edges.extend(&cuts);
    edges.push(1.0);

    let mut spans = Vec::new();
    for (k, w) in edges.windows(2).enumerate() {
        if k > 0 {
            spans.push((w[0], w[0], w[0]));
        }
        let probe = if k == 0 && cuts.is_empty() { 0.5 } else { 0.5 * (w[0] + w[1]) };
        spans.push((w[0], w[1], probe));
    }
    let mut bands = Vec::new();
    for (lo, hi, probe) in spans {
        let (case, branches, accepted_branch, class) = branch_classes(a, b, probe)?;
        bands.push(BandReport {
            alpha_lo: num("band", lo)?,
            alpha_hi: num("band", hi)?,
            case,
            branches,
            accepted_branch,
            class,
        });
    }
    let mut levels = Vec::new();
    for &alpha in ctx.alpha.levels() {
        let (case, _, _, class) = branch_classes(a, b, alpha)?;
        levels.push(LevelClass { alpha: num("alpha", alpha)?, case, class });
    }
    let report = ClassifyReport {
        pair: pair(names),
        thresholds: ThresholdReport { n: opt("n", th.n)?, n1: opt("n1", th.n1)?, n2: opt("n2", th.n2)? },
        bands,
        levels,
    };
    Ok(vec![(format!("classify_{stem}.json"), json(&report))])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Disagreement {
    pub point: [f64; 2],
    pub alpha: f64,
    pub t: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvarianceJson {
    pub pair: [String; 2],
    pub t: Vec<f64>,
    pub bbox: [f64; 4],
    pub resolution: usize,
    pub alpha_levels: usize,
    pub comparisons: usize,
    pub equidistant_hits: usize,
    pub disagreements: usize,
    pub first_disagreement: Option<Disagreement>,
    pub passed: bool,
}

fn invariance(ctx: &Ctx, a: &FuzzyPoint, b: &FuzzyPoint, names: [&str; 2], stem: &str) -> Produced {
    let t = ctx.t.clone().unwrap_or_else(|| DEFAULT_INVARIANCE_SCALES.to_vec());
    let bb = ctx.scene.grids.bbox.unwrap_or_else(|| default_bbox(a, b));
    let r = invariance_check(a, b, &t, &bb, ctx.resolution)?;
    let first = match r.first_disagreement {
        Some((q, alpha, t)) => {
            Some(Disagreement { point: nums("point", [q.x, q.y])?, alpha: num("alpha", alpha)?, t: num("t", t)? })
        }
        None => None,
    };
    let report = InvarianceJson {
        pair: pair(names),
        t: t.iter().map(|&v| num("t", v)).collect::<Result<_, _>>()?,
        bbox: nums("bbox", [bb.xmin, bb.xmax, bb.ymin, bb.ymax])?,
        resolution: r.resolution,
        alpha_levels: r.alpha_levels,
        comparisons: r.comparisons,
        equidistant_hits: r.equidistant_hits,
        disagreements: r.disagreements,
        first_disagreement: first,
        passed: r.passed(),
    };
    Ok(vec![(format!("invariance_{stem}.json"), json(&report))])
}
