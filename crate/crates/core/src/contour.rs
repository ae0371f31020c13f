//! Zero-level contours of a scalar field by marching squares.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::fuzzy_core::Point2;
use crate::optimize::illinois;
use crate::{Error, Result};

/// Axis-aligned rectangle `[xmin, xmax] x [ymin, ymax]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BBox {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl BBox {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        let ok = [xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite()) && xmin < xmax && ymin < ymax;
        if !ok {
            return Err(Error::InvalidSampling(format!("empty bounding box [{xmin}, {xmax}] x [{ymin}, {ymax}]")));
        }
        Ok(BBox { xmin, xmax, ymin, ymax })
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    pub fn center(&self) -> Point2 {
        Point2::new(0.5 * (self.xmin + self.xmax), 0.5 * (self.ymin + self.ymax))
    }

    pub fn contains(&self, p: Point2) -> bool {
        (self.xmin..=self.xmax).contains(&p.x) && (self.ymin..=self.ymax).contains(&p.y)
    }

    pub fn union(&self, other: &BBox) -> BBox {
        BBox {
            xmin: self.xmin.min(other.xmin),
            xmax: self.xmax.max(other.xmax),
            ymin: self.ymin.min(other.ymin),
            ymax: self.ymax.max(other.ymax),
        }
    }

    /// Scaled about its centre by `factor`.
    pub fn scaled(&self, factor: f64) -> BBox {
        let c = self.center();
        let hw = 0.5 * self.width() * factor;
        let hh = 0.5 * self.height() * factor;
        BBox { xmin: c.x - hw, xmax: c.x + hw, ymin: c.y - hh, ymax: c.y + hh }
    }

    /// Larger of the two cell sides for `resolution` cells per axis.
    pub fn cell_size(&self, resolution: usize) -> f64 {
        self.width().max(self.height()) / resolution as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum EdgeKey {
    /// Between nodes `(i, j)` and `(i + 1, j)`.
    H(usize, usize),
    /// Between nodes `(i, j)` and `(i, j + 1)`.
    V(usize, usize),
}

struct Field {
    n: usize,
    bbox: BBox,
    values: Vec<f64>,
}

impl Field {
    fn node(&self, i: usize, j: usize) -> Point2 {
        let n = self.n as f64;
        Point2::new(
            self.bbox.xmin + self.bbox.width() * i as f64 / n,
            self.bbox.ymin + self.bbox.height() * j as f64 / n,
        )
    }

    fn value(&self, i: usize, j: usize) -> f64 {
        self.values[j * (self.n + 1) + i]
    }

    fn endpoints(&self, key: EdgeKey) -> ((usize, usize), (usize, usize)) {
        match key {
            EdgeKey::H(i, j) => ((i, j), (i + 1, j)),
            EdgeKey::V(i, j) => ((i, j), (i, j + 1)),
        }
    }

    fn crosses(&self, key: EdgeKey) -> bool {
        let ((i0, j0), (i1, j1)) = self.endpoints(key);
        let (a, b) = (self.value(i0, j0), self.value(i1, j1));
        a.is_finite() && b.is_finite() && (a >= 0.0) != (b >= 0.0)
    }
}

/// Zero set of `f` on a `resolution x resolution` cell grid over `bbox`, as
/// polylines. Closed curves repeat their first point at the end.
///
/// Saddle cells are resolved by the sign at the cell centre, and every
/// vertex is refined along its grid edge until `|f| <= ftol`.
pub fn zero_contour<F>(f: F, bbox: &BBox, resolution: usize, ftol: f64) -> Vec<Vec<Point2>>
where
    F: Fn(Point2) -> f64 + Sync,
{
    let n = resolution;
    let mut field = Field { n, bbox: *bbox, values: Vec::new() };
    field.values = (0..(n + 1) * (n + 1)).into_par_iter().map(|k| f(field.node(k % (n + 1), k / (n + 1)))).collect();

    let mut keys = Vec::new();
    for j in 0..=n {
        for i in 0..=n {
            if i < n {
                keys.push(EdgeKey::H(i, j));
            }
            if j < n {
                keys.push(EdgeKey::V(i, j));
            }
        }
    }
    let vertices: HashMap<EdgeKey, Point2> = keys
        .into_par_iter()
        .filter(|&k| field.crosses(k))
        .map(|k| {
            let ((i0, j0), (i1, j1)) = field.endpoints(k);
            let (p0, p1) = (field.node(i0, j0), field.node(i1, j1));
            let g = |t: f64| f(p0 + (p1 - p0) * t);
            let t = illinois(g, field.value(i0, j0), field.value(i1, j1), ftol);
            (k, p0 + (p1 - p0) * t)
        })
        .collect();

    let segments: Vec<(EdgeKey, EdgeKey)> =
        (0..n * n).into_par_iter().flat_map_iter(|c| cell_segments(&field, &f, c % n, c / n)).collect();

    chain(&segments, &vertices)
}

fn cell_segments(field: &Field, f: &(impl Fn(Point2) -> f64 + Sync), i: usize, j: usize) -> Vec<(EdgeKey, EdgeKey)> {
    let bottom = EdgeKey::H(i, j);
    let right = EdgeKey::V(i + 1, j);
    let top = EdgeKey::H(i, j + 1);
    let left = EdgeKey::V(i, j);
    let crossing: Vec<EdgeKey> = [bottom, right, top, left].into_iter().filter(|&k| field.crosses(k)).collect();
    match crossing.len() {
        2 => vec![(crossing[0], crossing[1])],
        4 => {
            let centre = f(Point2::new(
                0.5 * (field.node(i, j).x + field.node(i + 1, j).x),
                0.5 * (field.node(i, j).y + field.node(i, j + 1).y),
            ));
            let low_left_positive = field.value(i, j) >= 0.0;
            if (centre >= 0.0) == low_left_positive {
                // the lower-left/upper-right diagonal is connected; cut off the other corners
                vec![(bottom, right), (top, left)]
            } else {
                vec![(bottom, left), (top, right)]
            }
        }
        _ => Vec::new(),
    }
}

fn chain(segments: &[(EdgeKey, EdgeKey)], vertices: &HashMap<EdgeKey, Point2>) -> Vec<Vec<Point2>> {
    let mut adjacency: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
    for (s, &(a, b)) in segments.iter().enumerate() {
        adjacency.entry(a).or_default().push(s);
        adjacency.entry(b).or_default().push(s);
    }
    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();

    let walk = |start_seg: usize, start_key: EdgeKey, used: &mut Vec<bool>| {
        let mut line = vec![vertices[&start_key]];
        let mut seg = start_seg;
        let mut key = start_key;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            key = if a == key { b } else { a };
            line.push(vertices[&key]);
            match adjacency[&key].iter().find(|&&s| !used[s]) {
                Some(&next) => seg = next,
                None => break,
            }
        }
        line
    };

    // open curves start at boundary vertices, which belong to one segment only
    let mut ends: Vec<EdgeKey> = adjacency.iter().filter(|(_, s)| s.len() == 1).map(|(k, _)| *k).collect();
    ends.sort();
    for key in ends {
        let seg = adjacency[&key][0];
        if !used[seg] {
            lines.push(walk(seg, key, &mut used));
        }
    }
    for seg in 0..segments.len() {
        if !used[seg] {
            lines.push(walk(seg, segments[seg].0, &mut used));
        }
    }
    lines
}

/// Splits polylines wherever `keep` rejects a vertex; fragments with fewer
/// than two vertices are dropped.
pub fn retain_points(lines: Vec<Vec<Point2>>, keep: impl Fn(Point2) -> bool) -> Vec<Vec<Point2>> {
    let mut out = Vec::new();
    for line in lines {
        let mut current = Vec::new();
        for p in line {
            if keep(p) {
                current.push(p);
            } else if !current.is_empty() {
                let part = std::mem::take(&mut current);
                if part.len() >= 2 {
                    out.push(part);
                }
            }
        }
        if current.len() >= 2 {
            out.push(current);
        }
    }
    out
}
