//! Local patch census for point sets in R^d: distinct configurations
//! seen through a shape (ball, aligned square, aligned rectangle)
//! anchored at each point, their empirical frequencies, and growth of
//! the patch count with shape size.
//!
//! Works on bare position lists, so the same census serves cut-and-project
//! sets, substitution chains, and tiling vertex sets.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Offsets are quantized to this grid before keying, absorbing float
/// noise between anchors of genuinely identical patches.  Doubles as the
/// tolerance for deciding whether a point sits on the shape boundary.
pub const QUANT_TOL: f64 = 1e-9;

/// Shape through which patches are observed, centered at each anchor.
#[derive(Clone, Debug)]
pub enum PatchShape {
    Ball { radius: f64 },
    Square { side: f64 },
    /// Axis-aligned box with one side length per coordinate.
    Rectangle { sides: Vec<f64> },
}

impl PatchShape {
    fn validate(&self, dim: usize) -> Result<()> {
        let ok = match self {
            PatchShape::Ball { radius } => *radius > 0.0,
            PatchShape::Square { side } => *side > 0.0,
            PatchShape::Rectangle { sides } => {
                sides.len() == dim && sides.iter().all(|s| *s > 0.0)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput("shape dimensions must be positive and match the data".into()))
        }
    }

    /// Half-extent along one axis.
    fn half_extent(&self, axis: usize) -> f64 {
        match self {
            PatchShape::Ball { radius } => *radius,
            PatchShape::Square { side } => side / 2.0,
            PatchShape::Rectangle { sides } => sides[axis] / 2.0,
        }
    }

    fn circumradius(&self, dim: usize) -> f64 {
        match self {
            PatchShape::Ball { radius } => *radius,
            PatchShape::Square { side } => side / 2.0 * (dim as f64).sqrt(),
            PatchShape::Rectangle { sides } => {
                sides.iter().map(|s| s * s / 4.0).sum::<f64>().sqrt()
            }
        }
    }

    /// Classification of an offset: Some(true) strictly inside, Some(false)
    /// within tolerance of the boundary, None outside.
    fn classify(&self, offset: &[f64]) -> Option<bool> {
        match self {
            PatchShape::Ball { radius } => {
                let n = offset.iter().map(|x| x * x).sum::<f64>().sqrt();
                if n > radius + QUANT_TOL {
                    None
                } else {
                    Some(n < radius - QUANT_TOL)
                }
            }
            _ => {
                let mut strict = true;
                for (axis, &x) in offset.iter().enumerate() {
                    let h = self.half_extent(axis);
                    if x.abs() > h + QUANT_TOL {
                        return None;
                    }
                    if x.abs() >= h - QUANT_TOL {
                        strict = false;
                    }
                }
                Some(strict)
            }
        }
    }
}

/// Census controls.
#[derive(Clone, Debug)]
pub struct PatchOptions {
    /// Count points lying exactly on the shape boundary as part of the
    /// patch.  The alternative treats the shape as open.
    pub include_boundary: bool,
    /// Deterministic stride subsampling of anchors when the census would
    /// exceed this many.
    pub max_anchors: Option<usize>,
}

impl Default for PatchOptions {
    fn default() -> Self {
        PatchOptions { include_boundary: true, max_anchors: None }
    }
}

#[derive(Clone, Debug)]
pub struct PatchType {
    /// Quantized offset vectors of one exemplar, sorted.
    pub offsets: Vec<Vec<i64>>,
    pub count: usize,
    pub frequency: f64,
    /// Two-sigma half-width of the frequency estimate.
    pub ci: f64,
}

#[derive(Clone, Debug)]
pub struct PatchStats {
    pub anchors: usize,
    pub types: Vec<PatchType>,
    /// Number of frequency clusters after merging types whose confidence
    /// intervals overlap: a statistical estimate of how many genuinely
    /// distinct patch frequencies the set exhibits.
    pub freq_classes: usize,
}

fn quantize(x: f64) -> i64 {
    (x / QUANT_TOL).round() as i64
}

/// Census of shape-patches.  Anchors are restricted to points whose shape
/// fits at least inside both the bounding sphere and the bounding box of
/// the data, so every counted patch is complete whenever the point set
/// fills a centered ball, an axis-aligned box, or their intersection (the
/// shapes produced elsewhere in this crate).
pub fn patch_statistics(
    points: &[Vec<f64>],
    shape: &PatchShape,
    options: &PatchOptions,
) -> Result<PatchStats> {
    if points.is_empty() {
        return Err(Error::InvalidInput("no points".into()));
    }
    let dim = points[0].len();
    if dim == 0 || points.iter().any(|p| p.len() != dim) {
        return Err(Error::InvalidInput("inconsistent point dimensions".into()));
    }
    shape.validate(dim)?;
    let norm = |p: &[f64]| p.iter().map(|x| x * x).sum::<f64>().sqrt();
    let data_radius = points.iter().map(|p| norm(p)).fold(0.0f64, f64::max);
    let ball_core = data_radius - shape.circumradius(dim);
    let mut box_lo = vec![f64::INFINITY; dim];
    let mut box_hi = vec![f64::NEG_INFINITY; dim];
    for p in points {
        for (i, &x) in p.iter().enumerate() {
            box_lo[i] = box_lo[i].min(x);
            box_hi[i] = box_hi[i].max(x);
        }
    }
    let is_anchor = |p: &[f64]| -> bool {
        norm(p) <= ball_core
            && p.iter().enumerate().all(|(i, &x)| {
                let h = shape.half_extent(i);
                x - box_lo[i] >= h && box_hi[i] - x >= h
            })
    };
    let eligible: Vec<usize> =
        (0..points.len()).filter(|&i| is_anchor(&points[i])).collect();
    if eligible.is_empty() {
        return Err(Error::InvalidInput(
            "shape leaves no complete-patch anchors inside the data region".into(),
        ));
    }
    let stride = match options.max_anchors {
        Some(m) if m > 0 && eligible.len() > m => eligible.len().div_ceil(m),
        Some(0) => return Err(Error::InvalidInput("max_anchors must be positive".into())),
        _ => 1,
    };
    // Grid buckets for neighbor search; cell spans the largest half-extent
    // so the 3^dim neighborhood covers the shape.
    let cell = (0..dim)
        .map(|i| shape.half_extent(i))
        .fold(0.0f64, f64::max)
        .max(1e-12);
    let mut grid: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    let cell_of =
        |p: &[f64]| -> Vec<i64> { p.iter().map(|x| (x / cell).floor() as i64).collect() };
    for (i, p) in points.iter().enumerate() {
        grid.entry(cell_of(p)).or_default().push(i);
    }
    let mut census: BTreeMap<Vec<Vec<i64>>, usize> = BTreeMap::new();
    let mut anchors = 0usize;
    for &idx in eligible.iter().step_by(stride) {
        let p = &points[idx];
        anchors += 1;
        let base = cell_of(p);
        let mut key: Vec<Vec<i64>> = Vec::new();
        // Visit the 3^dim neighborhood of the anchor's cell.
        let mut stack = vec![Vec::<i64>::new()];
        for axis in 0..dim {
            let mut next = Vec::new();
            for partial in &stack {
                for delta in -1i64..=1 {
                    let mut v = partial.clone();
                    v.push(base[axis] + delta);
                    next.push(v);
                }
            }
            stack = next;
        }
        for cell_key in &stack {
            if let Some(members) = grid.get(cell_key) {
                for &j in members {
                    let q = &points[j];
                    let offset: Vec<f64> =
                        q.iter().zip(p.iter()).map(|(a, b)| a - b).collect();
                    let keep = match shape.classify(&offset) {
                        Some(true) => true,
                        Some(false) => options.include_boundary,
                        None => false,
                    };
                    if keep {
                        key.push(offset.iter().map(|&x| quantize(x)).collect());
                    }
                }
            }
        }
        key.sort();
        *census.entry(key).or_insert(0) += 1;
    }
    let mut types: Vec<PatchType> = census
        .into_iter()
        .map(|(offsets, count)| {
            let f = count as f64 / anchors as f64;
            let ci = 2.0 * (f * (1.0 - f) / anchors as f64).sqrt();
            PatchType { offsets, count, frequency: f, ci }
        })
        .collect();
    types.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.offsets.cmp(&b.offsets)));
    // Cluster frequencies whose confidence intervals overlap.
    let mut sorted: Vec<(f64, f64)> = types.iter().map(|t| (t.frequency, t.ci)).collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut freq_classes = usize::from(!sorted.is_empty());
    for w in sorted.windows(2) {
        if w[1].0 - w[0].0 > w[0].1 + w[1].1 {
            freq_classes += 1;
        }
    }
    Ok(PatchStats { anchors, types, freq_classes })
}

/// Distinct ball-patch count as a function of radius.
pub fn patch_complexity(points: &[Vec<f64>], radii: &[f64]) -> Result<Vec<(f64, usize)>> {
    let options = PatchOptions::default();
    radii
        .iter()
        .map(|&r| {
            patch_statistics(points, &PatchShape::Ball { radius: r }, &options)
                .map(|s| (r, s.types.len()))
        })
        .collect()
}
