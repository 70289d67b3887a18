//! Point-count discrepancy over families of regions, and growth fits
//! against the region boundary size.
//!
//! Membership is half-open on every region: axis-aligned squares take
//! lo <= x < hi per axis and balls take |x - c| < r.  With that
//! convention an integer-anchored square over the integer lattice counts
//! its cells exactly, so the measured discrepancy there is zero rather
//! than an artifact of boundary ties.  Discrepancy D = |count -
//! density * volume| is compared against the boundary measure |dR|
//! (perimeter for squares, circumference for balls, endpoint count in
//! one dimension), the natural scale for surface-driven counting error.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionKind {
    AlignedSquare,
    Ball,
}

/// A square is centered with side `size`; a ball has radius `size`.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionSpec {
    pub kind: RegionKind,
    pub center: Vec<f64>,
    pub size: f64,
}

#[derive(Clone, Debug)]
pub struct DiscrepancySample {
    pub region: RegionSpec,
    pub count: usize,
    pub expected: f64,
    pub discrepancy: f64,
    pub boundary_measure: f64,
}

/// Least-squares growth exponent of binned max discrepancy against
/// boundary measure, with a flag for a better-fitting B log B law.
#[derive(Clone, Debug)]
pub struct GrowthFit {
    pub exponent: f64,
    pub log_correction: bool,
    pub residuals: Vec<f64>,
}

impl RegionSpec {
    pub fn aligned_square(center: Vec<f64>, side: f64) -> RegionSpec {
        RegionSpec {
            kind: RegionKind::AlignedSquare,
            center,
            size: side,
        }
    }

    pub fn ball(center: Vec<f64>, radius: f64) -> RegionSpec {
        RegionSpec {
            kind: RegionKind::Ball,
            center,
            size: radius,
        }
    }

    fn validate(&self) -> Result<usize> {
        let dim = self.center.len();
        if !(1..=2).contains(&dim) {
            return Err(Error::InvalidInput(format!(
                "regions support dimension 1 or 2, got {dim}"
            )));
        }
        if !(self.size > 0.0) || !self.size.is_finite() {
            return Err(Error::InvalidInput("region size must be positive".into()));
        }
        if self.center.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("region center must be finite".into()));
        }
        Ok(dim)
    }

    #[must_use]
    pub fn volume(&self) -> f64 {
        let d = self.center.len() as i32;
        match self.kind {
            RegionKind::AlignedSquare => self.size.powi(d),
            RegionKind::Ball => match d {
                1 => 2.0 * self.size,
                _ => std::f64::consts::PI * self.size * self.size,
            },
        }
    }

    #[must_use]
    pub fn boundary_measure(&self) -> f64 {
        let d = self.center.len();
        match (self.kind, d) {
            (_, 1) => 2.0,
            (RegionKind::AlignedSquare, _) => 4.0 * self.size,
            (RegionKind::Ball, _) => std::f64::consts::TAU * self.size,
        }
    }

    #[must_use]
    pub fn contains(&self, point: &[f64]) -> bool {
        match self.kind {
            RegionKind::AlignedSquare => {
                let h = self.size / 2.0;
                self.center
                    .iter()
                    .zip(point)
                    .all(|(c, x)| c - h <= *x && *x < c + h)
            }
            RegionKind::Ball => {
                let r2: f64 = self
                    .center
                    .iter()
                    .zip(point)
                    .map(|(c, x)| (x - c) * (x - c))
                    .sum();
                r2 < self.size * self.size
            }
        }
    }

    /// Per-axis [lo, hi] hull of the region.
    fn bounds(&self) -> Vec<(f64, f64)> {
        let h = match self.kind {
            RegionKind::AlignedSquare => self.size / 2.0,
            RegionKind::Ball => self.size,
        };
        self.center.iter().map(|c| (c - h, c + h)).collect()
    }
}

fn point_dim(points: &[Vec<f64>]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Err(Error::InvalidInput("empty point set".into()));
    };
    let dim = first.len();
    if dim == 0 || points.iter().any(|p| p.len() != dim) {
        return Err(Error::InvalidInput("points must share a nonzero dimension".into()));
    }
    Ok(dim)
}

fn count_points(points: &[Vec<f64>], region: &RegionSpec) -> usize {
    points.iter().filter(|p| region.contains(p)).count()
}

/// Sample density over one region.  The region must lie inside the
/// sample footprint, allowing one mean inter-point spacing of slack,
/// since the edge of a discrete sample is fuzzy at that scale.
pub fn density_estimate(points: &[Vec<f64>], region: &RegionSpec) -> Result<f64> {
    let dim = point_dim(points)?;
    if region.validate()? != dim {
        return Err(Error::InvalidInput("region dimension mismatch".into()));
    }
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for p in points {
        for a in 0..dim {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    let bbox_volume: f64 = lo.iter().zip(&hi).map(|(l, h)| h - l).product();
    let spacing = if bbox_volume > 0.0 {
        (bbox_volume / points.len() as f64).powf(1.0 / dim as f64)
    } else {
        1.0
    };
    for (a, (rl, rh)) in region.bounds().into_iter().enumerate() {
        if rl < lo[a] - spacing || rh > hi[a] + spacing {
            return Err(Error::InvalidInput(
                "region exceeds the sample footprint".into(),
            ));
        }
    }
    Ok(count_points(points, region) as f64 / region.volume())
}

/// Count each region and report |count - density * volume| next to the
/// region's boundary measure.  Regions may extend past the sample
/// footprint; the caller chooses how far to trust the edge.
pub fn discrepancy_sweep(
    points: &[Vec<f64>],
    density: f64,
    regions: &[RegionSpec],
) -> Result<Vec<DiscrepancySample>> {
    let dim = point_dim(points)?;
    if !(density > 0.0) || !density.is_finite() {
        return Err(Error::InvalidInput("density must be positive".into()));
    }
    let mut out = Vec::with_capacity(regions.len());
    for region in regions {
        if region.validate()? != dim {
            return Err(Error::InvalidInput("region dimension mismatch".into()));
        }
        let count = count_points(points, region);
        let expected = density * region.volume();
        out.push(DiscrepancySample {
            region: region.clone(),
            count,
            expected,
            discrepancy: (count as f64 - expected).abs(),
            boundary_measure: region.boundary_measure(),
        });
    }
    Ok(out)
}

const GROWTH_BINS: usize = 12;
const MIN_USABLE_BINS: usize = 5;

/// Fit log max-D against log |dR| over logarithmic bins.  Requires at
/// least eight samples spanning two decades of boundary measure.  The
/// `log_correction` flag reports when an amplitude-only B log B model
/// beats the two-parameter power law on residuals, which signals the
/// logarithmically modulated growth seen in lattice-like counting.
pub fn growth_fit(samples: &[DiscrepancySample]) -> Result<GrowthFit> {
    if samples.len() < 8 {
        return Err(Error::InvalidInput(
            "growth fit needs at least eight samples".into(),
        ));
    }
    let bs: Vec<f64> = samples.iter().map(|s| s.boundary_measure).collect();
    if bs.iter().any(|b| !(*b > 0.0) || !b.is_finite()) {
        return Err(Error::InvalidInput("boundary measures must be positive".into()));
    }
    let bmin = bs.iter().cloned().fold(f64::INFINITY, f64::min);
    let bmax = bs.iter().cloned().fold(0.0, f64::max);
    if bmax / bmin < 100.0 {
        return Err(Error::InvalidInput(
            "samples must span at least two decades of boundary measure".into(),
        ));
    }

    // Max discrepancy per log bin; a bin contributes the boundary
    // measure of its extreme sample, not the bin midpoint.
    let span = (bmax / bmin).ln();
    let mut best: Vec<Option<(f64, f64)>> = vec![None; GROWTH_BINS];
    for s in samples {
        let t = (s.boundary_measure / bmin).ln() / span;
        let bin = ((t * GROWTH_BINS as f64) as usize).min(GROWTH_BINS - 1);
        if s.discrepancy > 0.0
            && best[bin].is_none_or(|(_, d)| s.discrepancy > d)
        {
            best[bin] = Some((s.boundary_measure, s.discrepancy));
        }
    }
    let pts: Vec<(f64, f64)> = best
        .into_iter()
        .flatten()
        .map(|(b, d)| (b.ln(), d.ln()))
        .collect();
    if pts.len() < MIN_USABLE_BINS {
        return Err(Error::InvalidInput(
            "too few bins with positive discrepancy".into(),
        ));
    }

    let n = pts.len() as f64;
    let xbar = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let ybar = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - xbar) * (p.0 - xbar)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - xbar) * (p.1 - ybar)).sum();
    let exponent = sxy / sxx;
    let residuals: Vec<f64> = pts
        .iter()
        .map(|p| p.1 - (ybar + exponent * (p.0 - xbar)))
        .collect();
    let sse_power: f64 = residuals.iter().map(|r| r * r).sum();

    // Amplitude-only D = c B log B, valid when every binned B > 1.
    let log_correction = if pts.iter().all(|p| p.0 > 0.0) {
        let zs: Vec<f64> = pts.iter().map(|p| p.0 + p.0.ln()).collect();
        let c = pts
            .iter()
            .zip(&zs)
            .map(|(p, z)| p.1 - z)
            .sum::<f64>()
            / n;
        let sse_log: f64 = pts
            .iter()
            .zip(&zs)
            .map(|(p, z)| {
                let r = p.1 - (c + z);
                r * r
            })
            .sum();
        sse_log < sse_power
    } else {
        false
    };

    Ok(GrowthFit {
        exponent,
        log_correction,
        residuals,
    })
}
