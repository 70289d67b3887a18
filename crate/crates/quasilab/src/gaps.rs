//! Gap structure of rotation orbits on the circle and of double-rotation
//! point sets, with exact integer labeling of every gap.
//!
//! Each orbit point {m a + n b} carries its integer coefficients (m, n)
//! and the subtracted floor k, so a gap between consecutive points is the
//! exact linear form dm*a + dn*b + dk.  Gaps with equal labels have
//! exactly equal lengths; the wraparound gap closes the circle and the
//! labels telescope to (0, 0, 1).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::numerics::HighPrec;

/// Cap on generated orbit points per call.
pub const MAX_POINTS: usize = 4_000_000;

#[derive(Clone, Debug)]
pub struct TorusPoint {
    pub m: i64,
    pub n: i64,
    /// floor(m a + n b), so that value = m a + n b - k lies in [0,1).
    pub k: i64,
    pub frac: HighPrec,
}

fn make_point(alpha: &HighPrec, beta: &HighPrec, m: i64, n: i64) -> TorusPoint {
    let x = alpha.mul_int(m).add(beta.mul_int(n));
    let k = x.floor().to_f64() as i64;
    TorusPoint { m, n, k, frac: x.frac() }
}

/// Orbit {m alpha} for m = 0..count, sorted by position on the circle.
pub fn circle_points(alpha: &HighPrec, count: usize) -> Result<Vec<TorusPoint>> {
    if count == 0 || count > MAX_POINTS {
        return Err(Error::InvalidInput(format!(
            "point count {count} outside 1..={MAX_POINTS}"
        )));
    }
    let zero = HighPrec::ZERO;
    let mut pts: Vec<TorusPoint> = (0..count as i64)
        .map(|m| make_point(alpha, &zero, m, 0))
        .collect();
    pts.sort_by(|a, b| a.frac.total_cmp(&b.frac));
    Ok(pts)
}

/// Grid orbit {m alpha + n beta}, 0 <= m < rows_m, 0 <= n < rows_n, sorted.
pub fn torus_points(
    alpha: &HighPrec,
    beta: &HighPrec,
    rows_m: usize,
    rows_n: usize,
) -> Result<Vec<TorusPoint>> {
    let total = rows_m.checked_mul(rows_n).unwrap_or(usize::MAX);
    if total == 0 || total > MAX_POINTS {
        return Err(Error::InvalidInput(format!(
            "grid {rows_m} x {rows_n} outside 1..={MAX_POINTS} points"
        )));
    }
    let mut pts = Vec::with_capacity(total);
    for m in 0..rows_m as i64 {
        for n in 0..rows_n as i64 {
            pts.push(make_point(alpha, beta, m, n));
        }
    }
    pts.sort_by(|a, b| a.frac.total_cmp(&b.frac));
    Ok(pts)
}

/// One gap class: all circle gaps realizing the exact length
/// dm*alpha + dn*beta + dk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapClass {
    pub dm: i64,
    pub dn: i64,
    pub dk: i64,
    pub multiplicity: usize,
}

/// Gap classes of a sorted point list, wraparound included.  Returns the
/// classes together with each class's length (as f64, from one exemplar).
pub fn gap_classes(sorted: &[TorusPoint]) -> Result<Vec<(GapClass, f64)>> {
    if sorted.is_empty() {
        return Err(Error::InvalidInput("no points to classify".into()));
    }
    let mut map: BTreeMap<(i64, i64, i64), (usize, f64)> = BTreeMap::new();
    let n = sorted.len();
    for i in 0..n {
        let (a, b, wrap) = if i + 1 < n {
            (&sorted[i], &sorted[i + 1], 0i64)
        } else {
            (&sorted[n - 1], &sorted[0], 1i64)
        };
        let key = (b.m - a.m, b.n - a.n, -(b.k - a.k) + wrap);
        let len = b.frac.sub(a.frac).to_f64() + wrap as f64;
        let e = map.entry(key).or_insert((0, len));
        e.0 += 1;
    }
    Ok(map
        .into_iter()
        .map(|((dm, dn, dk), (multiplicity, len))| {
            (GapClass { dm, dn, dk, multiplicity }, len)
        })
        .collect())
}

/// Independent check: cluster the individual gap lengths numerically and
/// count clusters.  Agrees with the number of distinct exact class lengths
/// whenever the lengths are separated beyond the resolution.
pub fn distinct_gap_lengths(sorted: &[TorusPoint], resolution: f64) -> Result<usize> {
    if sorted.is_empty() {
        return Err(Error::InvalidInput("no points".into()));
    }
    let n = sorted.len();
    let mut lens: Vec<f64> = Vec::with_capacity(n);
    for i in 0..n {
        let len = if i + 1 < n {
            sorted[i + 1].frac.sub(sorted[i].frac).to_f64()
        } else {
            sorted[0].frac.add(HighPrec::ONE).sub(sorted[n - 1].frac).to_f64()
        };
        lens.push(len);
    }
    lens.sort_by(f64::total_cmp);
    let mut count = 1usize;
    for w in lens.windows(2) {
        if w[1] - w[0] > resolution {
            count += 1;
        }
    }
    Ok(count)
}

/// Littlewood scan: running minima of n * ||n a|| * ||n b||.
#[derive(Clone, Debug)]
pub struct LittlewoodRecord {
    pub n: i64,
    pub dist_a: f64,
    pub dist_b: f64,
    /// n * dist_a * dist_b, a new running minimum at this n.
    pub value: f64,
}

pub fn littlewood_scan(
    alpha: &HighPrec,
    beta: &HighPrec,
    nmax: i64,
) -> Result<Vec<LittlewoodRecord>> {
    if nmax < 1 || nmax as usize > MAX_POINTS {
        return Err(Error::InvalidInput(format!("nmax {nmax} outside 1..={MAX_POINTS}")));
    }
    let mut best = f64::INFINITY;
    let mut out = Vec::new();
    for n in 1..=nmax {
        let da = alpha.mul_int(n).dist_to_int().to_f64();
        let db = beta.mul_int(n).dist_to_int().to_f64();
        let v = n as f64 * da * db;
        if v < best {
            best = v;
            out.push(LittlewoodRecord { n, dist_a: da, dist_b: db, value: v });
        }
    }
    Ok(out)
}
