//! Discrete 1D Schrodinger operators with Sturmian potentials.
//!
//! The spectrum is approached through periodic approximants: for a
//! convergent p/q of the rotation number, the period-q potential is
//! computed by an exact integer rule, band edges are eigenvalues of the
//! periodic and antiperiodic q x q problems, and the transfer-matrix
//! discriminant provides an independent cross-check.  A separable 2D
//! spectrum is the Minkowski sum of two band sets, probed for
//! cantorval-like structure at a chosen resolution.

use crate::error::{Error, Result};
use crate::numerics::band::{Band, BandSet};
use crate::numerics::tridiag::symmetric_eigenvalues;
use crate::numerics::HighPrec;

/// Default absolute tolerance for band-edge eigenvalues.
pub const DEFAULT_EDGE_TOL: f64 = 1e-12;

/// Bands closer than 100 edge tolerances are treated as touching.
#[must_use]
pub fn merge_tol(edge_tol: f64) -> f64 {
    100.0 * edge_tol
}

/// Dimension cap for the dense band-edge eigenproblems.
pub const MAX_PERIOD: i64 = 2048;

/// Continued-fraction convergents p/q of a number in (0,1), starting from
/// the first one with q >= 1.  Stops at `max_level` entries, at loss of
/// certified precision, or when the expansion terminates (rational input).
pub fn convergents(alpha: &HighPrec, max_level: usize) -> Result<Vec<(i64, i64)>> {
    let a = alpha.to_f64();
    if !(0.0 < a && a < 1.0) {
        return Err(Error::InvalidInput(format!(
            "continued fraction wants a value strictly between 0 and 1, got {a}"
        )));
    }
    // An exactly-representable rational gets exact integer Euclid digits;
    // the floating path would tie-break arbitrarily at integer quotients.
    if let Some(x) = alpha.as_exact_f64() {
        if let Some((num, den)) = as_dyadic_fraction(x) {
            return Ok(rational_convergents(num, den, max_level));
        }
    }
    let mut out = Vec::new();
    // Rolling numerator/denominator pairs seeded with the formal convergent
    // 1/0 and the zeroth convergent 0/1 (a_0 = 0 for alpha in (0,1)).
    let (mut h0, mut k0) = (1i64, 0i64);
    let (mut hp, mut kp) = (0i64, 1i64);
    let mut t = *alpha;
    while out.len() < max_level {
        // Terminated expansion: remainder certified zero (rational alpha).
        let tv = t.to_f64();
        if tv <= t.err_bound() {
            if tv > 0.0 && tv > t.err_bound() / 2.0 {
                return Err(Error::Precision(
                    "continued-fraction remainder is ambiguous at this precision".into(),
                ));
            }
            break;
        }
        let inv = HighPrec::ONE.div(t)?;
        let digit_f = inv.floor().to_f64();
        if digit_f > 1e12 {
            // Effectively rational at working precision.
            break;
        }
        let digit = digit_f as i64;
        let rem = inv.frac();
        if rem.err_bound() > 0.25 {
            if out.is_empty() {
                return Err(Error::Precision(
                    "no certified continued-fraction digits at this precision".into(),
                ));
            }
            break;
        }
        let h = digit * hp + h0;
        let k = digit * kp + k0;
        // Overflow / runaway guard.
        if k > 1_000_000_000_000 {
            break;
        }
        out.push((h, k));
        (h0, k0) = (hp, kp);
        (hp, kp) = (h, k);
        t = rem;
    }
    Ok(out)
}

/// x = num / 2^k as an exact integer fraction, for moderate exponents.
fn as_dyadic_fraction(x: f64) -> Option<(i64, i64)> {
    let mut den = 1i64;
    let mut v = x;
    for _ in 0..60 {
        if v.fract() == 0.0 && v.abs() < 9e15 {
            return Some((v as i64, den));
        }
        v *= 2.0;
        den *= 2;
    }
    None
}

/// Exact continued-fraction convergents of num/den in (0,1) by Euclid.
fn rational_convergents(num: i64, den: i64, max_level: usize) -> Vec<(i64, i64)> {
    let (mut h0, mut k0) = (1i64, 0i64);
    let (mut hp, mut kp) = (0i64, 1i64);
    let (mut a, mut b) = (den, num); // invert: digits of den/num after a_0 = 0
    let mut out = Vec::new();
    while b != 0 && out.len() < max_level {
        let digit = a / b;
        let r = a % b;
        let h = digit * hp + h0;
        let k = digit * kp + k0;
        out.push((h, k));
        (h0, k0) = (hp, kp);
        (hp, kp) = (h, k);
        (a, b) = (b, r);
    }
    out
}

/// Period-q Sturmian potential values lambda * x_m for m = 0..q-1, with
/// x_m from the exact integer rule (m p mod q) >= q - p.
pub fn periodic_potential(p: i64, q: i64, lambda: f64) -> Result<Vec<f64>> {
    if q < 1 || p < 0 || p > q {
        return Err(Error::InvalidInput(format!("bad convergent {p}/{q}")));
    }
    Ok((0..q)
        .map(|m| {
            let r = (m * p).rem_euclid(q);
            if r >= q - p {
                lambda
            } else {
                0.0
            }
        })
        .collect())
}

/// Transfer-matrix discriminant: trace of T(v_{q-1}) ... T(v_0) where
/// T(v) = [[E - v, -1], [1, 0]].
#[must_use]
pub fn discriminant(potential: &[f64], e: f64) -> f64 {
    let (mut a, mut b, mut c, mut d) = (1.0f64, 0.0, 0.0, 1.0);
    for &v in potential {
        let t = e - v;
        // Left-multiply by [[t, -1], [1, 0]].
        let (na, nb) = (t * a - c, t * b - d);
        let (nc, nd) = (a, b);
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    a + d
}

/// One periodic approximant: raw touching-allowed bands and the merged set.
#[derive(Clone, Debug)]
pub struct ApproximantSpectrum {
    pub p: i64,
    pub q: i64,
    pub lambda: f64,
    /// q bands [E_{2i}, E_{2i+1}] from the sorted union of periodic and
    /// antiperiodic eigenvalues; touching neighbors are kept separate.
    pub raw_bands: Vec<Band>,
    /// Raw bands merged at 100x the edge tolerance.
    pub bands: BandSet,
}

/// Band-edge computation for an explicit period-q potential.
pub fn approximant_bands(potential: &[f64], p: i64, q: i64, edge_tol: f64) -> Result<ApproximantSpectrum> {
    if q as usize != potential.len() {
        return Err(Error::InvalidInput("period does not match potential length".into()));
    }
    if q > MAX_PERIOD {
        return Err(Error::Resource(format!(
            "period {q} exceeds dense eigensolver cap {MAX_PERIOD}"
        )));
    }
    let n = q as usize;
    let lambda = potential.iter().cloned().fold(0.0f64, f64::max);
    let eigen = |sign: f64| -> Result<Vec<f64>> {
        if n == 1 {
            // One site with Bloch phase +-1: E = v + 2 sign.
            return Ok(vec![potential[0] + 2.0 * sign]);
        }
        let mut m = vec![vec![0.0f64; n]; n];
        for i in 0..n {
            m[i][i] = potential[i];
            if i + 1 < n {
                m[i][i + 1] += 1.0;
                m[i + 1][i] += 1.0;
            }
        }
        m[0][n - 1] += sign;
        m[n - 1][0] += sign;
        symmetric_eigenvalues(m, MAX_PERIOD as usize)
    };
    let per = eigen(1.0)?;
    let anti = eigen(-1.0)?;
    let mut all: Vec<f64> = per.into_iter().chain(anti).collect();
    all.sort_by(f64::total_cmp);
    debug_assert_eq!(all.len(), 2 * n);
    let mut raw = Vec::with_capacity(n);
    for i in 0..n {
        raw.push(Band::new(all[2 * i], all[2 * i + 1])?);
    }
    let merged = BandSet::from_intervals(
        &raw.iter().map(|b| (b.lo, b.hi)).collect::<Vec<_>>(),
        merge_tol(edge_tol),
    )?;
    Ok(ApproximantSpectrum { p, q, lambda, raw_bands: raw, bands: merged })
}

/// Approximant spectrum at continued-fraction level `level` (1-based).
pub fn sturmian_spectrum_level(
    alpha: &HighPrec,
    lambda: f64,
    level: usize,
    edge_tol: f64,
) -> Result<ApproximantSpectrum> {
    if level == 0 {
        return Err(Error::InvalidInput("levels are 1-based".into()));
    }
    let conv = convergents(alpha, level)?;
    let &(p, q) = conv.get(level - 1).ok_or_else(|| {
        Error::InvalidInput(format!(
            "continued fraction terminated before level {level} (rational rotation number)"
        ))
    })?;
    let potential = periodic_potential(p, q, lambda)?;
    approximant_bands(&potential, p, q, edge_tol)
}

// ═══════════════════════════════════════════════════════════════════════
// Cantorval probe
// ═══════════════════════════════════════════════════════════════════════

/// Structure of a band set viewed at a finite resolution.
#[derive(Clone, Debug)]
pub struct CantorvalReport {
    pub resolution: f64,
    /// Connected components after merging gaps smaller than the resolution.
    pub components: usize,
    /// Components longer than the resolution.
    pub fat_components: usize,
    /// Components shorter than the resolution whose both neighbors (hull
    /// boundary counts as infinitely far) are farther than the resolution.
    pub isolated_points: usize,
    pub gaps: usize,
    pub largest_gap: f64,
    pub measure: f64,
    /// Measure divided by hull length: 1 for an interval, near 0 for a
    /// thin Cantor-like set, strictly between for a cantorval.
    pub interior_fraction: f64,
}

pub fn cantorval_report(set: &BandSet, resolution: f64) -> Result<CantorvalReport> {
    if !(resolution > 0.0) {
        return Err(Error::InvalidInput("resolution must be positive".into()));
    }
    if set.is_empty() {
        return Err(Error::InvalidInput("empty band set".into()));
    }
    let merged = BandSet::from_intervals(
        &set.bands().iter().map(|b| (b.lo, b.hi)).collect::<Vec<_>>(),
        resolution,
    )?;
    let bands = merged.bands();
    let n = bands.len();
    let mut fat = 0usize;
    let mut isolated = 0usize;
    for (i, b) in bands.iter().enumerate() {
        if b.length() > resolution {
            fat += 1;
            continue;
        }
        let left = if i > 0 { bands[i].lo - bands[i - 1].hi } else { f64::INFINITY };
        let right = if i + 1 < n { bands[i + 1].lo - bands[i].hi } else { f64::INFINITY };
        if left > resolution && right > resolution {
            isolated += 1;
        }
    }
    let gaps = merged.gaps();
    let largest_gap = gaps.iter().map(Band::length).fold(0.0f64, f64::max);
    let hull = merged.max().unwrap() - merged.min().unwrap();
    let measure = merged.measure();
    Ok(CantorvalReport {
        resolution,
        components: n,
        fat_components: fat,
        isolated_points: isolated,
        gaps: gaps.len(),
        largest_gap,
        measure,
        interior_fraction: if hull > 0.0 { measure / hull } else { 1.0 },
    })
}

// ═══════════════════════════════════════════════════════════════════════
// Trace map
// ═══════════════════════════════════════════════════════════════════════

/// Orbit of the golden-rotation trace recurrence
/// x_{k+1} = 2 x_k x_{k-1} - x_{k-2}, seeded with the half-traces
/// (1, E/2, (E - lambda)/2).
#[derive(Clone, Debug)]
pub struct TraceOrbit {
    /// First index k (of x_k) with |x_k| above the escape radius, if any.
    pub escaped_at: Option<usize>,
    /// Largest deviation of the conserved quantity from its initial value
    /// over the computed orbit, escaping iterate included.
    pub invariant_drift: f64,
    /// Value of the conserved quantity at the seed, lambda^2 / 4.
    pub invariant: f64,
    pub iterations: usize,
}

/// Conserved quantity of the trace recurrence.
#[inline]
#[must_use]
pub fn fricke_invariant(x: f64, y: f64, z: f64) -> f64 {
    x * x + y * y + z * z - 2.0 * x * y * z - 1.0
}

pub fn trace_orbit(e: f64, lambda: f64, max_iter: usize, escape_radius: f64) -> Result<TraceOrbit> {
    if !(escape_radius > 1.0) {
        return Err(Error::InvalidInput("escape radius must exceed 1".into()));
    }
    let (mut a, mut b, mut c) = (1.0f64, e / 2.0, (e - lambda) / 2.0); // x_{-1}, x_0, x_1
    let i0 = fricke_invariant(c, b, a);
    let mut drift = 0.0f64;
    let mut escaped_at = None;
    let mut iterations = 0usize;
    // Check the seed triple itself first.
    for (k, &x) in [b, c].iter().enumerate() {
        if x.abs() > escape_radius && escaped_at.is_none() {
            escaped_at = Some(k); // x_0 or x_1
        }
    }
    for k in 2..=max_iter + 1 {
        if escaped_at.is_some() {
            break;
        }
        let next = 2.0 * c * b - a;
        a = b;
        b = c;
        c = next;
        iterations = k - 1;
        drift = drift.max((fricke_invariant(c, b, a) - i0).abs());
        if c.abs() > escape_radius {
            escaped_at = Some(k);
            break;
        }
    }
    Ok(TraceOrbit { escaped_at, invariant_drift: drift, invariant: i0, iterations })
}
