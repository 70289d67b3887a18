//! Cut-and-project schemes: an integer lattice Z^k, a physical projection
//! onto R^d, an internal projection onto R^(k-d), and a window in internal
//! space selecting which lattice points appear in the physical point set.
//!
//! Schemes here are canonical: the physical space is spanned by rows
//! [I_d | A] for an irrational block A, so the internal coordinates have
//! the exact closed form [-A^T | I].  Box windows carry their edges either
//! as plain numbers or anchored at lattice points; anchored edges are
//! tested by evaluating the internal map on the lattice difference, which
//! cancels correlated rounding and certifies exact boundary hits.  The
//! bottom of a box is closed and the top open, the convention under which
//! the golden-ratio scheme reproduces the two-gap Fibonacci chain exactly.

use std::cmp::Ordering;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numerics::HighPrec;

/// Cap on lattice candidates enumerated per generation call.
pub const MAX_CANDIDATES: u64 = 50_000_000;

#[derive(Clone)]
pub struct CpsScheme {
    d: usize,
    codim: usize,
    /// Irrational block A, d rows of (k - d) entries.
    a: Vec<Vec<HighPrec>>,
    /// Orthonormalized physical rows (chart for reported positions).
    chart: Vec<Vec<f64>>,
}

impl CpsScheme {
    /// Canonical scheme with physical rows [I_d | A].
    pub fn canonical(a: Vec<Vec<HighPrec>>) -> Result<CpsScheme> {
        let d = a.len();
        if d == 0 {
            return Err(Error::InvalidInput("physical dimension is zero".into()));
        }
        let codim = a[0].len();
        if codim == 0 || a.iter().any(|r| r.len() != codim) {
            return Err(Error::InvalidInput("ragged or empty irrational block".into()));
        }
        let k = d + codim;
        // Physical rows in f64, then Gram-Schmidt for the chart.
        let mut rows: Vec<Vec<f64>> = (0..d)
            .map(|i| {
                let mut r = vec![0.0; k];
                r[i] = 1.0;
                for (j, v) in a[i].iter().enumerate() {
                    r[d + j] = v.to_f64();
                }
                r
            })
            .collect();
        for i in 0..d {
            for p in 0..i {
                let prev = rows[p].clone();
                let dot: f64 = rows[i].iter().zip(&prev).map(|(x, y)| x * y).sum();
                for (x, y) in rows[i].iter_mut().zip(&prev) {
                    *x -= dot * y;
                }
            }
            let norm: f64 = rows[i].iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-12 {
                return Err(Error::Numeric("degenerate physical rows".into()));
            }
            for x in &mut rows[i] {
                *x /= norm;
            }
        }
        Ok(CpsScheme { d, codim, a, chart: rows })
    }

    /// Golden-ratio scheme: Z^2 projected to a line of slope 1/phi.
    #[must_use]
    pub fn fibonacci_chain() -> CpsScheme {
        CpsScheme::canonical(vec![vec![HighPrec::golden()]]).expect("golden scheme")
    }

    /// Planar scheme in R^3: physical plane {(x, y, alpha x + beta y)}
    /// with a one-dimensional internal direction.  1, alpha, beta must be
    /// rationally independent for the point set to be aperiodic; this is
    /// the caller's responsibility.
    pub fn planar(alpha: HighPrec, beta: HighPrec) -> Result<CpsScheme> {
        CpsScheme::canonical(vec![vec![alpha], vec![beta]])
    }

    #[must_use]
    pub fn total_dim(&self) -> usize {
        self.d + self.codim
    }

    #[must_use]
    pub fn phys_dim(&self) -> usize {
        self.d
    }

    #[must_use]
    pub fn internal_dim(&self) -> usize {
        self.codim
    }

    #[must_use]
    pub fn irrational_block(&self) -> &[Vec<HighPrec>] {
        &self.a
    }

    /// Internal coordinates [-A^T | I] z, exact up to tracked error.
    #[must_use]
    pub fn internal_point(&self, z: &[i64]) -> Vec<HighPrec> {
        let (d, c) = (self.d, self.codim);
        (0..c)
            .map(|j| {
                let mut acc = HighPrec::from_int(z[d + j]);
                for i in 0..d {
                    acc = acc.sub(self.a[i][j].mul_int(z[i]));
                }
                acc
            })
            .collect()
    }

    /// Physical position in the orthonormal chart.
    #[must_use]
    pub fn position(&self, z: &[i64]) -> Vec<f64> {
        self.chart
            .iter()
            .map(|row| row.iter().zip(z).map(|(c, &zi)| c * zi as f64).sum())
            .collect()
    }

    /// Canonical window: the internal projection of the half-open unit
    /// cube, with closed bottom and open top on each axis.  This is a box
    /// exactly when each physical basis vector feeds at most one internal
    /// coordinate (always true in codimension one); coupled schemes
    /// project the cube to a zonotope and must supply an explicit window.
    pub fn canonical_window(&self) -> Result<Window> {
        for (i, row) in self.a.iter().enumerate() {
            let nonzero = row.iter().filter(|v| v.to_f64() != 0.0).count();
            if nonzero > 1 {
                return Err(Error::InvalidInput(format!(
                    "canonical acceptance region is not a box: physical basis \
                     vector {i} couples several internal coordinates; supply \
                     an explicit window"
                )));
            }
        }
        let k = self.total_dim();
        let mut lo = Vec::with_capacity(self.codim);
        let mut hi = Vec::with_capacity(self.codim);
        let mut lo_anchor = Vec::with_capacity(self.codim);
        let mut hi_anchor = Vec::with_capacity(self.codim);
        for j in 0..self.codim {
            // Bottom edge: u_i = 1 where a_ij > 0; top: u_i = 1 where
            // a_ij < 0, plus the internal unit step.
            let mut z0 = vec![0i64; k];
            let mut z1 = vec![0i64; k];
            z1[self.d + j] = 1;
            for i in 0..self.d {
                let v = self.a[i][j].to_f64();
                if v > 0.0 {
                    z0[i] = 1;
                } else if v < 0.0 {
                    z1[i] = 1;
                }
            }
            lo.push(self.internal_point(&z0)[j]);
            hi.push(self.internal_point(&z1)[j]);
            lo_anchor.push(Some(z0));
            hi_anchor.push(Some(z1));
        }
        Ok(Window::Box(BoxWindow { lo, hi, lo_anchor, hi_anchor }))
    }
}

/// Product of half-open intervals [lo_j, hi_j) in internal space.  Each
/// edge optionally remembers a lattice point whose internal image is the
/// edge value; membership against anchored edges is decided exactly.
#[derive(Clone)]
pub struct BoxWindow {
    lo: Vec<HighPrec>,
    hi: Vec<HighPrec>,
    lo_anchor: Vec<Option<Vec<i64>>>,
    hi_anchor: Vec<Option<Vec<i64>>>,
}

impl BoxWindow {
    #[must_use]
    pub fn lo(&self) -> &[HighPrec] {
        &self.lo
    }

    #[must_use]
    pub fn hi(&self) -> &[HighPrec] {
        &self.hi
    }
}

type PredicateFn = dyn Fn(&[HighPrec]) -> Result<bool> + Send + Sync;

/// Acceptance region in internal space.
#[derive(Clone)]
pub enum Window {
    /// Half-open box with certified membership.
    Box(BoxWindow),
    /// Intersection of closed half-spaces n.y <= b (f64 arithmetic),
    /// with a radius bound for enumeration.
    Polytope { halfspaces: Vec<(Vec<f64>, f64)>, bound: f64 },
    /// Arbitrary membership test plus a radius bound.  The caller vouches
    /// for nonempty interior where that matters.
    Predicate { pred: Arc<PredicateFn>, bound: f64 },
}

impl Window {
    /// Half-open box from plain edge values; every side must have
    /// positive length.
    pub fn box_window(lo: Vec<HighPrec>, hi: Vec<HighPrec>) -> Result<Window> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(Error::InvalidInput("bad box dimensions".into()));
        }
        for (l, h) in lo.iter().zip(&hi) {
            if h.sub(*l).to_f64() <= 0.0 {
                return Err(Error::InvalidInput("box window has empty interior".into()));
            }
        }
        let n = lo.len();
        Ok(Window::Box(BoxWindow {
            lo,
            hi,
            lo_anchor: vec![None; n],
            hi_anchor: vec![None; n],
        }))
    }

    pub fn interval(lo: HighPrec, hi: HighPrec) -> Result<Window> {
        Window::box_window(vec![lo], vec![hi])
    }

    /// Half-space intersection; rejected unless a strictly interior point
    /// is found by deterministic sampling inside the bound.
    pub fn polytope(halfspaces: Vec<(Vec<f64>, f64)>, bound: f64) -> Result<Window> {
        if halfspaces.is_empty() || !(bound > 0.0) {
            return Err(Error::InvalidInput("polytope needs half-spaces and a bound".into()));
        }
        let dim = halfspaces[0].0.len();
        if dim == 0 || halfspaces.iter().any(|(n, _)| n.len() != dim) {
            return Err(Error::InvalidInput("ragged half-space normals".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9_7f4a_7c15);
        let margin = 1e-9 * bound;
        let interior = (0..200_000).any(|_| {
            let y: Vec<f64> = (0..dim).map(|_| rng.gen_range(-bound..bound)).collect();
            halfspaces.iter().all(|(n, b)| {
                let dot: f64 = n.iter().zip(&y).map(|(a, c)| a * c).sum();
                dot < b - margin
            })
        });
        if !interior {
            return Err(Error::InvalidInput(
                "polytope window has empty interior (no strict sample found)".into(),
            ));
        }
        Ok(Window::Polytope { halfspaces, bound })
    }

    pub fn predicate(pred: Arc<PredicateFn>, bound: f64) -> Result<Window> {
        if !(bound > 0.0) {
            return Err(Error::InvalidInput("predicate window needs a positive bound".into()));
        }
        Ok(Window::Predicate { pred, bound })
    }

    /// Internal dimension the window constrains, if it fixes one.
    #[must_use]
    pub fn dim(&self) -> Option<usize> {
        match self {
            Window::Box(b) => Some(b.lo.len()),
            Window::Polytope { halfspaces, .. } => Some(halfspaces[0].0.len()),
            Window::Predicate { .. } => None,
        }
    }

    /// Radius of a ball around the origin containing the window.
    #[must_use]
    pub fn bound(&self) -> f64 {
        match self {
            Window::Box(b) => {
                let mut s = 0.0f64;
                for (l, h) in b.lo.iter().zip(&b.hi) {
                    let m = l.to_f64().abs().max(h.to_f64().abs());
                    s += m * m;
                }
                s.sqrt()
            }
            Window::Polytope { bound, .. } | Window::Predicate { bound, .. } => *bound,
        }
    }

    /// Membership from internal coordinates alone.  Singular inputs on an
    /// edge of a box window surface as a precision error; `accepts`
    /// resolves them exactly when the edge is lattice-anchored.
    pub fn contains(&self, y: &[HighPrec]) -> Result<bool> {
        match self {
            Window::Box(b) => {
                if y.len() != b.lo.len() {
                    return Err(Error::InvalidInput("window dimension mismatch".into()));
                }
                for ((v, l), h) in y.iter().zip(&b.lo).zip(&b.hi) {
                    if !v.certified_ge(l)? || v.certified_ge(h)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Window::Polytope { halfspaces, .. } => {
                let yf: Vec<f64> = y.iter().map(|v| v.to_f64()).collect();
                Ok(halfspaces
                    .iter()
                    .all(|(n, b)| n.iter().zip(&yf).map(|(a, c)| a * c).sum::<f64>() <= *b))
            }
            Window::Predicate { pred, .. } => pred(y),
        }
    }

    /// Membership of a lattice point.  Anchored box edges are tested by
    /// mapping the lattice difference through the internal projection, so
    /// shared irrational terms cancel and edge hits certify as exact.
    pub fn accepts(&self, scheme: &CpsScheme, z: &[i64]) -> Result<bool> {
        let Window::Box(b) = self else {
            return self.contains(&scheme.internal_point(z));
        };
        if b.lo.len() != scheme.internal_dim() {
            return Err(Error::InvalidInput("window dimension mismatch".into()));
        }
        let mut y: Option<Vec<HighPrec>> = None;
        for j in 0..b.lo.len() {
            let above_bottom = match &b.lo_anchor[j] {
                Some(z0) => {
                    let dz: Vec<i64> = z.iter().zip(z0).map(|(a, b)| a - b).collect();
                    scheme.internal_point(&dz)[j].certified_ge(&HighPrec::ZERO)?
                }
                None => {
                    let yv = y.get_or_insert_with(|| scheme.internal_point(z));
                    yv[j].certified_ge(&b.lo[j])?
                }
            };
            if !above_bottom {
                return Ok(false);
            }
            let below_top = match &b.hi_anchor[j] {
                Some(z1) => {
                    let dz: Vec<i64> = z1.iter().zip(z).map(|(a, b)| a - b).collect();
                    scheme.internal_point(&dz)[j].certified_cmp(&HighPrec::ZERO)?
                        == Ordering::Greater
                }
                None => {
                    let yv = y.get_or_insert_with(|| scheme.internal_point(z));
                    !yv[j].certified_ge(&b.hi[j])?
                }
            };
            if !below_top {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Distance from an internal point to the window boundary, when the
    /// window geometry exposes one (box windows only).
    #[must_use]
    pub fn boundary_distance(&self, y: &[f64]) -> Option<f64> {
        match self {
            Window::Box(b) => {
                let mut d = f64::INFINITY;
                for ((&v, l), h) in y.iter().zip(&b.lo).zip(&b.hi) {
                    d = d.min(v - l.to_f64()).min(h.to_f64() - v);
                }
                Some(d)
            }
            _ => None,
        }
    }
}

/// One selected lattice point.
#[derive(Clone, Debug)]
pub struct CpsPoint {
    pub lattice: Vec<i64>,
    pub position: Vec<f64>,
    pub internal: Vec<f64>,
}

/// All lattice points whose internal image lies in the window and whose
/// physical position has norm at most `radius`, sorted by position.
pub fn generate(scheme: &CpsScheme, window: &Window, radius: f64) -> Result<Vec<CpsPoint>> {
    if !(radius > 0.0) {
        return Err(Error::InvalidInput("radius must be positive".into()));
    }
    if let Some(wd) = window.dim() {
        if wd != scheme.internal_dim() {
            return Err(Error::InvalidInput("window dimension mismatch".into()));
        }
    }
    let k = scheme.total_dim();
    let d = scheme.phys_dim();
    let c = scheme.internal_dim();
    // Full transform F = [chart; internal] as f64, inverted for bounds.
    let mut f = vec![vec![0.0f64; k]; k];
    for i in 0..d {
        f[i][..k].copy_from_slice(&scheme.chart[i]);
    }
    for j in 0..c {
        for i in 0..d {
            f[d + j][i] = -scheme.a[i][j].to_f64();
        }
        f[d + j][d + j] = 1.0;
    }
    let finv = invert(&f)?;
    let wbound = window.bound();
    // |z_i| <= sum_j |Finv[i][j]| cap_j, padded.
    let caps: Vec<f64> = (0..k).map(|j| if j < d { radius } else { wbound }).collect();
    let zbound: Vec<i64> = (0..k)
        .map(|i| {
            let s: f64 = (0..k).map(|j| finv[i][j].abs() * caps[j]).sum();
            (s * (1.0 + 1e-9) + 1.0).ceil() as i64
        })
        .collect();
    // Candidate count: the physical box times, per point, the number of
    // integer internal coordinates compatible with the window bound.
    let mut cand: u64 = 1;
    for b in zbound.iter().take(d) {
        cand = cand.saturating_mul((2 * b + 1) as u64);
    }
    let per_internal = (2.0 * wbound + 3.0).ceil() as u64;
    for _ in 0..c {
        cand = cand.saturating_mul(per_internal);
    }
    if cand > MAX_CANDIDATES {
        return Err(Error::Resource(format!(
            "enumeration of about {cand} candidates exceeds cap {MAX_CANDIDATES}"
        )));
    }
    let mut out = Vec::new();
    let mut u = vec![0i64; d];
    enumerate_phys(scheme, window, radius, &zbound, &mut u, 0, &mut out)?;
    out.sort_by(|p, q| {
        p.position
            .iter()
            .zip(&q.position)
            .map(|(a, b)| a.total_cmp(b))
            .fold(Ordering::Equal, Ordering::then)
            .then_with(|| p.lattice.cmp(&q.lattice))
    });
    Ok(out)
}

fn enumerate_phys(
    scheme: &CpsScheme,
    window: &Window,
    radius: f64,
    zbound: &[i64],
    u: &mut Vec<i64>,
    axis: usize,
    out: &mut Vec<CpsPoint>,
) -> Result<()> {
    let d = scheme.phys_dim();
    if axis < d {
        for v in -zbound[axis]..=zbound[axis] {
            u[axis] = v;
            enumerate_phys(scheme, window, radius, zbound, u, axis + 1, out)?;
        }
        return Ok(());
    }
    // Internal coordinates v_j must lie near (A^T u)_j for the internal
    // image to reach the window; only a few integers qualify per axis.
    let c = scheme.internal_dim();
    let wbound = window.bound();
    let mut ranges = Vec::with_capacity(c);
    for j in 0..c {
        let mut t = 0.0f64;
        for i in 0..d {
            t += scheme.a[i][j].to_f64() * u[i] as f64;
        }
        let lo = (t - wbound - 1.0).floor() as i64;
        let hi = (t + wbound + 1.0).ceil() as i64;
        ranges.push((lo, hi));
    }
    let mut v = vec![0i64; c];
    enumerate_internal(scheme, window, radius, &ranges, u, &mut v, 0, out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_internal(
    scheme: &CpsScheme,
    window: &Window,
    radius: f64,
    ranges: &[(i64, i64)],
    u: &[i64],
    v: &mut Vec<i64>,
    axis: usize,
    out: &mut Vec<CpsPoint>,
) -> Result<()> {
    let c = scheme.internal_dim();
    if axis < c {
        for t in ranges[axis].0..=ranges[axis].1 {
            v[axis] = t;
            enumerate_internal(scheme, window, radius, ranges, u, v, axis + 1, out)?;
        }
        return Ok(());
    }
    let z: Vec<i64> = u.iter().chain(v.iter()).copied().collect();
    if !window.accepts(scheme, &z)? {
        return Ok(());
    }
    let pos = scheme.position(&z);
    let n2: f64 = pos.iter().map(|x| x * x).sum();
    if n2 > radius * radius {
        return Ok(());
    }
    let y = scheme.internal_point(&z);
    out.push(CpsPoint {
        lattice: z,
        position: pos,
        internal: y.iter().map(|h| h.to_f64()).collect(),
    });
    Ok(())
}

/// Gauss-Jordan inverse for the small transform matrices used here.
fn invert(m: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot][col].abs() < 1e-12 {
            return Err(Error::Numeric("singular projection transform".into()));
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for i in 0..n {
            if i != col {
                let f = a[i][col];
                for j in 0..n {
                    a[i][j] -= f * a[col][j];
                    inv[i][j] -= f * inv[col][j];
                }
            }
        }
    }
    Ok(inv)
}

/// One point of a slab-window construction: a Z^2 index, its lift into
/// the unit slab over the physical plane, and the realized internal value.
#[derive(Clone, Debug)]
pub struct SlabPoint {
    pub index: (i64, i64),
    pub lattice: [i64; 3],
    /// Physical chart coordinates (2D).
    pub position: Vec<f64>,
    /// Internal coordinate in [0, 1).
    pub internal: f64,
}

/// A planar scheme together with a predicate window carved from the
/// internal values realized by a chosen subset of Z^2.
pub struct SlabConstruction {
    pub scheme: CpsScheme,
    pub window: Window,
    pub points: Vec<SlabPoint>,
}

/// Cap on the Z^2 evaluation region of `slab_window`.
pub const MAX_SLAB_INDICES: u64 = 4_000_000;

/// Lift a subset of Z^2 into the unit slab 0 <= n3 - alpha n1 - beta n2 < 1
/// over the plane {(x, y, alpha x + beta y)} and turn the set of realized
/// internal values into a window.  Projecting the resulting point set back
/// to the plane is a bijection onto the chosen subset, with every point
/// displaced by less than the slab height; the window is a measure-zero
/// value set, not an interval, so the construction escapes every
/// box-window description while remaining a genuine cut-and-project set.
///
/// `keep` selects the Z^2 indices; the window only represents values
/// realized inside [-half_range, half_range]^2.
pub fn slab_window(
    alpha: HighPrec,
    beta: HighPrec,
    keep: &dyn Fn(i64, i64) -> bool,
    half_range: i64,
) -> Result<SlabConstruction> {
    if half_range < 0 {
        return Err(Error::InvalidInput("negative evaluation range".into()));
    }
    let side = 2 * half_range as u64 + 1;
    if side * side > MAX_SLAB_INDICES {
        return Err(Error::Resource(format!(
            "slab evaluation region of {} indices exceeds cap {MAX_SLAB_INDICES}",
            side * side
        )));
    }
    let scheme = CpsScheme::planar(alpha, beta)?;
    let mut points = Vec::new();
    let mut values: Vec<(f64, HighPrec)> = Vec::new();
    for m1 in -half_range..=half_range {
        for m2 in -half_range..=half_range {
            if !keep(m1, m2) {
                continue;
            }
            let v = alpha.mul_int(m1).add(beta.mul_int(m2));
            let f = v.floor();
            let base = f.to_f64();
            if base.abs() > 4.0e15 {
                return Err(Error::Precision("slab lift exceeds exact integer range".into()));
            }
            let lift = base as i64 + i64::from(v.sub(f).to_f64() != 0.0);
            let z = [m1, m2, lift];
            let t = scheme.internal_point(&z)[0];
            let tf = t.to_f64();
            points.push(SlabPoint {
                index: (m1, m2),
                lattice: z,
                position: scheme.position(&z),
                internal: tf,
            });
            values.push((tf, t));
        }
    }
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    let pred = move |y: &[HighPrec]| -> Result<bool> {
        if y.len() != 1 {
            return Err(Error::InvalidInput("slab window is one-dimensional".into()));
        }
        let yf = y[0].to_f64();
        let mut i = values.partition_point(|(k, _)| *k < yf - 1e-9);
        while i < values.len() && values[i].0 <= yf + 1e-9 {
            if values[i].1.same_repr(&y[0]) {
                return Ok(true);
            }
            let d = y[0].sub(values[i].1);
            if d.to_f64().abs() <= d.err_bound() {
                return Err(Error::Precision(
                    "internal value indistinguishable from a distinct window value".into(),
                ));
            }
            i += 1;
        }
        Ok(false)
    };
    let window = Window::predicate(Arc::new(pred), 1.0)?;
    Ok(SlabConstruction { scheme, window, points })
}
