//! Double-double scalar with a tracked absolute error bound.
//!
//! A value is stored as an unevaluated sum `hi + lo` of two doubles with
//! `|lo| <= ulp(hi)/2`, giving roughly 106 significand bits.  Every
//! operation also propagates a conservative absolute error bound so that
//! comparisons against indicator endpoints can detect when they are no
//! longer trustworthy.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Unit roundoff of the double-double format, 2^-104.
pub const EPS_DD: f64 = 4.930380657631324e-32;

/// Floor for ulp estimates so error bounds never collapse to exactly zero
/// after an inexact operation.
const TINY: f64 = 1e-300;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Requires |a| >= |b| or a == 0.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// High-precision real scalar: double-double value plus an absolute error
/// bound on how far it may sit from the mathematical quantity it models.
#[derive(Clone, Copy, Debug)]
pub struct HighPrec {
    hi: f64,
    lo: f64,
    /// Absolute error bound, always finite and non-negative.
    err: f64,
}

impl HighPrec {
    pub const ZERO: HighPrec = HighPrec { hi: 0.0, lo: 0.0, err: 0.0 };
    pub const ONE: HighPrec = HighPrec { hi: 1.0, lo: 0.0, err: 0.0 };

    #[inline]
    fn ulp_of(x: f64) -> f64 {
        x.abs() * EPS_DD + TINY
    }

    #[inline]
    fn renorm(hi: f64, lo: f64, err: f64) -> HighPrec {
        let (h, l) = quick_two_sum(hi, lo);
        HighPrec { hi: h, lo: l, err }
    }

    /// Exact conversion; every i64 fits in a double-double.
    #[must_use]
    pub fn from_int(n: i64) -> HighPrec {
        let hi = n as f64;
        let rem = n - hi as i64;
        HighPrec::renorm(hi, rem as f64, 0.0)
    }

    /// Exact lift of a double.
    #[must_use]
    pub fn from_f64(x: f64) -> HighPrec {
        HighPrec { hi: x, lo: 0.0, err: 0.0 }
    }

    #[must_use]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Current absolute error bound.
    #[must_use]
    pub fn err_bound(self) -> f64 {
        self.err
    }

    /// Componentwise equality of the representable parts, ignoring error
    /// bounds.  Two values computed by the same sequence of operations on
    /// the same inputs always satisfy this; it detects re-encounters of a
    /// value where interval reasoning alone cannot certify equality.
    #[must_use]
    pub fn same_repr(&self, other: &HighPrec) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }

    /// The exact double this value equals, when it is a rounding-free
    /// single double (used to route rationals to exact integer paths).
    #[must_use]
    pub fn as_exact_f64(self) -> Option<f64> {
        if self.is_exact_single() {
            Some(self.hi)
        } else {
            None
        }
    }

    /// True when the stored pair is a single rounding-free double and the
    /// bound is zero; sums and products of such values are exact.
    #[inline]
    fn is_exact_single(self) -> bool {
        self.err == 0.0 && self.lo == 0.0
    }

    #[must_use]
    pub fn add(self, rhs: HighPrec) -> HighPrec {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        // two_sum is an exact transform, so single-double operands with no
        // accumulated error produce an exact double-double sum.
        let err = if self.is_exact_single() && rhs.is_exact_single() {
            0.0
        } else {
            self.err + rhs.err + Self::ulp_of(hi)
        };
        HighPrec { hi, lo, err }
    }

    #[must_use]
    pub fn sub(self, rhs: HighPrec) -> HighPrec {
        self.add(rhs.neg())
    }

    #[must_use]
    pub fn neg(self) -> HighPrec {
        HighPrec { hi: -self.hi, lo: -self.lo, err: self.err }
    }

    #[must_use]
    pub fn mul(self, rhs: HighPrec) -> HighPrec {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        // fma-based two_prod captures a product of single doubles exactly.
        let err = if self.is_exact_single() && rhs.is_exact_single() {
            0.0
        } else {
            let a = self.hi.abs() + self.lo.abs();
            let b = rhs.hi.abs() + rhs.lo.abs();
            a * rhs.err + b * self.err + self.err * rhs.err + Self::ulp_of(hi)
        };
        HighPrec { hi, lo, err }
    }

    #[must_use]
    pub fn mul_int(self, n: i64) -> HighPrec {
        self.mul(HighPrec::from_int(n))
    }

    /// Division; the divisor must be bounded away from zero by more than
    /// its own error bound.
    pub fn div(self, rhs: HighPrec) -> Result<HighPrec> {
        let d = rhs.to_f64();
        if d == 0.0 || d.abs() <= rhs.err {
            return Err(Error::Precision(
                "division by a value indistinguishable from zero".into(),
            ));
        }
        let q1 = self.hi / rhs.hi;
        let r = self.sub_value(rhs.mul_f64_value(q1));
        let q2 = r.0 / rhs.hi;
        let r = HighPrec { hi: r.0, lo: r.1, err: 0.0 }
            .sub_value(rhs.mul_f64_value(q2));
        let q3 = r.0 / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        let q = self.to_f64() / d;
        let err = (self.err + q.abs() * rhs.err) / (d.abs() - rhs.err) + Self::ulp_of(hi);
        Ok(HighPrec { hi, lo, err })
    }

    /// Value-only subtraction used inside div (error handled by caller).
    #[inline]
    fn sub_value(self, rhs: (f64, f64)) -> (f64, f64) {
        let (s1, s2) = two_sum(self.hi, -rhs.0);
        let (t1, t2) = two_sum(self.lo, -rhs.1);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        quick_two_sum(s1, s2 + t2)
    }

    #[inline]
    fn mul_f64_value(self, c: f64) -> (f64, f64) {
        let (p1, p2) = two_prod(self.hi, c);
        quick_two_sum(p1, p2 + self.lo * c)
    }

    #[must_use]
    pub fn abs(self) -> HighPrec {
        if self.to_f64() < 0.0 { self.neg() } else { self }
    }

    /// Largest integer not exceeding the value.  Exact as long as the value
    /// is not within its error bound of an integer; in that ambiguous case
    /// the result follows the stored double-double value.
    #[must_use]
    pub fn floor(self) -> HighPrec {
        let f = self.hi.floor();
        if f == self.hi {
            let g = self.lo.floor();
            HighPrec::renorm(f, g, self.err)
        } else {
            HighPrec { hi: f, lo: 0.0, err: self.err }
        }
    }

    /// Fractional part in [0,1).
    #[must_use]
    pub fn frac(self) -> HighPrec {
        let mut r = self.sub(self.floor());
        // Guard the half-open range against rounding at the seam, using
        // the full double-double order (to_f64 would round 1 - tiny to 1).
        if r.total_cmp(&HighPrec::ZERO) == Ordering::Less {
            r = r.add(HighPrec::ONE);
        }
        if r.total_cmp(&HighPrec::ONE) != Ordering::Less {
            r = r.sub(HighPrec::ONE);
        }
        r
    }

    /// Distance to the nearest integer.
    #[must_use]
    pub fn dist_to_int(self) -> HighPrec {
        let f = self.frac();
        let alt = HighPrec::ONE.sub(f);
        if f.total_cmp(&alt) == Ordering::Greater { alt } else { f }
    }

    /// sqrt(n) for a non-negative integer, by Newton refinement of the
    /// double estimate.  The error bound comes from the final residual.
    pub fn sqrt_int(n: i64) -> Result<HighPrec> {
        if n < 0 {
            return Err(Error::InvalidInput(format!("sqrt of negative integer {n}")));
        }
        if n == 0 {
            return Ok(HighPrec::ZERO);
        }
        let nd = HighPrec::from_int(n);
        let mut x = HighPrec::from_f64((n as f64).sqrt());
        for _ in 0..3 {
            // x <- (x + n/x) / 2
            let q = nd.div(x)?;
            x = x.add(q).mul(HighPrec::from_f64(0.5));
            x.err = 0.0;
        }
        // Residual bound: |x^2 - n| / (2 x), plus a few ulps of slack.
        let resid = x.mul(x).sub(nd).to_f64().abs();
        x.err = resid / (2.0 * x.to_f64()) + 4.0 * Self::ulp_of(x.hi);
        Ok(x)
    }

    /// (sqrt(5) - 1) / 2, the inverse golden ratio.
    #[must_use]
    pub fn golden() -> HighPrec {
        let s5 = HighPrec::sqrt_int(5).expect("sqrt(5)");
        s5.sub(HighPrec::ONE)
            .div(HighPrec::from_int(2))
            .expect("division by 2")
    }

    /// Order on the stored double-double values (error bounds ignored).
    #[must_use]
    pub fn total_cmp(&self, other: &HighPrec) -> Ordering {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo).unwrap_or(Ordering::Equal),
            Some(ord) => ord,
            None => Ordering::Equal,
        }
    }

    /// Compare against a threshold, failing if the error bound straddles it.
    pub fn certified_ge(&self, threshold: &HighPrec) -> Result<bool> {
        match self.certified_cmp(threshold)? {
            Ordering::Less => Ok(false),
            _ => Ok(true),
        }
    }

    /// Three-way certified comparison.  An exact coincidence (difference
    /// exactly zero with an error bound at the noise floor, as happens for
    /// dyadic-rational inputs) resolves to Equal; anything else inside the
    /// error bound is reported as lost precision.
    pub fn certified_cmp(&self, other: &HighPrec) -> Result<Ordering> {
        let diff = self.sub(*other);
        let v = diff.to_f64();
        if v.abs() > diff.err {
            return Ok(if v > 0.0 { Ordering::Greater } else { Ordering::Less });
        }
        if v == 0.0 && diff.err < 1e-200 {
            return Ok(Ordering::Equal);
        }
        Err(Error::Precision(format!(
            "comparison within error bound: |{v:e}| <= {:e}",
            diff.err
        )))
    }
}

impl fmt::Display for HighPrec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

/// Parse a real-number token.  Accepted forms:
/// `golden`, `sqrt<D>` or `sqrt(<D>)`, `(p+q*sqrt(D))/r` with integer
/// p, q, r (r nonzero), and plain decimal literals.
pub fn parse_real(token: &str) -> Result<HighPrec> {
    let t: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::InvalidInput("empty number token".into()));
    }
    if t == "golden" {
        return Ok(HighPrec::golden());
    }
    if let Some(rest) = t.strip_prefix("sqrt") {
        let inner = rest
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(rest);
        let d: i64 = inner
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad sqrt argument in '{token}'")))?;
        return HighPrec::sqrt_int(d);
    }
    if t.starts_with('(') {
        return parse_quadratic(&t, token);
    }
    let x: f64 = t
        .parse()
        .map_err(|_| Error::InvalidInput(format!("unrecognized number token '{token}'")))?;
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite literal '{token}'")));
    }
    let mut v = HighPrec::from_f64(x);
    // A decimal literal that does not round-trip was rounded on parse.
    if format!("{x}") != t {
        v.err = x.abs() * f64::EPSILON + TINY;
    }
    Ok(v)
}

/// `(p+q*sqrt(D))/r` with integer p, q, D >= 0, r != 0.  A leading minus
/// on p or q is allowed, as is `-q*sqrt(D)` written with a binary minus.
fn parse_quadratic(t: &str, original: &str) -> Result<HighPrec> {
    let bad = || Error::InvalidInput(format!("unrecognized number token '{original}'"));
    let close = t.rfind(')').ok_or_else(bad)?;
    // Split "(body)/r"; the sqrt's own parentheses close before `body` ends.
    let (head, tail) = t.split_at(close + 1);
    let body = &head[1..head.len() - 1];
    let r: i64 = tail.strip_prefix('/').ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if r == 0 {
        return Err(Error::InvalidInput(format!("zero denominator in '{original}'")));
    }
    // Find the +/- that separates p from q*sqrt(D): the last sign that is
    // not at position 0 and not immediately after '*' or '('.
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if (bytes[i] == b'+' || bytes[i] == b'-')
            && bytes[i - 1] != b'*'
            && bytes[i - 1] != b'('
            && body[i..].contains("sqrt")
        {
            split = Some(i);
            break;
        }
    }
    let i = split.ok_or_else(bad)?;
    let p: i64 = body[..i].parse().map_err(|_| bad())?;
    let sign: i64 = if bytes[i] == b'-' { -1 } else { 1 };
    let qterm = &body[i + 1..];
    let (q, d) = match qterm.split_once("*sqrt") {
        Some((qs, ds)) => {
            let q: i64 = qs.parse().map_err(|_| bad())?;
            (q, ds)
        }
        None => {
            let ds = qterm.strip_prefix("sqrt").ok_or_else(bad)?;
            (1, ds)
        }
    };
    let d: i64 = d
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(d)
        .parse()
        .map_err(|_| bad())?;
    let root = HighPrec::sqrt_int(d)?;
    HighPrec::from_int(p)
        .add(root.mul_int(sign * q))
        .div(HighPrec::from_int(r))
}
