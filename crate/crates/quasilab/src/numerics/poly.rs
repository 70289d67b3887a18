//! Integer polynomials: characteristic polynomials of integer matrices,
//! complex roots with error estimates, and factorization over Z.
//!
//! Factorization reconstructs candidate factors from conjugation-closed
//! subsets of the numerically computed roots and certifies them by exact
//! integer polynomial division, so the numeric step can never smuggle in
//! a wrong factor.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Degree cap for root finding and factorization.  Everything downstream
/// (substitution alphabets) stays far below this.
pub const MAX_DEGREE: usize = 12;

const ABERTH_MAX_ITER: usize = 400;

/// Polynomial with integer coefficients, `coeffs[i]` multiplying x^i.
/// Invariant: no trailing zero coefficients (the zero polynomial is `[]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<i128>,
}

impl IntPolynomial {
    #[must_use]
    pub fn new(mut coeffs: Vec<i128>) -> IntPolynomial {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    #[must_use]
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    #[must_use]
    pub fn leading(&self) -> i128 {
        *self.coeffs.last().unwrap_or(&0)
    }

    #[must_use]
    pub fn constant_term(&self) -> i128 {
        *self.coeffs.first().unwrap_or(&0)
    }

    #[must_use]
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + Complex64::new(c as f64, 0.0);
        }
        acc
    }

    #[must_use]
    pub fn derivative(&self) -> IntPolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * i as i128)
            .collect();
        IntPolynomial::new(coeffs)
    }

    /// Exact division; `None` unless `self = q * d` over Z.
    #[must_use]
    pub fn div_exact(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        if d.is_zero() || self.degree() < d.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let dn = d.degree();
        let dl = d.leading();
        let qn = self.degree() - dn;
        let mut q = vec![0i128; qn + 1];
        for k in (0..=qn).rev() {
            let c = rem[k + dn];
            if c % dl != 0 {
                return None;
            }
            let f = c / dl;
            q[k] = f;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= f * dc;
            }
        }
        if rem.iter().all(|&c| c == 0) {
            Some(IntPolynomial::new(q))
        } else {
            None
        }
    }

    /// All complex roots with per-root error estimates, by simultaneous
    /// (Aberth) iteration.  Deterministic: fixed initial configuration on a
    /// circle of Cauchy-bound radius.
    pub fn roots(&self) -> Result<Vec<PolyRoot>> {
        let n = self.degree();
        if self.is_zero() {
            return Err(Error::InvalidInput("roots of the zero polynomial".into()));
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        if n > MAX_DEGREE {
            return Err(Error::Resource(format!(
                "degree {n} exceeds root-finding cap {MAX_DEGREE}"
            )));
        }
        let an = self.leading() as f64;
        let cauchy = 1.0
            + self.coeffs[..n]
                .iter()
                .map(|&c| (c as f64 / an).abs())
                .fold(0.0f64, f64::max);
        let deriv = self.derivative();
        // Fixed asymmetric phase offset so no initial point sits on an axis.
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| {
                let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.3713;
                Complex64::from_polar(cauchy, ang)
            })
            .collect();
        for _ in 0..ABERTH_MAX_ITER {
            let mut moved = 0.0f64;
            for k in 0..n {
                let pv = self.eval_complex(z[k]);
                let dv = deriv.eval_complex(z[k]);
                let w = if dv.norm() == 0.0 {
                    Complex64::new(1e-12, 1e-12)
                } else {
                    pv / dv
                };
                let mut s = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    if j != k {
                        let d = z[k] - z[j];
                        if d.norm() > 0.0 {
                            s += d.inv();
                        }
                    }
                }
                let denom = Complex64::new(1.0, 0.0) - w * s;
                let step = if denom.norm() < 1e-14 { w } else { w / denom };
                z[k] -= step;
                moved = moved.max(step.norm() / (1.0 + z[k].norm()));
            }
            if moved < 1e-15 {
                break;
            }
        }
        let mut out: Vec<PolyRoot> = z
            .into_iter()
            .map(|zk| {
                let pv = self.eval_complex(zk).norm();
                let dv = deriv.eval_complex(zk).norm();
                let err = if dv > 0.0 {
                    (n as f64 * pv / dv).max(1e-15 * (1.0 + zk.norm()))
                } else {
                    1e-7
                };
                PolyRoot { z: zk, err }
            })
            .collect();
        out.sort_by(|a, b| {
            a.z.re
                .total_cmp(&b.z.re)
                .then(a.z.im.total_cmp(&b.z.im))
        });
        Ok(out)
    }

    /// Full factorization into irreducible monic integer polynomials.
    /// Only monic inputs (up to sign) are supported; characteristic
    /// polynomials always qualify.
    pub fn factor(&self) -> Result<Vec<IntPolynomial>> {
        if self.is_zero() {
            return Err(Error::InvalidInput("factor of the zero polynomial".into()));
        }
        let mut p = self.clone();
        if p.leading() == -1 {
            p = IntPolynomial::new(p.coeffs.iter().map(|&c| -c).collect());
        }
        if p.leading() != 1 {
            return Err(Error::InvalidInput(
                "factorization supports monic polynomials only".into(),
            ));
        }
        let mut out = Vec::new();
        factor_rec(p, &mut out)?;
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.coeffs.cmp(&b.coeffs)));
        Ok(out)
    }
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PolyRoot {
    pub z: Complex64,
    /// Estimated absolute error of the root location.
    pub err: f64,
}

fn factor_rec(p: IntPolynomial, out: &mut Vec<IntPolynomial>) -> Result<()> {
    let n = p.degree();
    if n <= 1 {
        if n == 1 {
            out.push(p);
        }
        return Ok(());
    }
    let roots = p.roots()?;
    // Try conjugation-closed root subsets by increasing size; certify any
    // near-integer candidate by exact division.
    for size in 1..=n / 2 {
        for mask in 1u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let sel: Vec<Complex64> = (0..n)
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| roots[k].z)
                .collect();
            // Expand prod (x - z), coefficients lowest-first, and check
            // realness/integrality before attempting certification.
            let mut poly = vec![Complex64::new(1.0, 0.0)];
            for &z in &sel {
                let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
                for (i, &pc) in poly.iter().enumerate() {
                    next[i + 1] += pc;
                    next[i] -= z * pc;
                }
                poly = next;
            }
            let ok = poly.iter().all(|v| {
                v.im.abs() < 1e-6 && (v.re - v.re.round()).abs() < 1e-6
            });
            if !ok {
                continue;
            }
            let cand = IntPolynomial::new(poly.iter().map(|v| v.re.round() as i128).collect());
            if cand.degree() != size {
                continue;
            }
            if let Some(q) = p.div_exact(&cand) {
                factor_rec(cand, out)?;
                factor_rec(q, out)?;
                return Ok(());
            }
        }
    }
    out.push(p);
    Ok(())
}

/// Characteristic polynomial det(xI - A) of an integer matrix, by the
/// Faddeev-LeVerrier recurrence.  All divisions are exact in Z.
pub fn char_poly(a: &[Vec<i64>]) -> Result<IntPolynomial> {
    let n = a.len();
    if n == 0 || a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput("char_poly needs a square matrix".into()));
    }
    let ai: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut c = vec![0i128; n + 1];
    c[n] = 1;
    // m holds A * (M_{k-1} + c_{n-k+1} I) at step k.
    let mut m = vec![vec![0i128; n]; n];
    for k in 1..=n {
        // m <- A*m + c[n-k+1]*A
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i128;
                for l in 0..n {
                    s += ai[i][l] * m[l][j];
                }
                next[i][j] = s + c[n - k + 1] * ai[i][j];
            }
        }
        m = next;
        let tr: i128 = (0..n).map(|i| m[i][i]).sum();
        debug_assert_eq!(tr % k as i128, 0);
        c[n - k] = -tr / k as i128;
    }
    Ok(IntPolynomial::new(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i128]) -> IntPolynomial {
        IntPolynomial::new(coeffs.to_vec())
    }

    #[test]
    fn char_poly_known_matrices() {
        // Companion-style substitution matrices.
        let fib = char_poly(&[vec![1, 1], vec![1, 0]]).unwrap();
        assert_eq!(fib.coeffs(), &[-1, -1, 1]); // x^2 - x - 1
        let tm = char_poly(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(tm.coeffs(), &[0, -2, 1]); // x^2 - 2x
        let trib = char_poly(&[vec![1, 1, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(trib.coeffs(), &[-1, -1, -1, 1]); // x^3 - x^2 - x - 1
        let ident = char_poly(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(ident.coeffs(), &[1, -2, 1]); // (x-1)^2
    }

    #[test]
    fn roots_of_golden_quadratic() {
        // x^2 - x - 1: roots phi and -1/phi.
        let roots = p(&[-1, -1, 1]).roots().unwrap();
        assert_eq!(roots.len(), 2);
        let phi = 1.618033988749895f64;
        assert!((roots[1].z.re - phi).abs() < 1e-12);
        assert!(roots[1].z.im.abs() < 1e-12);
        assert!((roots[0].z.re + 1.0 / phi).abs() < 1e-12);
        assert!(roots.iter().all(|r| r.err < 1e-10));
    }

    #[test]
    fn roots_of_cubic_with_complex_pair() {
        // x^3 - x^2 - x - 1: real root 1.8392867552...
        let roots = p(&[-1, -1, -1, 1]).roots().unwrap();
        let real: Vec<_> = roots.iter().filter(|r| r.z.im.abs() < 1e-9).collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].z.re - 1.8392867552141612).abs() < 1e-10);
        // Complex pair modulus: product of all roots = 1 => |pair|^2 = 1/lambda.
        let pair: Vec<_> = roots.iter().filter(|r| r.z.im.abs() >= 1e-9).collect();
        let m = pair[0].z.norm();
        assert!((m - (1.0 / 1.8392867552141612f64).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn exact_division_certifies() {
        // (x^2 - x - 1)(x - 2) = x^3 - 3x^2 + x + 2.
        let prod = p(&[2, 1, -3, 1]);
        let d = p(&[-1, -1, 1]);
        let q = prod.div_exact(&d).unwrap();
        assert_eq!(q.coeffs(), &[-2, 1]);
        assert!(prod.div_exact(&p(&[1, 1, 1])).is_none());
    }

    #[test]
    fn factor_reducible_and_irreducible() {
        // x^2 - 2x = x (x - 2).
        let f = p(&[0, -2, 1]).factor().unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.contains(&p(&[0, 1])));
        assert!(f.contains(&p(&[-2, 1])));
        // x^2 - x - 1 is irreducible.
        let f = p(&[-1, -1, 1]).factor().unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].coeffs(), &[-1, -1, 1]);
        // x^3 - x^2 - x - 1 is irreducible.
        let f = p(&[-1, -1, -1, 1]).factor().unwrap();
        assert_eq!(f.len(), 1);
        // x^4 - 1 = (x-1)(x+1)(x^2+1).
        let f = p(&[-1, 0, 0, 0, 1]).factor().unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.contains(&p(&[-1, 1])));
        assert!(f.contains(&p(&[1, 1])));
        assert!(f.contains(&p(&[1, 0, 1])));
        // Repeated factor: (x-1)^2.
        let f = p(&[1, -2, 1]).factor().unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].coeffs(), &[-1, 1]);
        assert_eq!(f[1].coeffs(), &[-1, 1]);
    }

    #[test]
    fn display_readable() {
        assert_eq!(p(&[-1, -1, 1]).to_string(), "x^2 - x - 1");
        assert_eq!(p(&[0, -2, 1]).to_string(), "x^2 - 2*x");
        assert_eq!(p(&[2, 0, 0, 1]).to_string(), "x^3 + 2");
    }
}
