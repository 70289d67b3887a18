//! Exact arithmetic in the cyclotomic ring Z[zeta] for zeta = e^{2 pi i/5}.
//!
//! Elements are stored on the integral basis (1, zeta, zeta^2, zeta^3);
//! every occurrence of zeta^4 is rewritten through the minimal polynomial
//! 1 + zeta + zeta^2 + zeta^3 + zeta^4 = 0.  The ring contains the golden
//! ratio phi = -zeta^2 - zeta^3 together with its inverse phi - 1, so all
//! five-fold rigid motions and contractions by 1/phi stay inside it and no
//! denominators are ever needed.

use std::f64::consts::PI;

/// Integer combination a0 + a1 zeta + a2 zeta^2 + a3 zeta^3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cyclo(pub [i64; 4]);

impl Cyclo {
    pub const ZERO: Cyclo = Cyclo([0, 0, 0, 0]);
    pub const ONE: Cyclo = Cyclo([1, 0, 0, 0]);
    pub const ZETA: Cyclo = Cyclo([0, 1, 0, 0]);
    /// e^{i pi/5}, the tenth root of unity -zeta^3.
    pub const MU: Cyclo = Cyclo([0, 0, 0, -1]);
    /// The golden ratio (1 + sqrt 5)/2 = -zeta^2 - zeta^3.
    pub const PHI: Cyclo = Cyclo([0, 0, -1, -1]);
    /// 1/phi = phi - 1, an algebraic integer.
    pub const INV_PHI: Cyclo = Cyclo([-1, 0, -1, -1]);

    #[must_use]
    pub fn from_int(n: i64) -> Cyclo {
        Cyclo([n, 0, 0, 0])
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    #[must_use]
    pub fn add(&self, rhs: &Cyclo) -> Cyclo {
        let mut c = [0i64; 4];
        for k in 0..4 {
            c[k] = self.0[k] + rhs.0[k];
        }
        Cyclo(c)
    }

    #[must_use]
    pub fn sub(&self, rhs: &Cyclo) -> Cyclo {
        let mut c = [0i64; 4];
        for k in 0..4 {
            c[k] = self.0[k] - rhs.0[k];
        }
        Cyclo(c)
    }

    #[must_use]
    pub fn neg(&self) -> Cyclo {
        let mut c = [0i64; 4];
        for k in 0..4 {
            c[k] = -self.0[k];
        }
        Cyclo(c)
    }

    /// Product, reduced with zeta^4 = -(1 + zeta + zeta^2 + zeta^3) and
    /// zeta^5 = 1.
    #[must_use]
    pub fn mul(&self, rhs: &Cyclo) -> Cyclo {
        let mut raw = [0i64; 7];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.0.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Cyclo([
            raw[0] - raw[4] + raw[5],
            raw[1] - raw[4] + raw[6],
            raw[2] - raw[4],
            raw[3] - raw[4],
        ])
    }

    #[must_use]
    pub fn pow(&self, mut n: u32) -> Cyclo {
        let mut base = *self;
        let mut acc = Cyclo::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Complex conjugation zeta -> zeta^4.
    #[must_use]
    pub fn conj(&self) -> Cyclo {
        let [a0, a1, a2, a3] = self.0;
        Cyclo([a0 - a1, -a1, a3 - a1, a2 - a1])
    }

    /// Reads the element as a + b phi when it is fixed by conjugation,
    /// i.e. lies in the real subring Z[phi].
    #[must_use]
    pub fn as_golden(&self) -> Option<(i64, i64)> {
        let [a0, a1, a2, a3] = self.0;
        if a1 == 0 && a2 == a3 {
            Some((a0, -a2))
        } else {
            None
        }
    }

    #[must_use]
    pub fn to_xy(&self) -> [f64; 2] {
        let mut x = 0.0;
        let mut y = 0.0;
        for (k, &a) in self.0.iter().enumerate() {
            if a != 0 {
                let t = 2.0 * PI * k as f64 / 5.0;
                x += a as f64 * t.cos();
                y += a as f64 * t.sin();
            }
        }
        [x, y]
    }
}

/// Exact sign of a + b phi.  Zero only when a = b = 0, since phi is
/// irrational.
#[must_use]
pub fn golden_sign(a: i64, b: i64) -> i8 {
    // a + b phi = ((2a + b) + b sqrt 5)/2.
    let p = 2 * a + b;
    let q = b;
    if p == 0 && q == 0 {
        return 0;
    }
    if p >= 0 && q >= 0 {
        return 1;
    }
    if p <= 0 && q <= 0 {
        return -1;
    }
    let pp = (p as i128) * (p as i128);
    let qq = 5 * (q as i128) * (q as i128);
    let dominant_is_p = pp > qq;
    if (p > 0) == dominant_is_p {
        1
    } else {
        -1
    }
}
