//! Exact coordinates for norm-5 triangle subdivision: Gaussian integers
//! scaled by powers of 1/5.  A subdivision step multiplies by (2-i)/5,
//! whose modulus is exactly 1/sqrt(5), so every vertex of every
//! generation is representable and comparable without rounding.

use std::cmp::Ordering;

/// Gaussian integer a + b i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    #[must_use]
    pub fn new(re: i64, im: i64) -> GaussInt {
        GaussInt { re, im }
    }

    pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    pub const I: GaussInt = GaussInt { re: 0, im: 1 };

    #[must_use]
    pub fn add(self, o: GaussInt) -> GaussInt {
        GaussInt { re: self.re + o.re, im: self.im + o.im }
    }

    #[must_use]
    pub fn sub(self, o: GaussInt) -> GaussInt {
        GaussInt { re: self.re - o.re, im: self.im - o.im }
    }

    #[must_use]
    pub fn neg(self) -> GaussInt {
        GaussInt { re: -self.re, im: -self.im }
    }

    #[must_use]
    pub fn mul(self, o: GaussInt) -> GaussInt {
        GaussInt {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }

    #[must_use]
    pub fn conj(self) -> GaussInt {
        GaussInt { re: self.re, im: -self.im }
    }

    /// Field norm a^2 + b^2.
    #[must_use]
    pub fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    fn divisible_by_5(self) -> bool {
        self.re % 5 == 0 && self.im % 5 == 0
    }
}

/// Element of Z[i, 1/5]: a Gaussian integer divided by 5^pow, kept in
/// lowest terms so equality is componentwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct G5 {
    g: GaussInt,
    pow: u32,
}

impl G5 {
    pub const ZERO: G5 = G5 { g: GaussInt::ZERO, pow: 0 };
    pub const ONE: G5 = G5 { g: GaussInt::ONE, pow: 0 };
    pub const I: G5 = G5 { g: GaussInt::I, pow: 0 };

    #[must_use]
    pub fn new(g: GaussInt, pow: u32) -> G5 {
        G5 { g, pow }.normalize()
    }

    #[must_use]
    pub fn from_gauss(g: GaussInt) -> G5 {
        G5 { g, pow: 0 }
    }

    #[must_use]
    pub fn int(re: i64, im: i64) -> G5 {
        G5 { g: GaussInt::new(re, im), pow: 0 }
    }

    fn normalize(mut self) -> G5 {
        while self.pow > 0 && self.g.divisible_by_5() {
            self.g = GaussInt::new(self.g.re / 5, self.g.im / 5);
            self.pow -= 1;
        }
        if self.g == GaussInt::ZERO {
            self.pow = 0;
        }
        self
    }

    #[must_use]
    pub fn numerator(self) -> GaussInt {
        self.g
    }

    #[must_use]
    pub fn denominator_pow(self) -> u32 {
        self.pow
    }

    /// Both operands over the common denominator 5^max.
    fn aligned(self, o: G5) -> (GaussInt, GaussInt, u32) {
        let p = self.pow.max(o.pow);
        let scale = |x: G5| -> GaussInt {
            let mut g = x.g;
            for _ in 0..(p - x.pow) {
                g = GaussInt::new(g.re * 5, g.im * 5);
            }
            g
        };
        (scale(self), scale(o), p)
    }

    #[must_use]
    pub fn add(self, o: G5) -> G5 {
        let (a, b, p) = self.aligned(o);
        G5 { g: a.add(b), pow: p }.normalize()
    }

    #[must_use]
    pub fn sub(self, o: G5) -> G5 {
        let (a, b, p) = self.aligned(o);
        G5 { g: a.sub(b), pow: p }.normalize()
    }

    #[must_use]
    pub fn neg(self) -> G5 {
        G5 { g: self.g.neg(), pow: self.pow }
    }

    #[must_use]
    pub fn mul(self, o: G5) -> G5 {
        G5 { g: self.g.mul(o.g), pow: self.pow + o.pow }.normalize()
    }

    #[must_use]
    pub fn conj(self) -> G5 {
        G5 { g: self.g.conj(), pow: self.pow }
    }

    /// Squared modulus as an exact rational (numerator, power of 25).
    #[must_use]
    pub fn norm_sq(self) -> (i64, u32) {
        (self.g.norm(), self.pow)
    }

    #[must_use]
    pub fn to_xy(self) -> [f64; 2] {
        let d = 5f64.powi(self.pow as i32);
        [self.g.re as f64 / d, self.g.im as f64 / d]
    }

    /// Numerator after raising to the common denominator 5^target.
    /// Panics if target < self.pow (callers pass a patch-wide maximum).
    #[must_use]
    pub fn scaled_numerator(self, target: u32) -> GaussInt {
        assert!(target >= self.pow, "denominator target below actual");
        let mut g = self.g;
        for _ in 0..(target - self.pow) {
            g = GaussInt::new(g.re * 5, g.im * 5);
        }
        g
    }
}

impl PartialOrd for G5 {
    fn partial_cmp(&self, other: &G5) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for G5 {
    fn cmp(&self, other: &G5) -> Ordering {
        // Normalized form is unique, so componentwise order is total and
        // consistent with equality.
        let (a, b, _) = self.aligned(*other);
        a.cmp(&b)
    }
}
