//! Letter substitutions: parsing, abelianization, primitivity, fixed
//! points, Perron tile lengths, and the algebraic report (Pisot property,
//! irreducibility, unimodularity) that decides whether a system falls in
//! the scope of the pure-point spectrum conjecture for substitutions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::poly::{char_poly, IntPolynomial};

#[derive(Clone, Debug)]
pub struct Substitution {
    alphabet: Vec<char>,
    /// rules[i] is the image of letter i as a sequence of letter indices.
    rules: Vec<Vec<usize>>,
}

impl Substitution {
    /// Parse rules like "a->ab; b->a".  Every letter used in any image must
    /// have its own rule; images must be nonempty.
    pub fn parse(input: &str) -> Result<Substitution> {
        let mut alphabet: Vec<char> = Vec::new();
        let mut images: Vec<String> = Vec::new();
        for rule in input.split(';') {
            let rule = rule.trim();
            if rule.is_empty() {
                continue;
            }
            let (lhs, rhs) = rule
                .split_once("->")
                .ok_or_else(|| Error::InvalidInput(format!("rule '{rule}' lacks '->'")))?;
            let lhs = lhs.trim();
            let rhs = rhs.trim();
            let mut chars = lhs.chars();
            let letter = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "left side of '{rule}' must be a single letter"
                    )))
                }
            };
            if rhs.is_empty() {
                return Err(Error::InvalidInput(format!("empty image for '{letter}'")));
            }
            if alphabet.contains(&letter) {
                return Err(Error::InvalidInput(format!("duplicate rule for '{letter}'")));
            }
            alphabet.push(letter);
            images.push(rhs.to_string());
        }
        if alphabet.is_empty() {
            return Err(Error::InvalidInput("no substitution rules given".into()));
        }
        let index = |c: char| -> Result<usize> {
            alphabet
                .iter()
                .position(|&a| a == c)
                .ok_or_else(|| Error::InvalidInput(format!("letter '{c}' has no rule")))
        };
        let rules = images
            .iter()
            .map(|img| img.chars().map(index).collect::<Result<Vec<usize>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Substitution { alphabet, rules })
    }

    #[must_use]
    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    #[must_use]
    pub fn letter_index(&self, c: char) -> Option<usize> {
        self.alphabet.iter().position(|&a| a == c)
    }

    #[must_use]
    pub fn apply(&self, word: &[usize]) -> Vec<usize> {
        let mut out = Vec::with_capacity(word.len() * 2);
        for &l in word {
            out.extend_from_slice(&self.rules[l]);
        }
        out
    }

    #[must_use]
    pub fn word_to_string(&self, word: &[usize]) -> String {
        word.iter().map(|&l| self.alphabet[l]).collect()
    }

    /// Abelianization: entry (i, j) counts letter i in the image of j.
    #[must_use]
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.alphabet.len();
        let mut m = vec![vec![0i64; n]; n];
        for (j, img) in self.rules.iter().enumerate() {
            for &i in img {
                m[i][j] += 1;
            }
        }
        m
    }

    /// Some power of the matrix is entrywise positive.  The exponent is
    /// bounded by (n-1)^2 + 1 when primitivity holds at all.
    #[must_use]
    pub fn is_primitive(&self) -> bool {
        let n = self.alphabet.len();
        let m = self.matrix();
        let base: Vec<Vec<bool>> = m
            .iter()
            .map(|r| r.iter().map(|&x| x > 0).collect())
            .collect();
        let mut acc = base.clone();
        let cap = (n - 1) * (n - 1) + 1;
        for _ in 0..cap {
            if acc.iter().all(|r| r.iter().all(|&b| b)) {
                return true;
            }
            let mut next = vec![vec![false; n]; n];
            for i in 0..n {
                for k in 0..n {
                    if acc[i][k] {
                        for j in 0..n {
                            if base[k][j] {
                                next[i][j] = true;
                            }
                        }
                    }
                }
            }
            if next == acc {
                break;
            }
            acc = next;
        }
        acc.iter().all(|r| r.iter().all(|&b| b))
    }

    /// Length-`len` prefix of the one-sided fixed point seeded at `seed`.
    /// The seed letter must begin its own image.  A letter mapped exactly
    /// to itself yields the periodic extension of that cycle.
    pub fn fixed_point(&self, seed: char, len: usize) -> Result<Vec<usize>> {
        let s = self
            .letter_index(seed)
            .ok_or_else(|| Error::InvalidInput(format!("unknown seed letter '{seed}'")))?;
        let mut w = vec![s];
        loop {
            if w.len() >= len {
                w.truncate(len);
                return Ok(w);
            }
            let mut next = Vec::with_capacity(len.min(w.len() * 4));
            'outer: for &l in &w {
                for &x in &self.rules[l] {
                    next.push(x);
                    if next.len() >= len {
                        break 'outer;
                    }
                }
            }
            if next == w {
                // sigma(w) = w below the target: extend periodically.
                let cycle = w.clone();
                return Ok((0..len).map(|i| cycle[i % cycle.len()]).collect());
            }
            if next.len() < w.len() || next[..w.len()] != w[..] {
                return Err(Error::InvalidInput(format!(
                    "'{seed}' does not seed a fixed point: its image does not extend it"
                )));
            }
            w = next;
        }
    }

    /// Tile lengths from the left Perron eigenvector of the abelianization,
    /// scaled so the shortest tile has length exactly 1.
    pub fn perron_tile_lengths(&self) -> Result<Vec<f64>> {
        if !self.is_primitive() {
            return Err(Error::InvalidInput(
                "tile lengths require a primitive substitution".into(),
            ));
        }
        let n = self.alphabet.len();
        let m = self.matrix();
        // Power iteration on the transpose.
        let mut v = vec![1.0f64; n];
        for _ in 0..500 {
            let mut next = vec![0.0f64; n];
            for i in 0..n {
                for j in 0..n {
                    next[j] += m[i][j] as f64 * v[i];
                }
            }
            let norm = next.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
            if norm == 0.0 {
                return Err(Error::Numeric("zero vector in power iteration".into()));
            }
            for x in &mut next {
                *x /= norm;
            }
            let delta: f64 = v
                .iter()
                .zip(&next)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            v = next;
            if delta < 1e-15 {
                break;
            }
        }
        let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
        if !(min > 0.0) {
            return Err(Error::Numeric("non-positive Perron eigenvector entry".into()));
        }
        Ok(v.iter().map(|x| x / min).collect())
    }

    /// Left endpoints of the tiles laid end to end along `word`, using the
    /// Perron tile lengths.  One point per letter, starting at 0.
    pub fn natural_tile_points(&self, word: &[usize]) -> Result<Vec<f64>> {
        let lengths = self.perron_tile_lengths()?;
        let mut points = Vec::with_capacity(word.len());
        let mut x = 0.0f64;
        for &l in word {
            points.push(x);
            x += lengths[l];
        }
        Ok(points)
    }

    /// Full algebraic report on the abelianization.
    pub fn perron_report(&self) -> Result<PerronReport> {
        let m = self.matrix();
        let cp = char_poly(&m)?;
        let primitive = self.is_primitive();
        let unimodular = cp.constant_term().abs() == 1;
        let roots = cp.roots()?;
        // Perron root: the largest modulus; for primitive matrices it is
        // real, positive and simple.
        let lead = roots
            .iter()
            .max_by(|a, b| a.z.norm().total_cmp(&b.z.norm()))
            .ok_or_else(|| Error::Numeric("characteristic polynomial has no roots".into()))?;
        let lambda = lead.z.re;
        let lambda_err = lead.err;
        if lead.z.im.abs() > 1e-9 + lead.err {
            return Err(Error::Numeric(format!(
                "dominant eigenvalue is not real: {}",
                lead.z
            )));
        }
        let factors = cp.factor()?;
        let irreducible = factors.len() == 1;
        // Minimal polynomial: the irreducible factor vanishing at lambda.
        let lz = Complex64::new(lambda, 0.0);
        let min_poly = factors
            .iter()
            .min_by(|a, b| {
                a.eval_complex(lz)
                    .norm()
                    .total_cmp(&b.eval_complex(lz).norm())
            })
            .cloned()
            .ok_or_else(|| Error::Numeric("empty factorization".into()))?;
        let conj_roots = min_poly.roots()?;
        let mut conjugate_moduli = Vec::new();
        let mut certified = lambda - lambda_err > 1.0;
        let mut inside = true;
        let mut matched = false;
        for r in &conj_roots {
            if !matched && (r.z - lz).norm() <= 1e-6 + r.err + lambda_err {
                matched = true;
                continue;
            }
            let md = r.z.norm();
            conjugate_moduli.push(md);
            if md + r.err >= 1.0 {
                inside = false;
                if (md - 1.0).abs() <= r.err {
                    certified = false;
                }
            }
        }
        if !matched {
            return Err(Error::Numeric(
                "could not locate the dominant root inside its own factor".into(),
            ));
        }
        conjugate_moduli.sort_by(f64::total_cmp);
        let is_pisot = lambda - lambda_err > 1.0 && inside && certified;
        Ok(PerronReport {
            matrix: m,
            char_poly: cp,
            lambda,
            lambda_err,
            min_poly,
            conjugate_moduli,
            primitive,
            irreducible,
            unimodular,
            is_pisot,
            pisot_certified: certified,
            conjecture_applies: primitive && is_pisot && irreducible,
        })
    }
}

/// Algebraic summary of a substitution's abelianization.
#[derive(Clone, Debug)]
pub struct PerronReport {
    pub matrix: Vec<Vec<i64>>,
    pub char_poly: IntPolynomial,
    /// Dominant eigenvalue and its root-location error estimate.
    pub lambda: f64,
    pub lambda_err: f64,
    /// Irreducible factor of the characteristic polynomial at lambda.
    pub min_poly: IntPolynomial,
    /// Moduli of the other roots of the minimal polynomial, ascending.
    pub conjugate_moduli: Vec<f64>,
    pub primitive: bool,
    pub irreducible: bool,
    /// |det M| = 1, read off the constant coefficient.
    pub unimodular: bool,
    /// lambda > 1 and all algebraic conjugates strictly inside the unit
    /// circle, with margins exceeding the root error estimates.
    pub is_pisot: bool,
    pub pisot_certified: bool,
    /// Primitive, Pisot, and irreducible: the hypotheses under which pure
    /// point diffraction is conjectured.
    pub conjecture_applies: bool,
}
