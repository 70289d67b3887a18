//! Closed-interval unions on the real line.
//!
//! Used for spectra: a band set is kept normalized (sorted, pairwise
//! disjoint, intervals closer than the merge tolerance fused).

use crate::error::{Error, Result};

pub const DEFAULT_MERGE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
}

impl Band {
    pub fn new(lo: f64, hi: f64) -> Result<Band> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::InvalidInput(format!("bad interval [{lo}, {hi}]")));
        }
        Ok(Band { lo, hi })
    }

    #[must_use]
    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BandSet {
    bands: Vec<Band>,
}

impl BandSet {
    /// Normalize raw intervals: sort by left endpoint and merge any pair
    /// overlapping or separated by a gap of at most `tol`.
    pub fn from_intervals(raw: &[(f64, f64)], tol: f64) -> Result<BandSet> {
        let mut v = Vec::with_capacity(raw.len());
        for &(lo, hi) in raw {
            v.push(Band::new(lo, hi)?);
        }
        v.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
        let mut out: Vec<Band> = Vec::with_capacity(v.len());
        for b in v {
            match out.last_mut() {
                Some(last) if b.lo <= last.hi + tol => {
                    if b.hi > last.hi {
                        last.hi = b.hi;
                    }
                }
                _ => out.push(b),
            }
        }
        Ok(BandSet { bands: out })
    }

    #[must_use]
    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    #[must_use]
    pub fn count(&self) -> usize {
        self.bands.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.bands.is_empty()
    }

    /// Total Lebesgue measure.
    #[must_use]
    pub fn measure(&self) -> f64 {
        self.bands.iter().map(Band::length).sum()
    }

    #[must_use]
    pub fn min(&self) -> Option<f64> {
        self.bands.first().map(|b| b.lo)
    }

    #[must_use]
    pub fn max(&self) -> Option<f64> {
        self.bands.last().map(|b| b.hi)
    }

    #[must_use]
    pub fn contains(&self, x: f64) -> bool {
        // Bands are sorted; binary search on the left endpoints.
        let i = self.bands.partition_point(|b| b.lo <= x);
        i > 0 && x <= self.bands[i - 1].hi
    }

    /// Open gaps between consecutive bands (the complement inside the hull).
    #[must_use]
    pub fn gaps(&self) -> Vec<Band> {
        self.bands
            .windows(2)
            .map(|w| Band { lo: w[0].hi, hi: w[1].lo })
            .collect()
    }

    /// Minkowski sum {a + b : a in self, b in rhs}, renormalized.
    pub fn minkowski_sum(&self, rhs: &BandSet, tol: f64) -> Result<BandSet> {
        let mut raw = Vec::with_capacity(self.bands.len() * rhs.bands.len());
        for a in &self.bands {
            for b in &rhs.bands {
                raw.push((a.lo + b.lo, a.hi + b.hi));
            }
        }
        BandSet::from_intervals(&raw, tol)
    }

    /// Pointwise scale of every band by `c` (c may be negative).
    #[must_use]
    pub fn scale(&self, c: f64) -> BandSet {
        let mut bands: Vec<Band> = self
            .bands
            .iter()
            .map(|b| {
                let (x, y) = (b.lo * c, b.hi * c);
                Band { lo: x.min(y), hi: x.max(y) }
            })
            .collect();
        bands.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        BandSet { bands }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_merges_overlaps_and_narrow_gaps() {
        let s = BandSet::from_intervals(
            &[(0.0, 1.0), (0.5, 2.0), (3.0, 4.0), (4.0 + 1e-13, 5.0)],
            DEFAULT_MERGE_TOL,
        )
        .unwrap();
        assert_eq!(s.count(), 2);
        assert!((s.measure() - (2.0 + 2.0 - 1e-13)).abs() < 1e-9);
        assert_eq!(s.bands()[0], Band { lo: 0.0, hi: 2.0 });
    }

    #[test]
    fn wide_gaps_survive() {
        let s = BandSet::from_intervals(&[(0.0, 1.0), (1.5, 2.0)], 1e-12).unwrap();
        assert_eq!(s.count(), 2);
        let g = s.gaps();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0], Band { lo: 1.0, hi: 1.5 });
    }

    #[test]
    fn membership_via_binary_search() {
        let s = BandSet::from_intervals(&[(0.0, 1.0), (2.0, 3.0)], 1e-12).unwrap();
        assert!(s.contains(0.0));
        assert!(s.contains(1.0));
        assert!(!s.contains(1.5));
        assert!(s.contains(2.5));
        assert!(!s.contains(-0.1));
        assert!(!s.contains(3.1));
    }

    #[test]
    fn minkowski_sum_of_unit_intervals() {
        // [0,1] + [0,1] = [0,2]; {[0,1],[10,11]} + {[0,1]} has two parts.
        let a = BandSet::from_intervals(&[(0.0, 1.0), (10.0, 11.0)], 1e-12).unwrap();
        let b = BandSet::from_intervals(&[(0.0, 1.0)], 1e-12).unwrap();
        let s = a.minkowski_sum(&b, 1e-12).unwrap();
        assert_eq!(s.count(), 2);
        assert_eq!(s.bands()[0], Band { lo: 0.0, hi: 2.0 });
        assert_eq!(s.bands()[1], Band { lo: 10.0, hi: 12.0 });
        assert!((s.measure() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn minkowski_sum_cantor_style_fills_in() {
        // Level-1 middle-thirds set summed with itself covers [0, 4/3]... scaled:
        // C1 = [0,1/3] u [2/3,1]; C1 + C1 = [0,2/3] u [2/3,1] u ... = [0,2].
        let c1 = BandSet::from_intervals(&[(0.0, 1.0 / 3.0), (2.0 / 3.0, 1.0)], 1e-12).unwrap();
        let s = c1.minkowski_sum(&c1, 1e-12).unwrap();
        assert_eq!(s.count(), 1);
        assert!((s.measure() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_inverted_or_nonfinite() {
        assert!(BandSet::from_intervals(&[(1.0, 0.0)], 1e-12).is_err());
        assert!(BandSet::from_intervals(&[(0.0, f64::NAN)], 1e-12).is_err());
    }
}
