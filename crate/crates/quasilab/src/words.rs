//! Sturmian words, factor complexity, and maximal pattern complexity.
//!
//! Letters are generated from certified high-precision orbit values, so a
//! sample is either provably correct or the generator reports lost
//! precision instead of silently guessing near indicator boundaries.

use std::cmp::Ordering;
use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::HighPrec;

/// Which endpoint of the defining indicator interval is included.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// Letter 1 on {m alpha + theta} in [1-alpha, 1).
    LeftClosed,
    /// Fractional part taken in (0, 1]; letter 1 strictly above 1-alpha.
    RightClosed,
}

/// Rotation word x_m = indicator of the orbit point {m alpha + theta}
/// landing in the length-alpha interval at the top of the circle.
#[derive(Clone, Debug)]
pub struct RotationWord {
    pub alpha: HighPrec,
    pub theta: HighPrec,
    pub convention: Convention,
}

impl RotationWord {
    pub fn new(alpha: HighPrec, theta: HighPrec, convention: Convention) -> Result<RotationWord> {
        let a = alpha.to_f64();
        if !(0.0 < a && a < 1.0) {
            return Err(Error::InvalidInput(format!(
                "alpha must lie strictly between 0 and 1, got {a}"
            )));
        }
        Ok(RotationWord { alpha, theta, convention })
    }

    /// Letter at index m (indices start at 0).
    pub fn letter(&self, m: i64) -> Result<u8> {
        let v = self.alpha.mul_int(m).add(self.theta).frac();
        let threshold = HighPrec::ONE.sub(self.alpha);
        match self.convention {
            Convention::LeftClosed => {
                Ok(u8::from(v.certified_cmp(&threshold)? != Ordering::Less))
            }
            Convention::RightClosed => {
                // Move a fractional part of exactly 0 to 1.
                let v = match v.certified_cmp(&HighPrec::ZERO)? {
                    Ordering::Equal => HighPrec::ONE,
                    _ => v,
                };
                Ok(u8::from(v.certified_cmp(&threshold)? == Ordering::Greater))
            }
        }
    }

    /// Prefix x_0 .. x_{n-1}.
    pub fn prefix(&self, n: usize) -> Result<Vec<u8>> {
        (0..n as i64).map(|m| self.letter(m)).collect()
    }
}

/// Number of distinct length-n factors in the sample.
#[must_use]
pub fn factor_complexity(word: &[u8], n: usize) -> usize {
    if n == 0 || word.len() < n {
        return usize::from(n == 0);
    }
    let mut seen: HashSet<&[u8]> = HashSet::new();
    for w in word.windows(n) {
        seen.insert(w);
    }
    seen.len()
}

/// Upper bound on template size; the census bitset has 2^n slots.
pub const MAX_TEMPLATE_SIZE: usize = 16;

/// Budget on the number of candidate offset templates per verdict call.
const TEMPLATE_BUDGET: u64 = 20_000_000;

/// Distinct colorings of the positions m + offsets[i] seen while m slides
/// over the sample; stops early once `stop_above` is exceeded.
fn census(word: &[u8], offsets: &[usize], stop_above: usize) -> usize {
    let n = offsets.len();
    let span = offsets[n - 1];
    if word.len() <= span {
        return 0;
    }
    let mut bits = vec![0u64; ((1usize << n) + 63) / 64];
    let mut count = 0usize;
    for m in 0..word.len() - span {
        let mut code = 0usize;
        for (i, &t) in offsets.iter().enumerate() {
            code |= (word[m + t] as usize) << i;
        }
        let w = &mut bits[code / 64];
        let mask = 1u64 << (code % 64);
        if *w & mask == 0 {
            *w |= mask;
            count += 1;
            if count > stop_above {
                return count;
            }
        }
    }
    count
}

/// A template of sampling offsets together with its realized census.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateWitness {
    pub offsets: Vec<usize>,
    pub count: usize,
}

/// Outcome of probing whether the sample's maximal pattern complexity
/// looks like exactly 2n (the minimum possible for an aperiodic word).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternVerdict {
    /// Some template realizes more than 2n patterns.
    ExcessPatterns(TemplateWitness),
    /// Every template stays strictly below 2n: periodic-like sample.
    DeficientPatterns(TemplateWitness),
    /// The maximum over all searched templates is exactly 2n.
    Consistent(TemplateWitness),
}

/// Search all offset templates {0 = t_0 < t_1 < ... < t_{n-1} <= max_offset}
/// and classify the sample.  Censuses are monotone under adding offsets, so
/// a partial template already above 2n refutes immediately.
pub fn pattern_verdict(
    word: &[u8],
    n: usize,
    max_offset: usize,
) -> Result<PatternVerdict> {
    if n < 2 || n > MAX_TEMPLATE_SIZE {
        return Err(Error::InvalidInput(format!(
            "template size {n} outside 2..={MAX_TEMPLATE_SIZE}"
        )));
    }
    if max_offset < n - 1 {
        return Err(Error::InvalidInput(format!(
            "max offset {max_offset} cannot host {n} ascending offsets"
        )));
    }
    if let Some(&l) = word.iter().find(|&&l| l > 1) {
        return Err(Error::InvalidInput(format!(
            "pattern census needs a binary word, found letter {l}"
        )));
    }
    if word.len() <= 2 * max_offset {
        return Err(Error::InvalidInput(format!(
            "sample of length {} too short for offsets up to {max_offset}",
            word.len()
        )));
    }
    let combos = binomial(max_offset as u64, n as u64 - 1);
    if combos > TEMPLATE_BUDGET {
        return Err(Error::Resource(format!(
            "{combos} candidate templates exceed the search budget {TEMPLATE_BUDGET}"
        )));
    }
    let target = 2 * n;
    // Parallelize over the second offset; each branch walks its subtree.
    let results: Vec<TemplateWitness> = (1..=max_offset - (n - 2))
        .into_par_iter()
        .map(|t1| {
            let mut best = TemplateWitness { offsets: Vec::new(), count: 0 };
            let mut stack = vec![0usize, t1];
            walk(word, n, max_offset, target, &mut stack, &mut best);
            best
        })
        .collect();
    let best = results
        .into_iter()
        .max_by(|a, b| {
            a.count
                .cmp(&b.count)
                .then_with(|| b.offsets.cmp(&a.offsets))
        })
        .unwrap_or(TemplateWitness { offsets: vec![0], count: 0 });
    Ok(match best.count.cmp(&target) {
        Ordering::Greater => PatternVerdict::ExcessPatterns(best),
        Ordering::Less => PatternVerdict::DeficientPatterns(best),
        Ordering::Equal => PatternVerdict::Consistent(best),
    })
}

/// Depth-first extension of a partial template.  Updates `best` with the
/// highest census over completed templates in this subtree; aborts the
/// subtree as soon as any (partial or full) census exceeds `target`.
fn walk(
    word: &[u8],
    n: usize,
    max_offset: usize,
    target: usize,
    stack: &mut Vec<usize>,
    best: &mut TemplateWitness,
) {
    if best.count > target {
        return;
    }
    let c = census(word, stack, target);
    if c > target {
        *best = TemplateWitness { offsets: stack.clone(), count: c };
        return;
    }
    if stack.len() == n {
        if c > best.count {
            *best = TemplateWitness { offsets: stack.clone(), count: c };
        }
        return;
    }
    let remaining = n - stack.len();
    let last = *stack.last().unwrap();
    for t in last + 1..=max_offset - (remaining - 1) {
        stack.push(t);
        walk(word, n, max_offset, target, stack, best);
        stack.pop();
        if best.count > target {
            return;
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::parse_real;

    fn golden_word(n: usize) -> Vec<u8> {
        RotationWord::new(HighPrec::golden(), HighPrec::ZERO, Convention::LeftClosed)
            .unwrap()
            .prefix(n)
            .unwrap()
    }

    /// Parity-of-bit-count word, an independent fixture with rich patterns.
    fn thue_morse(n: usize) -> Vec<u8> {
        (0..n as u32).map(|m| (m.count_ones() & 1) as u8).collect()
    }

    #[test]
    fn golden_rotation_prefix_matches_hand_computation() {
        assert_eq!(golden_word(6), vec![0, 1, 0, 1, 1, 0]);
    }

    #[test]
    fn conventions_differ_exactly_on_orbit_hits() {
        // theta = 0: index 0 has fractional part 0, which the right-closed
        // convention reads as 1 (inside the interval).
        let rc = RotationWord::new(HighPrec::golden(), HighPrec::ZERO, Convention::RightClosed)
            .unwrap();
        assert_eq!(rc.letter(0).unwrap(), 1);
        let lc = golden_word(64);
        let rcw = rc.prefix(64).unwrap();
        assert_eq!(&lc[1..], &rcw[1..]);
        assert_ne!(lc[0], rcw[0]);
    }

    #[test]
    fn dyadic_alpha_yields_periodic_word_without_precision_loss() {
        // alpha = 1/2: orbit alternates {0, 1/2}; boundary hits are exact.
        let w = RotationWord::new(
            parse_real("0.5").unwrap(),
            HighPrec::ZERO,
            Convention::LeftClosed,
        )
        .unwrap()
        .prefix(10)
        .unwrap();
        assert_eq!(w, vec![0, 1, 0, 1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn sturmian_factor_complexity_is_n_plus_one() {
        let w = golden_word(3000);
        for n in 1..=10 {
            assert_eq!(factor_complexity(&w, n), n + 1, "length {n}");
        }
        assert_eq!(factor_complexity(&w, 0), 1);
    }

    #[test]
    fn census_counts_distinct_colorings() {
        // (01)-periodic: any template sees at most its two phases.
        let w: Vec<u8> = (0..200).map(|m| (m % 2) as u8).collect();
        assert_eq!(census(&w, &[0, 1, 2], 100), 2);
        assert_eq!(census(&w, &[0, 2, 4], 100), 2);
        // Parity word: exactly six contiguous length-3 windows, but a
        // spread template reveals more than 2n colorings.
        let tm = thue_morse(512);
        assert_eq!(census(&tm, &[0, 1, 2], 100), 6);
        assert!(census(&tm, &[0, 1, 3], 100) > 6);
    }

    #[test]
    fn periodic_word_is_pattern_deficient() {
        let w: Vec<u8> = (0..400).map(|m| (m % 2) as u8).collect();
        match pattern_verdict(&w, 3, 16).unwrap() {
            PatternVerdict::DeficientPatterns(wit) => {
                assert_eq!(wit.count, 2);
            }
            other => panic!("expected deficiency, got {other:?}"),
        }
    }

    #[test]
    fn rich_word_is_pattern_excessive() {
        let tm = thue_morse(600);
        match pattern_verdict(&tm, 3, 16).unwrap() {
            PatternVerdict::ExcessPatterns(wit) => {
                assert!(wit.count > 6);
                assert!(wit.offsets.len() <= 3);
            }
            other => panic!("expected excess, got {other:?}"),
        }
    }

    #[test]
    fn golden_rotation_word_is_consistent_with_doubled_count() {
        let w = golden_word(2500);
        for n in [2usize, 3, 4] {
            match pattern_verdict(&w, n, 14).unwrap() {
                PatternVerdict::Consistent(wit) => {
                    assert_eq!(wit.count, 2 * n);
                    assert_eq!(wit.offsets.len(), n);
                }
                other => panic!("n={n}: expected consistency, got {other:?}"),
            }
        }
    }

    #[test]
    fn verdict_input_validation() {
        let w = vec![0u8; 100];
        assert!(pattern_verdict(&w, 1, 10).is_err());
        assert!(pattern_verdict(&w, 20, 30).is_err());
        assert!(pattern_verdict(&w, 3, 1).is_err());
        assert!(pattern_verdict(&vec![2u8; 100], 3, 8).is_err());
        assert!(pattern_verdict(&w, 3, 60).is_err());
        let big = vec![0u8; 200];
        assert!(pattern_verdict(&big, 12, 90).is_err(), "budget guard");
    }
}
