//! Norm-5 right-triangle subdivision: the 1 : 2 : sqrt(5) triangle cut
//! into five isometric copies of itself at scale 1/sqrt(5), with one
//! chirality class flipped.  All similarity maps are exact ring
//! operations (multiplication by (2-i)/5 and Gaussian translations), so
//! patches of hundreds of thousands of tiles dedupe vertices exactly.
//!
//! Model triangle: right angle at 0, legs to 2 and i, unit area.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::tilings::gauss::{G5, GaussInt};

/// Hard cap on tiles in one patch.
pub const MAX_TILES: usize = 1_000_000;

/// Orientation-preserving-or-reversing similarity z -> rot * s(z) + trans
/// where s is conjugation when `reflect` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Similarity {
    pub rot: G5,
    pub trans: G5,
    pub reflect: bool,
}

impl Similarity {
    #[must_use]
    pub fn identity() -> Similarity {
        Similarity { rot: G5::ONE, trans: G5::ZERO, reflect: false }
    }

    #[must_use]
    pub fn apply(&self, z: G5) -> G5 {
        let w = if self.reflect { z.conj() } else { z };
        self.rot.mul(w).add(self.trans)
    }

    /// self after inner: (self . inner)(z) = self(inner(z)).
    #[must_use]
    pub fn compose(&self, inner: &Similarity) -> Similarity {
        let s = |x: G5| if self.reflect { x.conj() } else { x };
        Similarity {
            rot: self.rot.mul(s(inner.rot)),
            trans: self.rot.mul(s(inner.trans)).add(self.trans),
            reflect: self.reflect ^ inner.reflect,
        }
    }
}

/// The five child maps, each contracting by exactly 1/sqrt(5).
#[derive(Clone, Debug)]
pub struct PinwheelRule {
    pub children: Vec<Similarity>,
}

/// Corner coordinates of the model triangle.
#[must_use]
pub fn model_corners() -> [G5; 3] {
    [G5::ZERO, G5::int(2, 0), G5::I]
}

#[must_use]
pub fn pinwheel_rule() -> PinwheelRule {
    let step = |v: GaussInt, w: GaussInt, reflect: bool| -> Similarity {
        let scale = GaussInt::new(2, -1);
        Similarity {
            rot: G5::new(v.mul(scale), 1),
            trans: G5::new(w.mul(scale), 1),
            reflect,
        }
    };
    // Conway's grouping: three reflected children along the anti-diagonal
    // strip, two direct children filling the rest.
    PinwheelRule {
        children: vec![
            step(GaussInt::new(0, -1), GaussInt::new(0, 2), true),
            step(GaussInt::new(1, 0), GaussInt::new(0, 1), true),
            step(GaussInt::new(1, 0), GaussInt::new(2, 2), true),
            step(GaussInt::new(1, 0), GaussInt::new(0, 1), false),
            step(GaussInt::new(-1, 0), GaussInt::new(2, 2), false),
        ],
    }
}

/// A finite patch: tile maps from the model triangle, all within the
/// footprint of the seed triangle.
#[derive(Clone, Debug)]
pub struct PinwheelPatch {
    tiles: Vec<Similarity>,
    generation: u32,
}

impl PinwheelPatch {
    #[must_use]
    pub fn seed() -> PinwheelPatch {
        PinwheelPatch { tiles: vec![Similarity::identity()], generation: 0 }
    }

    #[must_use]
    pub fn tiles(&self) -> &[Similarity] {
        &self.tiles
    }

    #[must_use]
    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    #[must_use]
    pub fn generation(&self) -> u32 {
        self.generation
    }

    /// Replace every tile by its five children, `generations` times.
    pub fn substitute(&self, generations: u32) -> Result<PinwheelPatch> {
        let rule = pinwheel_rule();
        let mut tiles = self.tiles.clone();
        for _ in 0..generations {
            if tiles.len() > MAX_TILES / rule.children.len() {
                return Err(Error::Resource(format!(
                    "substitution would exceed the {MAX_TILES}-tile cap"
                )));
            }
            let mut next = Vec::with_capacity(tiles.len() * rule.children.len());
            for t in &tiles {
                for c in &rule.children {
                    next.push(t.compose(c));
                }
            }
            tiles = next;
        }
        Ok(PinwheelPatch { tiles, generation: self.generation + generations })
    }

    /// Corner triples of every tile.
    #[must_use]
    pub fn corners(&self) -> Vec<[G5; 3]> {
        let m = model_corners();
        self.tiles
            .iter()
            .map(|t| [t.apply(m[0]), t.apply(m[1]), t.apply(m[2])])
            .collect()
    }

    /// Exact total area in units of the seed triangle; the subdivision
    /// partitions the parent, so this is 1 at every generation.
    #[must_use]
    pub fn exact_area_is_one(&self) -> bool {
        let max_pow = self.tiles.iter().map(|t| t.rot.norm_sq().1).max().unwrap_or(0);
        let mut total: i128 = 0;
        for t in &self.tiles {
            let (n, p) = t.rot.norm_sq();
            total += i128::from(n) * 25i128.pow(max_pow - p);
        }
        total == 25i128.pow(max_pow)
    }

    /// Distinct rotation directions (chirality-separated): the primitive
    /// integer vector of the rotation numerator, which is scale-free.
    #[must_use]
    pub fn orientation_census(&self) -> usize {
        let mut seen: BTreeSet<(i64, i64, bool)> = BTreeSet::new();
        for t in &self.tiles {
            let g = t.rot.numerator();
            let d = gcd(g.re.unsigned_abs(), g.im.unsigned_abs()).max(1) as i64;
            seen.insert((g.re / d, g.im / d, t.reflect));
        }
        seen.len()
    }

    /// One marked point per tile: the image of (1/2, 1/2) measured from
    /// the right-angle corner.  Returned doubled so coordinates stay in
    /// the ring; halve after conversion to floats.
    #[must_use]
    pub fn reference_points_doubled(&self) -> Vec<G5> {
        self.tiles
            .iter()
            .map(|t| {
                let half = if t.reflect { G5::int(1, -1) } else { G5::int(1, 1) };
                t.rot.mul(half).add(t.trans.mul(G5::int(2, 0)))
            })
            .collect()
    }

    /// Reference points as floats in seed-triangle coordinates.
    #[must_use]
    pub fn reference_points(&self) -> Vec<[f64; 2]> {
        self.reference_points_doubled()
            .into_iter()
            .map(|p| {
                let [x, y] = p.to_xy();
                [x / 2.0, y / 2.0]
            })
            .collect()
    }

    /// All tile sides, for graph extraction.
    #[must_use]
    pub fn sides(&self) -> Vec<(G5, G5)> {
        let mut out = Vec::with_capacity(self.tiles.len() * 3);
        for c in self.corners() {
            out.push((c[0], c[1]));
            out.push((c[1], c[2]));
            out.push((c[2], c[0]));
        }
        out
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}
