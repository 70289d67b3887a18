//! Penrose tiling generated by Robinson-triangle inflation over Z[zeta5].
//!
//! Two half-rhombus tile types drive the rule.  The acute triangle
//! (angles 36-72-72, sides phi, phi, 1) splits into two acute children
//! and one obtuse child; the obtuse triangle (36-36-108, sides 1, 1, phi)
//! splits into one of each.  Every child map contracts by exactly
//! 1/phi = phi - 1, which is itself a ring element, so similarity maps,
//! corner dedupe, area bookkeeping and the orientation census all reduce
//! to integer computations with no rounding anywhere.
//!
//! Gluing two triangles of the same type along their base edge recovers
//! the rhombus presentation: acute pairs form thin rhombi, obtuse pairs
//! thick ones.  `mesh` exposes both views; bases left unpaired at the
//! patch boundary stay as triangle faces.

use std::collections::{BTreeMap, BTreeSet};

use super::cyclo::Cyclo;
use crate::error::{Error, Result};

/// Hard ceiling on tiles held in memory.  An acute seed stays under it
/// through fourteen inflation steps (832040 tiles); the fifteenth would
/// need 2178309 and is refused.
pub const MAX_TILES: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RobinsonKind {
    Acute,
    Obtuse,
}

/// Orientation-preserving or -reversing similarity z -> rot*z + trans,
/// with z conjugated first when `reflect` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PenroseMap {
    pub rot: Cyclo,
    pub trans: Cyclo,
    pub reflect: bool,
}

impl PenroseMap {
    #[must_use]
    pub fn identity() -> PenroseMap {
        PenroseMap {
            rot: Cyclo::ONE,
            trans: Cyclo::ZERO,
            reflect: false,
        }
    }

    #[must_use]
    pub fn apply(&self, z: &Cyclo) -> Cyclo {
        let arg = if self.reflect { z.conj() } else { *z };
        self.rot.mul(&arg).add(&self.trans)
    }

    /// Composition self after inner, as maps.
    #[must_use]
    pub fn compose(&self, inner: &PenroseMap) -> PenroseMap {
        let (r, t) = if self.reflect {
            (inner.rot.conj(), inner.trans.conj())
        } else {
            (inner.rot, inner.trans)
        };
        PenroseMap {
            rot: self.rot.mul(&r),
            trans: self.rot.mul(&t).add(&self.trans),
            reflect: self.reflect != inner.reflect,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PenroseTile {
    pub kind: RobinsonKind,
    pub map: PenroseMap,
}

/// Child lists for each parent type.  Each entry maps the child's model
/// triangle into the parent's model triangle.
pub struct PenroseRule {
    pub acute_children: Vec<(RobinsonKind, PenroseMap)>,
    pub obtuse_children: Vec<(RobinsonKind, PenroseMap)>,
}

/// Model triangle corners at generation zero.  The apex (the corner whose
/// angle is unique) comes first; the side between corners 1 and 2 is the
/// base, the gluing diagonal of the rhombus presentation.
#[must_use]
pub fn model_corners(kind: RobinsonKind) -> [Cyclo; 3] {
    let phi_mu = Cyclo::PHI.mul(&Cyclo::MU);
    match kind {
        RobinsonKind::Acute => [Cyclo::ZERO, Cyclo::PHI, phi_mu],
        RobinsonKind::Obtuse => [Cyclo::ONE, phi_mu, Cyclo::ZERO],
    }
}

/// The Robinson-triangle inflation.  Corner images were checked by hand:
/// the acute triangle (0, phi, phi*mu) splits at the points 1 (on the
/// real side) and mu/phi (on the upper side) into acute pieces
/// (phi*mu, phi, 1), (phi*mu, mu/phi, 1) and the obtuse piece
/// (mu/phi, 0, 1); the obtuse triangle (1, phi*mu, 0) splits along the
/// segment from 1 to mu into the acute (0, 1, mu) and obtuse
/// (mu, 1, phi*mu) pieces.  Exactly one child per acute parent is
/// reflected.
#[must_use]
pub fn robinson_penrose_rule() -> PenroseRule {
    let phi_mu = Cyclo::PHI.mul(&Cyclo::MU);
    let contract = Cyclo::INV_PHI;
    let acute_children = vec![
        (
            RobinsonKind::Acute,
            PenroseMap {
                rot: Cyclo::ONE.sub(&Cyclo::MU),
                trans: phi_mu,
                reflect: true,
            },
        ),
        (
            RobinsonKind::Acute,
            PenroseMap {
                rot: Cyclo::MU.neg().mul(&contract),
                trans: phi_mu,
                reflect: false,
            },
        ),
        (
            RobinsonKind::Obtuse,
            PenroseMap {
                rot: Cyclo::MU.sub(&Cyclo::PHI).mul(&contract),
                trans: Cyclo::ONE,
                reflect: false,
            },
        ),
    ];
    let obtuse_children = vec![
        (
            RobinsonKind::Acute,
            PenroseMap {
                rot: contract,
                trans: Cyclo::ZERO,
                reflect: false,
            },
        ),
        (
            RobinsonKind::Obtuse,
            PenroseMap {
                rot: Cyclo::MU.neg().mul(&contract),
                trans: phi_mu,
                reflect: false,
            },
        ),
    ];
    PenroseRule {
        acute_children,
        obtuse_children,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PenroseVariant {
    Triangles,
    Rhombi,
}

/// Face/side view of a patch under one of the two presentations.
pub struct PenroseMesh {
    pub sides: Vec<[Cyclo; 2]>,
    pub faces: usize,
    /// Number of glued base pairs (only nonzero for the rhombus view).
    pub merged_pairs: usize,
}

#[derive(Debug)]
pub struct PenrosePatch {
    tiles: Vec<PenroseTile>,
    generation: u32,
    seed: RobinsonKind,
}

impl PenrosePatch {
    #[must_use]
    pub fn seed(kind: RobinsonKind) -> PenrosePatch {
        PenrosePatch {
            tiles: vec![PenroseTile {
                kind,
                map: PenroseMap::identity(),
            }],
            generation: 0,
            seed: kind,
        }
    }

    #[must_use]
    pub fn tiles(&self) -> &[PenroseTile] {
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

    /// Acute and obtuse tile counts, in that order.
    #[must_use]
    pub fn type_counts(&self) -> (usize, usize) {
        let acute = self
            .tiles
            .iter()
            .filter(|t| t.kind == RobinsonKind::Acute)
            .count();
        (acute, self.tiles.len() - acute)
    }

    pub fn substitute(&self, generations: u32) -> Result<PenrosePatch> {
        let rule = robinson_penrose_rule();
        let mut tiles = self.tiles.clone();
        let mut generation = self.generation;
        for _ in 0..generations {
            let next: usize = tiles
                .iter()
                .map(|t| match t.kind {
                    RobinsonKind::Acute => 3,
                    RobinsonKind::Obtuse => 2,
                })
                .sum();
            if next > MAX_TILES {
                return Err(Error::Resource(format!(
                    "inflation step {} needs {} tiles, cap is {}",
                    generation + 1,
                    next,
                    MAX_TILES
                )));
            }
            let mut expanded = Vec::with_capacity(next);
            for tile in &tiles {
                let children = match tile.kind {
                    RobinsonKind::Acute => &rule.acute_children,
                    RobinsonKind::Obtuse => &rule.obtuse_children,
                };
                for (kind, map) in children {
                    expanded.push(PenroseTile {
                        kind: *kind,
                        map: tile.map.compose(map),
                    });
                }
            }
            tiles = expanded;
            generation += 1;
        }
        Ok(PenrosePatch {
            tiles,
            generation,
            seed: self.seed,
        })
    }

    /// Exact corner triples, one per tile, in the seed's footprint.
    #[must_use]
    pub fn corners(&self) -> Vec<[Cyclo; 3]> {
        self.tiles
            .iter()
            .map(|t| {
                let m = model_corners(t.kind);
                [
                    t.map.apply(&m[0]),
                    t.map.apply(&m[1]),
                    t.map.apply(&m[2]),
                ]
            })
            .collect()
    }

    /// Number of distinct rotation parts, chirality-separated.  All
    /// rotations are ring units times the common contraction, so exact
    /// tuple comparison is the right equality.
    #[must_use]
    pub fn orientation_census(&self) -> usize {
        let mut seen = BTreeSet::new();
        for tile in &self.tiles {
            seen.insert((tile.map.rot, tile.map.reflect));
        }
        seen.len()
    }

    /// The rule designates no per-tile reference point, so this input is
    /// rejected rather than answered arbitrarily.
    pub fn reference_points(&self) -> Result<Vec<[f64; 2]>> {
        Err(Error::InvalidInput(
            "robinson triangles designate no reference point; use tile corners or centroids"
                .into(),
        ))
    }

    /// Integer identity: the tile areas, measured in units of the model
    /// acute area, sum to the seed's area.  Obtuse area is 1/phi of the
    /// acute one and every tile is scaled by |rot|^2.
    #[must_use]
    pub fn exact_area_is_conserved(&self) -> bool {
        let ratio = |kind: RobinsonKind| match kind {
            RobinsonKind::Acute => Cyclo::ONE,
            RobinsonKind::Obtuse => Cyclo::INV_PHI,
        };
        let mut total = Cyclo::ZERO;
        for tile in &self.tiles {
            let sq = tile.map.rot.mul(&tile.map.rot.conj());
            total = total.add(&sq.mul(&ratio(tile.kind)));
        }
        total == ratio(self.seed)
    }

    /// Sides and faces under the chosen presentation.  The rhombus view
    /// buckets tiles by the unordered endpoint pair of their base edge;
    /// a bucket of two is a glued rhombus (base edge dropped), a bucket
    /// of one is a boundary triangle that keeps its base.
    #[must_use]
    pub fn mesh(&self, variant: PenroseVariant) -> PenroseMesh {
        let corners = self.corners();
        match variant {
            PenroseVariant::Triangles => {
                let mut sides = Vec::with_capacity(3 * corners.len());
                for c in &corners {
                    sides.push([c[0], c[1]]);
                    sides.push([c[1], c[2]]);
                    sides.push([c[2], c[0]]);
                }
                PenroseMesh {
                    sides,
                    faces: corners.len(),
                    merged_pairs: 0,
                }
            }
            PenroseVariant::Rhombi => {
                let mut sides = Vec::new();
                let mut bases: BTreeMap<(Cyclo, Cyclo), usize> = BTreeMap::new();
                for c in &corners {
                    sides.push([c[0], c[1]]);
                    sides.push([c[2], c[0]]);
                    let key = if c[1] <= c[2] {
                        (c[1], c[2])
                    } else {
                        (c[2], c[1])
                    };
                    *bases.entry(key).or_insert(0) += 1;
                }
                let mut merged_pairs = 0;
                let mut unpaired = 0;
                for (key, count) in &bases {
                    match count {
                        1 => {
                            sides.push([key.0, key.1]);
                            unpaired += 1;
                        }
                        2 => merged_pairs += 1,
                        _ => unreachable!("three interior-disjoint tiles cannot share a base"),
                    }
                }
                PenroseMesh {
                    sides,
                    faces: merged_pairs + unpaired,
                    merged_pairs,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib(n: usize) -> usize {
        let (mut a, mut b) = (0usize, 1usize);
        for _ in 0..n {
            let t = a + b;
            a = b;
            b = t;
        }
        a
    }

    #[test]
    fn rule_contracts_both_types_by_exactly_one_over_phi() {
        let rule = robinson_penrose_rule();
        assert_eq!(rule.acute_children.len(), 3);
        assert_eq!(rule.obtuse_children.len(), 2);
        let sq = Cyclo::INV_PHI.mul(&Cyclo::INV_PHI);
        let mut reflected = 0;
        for (_, map) in rule.acute_children.iter().chain(&rule.obtuse_children) {
            assert_eq!(map.rot.mul(&map.rot.conj()), sq);
            reflected += usize::from(map.reflect);
        }
        assert_eq!(reflected, 1);
        // Each child list partitions its parent by exact area.
        for (children, parent_ratio) in [
            (&rule.acute_children, Cyclo::ONE),
            (&rule.obtuse_children, Cyclo::INV_PHI),
        ] {
            let mut total = Cyclo::ZERO;
            for (kind, map) in children.iter() {
                let ratio = match kind {
                    RobinsonKind::Acute => Cyclo::ONE,
                    RobinsonKind::Obtuse => Cyclo::INV_PHI,
                };
                total = total.add(&map.rot.mul(&map.rot.conj()).mul(&ratio));
            }
            assert_eq!(total, parent_ratio);
        }
    }

    #[test]
    fn tile_counts_follow_consecutive_fibonacci_numbers() {
        let mut patch = PenrosePatch::seed(RobinsonKind::Acute);
        for n in 1..=8u32 {
            patch = patch.substitute(1).unwrap();
            let (acute, obtuse) = patch.type_counts();
            assert_eq!(acute, fib(2 * n as usize + 1));
            assert_eq!(obtuse, fib(2 * n as usize));
        }
        assert_eq!(patch.tile_count(), 2584);
        let gen7 = PenrosePatch::seed(RobinsonKind::Acute).substitute(7).unwrap();
        assert_eq!(gen7.tile_count(), 987);
    }

    #[test]
    fn area_is_conserved_exactly_at_every_generation() {
        for seed in [RobinsonKind::Acute, RobinsonKind::Obtuse] {
            for n in 0..=5 {
                let patch = PenrosePatch::seed(seed).substitute(n).unwrap();
                assert!(patch.exact_area_is_conserved(), "{seed:?} gen {n}");
            }
        }
        // Equivalent closed form from an acute seed:
        // N_acute + N_obtuse (phi - 1) = phi^(2n).
        let n = 6u32;
        let patch = PenrosePatch::seed(RobinsonKind::Acute).substitute(n).unwrap();
        let (na, no) = patch.type_counts();
        let lhs = Cyclo::from_int(na as i64)
            .add(&Cyclo::from_int(no as i64).mul(&Cyclo::INV_PHI));
        assert_eq!(lhs, Cyclo::PHI.pow(2 * n));
    }

    #[test]
    fn side_lengths_are_one_or_phi_up_to_the_generation_scale() {
        let n = 3u32;
        let patch = PenrosePatch::seed(RobinsonKind::Acute).substitute(n).unwrap();
        let rescale = Cyclo::PHI.pow(2 * n);
        let phi_sq = Cyclo::PHI.add(&Cyclo::ONE);
        for (tile, corners) in patch.tiles().iter().zip(patch.corners()) {
            let mut squared = Vec::new();
            for (i, j) in [(0, 1), (1, 2), (2, 0)] {
                let s: Cyclo = corners[j].sub(&corners[i]);
                squared.push(s.mul(&s.conj()).mul(&rescale));
            }
            let long = squared.iter().filter(|q| **q == phi_sq).count();
            let short = squared.iter().filter(|q| **q == Cyclo::ONE).count();
            assert_eq!(long + short, 3, "side lengths outside {{1, phi}}");
            match tile.kind {
                RobinsonKind::Acute => assert_eq!(long, 2),
                RobinsonKind::Obtuse => assert_eq!(long, 1),
            }
        }
    }

    #[test]
    fn orientation_census_stays_within_twenty() {
        let mut patch = PenrosePatch::seed(RobinsonKind::Acute);
        assert_eq!(patch.orientation_census(), 1);
        for _ in 0..6 {
            patch = patch.substitute(1).unwrap();
            let census = patch.orientation_census();
            assert!(census <= 20, "census {census} exceeds 10 rotations x 2");
        }
        assert!(patch.orientation_census() > 1);
    }

    #[test]
    fn reference_points_are_a_rejected_input() {
        let patch = PenrosePatch::seed(RobinsonKind::Acute).substitute(2).unwrap();
        match patch.reference_points() {
            Err(Error::InvalidInput(_)) => {}
            other => panic!("expected invalid-input, got {other:?}"),
        }
    }

    #[test]
    fn inflation_past_the_tile_cap_is_a_resource_error() {
        let patch = PenrosePatch::seed(RobinsonKind::Acute);
        match patch.substitute(15) {
            Err(Error::Resource(_)) => {}
            other => panic!("expected resource error, got {other:?}"),
        }
        assert_eq!(patch.substitute(5).unwrap().tile_count(), 144);
    }

    #[test]
    fn rhombus_view_glues_base_pairs_and_drops_their_diagonals() {
        let patch = PenrosePatch::seed(RobinsonKind::Acute).substitute(3).unwrap();
        let triangles = patch.mesh(PenroseVariant::Triangles);
        let rhombi = patch.mesh(PenroseVariant::Rhombi);
        assert_eq!(triangles.faces, patch.tile_count());
        assert_eq!(triangles.sides.len(), 3 * patch.tile_count());
        assert!(rhombi.merged_pairs > 0, "no rhombus pairs at generation 3");
        assert_eq!(
            rhombi.faces + rhombi.merged_pairs,
            patch.tile_count(),
            "each pair merges two faces into one"
        );
        assert_eq!(
            rhombi.sides.len() + 2 * rhombi.merged_pairs,
            triangles.sides.len(),
            "each glued pair drops its two base copies"
        );
    }
}
