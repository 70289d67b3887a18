//! Randomized structural invariants.  Each property is a contract that
//! must hold for every admissible input, not just the frozen cases in
//! the unit tests.

use proptest::prelude::*;

use quasilab::cutproject::{generate, slab_window, CpsScheme, Window};
use quasilab::diffraction::{structure_factor, KGrid, Taper};
use quasilab::discrepancy::RegionSpec;
use quasilab::gaps::{circle_points, gap_classes};
use quasilab::numerics::{BandSet, HighPrec};
use quasilab::schrodinger::{discriminant, periodic_potential, sturmian_spectrum_level, DEFAULT_EDGE_TOL};
use quasilab::substitution::Substitution;
use quasilab::words::{factor_complexity, Convention, RotationWord};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Any rotation orbit cuts the circle into at most three exact gap
    // classes, and the class lengths weighted by multiplicity tile the
    // whole circle.
    #[test]
    fn circle_gaps_form_at_most_three_classes(
        a in 0.01f64..0.99,
        n in 1usize..400,
    ) {
        let pts = circle_points(&HighPrec::from_f64(a), n).unwrap();
        let classes = gap_classes(&pts).unwrap();
        prop_assert!(classes.len() <= 3, "{} classes", classes.len());
        let total: f64 = classes
            .iter()
            .map(|(c, len)| c.multiplicity as f64 * len)
            .sum();
        prop_assert!((total - 1.0).abs() < 1e-9, "gaps cover {total}");
    }

    // Interval unions stay sorted and disjoint, and the sum set contains
    // every pairwise sum of members.
    #[test]
    fn band_sums_contain_pairwise_members(
        cuts_a in proptest::collection::vec(-3.0f64..3.0, 2..10),
        cuts_b in proptest::collection::vec(-3.0f64..3.0, 2..10),
        t in 0.0f64..1.0,
        u in 0.0f64..1.0,
    ) {
        let mk = |cuts: &[f64]| {
            let mut v = cuts.to_vec();
            v.sort_by(f64::total_cmp);
            let raw: Vec<(f64, f64)> =
                v.chunks_exact(2).map(|w| (w[0], w[1])).collect();
            BandSet::from_intervals(&raw, 0.0).unwrap()
        };
        let a = mk(&cuts_a);
        let b = mk(&cuts_b);
        let sum = a.minkowski_sum(&b, 1e-12).unwrap();

        for w in sum.bands().windows(2) {
            prop_assert!(w[0].hi < w[1].lo, "bands overlap");
        }
        // Hull additivity and measure lower bound.
        let hull = |s: &BandSet| (s.bands()[0].lo, s.bands().last().unwrap().hi);
        let (alo, ahi) = hull(&a);
        let (blo, bhi) = hull(&b);
        let (slo, shi) = hull(&sum);
        prop_assert!((slo - (alo + blo)).abs() < 1e-9);
        prop_assert!((shi - (ahi + bhi)).abs() < 1e-9);
        prop_assert!(sum.measure() + 1e-9 >= a.measure().max(b.measure()));

        // A random member of each operand sums into the result.
        let pick = |s: &BandSet, f: f64| {
            let lens: f64 = s.measure();
            let mut target = f * lens;
            for band in s.bands() {
                if target <= band.length() {
                    return band.lo + target;
                }
                target -= band.length();
            }
            s.bands().last().unwrap().hi
        };
        let x = pick(&a, t);
        let y = pick(&b, u);
        prop_assert!(sum.contains(x + y), "{x} + {y} missing from the sum");
    }

    // The approximant spectrum is exactly where the discriminant has
    // modulus at most 2: raw band count equals the period, band interiors
    // satisfy |disc| <= 2, gap midpoints satisfy |disc| >= 2.
    #[test]
    fn discriminant_characterizes_the_approximant_bands(
        lambda in 0.2f64..3.0,
        level in 2usize..7,
    ) {
        let golden = HighPrec::golden();
        let s = sturmian_spectrum_level(&golden, lambda, level, DEFAULT_EDGE_TOL).unwrap();
        prop_assert_eq!(s.raw_bands.len(), s.q as usize);
        let potential = periodic_potential(s.p, s.q, lambda).unwrap();
        for band in &s.raw_bands {
            let mid = 0.5 * (band.lo + band.hi);
            prop_assert!(discriminant(&potential, mid).abs() <= 2.0 + 1e-7);
        }
        for w in s.raw_bands.windows(2) {
            if w[1].lo - w[0].hi > 1e-8 {
                let mid = 0.5 * (w[0].hi + w[1].lo);
                prop_assert!(discriminant(&potential, mid).abs() >= 2.0 - 1e-7);
            }
        }
    }

    // Rotation words have minimal aperiodic complexity regardless of the
    // rotation number or intercept.
    #[test]
    fn rotation_words_have_minimal_complexity(
        a in 0.01f64..0.99,
        theta in 0.0f64..1.0,
    ) {
        let word = RotationWord::new(
            HighPrec::from_f64(a),
            HighPrec::from_f64(theta),
            Convention::LeftClosed,
        )
        .unwrap()
        .prefix(2000)
        .unwrap();
        let mut prev = 0;
        for n in 1..=8usize {
            let p = factor_complexity(&word, n);
            prop_assert!(p <= n + 1, "p({n}) = {p}");
            prop_assert!(p >= prev, "complexity must be monotone");
            prev = p;
        }
    }

    // The a -> a b^k, b -> a family: the Perron root solves x^2 = x + k
    // exactly.  k = 1 is golden, k = 2 collapses to the integer 2 (a
    // trivial Pisot number with a reducible characteristic polynomial),
    // and from k = 3 on the conjugate (1 - sqrt(1+4k))/2 leaves the unit
    // disk.
    #[test]
    fn pisot_boundary_of_the_metallic_family(k in 1usize..6) {
        let rule = format!("a->a{}; b->a", "b".repeat(k));
        let report = Substitution::parse(&rule).unwrap().perron_report().unwrap();
        let expected = 0.5 * (1.0 + (1.0 + 4.0 * k as f64).sqrt());
        prop_assert!((report.lambda - expected).abs() < 1e-9);
        prop_assert_eq!(report.is_pisot, k <= 2);
        prop_assert_eq!(report.irreducible, k != 2);
        prop_assert_eq!(report.unimodular, k == 1);
    }

    // Projected chains are uniformly discrete and window-monotone: a
    // larger window accepts a superset of the points.
    #[test]
    fn chain_windows_are_monotone(
        lo in 0.0f64..0.3,
        hi in 0.55f64..0.95,
    ) {
        let scheme = CpsScheme::fibonacci_chain();
        let inner = Window::interval(HighPrec::from_f64(lo), HighPrec::from_f64(hi)).unwrap();
        let outer = Window::interval(HighPrec::from_f64(lo * 0.5), HighPrec::from_f64(hi)).unwrap();
        let small = generate(&scheme, &inner, 40.0).unwrap();
        let large = generate(&scheme, &outer, 40.0).unwrap();
        prop_assert!(small.len() <= large.len());
        let set: std::collections::BTreeSet<Vec<i64>> =
            large.iter().map(|p| p.lattice.clone()).collect();
        for p in &small {
            prop_assert!(set.contains(&p.lattice));
        }
        for w in small.windows(2) {
            let gap = w[1].position[0] - w[0].position[0];
            prop_assert!(gap > 0.2, "gap {gap} too small");
        }
    }

    // Intensity is translation invariant, symmetric under k -> -k, and
    // equals N at the origin.
    #[test]
    fn intensity_symmetries(
        pts in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 3..40),
        shift in (-7.0f64..7.0, -7.0f64..7.0),
    ) {
        let base: Vec<Vec<f64>> = pts.iter().map(|&(x, y)| vec![x, y]).collect();
        let moved: Vec<Vec<f64>> = pts
            .iter()
            .map(|&(x, y)| vec![x + shift.0, y + shift.1])
            .collect();
        let grid = KGrid::cartesian(2, 1.0, 0.5).unwrap();
        let a = structure_factor(&base, &grid, Taper::None).unwrap();
        let b = structure_factor(&moved, &grid, Taper::None).unwrap();
        let n = base.len() as f64;
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-9 * n.max(1.0) * (1.0 + x.abs()));
        }
        let center = a.len() / 2;
        prop_assert!((a[center] - n).abs() < 1e-9 * n);
        for (i, x) in a.iter().enumerate() {
            prop_assert!((x - a[a.len() - 1 - i]).abs() <= 1e-9 * (1.0 + x.abs()));
        }
    }

    // Region volume scales like the product of the side lengths, and
    // membership is translation equivariant.
    #[test]
    fn region_membership_translates(
        cx in -5.0f64..5.0,
        cy in -5.0f64..5.0,
        s in 0.1f64..4.0,
        px in -6.0f64..6.0,
        py in -6.0f64..6.0,
        tx in -3.0f64..3.0,
        ty in -3.0f64..3.0,
    ) {
        let square = RegionSpec::aligned_square(vec![cx, cy], s);
        prop_assert!((square.volume() - s * s).abs() < 1e-12 * (1.0 + s * s));
        let shifted = RegionSpec::aligned_square(vec![cx + tx, cy + ty], s);
        prop_assert_eq!(
            square.contains(&[px, py]),
            shifted.contains(&[px + tx, py + ty])
        );
        let ball = RegionSpec::ball(vec![cx, cy], s);
        prop_assert!((ball.volume() - std::f64::consts::PI * s * s).abs() < 1e-9);
    }

    // Slab lifts hit every kept index exactly once with an internal
    // value in [0, 1).
    #[test]
    fn slab_lifts_are_bijections(
        half in 2i64..10,
        parity in 0i64..2,
    ) {
        let keep = move |m1: i64, m2: i64| (m1 + m2).rem_euclid(2) == parity;
        let built = slab_window(
            HighPrec::sqrt_int(2).unwrap(),
            HighPrec::sqrt_int(3).unwrap(),
            &keep,
            half,
        )
        .unwrap();
        let mut expected = 0usize;
        for m1 in -half..=half {
            for m2 in -half..=half {
                expected += usize::from(keep(m1, m2));
            }
        }
        prop_assert_eq!(built.points.len(), expected);
        let distinct: std::collections::BTreeSet<(i64, i64)> =
            built.points.iter().map(|p| p.index).collect();
        prop_assert_eq!(distinct.len(), expected);
        for p in &built.points {
            prop_assert!((0.0..1.0).contains(&p.internal));
        }
    }
}
