//! Acceptance gate: fourteen numbered checks covering every major
//! capability.  Each test prints one `ACCEPTANCE nn PASS/FAIL` line; run
//! with `--test-threads=1 --nocapture` for an ordered report.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::f64::consts::{SQRT_2, TAU};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quasilab::cutproject::slab_window;
use quasilab::diffraction::{radial_average, ring_detect, structure_factor, KGrid, Taper};
use quasilab::gaps::{circle_points, distinct_gap_lengths, gap_classes, torus_points};
use quasilab::graph_spectrum::{graph_operator_spectrum, SpectrumMode};
use quasilab::numerics::{BandSet, HighPrec, IntPolynomial};
use quasilab::schrodinger::{
    approximant_bands, convergents, sturmian_spectrum_level, trace_orbit, DEFAULT_EDGE_TOL,
};
use quasilab::substitution::Substitution;
use quasilab::tilings::{PenrosePatch, PenroseVariant, PinwheelPatch, RobinsonKind};
use quasilab::words::{factor_complexity, pattern_verdict, Convention, PatternVerdict, RotationWord};

fn check(num: u32, name: &str, ok: bool, detail: String) {
    println!(
        "ACCEPTANCE {num:02} {}: {name} [{detail}]",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "acceptance check {num} ({name}) failed: {detail}");
}

// ═══════════════════════════════════════════════════════════════════════
// 1. Circle gaps take at most three lengths, every N up to 2000
// ═══════════════════════════════════════════════════════════════════════

fn bump(census: &mut BTreeMap<(i64, i64), usize>, key: (i64, i64), delta: i64) {
    let v = *census.get(&key).unwrap_or(&0) as i64 + delta;
    assert!(v >= 0, "negative multiplicity for class {key:?}");
    if v == 0 {
        census.remove(&key);
    } else {
        census.insert(key, v as usize);
    }
}

/// The wraparound gap (max frac back to min frac) carries the +1 shift.
fn wrap_of(frac: &[f64], a: usize, b: usize) -> i64 {
    if a == b {
        1
    } else {
        i64::from(frac[a] >= frac[b])
    }
}

#[test]
fn criterion_01_circle_gap_classes_stay_at_most_three() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0001);
    let mut worst = 0usize;
    for trial in 0..100 {
        let a: f64 = 0.05 + 0.9 * rng.r#gen::<f64>();
        let alpha = HighPrec::from_f64(a);
        let mut frac = Vec::with_capacity(2000);
        let mut floor_k = Vec::with_capacity(2000);
        for m in 0..2000i64 {
            let x = alpha.mul_int(m);
            floor_k.push(x.floor().to_f64() as i64);
            frac.push(x.frac().to_f64());
        }
        // Maintain the circle order incrementally; each insertion splits
        // one gap, so the class census (keyed by the exact coefficients
        // of the gap length, dm * alpha + dk) updates in O(log).
        let gap_key =
            |a: usize, b: usize| (b as i64 - a as i64, floor_k[a] - floor_k[b] + wrap_of(&frac, a, b));
        let mut order: Vec<usize> = vec![0];
        let mut census: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        bump(&mut census, gap_key(0, 0), 1);
        for m in 1..2000usize {
            let pos = order.partition_point(|&j| frac[j] < frac[m]);
            let pred = order[if pos == 0 { order.len() - 1 } else { pos - 1 }];
            let succ = order[if pos == order.len() { 0 } else { pos }];
            bump(&mut census, gap_key(pred, succ), -1);
            bump(&mut census, gap_key(pred, m), 1);
            bump(&mut census, gap_key(m, succ), 1);
            order.insert(pos, m);
            let n_points = m + 1;
            worst = worst.max(census.len());
            assert!(
                census.len() <= 3,
                "alpha {a}: {} gap classes at {n_points} points",
                census.len()
            );
            // Cross-validate the incremental census against the direct
            // classifier at a few population sizes.
            if trial % 10 == 0 && matches!(n_points, 2 | 713 | 2000) {
                let pts = circle_points(&alpha, n_points).unwrap();
                let direct: BTreeMap<(i64, i64), usize> = gap_classes(&pts)
                    .unwrap()
                    .into_iter()
                    .map(|(c, _)| ((c.dm, c.dk), c.multiplicity))
                    .collect();
                assert_eq!(direct, census, "census mismatch at {n_points} points");
            }
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    check(
        1,
        "three gap lengths for 100 rotations, all N <= 2000",
        worst <= 3 && elapsed < 30.0,
        format!("max classes {worst}, {elapsed:.2} s"),
    );
}

// ═══════════════════════════════════════════════════════════════════════
// 2-4. Periodic approximant spectra
// ═══════════════════════════════════════════════════════════════════════

#[test]
fn criterion_02_zero_coupling_gives_the_free_band() {
    let conv = convergents(&HighPrec::golden(), 12).unwrap();
    let mut ok = true;
    let mut max_dev = 0.0f64;
    let mut detail = String::new();
    for &(p, q) in &conv {
        let spectrum = approximant_bands(&vec![0.0; q as usize], p, q, DEFAULT_EDGE_TOL).unwrap();
        if spectrum.raw_bands.len() != q as usize || spectrum.bands.count() != 1 {
            ok = false;
            detail = format!(
                "q {q}: {} raw, {} merged",
                spectrum.raw_bands.len(),
                spectrum.bands.count()
            );
            break;
        }
        let band = spectrum.bands.bands()[0];
        max_dev = max_dev.max((band.lo + 2.0).abs() + (band.hi - 2.0).abs());
    }
    if detail.is_empty() {
        detail = format!("max endpoint deviation {max_dev:.2e}, q up to 233");
    }
    check(
        2,
        "free operator collapses to [-2, 2]",
        ok && max_dev < 1e-9,
        detail,
    );
}

#[test]
fn criterion_03_band_count_equals_the_period() {
    let golden = HighPrec::golden();
    let mut ok = true;
    let mut detail = String::new();
    for lambda in [0.5, 1.0, 2.0] {
        for level in 2..=7usize {
            let s = sturmian_spectrum_level(&golden, lambda, level, DEFAULT_EDGE_TOL).unwrap();
            if s.bands.count() as i64 != s.q {
                ok = false;
                detail = format!("lambda {lambda}, q {}: {} bands", s.q, s.bands.count());
            }
        }
    }
    if detail.is_empty() {
        detail = "q in {2,3,5,8,13,21}, lambda in {0.5,1,2}".into();
    }
    check(3, "approximant band count equals the period", ok, detail);
}

#[test]
fn criterion_04_band_measure_shrinks_with_the_level() {
    let golden = HighPrec::golden();
    let measures: Vec<f64> = (4..=12)
        .map(|l| {
            sturmian_spectrum_level(&golden, 2.0, l, DEFAULT_EDGE_TOL)
                .unwrap()
                .bands
                .measure()
        })
        .collect();
    let trend: Vec<String> = measures.iter().map(|m| format!("{m:.4}")).collect();
    check(
        4,
        "total band measure decays from level 4 to 12",
        measures[8] < measures[0],
        format!("levels 4..12: {}", trend.join(" ")),
    );
}

// ═══════════════════════════════════════════════════════════════════════
// 5. Trace recurrence conserves its invariant; high energy escapes
// ═══════════════════════════════════════════════════════════════════════

#[test]
fn criterion_05_trace_invariant_holds_and_high_energy_escapes() {
    let mut max_drift = 0.0f64;
    for e in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        let orbit = trace_orbit(e, 1.0, 30, 10.0).unwrap();
        max_drift = max_drift.max(orbit.invariant_drift);
    }
    let escape = trace_orbit(10.0, 1.0, 30, 10.0).unwrap();
    let escaped_fast = escape.escaped_at.is_some_and(|k| k <= 10);
    check(
        5,
        "invariant drift below 1e-8; E = 10 escapes within 10 steps",
        max_drift < 1e-8 && escaped_fast,
        format!("max drift {max_drift:.2e}, escape index {:?}", escape.escaped_at),
    );
}

// ═══════════════════════════════════════════════════════════════════════
// 6. Interval-union sums against a brute-force oracle
// ═══════════════════════════════════════════════════════════════════════

fn random_bands(rng: &mut ChaCha8Rng) -> Vec<(f64, f64)> {
    let count = rng.gen_range(1..=6);
    let mut x = -3.0 + rng.r#gen::<f64>();
    let mut raw = Vec::with_capacity(count);
    for _ in 0..count {
        x += 0.05 + 0.6 * rng.r#gen::<f64>();
        let lo = x;
        x += 0.05 + 0.6 * rng.r#gen::<f64>();
        raw.push((lo, x));
    }
    raw
}

/// Union of closed intervals by sorting and merging overlaps.
fn sweep_union(mut v: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in v {
        match out.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// Measure of the symmetric difference of two disjoint sorted unions.
fn symdiff_measure(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let mut cuts: Vec<f64> = a
        .iter()
        .chain(b)
        .flat_map(|&(lo, hi)| [lo, hi])
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let inside = |set: &[(f64, f64)], x: f64| set.iter().any(|&(lo, hi)| lo <= x && x <= hi);
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        if inside(a, mid) != inside(b, mid) {
            total += w[1] - w[0];
        }
    }
    total
}

#[test]
fn criterion_06_interval_sums_match_the_brute_force_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0006);
    let mut worst_sym = 0.0f64;
    let mut probes_checked = 0usize;
    for _ in 0..100 {
        let raw_a = random_bands(&mut rng);
        let raw_b = random_bands(&mut rng);
        let a = BandSet::from_intervals(&raw_a, 0.0).unwrap();
        let b = BandSet::from_intervals(&raw_b, 0.0).unwrap();
        let sum = a.minkowski_sum(&b, 1e-12).unwrap();

        // Oracle: every pairwise interval sum, fused by a plain sweep.
        let pairwise: Vec<(f64, f64)> = raw_a
            .iter()
            .flat_map(|&(la, ha)| raw_b.iter().map(move |&(lb, hb)| (la + lb, ha + hb)))
            .collect();
        let oracle = sweep_union(pairwise.clone());
        let got: Vec<(f64, f64)> = sum.bands().iter().map(|b| (b.lo, b.hi)).collect();
        worst_sym = worst_sym.max(symdiff_measure(&oracle, &got));

        // Dense sampling: pointwise membership must agree away from the
        // interval endpoints.
        let lo = oracle.first().unwrap().0 - 0.5;
        let hi = oracle.last().unwrap().1 + 0.5;
        for _ in 0..500 {
            let x = lo + (hi - lo) * rng.r#gen::<f64>();
            let near_edge = pairwise
                .iter()
                .any(|&(l, h)| (x - l).abs() < 1e-9 || (x - h).abs() < 1e-9);
            if near_edge {
                continue;
            }
            let brute = pairwise.iter().any(|&(l, h)| l <= x && x <= h);
            assert_eq!(sum.contains(x), brute, "membership mismatch at {x}");
            probes_checked += 1;
        }
    }
    check(
        6,
        "set sums agree with pairwise brute force",
        worst_sym < 1e-6,
        format!("worst symmetric difference {worst_sym:.2e}, {probes_checked} probes"),
    );
}

// ═══════════════════════════════════════════════════════════════════════
// 7. Algebraic predicates of classic substitutions
// ═══════════════════════════════════════════════════════════════════════

#[test]
fn criterion_07_substitution_predicates_are_exact() {
    let fib = Substitution::parse("a->ab; b->a")
        .unwrap()
        .perron_report()
        .unwrap();
    let fib_ok = fib.is_pisot && fib.irreducible && fib.unimodular;

    let tm = Substitution::parse("a->ab; b->ba")
        .unwrap()
        .perron_report()
        .unwrap();
    // Doubling rule: characteristic polynomial x^2 - 2x, certified
    // reducible by the explicit factor x.
    let factor_x = IntPolynomial::new(vec![0, 1]);
    let tm_ok = !tm.irreducible
        && tm.char_poly.constant_term() == 0
        && tm
            .char_poly
            .factor()
            .unwrap()
            .iter()
            .any(|f| f.coeffs() == factor_x.coeffs());

    let trib = Substitution::parse("a->ab; b->ac; c->a")
        .unwrap()
        .perron_report()
        .unwrap();
    let trib_ok = trib.is_pisot && trib.irreducible && trib.unimodular;

    check(
        7,
        "Pisot / irreducible / unimodular flags",
        fib_ok && tm_ok && trib_ok,
        format!(
            "fib ({},{},{}), doubling reducible {}, trib ({},{},{})",
            fib.is_pisot, fib.irreducible, fib.unimodular, !tm.irreducible,
            trib.is_pisot, trib.irreducible, trib.unimodular
        ),
    );
}

// ═══════════════════════════════════════════════════════════════════════
// 8. Pinwheel counting and exact area
// ═══════════════════════════════════════════════════════════════════════

#[test]
fn criterion_08_pinwheel_counts_powers_of_five_with_exact_area() {
    let mut patch = PinwheelPatch::seed();
    let mut ok = patch.tile_count() == 1 && patch.exact_area_is_one();
    let (mut census3, mut census6) = (0usize, 0usize);
    for n in 1..=8u32 {
        patch = patch.substitute(1).unwrap();
        ok &= patch.tile_count() == 5usize.pow(n);
        ok &= patch.exact_area_is_one();
        if n == 3 {
            census3 = patch.orientation_census();
        }
        if n == 6 {
            census6 = patch.orientation_census();
        }
    }
    check(
        8,
        "5^n tiles with integer-exact area; census grows",
        ok && census6 > census3,
        format!(
            "final count {}, orientations gen3 {census3} -> gen6 {census6}",
            patch.tile_count()
        ),
    );
}

// ═══════════════════════════════════════════════════════════════════════
// 9. Adjacency operator on rhombus patches
// ═══════════════════════════════════════════════════════════════════════

fn ids_l1_distance(e7: &[f64], e8: &[f64]) -> f64 {
    let lo = e7[0].min(e8[0]);
    let hi = e7[e7.len() - 1].max(e8[e8.len() - 1]);
    let steps = 2000usize;
    let cdf = |ev: &[f64], x: f64| ev.partition_point(|&v| v <= x) as f64 / ev.len() as f64;
    (0..=steps)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / steps as f64;
            (cdf(e7, x) - cdf(e8, x)).abs()
        })
        .sum::<f64>()
        / (steps + 1) as f64
}

#[test]
fn criterion_09_rhombus_patch_spectrum_and_state_density() {
    let g7 = PenrosePatch::seed(RobinsonKind::Acute).substitute(7).unwrap();
    let g8 = g7.substitute(1).unwrap();
    let graph7 = g7.graph(PenroseVariant::Rhombi);
    let graph8 = g8.graph(PenroseVariant::Rhombi);
    let s7 = graph_operator_spectrum(&graph7, SpectrumMode::Dense, 1e-10).unwrap();
    let s8 = graph_operator_spectrum(&graph8, SpectrumMode::Dense, 1e-10).unwrap();

    let n7 = s7.eigenvalues.len() as f64;
    let sum7: f64 = s7.eigenvalues.iter().sum();
    let trace_ok = (sum7 + 2.0 * s7.edge_count as f64).abs() <= 1e-6 * n7;
    let top_ok = s7.max_eigenvalue.abs() <= 1e-8;
    let l1 = ids_l1_distance(&s7.eigenvalues, &s8.eigenvalues);
    check(
        9,
        "negated Laplacian: zero top, exact trace, stable state density",
        top_ok && trace_ok && l1 < 0.05,
        format!(
            "n {} -> {}, |max| {:.1e}, trace gap {:.1e}, L1 {l1:.4}",
            s7.eigenvalues.len(),
            s8.eigenvalues.len(),
            s7.max_eigenvalue.abs(),
            (sum7 + 2.0 * s7.edge_count as f64).abs()
        ),
    );
}

// ═══════════════════════════════════════════════════════════════════════
// 10. Interference patterns of lattices, ensembles, and noise
// ═══════════════════════════════════════════════════════════════════════

#[test]
fn criterion_10_interference_of_lattice_rings_and_noise() {
    // Full 64 x 64 integer block: every integer wavevector interferes
    // constructively to exactly N.
    let n_points = 64 * 64;
    let block: Vec<Vec<f64>> = (0..64)
        .flat_map(|x| (0..64).map(move |y| vec![x as f64, y as f64]))
        .collect();
    let grid = KGrid::cartesian(2, 2.0, 1.0).unwrap();
    let intensity = structure_factor(&block, &grid, Taper::None).unwrap();
    let lattice_ok = intensity
        .iter()
        .all(|&i| (i - n_points as f64).abs() <= 1e-6 * n_points as f64);

    // Rotation ensemble of a disk of the integer lattice: rings at the
    // first three root-norm radii, each within one radial bin.
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let polar = KGrid::polar(2.15, 0.05, TAU / 192.0).unwrap();
    let (nr, na) = polar.polar_shape().unwrap();
    let mut mean = vec![0.0; nr * na];
    let rotations = 48;
    let radius: f64 = 8.0;
    for _ in 0..rotations {
        let theta: f64 = rng.r#gen::<f64>() * TAU;
        let (s, c) = theta.sin_cos();
        let m = radius.ceil() as i64;
        let mut pts = Vec::new();
        for i in -m..=m {
            for j in -m..=m {
                let (x, y) = (i as f64, j as f64);
                if x * x + y * y <= radius * radius {
                    pts.push(vec![c * x - s * y, s * x + c * y]);
                }
            }
        }
        let one = structure_factor(&pts, &polar, Taper::None).unwrap();
        for (acc, v) in mean.iter_mut().zip(&one) {
            *acc += v / rotations as f64;
        }
    }
    let profile = radial_average(&polar, &mean).unwrap();
    let rings = ring_detect(&profile, 2.5, 11).unwrap();
    let ring_hits: Vec<f64> = [1.0, SQRT_2, 2.0]
        .iter()
        .map(|t| {
            rings
                .iter()
                .map(|r| (r.radius - t).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let rings_ok = ring_hits.iter().all(|&d| d <= 0.05 + 1e-9);

    // Uniform noise: unit mean intensity away from the origin.
    let mut rng2 = ChaCha8Rng::seed_from_u64(99);
    let side = 30.0;
    let noise: Vec<Vec<f64>> = (0..1500)
        .map(|_| vec![rng2.r#gen::<f64>() * side, rng2.r#gen::<f64>() * side])
        .collect();
    let noise_grid = KGrid::cartesian(2, 7.5, 0.5).unwrap();
    let noise_intensity = structure_factor(&noise, &noise_grid, Taper::None).unwrap();
    let nodes = noise_grid.nodes();
    let mut sum = 0.0;
    let mut count = 0usize;
    for (node, &i) in nodes.iter().zip(&noise_intensity) {
        if node.iter().any(|&k| k.abs() > 1e-12) {
            sum += i;
            count += 1;
        }
    }
    let mean_noise = sum / count as f64;
    let noise_ok = (mean_noise - 1.0).abs() <= 0.1;

    check(
        10,
        "lattice Bragg, ensemble rings, and flat noise background",
        lattice_ok && rings_ok && noise_ok,
        format!(
            "ring offsets {:.3}/{:.3}/{:.3}, noise mean {mean_noise:.3}",
            ring_hits[0], ring_hits[1], ring_hits[2]
        ),
    );
}

// ═══════════════════════════════════════════════════════════════════════
// 11. Coefficient census equals length-clustering census
// ═══════════════════════════════════════════════════════════════════════

#[test]
fn criterion_11_coefficient_and_clustering_censuses_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0011);
    let mut ok = true;
    let mut detail = String::from("50 random two-parameter grids");
    for _ in 0..50 {
        let a = 0.05 + 0.9 * rng.r#gen::<f64>();
        let b = 0.05 + 0.9 * rng.r#gen::<f64>();
        let rows_m = rng.gen_range(1..=50);
        let rows_n = rng.gen_range(1..=50);
        let pts = torus_points(
            &HighPrec::from_f64(a),
            &HighPrec::from_f64(b),
            rows_m,
            rows_n,
        )
        .unwrap();
        let exact = gap_classes(&pts).unwrap().len();
        let clustered = distinct_gap_lengths(&pts, 1e-25).unwrap();
        if exact != clustered {
            ok = false;
            detail = format!(
                "{rows_m} x {rows_n} grid: {exact} coefficient classes vs {clustered} clusters"
            );
            break;
        }
    }
    check(11, "exact census equals 1e-25 clustering census", ok, detail);
}

// ═══════════════════════════════════════════════════════════════════════
// 12. Slab lift of a chosen index set
// ═══════════════════════════════════════════════════════════════════════

#[test]
fn criterion_12_slab_lift_is_a_small_displacement_bijection() {
    let alpha = HighPrec::sqrt_int(2).unwrap();
    let beta = HighPrec::sqrt_int(3).unwrap();
    let keep = |m1: i64, m2: i64| (-50..50).contains(&m1) && (-50..50).contains(&m2);
    let built = slab_window(alpha, beta, &keep, 50).unwrap();

    let indices: BTreeSet<(i64, i64)> = built.points.iter().map(|p| p.index).collect();
    let bijective = built.points.len() == 10_000 && indices.len() == 10_000;

    // Independent displacement route: chart columns of the three lattice
    // directions give the partner position on the reference plane.
    let c1 = built.scheme.position(&[1, 0, 0]);
    let c2 = built.scheme.position(&[0, 1, 0]);
    let c3 = built.scheme.position(&[0, 0, 1]);
    let slab_height = (c3[0] * c3[0] + c3[1] * c3[1]).sqrt();
    let (af, bf) = (2.0f64.sqrt(), 3.0f64.sqrt());
    let mut max_disp = 0.0f64;
    let mut consistent = true;
    for p in &built.points {
        let (m1, m2) = p.index;
        let plane = af * m1 as f64 + bf * m2 as f64;
        let partner = [
            m1 as f64 * c1[0] + m2 as f64 * c2[0] + plane * c3[0],
            m1 as f64 * c1[1] + m2 as f64 * c2[1] + plane * c3[1],
        ];
        let d = ((p.position[0] - partner[0]).powi(2) + (p.position[1] - partner[1]).powi(2))
            .sqrt();
        consistent &= (d - p.internal * slab_height).abs() < 1e-6;
        consistent &= (0.0..1.0).contains(&p.internal);
        max_disp = max_disp.max(d);
    }

    let empty = slab_window(
        HighPrec::sqrt_int(2).unwrap(),
        HighPrec::sqrt_int(3).unwrap(),
        &|_, _| false,
        50,
    )
    .unwrap();

    check(
        12,
        "100 x 100 lift is bijective with sub-slab displacement",
        bijective && consistent && max_disp < slab_height && empty.points.is_empty(),
        format!("max displacement {max_disp:.4} < height {slab_height:.4}"),
    );
}

// ═══════════════════════════════════════════════════════════════════════
// 13. Minimal factor complexity and the pattern census
// ═══════════════════════════════════════════════════════════════════════

#[test]
fn criterion_13_word_complexity_and_pattern_census() {
    let word = RotationWord::new(HighPrec::golden(), HighPrec::ZERO, Convention::LeftClosed)
        .unwrap()
        .prefix(5000)
        .unwrap();
    let mut complexity_ok = true;
    for n in 1..=20usize {
        complexity_ok &= factor_complexity(&word, n) == n + 1;
    }
    let verdict = pattern_verdict(&word, 5, 40).unwrap();
    let verdict_ok = matches!(verdict, PatternVerdict::Consistent(_));

    let periodic: Vec<u8> = (0..5000).map(|i| (i % 2) as u8).collect();
    let refuted = matches!(
        pattern_verdict(&periodic, 5, 40).unwrap(),
        PatternVerdict::DeficientPatterns(_)
    );
    check(
        13,
        "p(n) = n + 1 and the pattern census verdicts",
        complexity_ok && verdict_ok && refuted,
        format!(
            "rotation word consistent at 2n, alternating word deficient: {refuted}"
        ),
    );
}

// ═══════════════════════════════════════════════════════════════════════
// 14. Byte determinism across thread counts
// ═══════════════════════════════════════════════════════════════════════

#[test]
fn criterion_14_outputs_are_thread_count_independent() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_quasilab");
    let points = dir.path().join("points.csv");
    let status = std::process::Command::new(bin)
        .args([
            "cps",
            "--scheme",
            "fibonacci",
            "--radius",
            "60",
            "--out",
            points.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());

    let mut variants: Vec<Vec<u8>> = Vec::new();
    for threads in ["1", "4", "8"] {
        let out = dir.path().join(format!("intensity{threads}.csv"));
        let status = std::process::Command::new(bin)
            .env("RAYON_NUM_THREADS", threads)
            .args([
                "diffract",
                "--points",
                points.to_str().unwrap(),
                "--grid",
                "cartesian",
                "--extent",
                "1.2",
                "--dk",
                "0.02",
                "--out",
                out.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success());
        variants.push(std::fs::read(&out).unwrap());
    }
    let identical = variants[0] == variants[1] && variants[1] == variants[2];
    check(
        14,
        "identical bytes with 1, 4, and 8 threads",
        identical,
        format!("{} bytes per file", variants[0].len()),
    );
}
