//! Spectrum of the tiling-graph operator (H psi)(v) = sum over neighbours
//! w of psi(w) - psi(v).
//!
//! H is adjacency minus the degree diagonal, the negated graph Laplacian:
//! negative semidefinite, with one zero eigenvalue per connected
//! component and trace -2|E|.  Two routes are offered.  The dense route
//! reduces H by Householder reflections and bisects with Sturm counts,
//! capped at [`MAX_DENSE_VERTICES`].  The iterative route never forms H:
//! Lanczos with full reorthogonalization brackets the extremes, and
//! Jackson-damped Chebyshev moments with Rademacher trace probes give the
//! integrated density of states without any eigensolve.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numerics::tridiag::{symmetric_eigenvalues, tridiag_eigenvalues};
use crate::tilings::graph::TilingGraph;

/// O(n^3) reduction and O(n^2) storage make this the practical dense cap.
pub const MAX_DENSE_VERTICES: usize = 2048;
/// Bounds the Lanczos basis memory in the iterative route.
pub const MAX_ITERATIVE_VERTICES: usize = 100_000;

const KPM_MOMENTS: usize = 512;
const KPM_PROBES: usize = 24;
const IDS_BINS: usize = 200;
const PROBE_SEED: u64 = 0x51ab_0c4e;

/// Full reorthogonalization costs O(m^2 n), so the step budget shrinks as
/// the graph grows; below ~1400 vertices the basis spans the whole space
/// and the Ritz extremes are exact to rounding.
fn lanczos_budget(n: usize) -> usize {
    n.min((2_000_000 / n.max(1)).max(120))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumMode {
    Dense,
    Iterative,
}

#[derive(Clone, Debug)]
pub struct GraphSpectrum {
    /// All eigenvalues ascending (dense) or the two extremes (iterative).
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    /// Integrated density of states: (energy, fraction of states <= energy).
    pub ids: Vec<(f64, f64)>,
    /// Set when the graph has more than one component; the spectrum is
    /// still computed, but the zero eigenvalue is then degenerate.
    pub disconnected: bool,
    pub edge_count: usize,
}

struct SparseH {
    neighbours: Vec<Vec<u32>>,
    degree: Vec<f64>,
}

impl SparseH {
    fn new(graph: &TilingGraph) -> SparseH {
        let n = graph.vertices.len();
        let mut neighbours = vec![Vec::new(); n];
        for &(i, j) in &graph.edges {
            neighbours[i].push(j as u32);
            neighbours[j].push(i as u32);
        }
        let degree = neighbours.iter().map(|a| a.len() as f64).collect();
        SparseH { neighbours, degree }
    }

    fn dim(&self) -> usize {
        self.degree.len()
    }

    fn max_degree(&self) -> f64 {
        self.degree.iter().cloned().fold(0.0, f64::max)
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (v, adj) in self.neighbours.iter().enumerate() {
            let mut acc = -self.degree[v] * x[v];
            for &w in adj {
                acc += x[w as usize];
            }
            y[v] = acc;
        }
    }
}

fn dense_matrix(h: &SparseH) -> Vec<Vec<f64>> {
    let n = h.dim();
    let mut a = vec![vec![0.0; n]; n];
    for (v, adj) in h.neighbours.iter().enumerate() {
        a[v][v] = -h.degree[v];
        for &w in adj {
            a[v][w as usize] += 1.0;
        }
    }
    a
}

fn step_ids(eigenvalues: &[f64]) -> Vec<(f64, f64)> {
    let n = eigenvalues.len();
    let lo = eigenvalues[0];
    let hi = *eigenvalues.last().unwrap();
    let span = (hi - lo).max(1e-12);
    (0..=IDS_BINS)
        .map(|k| {
            let e = lo + span * k as f64 / IDS_BINS as f64;
            let count = eigenvalues.partition_point(|x| *x <= e + 1e-12);
            (e, count as f64 / n as f64)
        })
        .collect()
}

/// Lanczos with full reorthogonalization; returns the Ritz values of the
/// Krylov tridiagonal, exact for the whole spectrum once the basis spans
/// the space.
fn lanczos_ritz(h: &SparseH, tol: f64) -> Vec<f64> {
    let n = h.dim();
    let m = lanczos_budget(n);
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED ^ 0xa5a5_a5a5);
    let mut q: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    q.iter_mut().for_each(|x| *x /= norm);

    let mut basis: Vec<Vec<f64>> = vec![q.clone()];
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut w = vec![0.0; n];
    for j in 0..m {
        h.apply(&basis[j], &mut w);
        let a: f64 = basis[j].iter().zip(&w).map(|(x, y)| x * y).sum();
        alpha.push(a);
        // Gram-Schmidt against the whole basis subsumes the alpha and
        // beta terms and keeps f64 orthogonality over many steps.
        for b in &basis {
            let c: f64 = b.iter().zip(&w).map(|(x, y)| x * y).sum();
            for (wk, bk) in w.iter_mut().zip(b) {
                *wk -= c * bk;
            }
        }
        let b: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if b <= tol.max(1e-13) || j + 1 == m {
            break;
        }
        beta.push(b);
        basis.push(w.iter().map(|x| x / b).collect());
    }
    tridiag_eigenvalues(&alpha, &beta)
}

fn jackson_coefficients(moments: usize) -> Vec<f64> {
    let kp = moments as f64 + 1.0;
    let c = std::f64::consts::PI / kp;
    (0..moments)
        .map(|k| {
            let kf = k as f64;
            ((kp - kf) * (c * kf).cos() + (c * kf).sin() / c.tan()) / kp
        })
        .collect()
}

/// Chebyshev-moment estimate of the integrated density of states over the
/// rescaled spectrum.  Probes are fixed-seed Rademacher vectors, so the
/// output is deterministic.
fn kpm_ids(h: &SparseH, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let n = h.dim();
    let c = 0.5 * (hi + lo);
    let r = (0.5 * (hi - lo)).max(1e-9) * (1.0 + 1e-9);
    let mut moments = vec![0.0; KPM_MOMENTS];
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    let mut t_prev = vec![0.0; n];
    let mut t_cur = vec![0.0; n];
    let mut scratch = vec![0.0; n];
    for _ in 0..KPM_PROBES {
        let v: Vec<f64> = (0..n)
            .map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
            .collect();
        t_prev.copy_from_slice(&v);
        // t_cur = H' v with H' = (H - c)/r.
        h.apply(&v, &mut t_cur);
        for i in 0..n {
            t_cur[i] = (t_cur[i] - c * v[i]) / r;
        }
        moments[0] += n as f64;
        moments[1] += v.iter().zip(&t_cur).map(|(a, b)| a * b).sum::<f64>();
        for k in 2..KPM_MOMENTS {
            h.apply(&t_cur, &mut scratch);
            for i in 0..n {
                scratch[i] = 2.0 * (scratch[i] - c * t_cur[i]) / r - t_prev[i];
            }
            std::mem::swap(&mut t_prev, &mut t_cur);
            std::mem::swap(&mut t_cur, &mut scratch);
            moments[k] += v.iter().zip(&t_cur).map(|(a, b)| a * b).sum::<f64>();
        }
    }
    let scale = 1.0 / (KPM_PROBES as f64 * n as f64);
    moments.iter_mut().for_each(|m| *m *= scale);
    let damp = jackson_coefficients(KPM_MOMENTS);

    (0..=IDS_BINS)
        .map(|bin| {
            let e = lo + (hi - lo) * bin as f64 / IDS_BINS as f64;
            let x = ((e - c) / r).clamp(-1.0, 1.0);
            let theta = x.acos();
            let mut cdf = moments[0] * (std::f64::consts::PI - theta);
            for k in 1..KPM_MOMENTS {
                cdf -= 2.0 * damp[k] * moments[k] * (k as f64 * theta).sin() / k as f64;
            }
            (e, (cdf / std::f64::consts::PI).clamp(0.0, 1.0))
        })
        .collect()
}

pub fn graph_operator_spectrum(
    graph: &TilingGraph,
    mode: SpectrumMode,
    tol: f64,
) -> Result<GraphSpectrum> {
    let n = graph.vertices.len();
    if n == 0 {
        return Err(Error::InvalidInput("spectrum of an empty graph".into()));
    }
    if !tol.is_finite() || tol < 0.0 {
        return Err(Error::InvalidInput("tolerance must be nonnegative".into()));
    }
    for &(i, j) in &graph.edges {
        if i >= n || j >= n || i == j {
            return Err(Error::InvalidInput(format!("bad edge ({i}, {j})")));
        }
    }
    let h = SparseH::new(graph);
    let disconnected = graph.connected_components() > 1;

    match mode {
        SpectrumMode::Dense => {
            let eigenvalues = symmetric_eigenvalues(dense_matrix(&h), MAX_DENSE_VERTICES)?;
            let ids = step_ids(&eigenvalues);
            Ok(GraphSpectrum {
                min_eigenvalue: eigenvalues[0],
                max_eigenvalue: *eigenvalues.last().unwrap(),
                ids,
                eigenvalues,
                disconnected,
                edge_count: graph.edges.len(),
            })
        }
        SpectrumMode::Iterative => {
            if n > MAX_ITERATIVE_VERTICES {
                return Err(Error::Resource(format!(
                    "{n} vertices exceed the iterative cap {MAX_ITERATIVE_VERTICES}"
                )));
            }
            let ritz = lanczos_ritz(&h, tol);
            let min = ritz[0];
            let max = *ritz.last().unwrap();
            // Spectral bounds from the degree structure; exact for H.
            let lo = -2.0 * h.max_degree();
            let ids = kpm_ids(&h, lo.min(min), 0.0_f64.max(max));
            Ok(GraphSpectrum {
                eigenvalues: vec![min, max],
                min_eigenvalue: min,
                max_eigenvalue: max,
                ids,
                disconnected,
                edge_count: graph.edges.len(),
            })
        }
    }
}
