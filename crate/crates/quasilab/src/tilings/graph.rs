//! Vertex/edge graphs of exact-coordinate tilings.
//!
//! Tile corners are deduped by exact ring comparison, and every tile side
//! is split at each vertex lying on it.  Half-side meetings, where a
//! corner of one tile sits in the middle of a neighbour's side, therefore
//! insert a genuine graph vertex there and the result is a proper planar
//! subdivision: for a simply connected patch V - E + F = 1 with F the
//! face count.  Vertices are emitted in exact coordinate order, so the
//! graph does not depend on tile enumeration order.

use std::collections::BTreeSet;

use super::cyclo::{Cyclo, golden_sign};
use super::gauss::G5;
use super::penrose::{PenrosePatch, PenroseVariant};
use super::pinwheel::PinwheelPatch;

/// Coordinates that compare exactly and decide closed-segment membership
/// without rounding.
pub trait PlanePoint: Clone + Ord {
    fn xy(&self) -> [f64; 2];
    /// Whether self lies on the closed segment from a to b.
    fn on_segment(&self, a: &Self, b: &Self) -> bool;
}

impl PlanePoint for G5 {
    fn xy(&self) -> [f64; 2] {
        self.to_xy()
    }

    fn on_segment(&self, a: &Self, b: &Self) -> bool {
        let u = self.sub(*a);
        let v = b.sub(*a);
        let m = u.denominator_pow().max(v.denominator_pow());
        let un = u.scaled_numerator(m);
        let vn = v.scaled_numerator(m);
        if vn.re == 0 && vn.im == 0 {
            return un.re == 0 && un.im == 0;
        }
        let cross = un.re as i128 * vn.im as i128 - un.im as i128 * vn.re as i128;
        if cross != 0 {
            return false;
        }
        let dot = un.re as i128 * vn.re as i128 + un.im as i128 * vn.im as i128;
        let len2 = vn.re as i128 * vn.re as i128 + vn.im as i128 * vn.im as i128;
        0 <= dot && dot <= len2
    }
}

impl PlanePoint for Cyclo {
    fn xy(&self) -> [f64; 2] {
        self.to_xy()
    }

    fn on_segment(&self, a: &Self, b: &Self) -> bool {
        let u = self.sub(a);
        let v = b.sub(a);
        if v.is_zero() {
            return u.is_zero();
        }
        // Collinearity is Im(conj(u) v) = 0, an exact ring identity.
        let w = u.conj().mul(&v);
        if w != w.conj() {
            return false;
        }
        // w is now real and equals the dot product u.v; betweenness is
        // 0 <= w <= |v|^2, decided by exact golden-integer signs.
        let (p, q) = w.as_golden().expect("collinear product is real");
        let (lp, lq) = v.conj().mul(&v).as_golden().expect("norm is real");
        golden_sign(p, q) >= 0 && golden_sign(lp - p, lq - q) >= 0
    }
}

#[derive(Clone, Debug)]
pub struct TilingGraph {
    pub vertices: Vec<[f64; 2]>,
    /// Undirected, as (low index, high index), sorted, no duplicates.
    pub edges: Vec<(usize, usize)>,
}

impl TilingGraph {
    #[must_use]
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertices.len()];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    #[must_use]
    pub fn connected_components(&self) -> usize {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; n];
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        components
    }
}

/// Builds the graph of a tile set from its corner list and side list.
/// Corners may repeat; sides are segments between corners.  Each side is
/// split at every vertex lying on it (endpoints included), consecutive
/// split points become edges, and coincident edges from adjacent tiles
/// merge.
#[must_use]
pub fn build_graph<P: PlanePoint>(corners: &[P], sides: &[[P; 2]]) -> TilingGraph {
    let mut verts: Vec<P> = corners.to_vec();
    verts.sort();
    verts.dedup();

    // Candidate lookup by x-interval; the slack only widens the candidate
    // set, membership itself is exact.
    const SLACK: f64 = 1e-9;
    let mut by_x: Vec<(f64, usize)> = verts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.xy()[0], i))
        .collect();
    by_x.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let xs: Vec<f64> = by_x.iter().map(|e| e.0).collect();

    let mut edges = BTreeSet::new();
    let mut hits: Vec<usize> = Vec::new();
    for side in sides {
        let [a, b] = side;
        let pa = a.xy();
        let pb = b.xy();
        let x_lo = pa[0].min(pb[0]) - SLACK;
        let x_hi = pa[0].max(pb[0]) + SLACK;
        let y_lo = pa[1].min(pb[1]) - SLACK;
        let y_hi = pa[1].max(pb[1]) + SLACK;
        hits.clear();
        let lo = xs.partition_point(|x| *x < x_lo);
        let hi = xs.partition_point(|x| *x <= x_hi);
        for entry in &by_x[lo..hi] {
            let idx = entry.1;
            let py = verts[idx].xy()[1];
            if py < y_lo || py > y_hi {
                continue;
            }
            if verts[idx].on_segment(a, b) {
                hits.push(idx);
            }
        }
        // Order along the segment.  Distinct exact points have f64
        // parameters separated far beyond rounding error at the patch
        // sizes the tile cap admits; the exact comparison only breaks
        // would-be ties deterministically.
        let dx = pb[0] - pa[0];
        let dy = pb[1] - pa[1];
        hits.sort_by(|i, j| {
            let pi = verts[*i].xy();
            let pj = verts[*j].xy();
            let ti = (pi[0] - pa[0]) * dx + (pi[1] - pa[1]) * dy;
            let tj = (pj[0] - pa[0]) * dx + (pj[1] - pa[1]) * dy;
            ti.total_cmp(&tj).then_with(|| verts[*i].cmp(&verts[*j]))
        });
        for w in hits.windows(2) {
            let (i, j) = (w[0].min(w[1]), w[0].max(w[1]));
            if i != j {
                edges.insert((i, j));
            }
        }
    }

    TilingGraph {
        vertices: verts.iter().map(|p| p.xy()).collect(),
        edges: edges.into_iter().collect(),
    }
}

impl PinwheelPatch {
    #[must_use]
    pub fn graph(&self) -> TilingGraph {
        let corners: Vec<G5> = self.corners().into_iter().flatten().collect();
        let sides: Vec<[G5; 2]> = self.sides().into_iter().map(|(a, b)| [a, b]).collect();
        build_graph(&corners, &sides)
    }
}

impl PenrosePatch {
    #[must_use]
    pub fn graph(&self, variant: PenroseVariant) -> TilingGraph {
        let corners: Vec<Cyclo> = self.corners().into_iter().flatten().collect();
        let mesh = self.mesh(variant);
        build_graph(&corners, &mesh.sides)
    }
}
