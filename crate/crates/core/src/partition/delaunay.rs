//! Delaunay adjacency between codewords (Euclidean metric).
//!
//! * 1-D: neighbours are consecutive points in sorted order (exact).
//! * 2-D: Bowyer–Watson insertion inside a large super-triangle, using exact
//!   orientation and in-circle predicates. Cocircular ties are resolved by a
//!   symbolic perturbation of the lifted heights, weighted by point index, so
//!   degenerate inputs still yield one well-defined triangulation.
//! * d >= 3: witness sampling. Seeded sample points are drawn in the codebook
//!   bounding box and each contributes an edge between its two closest
//!   codewords. This is an approximation of the true Delaunay graph.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use robust::Coord;

use crate::rng;

/// Witness samples per state dimension for d >= 3.
pub const WITNESSES_PER_DIM: usize = 4096;

const WITNESS_SEED: u64 = 0x5EED_DE1A;

/// Adjacency lists (sorted, irreflexive, symmetric) for `points`.
pub fn adjacency(points: &[Vec<f64>], dim: usize) -> Vec<Vec<usize>> {
    let edges = match dim {
        _ if points.len() < 2 => BTreeSet::new(),
        1 => edges_1d(points),
        2 => edges_2d(points),
        _ => edges_witness(points, dim),
    };
    let mut adj = vec![Vec::new(); points.len()];
    for (a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

fn edges_1d(points: &[Vec<f64>]) -> BTreeSet<(usize, usize)> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a][0].total_cmp(&points[b][0]).then(a.cmp(&b)));
    order
        .windows(2)
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
        .collect()
}

fn coord(p: &[f64]) -> Coord<f64> {
    Coord { x: p[0], y: p[1] }
}

struct Triangulation<'a> {
    pts: &'a [[f64; 2]],
    /// Counter-clockwise vertex triples.
    tris: Vec<[usize; 3]>,
}

impl Triangulation<'_> {
    fn orient(&self, a: usize, b: usize, c: usize) -> f64 {
        robust::orient2d(coord(&self.pts[a]), coord(&self.pts[b]), coord(&self.pts[c]))
    }

    /// Whether `d` lies inside the circumcircle of the ccw triangle `t`,
    /// with exact ties broken symbolically.
    fn in_circle(&self, t: [usize; 3], d: usize) -> bool {
        let [a, b, c] = t;
        let det = robust::incircle(
            coord(&self.pts[a]),
            coord(&self.pts[b]),
            coord(&self.pts[c]),
            coord(&self.pts[d]),
        );
        if det != 0.0 {
            return det > 0.0;
        }
        // Lifted-height perturbation: lower indices get infinitesimally
        // larger height offsets. Raising `d` pushes it outside; raising a
        // triangle vertex pulls `d` inside in proportion to its barycentric
        // coordinate with respect to that vertex.
        let mut ids = [a, b, c, d];
        ids.sort_unstable();
        for r in ids {
            let sign = if r == d {
                -1.0
            } else if r == a {
                self.orient(d, b, c)
            } else if r == b {
                self.orient(a, d, c)
            } else {
                self.orient(a, b, d)
            };
            if sign != 0.0 {
                return sign > 0.0;
            }
        }
        false
    }

    fn insert(&mut self, p: usize) {
        let (bad, keep): (Vec<_>, Vec<_>) = self
            .tris
            .iter()
            .copied()
            .partition(|&t| self.in_circle(t, p));
        let mut edge_count: HashMap<(usize, usize), usize> = HashMap::new();
        for t in &bad {
            for k in 0..3 {
                let (u, v) = (t[k], t[(k + 1) % 3]);
                *edge_count.entry((u.min(v), u.max(v))).or_default() += 1;
            }
        }
        self.tris = keep;
        for t in &bad {
            for k in 0..3 {
                let (u, v) = (t[k], t[(k + 1) % 3]);
                if edge_count[&(u.min(v), u.max(v))] == 1 {
                    self.tris.push([u, v, p]);
                }
            }
        }
    }
}

fn edges_2d(points: &[Vec<f64>]) -> BTreeSet<(usize, usize)> {
    let n = points.len();
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    );
    for p in points {
        lo_x = lo_x.min(p[0]);
        lo_y = lo_y.min(p[1]);
        hi_x = hi_x.max(p[0]);
        hi_y = hi_y.max(p[1]);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1.0);
    let (cx, cy) = ((lo_x + hi_x) / 2.0, (lo_y + hi_y) / 2.0);
    let s = 1e5 * span;

    let mut pts: Vec<[f64; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
    pts.push([cx - 2.0 * s, cy - s]);
    pts.push([cx + 2.0 * s, cy - s]);
    pts.push([cx, cy + 2.0 * s]);

    let mut tri = Triangulation {
        pts: &pts,
        tris: vec![[n, n + 1, n + 2]],
    };
    for p in 0..n {
        tri.insert(p);
    }

    let mut edges = BTreeSet::new();
    for t in &tri.tris {
        for k in 0..3 {
            let (u, v) = (t[k], t[(k + 1) % 3]);
            if u < n && v < n {
                edges.insert((u.min(v), u.max(v)));
            }
        }
    }
    edges
}

fn squared_euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn edges_witness(points: &[Vec<f64>], dim: usize) -> BTreeSet<(usize, usize)> {
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for p in points {
        for j in 0..dim {
            lo[j] = lo[j].min(p[j]);
            hi[j] = hi[j].max(p[j]);
        }
    }
    let mut rng = rng::seeded(WITNESS_SEED);
    let mut edges = BTreeSet::new();
    let mut sample = vec![0.0; dim];
    for _ in 0..WITNESSES_PER_DIM * dim {
        for j in 0..dim {
            sample[j] = if hi[j] > lo[j] {
                rng.gen_range(lo[j]..=hi[j])
            } else {
                lo[j]
            };
        }
        let mut first = (f64::INFINITY, usize::MAX);
        let mut second = (f64::INFINITY, usize::MAX);
        for (k, p) in points.iter().enumerate() {
            let d = (squared_euclidean(&sample, p), k);
            if d < first {
                second = first;
                first = d;
            } else if d < second {
                second = d;
            }
        }
        edges.insert((first.1.min(second.1), first.1.max(second.1)));
    }
    edges
}
