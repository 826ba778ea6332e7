//! Static kd-tree for Manhattan nearest-codeword queries.
//!
//! The tree is rebuilt from scratch whenever the codebook changes. Candidate
//! distances are computed with [`manhattan`], the same left-to-right summation
//! a linear scan would use, and ties are resolved on `(distance, index)`, so
//! the tree returns exactly what a brute-force argmin returns.

use std::cmp::Ordering;

#[derive(Debug, Clone)]
struct Node {
    point: usize,
    axis: usize,
    left: Option<usize>,
    right: Option<usize>,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct KdTree {
    nodes: Vec<Node>,
    root: Option<usize>,
}

/// L1 distance, summed in coordinate order.
pub fn manhattan(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc + (x - y).abs())
}

impl KdTree {
    pub(crate) fn build(points: &[Vec<f64>], dim: usize) -> Self {
        let mut tree = KdTree {
            nodes: Vec::with_capacity(points.len()),
            root: None,
        };
        let mut order: Vec<usize> = (0..points.len()).collect();
        tree.root = tree.build_rec(points, dim, &mut order, 0);
        tree
    }

    fn build_rec(
        &mut self,
        points: &[Vec<f64>],
        dim: usize,
        idx: &mut [usize],
        depth: usize,
    ) -> Option<usize> {
        if idx.is_empty() {
            return None;
        }
        let axis = depth % dim;
        idx.sort_by(|&a, &b| {
            points[a][axis]
                .partial_cmp(&points[b][axis])
                .unwrap_or(Ordering::Equal)
                .then(a.cmp(&b))
        });
        let mid = idx.len() / 2;
        let point = idx[mid];
        let slot = self.nodes.len();
        self.nodes.push(Node {
            point,
            axis,
            left: None,
            right: None,
        });
        let (lo, rest) = idx.split_at_mut(mid);
        let hi = &mut rest[1..];
        let left = self.build_rec(points, dim, lo, depth + 1);
        let right = self.build_rec(points, dim, hi, depth + 1);
        self.nodes[slot].left = left;
        self.nodes[slot].right = right;
        Some(slot)
    }

    /// Returns `(index, distance)` of the nearest point, lowest index on ties.
    pub(crate) fn nearest(&self, points: &[Vec<f64>], query: &[f64]) -> Option<(usize, f64)> {
        let root = self.root?;
        let mut best = (f64::INFINITY, usize::MAX);
        self.search(points, root, query, &mut best);
        Some((best.1, best.0))
    }

    fn search(&self, points: &[Vec<f64>], node: usize, query: &[f64], best: &mut (f64, usize)) {
        let n = &self.nodes[node];
        let p = &points[n.point];
        let d = manhattan(query, p);
        if d < best.0 || (d == best.0 && n.point < best.1) {
            *best = (d, n.point);
        }
        let diff = query[n.axis] - p[n.axis];
        let (near, far) = if diff < 0.0 {
            (n.left, n.right)
        } else {
            (n.right, n.left)
        };
        if let Some(c) = near {
            self.search(points, c, query, best);
        }
        // Equal-coordinate points may sit on either side, and a tie at the
        // bound can still win on index, hence `<=`.
        if let Some(c) = far {
            if diff.abs() <= best.0 {
                self.search(points, c, query, best);
            }
        }
    }
}
