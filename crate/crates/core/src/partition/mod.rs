//! The codebook of a Voronoi partition.
//!
//! Cells are implied: a state belongs to the cell of its nearest codeword
//! under the Manhattan metric, lowest index on ties. Cell adjacency comes from
//! the Euclidean Delaunay graph of the codewords (see [`delaunay`]), so
//! "neighbours" approximate adjacency of the L1 cells.

pub mod delaunay;
mod kdtree;

use std::sync::OnceLock;

pub use kdtree::manhattan;

use crate::error::{Error, Result};
use kdtree::KdTree;

/// Borrowed view of one codeword.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Codeword<'a> {
    pub index: usize,
    pub coords: &'a [f64],
}

#[derive(Debug, Clone)]
pub struct VoronoiPartition {
    dim: usize,
    codewords: Vec<Vec<f64>>,
    tree: KdTree,
    adjacency: OnceLock<Vec<Vec<usize>>>,
}

impl VoronoiPartition {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "state dimension must be positive");
        VoronoiPartition {
            dim,
            codewords: Vec::new(),
            tree: KdTree::default(),
            adjacency: OnceLock::new(),
        }
    }

    pub fn from_codewords(dim: usize, codewords: Vec<Vec<f64>>) -> Result<Self> {
        let mut p = VoronoiPartition::new(dim);
        for c in &codewords {
            p.validate_new(c)?;
            p.codewords.push(c.clone());
        }
        p.rebuild();
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn codeword(&self, k: usize) -> Result<&[f64]> {
        self.codewords
            .get(k)
            .map(Vec::as_slice)
            .ok_or(Error::CellOutOfRange {
                index: k,
                len: self.len(),
            })
    }

    pub fn codewords(&self) -> &[Vec<f64>] {
        &self.codewords
    }

    pub fn iter(&self) -> impl Iterator<Item = Codeword<'_>> {
        self.codewords.iter().enumerate().map(|(index, c)| Codeword {
            index,
            coords: c.as_slice(),
        })
    }

    fn check_dim(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: v.len(),
            });
        }
        Ok(())
    }

    fn validate_new(&self, point: &[f64]) -> Result<()> {
        self.check_dim(point)?;
        if point.iter().any(|x| !x.is_finite()) {
            return Err(Error::Unsupported(format!(
                "non-finite codeword coordinates {point:?}"
            )));
        }
        if self.codewords.iter().any(|c| c.as_slice() == point) {
            return Err(Error::DegenerateCodeword(point.to_vec()));
        }
        Ok(())
    }

    fn rebuild(&mut self) {
        self.tree = KdTree::build(&self.codewords, self.dim);
        self.adjacency = OnceLock::new();
    }

    /// Index of the nearest codeword in L1, lowest index on ties.
    pub fn nearest(&self, state: &[f64]) -> Result<usize> {
        self.nearest_with_distance(state).map(|(k, _)| k)
    }

    pub fn nearest_with_distance(&self, state: &[f64]) -> Result<(usize, f64)> {
        if self.is_empty() {
            return Err(Error::EmptyPartition);
        }
        self.check_dim(state)?;
        Ok(self
            .tree
            .nearest(&self.codewords, state)
            .expect("non-empty tree"))
    }

    /// Appends `point` as a new codeword and returns its index.
    pub fn insert(&mut self, point: Vec<f64>) -> Result<usize> {
        self.validate_new(&point)?;
        self.codewords.push(point);
        self.rebuild();
        Ok(self.codewords.len() - 1)
    }

    /// Removes codeword `k`; later indices shift down by one.
    pub fn remove(&mut self, k: usize) -> Result<Vec<f64>> {
        if k >= self.len() {
            return Err(Error::CellOutOfRange {
                index: k,
                len: self.len(),
            });
        }
        if self.len() == 1 {
            return Err(Error::CannotEmptyPartition);
        }
        let removed = self.codewords.remove(k);
        self.rebuild();
        Ok(removed)
    }

    /// Delaunay neighbours of cell `k`, sorted ascending.
    pub fn neighbours(&self, k: usize) -> Result<&[usize]> {
        if k >= self.len() {
            return Err(Error::CellOutOfRange {
                index: k,
                len: self.len(),
            });
        }
        Ok(&self.adjacency()[k])
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        self.adjacency
            .get_or_init(|| delaunay::adjacency(&self.codewords, self.dim))
    }
}
