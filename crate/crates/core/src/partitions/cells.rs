use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::Permutation;

/// A unit lattice cell, named by its minimal corner.
///
/// Coordinate 0 is the stacking height (`α - 1`); coordinates `1..=m`
/// are the zero-based array indices `i_j - 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Cell(Vec<u32>);

impl Cell {
    pub fn new(coords: Vec<u32>) -> Self {
        Cell(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coordinate_sum(&self) -> u64 {
        self.0.iter().map(|&c| u64::from(c)).sum()
    }

    /// Cells obtained by lowering one positive coordinate by one.
    pub fn predecessors(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, _)| {
                let mut p = self.0.clone();
                p[k] -= 1;
                Cell(p)
            })
    }

    pub fn squared_distance(&self, other: &Cell) -> i64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| {
                let d = i64::from(a) - i64::from(b);
                d * d
            })
            .sum()
    }

    pub fn l1_distance(&self, other: &Cell) -> i64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| (i64::from(a) - i64::from(b)).abs())
            .sum()
    }
}

impl<const N: usize> From<[u32; N]> for Cell {
    fn from(c: [u32; N]) -> Self {
        Cell(c.to_vec())
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Canonical Young diagram: a finite down-set of cells in `N^(m+1)`.
///
/// Ordering is lexicographic on the sorted cell list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellSet {
    cells: BTreeSet<Cell>,
    dim: usize,
}

impl CellSet {
    pub fn new<I>(dim: usize, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = Cell>,
    {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        if let Some(bad) = cells.iter().find(|c| c.dim() != dim) {
            return Err(Error::Malformed(format!(
                "cell {bad} does not have {dim} coordinates"
            )));
        }
        if let Some((cell, missing)) = first_missing_predecessor(&cells) {
            return Err(Error::NotDownSet(format!(
                "cell {cell} is present but {missing} is not"
            )));
        }
        Ok(CellSet { cells, dim })
    }

    pub(crate) fn from_down_set_unchecked(dim: usize, cells: BTreeSet<Cell>) -> Self {
        debug_assert!(first_missing_predecessor(&cells).is_none());
        CellSet { cells, dim }
    }

    /// Lattice dimension `m + 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.cells.contains(cell)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter()
    }

    pub fn as_set(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    /// `T_σ` image. Coordinate permutations preserve down-sets.
    pub fn image(&self, sigma: &Permutation) -> Result<CellSet> {
        sigma.check_size(self.dim)?;
        let cells = self.cells.iter().map(|c| sigma.apply(c)).collect();
        Ok(CellSet::from_down_set_unchecked(self.dim, cells))
    }
}

fn first_missing_predecessor(cells: &BTreeSet<Cell>) -> Option<(Cell, Cell)> {
    cells.iter().find_map(|c| {
        c.predecessors()
            .find(|p| !cells.contains(p))
            .map(|p| (c.clone(), p))
    })
}
