//! Point measures on Young diagrams and the support splitting used to
//! compare a partition with its σ-symmetric partner.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{Cell, CellSet, MultiPartition, Permutation};
use crate::rational::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub point: Cell,
    pub weight: ExactRational,
}

/// Finitely supported probability measure with exact weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteMeasure {
    dim: usize,
    atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    /// Checks that points are distinct, weights positive, and the total is exactly one.
    pub fn new(dim: usize, atoms: Vec<Atom>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut total = ExactRational::zero();
        for atom in &atoms {
            if atom.point.dim() != dim {
                return Err(Error::DimensionMismatch(dim, atom.point.dim()));
            }
            if !seen.insert(&atom.point) {
                return Err(Error::Malformed(format!(
                    "atom {} appears twice",
                    atom.point
                )));
            }
            if atom.weight <= ExactRational::zero() {
                return Err(Error::Malformed(format!(
                    "atom {} has non-positive weight",
                    atom.point
                )));
            }
            total += atom.weight;
        }
        if total != ExactRational::one() {
            return Err(Error::Malformed(format!("total mass is {total}, not 1")));
        }
        Ok(DiscreteMeasure { dim, atoms })
    }

    /// Equal weight `1/k` on each of `k` distinct points.
    pub fn uniform(dim: usize, points: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let points: Vec<Cell> = points.into_iter().collect();
        if points.is_empty() {
            return Err(Error::Malformed(
                "uniform measure needs at least one point".into(),
            ));
        }
        let w = ExactRational::new(1, points.len() as i64);
        let atoms = points
            .into_iter()
            .map(|point| Atom { point, weight: w })
            .collect();
        Self::new(dim, atoms)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> ExactRational {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    pub fn support(&self) -> BTreeSet<Cell> {
        self.atoms.iter().map(|a| a.point.clone()).collect()
    }

    /// Debug form: `{"dimension": d, "atoms": [{"point": [...], "num": 1, "den": n}, ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct AtomJson<'a> {
            point: &'a Cell,
            num: i64,
            den: i64,
        }
        #[derive(Serialize)]
        struct MeasureJson<'a> {
            dimension: usize,
            atoms: Vec<AtomJson<'a>>,
        }
        let doc = MeasureJson {
            dimension: self.dim,
            atoms: self
                .atoms
                .iter()
                .map(|a| AtomJson {
                    point: &a.point,
                    num: *a.weight.numer(),
                    den: *a.weight.denom(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("measure documents always serialize")
    }
}

/// `δ_π`: mass `1/n` at the minimal corner of every cell of `Y(π)`, in cell order.
pub fn measure_of(p: &MultiPartition) -> DiscreteMeasure {
    let cells = p.to_cells();
    DiscreteMeasure::uniform(cells.dim(), cells.iter().cloned())
        .expect("a partition has at least one cell")
}

/// Common support and the two leftover pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportDecomposition {
    pub common: BTreeSet<Cell>,
    pub source_only: BTreeSet<Cell>,
    pub target_only: BTreeSet<Cell>,
}

impl SupportDecomposition {
    pub fn between(source: &CellSet, target: &CellSet) -> Self {
        let (a, b) = (source.as_set(), target.as_set());
        SupportDecomposition {
            common: a.intersection(b).cloned().collect(),
            source_only: a.difference(b).cloned().collect(),
            target_only: b.difference(a).cloned().collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.source_only.is_empty() && self.target_only.is_empty()
    }
}

/// Splits `Y(π)` and `T_σ(Y(π))` into their intersection and the two differences.
pub fn decompose(p: &MultiPartition, sigma: &Permutation) -> Result<SupportDecomposition> {
    let source = p.to_cells();
    let target = source.image(sigma)?;
    Ok(SupportDecomposition::between(&source, &target))
}
