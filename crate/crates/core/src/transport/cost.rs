use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::measures::DiscreteMeasure;
use crate::partitions::Cell;
use crate::rational::CostValue;

/// Ground cost between lattice points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CostKind {
    #[default]
    SquaredEuclidean,
    Euclidean,
    L1,
}

impl CostKind {
    pub const ALL: [CostKind; 3] = [
        CostKind::SquaredEuclidean,
        CostKind::Euclidean,
        CostKind::L1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CostKind::SquaredEuclidean => "sq",
            CostKind::Euclidean => "euclid",
            CostKind::L1 => "l1",
        }
    }

    /// Whether costs of this kind are integers on lattice points.
    pub fn is_integral(self) -> bool {
        !matches!(self, CostKind::Euclidean)
    }

    /// Integer key of the cost: the cost itself for integral kinds, the
    /// squared distance for Euclidean. Zero exactly when the points coincide.
    pub fn integer_key(self, a: &Cell, b: &Cell) -> i64 {
        match self {
            CostKind::SquaredEuclidean | CostKind::Euclidean => a.squared_distance(b),
            CostKind::L1 => a.l1_distance(b),
        }
    }

    pub fn cost(self, a: &Cell, b: &Cell) -> CostValue {
        let key = self.integer_key(a, b);
        match self {
            CostKind::Euclidean => CostValue::Approx((key as f64).sqrt()),
            _ => CostValue::Exact(key.into()),
        }
    }
}

impl fmt::Display for CostKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CostKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sq" | "squared-euclidean" => Ok(CostKind::SquaredEuclidean),
            "euclid" | "euclidean" => Ok(CostKind::Euclidean),
            "l1" => Ok(CostKind::L1),
            other => Err(format!(
                "unknown cost kind {other:?} (expected sq, euclid or l1)"
            )),
        }
    }
}

/// Dense `rows × cols` cost matrix.
///
/// `keys` holds exact integers: the cost for integral kinds, the squared
/// distance for [`CostKind::Euclidean`]. Raw matrices built with
/// [`CostMatrix::from_rows`] carry no kind and are treated as integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    kind: Option<CostKind>,
    keys: Vec<i64>,
}

impl CostMatrix {
    /// Integer matrix from rows; entries must be non-negative.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged cost matrix".into()));
        }
        if rows.iter().flatten().any(|&v| v < 0) {
            return Err(Error::Malformed("negative cost".into()));
        }
        Ok(CostMatrix {
            rows: rows.len(),
            cols,
            kind: None,
            keys: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn kind(&self) -> Option<CostKind> {
        self.kind
    }

    pub fn is_integral(&self) -> bool {
        self.kind.is_none_or(CostKind::is_integral)
    }

    /// Exact cost for integral matrices.
    pub fn integer(&self, i: usize, j: usize) -> Option<i64> {
        self.is_integral().then(|| self.keys[i * self.cols + j])
    }

    /// Exact key; zero exactly when the cost is zero.
    pub fn key(&self, i: usize, j: usize) -> i64 {
        self.keys[i * self.cols + j]
    }

    pub fn value_f64(&self, i: usize, j: usize) -> f64 {
        let k = self.key(i, j) as f64;
        if self.is_integral() {
            k
        } else {
            k.sqrt()
        }
    }

    pub fn value(&self, i: usize, j: usize) -> CostValue {
        match self.integer(i, j) {
            Some(v) => CostValue::Exact(v.into()),
            None => CostValue::Approx(self.value_f64(i, j)),
        }
    }
}

/// Pairwise ground costs between the atoms of two measures.
pub fn cost_matrix(
    source: &DiscreteMeasure,
    target: &DiscreteMeasure,
    kind: CostKind,
) -> Result<CostMatrix> {
    if source.dim() != target.dim() {
        return Err(Error::DimensionMismatch(source.dim(), target.dim()));
    }
    let keys = source
        .atoms()
        .iter()
        .flat_map(|a| {
            target
                .atoms()
                .iter()
                .map(move |b| kind.integer_key(&a.point, &b.point))
        })
        .collect();
    Ok(CostMatrix {
        rows: source.len(),
        cols: target.len(),
        kind: Some(kind),
        keys,
    })
}
