use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{CostValue, ExactRational};
use crate::transport::CostMatrix;

/// Sparse non-negative matrix with prescribed row and column sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportPlan {
    entries: BTreeMap<(usize, usize), ExactRational>,
    row_marginal: Vec<ExactRational>,
    col_marginal: Vec<ExactRational>,
}

impl TransportPlan {
    /// Validates positivity and both marginals exactly. Zero entries are dropped.
    pub fn new(
        entries: impl IntoIterator<Item = ((usize, usize), ExactRational)>,
        row_marginal: Vec<ExactRational>,
        col_marginal: Vec<ExactRational>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((i, j), mass) in entries {
            if mass < ExactRational::zero() {
                return Err(Error::MarginalMismatch(format!(
                    "negative mass at ({i},{j})"
                )));
            }
            if i >= row_marginal.len() || j >= col_marginal.len() {
                return Err(Error::ShapeMismatch(format!(
                    "entry ({i},{j}) out of range"
                )));
            }
            if !mass.is_zero() {
                *map.entry((i, j)).or_insert_with(ExactRational::zero) += mass;
            }
        }
        let mut rows = vec![ExactRational::zero(); row_marginal.len()];
        let mut cols = vec![ExactRational::zero(); col_marginal.len()];
        for (&(i, j), &mass) in &map {
            rows[i] += mass;
            cols[j] += mass;
        }
        if rows != row_marginal {
            return Err(Error::MarginalMismatch("row sums differ".into()));
        }
        if cols != col_marginal {
            return Err(Error::MarginalMismatch("column sums differ".into()));
        }
        Ok(TransportPlan {
            entries: map,
            row_marginal,
            col_marginal,
        })
    }

    pub fn rows(&self) -> usize {
        self.row_marginal.len()
    }

    pub fn cols(&self) -> usize {
        self.col_marginal.len()
    }

    pub fn mass(&self, i: usize, j: usize) -> ExactRational {
        self.entries
            .get(&(i, j))
            .copied()
            .unwrap_or_else(ExactRational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), ExactRational)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Index pairs carrying positive mass.
    pub fn support(&self) -> Vec<(usize, usize)> {
        self.entries.keys().copied().collect()
    }

    pub fn row_marginal(&self) -> &[ExactRational] {
        &self.row_marginal
    }

    pub fn col_marginal(&self) -> &[ExactRational] {
        &self.col_marginal
    }

    /// `{"n": n, "entries": [{"i","j","num","den"}...], "total_num", "total_den"}`.
    ///
    /// Approximate totals are written as `"total"` instead.
    pub fn to_json(&self, total: &CostValue) -> serde_json::Value {
        #[derive(Serialize)]
        struct EntryJson {
            i: usize,
            j: usize,
            num: i64,
            den: i64,
        }
        let entries: Vec<EntryJson> = self
            .entries
            .iter()
            .map(|(&(i, j), m)| EntryJson {
                i,
                j,
                num: *m.numer(),
                den: *m.denom(),
            })
            .collect();
        let mut doc = serde_json::json!({ "n": self.rows(), "entries": entries });
        match total {
            CostValue::Exact(r) => {
                doc["total_num"] = (*r.numer()).into();
                doc["total_den"] = (*r.denom()).into();
            }
            CostValue::Approx(x) => doc["total"] = (*x).into(),
        }
        doc
    }
}

/// Mass `1/n` on each `(i, matching[i])`.
pub fn plan_of_matching(matching: &[usize]) -> Result<TransportPlan> {
    let n = matching.len();
    let mut seen = vec![false; n];
    for &j in matching {
        if j >= n || std::mem::replace(&mut seen[j], true) {
            return Err(Error::Malformed("matching is not a permutation".into()));
        }
    }
    let w = ExactRational::new(1, n.max(1) as i64);
    TransportPlan::new(
        matching.iter().enumerate().map(|(i, &j)| ((i, j), w)),
        vec![w; n],
        vec![w; n],
    )
}

/// `Σ c_ij γ_ij`, exact for integral cost matrices.
pub fn plan_cost(plan: &TransportPlan, c: &CostMatrix) -> Result<CostValue> {
    if plan.rows() != c.rows() || plan.cols() != c.cols() {
        return Err(Error::ShapeMismatch(format!(
            "plan is {}x{}, costs are {}x{}",
            plan.rows(),
            plan.cols(),
            c.rows(),
            c.cols()
        )));
    }
    if c.is_integral() {
        let total = plan
            .entries()
            .map(|((i, j), m)| m * c.key(i, j))
            .sum::<ExactRational>();
        Ok(CostValue::Exact(total))
    } else {
        let total = plan
            .entries()
            .map(|((i, j), m)| crate::rational::to_f64(&m) * c.value_f64(i, j))
            .sum::<f64>();
        Ok(CostValue::Approx(total))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_plan_is_diagonal() {
        let plan = plan_of_matching(&[0, 1]).unwrap();
        assert_eq!(plan.support(), vec![(0, 0), (1, 1)]);
        assert_eq!(plan.mass(0, 0), ExactRational::new(1, 2));
        assert_eq!(plan.mass(0, 1), ExactRational::zero());
    }

    #[test]
    fn marginals_are_uniform() {
        let plan = plan_of_matching(&[2, 0, 1]).unwrap();
        assert!(plan
            .row_marginal()
            .iter()
            .all(|&r| r == ExactRational::new(1, 3)));
        assert!(plan
            .col_marginal()
            .iter()
            .all(|&r| r == ExactRational::new(1, 3)));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(plan_of_matching(&[0, 0]).is_err());
        assert!(plan_of_matching(&[0, 2]).is_err());
    }

    #[test]
    fn rejects_broken_marginals() {
        let half = ExactRational::new(1, 2);
        let err = TransportPlan::new([((0, 0), half)], vec![half, half], vec![half, half]);
        assert!(matches!(err, Err(Error::MarginalMismatch(_))));
    }

    #[test]
    fn fractional_plan_cost() {
        let c = CostMatrix::from_rows(&[vec![0, 4], vec![4, 0]]).unwrap();
        let q = ExactRational::new(1, 4);
        let half = ExactRational::new(1, 2);
        let plan = TransportPlan::new(
            [((0, 0), q), ((0, 1), q), ((1, 0), q), ((1, 1), q)],
            vec![half, half],
            vec![half, half],
        )
        .unwrap();
        assert_eq!(plan_cost(&plan, &c).unwrap(), CostValue::Exact(2.into()));
        let wrong = CostMatrix::from_rows(&[vec![0]]).unwrap();
        assert!(matches!(
            plan_cost(&plan, &wrong),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn plan_json() {
        let plan = plan_of_matching(&[1, 0]).unwrap();
        let doc = plan.to_json(&CostValue::Exact(ExactRational::new(1, 1)));
        assert_eq!(
            doc,
            serde_json::json!({
                "n": 2,
                "entries": [{"i":0,"j":1,"num":1,"den":2},{"i":1,"j":0,"num":1,"den":2}],
                "total_num": 1, "total_den": 1
            })
        );
    }
}
