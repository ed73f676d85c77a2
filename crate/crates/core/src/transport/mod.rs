//! Exact discrete optimal transport between partition measures.

mod assignment;
mod cost;
mod monotone;
mod plan;

pub use assignment::{
    solve_assignment, solve_assignment_approx, solve_bruteforce, solve_bruteforce_approx,
    solve_bruteforce_with_limit, zero_cost_matching_exists, ApproxAssignment, Assignment,
    DEFAULT_ORACLE_MAX,
};
pub use cost::{cost_matrix, CostKind, CostMatrix};
pub use monotone::{is_c_cyclically_monotone, CycleWitness, Monotonicity, MAX_CYCLE, MAX_PAIRS};
pub use plan::{plan_cost, plan_of_matching, TransportPlan};

use crate::error::{Error, Result};
use crate::measures::{measure_of, DiscreteMeasure};
use crate::partitions::{Cell, MultiPartition};
use crate::rational::{CostValue, ExactRational};

/// An optimal plan between two partition measures together with its value.
#[derive(Debug, Clone)]
pub struct Solution {
    pub source: DiscreteMeasure,
    pub target: DiscreteMeasure,
    pub costs: CostMatrix,
    /// Optimal assignment of source atoms to target atoms.
    pub matching: Vec<usize>,
    /// Optimal transport cost, i.e. the total of the matching divided by `n`.
    pub value: CostValue,
    /// Exact answer to "is the value zero", for every cost kind.
    pub zero: bool,
}

impl Solution {
    pub fn plan(&self) -> TransportPlan {
        plan_of_matching(&self.matching).expect("solver matchings are permutations")
    }

    /// `(source point, target point)` pairs of the optimal plan's support.
    pub fn support_pairs(&self) -> Vec<(Cell, Cell)> {
        self.matching
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                (
                    self.source.atoms()[i].point.clone(),
                    self.target.atoms()[j].point.clone(),
                )
            })
            .collect()
    }
}

fn check_shapes(a: &MultiPartition, b: &MultiPartition) -> Result<()> {
    if a.m() != b.m() || a.n() != b.n() {
        return Err(Error::ShapeMismatch(format!(
            "partitions have (m, n) = ({}, {}) and ({}, {})",
            a.m(),
            a.n(),
            b.m(),
            b.n()
        )));
    }
    Ok(())
}

/// Solves the transport problem between `δ_a` and `δ_b` for any cost kind.
pub fn transport_between(
    a: &MultiPartition,
    b: &MultiPartition,
    kind: CostKind,
) -> Result<Solution> {
    check_shapes(a, b)?;
    let source = measure_of(a);
    let target = measure_of(b);
    let costs = cost_matrix(&source, &target, kind)?;
    let n = a.n() as i64;
    let (matching, value, zero) = if kind.is_integral() {
        let best = solve_assignment(&costs)?;
        let value = ExactRational::new(best.total, n);
        (best.matching, CostValue::Exact(value), best.total == 0)
    } else {
        let best = solve_assignment_approx(&costs)?;
        let zero = zero_cost_matching_exists(&costs)?;
        let value = if zero { 0.0 } else { best.total / n as f64 };
        (best.matching, CostValue::Approx(value), zero)
    };
    Ok(Solution {
        source,
        target,
        costs,
        matching,
        value,
        zero,
    })
}

/// Exact Wasserstein cost `W(δ_a, δ_b)` for integral cost kinds.
pub fn wasserstein(
    a: &MultiPartition,
    b: &MultiPartition,
    kind: CostKind,
) -> Result<ExactRational> {
    if !kind.is_integral() {
        check_shapes(a, b)?;
        return Err(Error::NonIntegerCosts(kind.as_str()));
    }
    let sol = transport_between(a, b, kind)?;
    Ok(sol
        .value
        .exact()
        .expect("integral kinds yield exact values"))
}
