use crate::error::{Error, Result};
use crate::partitions::Cell;
use crate::rational::approx_eq;
use crate::transport::CostKind;

pub const MAX_PAIRS: usize = 12;
pub const MAX_CYCLE: usize = 4;

/// A family of support pairs whose total cost drops when targets are rerouted.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleWitness {
    pub family: Vec<(Cell, Cell)>,
    /// `rerouted[i]` is the target that source `family[i].0` receives instead.
    pub rerouted: Vec<Cell>,
    pub original_cost: f64,
    pub rerouted_cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Monotonicity {
    Holds,
    Violated(CycleWitness),
}

impl Monotonicity {
    pub fn holds(&self) -> bool {
        matches!(self, Monotonicity::Holds)
    }
}

/// Checks `Σ c(x_i, y_i) ≤ Σ c(x_i, y_τ(i))` for every family of at most
/// `max_cycle` pairs and every permutation `τ` of its targets.
///
/// Integral kinds compare exactly; Euclidean uses a relative tolerance.
pub fn is_c_cyclically_monotone(
    pairs: &[(Cell, Cell)],
    kind: CostKind,
    max_cycle: usize,
) -> Result<Monotonicity> {
    if pairs.len() > MAX_PAIRS {
        return Err(Error::InstanceTooLarge {
            what: "support pair count",
            size: pairs.len(),
            limit: MAX_PAIRS,
        });
    }
    if max_cycle > MAX_CYCLE {
        return Err(Error::InstanceTooLarge {
            what: "cycle length",
            size: max_cycle,
            limit: MAX_CYCLE,
        });
    }
    let mut subset = Vec::new();
    for k in 2..=max_cycle.min(pairs.len()) {
        if let Some(w) = search(pairs, kind, k, 0, &mut subset) {
            return Ok(Monotonicity::Violated(w));
        }
    }
    Ok(Monotonicity::Holds)
}

fn search(
    pairs: &[(Cell, Cell)],
    kind: CostKind,
    k: usize,
    start: usize,
    subset: &mut Vec<usize>,
) -> Option<CycleWitness> {
    if subset.len() == k {
        return check_family(pairs, kind, subset);
    }
    for next in start..pairs.len() {
        subset.push(next);
        let found = search(pairs, kind, k, next + 1, subset);
        subset.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn check_family(pairs: &[(Cell, Cell)], kind: CostKind, subset: &[usize]) -> Option<CycleWitness> {
    let k = subset.len();
    let cost = |s: usize, t: usize| -> (i64, f64) {
        let key = kind.integer_key(&pairs[subset[s]].0, &pairs[subset[t]].1);
        let f = if kind.is_integral() {
            key as f64
        } else {
            (key as f64).sqrt()
        };
        (key, f)
    };
    let original: (i64, f64) = (0..k)
        .map(|s| cost(s, s))
        .fold((0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let mut tau: Vec<usize> = (0..k).collect();
    while next_permutation(&mut tau) {
        let rerouted = tau
            .iter()
            .enumerate()
            .map(|(s, &t)| cost(s, t))
            .fold((0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
        let violated = if kind.is_integral() {
            original.0 > rerouted.0
        } else {
            original.1 > rerouted.1 && !approx_eq(original.1, rerouted.1)
        };
        if violated {
            return Some(CycleWitness {
                family: subset.iter().map(|&s| pairs[s].clone()).collect(),
                rerouted: tau.iter().map(|&t| pairs[subset[t]].1.clone()).collect(),
                original_cost: original.1,
                rerouted_cost: rerouted.1,
            });
        }
    }
    None
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
