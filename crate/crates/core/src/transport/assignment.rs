//! Minimum-cost perfect matchings.
//!
//! With uniform equal-size marginals the Kantorovich problem is a linear
//! program over doubly stochastic matrices whose extreme points are
//! permutation matrices, so an optimal plan can always be read off a
//! minimum-cost assignment.

use std::ops::{Add, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::transport::CostMatrix;

/// Largest matrix the exhaustive oracle accepts by default.
pub const DEFAULT_ORACLE_MAX: usize = 9;

/// `matching[i]` is the column assigned to row `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub matching: Vec<usize>,
    pub total: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxAssignment {
    pub matching: Vec<usize>,
    pub total: f64,
}

fn check_square(c: &CostMatrix) -> Result<usize> {
    if c.rows() != c.cols() {
        return Err(Error::NotSquare {
            rows: c.rows(),
            cols: c.cols(),
        });
    }
    Ok(c.rows())
}

fn check_integral(c: &CostMatrix) -> Result<()> {
    if !c.is_integral() {
        return Err(Error::NonIntegerCosts(
            c.kind().map_or("raw", |k| k.as_str()),
        ));
    }
    Ok(())
}

/// Exact minimum-cost assignment for integer costs.
///
/// Among all optimal matchings the lexicographically smallest one is
/// returned, so results are reproducible regardless of solver internals.
pub fn solve_assignment(c: &CostMatrix) -> Result<Assignment> {
    let n = check_square(c)?;
    check_integral(c)?;
    if n == 0 {
        return Ok(Assignment {
            matching: Vec::new(),
            total: 0,
        });
    }
    let cost = |i: usize, j: usize| c.key(i, j);
    let duals = hungarian(n, cost, i64::MAX / 4);

    // Complementary slackness: every optimal matching uses only edges that
    // are tight under an optimal dual, and every perfect matching of tight
    // edges is optimal.
    let tight: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| cost(i, j) - duals.row[i] - duals.col[j] == 0)
                .collect()
        })
        .collect();
    let matching = lexicographic_perfect_matching(&tight)
        .expect("optimal duals always admit a tight perfect matching");
    let total = matching.iter().enumerate().map(|(i, &j)| cost(i, j)).sum();
    Ok(Assignment { matching, total })
}

/// Floating-point assignment for any cost kind (Euclidean included). Not exact.
pub fn solve_assignment_approx(c: &CostMatrix) -> Result<ApproxAssignment> {
    let n = check_square(c)?;
    if n == 0 {
        return Ok(ApproxAssignment {
            matching: Vec::new(),
            total: 0.0,
        });
    }
    let duals = hungarian(n, |i, j| c.value_f64(i, j), f64::INFINITY);
    let total = duals
        .matching
        .iter()
        .enumerate()
        .map(|(i, &j)| c.value_f64(i, j))
        .sum();
    Ok(ApproxAssignment {
        matching: duals.matching,
        total,
    })
}

/// Exhaustive search over all `n!` matchings, in lexicographic order.
///
/// Ties keep the first (lexicographically smallest) matching.
pub fn solve_bruteforce(c: &CostMatrix) -> Result<Assignment> {
    solve_bruteforce_with_limit(c, DEFAULT_ORACLE_MAX)
}

pub fn solve_bruteforce_with_limit(c: &CostMatrix, limit: usize) -> Result<Assignment> {
    let n = check_square(c)?;
    check_integral(c)?;
    check_oracle_size(n, limit)?;
    let (matching, total) = brute(n, |i, j| c.key(i, j), |a, b| a < b);
    Ok(Assignment { matching, total })
}

/// Exhaustive search with floating-point costs, for the Euclidean kind.
pub fn solve_bruteforce_approx(c: &CostMatrix, limit: usize) -> Result<ApproxAssignment> {
    let n = check_square(c)?;
    check_oracle_size(n, limit)?;
    let (matching, total) = brute(n, |i, j| c.value_f64(i, j), |a, b| a < b);
    Ok(ApproxAssignment { matching, total })
}

fn check_oracle_size(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::InstanceTooLarge {
            what: "oracle matrix size",
            size: n,
            limit,
        });
    }
    Ok(())
}

/// Whether a perfect matching exists using only zero-cost entries.
///
/// Decided on exact keys, so it is exact for every cost kind.
pub fn zero_cost_matching_exists(c: &CostMatrix) -> Result<bool> {
    let n = check_square(c)?;
    let zero: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| c.key(i, j) == 0).collect())
        .collect();
    let mut owner = vec![None; n];
    Ok((0..n).all(|i| augment(i, &zero, &vec![false; n], &mut owner, &mut vec![false; n])))
}

struct Duals<T> {
    matching: Vec<usize>,
    row: Vec<T>,
    col: Vec<T>,
}

/// Shortest augmenting path Hungarian method, `O(n³)`.
fn hungarian<T, F>(n: usize, cost: F, inf: T) -> Duals<T>
where
    T: Copy + PartialOrd + Add<Output = T> + Sub<Output = T> + Zero,
    F: Fn(usize, usize) -> T,
{
    // one-based; column 0 is a virtual source
    let mut u = vec![T::zero(); n + 1];
    let mut v = vec![T::zero(); n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if reduced < minv[j] {
                    minv[j] = reduced;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] = u[owner[j]] + delta;
                    v[j] = v[j] - delta;
                } else {
                    minv[j] = minv[j] - delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut matching = vec![0; n];
    for j in 1..=n {
        matching[owner[j] - 1] = j - 1;
    }
    Duals {
        matching,
        row: u[1..].to_vec(),
        col: v[1..].to_vec(),
    }
}

/// Lexicographically smallest perfect matching in a bipartite graph given
/// by row adjacency lists (sorted ascending), or `None` if there is none.
fn lexicographic_perfect_matching(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut fixed_cols = vec![false; n];
    let mut matching = Vec::with_capacity(n);
    for i in 0..n {
        let chosen = adj[i].iter().copied().find(|&j| {
            if fixed_cols[j] {
                return false;
            }
            fixed_cols[j] = true;
            let ok = completes(i + 1, adj, &fixed_cols);
            fixed_cols[j] = false;
            ok
        })?;
        fixed_cols[chosen] = true;
        matching.push(chosen);
    }
    Some(matching)
}

/// Can rows `first..` be matched into the columns not yet blocked?
fn completes(first: usize, adj: &[Vec<usize>], blocked: &[bool]) -> bool {
    let n = adj.len();
    let mut owner = vec![None; n];
    (first..n).all(|i| augment(i, adj, blocked, &mut owner, &mut vec![false; n]))
}

fn augment(
    row: usize,
    adj: &[Vec<usize>],
    blocked: &[bool],
    owner: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for &j in &adj[row] {
        if blocked[j] || visited[j] {
            continue;
        }
        visited[j] = true;
        let free = match owner[j] {
            None => true,
            Some(other) => augment(other, adj, blocked, owner, visited),
        };
        if free {
            owner[j] = Some(row);
            return true;
        }
    }
    false
}

fn brute<T, F, L>(n: usize, cost: F, less: L) -> (Vec<usize>, T)
where
    T: Copy + Add<Output = T> + Zero,
    F: Fn(usize, usize) -> T,
    L: Fn(T, T) -> bool,
{
    let mut perm: Vec<usize> = (0..n).collect();
    let total = |p: &[usize]| {
        p.iter()
            .enumerate()
            .fold(T::zero(), |acc, (i, &j)| acc + cost(i, j))
    };
    let mut best = (perm.clone(), total(&perm));
    while next_lexicographic(&mut perm) {
        let t = total(&perm);
        if less(t, best.1) {
            best = (perm.clone(), t);
        }
    }
    best
}

fn next_lexicographic(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: &[&[i64]]) -> CostMatrix {
        CostMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn one_by_one_zero() {
        let c = matrix(&[&[0]]);
        assert_eq!(
            solve_assignment(&c).unwrap(),
            Assignment {
                matching: vec![0],
                total: 0
            }
        );
        assert_eq!(solve_bruteforce(&c).unwrap().total, 0);
    }

    #[test]
    fn two_by_two_brute_force() {
        for (a, b, c, d) in [(1, 2, 3, 4), (5, 1, 1, 5), (0, 0, 0, 0), (7, 3, 2, 9)] {
            let m = matrix(&[&[a, b], &[c, d]]);
            assert_eq!(solve_bruteforce(&m).unwrap().total, (a + d).min(b + c));
            assert_eq!(solve_assignment(&m).unwrap().total, (a + d).min(b + c));
        }
    }

    #[test]
    fn ties_resolve_to_smallest_matching() {
        let m = matrix(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(solve_assignment(&m).unwrap().matching, vec![0, 1, 2]);
        let m = matrix(&[&[4, 1, 3], &[2, 0, 5], &[3, 2, 2]]);
        let a = solve_assignment(&m).unwrap();
        assert_eq!(a.total, 5);
        assert_eq!(a, solve_bruteforce(&m).unwrap());
    }

    #[test]
    fn shape_errors() {
        let m = CostMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert_eq!(
            solve_assignment(&m).unwrap_err(),
            Error::NotSquare { rows: 2, cols: 3 }
        );
        let big = CostMatrix::from_rows(&vec![vec![0; 10]; 10]).unwrap();
        assert!(matches!(
            solve_bruteforce(&big).unwrap_err(),
            Error::InstanceTooLarge {
                size: 10,
                limit: 9,
                ..
            }
        ));
    }

    #[test]
    fn zero_matching_detection() {
        assert!(zero_cost_matching_exists(&matrix(&[&[1, 0], &[0, 1]])).unwrap());
        assert!(!zero_cost_matching_exists(&matrix(&[&[0, 0], &[1, 1]])).unwrap());
    }

    #[test]
    fn approx_solver_matches_integer_solver() {
        let m = matrix(&[&[9, 2, 7, 8], &[6, 4, 3, 7], &[5, 8, 1, 8], &[7, 6, 9, 4]]);
        let exact = solve_assignment(&m).unwrap();
        let approx = solve_assignment_approx(&m).unwrap();
        assert_eq!(exact.total, 13);
        assert_eq!(approx.total, 13.0);
    }

    #[test]
    fn empty_matrix() {
        let m = CostMatrix::from_rows(&[]).unwrap();
        assert_eq!(solve_assignment(&m).unwrap().total, 0);
    }
}
