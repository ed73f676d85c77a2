//! Independent oracles shared by the integration tests. Nothing here calls
//! into the solver or the enumerator.
#![allow(dead_code)]

use std::collections::BTreeSet;

pub type Point = Vec<u32>;

/// All cells that can belong to an `n`-element down-set of `N^dim`: the box
/// below a cell has `Π(c_i + 1)` elements, so that product is at most `n`.
fn candidates(dim: usize, n: usize) -> Vec<Point> {
    fn grow(dim: usize, n: usize, prefix: &mut Point, volume: usize, out: &mut Vec<Point>) {
        if prefix.len() == dim {
            out.push(prefix.clone());
            return;
        }
        let mut c = 0;
        while volume * (c + 1) <= n {
            prefix.push(c as u32);
            grow(dim, n, prefix, volume * (c + 1), out);
            prefix.pop();
            c += 1;
        }
    }
    let mut out = Vec::new();
    grow(dim, n, &mut Vec::new(), 1, &mut out);
    out.sort();
    out
}

/// Every `n`-element down-set of `N^dim`, by include/exclude over the
/// candidate cells in lexicographic order. Predecessors of a cell are
/// lexicographically smaller, so closure can be checked on inclusion.
pub fn down_sets(dim: usize, n: usize) -> Vec<BTreeSet<Point>> {
    fn walk(
        cells: &[Point],
        at: usize,
        n: usize,
        chosen: &mut BTreeSet<Point>,
        out: &mut Vec<BTreeSet<Point>>,
    ) {
        if chosen.len() == n {
            out.push(chosen.clone());
            return;
        }
        if at == cells.len() || cells.len() - at < n - chosen.len() {
            return;
        }
        let cell = &cells[at];
        let closed = (0..cell.len()).all(|k| {
            cell[k] == 0 || {
                let mut p = cell.clone();
                p[k] -= 1;
                chosen.contains(&p)
            }
        });
        if closed {
            chosen.insert(cell.clone());
            walk(cells, at + 1, n, chosen, out);
            chosen.remove(cell);
        }
        walk(cells, at + 1, n, chosen, out);
    }
    let cells = candidates(dim, n);
    let mut out = Vec::new();
    walk(&cells, 0, n, &mut BTreeSet::new(), &mut out);
    out
}

/// Minimum of `Σ c[i][π(i)]` over all permutations, by plain recursion.
pub fn brute_min(c: &[Vec<i64>]) -> i64 {
    fn go(c: &[Vec<i64>], row: usize, used: &mut [bool], acc: i64, best: &mut i64) {
        if row == c.len() {
            *best = (*best).min(acc);
            return;
        }
        for j in 0..c.len() {
            if !used[j] {
                used[j] = true;
                go(c, row + 1, used, acc + c[row][j], best);
                used[j] = false;
            }
        }
    }
    let mut best = i64::MAX;
    go(c, 0, &mut vec![false; c.len()], 0, &mut best);
    best
}

/// Same as [`brute_min`] for real-valued costs.
pub fn brute_min_f64(c: &[Vec<f64>]) -> f64 {
    fn go(c: &[Vec<f64>], row: usize, used: &mut [bool], acc: f64, best: &mut f64) {
        if row == c.len() {
            *best = best.min(acc);
            return;
        }
        for j in 0..c.len() {
            if !used[j] {
                used[j] = true;
                go(c, row + 1, used, acc + c[row][j], best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(c, 0, &mut vec![false; c.len()], 0.0, &mut best);
    best
}

/// Young-diagram cells of a one-dimensional partition, `(α - 1, i - 1)`.
pub fn diagram(parts: &[u32]) -> Vec<Point> {
    let mut cells = Vec::new();
    for (i, &p) in parts.iter().enumerate() {
        for a in 0..p {
            cells.push(vec![a, i as u32]);
        }
    }
    cells.sort();
    cells
}

pub fn sq(a: &[u32], b: &[u32]) -> i64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x as i64 - y as i64).pow(2))
        .sum()
}

pub fn l1(a: &[u32], b: &[u32]) -> i64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x as i64 - y as i64).abs())
        .sum()
}

pub fn pairwise(src: &[Point], dst: &[Point], f: fn(&[u32], &[u32]) -> i64) -> Vec<Vec<i64>> {
    src.iter()
        .map(|a| dst.iter().map(|b| f(a, b)).collect())
        .collect()
}
