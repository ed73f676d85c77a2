use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::partitions::MultiPartition;

/// Upper bound on the number of cells an enumeration may place.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_cells: usize,
}

impl SizeGuard {
    /// 12 cells for `m ≤ 2`, 8 for `m = 3`, 6 beyond.
    pub fn default_for(m: usize) -> Self {
        let max_cells = match m {
            0..=2 => 12,
            3 => 8,
            _ => 6,
        };
        SizeGuard { max_cells }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if n > self.max_cells {
            return Err(Error::InstanceTooLarge {
                what: "cell count",
                size: n,
                limit: self.max_cells,
            });
        }
        Ok(())
    }
}

/// Every m-dimensional partition of `n`, ordered lexicographically by sorted cell list.
pub fn enumerate(m: usize, n: usize) -> Result<Vec<MultiPartition>> {
    enumerate_with_guard(m, n, SizeGuard::default_for(m))
}

pub fn enumerate_with_guard(m: usize, n: usize, guard: SizeGuard) -> Result<Vec<MultiPartition>> {
    if m == 0 {
        return Err(Error::BadDimension(m));
    }
    if n == 0 {
        return Err(Error::Malformed("n must be at least 1".into()));
    }
    guard.check(n)?;

    let mut memo = HashMap::new();
    let mut keyed: Vec<_> = arrays(m, n, &mut memo)
        .iter()
        .map(|entries| {
            let p = MultiPartition::from_entries(m, entries.clone())
                .expect("generated arrays are valid partitions");
            (p.to_cells(), p)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, p)| p).collect())
}

/// `p_m(n)`.
pub fn count(m: usize, n: usize) -> Result<usize> {
    enumerate(m, n).map(|v| v.len())
}

pub fn count_with_guard(m: usize, n: usize, guard: SizeGuard) -> Result<usize> {
    enumerate_with_guard(m, n, guard).map(|v| v.len())
}

type Array = BTreeMap<Vec<usize>, u32>;

/// All d-dimensional arrays of total `size`, for `d ≥ 0`; a 0-dimensional
/// array is a single positive entry at the empty index.
///
/// A d-dimensional array is a sequence of (d-1)-dimensional slices along the
/// first index, each slice dominated entrywise by the one before it.
fn arrays(d: usize, size: usize, memo: &mut HashMap<(usize, usize), Vec<Array>>) -> Vec<Array> {
    if let Some(hit) = memo.get(&(d, size)) {
        return hit.clone();
    }
    let out = if d == 0 {
        vec![Array::from([(Vec::new(), size as u32)])]
    } else {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        extend_slices(d, size, None, &mut stack, &mut out, memo);
        out
    };
    memo.insert((d, size), out.clone());
    out
}

fn extend_slices(
    d: usize,
    remaining: usize,
    prev: Option<&Array>,
    stack: &mut Vec<Array>,
    out: &mut Vec<Array>,
    memo: &mut HashMap<(usize, usize), Vec<Array>>,
) {
    if remaining == 0 {
        let mut entries = Array::new();
        for (k, slice) in stack.iter().enumerate() {
            for (idx, &v) in slice {
                let mut full = Vec::with_capacity(d);
                full.push(k);
                full.extend_from_slice(idx);
                entries.insert(full, v);
            }
        }
        out.push(entries);
        return;
    }
    let max_size = prev.map_or(remaining, |p| remaining.min(total(p)));
    for size in 1..=max_size {
        for slice in arrays(d - 1, size, memo) {
            if prev.is_some_and(|p| !dominates(p, &slice)) {
                continue;
            }
            stack.push(slice);
            let top = stack.last().cloned();
            extend_slices(d, remaining - size, top.as_ref(), stack, out, memo);
            stack.pop();
        }
    }
}

fn total(a: &Array) -> usize {
    a.values().map(|&v| v as usize).sum()
}

fn dominates(upper: &Array, lower: &Array) -> bool {
    lower
        .iter()
        .all(|(idx, &v)| upper.get(idx).is_some_and(|&u| u >= v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_four() {
        let all = enumerate(1, 4).unwrap();
        let shown: Vec<String> = all.iter().map(|p| p.to_string()).collect();
        // sorted-cell-list order puts (1,1,1,1) first: its cells start (0,0),(0,1)
        assert_eq!(shown, ["(1,1,1,1)", "(2,1,1)", "(2,2)", "(3,1)", "(4)"]);
    }

    #[test]
    fn trivial_counts() {
        for m in 1..=4 {
            assert_eq!(count(m, 1).unwrap(), 1);
        }
        assert_eq!(count(2, 3).unwrap(), 6);
        assert_eq!(count(2, 4).unwrap(), 13);
        assert_eq!(count(3, 2).unwrap(), 4);
    }

    #[test]
    fn guard_refuses_large_instances() {
        assert_eq!(
            count(3, 9).unwrap_err(),
            Error::InstanceTooLarge {
                what: "cell count",
                size: 9,
                limit: 8
            }
        );
        assert!(count_with_guard(3, 9, SizeGuard { max_cells: 9 }).is_ok());
        assert!(enumerate(0, 3).is_err());
        assert!(enumerate(1, 0).is_err());
    }
}
