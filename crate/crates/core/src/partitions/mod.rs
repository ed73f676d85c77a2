//! m-dimensional integer partitions, their Young diagrams, and the
//! coordinate-permutation symmetries acting on them.
//!
//! A [`MultiPartition`] is the array view (`n_{i_1,...,i_m}`), a [`CellSet`]
//! is the canonical down-set of unit cells. The two are interconvertible and
//! every symmetry operation goes through the cell set.

mod cells;
mod enumerate;
mod permutation;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub use cells::{Cell, CellSet};
pub use enumerate::{count, count_with_guard, enumerate, enumerate_with_guard, SizeGuard};
pub use permutation::Permutation;

/// An m-dimensional partition of `n` in array form.
///
/// Indices are stored zero-based. The index support is a down-set and the
/// entries are weakly decreasing along every axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPartition {
    m: usize,
    entries: BTreeMap<Vec<usize>, u32>,
    n: usize,
}

/// On-disk form: `{"m": 1, "entries": [4, 2]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub m: usize,
    pub entries: Value,
}

impl MultiPartition {
    /// Validates a nested array of depth `m`; the outermost index is `i_1`.
    pub fn validate_array(raw: &Value, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadDimension(m));
        }
        let mut entries = BTreeMap::new();
        collect_entries(raw, m, &mut Vec::new(), &mut entries)?;
        Self::from_entries(m, entries)
    }

    /// One-dimensional shortcut: `from_parts(&[4, 2])`.
    pub fn from_parts(parts: &[u32]) -> Result<Self> {
        Self::validate_array(&Value::from(parts.to_vec()), 1)
    }

    pub fn from_doc(doc: &PartitionDoc) -> Result<Self> {
        Self::validate_array(&doc.entries, doc.m)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let doc: PartitionDoc =
            serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_doc(&doc)
    }

    fn from_entries(m: usize, entries: BTreeMap<Vec<usize>, u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Malformed("partition has no entries".into()));
        }
        for (index, &value) in &entries {
            for axis in 0..m {
                if index[axis] == 0 {
                    continue;
                }
                let mut prev = index.clone();
                prev[axis] -= 1;
                match entries.get(&prev) {
                    None => {
                        return Err(Error::NotDownSet(format!(
                            "index {} is present but {} is not",
                            one_based(index),
                            one_based(&prev)
                        )))
                    }
                    Some(&before) if before < value => {
                        return Err(Error::NotMonotone(format!(
                            "entry {} at {} follows {} at {}",
                            value,
                            one_based(index),
                            before,
                            one_based(&prev)
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        let n: usize = entries.values().map(|&v| v as usize).sum();
        // redundant given positivity and the sum, kept as a sanity bound
        debug_assert!(entries.values().all(|&v| v as usize <= n));
        Ok(MultiPartition { m, entries, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Total `n`, the number of cells.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at a one-based index tuple.
    pub fn part(&self, index: &[usize]) -> Option<u32> {
        if index.len() != self.m || index.contains(&0) {
            return None;
        }
        let zero: Vec<usize> = index.iter().map(|&i| i - 1).collect();
        self.entries.get(&zero).copied()
    }

    /// `(zero-based index, entry)` pairs in lexicographic index order.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], u32)> {
        self.entries.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// Young diagram: `{(α-1, i_1-1, ..., i_m-1) : 1 ≤ α ≤ n_{i_1..i_m}}`.
    pub fn to_cells(&self) -> CellSet {
        let cells = self
            .entries
            .iter()
            .flat_map(|(index, &value)| {
                (0..value).map(move |alpha| {
                    let mut c = Vec::with_capacity(index.len() + 1);
                    c.push(alpha);
                    c.extend(index.iter().map(|&i| i as u32));
                    Cell::new(c)
                })
            })
            .collect();
        CellSet::from_down_set_unchecked(self.m + 1, cells)
    }

    /// Inverse of [`to_cells`](Self::to_cells): counts cells above each index.
    pub fn from_cells(cells: &CellSet) -> Result<Self> {
        if cells.dim() < 2 {
            return Err(Error::BadDimension(cells.dim().saturating_sub(1)));
        }
        if cells.is_empty() {
            return Err(Error::Malformed("empty cell set".into()));
        }
        let mut entries: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
        for cell in cells.iter() {
            let index = cell.coords()[1..].iter().map(|&c| c as usize).collect();
            *entries.entry(index).or_default() += 1;
        }
        Self::from_entries(cells.dim() - 1, entries)
    }

    /// `sym_σ(π)`: the partition whose diagram is `T_σ(Y(π))`.
    pub fn symmetrize(&self, sigma: &Permutation) -> Result<Self> {
        let image = self.to_cells().image(sigma)?;
        Self::from_cells(&image)
    }

    pub fn is_self_symmetric(&self, sigma: &Permutation) -> Result<bool> {
        let cells = self.to_cells();
        let image = cells.image(sigma)?;
        Ok(image == cells)
    }

    /// Nested-array form of the entries (outermost index `i_1`).
    pub fn entries_json(&self) -> Value {
        self.nested(&mut Vec::new())
    }

    fn nested(&self, prefix: &mut Vec<usize>) -> Value {
        let depth = prefix.len();
        let mut items = Vec::new();
        for k in 0.. {
            prefix.push(k);
            let item = if depth + 1 == self.m {
                self.entries.get(prefix.as_slice()).map(|&v| Value::from(v))
            } else {
                let mut corner = prefix.clone();
                corner.resize(self.m, 0);
                self.entries
                    .contains_key(&corner)
                    .then(|| self.nested(prefix))
            };
            prefix.pop();
            match item {
                Some(v) => items.push(v),
                None => break,
            }
        }
        Value::Array(items)
    }

    pub fn to_doc(&self) -> PartitionDoc {
        PartitionDoc {
            m: self.m,
            entries: self.entries_json(),
        }
    }

    /// Compact JSON document, e.g. `{"m":1,"entries":[4,2]}`.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("partition documents always serialize")
    }
}

fn one_based(index: &[usize]) -> String {
    let parts: Vec<String> = index.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

fn collect_entries(
    raw: &Value,
    remaining: usize,
    prefix: &mut Vec<usize>,
    out: &mut BTreeMap<Vec<usize>, u32>,
) -> Result<()> {
    let items = raw.as_array().ok_or_else(|| {
        Error::Malformed(format!(
            "expected an array at depth {}, found {raw}",
            prefix.len() + 1
        ))
    })?;
    if items.is_empty() {
        return Err(Error::Malformed(format!(
            "empty array at depth {}",
            prefix.len() + 1
        )));
    }
    for (k, item) in items.iter().enumerate() {
        prefix.push(k);
        if remaining == 1 {
            let value = item.as_i64().ok_or_else(|| {
                Error::Malformed(format!("expected an integer entry, found {item}"))
            })?;
            if value <= 0 {
                return Err(Error::NonPositiveEntry {
                    index: prefix.iter().map(|i| i + 1).collect(),
                    value,
                });
            }
            let value = u32::try_from(value)
                .map_err(|_| Error::Malformed(format!("entry {value} is too large")))?;
            out.insert(prefix.clone(), value);
        } else {
            collect_entries(item, remaining - 1, prefix, out)?;
        }
        prefix.pop();
    }
    Ok(())
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            let parts: Vec<String> = self.entries.values().map(|v| v.to_string()).collect();
            write!(f, "({})", parts.join(","))
        } else {
            write!(f, "{}", self.entries_json())
        }
    }
}
