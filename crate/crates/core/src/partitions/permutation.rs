use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partitions::Cell;

/// A permutation of `{1, ..., size}` acting on lattice cells by moving
/// coordinate `i` to coordinate `σ(i)`, i.e. the linear map `e_i ↦ e_σ(i)`.
///
/// Stored zero-based: `images[i] = σ(i + 1) - 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-based images `σ(1), ..., σ(k)`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let k = images.len();
        if k == 0 {
            return Err(Error::InvalidPermutation("empty permutation".into()));
        }
        let mut seen = vec![false; k];
        let mut zero_based = Vec::with_capacity(k);
        for &img in images {
            if img == 0 || img > k {
                return Err(Error::InvalidPermutation(format!(
                    "image {img} outside 1..={k}"
                )));
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::InvalidPermutation(format!("image {img} repeated")));
            }
            zero_based.push(img - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    pub fn identity(size: usize) -> Self {
        Permutation {
            images: (0..size).collect(),
        }
    }

    /// The transposition exchanging one-based letters `a` and `b`.
    pub fn transposition(size: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > size || b > size {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({a} {b}) outside 1..={size}"
            )));
        }
        let mut p = Self::identity(size);
        p.images.swap(a - 1, b - 1);
        Ok(p)
    }

    /// All permutations of the given size in lexicographic one-line order.
    pub fn all(size: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..size).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            if !next_permutation(&mut current) {
                break;
            }
        }
        out
    }

    /// All permutations with `σ∘σ = id`, identity included.
    pub fn involutions(size: usize) -> Vec<Self> {
        Self::all(size)
            .into_iter()
            .filter(Permutation::is_involution)
            .collect()
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// One-based image of one-based letter `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| self.images[j] == i)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.size()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        other.check_size(self.size())?;
        Ok(Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        })
    }

    pub(crate) fn check_size(&self, expected: usize) -> Result<()> {
        if self.size() != expected {
            return Err(Error::SizeMismatch {
                expected,
                found: self.size(),
            });
        }
        Ok(())
    }

    /// Coordinate `σ(i)` of the result is coordinate `i` of `cell`.
    pub fn apply(&self, cell: &Cell) -> Cell {
        debug_assert_eq!(cell.dim(), self.size());
        let mut out = vec![0; cell.dim()];
        for (i, &c) in cell.coords().iter().enumerate() {
            out[self.images[i]] = c;
        }
        Cell::new(out)
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Parses one-line notation: `"2 1"` means `σ(1) = 2, σ(2) = 1`. Commas are accepted as separators.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(format!("not a number: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_one_line(&images)
    }
}
