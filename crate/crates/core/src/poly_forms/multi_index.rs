use std::fmt;

use crate::error::{Error, Result};

/// Strictly increasing list of zero-based axes naming the basis element
/// `dx_{i_1} ∧ … ∧ dx_{i_k}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(axes: Vec<usize>, dim: usize) -> Result<Self> {
        let increasing = axes.windows(2).all(|w| w[0] < w[1]);
        if !increasing || axes.iter().any(|&a| a >= dim) {
            return Err(Error::InvalidMultiIndex { axes, dim });
        }
        Ok(Self(axes))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn single(axis: usize) -> Self {
        Self(vec![axis])
    }

    pub fn axes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, axis: usize) -> bool {
        self.0.binary_search(&axis).is_ok()
    }

    /// Merges `self` followed by `other` into sorted order. Returns `None` if
    /// an axis repeats, otherwise the parity of the sorting permutation
    /// (`true` when odd) and the merged index.
    pub fn merge(&self, other: &MultiIndex) -> Option<(bool, MultiIndex)> {
        let mut inversions = 0usize;
        for &a in &self.0 {
            for &b in &other.0 {
                if a == b {
                    return None;
                }
                if a > b {
                    inversions += 1;
                }
            }
        }
        let mut merged: Vec<usize> = self.0.iter().chain(&other.0).copied().collect();
        merged.sort_unstable();
        Some((inversions % 2 == 1, Self(merged)))
    }

    /// Index with position `pos` removed.
    pub fn without_position(&self, pos: usize) -> MultiIndex {
        let mut axes = self.0.clone();
        axes.remove(pos);
        Self(axes)
    }

    /// All strictly increasing `k`-subsets of `0..dim`, in lexicographic order.
    pub fn all(dim: usize, k: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(k);
        fn rec(start: usize, dim: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if current.len() == k {
                out.push(MultiIndex(current.clone()));
                return;
            }
            for a in start..dim {
                current.push(a);
                rec(a + 1, dim, k, current, out);
                current.pop();
            }
        }
        rec(0, dim, k, &mut current, &mut out);
        out
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|a| format!("dx{}", a + 1)).collect();
        write!(f, "{}", parts.join("^"))
    }
}
