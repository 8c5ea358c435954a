//! Integer partitions, strict partitions, compositions and the basic
//! shape combinatorics (conjugation, hooks, dominance, strips).
//!
//! Cells are addressed 1-based in English notation: row 1 is the top row.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts {0:?} are not weakly decreasing positive integers")]
    NotAPartition(Vec<u32>),
    #[error("parts {0:?} are not strictly decreasing")]
    NotStrict(Vec<u32>),
    #[error("composition {0:?} has a zero part")]
    ZeroPart(Vec<u32>),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("cell ({row}, {col}) lies outside the shape")]
    CellOutside { row: usize, col: usize },
    #[error("core parameter must be at least 2, got {0}")]
    BadCoreParameter(usize),
    #[error("k must be positive")]
    ZeroK,
    #[error("{partition} is not a {t}-core")]
    NotACore { partition: Partition, t: usize },
    #[error("{partition} has a part larger than {k}")]
    NotBounded { partition: Partition, k: usize },
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
}

/// A weakly decreasing sequence of positive integers.
///
/// The ordering is by size first, then reverse lexicographic within a size,
/// so `(3) < (2,1) < (1,1,1)`. Within one size this refines dominance
/// downward: if `μ` dominates `λ` then `μ` sorts no later than `λ`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition(parts))
        } else {
            Err(PartitionError::NotAPartition(parts))
        }
    }

    /// Sorts the given positive parts into a partition; zeros are dropped.
    pub fn from_parts_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part, 0 for the empty partition.
    pub fn max_part(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Row length, 0 beyond the last row. `row` is 1-based.
    pub fn row(&self, row: usize) -> u32 {
        if row == 0 {
            return 0;
        }
        self.0.get(row - 1).copied().unwrap_or(0)
    }

    pub fn is_bounded(&self, k: usize) -> bool {
        self.max_part() as usize <= k
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    pub fn all_parts_odd(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 1)
    }

    /// Union of the two multisets of parts.
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            if j == other.0.len() || (i < self.0.len() && self.0[i] >= other.0[j]) {
                parts.push(self.0[i]);
                i += 1;
            } else {
                parts.push(other.0[j]);
                j += 1;
            }
        }
        Partition(parts)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.max_part() as usize;
        let parts = (1..=width)
            .map(|c| self.0.iter().filter(|&&p| p as usize >= c).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Multiplicity of each part value: `m[i]` is the number of parts equal to `i`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.max_part() as usize + 1];
        for &p in &self.0 {
            m[p as usize] += 1;
        }
        m
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && (self.row(row) as usize) >= col
    }

    /// `other ⊆ self` as Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn hook_length(&self, row: usize, col: usize) -> Result<usize, PartitionError> {
        if !self.contains_cell(row, col) {
            return Err(PartitionError::CellOutside { row, col });
        }
        let arm = self.row(row) as usize - col;
        let leg = self.0[row..].iter().filter(|&&p| p as usize >= col).count();
        Ok(arm + leg + 1)
    }

    /// All cells as 1-based `(row, col)` pairs, row-major.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len as usize).map(move |c| (r + 1, c)))
    }

    /// Hook lengths of every cell, row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.0
            .iter()
            .enumerate()
            .map(|(r, &len)| {
                (1..=len as usize)
                    .map(|c| (len as usize - c) + (conj.row(c) as usize - (r + 1)) + 1)
                    .collect()
            })
            .collect()
    }

    pub fn is_core(&self, t: usize) -> Result<bool, PartitionError> {
        if t < 2 {
            return Err(PartitionError::BadCoreParameter(t));
        }
        Ok(self.hook_lengths().iter().flatten().all(|h| h % t != 0))
    }

    /// Compares partial sums. `LessOrEqual` means `self ⊴ other`.
    pub fn dominance(&self, other: &Partition) -> Result<Dominance, PartitionError> {
        if self.size() != other.size() {
            return Err(PartitionError::SizeMismatch(self.size(), other.size()));
        }
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0u64, 0u64);
        let (mut le, mut ge) = (true, true);
        for i in 1..=n {
            a += self.row(i) as u64;
            b += other.row(i) as u64;
            le &= a <= b;
            ge &= a >= b;
        }
        Ok(if le {
            Dominance::LessOrEqual
        } else if ge {
            Dominance::Greater
        } else {
            Dominance::Incomparable
        })
    }

    /// `self / inner` has at most one cell in each column.
    pub fn is_horizontal_strip_over(&self, inner: &Partition) -> bool {
        self.contains(inner) && (1..=self.len()).all(|i| self.row(i + 1) <= inner.row(i))
    }

    /// `self / inner` has at most one cell in each row.
    pub fn is_vertical_strip_over(&self, inner: &Partition) -> bool {
        self.contains(inner) && (1..=self.len()).all(|i| self.row(i) <= inner.row(i) + 1)
    }

    /// Comma-separated parts, or `-` for the empty partition.
    pub fn to_cli_string(&self) -> String {
        if self.is_empty() {
            "-".to_string()
        } else {
            self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl std::str::FromStr for Partition {
    type Err = PartitionError;

    /// Parses `3,1`, `[3,1]`, `-` or the empty string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if t.is_empty() || t == "-" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = PartitionError;
    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    LessOrEqual,
    Greater,
    Incomparable,
}

/// A partition with distinct parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct StrictPartition(Partition);

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        Self::try_from(Partition::new(parts)?)
    }

    pub fn as_partition(&self) -> &Partition {
        &self.0
    }

    pub fn parts(&self) -> &[u32] {
        self.0.parts()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }
}

impl TryFrom<Partition> for StrictPartition {
    type Error = PartitionError;
    fn try_from(p: Partition) -> Result<Self, Self::Error> {
        if p.is_strict() {
            Ok(StrictPartition(p))
        } else {
            Err(PartitionError::NotStrict(p.into_parts()))
        }
    }
}

impl TryFrom<Vec<u32>> for StrictPartition {
    type Error = PartitionError;
    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        StrictPartition::new(parts)
    }
}

impl From<StrictPartition> for Vec<u32> {
    fn from(p: StrictPartition) -> Self {
        p.0.into_parts()
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A finite sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            Err(PartitionError::ZeroPart(parts))
        } else {
            Ok(Composition(parts))
        }
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// The partition obtained by sorting the parts.
    pub fn sorted(&self) -> Partition {
        Partition::from_parts_unsorted(self.0.clone())
    }

    /// All compositions of `n`, ordered by decreasing first part and so on.
    pub fn all_of(n: usize) -> Vec<Composition> {
        fn go(n: usize, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if n == 0 {
                out.push(Composition(prefix.clone()));
                return;
            }
            for first in (1..=n).rev() {
                prefix.push(first as u32);
                go(n - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut out);
        out
    }

    /// Distinct rearrangements of the parts of `λ`.
    pub fn rearrangements(lambda: &Partition) -> Vec<Composition> {
        let mut parts: Vec<u32> = lambda.parts().iter().rev().copied().collect();
        let mut out = vec![Composition(parts.clone())];
        // next_permutation on the ascending sequence
        loop {
            let n = parts.len();
            let Some(i) = (1..n).rev().find(|&i| parts[i - 1] < parts[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| parts[j] > parts[i - 1]).unwrap();
            parts.swap(i - 1, j);
            parts[i..].reverse();
            out.push(Composition(parts.clone()));
        }
        out.sort();
        out.dedup();
        out
    }
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = PartitionError;
    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Filters for [`partitions_of`].
#[derive(Debug, Clone, Copy, Default)]
pub struct PartitionFilter {
    pub max_part: Option<u32>,
    pub strict: bool,
    pub odd_parts: bool,
}

impl PartitionFilter {
    pub fn bounded(k: usize) -> Self {
        PartitionFilter {
            max_part: Some(k as u32),
            ..Default::default()
        }
    }

    pub fn strict() -> Self {
        PartitionFilter {
            strict: true,
            ..Default::default()
        }
    }

    pub fn odd() -> Self {
        PartitionFilter {
            odd_parts: true,
            ..Default::default()
        }
    }
}

/// All partitions of `n` passing `filter`, in reverse lexicographic order.
pub fn partitions_of(n: usize, filter: PartitionFilter) -> Vec<Partition> {
    fn go(remaining: u32, max: u32, filter: &PartitionFilter, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=max.min(remaining)).rev() {
            if filter.odd_parts && part % 2 == 0 {
                continue;
            }
            prefix.push(part);
            let next_max = if filter.strict { part - 1 } else { part };
            go(remaining - part, next_max, filter, prefix, out);
            prefix.pop();
        }
    }
    let n = n as u32;
    let mut out = Vec::new();
    go(
        n,
        filter.max_part.unwrap_or(n).min(n),
        &filter,
        &mut Vec::new(),
        &mut out,
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[2, 2]).conjugate(), p(&[2, 2]));
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(StrictPartition::new(vec![2, 2]).is_err());
        assert!(Composition::new(vec![1, 0, 2]).is_err());
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(p(&[1, 1]).dominance(&p(&[2])).unwrap(), Dominance::LessOrEqual);
        assert_eq!(p(&[3, 3]).dominance(&p(&[4, 1, 1])).unwrap(), Dominance::Incomparable);
        let l = p(&[3, 2, 1]);
        assert_eq!(l.dominance(&l).unwrap(), Dominance::LessOrEqual);
        assert_eq!(p(&[2]).dominance(&p(&[1, 1])).unwrap(), Dominance::Greater);
        assert_eq!(p(&[2]).dominance(&p(&[1])), Err(PartitionError::SizeMismatch(2, 1)));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            partitions_of(3, PartitionFilter::default()),
            vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]
        );
        assert_eq!(
            partitions_of(4, PartitionFilter::bounded(2)),
            vec![p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(partitions_of(4, PartitionFilter::strict()), vec![p(&[4]), p(&[3, 1])]);
        assert_eq!(partitions_of(0, PartitionFilter::default()), vec![Partition::empty()]);
        assert_eq!(
            partitions_of(5, PartitionFilter::odd()),
            vec![p(&[5]), p(&[3, 1, 1]), p(&[1, 1, 1, 1, 1])]
        );
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..=10)
            .map(|n| partitions_of(n, PartitionFilter::default()).len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn order_refines_dominance() {
        for n in 1..=8 {
            let ps = partitions_of(n, PartitionFilter::default());
            assert!(ps.windows(2).all(|w| w[0] < w[1]));
            for (i, a) in ps.iter().enumerate() {
                for b in &ps[i + 1..] {
                    // b later in the order, so b never strictly dominates a
                    assert_ne!(a.dominance(b).unwrap(), Dominance::LessOrEqual);
                }
            }
        }
    }

    #[test]
    fn hook_examples() {
        assert_eq!(p(&[2]).hook_length(1, 1).unwrap(), 2);
        assert_eq!(p(&[2, 1, 1]).hook_length(1, 1).unwrap(), 4);
        assert_eq!(p(&[3, 1]).hook_length(1, 2).unwrap(), 2);
        assert!(p(&[3, 1]).hook_length(2, 2).is_err());
        assert!(p(&[3, 1]).hook_length(0, 1).is_err());
        let l = p(&[4, 2, 1]);
        for (r, c) in l.cells() {
            assert_eq!(l.hook_lengths()[r - 1][c - 1], l.hook_length(r, c).unwrap());
        }
    }

    #[test]
    fn core_examples() {
        assert!(p(&[2]).is_core(3).unwrap());
        assert!(!p(&[1, 1, 1]).is_core(3).unwrap());
        assert!(Partition::empty().is_core(5).unwrap());
        assert!(p(&[1]).is_core(1).is_err());
    }

    #[test]
    fn strips() {
        assert!(p(&[3, 1]).is_horizontal_strip_over(&p(&[1])));
        assert!(p(&[2, 2]).is_horizontal_strip_over(&p(&[2])));
        assert!(!p(&[2, 2]).is_horizontal_strip_over(&p(&[1])));
        assert!(p(&[2, 2]).is_vertical_strip_over(&p(&[1, 1])));
        assert!(!p(&[3]).is_vertical_strip_over(&p(&[1])));
        assert!(!p(&[1]).is_horizontal_strip_over(&p(&[2])));
    }

    #[test]
    fn parsing() {
        assert_eq!("3,1".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("[3, 1]".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("-".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,3".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(serde_json::to_string(&p(&[3, 1])).unwrap(), "[3,1]");
        assert_eq!(serde_json::to_string(&Partition::empty()).unwrap(), "[]");
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }

    #[test]
    fn rearrangements_and_compositions() {
        let r = Composition::rearrangements(&p(&[2, 1, 1]));
        assert_eq!(r.len(), 3);
        assert_eq!(Composition::all_of(4).len(), 8);
        assert_eq!(Composition::all_of(0), vec![Composition::empty()]);
        assert_eq!(
            Composition::rearrangements(&Partition::empty()),
            vec![Composition::empty()]
        );
    }

    #[test]
    fn merge_sorts() {
        assert_eq!(p(&[3, 1]).merge(&p(&[2, 2])), p(&[3, 2, 2, 1]));
    }
}
