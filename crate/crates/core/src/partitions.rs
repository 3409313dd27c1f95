//! Integer partitions, weak compositions and Kostka numbers.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`partitions_of`].
pub const PARTITION_BOUND: usize = 12;

/// Weakly decreasing list of positive parts. The empty list is the
/// partition of zero.
///
/// Partitions are ordered first by size and then reverse-lexicographically,
/// so `(3) < (2,1) < (1,1,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(k)`
    pub fn row(k: usize) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Partition(vec![k])
        }
    }

    /// `(1^k)`
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        Partition(
            (1..=width)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count())
                .collect(),
        )
    }

    /// Dominance order: every partial sum of `self` is at least the
    /// matching partial sum of `other`. Sizes must agree.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Union of the parts of two partitions.
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::from_unsorted(parts)
    }

    /// Multiplicities `m_i` of each part size `i ≥ 1`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
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

/// Sequence of non-negative integers.
pub type Composition = Vec<usize>;

/// All partitions of `n`, largest first part first.
pub fn partitions_of(n: usize) -> Result<Vec<Partition>> {
    if n > PARTITION_BOUND {
        return Err(Error::BoundExceeded {
            what: "partition size",
            value: n,
            bound: PARTITION_BOUND,
        });
    }
    Ok(partitions_unchecked(n))
}

fn partitions_unchecked(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All length-`k` sequences of non-negative integers summing to `n`, in
/// reverse-lexicographic order.
pub fn weak_compositions(n: usize, k: usize) -> Vec<Composition> {
    fn go(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in (0..=rest).rev() {
            cur.push(v);
            go(rest - v, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, k, &mut Vec::new(), &mut out);
    out
}

/// All compositions of `n` into positive parts.
pub fn compositions_of(n: usize) -> Vec<Composition> {
    fn go(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for v in (1..=rest).rev() {
            cur.push(v);
            go(rest - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

type KostkaKey = (Partition, Vec<usize>);

fn kostka_memo() -> &'static RwLock<HashMap<KostkaKey, u64>> {
    static MEMO: OnceLock<RwLock<HashMap<KostkaKey, u64>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Number of semistandard tableaux of shape `shape` and content `content`.
pub fn kostka(shape: &Partition, content: &Partition) -> Result<u64> {
    kostka_composition(shape, content.parts())
}

/// Kostka number for an arbitrary weak composition as content.
///
/// The tableaux are built one value at a time: the cells holding value `i`
/// form a horizontal strip added to the shape filled so far.
pub fn kostka_composition(shape: &Partition, content: &[usize]) -> Result<u64> {
    if shape.size() != content.iter().sum::<usize>() {
        return Err(Error::SizeMismatch(format!(
            "shape {shape} has size {} but content {content:?} sums to {}",
            shape.size(),
            content.iter().sum::<usize>()
        )));
    }
    let key = (shape.clone(), content.to_vec());
    if let Some(&k) = kostka_memo().read().unwrap().get(&key) {
        return Ok(k);
    }
    let rows = shape.len();
    let mut filled = vec![0usize; rows];
    let count = count_strips(shape.parts(), content, &mut filled);
    kostka_memo().write().unwrap().entry(key).or_insert(count);
    Ok(count)
}

fn count_strips(shape: &[usize], content: &[usize], filled: &mut Vec<usize>) -> u64 {
    let Some((&strip, rest)) = content.split_first() else {
        return u64::from(filled.as_slice() == shape);
    };
    let old = filled.clone();
    let mut total = 0;
    add_strip(shape, &old, 0, strip, filled, &mut |f| {
        let mut f = f.to_vec();
        total += count_strips(shape, rest, &mut f);
    });
    total
}

/// Enumerates new row lengths `new[r]` with `old[r] ≤ new[r] ≤ min(shape[r], old[r-1])`
/// adding exactly `remaining` cells.
fn add_strip(
    shape: &[usize],
    old: &[usize],
    row: usize,
    remaining: usize,
    new: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if row == shape.len() {
        if remaining == 0 {
            visit(new);
        }
        return;
    }
    let cap = if row == 0 {
        shape[0]
    } else {
        shape[row].min(old[row - 1])
    };
    let lo = old[row];
    if cap < lo {
        return;
    }
    for extra in 0..=(cap - lo).min(remaining) {
        new[row] = lo + extra;
        add_strip(shape, old, row + 1, remaining - extra, new, visit);
    }
    new[row] = old[row];
}
