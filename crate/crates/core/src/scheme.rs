//! The combinatorial indexing universe for a pair `(n, d)`: all `d`-subsets of `[n]`
//! and all partitions of `[n]` into `d`-element blocks.
//!
//! Both lists are sorted lexicographically on canonical forms. That order fixes the
//! coordinate positions of every vector in the monomial space, in memory and on disk.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Sorted set of 1-based labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(Vec<u8>);

impl Subset {
    /// Builds a subset from arbitrary-order labels; rejects repeats and label 0.
    pub fn new(mut members: Vec<u8>) -> Result<Self> {
        members.sort_unstable();
        if members.first() == Some(&0) || members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidIndex(format!("{members:?}")));
        }
        Ok(Subset(members))
    }

    pub fn members(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: u8) -> bool {
        self.0.binary_search(&label).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn complement(&self, n: usize) -> Subset {
        Subset((1..=n as u8).filter(|x| !self.contains(*x)).collect())
    }

    pub fn relabel(&self, sigma: &[u8]) -> Subset {
        let mut v: Vec<u8> = self.0.iter().map(|&x| sigma[x as usize - 1]).collect();
        v.sort_unstable();
        Subset(v)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.0 {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Subset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let labels = s
            .trim()
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("bad label {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Subset::new(labels)
    }
}

/// A partition of `[n]` into blocks, in canonical form: blocks internally sorted and
/// ordered by their minimum element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    blocks: Vec<Subset>,
}

impl Partition {
    pub fn new(mut blocks: Vec<Subset>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for b in &blocks {
            for &x in b.members() {
                let x = x as usize;
                if x > n || seen[x] {
                    return Err(Error::InvalidIndex(format!("{blocks:?} is not a partition of [{n}]")));
                }
                seen[x] = true;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::InvalidIndex(format!("{blocks:?} does not cover [{n}]")));
        }
        blocks.sort_by_key(|b| b.members()[0]);
        Ok(Partition { blocks })
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Subset::len).sum()
    }

    /// The image under the relabeling `i ↦ sigma[i-1]`, recanonicalized.
    pub fn relabel(&self, sigma: &[u8]) -> Partition {
        let mut blocks: Vec<Subset> = self.blocks.iter().map(|b| b.relabel(sigma)).collect();
        blocks.sort_by_key(|b| b.members()[0]);
        Partition { blocks }
    }

    /// True when some block contains both `a` and `b`.
    pub fn joins(&self, a: u8, b: u8) -> bool {
        self.blocks.iter().any(|blk| blk.contains(a) && blk.contains(b))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let blocks = s.split('|').map(Subset::from_str).collect::<Result<Vec<_>>>()?;
        let n = blocks.iter().map(Subset::len).sum();
        Partition::new(blocks, n)
    }
}

/// All `d`-subsets and all `d`-block partitions of `[n]`, with lookup tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionScheme {
    n: usize,
    d: usize,
    subsets: Vec<Subset>,
    partitions: Vec<Partition>,
    subset_pos: HashMap<Subset, usize>,
    partition_pos: HashMap<Partition, usize>,
    /// For each partition, the positions of its blocks in `subsets`.
    blocks_pos: Vec<Vec<usize>>,
}

pub const MAX_N: usize = 8;

/// Builds the scheme for `(n, d)`; requires `d | n` and `n ≤ 8`.
pub fn enumerate_scheme(n: usize, d: usize) -> Result<PartitionScheme> {
    if d == 0 || n == 0 || n > MAX_N {
        return Err(Error::Unsupported { n, d });
    }
    if !n.is_multiple_of(d) {
        return Err(Error::Indivisible { n, d });
    }
    let labels: Vec<u8> = (1..=n as u8).collect();
    let subsets: Vec<Subset> = combinations(&labels, d).into_iter().map(Subset).collect();
    let mut partitions = Vec::new();
    collect_partitions(&labels, d, &mut Vec::new(), &mut partitions);
    let mut partitions: Vec<Partition> = partitions
        .into_iter()
        .map(|blocks| Partition { blocks })
        .collect();
    partitions.sort();
    let subset_pos: HashMap<Subset, usize> =
        subsets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let partition_pos = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let blocks_pos = partitions
        .iter()
        .map(|p| p.blocks.iter().map(|b| subset_pos[b]).collect())
        .collect();
    Ok(PartitionScheme { n, d, subsets, partitions, subset_pos, partition_pos, blocks_pos })
}

/// All `k`-element combinations of `items`, lexicographic.
pub fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i].clone());
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

fn collect_partitions(rest: &[u8], d: usize, cur: &mut Vec<Subset>, out: &mut Vec<Vec<Subset>>) {
    let Some((&first, others)) = rest.split_first() else {
        out.push(cur.clone());
        return;
    };
    for mates in combinations(others, d - 1) {
        let mut block = vec![first];
        block.extend_from_slice(&mates);
        let remaining: Vec<u8> = others.iter().copied().filter(|x| !mates.contains(x)).collect();
        cur.push(Subset(block));
        collect_partitions(&remaining, d, cur, out);
        cur.pop();
    }
}

impl PartitionScheme {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of blocks per partition.
    pub fn k(&self) -> usize {
        self.n / self.d
    }

    pub fn subsets(&self) -> &[Subset] {
        &self.subsets
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn subset_index(&self, s: &Subset) -> Option<usize> {
        self.subset_pos.get(s).copied()
    }

    pub fn partition_index(&self, p: &Partition) -> Option<usize> {
        self.partition_pos.get(p).copied()
    }

    pub fn block_indices(&self, partition: usize) -> &[usize] {
        &self.blocks_pos[partition]
    }

    /// Canonical partition strings such as `"12|34|56"`, in coordinate order.
    pub fn order_labels(&self) -> Vec<String> {
        self.partitions.iter().map(ToString::to_string).collect()
    }
}
