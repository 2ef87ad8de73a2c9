//! Permutations against a partition of `[d]`: how many indices a permutation
//! keeps inside their block, and the largest block forced by a lower bound
//! on that count.

use itertools::Itertools;

use crate::error::{precondition, Error, Result};

/// Largest `d` for which permutations are enumerated.
pub const MAX_ENUMERATION_D: usize = 8;

/// A set partition of `{0, ..., d-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    d: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(d: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if d == 0 {
            return precondition("partition of an empty set");
        }
        let mut block_of = vec![usize::MAX; d];
        let mut blocks: Vec<Vec<usize>> = blocks.into_iter().map(|b| b.into_iter().sorted().collect()).collect();
        for (k, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return precondition("partition has an empty block");
            }
            for &i in b {
                if i >= d {
                    return precondition(format!("element {} outside [{d}]", i + 1));
                }
                if block_of[i] != usize::MAX {
                    return precondition(format!("element {} in two blocks", i + 1));
                }
                block_of[i] = k;
            }
        }
        if let Some(i) = block_of.iter().position(|&b| b == usize::MAX) {
            return precondition(format!("element {} not covered", i + 1));
        }
        blocks.sort();
        for (k, b) in blocks.iter().enumerate() {
            for &i in b {
                block_of[i] = k;
            }
        }
        Ok(Partition { d, blocks, block_of })
    }

    /// From a restricted growth string: `labels[i]` is the block of `i`.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let k = labels.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &l) in labels.iter().enumerate() {
            blocks[l].push(i);
        }
        Self::new(labels.len(), blocks)
    }

    /// Parses `"1,2;3"` (1-based elements, blocks separated by `;`).
    pub fn parse(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in s.split(';') {
            let mut b = Vec::new();
            for tok in part.split(',') {
                let tok = tok.trim();
                let v: usize = tok.parse().map_err(|_| Error::Parse {
                    offset: 0,
                    message: format!("bad block element {tok:?}"),
                })?;
                if v == 0 {
                    return precondition("block elements are 1-based");
                }
                b.push(v - 1);
            }
            blocks.push(b);
        }
        let d = blocks.iter().flatten().copied().max().map_or(0, |m| m + 1);
        Self::new(d, blocks)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.block_of[i] == self.block_of[j]
    }

    pub fn max_block(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `|{i : i ~ sigma(i)}|`.
    pub fn fixed_equivalent(&self, sigma: &[usize]) -> usize {
        (0..self.d).filter(|&i| self.equivalent(i, sigma[i])).count()
    }
}

/// All set partitions of `[d]`, via restricted growth strings.
pub fn all_partitions(d: usize) -> Vec<Partition> {
    fn rec(labels: &mut Vec<usize>, max: usize, d: usize, out: &mut Vec<Partition>) {
        if labels.len() == d {
            out.push(Partition::from_labels(labels).expect("restricted growth string"));
            return;
        }
        let next = if labels.is_empty() { 0 } else { max + 1 };
        for l in 0..=next {
            labels.push(l);
            rec(labels, max.max(l), d, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        rec(&mut Vec::with_capacity(d), 0, d, &mut out);
    }
    out
}

fn check(part: &Partition, t: usize) -> Result<()> {
    if t < 1 || t > part.d {
        return precondition(format!("need 1 <= t <= d, got t={t}, d={}", part.d));
    }
    if part.d > MAX_ENUMERATION_D {
        return Err(Error::Budget(format!("d={} exceeds the enumeration limit {MAX_ENUMERATION_D}", part.d)));
    }
    Ok(())
}

/// Whether every permutation keeps at least `t` indices inside their block.
pub fn hypothesis_holds(part: &Partition, t: usize) -> Result<bool> {
    check(part, t)?;
    Ok((0..part.d).permutations(part.d).all(|s| part.fixed_equivalent(&s) >= t))
}

/// `ceil((d+t)/2)`.
pub fn class_bound(d: usize, t: usize) -> usize {
    (d + t).div_ceil(2)
}

pub fn max_class_bound_check(part: &Partition, t: usize) -> Result<bool> {
    check(part, t)?;
    Ok(part.max_block() >= class_bound(part.d, t))
}

/// When the largest block has size `m < ceil((d+t)/2)`: lay the blocks out
/// consecutively, largest first, and shift by `m`. The returned permutation
/// keeps exactly `max(0, 2m-d)` indices inside their block.
pub fn cyclic_shift_witness(part: &Partition, t: usize) -> Result<Option<Vec<usize>>> {
    check(part, t)?;
    let m = part.max_block();
    if m >= class_bound(part.d, t) {
        return Ok(None);
    }
    let order: Vec<usize> = part
        .blocks
        .iter()
        .sorted_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])))
        .flatten()
        .copied()
        .collect();
    let d = part.d;
    let mut sigma = vec![0; d];
    for (pos, &i) in order.iter().enumerate() {
        sigma[i] = order[(pos + m) % d];
    }
    let count = part.fixed_equivalent(&sigma);
    if count != (2 * m).saturating_sub(d) || count >= t {
        return Err(Error::Internal(format!("shift witness keeps {count} indices")));
    }
    Ok(Some(sigma))
}
