use std::fmt;

use itertools::Itertools;

use super::Permutation;
use crate::error::{domain, Result};

/// A partition of `{1..n}`. Each block is sorted ascending and blocks are
/// sorted by their maximum, so `s₁, …, s_k` index exactly as in τ_π.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates and canonicalizes the given blocks.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut canon = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return domain("partition blocks must be nonempty");
            }
            b.sort_unstable();
            for &x in &b {
                if x == 0 || x > n || seen[x - 1] {
                    return domain(format!("element {x} is out of range or repeated"));
                }
                seen[x - 1] = true;
            }
            canon.push(b);
        }
        if seen.iter().any(|s| !s) {
            return domain(format!("blocks do not cover 1..{n}"));
        }
        canon.sort_by_key(|b| *b.last().expect("nonempty"));
        Ok(SetPartition { n, blocks: canon })
    }

    pub fn empty() -> Self {
        SetPartition { n: 0, blocks: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `|π|`, the number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    fn shifted(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.iter().map(|x| x + 1).collect()).collect()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.blocks.iter().map(|b| format!("{{{}}}", b.iter().join(","))).join(","))
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// 𝓗(n): every partition of `{1..n}`, in canonical form, sorted.
pub fn partitions(n: usize) -> Vec<SetPartition> {
    let mut layer = vec![Vec::<Vec<usize>>::new()];
    for x in 1..=n {
        let mut next = Vec::new();
        for blocks in &layer {
            for i in 0..blocks.len() {
                let mut b = blocks.clone();
                b[i].push(x);
                next.push(b);
            }
            let mut b = blocks.clone();
            b.push(vec![x]);
            next.push(b);
        }
        layer = next;
    }
    let mut out: Vec<SetPartition> =
        layer.into_iter().map(|b| SetPartition::new(n, b).expect("generated blocks are valid")).collect();
    out.sort();
    out
}

/// τ_π ∈ S_{|π|+n}: block heads first, then each block's elements placed
/// right after its head.
pub fn tau_pi(pi: &SetPartition) -> Permutation {
    let k = pi.len();
    let mut heads = Vec::with_capacity(k);
    let mut offset = 0;
    for b in pi.blocks() {
        heads.push(offset + 1);
        offset += 1 + b.len();
    }
    let mut images = vec![0; k + pi.n()];
    for (i, b) in pi.blocks().iter().enumerate() {
        images[i] = heads[i];
        for (j, &x) in b.iter().enumerate() {
            images[k + x - 1] = heads[i] + j + 1;
        }
    }
    Permutation::from_images(images).expect("τ_π is a bijection")
}

/// ρ(π, i): adds 1 as a new singleton block (i = 1) or into the shifted
/// block `s_{i−1}+1` (i ≥ 2).
pub fn rho(pi: &SetPartition, i: usize) -> Result<SetPartition> {
    if i == 0 || i > pi.len() + 1 {
        return domain(format!("rho index {i} out of range 1..={}", pi.len() + 1));
    }
    let mut blocks = pi.shifted();
    if i == 1 {
        blocks.push(vec![1]);
    } else {
        blocks[i - 2].push(1);
    }
    SetPartition::new(pi.n() + 1, blocks)
}

/// Inverse of [`rho`].
pub fn chi(theta: &SetPartition) -> Result<(SetPartition, usize)> {
    if theta.n() == 0 {
        return domain("chi needs a partition of a nonempty set");
    }
    let j = theta.blocks().iter().position(|b| b.contains(&1)).expect("1 is covered");
    let mut blocks: Vec<Vec<usize>> = theta.blocks().to_vec();
    let i = if blocks[j].len() >= 2 {
        blocks[j].retain(|&x| x != 1);
        j + 2
    } else {
        blocks.remove(j);
        1
    };
    let blocks = blocks.into_iter().map(|b| b.into_iter().map(|x| x - 1).collect()).collect();
    Ok((SetPartition::new(theta.n() - 1, blocks)?, i))
}
