use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{domain, Result};

/// A finitely supported count map. Zero counts are never stored, so
/// structural equality is multiset equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Multiset<T: Ord> {
    counts: BTreeMap<T, usize>,
}

impl<T: Ord> Default for Multiset<T> {
    fn default() -> Self {
        Multiset { counts: BTreeMap::new() }
    }
}

impl<T: Ord + Clone> Multiset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(x: T) -> Self {
        let mut m = Self::new();
        m.insert(x, 1);
        m
    }

    /// Builds a multiset from `(label, count)` pairs; counts for repeated
    /// labels accumulate and zero counts are dropped.
    pub fn from_counts<I: IntoIterator<Item = (T, usize)>>(pairs: I) -> Self {
        let mut m = Self::new();
        for (x, n) in pairs {
            m.insert(x, n);
        }
        m
    }

    pub fn count(&self, x: &T) -> usize {
        self.counts.get(x).copied().unwrap_or(0)
    }

    /// `|M|`, the sum of all counts.
    pub fn cardinality(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Number of distinct labels.
    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    pub fn insert(&mut self, x: T, n: usize) {
        if n > 0 {
            *self.counts.entry(x).or_insert(0) += n;
        }
    }

    /// Removes one copy of `x`; returns false if `x` was absent.
    pub fn remove_one(&mut self, x: &T) -> bool {
        match self.counts.get_mut(x) {
            Some(c) if *c > 1 => {
                *c -= 1;
                true
            }
            Some(_) => {
                self.counts.remove(x);
                true
            }
            None => false,
        }
    }

    /// `M + N`.
    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, &n) in &other.counts {
            out.insert(x.clone(), n);
        }
        out
    }

    /// `self ≤ other` pointwise.
    pub fn is_sub(&self, other: &Self) -> bool {
        self.counts.iter().all(|(x, &n)| other.count(x) >= n)
    }

    /// `self − alpha`, defined when `alpha ≤ self`.
    pub fn difference(&self, alpha: &Self) -> Result<Self> {
        if !alpha.is_sub(self) {
            return domain("multiset difference requires alpha <= beta");
        }
        let mut out = self.clone();
        for (x, &n) in &alpha.counts {
            let c = out.counts.get_mut(x).expect("checked above");
            *c -= n;
            if *c == 0 {
                out.counts.remove(x);
            }
        }
        Ok(out)
    }

    /// Distinct labels with their counts, in label order.
    pub fn iter(&self) -> impl Iterator<Item = (&T, usize)> + '_ {
        self.counts.iter().map(|(x, &n)| (x, n))
    }

    /// All labels with repetition, in label order.
    pub fn elements(&self) -> impl Iterator<Item = &T> + '_ {
        self.counts.iter().flat_map(|(x, &n)| std::iter::repeat_n(x, n))
    }

    pub fn map<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> U) -> Multiset<U> {
        Multiset::from_counts(self.counts.iter().map(|(x, &n)| (f(x), n)))
    }

    /// Every `beta ≤ self` with `|beta| = k`, in a deterministic order.
    pub fn sub_multisets(&self, k: usize) -> Vec<Self> {
        let items: Vec<(&T, usize)> = self.iter().collect();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        sub_rec(&items, 0, k, &mut cur, &mut out);
        out
    }
}

fn sub_rec<T: Ord + Clone>(
    items: &[(&T, usize)],
    i: usize,
    left: usize,
    cur: &mut Vec<(T, usize)>,
    out: &mut Vec<Multiset<T>>,
) {
    if left == 0 {
        out.push(Multiset::from_counts(cur.iter().cloned()));
        return;
    }
    if i == items.len() {
        return;
    }
    let (x, n) = items[i];
    for take in (0..=n.min(left)).rev() {
        cur.push((x.clone(), take));
        sub_rec(items, i + 1, left - take, cur, out);
        cur.pop();
    }
}

impl<T: Ord + Clone> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Multiset::from_counts(iter.into_iter().map(|x| (x, 1)))
    }
}

impl<T: Ord + fmt::Display> fmt::Display for Multiset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut first = true;
        for (x, &n) in &self.counts {
            for _ in 0..n {
                if !first {
                    write!(f, ",")?;
                }
                first = false;
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for Multiset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.counts.iter()).finish()
    }
}

/// `ΣN`: the pointwise sum of a multiset of multisets.
pub fn msum<T: Ord + Clone>(n: &Multiset<Multiset<T>>) -> Multiset<T> {
    let mut out = Multiset::new();
    for (m, k) in n.iter() {
        for (x, c) in m.iter() {
            out.insert(x.clone(), c * k);
        }
    }
    out
}

/// `α! = ∏ α(i)!`.
pub fn mfact<T: Ord + Clone>(alpha: &Multiset<T>) -> BigUint {
    let mut acc = BigUint::one();
    for (_, n) in alpha.iter() {
        for j in 2..=n {
            acc *= BigUint::from(j);
        }
    }
    acc
}

/// The falling factorial `β^{α̲} = ∏ β(i)(β(i)−1)⋯(β(i)−α(i)+1)`.
pub fn falling<T: Ord + Clone>(beta: &Multiset<T>, alpha: &Multiset<T>) -> Result<BigUint> {
    if !alpha.is_sub(beta) {
        return domain("falling factorial requires alpha <= beta");
    }
    let mut acc = BigUint::one();
    for (x, a) in alpha.iter() {
        let b = beta.count(x);
        for j in 0..a {
            acc *= BigUint::from(b - j);
        }
    }
    Ok(acc)
}
