use std::fmt;

use itertools::Itertools;

use super::Multiset;
use crate::error::{domain, Result};

/// An element of Sₙ. `images[k-1]` is σ(k); values are 1-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// Validates that `images` is a bijection on `{1..n}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return domain(format!("{images:?} is not a permutation of 1..{n}"));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition `(i j)` in Sₙ.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return domain(format!("transposition ({i} {j}) out of range for S{n}"));
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, j - 1);
        Ok(Permutation { images })
    }

    /// All of Sₙ in lexicographic order of image sequences.
    pub fn all(n: usize) -> Vec<Self> {
        (1..=n).permutations(n).map(|images| Permutation { images }).collect()
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// σ(k) for 1-based `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Diagrammatic composite: `(σ;τ)(k) = τ(σ(k))`.
    pub fn then(&self, tau: &Permutation) -> Result<Self> {
        if self.degree() != tau.degree() {
            return domain(format!("cannot compose permutations of degrees {} and {}", self.degree(), tau.degree()));
        }
        Ok(Permutation { images: self.images.iter().map(|&v| tau.apply(v)).collect() })
    }

    /// Applicative composite: `(σ∘τ)(k) = σ(τ(k))`.
    pub fn circ(&self, tau: &Permutation) -> Result<Self> {
        tau.then(self)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v - 1] = k + 1;
        }
        Permutation { images }
    }

    /// Block sum: σ on the first n slots, τ shifted onto the last p.
    pub fn tensor(&self, tau: &Permutation) -> Self {
        let n = self.degree();
        let mut images = self.images.clone();
        images.extend(tau.images.iter().map(|&v| v + n));
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// γ_{n,p} ∈ S_{n+p}: moves the first block of n slots past the last p.
pub fn gamma_block(n: usize, p: usize) -> Permutation {
    let images = (1..=n + p).map(|k| if k <= n { k + p } else { k - n }).collect();
    Permutation { images }
}

/// The (k, n−k)-unshuffles: σ ∈ Sₙ with σ⁻¹ increasing on `{1..k}` and on
/// `{k+1..n}`. Built directly from the k-subset `σ⁻¹({1..k})`.
pub fn unshuffles(n: usize, k: usize) -> Result<Vec<Permutation>> {
    if k > n {
        return domain(format!("unshuffles({n},{k}) requires k <= n"));
    }
    let mut out = Vec::new();
    for front in (1..=n).combinations(k) {
        let back = (1..=n).filter(|i| !front.contains(i));
        let inv: Vec<usize> = front.iter().copied().chain(back).collect();
        out.push(Permutation { images: inv }.inverse());
    }
    out.sort();
    Ok(out)
}

/// `unsh(n,k)`, the formal sum of all (k, n−k)-unshuffles.
pub fn unsh(n: usize, k: usize) -> Result<FormalPermSum> {
    let terms = unshuffles(n, k)?;
    Ok(FormalPermSum { degree: n, terms: terms.into_iter().collect() })
}

/// The two families whose disjoint union is `Unsh(n+1, k+1)`, for
/// `n ≥ 1` and `k < n`: `a ⊗ 1` for `a ∈ Unsh(n, k+1)` and
/// `b ⊗ 1;1_k ⊗ γ_{n−k,1}` for `b ∈ Unsh(n, k)`.
pub fn unshuffle_split(n: usize, k: usize) -> Result<(Vec<Permutation>, Vec<Permutation>)> {
    if n == 0 || k >= n {
        return domain(format!("unshuffle_split({n},{k}) needs n >= 1 and k < n"));
    }
    let one = Permutation::identity(1);
    let swap = Permutation::identity(k).tensor(&gamma_block(n - k, 1));
    let left = unshuffles(n, k + 1)?.into_iter().map(|a| a.tensor(&one)).collect();
    let right = unshuffles(n, k)?.into_iter().map(|b| b.tensor(&one).then(&swap)).collect::<Result<_>>()?;
    Ok((left, right))
}

/// Right side of the recursion
/// `unsh(n+1,k+1) = unsh(n,k+1) ⊗ 1 + unsh(n,k) ⊗ 1;1_k ⊗ γ_{n−k,1}`.
pub fn unsh_recursion(n: usize, k: usize) -> Result<FormalPermSum> {
    if n == 0 || k >= n {
        return domain(format!("unsh_recursion({n},{k}) needs n >= 1 and k < n"));
    }
    let one = Permutation::identity(1);
    let swap = FormalPermSum::from_perm(Permutation::identity(k).tensor(&gamma_block(n - k, 1)));
    let left = unsh(n, k + 1)?.tensor_perm(&one);
    let right = unsh(n, k)?.tensor_perm(&one).then(&swap)?;
    left.add(&right)
}

/// An element of the rig ℕ[Sₙ]: a formal sum with multiplicities.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FormalPermSum {
    degree: usize,
    terms: Multiset<Permutation>,
}

impl FormalPermSum {
    pub fn zero(n: usize) -> Self {
        FormalPermSum { degree: n, terms: Multiset::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::from_perm(Permutation::identity(n))
    }

    pub fn from_perm(sigma: Permutation) -> Self {
        FormalPermSum { degree: sigma.degree(), terms: Multiset::singleton(sigma) }
    }

    pub fn from_terms(n: usize, terms: Vec<Permutation>) -> Result<Self> {
        if let Some(bad) = terms.iter().find(|t| t.degree() != n) {
            return domain(format!("term {bad} does not have degree {n}"));
        }
        Ok(FormalPermSum { degree: n, terms: terms.into_iter().collect() })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &Multiset<Permutation> {
        &self.terms
    }

    /// Number of terms counted with multiplicity.
    pub fn len(&self) -> usize {
        self.terms.cardinality()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_degree(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return domain(format!("formal sums of degrees {} and {} do not combine", self.degree, other.degree));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        Ok(FormalPermSum { degree: self.degree, terms: self.terms.sum(&other.terms) })
    }

    /// `(σ₁+⋯+σᵣ)(τ₁+⋯+τ_s) = Σ σᵢ∘τⱼ`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_degree(other)?;
        let mut terms = Multiset::new();
        for (s, a) in self.terms.iter() {
            for (t, b) in other.terms.iter() {
                terms.insert(s.circ(t)?, a * b);
            }
        }
        Ok(FormalPermSum { degree: self.degree, terms })
    }

    /// Diagrammatic composite `self;other`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        other.product(self)
    }

    /// Applies `σ ↦ σ ⊗ τ` to every term.
    pub fn tensor_perm(&self, tau: &Permutation) -> Self {
        FormalPermSum { degree: self.degree + tau.degree(), terms: self.terms.map(|s| s.tensor(tau)) }
    }
}

/// Index-level realization of σ̄: input slot k goes to output slot σ(k).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PositionMap {
    sigma: Permutation,
}

impl PositionMap {
    pub fn new(sigma: Permutation, n: usize) -> Result<Self> {
        if sigma.degree() != n {
            return domain(format!("permutation of degree {} cannot act on {n} slots", sigma.degree()));
        }
        Ok(PositionMap { sigma })
    }

    pub fn arity(&self) -> usize {
        self.sigma.degree()
    }

    pub fn permutation(&self) -> &Permutation {
        &self.sigma
    }

    /// Output slot of input slot `k` (1-based).
    pub fn output_slot(&self, k: usize) -> usize {
        self.sigma.apply(k)
    }

    /// Input slot read by output slot `j` (1-based).
    pub fn input_slot(&self, j: usize) -> usize {
        self.sigma.inverse().apply(j)
    }

    /// Rearranges `items` as σ̄ does: output j carries input σ⁻¹(j).
    pub fn apply<T: Clone>(&self, items: &[T]) -> Result<Vec<T>> {
        if items.len() != self.arity() {
            return domain(format!("position map of arity {} applied to {} slots", self.arity(), items.len()));
        }
        let inv = self.sigma.inverse();
        Ok((1..=items.len()).map(|j| items[inv.apply(j) - 1].clone()).collect())
    }

    pub fn then(&self, other: &PositionMap) -> Result<Self> {
        Ok(PositionMap { sigma: self.sigma.then(&other.sigma)? })
    }

    pub fn tensor(&self, other: &PositionMap) -> Self {
        PositionMap { sigma: self.sigma.tensor(&other.sigma) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_and_invert() {
        let s = Permutation::transposition(2, 1, 2).unwrap();
        assert!(s.then(&s).unwrap().is_identity());
        let a = Permutation::transposition(3, 1, 2).unwrap();
        let b = Permutation::transposition(3, 2, 3).unwrap();
        // table oracle: 1 -a-> 2 -b-> 3, 2 -> 1 -> 1, 3 -> 3 -> 2
        assert_eq!(a.then(&b).unwrap(), p(&[3, 1, 2]));
        assert!(a.then(&Permutation::identity(2)).is_err());
        assert!(Permutation::from_images(vec![1, 1]).is_err());
    }

    #[test]
    fn tensor_and_gamma() {
        let s = p(&[2, 1]);
        assert_eq!(s.tensor(&Permutation::identity(1)), p(&[2, 1, 3]));
        assert_eq!(Permutation::identity(0).tensor(&s), s);
        assert_eq!(s.tensor(&s), p(&[2, 1, 4, 3]));
        assert_eq!(gamma_block(1, 2), p(&[3, 1, 2]));
        for q in 0..5 {
            assert!(gamma_block(0, q).is_identity());
            for n in 0..5 {
                assert!(gamma_block(n, q).then(&gamma_block(q, n)).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn formal_sums() {
        let id = FormalPermSum::one(2);
        let sw = FormalPermSum::from_perm(p(&[2, 1]));
        let x = id.add(&sw).unwrap();
        let sq = x.product(&x).unwrap();
        assert_eq!(sq.terms().count(&Permutation::identity(2)), 2);
        assert_eq!(sq.terms().count(&p(&[2, 1])), 2);
        assert_eq!(sq.len(), 4);
        assert_eq!(x.product(&FormalPermSum::one(2)).unwrap(), x);
        assert!(x.product(&FormalPermSum::zero(2)).unwrap().is_empty());
        assert!(x.add(&FormalPermSum::one(3)).is_err());
    }

    fn brute_unshuffles(n: usize, k: usize) -> Vec<Permutation> {
        let mut v: Vec<_> = Permutation::all(n)
            .into_iter()
            .filter(|s| {
                let inv = s.inverse();
                let im = inv.images();
                im[..k].windows(2).all(|w| w[0] < w[1]) && im[k..].windows(2).all(|w| w[0] < w[1])
            })
            .collect();
        v.sort();
        v
    }

    #[test]
    fn unshuffle_examples() {
        assert_eq!(unshuffles(2, 1).unwrap().len(), 2);
        assert_eq!(unshuffles(5, 0).unwrap(), vec![Permutation::identity(5)]);
        assert_eq!(unshuffles(4, 2).unwrap(), brute_unshuffles(4, 2));
        assert_eq!(unshuffles(4, 2).unwrap().len(), 6);
        assert!(unshuffles(2, 3).is_err());
        for n in 0..=6 {
            for k in 0..=n {
                assert_eq!(unshuffles(n, k).unwrap(), brute_unshuffles(n, k));
            }
        }
    }

    #[test]
    fn unshuffle_recursion() {
        for n in 1..=6 {
            for k in 0..n {
                assert_eq!(unsh(n + 1, k + 1).unwrap(), unsh_recursion(n, k).unwrap(), "n={n} k={k}");
                let (left, right) = unshuffle_split(n, k).unwrap();
                assert!(left.iter().all(|a| !right.contains(a)));
                let mut union: Vec<Permutation> = left.into_iter().chain(right).collect();
                union.sort();
                assert_eq!(union, unshuffles(n + 1, k + 1).unwrap());
            }
        }
        assert!(unsh_recursion(2, 2).is_err());
    }

    #[test]
    fn unshuffle_counts_are_binomial() {
        for n in 0..=7 {
            for k in 0..=n {
                let count = unshuffles(n, k).unwrap().len() as u128;
                assert_eq!(count, crate::combinatorics::binomial(n as u64, k as u64));
            }
        }
    }

    #[test]
    fn position_map_semantics() {
        let pm = PositionMap::new(p(&[2, 3, 1]), 3).unwrap();
        // input slot 1 lands in output slot 2
        assert_eq!(pm.apply(&['a', 'b', 'c']).unwrap(), vec!['c', 'a', 'b']);
        assert_eq!(pm.output_slot(1), 2);
        assert_eq!(pm.input_slot(1), 3);
        for n in 0..=4 {
            for s in Permutation::all(n) {
                for t in Permutation::all(n) {
                    let ps = PositionMap::new(s.clone(), n).unwrap();
                    let pt = PositionMap::new(t.clone(), n).unwrap();
                    let items: Vec<usize> = (0..n).collect();
                    let seq = pt.apply(&ps.apply(&items).unwrap()).unwrap();
                    let joint = ps.then(&pt).unwrap().apply(&items).unwrap();
                    assert_eq!(seq, joint);
                }
            }
        }
        let s = PositionMap::new(p(&[2, 1]), 2).unwrap();
        let t = PositionMap::new(p(&[1, 3, 2]), 3).unwrap();
        let both = s.tensor(&t).apply(&[0, 1, 2, 3, 4]).unwrap();
        let mut blockwise = s.apply(&[0, 1]).unwrap();
        blockwise.extend(t.apply(&[2, 3, 4]).unwrap());
        assert_eq!(both, blockwise);
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|images| Permutation::from_images(images).unwrap())
    }

    fn arb_sum(n: usize) -> impl Strategy<Value = FormalPermSum> {
        prop::collection::vec(arb_perm(n), 0..4).prop_map(move |ts| FormalPermSum::from_terms(n, ts).unwrap())
    }

    proptest! {
        #[test]
        fn group_laws(s in arb_perm(5), t in arb_perm(5)) {
            prop_assert!(s.then(&s.inverse()).unwrap().is_identity());
            let st = s.then(&t).unwrap();
            prop_assert_eq!(st.inverse(), t.inverse().then(&s.inverse()).unwrap());
        }

        #[test]
        fn rig_laws(a in arb_sum(3), b in arb_sum(3), c in arb_sum(3)) {
            let ab_c = a.product(&b).unwrap().product(&c).unwrap();
            let a_bc = a.product(&b.product(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let left = a.product(&b.add(&c).unwrap()).unwrap();
            let right = a.product(&b).unwrap().add(&a.product(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let left = a.add(&b).unwrap().product(&c).unwrap();
            let right = a.product(&c).unwrap().add(&b.product(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(a.product(&FormalPermSum::one(3)).unwrap(), a.clone());
            prop_assert_eq!(FormalPermSum::one(3).product(&a).unwrap(), a.clone());
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        }
    }
}
