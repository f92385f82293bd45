use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{msum, Multiset};
use crate::error::{domain, Error, Result};
use crate::fragment::{generic_row, Evaluator, Gen, ModelFragment, Obj, Orientation, Sample, SparseVec, Term};
use crate::linalg::{kernel_basis, Elem, GradedMatrix, ScalarDomain};
use crate::rel_model::enumerate_basis;

use super::kernel::monomial_kernel_predicate;
use super::polynomial::Monomial;

/// The symmetric-algebra structure at the base space, as matrices in the
/// direction of linear maps (rows over the codomain).
#[derive(Clone, Debug)]
pub struct PolyStructure {
    /// `SSE → SE`, `[M₁,…,M_k] ↦ e_{M₁+…+M_k}`.
    pub m: GradedMatrix,
    /// `E → SE`, `eᵢ ↦ e_{[i]}`.
    pub u: GradedMatrix,
    /// `SE ⊗ SE → SE`, `e_M ⊗ e_N ↦ e_{M+N}`.
    pub nabla: GradedMatrix,
    /// `k → SE`, `1 ↦ e_{[]}`.
    pub eta: GradedMatrix,
    /// `SE → SE ⊗ E`, `e_M ↦ Σᵢ M(i)·e_{M−[i]} ⊗ eᵢ`.
    pub d: GradedMatrix,
}

/// The symmetric algebra on `v` variables over a field, truncated at
/// degree `D`. Morphisms of the modelled category run against the linear
/// maps, so each structure map is stored as a linear map and read
/// transposed.
pub struct PolyFragment {
    vars: u32,
    field: ScalarDomain,
    bound: usize,
    structure: PolyStructure,
    pull: PolyStructure,
    samples: Vec<Arc<Sample>>,
}

/// Default seed for the random naturality samples.
pub const SAMPLE_SEED: u64 = 0x5eed;
const SAMPLE_SPACE_MAX: u32 = 2;
const SAMPLES_PER_SHAPE: usize = 3;

impl PolyFragment {
    pub fn new(vars: u32, field: ScalarDomain, bound: usize) -> Result<Self> {
        PolyFragment::with_seed(vars, field, bound, SAMPLE_SEED)
    }

    pub fn with_seed(vars: u32, field: ScalarDomain, bound: usize, seed: u64) -> Result<Self> {
        if !field.is_field() {
            return Err(Error::UnsupportedDomain("the polynomial model needs a field".into()));
        }
        if vars > 26 {
            return domain(format!("{vars} variables is more than supported"));
        }
        let structure = build_structure(vars, field, bound)?;
        let pull = PolyStructure {
            m: structure.m.transpose(),
            u: structure.u.transpose(),
            nabla: structure.nabla.transpose(),
            eta: structure.eta.transpose(),
            d: structure.d.transpose(),
        };
        let samples = random_samples(field, vars.min(SAMPLE_SPACE_MAX), seed)?;
        Ok(PolyFragment { vars, field, bound, structure, pull, samples })
    }

    pub fn vars(&self) -> u32 {
        self.vars
    }

    pub fn field(&self) -> ScalarDomain {
        self.field
    }

    pub fn structure(&self) -> &PolyStructure {
        &self.structure
    }

    /// Monomials of degree at most `D`.
    pub fn monomials(&self) -> Result<Vec<Monomial>> {
        let basis = enumerate_basis(&Obj::bang(Obj::base(self.vars)), self.bound)?;
        basis
            .iter()
            .map(|e| Monomial::from_elem(e).ok_or_else(|| Error::Internal(format!("{e} is not a monomial"))))
            .collect()
    }
}

/// Adapts the polynomial fragment to the engine's interface.
pub fn fragment_as_model(frag: &PolyFragment) -> &dyn ModelFragment {
    frag
}

/// Builds `m, u, ∇, η, ∂` on the truncated monomial bases from their
/// defining formulas.
pub fn build_structure(vars: u32, field: ScalarDomain, bound: usize) -> Result<PolyStructure> {
    let a = Obj::base(vars);
    let sa = Obj::bang(a.clone());
    let basis = |o: &Obj| enumerate_basis(o, bound);
    let bag = |e: &Elem| e.as_bag().cloned().unwrap_or_default();
    let indicator = |b: bool| if b { field.one() } else { field.zero() };

    let m = GradedMatrix::from_fn(field, basis(&Obj::bang(sa.clone()))?, basis(&sa)?, |out, n| {
        let inner: Multiset<Multiset<Elem>> = Multiset::from_counts(bag(n).iter().map(|(x, k)| (bag(x), k)));
        indicator(msum(&inner) == bag(out))
    });
    let u = GradedMatrix::from_fn(field, basis(&a)?, basis(&sa)?, |out, x| indicator(*out == Elem::bag([x.clone()])));
    let pair = Obj::tensor(vec![sa.clone(), sa.clone()]);
    let nabla = GradedMatrix::from_fn(field, basis(&pair)?, basis(&sa)?, |out, mn| {
        let s = mn.slots();
        indicator(bag(&s[0]).sum(&bag(&s[1])) == bag(out))
    });
    let eta = GradedMatrix::from_fn(field, basis(&Obj::Unit)?, basis(&sa)?, |out, _| indicator(bag(out).is_empty()));
    let d = GradedMatrix::from_fn(field, basis(&sa)?, basis(&Obj::tensor(vec![sa.clone(), a.clone()]))?, |nx, mm| {
        let s = nx.slots();
        let mut n = bag(&s[0]);
        n.insert(s[1].clone(), 1);
        if n == bag(mm) {
            field.from_u64(bag(mm).count(&s[1]) as u64)
        } else {
            field.zero()
        }
    });
    Ok(PolyStructure { m, u, nabla, eta, d })
}

fn random_samples(field: ScalarDomain, k: u32, seed: u64) -> Result<Vec<Arc<Sample>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for a in 1..=k {
        for b in 1..=k {
            for i in 0..SAMPLES_PER_SHAPE {
                let mut rows: BTreeMap<Elem, SparseVec> = BTreeMap::new();
                for y in 0..b {
                    let mut row = SparseVec::new();
                    for x in 0..a {
                        let c = field.from_i64(rng.gen_range(-2..=2))?;
                        if !field.is_zero(&c) {
                            row.insert(Elem::Atom(x), c);
                        }
                    }
                    if !row.is_empty() {
                        rows.insert(Elem::Atom(y), row);
                    }
                }
                out.push(Arc::new(Sample { name: format!("L{a}{b}#{i}"), dom: Obj::base(a), cod: Obj::base(b), rows }));
            }
        }
    }
    Ok(out)
}

impl ModelFragment for PolyFragment {
    fn name(&self) -> &str {
        "poly"
    }

    fn scalars(&self) -> ScalarDomain {
        self.field
    }

    fn orientation(&self) -> Orientation {
        Orientation::Opposite
    }

    fn base(&self) -> Obj {
        Obj::base(self.vars)
    }

    fn bound(&self) -> usize {
        self.bound
    }

    fn row(&self, g: Gen, at: &Obj, c: &Elem) -> Result<SparseVec> {
        if *at == Obj::base(self.vars) {
            let stored = match g {
                Gen::M => Some(&self.pull.m),
                Gen::U => Some(&self.pull.u),
                Gen::Delta => Some(&self.pull.nabla),
                Gen::Eps => Some(&self.pull.eta),
                Gen::D => Some(&self.pull.d),
                Gen::Dn(_) => None,
            };
            if let Some(mat) = stored {
                if let Some(r) = mat.codomain().index_of(c) {
                    return Ok(mat.row_support(r).into_iter().map(|(k, s)| (mat.domain().get(k).clone(), s)).collect());
                }
            }
        }
        generic_row(self.field, g, c)
    }

    fn samples(&self) -> Vec<Arc<Sample>> {
        self.samples.clone()
    }

    /// Kernel of the linear map `∂^{n+1}: SE → SE ⊗ E^{n+1}` by Gaussian
    /// elimination. Fails if the kernel is not spanned by monomials.
    fn dense_kept(&self, n: usize) -> Result<Vec<Elem>> {
        let ev = Evaluator::new(self);
        let linear = ev.materialize(&Term::gen(Gen::Dn(n + 1), &self.base()))?.transpose();
        let monomials = linear.domain().clone();
        let mut kept = Vec::new();
        for v in kernel_basis(&linear)? {
            let support: Vec<usize> = (0..v.len()).filter(|&i| !self.field.is_zero(&v[i])).collect();
            match support.as_slice() {
                [i] => kept.push(monomials.get(*i).clone()),
                _ => return Err(Error::Internal(format!("kernel of d^{} is not spanned by monomials", n + 1))),
            }
        }
        kept.sort_by_key(|e| monomials.index_of(e));
        Ok(kept)
    }

    fn expected_kept(&self, n: usize, c: &Elem) -> bool {
        Monomial::from_elem(c).is_some_and(|m| monomial_kernel_predicate(&m, n, self.field))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fragment::ExtGen;

    const Q: ScalarDomain = ScalarDomain::Rational;

    fn e(i: u32) -> Elem {
        Elem::Atom(i)
    }

    #[test]
    fn structure_examples() {
        let s = build_structure(2, Q, 3).unwrap();
        let ii = Elem::bag([e(0), e(0)]);
        let out = Elem::Tuple(vec![Elem::bag([e(0)]), e(0)]);
        assert_eq!(s.d.entry(&out, &ii), Q.from_u64(2));
        let f2 = ScalarDomain::PrimeField(2);
        let s2 = build_structure(2, f2, 3).unwrap();
        assert!(f2.is_zero(&s2.d.entry(&out, &ii)));

        let nested = Elem::bag([Elem::bag([e(0)]), Elem::bag([e(1)])]);
        assert_eq!(s.m.entry(&Elem::bag([e(0), e(1)]), &nested), Q.one());
        assert_eq!(s.u.entry(&Elem::bag([e(1)]), &e(1)), Q.one());
        assert_eq!(s.eta.entry(&Elem::empty_bag(), &Elem::Unit), Q.one());
        for mat in [&s.m, &s.u, &s.nabla, &s.eta, &s.d] {
            assert!(mat.is_degree_preserving());
        }
    }

    #[test]
    fn unit_law_of_multiplication() {
        let s = build_structure(2, Q, 3).unwrap();
        for m in s.nabla.codomain().iter() {
            let left = Elem::Tuple(vec![Elem::empty_bag(), m.clone()]);
            let right = Elem::Tuple(vec![m.clone(), Elem::empty_bag()]);
            assert_eq!(s.nabla.entry(m, &left), Q.one());
            assert_eq!(s.nabla.entry(m, &right), Q.one());
        }
    }

    #[test]
    fn monad_laws() {
        for vars in 1..=2 {
            for bound in 0..=4 {
                let frag = PolyFragment::new(vars, Q, bound).unwrap();
                let ev = Evaluator::new(&frag);
                let a = frag.base();
                let ba = Obj::bang(a.clone());
                let m = |o: &Obj| Term::gen(Gen::M, o);
                let assoc_l = Term::seq(vec![m(&a), m(&ba)]);
                let assoc_r = Term::seq(vec![m(&a), Term::bang(m(&a))]);
                assert!(ev.compare(&assoc_l, &assoc_r).unwrap().mismatch.is_none());
                let unit_l = Term::seq(vec![m(&a), Term::gen(Gen::U, &ba)]);
                let unit_r = Term::seq(vec![m(&a), Term::bang(Term::gen(Gen::U, &a))]);
                assert!(ev.compare(&unit_l, &Term::id(ba.clone())).unwrap().mismatch.is_none());
                assert!(ev.compare(&unit_r, &Term::id(ba.clone())).unwrap().mismatch.is_none());
            }
        }
    }

    #[test]
    fn stored_rows_match_the_formulas() {
        let f3 = ScalarDomain::PrimeField(3);
        let frag = PolyFragment::new(2, f3, 4).unwrap();
        let a = frag.base();
        for g in [Gen::M, Gen::Delta, Gen::D, Gen::U, Gen::Eps] {
            let (_, cod) = Term::gen(g, &a).typ().unwrap();
            let ev = Evaluator::new(&frag);
            for c in ev.basis(&cod).unwrap().iter() {
                assert_eq!(frag.row(g, &a, c).unwrap(), generic_row(f3, g, c).unwrap(), "{g} at {c}");
            }
        }
    }

    #[test]
    fn dense_kernel_in_characteristic_three() {
        let f3 = ScalarDomain::PrimeField(3);
        let frag = PolyFragment::new(1, f3, 7).unwrap();
        let kept: Vec<String> =
            frag.dense_kept(0).unwrap().iter().map(|e| Monomial::from_elem(e).unwrap().render(1)).collect();
        assert_eq!(kept, ["1", "x^3", "x^6"]);
    }

    #[test]
    fn linear_rule_holds() {
        let frag = PolyFragment::new(2, Q, 3).unwrap();
        let ev = Evaluator::new(&frag);
        let a = frag.base();
        let lhs = Term::seq(vec![Term::ext(ExtGen::D(0), &a), Term::ext(ExtGen::U, &a)]);
        let rhs = Term::tensor(vec![Term::ext(ExtGen::Eps, &a), Term::id(a.clone())]);
        let cmp = ev.compare(&lhs, &rhs).unwrap();
        assert!(cmp.mismatch.is_none());
        assert!(cmp.rows > 0);
    }

    #[test]
    fn samples_are_reproducible() {
        let a = PolyFragment::new(2, Q, 2).unwrap().samples();
        let b = PolyFragment::new(2, Q, 2).unwrap().samples();
        assert_eq!(a.len(), 12);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.rows, y.rows);
        }
        assert!(PolyFragment::new(1, ScalarDomain::Boolean, 2).is_err());
    }
}
