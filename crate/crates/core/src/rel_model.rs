//! The multiset modality on finite relations, truncated by degree.
//!
//! `!X` is the set of finite multisets over `X`. The structure relations are
//! `m = {(M,N) | M = ΣN}`, `u = {([x],x)}`, `Δ = {(M,(N,P)) | M = N+P}`,
//! `ε = {([],*)}` and `∂ = {((M,x), M+[x])}`. All of them relate elements of
//! equal degree, so restricting to degree at most `D` is exact.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::combinatorics::Multiset;
use crate::error::{domain, Error, Result};
use crate::fragment::{Evaluator, ExtGen, Gen, ModelFragment, Obj, Orientation, Sample, SparseVec, Term};
use crate::linalg::{bool_cokernel, factor_through, Elem, GradedMatrix, OrderedBasis, Scalar, ScalarDomain};

/// One of the stored structure relations at the base object.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureMap {
    M,
    U,
    Delta,
    Eps,
    D,
}

impl StructureMap {
    pub const ALL: [StructureMap; 5] =
        [StructureMap::M, StructureMap::U, StructureMap::Delta, StructureMap::Eps, StructureMap::D];

    /// The generator this stored matrix realizes.
    pub fn gen(self) -> Gen {
        match self {
            StructureMap::M => Gen::M,
            StructureMap::U => Gen::U,
            StructureMap::Delta => Gen::Delta,
            StructureMap::Eps => Gen::Eps,
            StructureMap::D => Gen::D,
        }
    }
}

/// The structure relations at the base object, as Boolean matrices on the
/// truncated bases (rows over the codomain).
#[derive(Clone, Debug)]
pub struct Structure {
    pub m: GradedMatrix,
    pub u: GradedMatrix,
    pub delta: GradedMatrix,
    pub eps: GradedMatrix,
    pub d: GradedMatrix,
}

impl Structure {
    pub fn get(&self, which: StructureMap) -> &GradedMatrix {
        match which {
            StructureMap::M => &self.m,
            StructureMap::U => &self.u,
            StructureMap::Delta => &self.delta,
            StructureMap::Eps => &self.eps,
            StructureMap::D => &self.d,
        }
    }

    fn get_mut(&mut self, which: StructureMap) -> &mut GradedMatrix {
        match which {
            StructureMap::M => &mut self.m,
            StructureMap::U => &mut self.u,
            StructureMap::Delta => &mut self.delta,
            StructureMap::Eps => &mut self.eps,
            StructureMap::D => &mut self.d,
        }
    }
}

/// A single flipped entry of a stored structure relation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Mutation {
    pub map: StructureMap,
    pub row: usize,
    pub col: usize,
}

/// The multiset modality on the base set `{a, b, …}` of the given size,
/// truncated at degree `D`.
pub struct RelFragment {
    size: u32,
    bound: usize,
    structure: Structure,
    samples: Vec<Arc<Sample>>,
}

/// Sizes of the sets between which naturality samples are drawn.
const SAMPLE_SET_MAX: u32 = 2;

impl RelFragment {
    pub fn new(size: u32, bound: usize) -> Result<Self> {
        if size > 26 {
            return domain(format!("base size {size} is larger than supported"));
        }
        let mut frag = RelFragment {
            size,
            bound,
            structure: Structure {
                m: GradedMatrix::zero(ScalarDomain::Boolean, OrderedBasis::empty(), OrderedBasis::empty()),
                u: GradedMatrix::zero(ScalarDomain::Boolean, OrderedBasis::empty(), OrderedBasis::empty()),
                delta: GradedMatrix::zero(ScalarDomain::Boolean, OrderedBasis::empty(), OrderedBasis::empty()),
                eps: GradedMatrix::zero(ScalarDomain::Boolean, OrderedBasis::empty(), OrderedBasis::empty()),
                d: GradedMatrix::zero(ScalarDomain::Boolean, OrderedBasis::empty(), OrderedBasis::empty()),
            },
            samples: Vec::new(),
        };
        frag.structure = frag.build_structure()?;
        frag.samples = all_relations(size.min(SAMPLE_SET_MAX));
        Ok(frag)
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// Builds `m, u, Δ, ε, ∂` from their defining relations on the
    /// truncated bases.
    pub fn build_structure(&self) -> Result<Structure> {
        let b = ScalarDomain::Boolean;
        let a = Obj::base(self.size);
        let ba = Obj::bang(a.clone());
        let basis = |o: &Obj| enumerate_basis(o, self.bound);
        let rel = |dom: &Obj, cod: &Obj, p: &dyn Fn(&Elem, &Elem) -> bool| -> Result<GradedMatrix> {
            Ok(GradedMatrix::from_fn(b, basis(dom)?, basis(cod)?, |c, d| Scalar::Bool(p(c, d))))
        };
        let bag = |e: &Elem| e.as_bag().cloned().unwrap_or_default();
        let m = rel(&ba, &Obj::bang(ba.clone()), &|n, m| {
            let outer = bag(n);
            let inner: Multiset<Multiset<Elem>> = Multiset::from_counts(outer.iter().map(|(x, k)| (bag(x), k)));
            crate::combinatorics::msum(&inner) == bag(m)
        })?;
        let u = rel(&ba, &a, &|x, m| *m == Elem::bag([x.clone()]))?;
        let delta = rel(&ba, &Obj::tensor(vec![ba.clone(), ba.clone()]), &|np, m| {
            let s = np.slots();
            bag(&s[0]).sum(&bag(&s[1])) == bag(m)
        })?;
        let eps = rel(&ba, &Obj::Unit, &|_, m| bag(m).is_empty())?;
        let d = rel(&Obj::tensor(vec![ba.clone(), a.clone()]), &ba, &|m, nx| {
            let s = nx.slots();
            let mut n = bag(&s[0]);
            n.insert(s[1].clone(), 1);
            n == bag(m)
        })?;
        Ok(Structure { m, u, delta, eps, d })
    }

    /// The action of the multiset functor on a relation `r: X → Y` between
    /// base sets, computed by searching for transport matrices: `M` and `N`
    /// are related iff some natural matrix supported in `r` has row sums
    /// `M` and column sums `N`.
    pub fn multiset_functor(&self, r: &GradedMatrix) -> Result<GradedMatrix> {
        if r.scalars() != ScalarDomain::Boolean {
            return Err(Error::UnsupportedDomain("the multiset functor acts on relations".into()));
        }
        let xs = r.domain().clone();
        let ys = r.codomain().clone();
        let (Some(bx), Some(by)) = (atoms_bang(&xs, self.bound), atoms_bang(&ys, self.bound)) else {
            return domain("the multiset functor needs bases of atoms");
        };
        let allowed: Vec<Vec<bool>> =
            (0..xs.len()).map(|i| (0..ys.len()).map(|j| r.get(j, i) == &Scalar::Bool(true)).collect()).collect();
        Ok(GradedMatrix::from_fn(ScalarDomain::Boolean, bx, by, |n, m| {
            let rows: Vec<usize> = xs.iter().map(|x| m.as_bag().map_or(0, |b| b.count(x))).collect();
            let mut cols: Vec<usize> = ys.iter().map(|y| n.as_bag().map_or(0, |b| b.count(y))).collect();
            Scalar::Bool(
                rows.iter().sum::<usize>() == cols.iter().sum::<usize>() && transport(&allowed, &rows, 0, &mut cols),
            )
        }))
    }

    /// `∂ⁿ` by its closed form `{((M,(x₁…xₙ)), M+[x₁…xₙ])}`, after checking
    /// that it agrees with the inductive definition on the fragment.
    pub fn dn(&self, n: usize) -> Result<GradedMatrix> {
        let ev = Evaluator::new(self);
        let a = Obj::base(self.size);
        let closed = ev.materialize(&Term::gen(Gen::Dn(n), &a))?;
        let inductive = ev.materialize(&Term::d_pow(n, &a))?;
        if let Some((r, c)) = closed.first_difference(&inductive.rebase(closed.domain(), closed.codomain())) {
            return Err(Error::Internal(format!(
                "closed and inductive d^{n} differ at ({}, {})",
                closed.domain().get(c),
                closed.codomain().get(r)
            )));
        }
        Ok(closed)
    }

    /// The cokernel of `∂^{n+1}` on the fragment together with the
    /// extracted maps of grade `n`.
    pub fn extract(&self, n: usize) -> Result<Extraction> {
        if self.bound < n {
            return domain(format!("extraction at {n} needs a degree bound of at least {n}"));
        }
        let ev = Evaluator::new(self);
        let a = Obj::base(self.size);
        let dn1 = self.dn(n + 1)?;
        let (selector, kept) = bool_cokernel(&dn1)?;
        let lazy = ev.basis(&Obj::bang_leq(n, a.clone()))?;
        if kept.elems() != lazy.as_slice() {
            return Err(Error::Internal(format!("cokernel of d^{} disagrees with the lazy extraction", n + 1)));
        }
        let s = ev.materialize(&Term::ext(ExtGen::S(n), &a))?;
        if s.first_difference(&selector.rebase(s.domain(), s.codomain())).is_some() {
            return Err(Error::Internal(format!("s_{n} is not the cokernel selector")));
        }
        let eps = if n == 0 { Some(ev.materialize(&Term::ext(ExtGen::Eps, &a))?) } else { None };
        let u = if n == 1 { Some(ev.materialize(&Term::ext(ExtGen::U, &a))?) } else { None };
        let d = ev.materialize(&Term::ext(ExtGen::D(n), &a))?;
        Ok(Extraction { n, selector, kept, eps, u, d })
    }

    /// `t_{n,p}`, the factorization of `s_p` through `s_n`.
    pub fn t_matrix(&self, n: usize, p: usize) -> Result<GradedMatrix> {
        if n < p {
            return domain(format!("t_{{{n},{p}}} needs {n} >= {p}"));
        }
        let (sn, _) = bool_cokernel(&self.dn(n + 1)?)?;
        let (sp, _) = bool_cokernel(&self.dn(p + 1)?)?;
        factor_through(&sn, &sp)
    }

    /// Every single-entry flip of the stored `m`, `Δ` and `∂`.
    pub fn mutation_space(&self) -> Vec<Mutation> {
        let mut out = Vec::new();
        for map in [StructureMap::M, StructureMap::Delta, StructureMap::D] {
            let mat = self.structure.get(map);
            for row in 0..mat.rows() {
                for col in 0..mat.cols() {
                    out.push(Mutation { map, row, col });
                }
            }
        }
        out
    }

    pub fn mutate(&mut self, mu: Mutation) -> Result<()> {
        let mat = self.structure.get_mut(mu.map);
        if mu.row >= mat.rows() || mu.col >= mat.cols() {
            return domain(format!("mutation {mu:?} is outside the matrix"));
        }
        let flipped = Scalar::Bool(mat.get(mu.row, mu.col) != &Scalar::Bool(true));
        mat.set(mu.row, mu.col, flipped);
        Ok(())
    }
}

/// The grade-`n` part of the extracted modality.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub n: usize,
    /// `s_n` as the partial identity onto the kept multisets.
    pub selector: GradedMatrix,
    pub kept: OrderedBasis,
    /// `ε^≤`, present for `n = 0`.
    pub eps: Option<GradedMatrix>,
    /// `u^≤`, present for `n = 1`.
    pub u: Option<GradedMatrix>,
    /// `∂^≤_n`.
    pub d: GradedMatrix,
}

/// All elements of `expr` of degree at most `d`, in canonical order.
pub fn enumerate_basis(expr: &Obj, d: usize) -> Result<OrderedBasis> {
    let frag = Bare { bound: d };
    let ev = Evaluator::new(&frag);
    OrderedBasis::new(ev.basis(expr)?.to_vec())
}

struct Bare {
    bound: usize,
}

impl ModelFragment for Bare {
    fn name(&self) -> &str {
        "rel"
    }
    fn scalars(&self) -> ScalarDomain {
        ScalarDomain::Boolean
    }
    fn orientation(&self) -> Orientation {
        Orientation::Direct
    }
    fn base(&self) -> Obj {
        Obj::base(0)
    }
    fn bound(&self) -> usize {
        self.bound
    }
    fn samples(&self) -> Vec<Arc<Sample>> {
        Vec::new()
    }
    fn dense_kept(&self, _n: usize) -> Result<Vec<Elem>> {
        Ok(Vec::new())
    }
    fn expected_kept(&self, n: usize, c: &Elem) -> bool {
        c.as_bag().is_some_and(|m| m.cardinality() <= n)
    }
}

impl ModelFragment for RelFragment {
    fn name(&self) -> &str {
        "rel"
    }

    fn scalars(&self) -> ScalarDomain {
        ScalarDomain::Boolean
    }

    fn orientation(&self) -> Orientation {
        Orientation::Direct
    }

    fn base(&self) -> Obj {
        Obj::base(self.size)
    }

    fn bound(&self) -> usize {
        self.bound
    }

    fn row(&self, g: Gen, at: &Obj, c: &Elem) -> Result<SparseVec> {
        if *at == Obj::base(self.size) {
            let stored = match g {
                Gen::M => Some(&self.structure.m),
                Gen::U => Some(&self.structure.u),
                Gen::Delta => Some(&self.structure.delta),
                Gen::Eps => Some(&self.structure.eps),
                Gen::D => Some(&self.structure.d),
                Gen::Dn(_) => None,
            };
            if let Some(mat) = stored {
                if let Some(r) = mat.codomain().index_of(c) {
                    return Ok(mat.row_support(r).into_iter().map(|(k, s)| (mat.domain().get(k).clone(), s)).collect());
                }
            }
        }
        crate::fragment::generic_row(ScalarDomain::Boolean, g, c)
    }

    fn samples(&self) -> Vec<Arc<Sample>> {
        self.samples.clone()
    }

    fn dense_kept(&self, n: usize) -> Result<Vec<Elem>> {
        let (_, kept) = bool_cokernel(&self.dn(n + 1)?)?;
        Ok(kept.elems().to_vec())
    }

    fn expected_kept(&self, n: usize, c: &Elem) -> bool {
        c.as_bag().is_some_and(|m| m.cardinality() <= n)
    }
}

fn atoms_bang(atoms: &OrderedBasis, bound: usize) -> Option<OrderedBasis> {
    let mut k = 0;
    for (i, e) in atoms.iter().enumerate() {
        if *e != Elem::Atom(i as u32) {
            return None;
        }
        k += 1;
    }
    enumerate_basis(&Obj::bang(Obj::base(k)), bound).ok()
}

fn transport(allowed: &[Vec<bool>], rows: &[usize], i: usize, cols: &mut [usize]) -> bool {
    if i == rows.len() {
        return cols.iter().all(|&c| c == 0);
    }
    distribute(allowed, rows, i, 0, rows[i], cols)
}

fn distribute(allowed: &[Vec<bool>], rows: &[usize], i: usize, j: usize, left: usize, cols: &mut [usize]) -> bool {
    if j == cols.len() {
        return left == 0 && transport(allowed, rows, i + 1, cols);
    }
    let cap = if allowed[i][j] { left.min(cols[j]) } else { 0 };
    for t in (0..=cap).rev() {
        cols[j] -= t;
        let ok = distribute(allowed, rows, i, j + 1, left - t, cols);
        cols[j] += t;
        if ok {
            return true;
        }
    }
    false
}

/// Every relation between base sets of sizes `1..=k`, as naturality samples.
fn all_relations(k: u32) -> Vec<Arc<Sample>> {
    let mut out = Vec::new();
    for a in 1..=k {
        for b in 1..=k {
            let cells = (a * b) as usize;
            for mask in 0u32..(1 << cells) {
                let mut rows: BTreeMap<Elem, SparseVec> = BTreeMap::new();
                for y in 0..b {
                    let mut row = SparseVec::new();
                    for x in 0..a {
                        if mask >> (y * a + x) & 1 == 1 {
                            row.insert(Elem::Atom(x), Scalar::Bool(true));
                        }
                    }
                    if !row.is_empty() {
                        rows.insert(Elem::Atom(y), row);
                    }
                }
                out.push(Arc::new(Sample {
                    name: format!("R{a}{b}#{mask}"),
                    dom: Obj::base(a),
                    cod: Obj::base(b),
                    rows,
                }));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Elem {
        Elem::Atom(0)
    }

    fn b() -> Elem {
        Elem::Atom(1)
    }

    /// Independent count of multisets of multisets over one atom with
    /// total content at most `d` and at most `d` members: each member is
    /// `[a^k]` and weighs `max(k, 1)`.
    fn nested_count(d: usize) -> usize {
        fn rec(k: usize, left: usize, d: usize) -> usize {
            if k > d {
                return 1;
            }
            let w = k.max(1);
            (0..=left / w).map(|c| rec(k + 1, left - c * w, d)).sum()
        }
        rec(0, d, d)
    }

    #[test]
    fn basis_examples() {
        let two = enumerate_basis(&Obj::base(2), 1).unwrap();
        assert_eq!(two.elems(), &[a(), b()]);
        let bang = enumerate_basis(&Obj::bang(Obj::base(1)), 2).unwrap();
        assert_eq!(bang.elems(), &[Elem::empty_bag(), Elem::bag([a()]), Elem::bag([a(), a()])]);
        for d in 0..=4 {
            let nested = enumerate_basis(&Obj::bang(Obj::bang(Obj::base(1))), d).unwrap();
            assert_eq!(nested.len(), nested_count(d), "D = {d}");
            assert!(nested.iter().all(|e| e.degree() <= d));
        }
        assert!(enumerate_basis(&Obj::base(3), 0).unwrap().is_empty());
        let empty = enumerate_basis(&Obj::bang(Obj::base(0)), 3).unwrap();
        assert_eq!(empty.elems(), &[Elem::empty_bag()]);
    }

    #[test]
    fn structure_examples() {
        let f = RelFragment::new(2, 3).unwrap();
        let s = f.structure();
        for m in [&s.m, &s.u, &s.delta, &s.eps, &s.d] {
            assert!(m.is_degree_preserving());
        }
        assert_eq!(s.u.nnz(), 2);
        assert_eq!(s.u.entry(&a(), &Elem::bag([a()])), Scalar::Bool(true));
        assert_eq!(s.eps.nnz(), 1);
        assert_eq!(s.eps.entry(&Elem::Unit, &Elem::empty_bag()), Scalar::Bool(true));
        let ab = Elem::bag([a(), b()]);
        let splits = (0..s.delta.rows())
            .filter(|&r| s.delta.entry(s.delta.codomain().get(r), &ab) == Scalar::Bool(true))
            .count();
        assert_eq!(splits, 4);
        let mm = s.m.entry(&Elem::bag([Elem::bag([a()]), Elem::bag([b()])]), &ab);
        assert_eq!(mm, Scalar::Bool(true));
    }

    #[test]
    fn functor_laws() {
        let f = RelFragment::new(2, 3).unwrap();
        let rels = all_relations(2);
        let mat = |s: &Sample| {
            let dom = enumerate_basis(&s.dom, 1).unwrap();
            let cod = enumerate_basis(&s.cod, 1).unwrap();
            GradedMatrix::from_fn(ScalarDomain::Boolean, dom, cod, |y, x| {
                Scalar::Bool(s.rows.get(y).is_some_and(|r| r.contains_key(x)))
            })
        };
        let id = GradedMatrix::identity(ScalarDomain::Boolean, OrderedBasis::atoms(2));
        let mid = f.multiset_functor(&id).unwrap();
        assert_eq!(mid, GradedMatrix::identity(ScalarDomain::Boolean, mid.domain().clone()));
        let empty = mat(&rels[0]);
        let me = f.multiset_functor(&empty).unwrap();
        assert_eq!(me.nnz(), 1);
        assert_eq!(me.entry(&Elem::empty_bag(), &Elem::empty_bag()), Scalar::Bool(true));
        let pairs: Vec<_> = rels.iter().filter(|r| r.dom == Obj::base(2) && r.cod == Obj::base(2)).collect();
        for r in &pairs {
            for s in &pairs {
                let (r, s) = (mat(r), mat(s));
                let lhs = f.multiset_functor(&r.compose(&s).unwrap()).unwrap();
                let rhs = f.multiset_functor(&r).unwrap().compose(&f.multiset_functor(&s).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn functor_matches_row_evaluation() {
        let f = RelFragment::new(2, 3).unwrap();
        let ev = Evaluator::new(&f);
        for s in all_relations(2) {
            let dom = enumerate_basis(&s.dom, 1).unwrap();
            let cod = enumerate_basis(&s.cod, 1).unwrap();
            let r = GradedMatrix::from_fn(ScalarDomain::Boolean, dom, cod, |y, x| {
                Scalar::Bool(s.rows.get(y).is_some_and(|row| row.contains_key(x)))
            });
            let direct = f.multiset_functor(&r).unwrap();
            let lazy = ev.materialize(&Term::bang(Term::sample(s.clone()))).unwrap();
            assert_eq!(lazy.rebase(direct.domain(), direct.codomain()), direct, "{}", s.name);
        }
    }

    #[test]
    fn dn_examples() {
        let f = RelFragment::new(2, 4).unwrap();
        let d0 = f.dn(0).unwrap();
        assert_eq!(d0, GradedMatrix::identity(ScalarDomain::Boolean, d0.domain().clone()));
        let d2 = f.dn(2).unwrap();
        let src = Elem::Tuple(vec![Elem::empty_bag(), a(), b()]);
        assert_eq!(d2.entry(&Elem::bag([a(), b()]), &src), Scalar::Bool(true));
        for n in 0..=4 {
            assert!(f.dn(n).unwrap().is_degree_preserving());
        }
        let ev = Evaluator::new(&f);
        let base = Obj::base(2);
        for k in 0..=3 {
            for l in 0..=(3 - k) {
                let lhs = Term::d_pow(k + l, &base);
                let rhs = Term::seq(vec![
                    Term::tensor(vec![Term::d_pow(k, &base), Term::id(Obj::power(&base, l))]),
                    Term::d_pow(l, &base),
                ]);
                assert!(ev.compare(&lhs, &rhs).unwrap().mismatch.is_none());
            }
        }
    }

    #[test]
    fn image_of_dn_is_the_large_multisets() {
        let f = RelFragment::new(2, 4).unwrap();
        for n in 0..=4 {
            let dn = f.dn(n).unwrap();
            for r in 0..dn.rows() {
                let hit = !dn.row_support(r).is_empty();
                let m = dn.codomain().get(r).as_bag().unwrap().cardinality();
                assert_eq!(hit, m >= n);
            }
        }
    }

    #[test]
    fn extraction_examples() {
        let f = RelFragment::new(1, 2).unwrap();
        let e0 = f.extract(0).unwrap();
        assert_eq!(e0.kept.elems(), &[Elem::empty_bag()]);
        let eps = e0.eps.unwrap();
        assert_eq!(eps.nnz(), 1);
        assert_eq!(eps.entry(&Elem::Unit, &Elem::empty_bag()), Scalar::Bool(true));
        let f = RelFragment::new(2, 3).unwrap();
        for n in 0..=3 {
            let e = f.extract(n).unwrap();
            assert!(e.kept.iter().all(|m| m.as_bag().unwrap().cardinality() <= n));
            for r in 0..e.selector.rows() {
                let sup = e.selector.row_support(r);
                assert_eq!(sup.len(), 1);
                assert_eq!(e.selector.domain().get(sup[0].0), e.kept.get(r));
            }
            for r in 0..e.d.rows() {
                for (c, _) in e.d.row_support(r) {
                    let s = e.d.domain().get(c).slots();
                    let mut m = s[0].as_bag().unwrap().clone();
                    assert!(m.cardinality() <= n);
                    m.insert(s[1].clone(), 1);
                    assert_eq!(&Elem::Bag(m), e.d.codomain().get(r));
                }
            }
        }
        assert!(f.extract(4).is_err());
    }

    #[test]
    fn t_matrix_examples() {
        let f = RelFragment::new(1, 3).unwrap();
        for n in 0..=3 {
            let t = f.t_matrix(n, n).unwrap();
            assert_eq!(t, GradedMatrix::identity(ScalarDomain::Boolean, t.domain().clone()));
        }
        let t21 = f.t_matrix(2, 1).unwrap();
        assert_eq!(t21.domain().elems(), &[Elem::empty_bag(), Elem::bag([a()]), Elem::bag([a(), a()])]);
        assert_eq!(t21.nnz(), 2);
        assert!(t21.entry(&Elem::bag([a()]), &Elem::bag([a()])) == Scalar::Bool(true));
        for n in 0..=3 {
            for p in 0..=n {
                for q in 0..=p {
                    let lhs = f.t_matrix(n, p).unwrap().compose(&f.t_matrix(p, q).unwrap()).unwrap();
                    assert_eq!(lhs, f.t_matrix(n, q).unwrap());
                }
            }
        }
        assert!(f.t_matrix(1, 2).is_err());
    }

    #[test]
    fn tensored_cokernel_hypothesis() {
        let f = RelFragment::new(2, 3).unwrap();
        let ev = Evaluator::new(&f);
        let a = Obj::base(2);
        for n in 0..=2 {
            let lhs = Term::seq(vec![
                Term::tensor(vec![Term::gen(Gen::Dn(n + 1), &a), Term::id(a.clone())]),
                Term::tensor(vec![Term::ext(ExtGen::S(n), &a), Term::id(a.clone())]),
            ]);
            let (d, c) = lhs.typ().unwrap();
            assert!(ev.compare(&lhs, &Term::zero(d, c)).unwrap().mismatch.is_none());
        }
    }

    #[test]
    fn mutation_changes_a_row() {
        let mut f = RelFragment::new(1, 2).unwrap();
        let space = f.mutation_space();
        assert!(!space.is_empty());
        let before = f.structure().get(space[0].map).clone();
        f.mutate(space[0]).unwrap();
        assert_ne!(&before, f.structure().get(space[0].map));
        assert!(f.mutate(Mutation { map: StructureMap::M, row: 10_000, col: 0 }).is_err());
    }
}
