use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use super::model::ModelFragment;
use super::object::Obj;
use super::sparse::{accumulate, combine, unit_vec, SparseVec};
use super::term::{ExtGen, Gen, Term};
use crate::combinatorics::{Multiset, PositionMap};
use crate::error::{domain, Error, Result};
use crate::linalg::{factor_through, Elem, GradedMatrix, OrderedBasis, Scalar, ScalarDomain};

/// Where two morphisms disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub domain: Elem,
    pub codomain: Elem,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

/// Outcome of comparing two parallel morphisms on a fragment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    /// Codomain elements compared.
    pub rows: usize,
    /// Domain elements involved.
    pub cols: usize,
    pub mismatch: Option<Mismatch>,
}

/// Evaluates terms on a fragment row by row. Each row of a composite is
/// computed exactly from rows of its parts, so nothing is lost to the
/// truncation of intermediate objects. Extracted maps are obtained from
/// their defining composites by factoring through the relevant `s_n`.
pub struct Evaluator<'a> {
    frag: &'a dyn ModelFragment,
    sc: ScalarDomain,
    bound: usize,
    bases: RefCell<HashMap<Obj, Rc<Vec<Elem>>>>,
    kept: RefCell<HashMap<(usize, Obj, Elem), bool>>,
    rows: RefCell<HashMap<(Term, Elem), SparseVec>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(frag: &'a dyn ModelFragment) -> Self {
        Evaluator {
            frag,
            sc: frag.scalars(),
            bound: frag.bound(),
            bases: RefCell::new(HashMap::new()),
            kept: RefCell::new(HashMap::new()),
            rows: RefCell::new(HashMap::new()),
        }
    }

    pub fn fragment(&self) -> &dyn ModelFragment {
        self.frag
    }

    pub fn scalars(&self) -> ScalarDomain {
        self.sc
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// The elements of `o` of weight at most the bound, in canonical order:
    /// tensors lexicographically, multisets by degree and then label.
    pub fn basis(&self, o: &Obj) -> Result<Rc<Vec<Elem>>> {
        if let Some(b) = self.bases.borrow().get(o) {
            return Ok(b.clone());
        }
        let elems = match o {
            Obj::Unit => vec![Elem::Unit],
            Obj::Base(k) => {
                if self.bound >= 1 {
                    (0..*k).map(Elem::Atom).collect()
                } else {
                    Vec::new()
                }
            }
            Obj::Tensor(fs) => {
                let factors = fs.iter().map(|f| self.basis(f)).collect::<Result<Vec<_>>>()?;
                let mut out = Vec::new();
                tensor_rec(&factors, 0, self.bound, &mut Vec::new(), &mut out);
                out
            }
            Obj::Bang(x) => {
                let members = self.basis(x)?;
                let mut out = Vec::new();
                bag_rec(&members, 0, self.bound, &mut Vec::new(), &mut out);
                let mut out: Vec<Elem> = out.into_iter().map(|v| Elem::Bag(Multiset::from_counts(v))).collect();
                out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
                out
            }
            Obj::BangLeq(n, x) => {
                let all = self.basis(&Obj::bang((**x).clone()))?;
                let mut out = Vec::new();
                for e in all.iter() {
                    if self.kept(*n, x, e)? {
                        out.push(e.clone());
                    }
                }
                out
            }
        };
        let rc = Rc::new(elems);
        self.bases.borrow_mut().insert(o.clone(), rc.clone());
        Ok(rc)
    }

    /// Whether the multiset `c` over `o` survives in `!_{≤n}o`, i.e. lies
    /// outside the image of `∂^{n+1}` (read as rows: its row is zero).
    pub fn kept(&self, n: usize, o: &Obj, c: &Elem) -> Result<bool> {
        let key = (n, o.clone(), c.clone());
        if let Some(&k) = self.kept.borrow().get(&key) {
            return Ok(k);
        }
        let k = self.frag.row(Gen::Dn(n + 1), o, c)?.is_empty();
        self.kept.borrow_mut().insert(key, k);
        Ok(k)
    }

    /// Membership of a label in the (untruncated) object.
    pub fn contains(&self, o: &Obj, e: &Elem) -> Result<bool> {
        Ok(match (o, e) {
            (Obj::Unit, Elem::Unit) => true,
            (Obj::Base(k), Elem::Atom(i)) => i < k,
            (Obj::Bang(x), Elem::Bag(m)) => {
                for y in m.elements() {
                    if !self.contains(x, y)? {
                        return Ok(false);
                    }
                }
                true
            }
            (Obj::BangLeq(n, x), Elem::Bag(_)) => {
                self.contains(&Obj::bang((**x).clone()), e)? && self.kept(*n, x, e)?
            }
            (Obj::Tensor(fs), Elem::Tuple(v)) => {
                if fs.len() != v.len() {
                    return Ok(false);
                }
                for (f, y) in fs.iter().zip(v) {
                    if !self.contains(f, y)? {
                        return Ok(false);
                    }
                }
                true
            }
            _ => false,
        })
    }

    /// Row of `t` at the codomain element `c`.
    pub fn row(&self, t: &Term, c: &Elem) -> Result<SparseVec> {
        let sc = self.sc;
        match t {
            Term::Id(_) => Ok(unit_vec(sc, c.clone())),
            Term::Seq(parts) => {
                let mut cur = unit_vec(sc, c.clone());
                for f in parts.iter().rev() {
                    cur = combine(sc, &cur, |b| self.row(f, b))?;
                }
                Ok(cur)
            }
            Term::Tensor(parts) => {
                let mut counts = Vec::with_capacity(parts.len());
                for p in parts {
                    counts.push(p.cod()?.slot_count());
                }
                let chunks = split_slots(c, &counts)?;
                let mut acc: Vec<(Vec<Elem>, Scalar)> = vec![(Vec::new(), sc.one())];
                for (p, chunk) in parts.iter().zip(chunks) {
                    let r = self.row(p, &chunk)?;
                    let mut next = Vec::with_capacity(acc.len() * r.len());
                    for (slots, s) in &acc {
                        for (a, v) in &r {
                            let mut ns = slots.clone();
                            ns.extend(a.slots());
                            next.push((ns, sc.mul(s, v)));
                        }
                    }
                    acc = next;
                }
                let mut out = SparseVec::new();
                for (slots, s) in acc {
                    accumulate(sc, &mut out, Elem::from_slots(slots), s);
                }
                Ok(out)
            }
            Term::Sum(parts, _, _) => {
                let mut out = SparseVec::new();
                for p in parts {
                    for (e, s) in self.row(p, c)? {
                        accumulate(sc, &mut out, e, s);
                    }
                }
                Ok(out)
            }
            Term::Perm(sigma, blocks) => {
                let pm = PositionMap::new(sigma.clone(), blocks.len())?;
                let out_blocks = pm.apply(blocks)?;
                let counts: Vec<usize> = out_blocks.iter().map(Obj::slot_count).collect();
                let chunks = split_slots(c, &counts)?;
                let mut slots = Vec::new();
                for k in 1..=blocks.len() {
                    slots.extend(chunks[pm.output_slot(k) - 1].slots());
                }
                Ok(unit_vec(sc, Elem::from_slots(slots)))
            }
            Term::Gen(g, o) => self.frag.row(*g, o, c),
            Term::Sample(s) => {
                if !self.contains(&s.cod, c)? {
                    return domain(format!("{} read at {c}, outside its codomain", s.name));
                }
                Ok(s.rows.get(c).cloned().unwrap_or_default())
            }
            Term::Bang(_) | Term::Ext(_, _) | Term::BangLeq(_, _) => {
                let key = (t.clone(), c.clone());
                if let Some(r) = self.rows.borrow().get(&key) {
                    return Ok(r.clone());
                }
                let r = match t {
                    Term::Bang(f) => self.bang_row(f, c)?,
                    Term::Ext(g, o) => self.ext_row(*g, o, c)?,
                    Term::BangLeq(n, f) => {
                        let (dom, cod) = f.typ()?;
                        let def = Term::seq(vec![Term::Bang(f.clone()), Term::ext(ExtGen::S(*n), &cod)]);
                        let row = self.row(&def, c)?;
                        self.factor_row(&Term::ext(ExtGen::S(*n), &dom), c, &row)?
                    }
                    _ => unreachable!(),
                };
                self.rows.borrow_mut().insert(key, r.clone());
                Ok(r)
            }
        }
    }

    /// Row of `!f` at a multiset: the symmetric product of the member rows.
    fn bang_row(&self, f: &Term, c: &Elem) -> Result<SparseVec> {
        let sc = self.sc;
        let m = match c.as_bag() {
            Some(m) => m,
            None => return domain(format!("!{f} read at {c}, which is not a multiset")),
        };
        let mut acc: Vec<(Multiset<Elem>, Scalar)> = vec![(Multiset::new(), sc.one())];
        for (b, k) in m.iter() {
            let r = self.row(f, b)?;
            for _ in 0..k {
                let mut next: Vec<(Multiset<Elem>, Scalar)> = Vec::new();
                for (bag, s) in &acc {
                    for (a, v) in &r {
                        let mut nb = bag.clone();
                        nb.insert(a.clone(), 1);
                        next.push((nb, sc.mul(s, v)));
                    }
                }
                let mut merged = std::collections::BTreeMap::new();
                for (bag, s) in next {
                    let e = merged.entry(bag).or_insert_with(|| sc.zero());
                    *e = sc.add(e, &s);
                }
                acc = merged.into_iter().filter(|(_, s)| !sc.is_zero(s)).collect();
            }
        }
        let mut out = SparseVec::new();
        for (bag, s) in acc {
            accumulate(sc, &mut out, Elem::Bag(bag), s);
        }
        Ok(out)
    }

    fn ext_row(&self, g: ExtGen, o: &Obj, c: &Elem) -> Result<SparseVec> {
        let s = |n: usize| Term::ext(ExtGen::S(n), o);
        let (def, through) = match g {
            ExtGen::S(n) => {
                if !self.contains(&Obj::bang_leq(n, o.clone()), c)? {
                    return domain(format!("s_{n} read at {c}, which is not in !<={n}{o}"));
                }
                return Ok(unit_vec(self.sc, c.clone()));
            }
            ExtGen::T(n, p) => {
                if n < p {
                    return domain(format!("t_{{{n},{p}}} needs {n} >= {p}"));
                }
                (s(p), s(n))
            }
            ExtGen::Eps => (Term::gen(Gen::Eps, o), s(0)),
            ExtGen::U => (Term::gen(Gen::U, o), s(1)),
            ExtGen::Delta(n, p) => {
                (Term::seq(vec![Term::gen(Gen::Delta, o), Term::tensor(vec![s(n), s(p)])]), s(n + p))
            }
            ExtGen::M(n, p) => (Term::seq(vec![Term::gen(Gen::M, o), Term::s_bullet(n, p, o)]), s(n * p)),
            ExtGen::D(n) => {
                (Term::seq(vec![Term::gen(Gen::D, o), s(n + 1)]), Term::tensor(vec![s(n), Term::id(o.clone())]))
            }
        };
        let row = self.row(&def, c)?;
        self.factor_row(&through, c, &row)
    }

    /// Given the row at `c` of a composite `f`, returns the row of the
    /// unique `g` with `through;g = f`. The solve runs on the local block of
    /// `through` spanned by the support of the row.
    fn factor_row(&self, through: &Term, c: &Elem, row: &SparseVec) -> Result<SparseVec> {
        let sc = self.sc;
        let target = through.cod()?;
        let mut candidates = Vec::new();
        for e in row.keys() {
            if self.contains(&target, e)? {
                candidates.push(e.clone());
            }
        }
        let mut s_rows = Vec::with_capacity(candidates.len());
        let mut cols: BTreeSet<Elem> = row.keys().cloned().collect();
        for k in &candidates {
            let r = self.row(through, k)?;
            cols.extend(r.keys().cloned());
            s_rows.push(r);
        }
        let dom = OrderedBasis::new(cols.into_iter().collect())?;
        let kept = OrderedBasis::new(candidates.clone())?;
        let mut s = GradedMatrix::zero(sc, dom.clone(), kept);
        for (i, r) in s_rows.iter().enumerate() {
            for (e, v) in r {
                s.set(i, dom.index_of(e).expect("column collected"), v.clone());
            }
        }
        let mut f = GradedMatrix::zero(sc, dom.clone(), OrderedBasis::new(vec![c.clone()])?);
        for (e, v) in row {
            f.set(0, dom.index_of(e).expect("column collected"), v.clone());
        }
        let g = factor_through(&s, &f).map_err(|err| match err {
            Error::Factorization { witness, reason } => {
                Error::Factorization { witness, reason: format!("{reason} (row {c} through {through})") }
            }
            other => other,
        })?;
        let mut out = SparseVec::new();
        for (i, k) in candidates.into_iter().enumerate() {
            accumulate(sc, &mut out, k, g.get(0, i).clone());
        }
        Ok(out)
    }

    /// Compares two parallel terms on every codomain element within the
    /// bound, over all domain elements their rows reach.
    pub fn compare(&self, lhs: &Term, rhs: &Term) -> Result<Comparison> {
        let (ld, lc) = lhs.typ()?;
        let (rd, rc) = rhs.typ()?;
        if ld != rd || lc != rc {
            return domain(format!("sides have different types: {ld} -> {lc} and {rd} -> {rc}"));
        }
        let cod = self.basis(&lc)?;
        let dom = self.basis(&ld)?;
        let mut extra: BTreeSet<Elem> = BTreeSet::new();
        let mut mismatch: Option<Mismatch> = None;
        for c in cod.iter() {
            let l = self.row(lhs, c)?;
            let r = self.row(rhs, c)?;
            extra.extend(l.keys().cloned());
            extra.extend(r.keys().cloned());
            if mismatch.is_none() && l != r {
                let keys: BTreeSet<&Elem> = l.keys().chain(r.keys()).collect();
                let zero = self.sc.zero();
                let diff: Vec<&Elem> =
                    keys.into_iter().filter(|e| l.get(*e).unwrap_or(&zero) != r.get(*e).unwrap_or(&zero)).collect();
                let first = diff
                    .iter()
                    .min_by_key(|e| (dom.iter().position(|d| d == **e).unwrap_or(usize::MAX), (**e).clone()))
                    .expect("rows differ somewhere");
                mismatch = Some(Mismatch {
                    domain: (*first).clone(),
                    codomain: c.clone(),
                    lhs: l.get(*first).cloned().unwrap_or_else(|| zero.clone()),
                    rhs: r.get(*first).cloned().unwrap_or(zero),
                });
            }
        }
        for d in dom.iter() {
            extra.insert(d.clone());
        }
        Ok(Comparison { rows: cod.len(), cols: extra.len(), mismatch })
    }

    /// The matrix of `t` with rows over the truncated codomain and columns
    /// over the truncated domain together with everything the rows reach.
    pub fn materialize(&self, t: &Term) -> Result<GradedMatrix> {
        let (d, c) = t.typ()?;
        let cod = OrderedBasis::new(self.basis(&c)?.to_vec())?;
        let rows = cod.iter().map(|e| self.row(t, e)).collect::<Result<Vec<_>>>()?;
        let base = self.basis(&d)?;
        let known: BTreeSet<&Elem> = base.iter().collect();
        let extra: BTreeSet<Elem> =
            rows.iter().flat_map(|r| r.keys()).filter(|e| !known.contains(e)).cloned().collect();
        let dom = OrderedBasis::new(base.to_vec())?.extended(extra);
        let mut m = GradedMatrix::zero(self.sc, dom.clone(), cod);
        for (i, r) in rows.iter().enumerate() {
            for (e, v) in r {
                m.set(i, dom.index_of(e).expect("column present"), v.clone());
            }
        }
        Ok(m)
    }
}

fn split_slots(c: &Elem, counts: &[usize]) -> Result<Vec<Elem>> {
    let slots = c.slots();
    let total: usize = counts.iter().sum();
    if slots.len() != total {
        return domain(format!("{c} has {} slots, expected {total}", slots.len()));
    }
    let mut out = Vec::with_capacity(counts.len());
    let mut i = 0;
    for &k in counts {
        out.push(Elem::from_slots(slots[i..i + k].to_vec()));
        i += k;
    }
    Ok(out)
}

fn tensor_rec(factors: &[Rc<Vec<Elem>>], i: usize, budget: usize, cur: &mut Vec<Elem>, out: &mut Vec<Elem>) {
    if i == factors.len() {
        out.push(Elem::from_slots(cur.clone()));
        return;
    }
    for e in factors[i].iter() {
        let w = e.size();
        if w <= budget {
            cur.push(e.clone());
            tensor_rec(factors, i + 1, budget - w, cur, out);
            cur.pop();
        }
    }
}

fn bag_rec(members: &[Elem], i: usize, budget: usize, cur: &mut Vec<(Elem, usize)>, out: &mut Vec<Vec<(Elem, usize)>>) {
    if i == members.len() {
        out.push(cur.clone());
        return;
    }
    let w = members[i].size().max(1);
    let mut k = 0;
    while k * w <= budget {
        if k > 0 {
            cur.push((members[i].clone(), k));
        }
        bag_rec(members, i + 1, budget - k * w, cur, out);
        if k > 0 {
            cur.pop();
        }
        k += 1;
    }
}
