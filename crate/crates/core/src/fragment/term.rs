use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use itertools::Itertools;

use super::object::Obj;
use super::sparse::SparseVec;
use crate::combinatorics::{gamma_block, FormalPermSum, Permutation, PositionMap};
use crate::error::{domain, Result};
use crate::linalg::Elem;

/// Structure maps of the ungraded modality, at a given object `O`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    /// `m: !O → !!O`
    M,
    /// `u: !O → O`
    U,
    /// `Δ: !O → !O ⊗ !O`
    Delta,
    /// `ε: !O → I`
    Eps,
    /// `∂: !O ⊗ O → !O`
    D,
    /// Closed form of `∂ⁿ: !O ⊗ O^{⊗n} → !O`.
    Dn(usize),
}

/// Maps of the extracted filtered modality, at a given object `O`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ExtGen {
    /// `s_n: !O → !_{≤n}O`
    S(usize),
    /// `t_{n,p}: !_{≤n}O → !_{≤p}O`, `n ≥ p`
    T(usize, usize),
    /// `ε^≤: !_{≤0}O → I`
    Eps,
    /// `u^≤: !_{≤1}O → O`
    U,
    /// `Δ^≤_{n,p}: !_{≤n+p}O → !_{≤n}O ⊗ !_{≤p}O`
    Delta(usize, usize),
    /// `m^≤_{n,p}: !_{≤np}O → !_{≤n}!_{≤p}O`
    M(usize, usize),
    /// `∂^≤_n: !_{≤n}O ⊗ O → !_{≤n+1}O`
    D(usize),
}

/// A concrete morphism supplied by a model, stored by its rows in the
/// direction of the category.
pub struct Sample {
    pub name: String,
    pub dom: Obj,
    pub cod: Obj,
    pub rows: BTreeMap<Elem, SparseVec>,
}

impl PartialEq for Sample {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.dom == other.dom && self.cod == other.cod
    }
}

impl Eq for Sample {}

impl Hash for Sample {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state);
        self.dom.hash(state);
        self.cod.hash(state);
    }
}

impl fmt::Debug for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// A morphism expression, composed diagrammatically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Id(Obj),
    Seq(Vec<Term>),
    Tensor(Vec<Term>),
    /// A formal sum with explicit type, so that the empty sum is the zero map.
    Sum(Vec<Term>, Obj, Obj),
    /// `σ̄` acting on the listed blocks.
    Perm(Permutation, Vec<Obj>),
    Gen(Gen, Obj),
    Ext(ExtGen, Obj),
    Bang(Box<Term>),
    BangLeq(usize, Box<Term>),
    Sample(Arc<Sample>),
}

fn gen_type(g: Gen, o: &Obj) -> (Obj, Obj) {
    let b = Obj::bang(o.clone());
    match g {
        Gen::M => (b.clone(), Obj::bang(b)),
        Gen::U => (b, o.clone()),
        Gen::Delta => (b.clone(), Obj::tensor(vec![b.clone(), b])),
        Gen::Eps => (b, Obj::Unit),
        Gen::D => (Obj::tensor(vec![b.clone(), o.clone()]), b),
        Gen::Dn(n) => (Obj::tensor(vec![b.clone(), Obj::power(o, n)]), b),
    }
}

fn ext_type(g: ExtGen, o: &Obj) -> Result<(Obj, Obj)> {
    let leq = |n: usize| Obj::bang_leq(n, o.clone());
    Ok(match g {
        ExtGen::S(n) => (Obj::bang(o.clone()), leq(n)),
        ExtGen::T(n, p) => {
            if n < p {
                return domain(format!("t_{{{n},{p}}} needs {n} >= {p}"));
            }
            (leq(n), leq(p))
        }
        ExtGen::Eps => (leq(0), Obj::Unit),
        ExtGen::U => (leq(1), o.clone()),
        ExtGen::Delta(n, p) => (leq(n + p), Obj::tensor(vec![leq(n), leq(p)])),
        ExtGen::M(n, p) => (leq(n * p), Obj::bang_leq(n, leq(p))),
        ExtGen::D(n) => (Obj::tensor(vec![leq(n), o.clone()]), leq(n + 1)),
    })
}

impl Term {
    pub fn id(o: Obj) -> Term {
        Term::Id(o)
    }

    pub fn seq(parts: Vec<Term>) -> Term {
        Term::Seq(parts)
    }

    pub fn tensor(parts: Vec<Term>) -> Term {
        Term::Tensor(parts)
    }

    pub fn sum(parts: Vec<Term>, dom: Obj, cod: Obj) -> Term {
        Term::Sum(parts, dom, cod)
    }

    pub fn zero(dom: Obj, cod: Obj) -> Term {
        Term::Sum(Vec::new(), dom, cod)
    }

    pub fn perm(sigma: Permutation, blocks: Vec<Obj>) -> Term {
        Term::Perm(sigma, blocks)
    }

    /// The symmetry `γ_{X,Y}: X ⊗ Y → Y ⊗ X`.
    pub fn gamma(x: Obj, y: Obj) -> Term {
        Term::Perm(gamma_block(1, 1), vec![x, y])
    }

    /// A formal sum of permutations acting on `o^{⊗n}`.
    pub fn perm_sum(sum: &FormalPermSum, o: &Obj) -> Term {
        let n = sum.degree();
        let blocks = vec![o.clone(); n];
        let parts = sum
            .terms()
            .iter()
            .flat_map(|(p, k)| std::iter::repeat_n(p.clone(), k))
            .map(|p| Term::Perm(p, blocks.clone()))
            .collect();
        let x = Obj::power(o, n);
        Term::Sum(parts, x.clone(), x)
    }

    pub fn gen(g: Gen, o: &Obj) -> Term {
        Term::Gen(g, o.clone())
    }

    pub fn ext(g: ExtGen, o: &Obj) -> Term {
        Term::Ext(g, o.clone())
    }

    pub fn bang(t: Term) -> Term {
        Term::Bang(Box::new(t))
    }

    pub fn bang_leq(n: usize, t: Term) -> Term {
        Term::BangLeq(n, Box::new(t))
    }

    pub fn sample(s: Arc<Sample>) -> Term {
        Term::Sample(s)
    }

    /// `∂ⁿ` by its inductive definition: `∂⁰ = 1`, `∂^{n+1} = ∂ⁿ ⊗ 1;∂`.
    pub fn d_pow(n: usize, o: &Obj) -> Term {
        let mut t = Term::id(Obj::bang(o.clone()));
        for _ in 0..n {
            t = Term::seq(vec![Term::tensor(vec![t, Term::id(o.clone())]), Term::gen(Gen::D, o)]);
        }
        t
    }

    /// `Δⁿ: !O → (!O)^{⊗n}` for `n ≥ 1`: `Δ¹ = 1`, `Δ^{n+1} = Δⁿ;1 ⊗ Δ`.
    pub fn delta_pow(n: usize, o: &Obj) -> Term {
        let b = Obj::bang(o.clone());
        let mut t = Term::id(b.clone());
        for k in 1..n.max(1) {
            t = Term::seq(vec![t, Term::tensor(vec![Term::id(Obj::power(&b, k - 1)), Term::gen(Gen::Delta, o)])]);
        }
        t
    }

    /// The horizontal composite `s_n • s_p = !(s_p);s_n`.
    pub fn s_bullet(n: usize, p: usize, o: &Obj) -> Term {
        Term::seq(vec![Term::bang(Term::ext(ExtGen::S(p), o)), Term::ext(ExtGen::S(n), &Obj::bang_leq(p, o.clone()))])
    }

    /// The horizontal composite `t_{n,q} • t_{p,r} = !_{≤n}(t_{p,r});t_{n,q}`.
    pub fn t_bullet(n: usize, q: usize, p: usize, r: usize, o: &Obj) -> Term {
        Term::seq(vec![
            Term::bang_leq(n, Term::ext(ExtGen::T(p, r), o)),
            Term::ext(ExtGen::T(n, q), &Obj::bang_leq(r, o.clone())),
        ])
    }

    /// Domain and codomain, verifying every composite and sum on the way.
    pub fn typ(&self) -> Result<(Obj, Obj)> {
        match self {
            Term::Id(o) => Ok((o.clone(), o.clone())),
            Term::Seq(parts) => {
                let mut it = parts.iter();
                let first = match it.next() {
                    Some(t) => t.typ()?,
                    None => return domain("empty composite"),
                };
                let (dom, mut cod) = first;
                for t in it {
                    let (d, c) = t.typ()?;
                    if d != cod {
                        return domain(format!("cannot compose: {cod} is not {d} in {t}"));
                    }
                    cod = c;
                }
                Ok((dom, cod))
            }
            Term::Tensor(parts) => {
                let mut doms = Vec::new();
                let mut cods = Vec::new();
                for t in parts {
                    let (d, c) = t.typ()?;
                    doms.push(d);
                    cods.push(c);
                }
                Ok((Obj::tensor(doms), Obj::tensor(cods)))
            }
            Term::Sum(parts, dom, cod) => {
                for t in parts {
                    let (d, c) = t.typ()?;
                    if &d != dom || &c != cod {
                        return domain(format!("summand {t} has type {d} -> {c}, expected {dom} -> {cod}"));
                    }
                }
                Ok((dom.clone(), cod.clone()))
            }
            Term::Perm(sigma, blocks) => {
                let pm = PositionMap::new(sigma.clone(), blocks.len())?;
                let out = pm.apply(blocks)?;
                Ok((Obj::tensor(blocks.clone()), Obj::tensor(out)))
            }
            Term::Gen(g, o) => Ok(gen_type(*g, o)),
            Term::Ext(g, o) => ext_type(*g, o),
            Term::Bang(t) => {
                let (d, c) = t.typ()?;
                Ok((Obj::bang(d), Obj::bang(c)))
            }
            Term::BangLeq(n, t) => {
                let (d, c) = t.typ()?;
                Ok((Obj::bang_leq(*n, d), Obj::bang_leq(*n, c)))
            }
            Term::Sample(s) => Ok((s.dom.clone(), s.cod.clone())),
        }
    }

    pub fn cod(&self) -> Result<Obj> {
        Ok(self.typ()?.1)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::M => write!(f, "m"),
            Gen::U => write!(f, "u"),
            Gen::Delta => write!(f, "Delta"),
            Gen::Eps => write!(f, "eps"),
            Gen::D => write!(f, "d"),
            Gen::Dn(n) => write!(f, "d^{n}"),
        }
    }
}

impl fmt::Display for ExtGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtGen::S(n) => write!(f, "s_{n}"),
            ExtGen::T(n, p) => write!(f, "t_{n},{p}"),
            ExtGen::Eps => write!(f, "eps<="),
            ExtGen::U => write!(f, "u<="),
            ExtGen::Delta(n, p) => write!(f, "Delta<=_{n},{p}"),
            ExtGen::M(n, p) => write!(f, "m<=_{n},{p}"),
            ExtGen::D(n) => write!(f, "d<=_{n}"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Id(o) => write!(f, "1[{o}]"),
            Term::Seq(v) => write!(f, "({})", v.iter().join(";")),
            Term::Tensor(v) => write!(f, "({})", v.iter().join(" x ")),
            Term::Sum(v, _, _) if v.is_empty() => write!(f, "0"),
            Term::Sum(v, _, _) => write!(f, "({})", v.iter().join(" + ")),
            Term::Perm(s, _) => write!(f, "perm{s}"),
            Term::Gen(g, o) => write!(f, "{g}[{o}]"),
            Term::Ext(g, o) => write!(f, "{g}[{o}]"),
            Term::Bang(t) => write!(f, "!{t}"),
            Term::BangLeq(n, t) => write!(f, "!<={n}{t}"),
            Term::Sample(s) => write!(f, "{}", s.name),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::unsh;

    #[test]
    fn structure_types() {
        let a = Obj::base(2);
        let b = Obj::bang(a.clone());
        assert_eq!(Term::gen(Gen::M, &a).typ().unwrap(), (b.clone(), Obj::bang(b.clone())));
        let d3 = Term::d_pow(3, &a).typ().unwrap();
        assert_eq!(d3, Term::gen(Gen::Dn(3), &a).typ().unwrap());
        assert_eq!(d3.0, Obj::tensor(vec![b.clone(), a.clone(), a.clone(), a.clone()]));
        assert_eq!(Term::d_pow(0, &a).typ().unwrap(), (b.clone(), b.clone()));
        assert_eq!(Term::delta_pow(3, &a).typ().unwrap(), (b.clone(), Obj::power(&b, 3)));
        assert_eq!(Term::delta_pow(1, &a).typ().unwrap(), (b.clone(), b.clone()));
    }

    #[test]
    fn gamma_swaps_blocks() {
        let a = Obj::base(1);
        let b = Obj::bang(a.clone());
        let g = Term::gamma(b.clone(), Obj::power(&a, 2)).typ().unwrap();
        assert_eq!(g.0, Obj::tensor(vec![b.clone(), a.clone(), a.clone()]));
        assert_eq!(g.1, Obj::tensor(vec![a.clone(), a.clone(), b]));
    }

    #[test]
    fn ill_typed_composites_are_rejected() {
        let a = Obj::base(1);
        let t = Term::seq(vec![Term::gen(Gen::U, &a), Term::gen(Gen::U, &a)]);
        assert!(t.typ().is_err());
        let s = Term::sum(vec![Term::gen(Gen::U, &a)], Obj::bang(a.clone()), Obj::Unit);
        assert!(s.typ().is_err());
        assert!(Term::ext(ExtGen::T(1, 2), &a).typ().is_err());
    }

    #[test]
    fn extracted_types() {
        let a = Obj::base(1);
        let (d, c) = Term::ext(ExtGen::M(2, 3), &a).typ().unwrap();
        assert_eq!(d, Obj::bang_leq(6, a.clone()));
        assert_eq!(c, Obj::bang_leq(2, Obj::bang_leq(3, a.clone())));
        let (d, c) = Term::s_bullet(2, 1, &a).typ().unwrap();
        assert_eq!(d, Obj::bang(Obj::bang(a.clone())));
        assert_eq!(c, Obj::bang_leq(2, Obj::bang_leq(1, a.clone())));
        let (d, c) = Term::t_bullet(2, 1, 3, 0, &a).typ().unwrap();
        assert_eq!(d, Obj::bang_leq(2, Obj::bang_leq(3, a.clone())));
        assert_eq!(c, Obj::bang_leq(1, Obj::bang_leq(0, a)));
    }

    #[test]
    fn unshuffle_sum_counts_terms() {
        let a = Obj::base(1);
        match Term::perm_sum(&unsh(4, 2).unwrap(), &a) {
            Term::Sum(parts, d, c) => {
                assert_eq!(parts.len(), 6);
                assert_eq!(d, c);
            }
            _ => unreachable!(),
        }
    }
}
