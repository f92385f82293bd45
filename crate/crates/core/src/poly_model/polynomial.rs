use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::One;

use crate::combinatorics::{mfact, Multiset};
use crate::error::{domain, Error, Result};
use crate::linalg::{Elem, Scalar, ScalarDomain};

/// A monomial `x^M`, stored as the multiset `M` of 1-based variable indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    exps: Multiset<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(i: u32) -> Self {
        Monomial { exps: Multiset::singleton(i) }
    }

    pub fn from_multiset(exps: Multiset<u32>) -> Self {
        Monomial { exps }
    }

    /// From an exponent vector, `exps[k]` being the power of `x_{k+1}`.
    pub fn from_exponents(exps: &[usize]) -> Self {
        Monomial { exps: Multiset::from_counts(exps.iter().enumerate().map(|(k, &e)| (k as u32 + 1, e))) }
    }

    pub fn multiset(&self) -> &Multiset<u32> {
        &self.exps
    }

    pub fn exponent(&self, i: u32) -> usize {
        self.exps.count(&i)
    }

    pub fn exponents(&self, vars: u32) -> Vec<usize> {
        (1..=vars).map(|i| self.exponent(i)).collect()
    }

    pub fn degree(&self) -> usize {
        self.exps.cardinality()
    }

    pub fn max_var(&self) -> u32 {
        self.exps.elements().max().copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.sum(&other.exps) }
    }

    /// The basis label of this monomial in the symmetric algebra: a bag of
    /// atoms, variable `i` being atom `i-1`.
    pub fn to_elem(&self) -> Elem {
        Elem::Bag(Multiset::from_counts(self.exps.iter().map(|(&i, k)| (Elem::Atom(i - 1), k))))
    }

    pub fn from_elem(e: &Elem) -> Option<Monomial> {
        let bag = e.as_bag()?;
        let mut exps = Multiset::new();
        for (x, k) in bag.iter() {
            match x {
                Elem::Atom(i) => exps.insert(i + 1, k),
                _ => return None,
            }
        }
        Some(Monomial { exps })
    }

    /// `1`, `x`, `x^5` for one variable; `x1`, `x1^2`, `x1*x2` otherwise.
    pub fn render(&self, vars: u32) -> String {
        if self.exps.is_empty() {
            return "1".into();
        }
        self.exps
            .iter()
            .map(|(&i, k)| {
                let name = if vars <= 1 { "x".to_string() } else { format!("x{i}") };
                if k == 1 {
                    name
                } else {
                    format!("{name}^{k}")
                }
            })
            .join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(self.max_var().max(2)))
    }
}

/// Canonical order for printed bases: by degree, then by exponent vector.
pub fn basis_order(vars: u32) -> impl Fn(&Monomial, &Monomial) -> std::cmp::Ordering {
    move |a, b| a.degree().cmp(&b.degree()).then_with(|| a.exponents(vars).cmp(&b.exponents(vars)))
}

/// A polynomial over ℚ or 𝔽_p in the variables `x_1 … x_vars`.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: ScalarDomain,
    vars: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

fn check_field(field: ScalarDomain) -> Result<()> {
    if field.is_field() {
        Ok(())
    } else {
        Err(Error::UnsupportedDomain("polynomials need a field".into()))
    }
}

impl Polynomial {
    pub fn zero(field: ScalarDomain, vars: u32) -> Result<Self> {
        check_field(field)?;
        Ok(Polynomial { field, vars, terms: BTreeMap::new() })
    }

    pub fn constant(field: ScalarDomain, vars: u32, c: Scalar) -> Result<Self> {
        Polynomial::from_terms(field, vars, [(Monomial::one(), c)])
    }

    pub fn monomial(field: ScalarDomain, vars: u32, m: Monomial) -> Result<Self> {
        Polynomial::from_terms(field, vars, [(m, field.one())])
    }

    /// Sums the given terms; zero coefficients are dropped.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(
        field: ScalarDomain,
        vars: u32,
        terms: I,
    ) -> Result<Self> {
        let mut p = Polynomial::zero(field, vars)?;
        for (m, c) in terms {
            if m.max_var() > vars {
                return domain(format!("monomial {m:?} uses more than {vars} variables"));
            }
            if !field.contains(&c) {
                return domain(format!("coefficient {c} is not in the field"));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Terms with small integer coefficients, for tests and examples.
    pub fn from_ints(field: ScalarDomain, vars: u32, terms: &[(&[usize], i64)]) -> Result<Self> {
        let mut out = Vec::new();
        for (e, c) in terms {
            out.push((Monomial::from_exponents(e), field.from_i64(*c)?));
        }
        Polynomial::from_terms(field, vars, out)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        let f = self.field;
        let sum = match self.terms.get(&m) {
            Some(old) => f.add(old, &c),
            None => c,
        };
        if f.is_zero(&sum) {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn field(&self) -> ScalarDomain {
        self.field
    }

    pub fn vars(&self) -> u32 {
        self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn same_ring(&self, g: &Polynomial) -> Result<()> {
        if self.field != g.field {
            return domain("polynomials over different fields");
        }
        if self.vars != g.vars {
            return domain("polynomials in different variables");
        }
        Ok(())
    }
}

pub fn poly_add(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.same_ring(g)?;
    let mut out = f.clone();
    for (m, c) in &g.terms {
        out.add_term(m.clone(), c.clone());
    }
    Ok(out)
}

pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.same_ring(g)?;
    let mut out = Polynomial::zero(f.field, f.vars)?;
    for (m, a) in &f.terms {
        for (n, b) in &g.terms {
            out.add_term(m.mul(n), f.field.mul(a, b));
        }
    }
    Ok(out)
}

/// `∂f/∂x_i` for `1 ≤ i ≤ vars`.
pub fn partial(f: &Polynomial, i: u32) -> Result<Polynomial> {
    if i == 0 || i > f.vars {
        return domain(format!("variable index {i} outside 1..={}", f.vars));
    }
    let mut out = Polynomial::zero(f.field, f.vars)?;
    for (m, c) in &f.terms {
        let k = m.exponent(i);
        if k == 0 {
            continue;
        }
        let mut exps = m.exps.clone();
        exps.remove_one(&i);
        out.add_term(Monomial { exps }, f.field.mul(c, &f.field.from_u64(k as u64)));
    }
    Ok(out)
}

/// All order-`r` partial derivatives of a polynomial, indexed by tuples of
/// 1-based variable indices. Zero entries are omitted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivativeFamily {
    pub order: usize,
    pub entries: BTreeMap<Vec<u32>, Polynomial>,
}

impl DerivativeFamily {
    pub fn get(&self, tuple: &[u32]) -> Option<&Polynomial> {
        self.entries.get(tuple)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn dstar(f: &Polynomial, r: usize) -> Result<DerivativeFamily> {
    let mut layer: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
    if !f.is_zero() {
        layer.insert(Vec::new(), f.clone());
    }
    for _ in 0..r {
        let mut next = BTreeMap::new();
        for (t, g) in &layer {
            for i in 1..=f.vars {
                let d = partial(g, i)?;
                if !d.is_zero() {
                    let mut t2 = t.clone();
                    t2.push(i);
                    next.insert(t2, d);
                }
            }
        }
        layer = next;
    }
    Ok(DerivativeFamily { order: r, entries: layer })
}

/// Rebuilds `f` over ℚ from its derivatives at the origin:
/// `f = Σ_α (1/α!) ∂^{|α|}f/∂x^α (0) x^α`.
pub fn taylor_reconstruct(f: &Polynomial) -> Result<Polynomial> {
    if f.field != ScalarDomain::Rational {
        return Err(Error::UnsupportedDomain("Taylor expansion needs characteristic 0".into()));
    }
    let q = f.field;
    let top = f.degree().unwrap_or(0);
    let mut out = Polynomial::zero(q, f.vars)?;
    let vars: Vec<u32> = (1..=f.vars).collect();
    for r in 0..=top {
        for alpha in multisets_of_size(&vars, r) {
            let mut g = f.clone();
            for (&i, k) in alpha.iter() {
                for _ in 0..k {
                    g = partial(&g, i)?;
                }
            }
            let at_zero = g.coeff(&Monomial::one());
            let fact = BigRational::from_integer(mfact(&alpha).into());
            let inv = q.from_rational(&(BigRational::one() / fact))?;
            let c = q.mul(&at_zero, &inv);
            out.add_term(Monomial { exps: alpha }, c);
        }
    }
    Ok(out)
}

/// Multisets of the given size over `items`.
pub fn multisets_of_size(items: &[u32], size: usize) -> Vec<Multiset<u32>> {
    items.iter().copied().combinations_with_replacement(size).map(|v| v.into_iter().collect()).collect()
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts =
            self.terms.iter().map(|(m, c)| format!("{}*{}", self.field.render(c), m.render(self.vars))).join(" + ");
        write!(f, "{parts}")
    }
}
