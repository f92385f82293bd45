use std::fmt;

use super::{Elem, OrderedBasis, Scalar, ScalarDomain};
use crate::combinatorics::PositionMap;
use crate::error::{domain, Result};

/// A dense matrix between ordered bases. Entry `(r, c)` has `r` indexing the
/// codomain and `c` the domain, so `f;g` is the product `Mat(g)·Mat(f)`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    scalars: ScalarDomain,
    dom: OrderedBasis,
    cod: OrderedBasis,
    entries: Vec<Scalar>,
}

impl GradedMatrix {
    pub fn zero(scalars: ScalarDomain, dom: OrderedBasis, cod: OrderedBasis) -> Self {
        let entries = vec![scalars.zero(); dom.len() * cod.len()];
        GradedMatrix { scalars, dom, cod, entries }
    }

    pub fn identity(scalars: ScalarDomain, basis: OrderedBasis) -> Self {
        let mut m = Self::zero(scalars, basis.clone(), basis.clone());
        for i in 0..basis.len() {
            m.set(i, i, scalars.one());
        }
        m
    }

    /// Builds a matrix from an entry function on (codomain, domain) labels.
    pub fn from_fn(
        scalars: ScalarDomain,
        dom: OrderedBasis,
        cod: OrderedBasis,
        mut f: impl FnMut(&Elem, &Elem) -> Scalar,
    ) -> Self {
        let mut m = Self::zero(scalars, dom, cod);
        for r in 0..m.cod.len() {
            for c in 0..m.dom.len() {
                let v = f(m.cod.get(r), m.dom.get(c));
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn scalars(&self) -> ScalarDomain {
        self.scalars
    }

    pub fn domain(&self) -> &OrderedBasis {
        &self.dom
    }

    pub fn codomain(&self) -> &OrderedBasis {
        &self.cod
    }

    pub fn rows(&self) -> usize {
        self.cod.len()
    }

    pub fn cols(&self) -> usize {
        self.dom.len()
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.dom.len() + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(self.scalars.contains(&v));
        let w = self.dom.len();
        self.entries[r * w + c] = v;
    }

    /// Entry addressed by labels; absent labels read as zero.
    pub fn entry(&self, cod: &Elem, dom: &Elem) -> Scalar {
        match (self.cod.index_of(cod), self.dom.index_of(dom)) {
            (Some(r), Some(c)) => self.get(r, c).clone(),
            _ => self.scalars.zero(),
        }
    }

    /// Nonzero entries of row `r` as (domain index, value).
    pub fn row_support(&self, r: usize) -> Vec<(usize, Scalar)> {
        (0..self.cols())
            .filter(|&c| !self.scalars.is_zero(self.get(r, c)))
            .map(|c| (c, self.get(r, c).clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|v| self.scalars.is_zero(v))
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.entries.iter().filter(|v| !self.scalars.is_zero(v)).count()
    }

    /// `entry(r,c) ≠ 0 ⇒ degree(cod[r]) = degree(dom[c])`.
    pub fn is_degree_preserving(&self) -> bool {
        (0..self.rows())
            .all(|r| self.row_support(r).iter().all(|(c, _)| self.cod.get(r).degree() == self.dom.get(*c).degree()))
    }

    /// `self;g`.
    pub fn compose(&self, g: &GradedMatrix) -> Result<GradedMatrix> {
        if self.scalars != g.scalars {
            return domain("composite of matrices over different scalar domains");
        }
        if self.cod != g.dom {
            return domain("codomain of the first map differs from domain of the second");
        }
        let s = self.scalars;
        let mut out = GradedMatrix::zero(s, self.dom.clone(), g.cod.clone());
        for r in 0..g.rows() {
            for (k, gv) in g.row_support(r) {
                for c in 0..self.cols() {
                    let fv = self.get(k, c);
                    if s.is_zero(fv) {
                        continue;
                    }
                    let acc = s.add(out.get(r, c), &s.mul(&gv, fv));
                    out.set(r, c, acc);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, g: &GradedMatrix) -> Result<GradedMatrix> {
        if self.scalars != g.scalars || self.dom != g.dom || self.cod != g.cod {
            return domain("sum of matrices with different bases or scalars");
        }
        let s = self.scalars;
        let entries = self.entries.iter().zip(&g.entries).map(|(a, b)| s.add(a, b)).collect();
        Ok(GradedMatrix { entries, ..self.clone() })
    }

    /// Kronecker product over lexicographic tensor bases.
    pub fn kron(&self, g: &GradedMatrix) -> Result<GradedMatrix> {
        if self.scalars != g.scalars {
            return domain("tensor of matrices over different scalar domains");
        }
        let s = self.scalars;
        let dom = OrderedBasis::tensor(&[&self.dom, &g.dom])?;
        let cod = OrderedBasis::tensor(&[&self.cod, &g.cod])?;
        let mut out = GradedMatrix::zero(s, dom, cod);
        let gc = g.cols();
        let gr = g.rows();
        for r1 in 0..self.rows() {
            for c1 in 0..self.cols() {
                let a = self.get(r1, c1);
                if s.is_zero(a) {
                    continue;
                }
                for r2 in 0..gr {
                    for c2 in 0..gc {
                        let b = g.get(r2, c2);
                        if !s.is_zero(b) {
                            out.set(r1 * gr + r2, c1 * gc + c2, s.mul(a, b));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> GradedMatrix {
        let mut out = GradedMatrix::zero(self.scalars, self.cod.clone(), self.dom.clone());
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Re-expresses the matrix on new bases by label; labels missing from
    /// the old bases read as zero.
    pub fn rebase(&self, dom: &OrderedBasis, cod: &OrderedBasis) -> GradedMatrix {
        GradedMatrix::from_fn(self.scalars, dom.clone(), cod.clone(), |r, c| self.entry(r, c))
    }

    /// First `(row, col)` where two same-shaped matrices differ.
    pub fn first_difference(&self, other: &GradedMatrix) -> Option<(usize, usize)> {
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                if self.get(r, c) != other.get(r, c) {
                    return Some((r, c));
                }
            }
        }
        None
    }
}

impl fmt::Debug for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GradedMatrix {:?} {}x{}", self.scalars, self.rows(), self.cols())?;
        for r in 0..self.rows() {
            let row: Vec<String> = (0..self.cols()).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  {}: {}", self.cod.get(r), row.join(" "))?;
        }
        Ok(())
    }
}

/// The matrix of σ̄ on `factors[0] ⊗ … ⊗ factors[n−1]`: the basis tuple
/// `(b₁,…,bₙ)` goes to `(b_{σ⁻¹(1)},…,b_{σ⁻¹(n)})`.
pub fn perm_matrix(scalars: ScalarDomain, pm: &PositionMap, factors: &[OrderedBasis]) -> Result<GradedMatrix> {
    if pm.arity() != factors.len() {
        return domain(format!("position map of arity {} on {} factors", pm.arity(), factors.len()));
    }
    let refs: Vec<&OrderedBasis> = factors.iter().collect();
    let dom = OrderedBasis::tensor(&refs)?;
    let permuted = pm.apply(factors)?;
    let prefs: Vec<&OrderedBasis> = permuted.iter().collect();
    let cod = OrderedBasis::tensor(&prefs)?;
    let mut out = GradedMatrix::zero(scalars, dom, cod);
    let mut tuple: Vec<usize> = vec![0; factors.len()];
    if factors.iter().any(|f| f.is_empty()) {
        return Ok(out);
    }
    loop {
        let items: Vec<&Elem> = tuple.iter().zip(factors).map(|(&i, f)| f.get(i)).collect();
        let src = Elem::tensor(&items);
        let moved = pm.apply(&items)?;
        let dst = Elem::tensor(&moved);
        let c = out.dom.index_of(&src).expect("source in domain");
        let r = out.cod.index_of(&dst).expect("target in codomain");
        out.set(r, c, scalars.one());
        let mut k = factors.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            tuple[k] += 1;
            if tuple[k] < factors[k].len() {
                break;
            }
            tuple[k] = 0;
        }
    }
}
