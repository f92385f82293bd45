use std::collections::BTreeSet;

use crate::combinatorics::falling;
use crate::error::{Error, Result};
use crate::fragment::ModelFragment;
use crate::linalg::ScalarDomain;

use super::fragment::PolyFragment;
use super::polynomial::{basis_order, dstar, Monomial, Polynomial};

/// Whether `x^M` is killed by every derivative of order `r+1`: each
/// falling factorial `M^{(β)}` with `|β| = r+1` and `β ≤ M` vanishes in the
/// field.
pub fn monomial_kernel_predicate(m: &Monomial, r: usize, field: ScalarDomain) -> bool {
    m.multiset().sub_multisets(r + 1).iter().all(|beta| {
        let f = falling(m.multiset(), beta).expect("sub-multiset");
        field.is_zero(&field.from_biguint(&f))
    })
}

/// The monomials of degree at most `D` spanning `ker ∂^{r+1}`, in printing
/// order. The monomial criterion is cross-checked against direct
/// differentiation and against Gaussian elimination on the slice matrix.
pub fn kernel_slice(frag: &PolyFragment, r: usize) -> Result<Vec<Monomial>> {
    let field = frag.field();
    let vars = frag.vars();
    let mut by_predicate = Vec::new();
    for m in frag.monomials()? {
        let predicate = monomial_kernel_predicate(&m, r, field);
        let f = Polynomial::monomial(field, vars, m.clone())?;
        if dstar(&f, r + 1)?.is_zero() != predicate {
            return Err(Error::Internal(format!("derivatives of {m:?} disagree with the monomial criterion")));
        }
        if predicate {
            by_predicate.push(m);
        }
    }
    let by_elimination: BTreeSet<Monomial> = frag
        .dense_kept(r)?
        .iter()
        .map(|e| Monomial::from_elem(e).ok_or_else(|| Error::Internal(format!("{e} is not a monomial"))))
        .collect::<Result<_>>()?;
    if by_elimination != by_predicate.iter().cloned().collect() {
        return Err(Error::Internal(format!("kernel of d^{} disagrees with the monomial criterion", r + 1)));
    }
    by_predicate.sort_by(basis_order(vars));
    Ok(by_predicate)
}
