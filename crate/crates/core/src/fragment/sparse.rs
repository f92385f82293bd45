use std::collections::BTreeMap;

use crate::linalg::{Elem, Scalar, ScalarDomain};

/// A finitely supported vector indexed by basis labels, with no stored
/// zeros. Matrix rows of morphisms are carried in this form.
pub type SparseVec = BTreeMap<Elem, Scalar>;

/// Adds `s` at `e`, dropping the entry if it cancels.
pub fn accumulate(sc: ScalarDomain, v: &mut SparseVec, e: Elem, s: Scalar) {
    if sc.is_zero(&s) {
        return;
    }
    match v.get_mut(&e) {
        Some(old) => {
            let sum = sc.add(old, &s);
            if sc.is_zero(&sum) {
                v.remove(&e);
            } else {
                *old = sum;
            }
        }
        None => {
            v.insert(e, s);
        }
    }
}

pub fn unit_vec(sc: ScalarDomain, e: Elem) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(e, sc.one());
    v
}

/// `Σ_b a[b]·rows(b)`, the row of a composite.
pub fn combine<F>(sc: ScalarDomain, a: &SparseVec, mut rows: F) -> crate::Result<SparseVec>
where
    F: FnMut(&Elem) -> crate::Result<SparseVec>,
{
    let mut out = SparseVec::new();
    for (b, s) in a {
        for (x, t) in rows(b)? {
            accumulate(sc, &mut out, x, sc.mul(s, &t));
        }
    }
    Ok(out)
}
