//! Rows of the structure maps shared by both models. A row is read at a
//! codomain element and lists the domain elements it is reached from, with
//! coefficients. In the relational model the coefficients are Boolean; in
//! the polynomial model they are multiplicities read in the field.

use super::sparse::{accumulate, unit_vec, SparseVec};
use super::term::Gen;
use crate::combinatorics::{falling, msum, Multiset};
use crate::error::{domain, Result};
use crate::linalg::{Elem, ScalarDomain};

fn bag(g: Gen, c: &Elem) -> Result<&Multiset<Elem>> {
    match c.as_bag() {
        Some(m) => Ok(m),
        None => domain(format!("{g} read at {c}, which is not a multiset")),
    }
}

/// Distinct orderings of a multiset, in lexicographic order.
pub fn arrangements(alpha: &Multiset<Elem>) -> Vec<Vec<Elem>> {
    fn rec(left: &mut Vec<(Elem, usize)>, cur: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if left.iter().all(|(_, n)| *n == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i].1 == 0 {
                continue;
            }
            left[i].1 -= 1;
            cur.push(left[i].0.clone());
            rec(left, cur, out);
            cur.pop();
            left[i].1 += 1;
        }
    }
    let mut left: Vec<(Elem, usize)> = alpha.iter().map(|(e, n)| (e.clone(), n)).collect();
    let mut out = Vec::new();
    rec(&mut left, &mut Vec::new(), &mut out);
    out
}

/// The row at `c` of a structure map of the multiset/symmetric-algebra
/// modality, evaluated by its defining formula.
pub fn generic_row(sc: ScalarDomain, g: Gen, c: &Elem) -> Result<SparseVec> {
    match g {
        Gen::M => {
            let outer = bag(g, c)?;
            let mut inner = Multiset::new();
            for (x, k) in outer.iter() {
                inner.insert(bag(g, x)?.clone(), k);
            }
            Ok(unit_vec(sc, Elem::Bag(msum(&inner))))
        }
        Gen::U => Ok(unit_vec(sc, Elem::bag([c.clone()]))),
        Gen::Delta => {
            let slots = c.slots();
            if slots.len() != 2 {
                return domain(format!("Delta read at {c}, which is not a pair"));
            }
            let left = bag(g, &slots[0])?;
            let right = bag(g, &slots[1])?;
            Ok(unit_vec(sc, Elem::Bag(left.sum(right))))
        }
        Gen::Eps => {
            if *c != Elem::Unit {
                return domain(format!("eps read at {c}"));
            }
            Ok(unit_vec(sc, Elem::empty_bag()))
        }
        Gen::D => generic_row(sc, Gen::Dn(1), c),
        Gen::Dn(n) => {
            let m = bag(g, c)?;
            let mut out = SparseVec::new();
            for alpha in m.sub_multisets(n) {
                let coef = sc.from_biguint(&falling(m, &alpha)?);
                if sc.is_zero(&coef) {
                    continue;
                }
                let rest = Elem::Bag(m.difference(&alpha)?);
                for seq in arrangements(&alpha) {
                    let mut slots = vec![rest.clone()];
                    slots.extend(seq.iter().flat_map(Elem::slots));
                    accumulate(sc, &mut out, Elem::from_slots(slots), coef.clone());
                }
            }
            Ok(out)
        }
    }
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

    #[test]
    fn arrangements_are_distinct() {
        let alpha: Multiset<Elem> = Multiset::from_counts([(a(), 2), (b(), 1)]);
        let seqs = arrangements(&alpha);
        assert_eq!(seqs.len(), 3);
        assert_eq!(seqs[0], vec![a(), a(), b()]);
        assert!(arrangements(&Multiset::new()) == vec![Vec::<Elem>::new()]);
    }

    #[test]
    fn boolean_rows_follow_the_relations() {
        let sc = ScalarDomain::Boolean;
        let ab = Elem::bag([a(), b()]);
        let row = generic_row(sc, Gen::D, &ab).unwrap();
        let keys: Vec<Elem> = row.keys().cloned().collect();
        assert_eq!(keys, vec![Elem::Tuple(vec![Elem::bag([a()]), b()]), Elem::Tuple(vec![Elem::bag([b()]), a()]),]);
        let split = Elem::Tuple(vec![Elem::bag([a()]), Elem::bag([a(), b()])]);
        let row = generic_row(sc, Gen::Delta, &split).unwrap();
        assert_eq!(row.keys().next().unwrap(), &Elem::bag([a(), a(), b()]));
        let nested = Elem::bag([Elem::bag([a()]), Elem::bag([a(), b()])]);
        let row = generic_row(sc, Gen::M, &nested).unwrap();
        assert_eq!(row.keys().next().unwrap(), &Elem::bag([a(), a(), b()]));
    }

    #[test]
    fn derivative_coefficients_are_multiplicities() {
        let q = ScalarDomain::Rational;
        let aa = Elem::bag([a(), a()]);
        let row = generic_row(q, Gen::D, &aa).unwrap();
        assert_eq!(row.len(), 1);
        assert_eq!(row.values().next().unwrap(), &q.from_u64(2));
        let f2 = ScalarDomain::PrimeField(2);
        assert!(generic_row(f2, Gen::D, &aa).unwrap().is_empty());
        let row = generic_row(q, Gen::Dn(2), &Elem::bag([a(), a(), b()])).unwrap();
        // [a,a]: 2 ways; [a,b] in two orders: 2 each.
        assert_eq!(row.len(), 3);
        assert!(row.values().all(|s| *s == q.from_u64(2)));
    }

    #[test]
    fn shape_errors() {
        let sc = ScalarDomain::Boolean;
        assert!(generic_row(sc, Gen::M, &a()).is_err());
        assert!(generic_row(sc, Gen::Eps, &a()).is_err());
        assert!(generic_row(sc, Gen::Delta, &Elem::empty_bag()).is_err());
    }
}
