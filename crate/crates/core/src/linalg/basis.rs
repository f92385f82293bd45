use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::combinatorics::Multiset;
use crate::error::{domain, Result};

/// A basis label. Atoms are generators of a base object, bags are elements
/// of a multiset (or monomial) object, tuples are elements of tensor
/// products with at least two factors, and `Unit` is the single element of
/// the monoidal unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Unit,
    Atom(u32),
    Bag(Multiset<Elem>),
    Tuple(Vec<Elem>),
}

impl Elem {
    pub fn bag<I: IntoIterator<Item = Elem>>(items: I) -> Elem {
        Elem::Bag(items.into_iter().collect())
    }

    pub fn empty_bag() -> Elem {
        Elem::Bag(Multiset::new())
    }

    /// Grading: atoms 1, unit 0, bags and tuples additive.
    pub fn degree(&self) -> usize {
        match self {
            Elem::Unit => 0,
            Elem::Atom(_) => 1,
            Elem::Bag(m) => m.iter().map(|(e, n)| n * e.degree()).sum(),
            Elem::Tuple(v) => v.iter().map(Elem::degree).sum(),
        }
    }

    /// Truncation weight. Agrees with [`Elem::degree`] except that every
    /// member of a bag weighs at least one, so that each weight slice of a
    /// nested bag object is finite.
    pub fn size(&self) -> usize {
        match self {
            Elem::Unit => 0,
            Elem::Atom(_) => 1,
            Elem::Bag(m) => m.iter().map(|(e, n)| n * e.size().max(1)).sum(),
            Elem::Tuple(v) => v.iter().map(Elem::size).sum(),
        }
    }

    /// The tensor slots of this element: `Unit` has none, a tuple has one
    /// per entry, anything else is a single slot.
    pub fn slots(&self) -> Vec<Elem> {
        match self {
            Elem::Unit => Vec::new(),
            Elem::Tuple(v) => v.clone(),
            other => vec![other.clone()],
        }
    }

    /// Inverse of [`Elem::slots`].
    pub fn from_slots(mut slots: Vec<Elem>) -> Elem {
        match slots.len() {
            0 => Elem::Unit,
            1 => slots.pop().expect("one slot"),
            _ => Elem::Tuple(slots),
        }
    }

    /// Strict tensor of elements: slots are concatenated, units vanish.
    pub fn tensor(parts: &[&Elem]) -> Elem {
        Elem::from_slots(parts.iter().flat_map(|e| e.slots()).collect())
    }

    pub fn as_bag(&self) -> Option<&Multiset<Elem>> {
        match self {
            Elem::Bag(m) => Some(m),
            _ => None,
        }
    }
}

fn atom_name(i: u32) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("a{i}")
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Unit => write!(f, "*"),
            Elem::Atom(i) => write!(f, "{}", atom_name(*i)),
            Elem::Bag(m) => write!(f, "{m}"),
            Elem::Tuple(v) => write!(f, "({})", v.iter().join(", ")),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite sequence of distinct labels in canonical order. Cloning is
/// cheap; the label storage is shared.
#[derive(Clone)]
pub struct OrderedBasis {
    elems: Arc<Vec<Elem>>,
    index: Arc<HashMap<Elem, usize>>,
}

impl OrderedBasis {
    pub fn new(elems: Vec<Elem>) -> Result<Self> {
        let mut index = HashMap::with_capacity(elems.len());
        for (i, e) in elems.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return domain(format!("repeated basis label {e}"));
            }
        }
        Ok(OrderedBasis { elems: Arc::new(elems), index: Arc::new(index) })
    }

    /// Labels sorted by (degree, label order), duplicates removed.
    pub fn sorted(mut elems: Vec<Elem>) -> Self {
        elems.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        elems.dedup();
        Self::new(elems).expect("deduplicated")
    }

    pub fn empty() -> Self {
        Self::new(Vec::new()).expect("empty")
    }

    /// The one-element degree-0 basis of the monoidal unit.
    pub fn unit() -> Self {
        Self::new(vec![Elem::Unit]).expect("single label")
    }

    /// Atoms `0..n`.
    pub fn atoms(n: u32) -> Self {
        Self::new((0..n).map(Elem::Atom).collect()).expect("distinct atoms")
    }

    /// Lexicographic product basis with strict (flattened) tuples.
    pub fn tensor(factors: &[&OrderedBasis]) -> Result<Self> {
        let mut out = vec![Elem::Unit];
        for f in factors {
            let mut next = Vec::with_capacity(out.len() * f.len());
            for a in &out {
                for b in f.iter() {
                    next.push(Elem::tensor(&[a, b]));
                }
            }
            out = next;
        }
        Self::new(out)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn get(&self, i: usize) -> &Elem {
        &self.elems[i]
    }

    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &Elem) -> bool {
        self.index.contains_key(e)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Elem> {
        self.elems.iter()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    /// Sorted-union with extra labels (used when pulled supports leave the
    /// enumerated slice).
    pub fn extended(&self, extra: impl IntoIterator<Item = Elem>) -> Self {
        let mut v = self.elems.to_vec();
        for e in extra {
            if !self.contains(&e) {
                v.push(e);
            }
        }
        if v.len() == self.len() {
            return self.clone();
        }
        OrderedBasis::new(v.into_iter().unique().collect()).expect("unique labels")
    }
}

impl PartialEq for OrderedBasis {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.elems, &other.elems) || self.elems == other.elems
    }
}

impl Eq for OrderedBasis {}

impl fmt::Debug for OrderedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.elems.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grading_and_size() {
        let a = Elem::Atom(0);
        let m = Elem::bag([a.clone(), a.clone()]);
        assert_eq!(m.degree(), 2);
        let nested = Elem::bag([Elem::empty_bag(), Elem::empty_bag(), m.clone()]);
        assert_eq!(nested.degree(), 2);
        assert_eq!(nested.size(), 4);
        assert_eq!(Elem::Tuple(vec![m, a]).degree(), 3);
        assert_eq!(format!("{nested}"), "[[],[],[a,a]]");
    }

    #[test]
    fn strict_tensor() {
        let a = Elem::Atom(0);
        assert_eq!(Elem::tensor(&[&Elem::Unit, &a]), a);
        let ab = Elem::tensor(&[&a, &Elem::Atom(1)]);
        let abc = Elem::tensor(&[&ab, &Elem::Atom(2)]);
        assert_eq!(abc, Elem::Tuple(vec![Elem::Atom(0), Elem::Atom(1), Elem::Atom(2)]));
        let b = OrderedBasis::atoms(2);
        assert_eq!(OrderedBasis::tensor(&[&OrderedBasis::unit(), &b]).unwrap(), b);
        let bb = OrderedBasis::tensor(&[&b, &b]).unwrap();
        assert_eq!(bb.len(), 4);
        assert_eq!(bb.get(1), &Elem::Tuple(vec![Elem::Atom(0), Elem::Atom(1)]));
    }

    #[test]
    fn rejects_duplicates() {
        assert!(OrderedBasis::new(vec![Elem::Unit, Elem::Unit]).is_err());
    }
}
