use std::fmt;

use itertools::Itertools;

/// An object expression of a fragment. Tensor products are kept strict:
/// the constructors flatten nested tensors, drop units and unwrap
/// singletons, so structurally equal objects denote equal bases.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Obj {
    Unit,
    /// A base object with generators `0..k`.
    Base(u32),
    Bang(Box<Obj>),
    /// The extracted object `!_{≤n}O`.
    BangLeq(usize, Box<Obj>),
    Tensor(Vec<Obj>),
}

impl Obj {
    pub fn base(k: u32) -> Obj {
        Obj::Base(k)
    }

    pub fn bang(o: Obj) -> Obj {
        Obj::Bang(Box::new(o))
    }

    pub fn bang_leq(n: usize, o: Obj) -> Obj {
        Obj::BangLeq(n, Box::new(o))
    }

    pub fn tensor(parts: Vec<Obj>) -> Obj {
        let mut flat: Vec<Obj> = parts.into_iter().flat_map(|o| o.slots()).collect();
        match flat.len() {
            0 => Obj::Unit,
            1 => flat.pop().expect("one factor"),
            _ => Obj::Tensor(flat),
        }
    }

    /// `o^{⊗n}`.
    pub fn power(o: &Obj, n: usize) -> Obj {
        Obj::tensor(vec![o.clone(); n])
    }

    /// The tensor factors: none for the unit, one for a non-tensor object.
    pub fn slots(&self) -> Vec<Obj> {
        match self {
            Obj::Unit => Vec::new(),
            Obj::Tensor(v) => v.clone(),
            other => vec![other.clone()],
        }
    }

    pub fn slot_count(&self) -> usize {
        match self {
            Obj::Unit => 0,
            Obj::Tensor(v) => v.len(),
            _ => 1,
        }
    }

    /// Nesting depth of `!` and `!_{≤n}` constructors.
    pub fn depth(&self) -> usize {
        match self {
            Obj::Unit | Obj::Base(_) => 0,
            Obj::Bang(o) | Obj::BangLeq(_, o) => 1 + o.depth(),
            Obj::Tensor(v) => v.iter().map(Obj::depth).max().unwrap_or(0),
        }
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Unit => write!(f, "I"),
            Obj::Base(_) => write!(f, "A"),
            Obj::Bang(o) => match **o {
                Obj::Tensor(_) => write!(f, "!({o})"),
                _ => write!(f, "!{o}"),
            },
            Obj::BangLeq(n, o) => match **o {
                Obj::Tensor(_) => write!(f, "!<={n}({o})"),
                _ => write!(f, "!<={n}{o}"),
            },
            Obj::Tensor(v) => write!(f, "{}", v.iter().join(" x ")),
        }
    }
}

impl fmt::Debug for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
