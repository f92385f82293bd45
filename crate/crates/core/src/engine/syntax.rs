//! Structure maps of either the plain modality or its extracted filtered
//! counterpart, so that every identity is written once and instantiated
//! for both.

use crate::fragment::{ExtGen, Gen, Obj, Term};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Grading {
    /// The ungraded modality `!`: grade indices are ignored.
    Plain,
    /// The extracted `ℕ`-graded modality `!_{≤n}`.
    Filtered,
}

#[derive(Clone, Debug)]
pub struct Syntax {
    pub grading: Grading,
    pub base: Obj,
}

impl Syntax {
    pub fn new(grading: Grading, base: Obj) -> Self {
        Syntax { grading, base }
    }

    pub fn a(&self) -> Obj {
        self.base.clone()
    }

    /// `!_r o`.
    pub fn bang(&self, r: usize, o: &Obj) -> Obj {
        match self.grading {
            Grading::Plain => Obj::bang(o.clone()),
            Grading::Filtered => Obj::bang_leq(r, o.clone()),
        }
    }

    /// `!_r A`.
    pub fn ba(&self, r: usize) -> Obj {
        self.bang(r, &self.base)
    }

    /// `!_r f`.
    pub fn fmap(&self, r: usize, t: Term) -> Term {
        match self.grading {
            Grading::Plain => Term::bang(t),
            Grading::Filtered => Term::bang_leq(r, t),
        }
    }

    fn pick(&self, plain: Gen, filtered: ExtGen, o: &Obj) -> Term {
        match self.grading {
            Grading::Plain => Term::gen(plain, o),
            Grading::Filtered => Term::ext(filtered, o),
        }
    }

    /// `m_{r,s}` at `o`.
    pub fn m_at(&self, r: usize, s: usize, o: &Obj) -> Term {
        self.pick(Gen::M, ExtGen::M(r, s), o)
    }

    pub fn m(&self, r: usize, s: usize) -> Term {
        self.m_at(r, s, &self.base)
    }

    pub fn u_at(&self, o: &Obj) -> Term {
        self.pick(Gen::U, ExtGen::U, o)
    }

    pub fn u(&self) -> Term {
        self.u_at(&self.base)
    }

    /// `Δ_{r,s}` at `o`.
    pub fn delta_at(&self, r: usize, s: usize, o: &Obj) -> Term {
        self.pick(Gen::Delta, ExtGen::Delta(r, s), o)
    }

    pub fn delta(&self, r: usize, s: usize) -> Term {
        self.delta_at(r, s, &self.base)
    }

    pub fn eps_at(&self, o: &Obj) -> Term {
        self.pick(Gen::Eps, ExtGen::Eps, o)
    }

    pub fn eps(&self) -> Term {
        self.eps_at(&self.base)
    }

    /// `∂_r` at `o`.
    pub fn d_at(&self, r: usize, o: &Obj) -> Term {
        self.pick(Gen::D, ExtGen::D(r), o)
    }

    pub fn d(&self, r: usize) -> Term {
        self.d_at(r, &self.base)
    }

    pub fn id(&self, o: Obj) -> Term {
        Term::id(o)
    }

    /// `γ_{x,y}`.
    pub fn gamma(&self, x: Obj, y: Obj) -> Term {
        Term::gamma(x, y)
    }
}
