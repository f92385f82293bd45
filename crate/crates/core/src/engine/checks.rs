use std::sync::Arc;

use super::report::{CheckResult, Counterexample, Params, Status};
use super::syntax::{Grading, Syntax};
use crate::combinatorics::{partitions, tau_pi, unsh, FormalPermSum, Permutation};
use crate::error::Error;
use crate::fragment::{Evaluator, ExtGen, Gen, ModelFragment, Obj, Sample, Term};
use crate::linalg::Elem;

/// Cap on the composable sample pairs used for functoriality.
const MAX_PAIRS: usize = 48;

enum Outcome {
    Skip,
    Pass,
    Fail(Counterexample),
}

fn placeholder_cx(note: String) -> Counterexample {
    Counterexample { domain: "-".into(), codomain: "-".into(), lhs: "-".into(), rhs: "-".into(), note: Some(note) }
}

fn error_cx(err: &Error) -> Counterexample {
    match err {
        Error::Factorization { witness, .. } => {
            Counterexample { domain: witness.clone(), note: Some(err.to_string()), ..placeholder_cx(String::new()) }
        }
        other => placeholder_cx(other.to_string()),
    }
}

/// Least weight of an element of `o`.
fn min_degree(o: &Obj) -> usize {
    match o {
        Obj::Base(_) => 1,
        Obj::Tensor(v) => v.iter().map(min_degree).sum(),
        _ => 0,
    }
}

/// Runs comparisons on one fragment and collects their results in order.
pub(crate) struct Checker<'a> {
    ev: Evaluator<'a>,
    degenerate: bool,
    results: Vec<CheckResult>,
}

impl<'a> Checker<'a> {
    pub fn new(frag: &'a dyn ModelFragment) -> Self {
        let degenerate = frag.bound() == 0 || frag.base() == Obj::base(0);
        Checker { ev: Evaluator::new(frag), degenerate, results: Vec::new() }
    }

    pub fn fragment(&self) -> &dyn ModelFragment {
        self.ev.fragment()
    }

    pub fn finish(self) -> Vec<CheckResult> {
        self.results
    }

    fn judge(&self, lhs: &Term, rhs: &Term) -> Outcome {
        let cod = match lhs.typ() {
            Ok((_, c)) => c,
            Err(e) => return Outcome::Fail(error_cx(&e)),
        };
        if !self.degenerate && min_degree(&cod) > self.ev.bound() {
            return Outcome::Skip;
        }
        match self.ev.compare(lhs, rhs) {
            Err(e) => Outcome::Fail(error_cx(&e)),
            Ok(cmp) => match cmp.mismatch {
                Some(m) => Outcome::Fail(Counterexample {
                    domain: m.domain.to_string(),
                    codomain: m.codomain.to_string(),
                    lhs: m.lhs.to_string(),
                    rhs: m.rhs.to_string(),
                    note: None,
                }),
                None if (cmp.rows == 0 || cmp.cols == 0) && !self.degenerate => {
                    Outcome::Fail(placeholder_cx("vacuous comparison: empty basis".into()))
                }
                None => Outcome::Pass,
            },
        }
    }

    fn push(&mut self, name: &str, params: Params, cx: Option<Counterexample>) {
        let status = if cx.is_some() { Status::Fail } else { Status::Pass };
        self.results.push(CheckResult { name: name.to_string(), params, status, counterexample: cx });
    }

    pub fn check(&mut self, name: &str, params: Params, lhs: Term, rhs: Term) {
        match self.judge(&lhs, &rhs) {
            Outcome::Skip => {}
            Outcome::Pass => self.push(name, params, None),
            Outcome::Fail(cx) => self.push(name, params, Some(cx)),
        }
    }

    /// One result for a family of instances, e.g. one per naturality
    /// sample. The first failing instance is named in the note.
    pub fn check_each(&mut self, name: &str, params: Params, cases: Vec<(String, Term, Term)>) {
        let mut any = false;
        for (label, lhs, rhs) in cases {
            match self.judge(&lhs, &rhs) {
                Outcome::Skip => {}
                Outcome::Pass => any = true,
                Outcome::Fail(mut cx) => {
                    cx.note = Some(match cx.note {
                        Some(n) => format!("at {label}: {n}"),
                        None => format!("at {label}"),
                    });
                    self.push(name, params, Some(cx));
                    return;
                }
            }
        }
        if any {
            self.push(name, params, None);
        }
    }
}

fn named(sx: &Syntax, name: &str) -> String {
    match sx.grading {
        Grading::Plain => name.to_string(),
        Grading::Filtered => format!("graded.{name}"),
    }
}

fn params(sx: &Syntax, pairs: &[(&str, usize)]) -> Params {
    match sx.grading {
        Grading::Plain => Params::none(),
        Grading::Filtered => Params::ints(pairs),
    }
}

/// Grade indices to range over: one representative for the plain modality.
fn grades(sx: &Syntax, max: usize) -> Vec<usize> {
    match sx.grading {
        Grading::Plain => vec![1],
        Grading::Filtered => (0..=max).collect(),
    }
}

fn seq(parts: Vec<Term>) -> Term {
    Term::seq(parts)
}

fn ten(parts: Vec<Term>) -> Term {
    Term::tensor(parts)
}

fn id(o: Obj) -> Term {
    Term::id(o)
}

/// `γ_{X,Y}`, or the identity when either side is the unit.
fn swap(x: Obj, y: Obj) -> Term {
    if x == Obj::Unit || y == Obj::Unit {
        id(Obj::tensor(vec![x, y]))
    } else {
        Term::gamma(x, y)
    }
}

fn perm_on(sigma: Permutation, blocks: Vec<Obj>) -> Term {
    if sigma.is_identity() {
        id(Obj::tensor(blocks))
    } else {
        Term::perm(sigma, blocks)
    }
}

fn perms(sum: &FormalPermSum, o: &Obj) -> Term {
    if sum.degree() == 0 {
        id(Obj::Unit)
    } else {
        Term::perm_sum(sum, o)
    }
}

fn sample_pairs(samples: &[Arc<Sample>]) -> Vec<(Arc<Sample>, Arc<Sample>)> {
    let all: Vec<_> = samples
        .iter()
        .flat_map(|f| samples.iter().filter(|g| g.dom == f.cod).map(move |g| (f.clone(), g.clone())))
        .collect();
    if all.len() <= MAX_PAIRS {
        return all;
    }
    let step = all.len() as f64 / MAX_PAIRS as f64;
    (0..MAX_PAIRS).map(|i| all[(i as f64 * step) as usize].clone()).collect()
}

/// `!_n(f;g) = !_n f;!_n g` over sample pairs and `!_n 1 = 1`.
fn functor_laws(ch: &mut Checker, sx: &Syntax, max_n: usize) {
    let samples = ch.fragment().samples();
    let pairs = sample_pairs(&samples);
    for n in grades(sx, max_n) {
        let cases = pairs
            .iter()
            .map(|(f, g)| {
                let (f, g) = (Term::sample(f.clone()), Term::sample(g.clone()));
                let label = format!("{f};{g}");
                (label, sx.fmap(n, seq(vec![f.clone(), g.clone()])), seq(vec![sx.fmap(n, f), sx.fmap(n, g)]))
            })
            .collect();
        ch.check_each(&named(sx, "functor.compose"), params(sx, &[("n", n)]), cases);
        ch.check(&named(sx, "functor.identity"), params(sx, &[("n", n)]), sx.fmap(n, id(sx.a())), id(sx.ba(n)));
    }
}

/// Builds both sides of a naturality square from a sample `f: X -> Y`.
type Square = Box<dyn Fn(&Term, &Obj, &Obj) -> (Term, Term)>;

#[derive(Clone, Copy)]
enum Natural {
    M,
    U,
    Delta,
    Eps,
    D,
    T,
}

fn naturality(ch: &mut Checker, sx: &Syntax, which: Natural, max_n: usize) {
    let samples = ch.fragment().samples();
    let instances: Vec<(String, Params, Square)> = {
        let sx = sx.clone();
        let mut out: Vec<(String, Params, Square)> = Vec::new();
        match which {
            Natural::M => {
                for n in grades(&sx, max_n) {
                    for p in grades(&sx, max_n) {
                        let s = sx.clone();
                        out.push((
                            named(&sx, "natural.m"),
                            params(&sx, &[("n", n), ("p", p)]),
                            Box::new(move |f, x, y| {
                                (
                                    seq(vec![s.fmap(n * p, f.clone()), s.m_at(n, p, y)]),
                                    seq(vec![s.m_at(n, p, x), s.fmap(n, s.fmap(p, f.clone()))]),
                                )
                            }),
                        ));
                    }
                }
            }
            Natural::U => {
                let s = sx.clone();
                out.push((
                    named(&sx, "natural.u"),
                    Params::none(),
                    Box::new(move |f, x, y| {
                        (seq(vec![s.fmap(1, f.clone()), s.u_at(y)]), seq(vec![s.u_at(x), f.clone()]))
                    }),
                ));
            }
            Natural::Delta => {
                for n in grades(&sx, max_n) {
                    for p in grades(&sx, max_n) {
                        let s = sx.clone();
                        out.push((
                            named(&sx, "natural.delta"),
                            params(&sx, &[("n", n), ("p", p)]),
                            Box::new(move |f, x, y| {
                                (
                                    seq(vec![s.fmap(n + p, f.clone()), s.delta_at(n, p, y)]),
                                    seq(vec![
                                        s.delta_at(n, p, x),
                                        ten(vec![s.fmap(n, f.clone()), s.fmap(p, f.clone())]),
                                    ]),
                                )
                            }),
                        ));
                    }
                }
            }
            Natural::Eps => {
                let s = sx.clone();
                out.push((
                    named(&sx, "natural.eps"),
                    Params::none(),
                    Box::new(move |f, x, y| (seq(vec![s.fmap(0, f.clone()), s.eps_at(y)]), s.eps_at(x))),
                ));
            }
            Natural::D => {
                for n in grades(&sx, max_n) {
                    let s = sx.clone();
                    out.push((
                        named(&sx, "natural.d"),
                        params(&sx, &[("n", n)]),
                        Box::new(move |f, x, y| {
                            (
                                seq(vec![ten(vec![s.fmap(n, f.clone()), f.clone()]), s.d_at(n, y)]),
                                seq(vec![s.d_at(n, x), s.fmap(n + 1, f.clone())]),
                            )
                        }),
                    ));
                }
            }
            Natural::T => {
                for a in 0..=max_n {
                    for b in 0..=a {
                        let s = sx.clone();
                        out.push((
                            "filtered.natural".to_string(),
                            Params::ints(&[("a", a), ("b", b)]),
                            Box::new(move |f, x, y| {
                                (
                                    seq(vec![s.fmap(a, f.clone()), Term::ext(ExtGen::T(a, b), y)]),
                                    seq(vec![Term::ext(ExtGen::T(a, b), x), s.fmap(b, f.clone())]),
                                )
                            }),
                        ));
                    }
                }
            }
        }
        out
    };
    for (name, ps, build) in instances {
        let cases = samples
            .iter()
            .map(|smp| {
                let f = Term::sample(smp.clone());
                let (l, r) = build(&f, &smp.dom, &smp.cod);
                (smp.name.clone(), l, r)
            })
            .collect();
        ch.check_each(&name, ps, cases);
    }
}

/// Coassociativity of `m` and the two counit triangles.
fn comonad_laws(ch: &mut Checker, sx: &Syntax, max_n: usize) {
    for n in grades(sx, max_n) {
        for p in grades(sx, max_n) {
            for q in grades(sx, max_n) {
                ch.check(
                    &named(sx, "comonad.coassoc"),
                    params(sx, &[("n", n), ("p", p), ("q", q)]),
                    seq(vec![sx.m(n * p, q), sx.m_at(n, p, &sx.ba(q))]),
                    seq(vec![sx.m(n, p * q), sx.fmap(n, sx.m(p, q))]),
                );
            }
        }
    }
    for r in grades(sx, max_n) {
        ch.check(
            &named(sx, "comonad.counit.left"),
            params(sx, &[("r", r)]),
            seq(vec![sx.m(r, 1), sx.fmap(r, sx.u())]),
            id(sx.ba(r)),
        );
        ch.check(
            &named(sx, "comonad.counit.right"),
            params(sx, &[("r", r)]),
            seq(vec![sx.m(1, r), sx.u_at(&sx.ba(r))]),
            id(sx.ba(r)),
        );
    }
}

fn comonoid_laws(ch: &mut Checker, sx: &Syntax, max_idx: usize) {
    for r in grades(sx, max_idx) {
        for s in grades(sx, max_idx) {
            for t in grades(sx, max_idx) {
                ch.check(
                    &named(sx, "comonoid.coassoc"),
                    params(sx, &[("r", r), ("s", s), ("t", t)]),
                    seq(vec![sx.delta(r + s, t), ten(vec![sx.delta(r, s), id(sx.ba(t))])]),
                    seq(vec![sx.delta(r, s + t), ten(vec![id(sx.ba(r)), sx.delta(s, t)])]),
                );
            }
        }
    }
    ch.check(
        &named(sx, "comonoid.counit"),
        Params::none(),
        seq(vec![sx.delta(0, 0), ten(vec![id(sx.ba(0)), sx.eps()])]),
        id(sx.ba(0)),
    );
    for r in grades(sx, max_idx) {
        for s in grades(sx, max_idx) {
            ch.check(
                &named(sx, "comonoid.cocomm"),
                params(sx, &[("r", r), ("s", s)]),
                seq(vec![sx.delta(r, s), sx.gamma(sx.ba(r), sx.ba(s))]),
                sx.delta(s, r),
            );
        }
    }
}

/// The six axioms linking `m`, `Δ`, `ε` and `∂`.
fn differential_rules(ch: &mut Checker, sx: &Syntax, max_idx: usize) {
    let a = sx.a();
    let g = grades(sx, max_idx);
    for &r in &g {
        for &s in &g {
            for &t in &g {
                ch.check(
                    &named(sx, "rule.m_delta"),
                    params(sx, &[("r", r), ("s", s), ("t", t)]),
                    seq(vec![sx.m(r + s, t), sx.delta_at(r, s, &sx.ba(t))]),
                    seq(vec![sx.delta(r * t, s * t), ten(vec![sx.m(r, t), sx.m(s, t)])]),
                );
            }
        }
    }
    for &r in &g {
        ch.check(
            &named(sx, "rule.m_eps"),
            params(sx, &[("r", r)]),
            seq(vec![sx.m(0, r), sx.eps_at(&sx.ba(r))]),
            sx.eps(),
        );
    }
    ch.check(&named(sx, "rule.linear"), Params::none(), seq(vec![sx.d(0), sx.u()]), ten(vec![sx.eps(), id(a.clone())]));
    for &r in &g {
        for &s in &g {
            let lhs = seq(vec![sx.d(r + s + 1), sx.delta(r + 1, s + 1)]);
            let first = seq(vec![ten(vec![sx.delta(r + 1, s), id(a.clone())]), ten(vec![id(sx.ba(r + 1)), sx.d(s)])]);
            let second = seq(vec![
                ten(vec![sx.delta(r, s + 1), id(a.clone())]),
                ten(vec![id(sx.ba(r)), sx.gamma(sx.ba(s + 1), a.clone())]),
                ten(vec![sx.d(r), id(sx.ba(s + 1))]),
            ]);
            let rhs = Term::sum(
                vec![first, second],
                Obj::tensor(vec![sx.ba(r + s + 1), a.clone()]),
                Obj::tensor(vec![sx.ba(r + 1), sx.ba(s + 1)]),
            );
            ch.check(&named(sx, "rule.product"), params(sx, &[("r", r), ("s", s)]), lhs, rhs);
        }
    }
    for &s in &g {
        for &t in &g {
            ch.check(
                &named(sx, "rule.chain"),
                params(sx, &[("s", s), ("t", t)]),
                seq(vec![sx.d(s * t + s + t), sx.m(s + 1, t + 1)]),
                seq(vec![
                    ten(vec![sx.delta(s * t + s, t), id(a.clone())]),
                    ten(vec![sx.m(s, t + 1), sx.d(t)]),
                    sx.d_at(s, &sx.ba(t + 1)),
                ]),
            );
        }
    }
    for &r in &g {
        ch.check(
            &named(sx, "rule.symmetry"),
            params(sx, &[("r", r)]),
            seq(vec![
                ten(vec![id(sx.ba(r)), sx.gamma(a.clone(), a.clone())]),
                ten(vec![sx.d(r), id(a.clone())]),
                sx.d(r + 1),
            ]),
            seq(vec![ten(vec![sx.d(r), id(a.clone())]), sx.d(r + 1)]),
        );
    }
}

pub(crate) fn comonad_into(ch: &mut Checker, max_n: usize) {
    let base = ch.fragment().base();
    let plain = Syntax::new(Grading::Plain, base.clone());
    comonad_laws(ch, &plain, max_n);
    functor_laws(ch, &plain, max_n);
    naturality(ch, &plain, Natural::M, max_n);
    naturality(ch, &plain, Natural::U, max_n);
    comonad_laws(ch, &Syntax::new(Grading::Filtered, base), max_n);
}

pub(crate) fn comonoid_and_rules_into(ch: &mut Checker, max_idx: usize) {
    let base = ch.fragment().base();
    let plain = Syntax::new(Grading::Plain, base.clone());
    comonoid_laws(ch, &plain, max_idx);
    differential_rules(ch, &plain, max_idx);
    naturality(ch, &plain, Natural::Delta, max_idx);
    naturality(ch, &plain, Natural::Eps, max_idx);
    naturality(ch, &plain, Natural::D, max_idx);
    let graded = Syntax::new(Grading::Filtered, base);
    comonoid_laws(ch, &graded, max_idx);
    differential_rules(ch, &graded, max_idx);
}

pub(crate) fn higher_order_into(ch: &mut Checker, max_n: usize) {
    let a = ch.fragment().base();
    let ba = Obj::bang(a.clone());
    let bba = Obj::bang(ba.clone());
    let d = |n: usize| Term::d_pow(n, &a);
    let ap = |n: usize| Obj::power(&a, n);
    let bp = |n: usize| Obj::power(&ba, n);
    let gen = |g: Gen| Term::gen(g, &a);

    ch.check(
        "higher.d_eps",
        Params::none(),
        seq(vec![gen(Gen::D), gen(Gen::Eps)]),
        Term::zero(Obj::tensor(vec![ba.clone(), a.clone()]), Obj::Unit),
    );
    ch.check(
        "higher.d2_u",
        Params::none(),
        seq(vec![d(2), gen(Gen::U)]),
        Term::zero(Obj::tensor(vec![ba.clone(), ap(2)]), a.clone()),
    );
    for n in 0..=max_n {
        ch.check("higher.dn_closed", Params::ints(&[("n", n)]), gen(Gen::Dn(n)), d(n));
    }
    for k in 0..max_n {
        ch.check(
            "higher.d_reverse",
            Params::ints(&[("k", k)]),
            d(k + 1),
            seq(vec![ten(vec![gen(Gen::D), id(ap(k))]), d(k)]),
        );
    }
    for total in 0..=max_n {
        for k in 0..=total {
            let l = total - k;
            ch.check(
                "higher.d_split",
                Params::ints(&[("k", k), ("l", l)]),
                d(total),
                seq(vec![ten(vec![d(k), id(ap(l))]), d(l)]),
            );
        }
    }
    for n in 1..=max_n {
        ch.check(
            "higher.delta_assoc",
            Params::ints(&[("n", n)]),
            Term::delta_pow(n + 1, &a),
            seq(vec![gen(Gen::Delta), ten(vec![Term::delta_pow(n, &a), id(ba.clone())])]),
        );
    }
    for n in 0..=max_n {
        let mut parts = Vec::new();
        for k in 0..=n {
            let sum = match unsh(n, k) {
                Ok(s) => s,
                Err(e) => {
                    ch.push("higher.product", Params::ints(&[("n", n)]), Some(error_cx(&e)));
                    return;
                }
            };
            parts.push(seq(vec![
                ten(vec![gen(Gen::Delta), perms(&sum, &a)]),
                ten(vec![id(ba.clone()), swap(ba.clone(), ap(k)), id(ap(n - k))]),
                ten(vec![d(k), d(n - k)]),
            ]));
        }
        let rhs = Term::sum(parts, Obj::tensor(vec![ba.clone(), ap(n)]), bp(2));
        ch.check("higher.product", Params::ints(&[("n", n)]), seq(vec![d(n), gen(Gen::Delta)]), rhs);
    }
    for n in 1..=max_n {
        let parts = (1..=n)
            .map(|i| {
                seq(vec![
                    ten(vec![Term::delta_pow(n, &a), id(a.clone())]),
                    ten(vec![id(bp(i)), swap(bp(n - i), a.clone())]),
                    ten(vec![id(bp(i - 1)), gen(Gen::D), id(bp(n - i))]),
                ])
            })
            .collect();
        let rhs = Term::sum(parts, Obj::tensor(vec![ba.clone(), a.clone()]), bp(n));
        ch.check("higher.product2", Params::ints(&[("n", n)]), seq(vec![gen(Gen::D), Term::delta_pow(n, &a)]), rhs);
    }
    for n in 0..=max_n {
        let parts = partitions(n)
            .iter()
            .map(|pi| {
                let k = pi.len();
                let mut blocks = vec![ba.clone(); k];
                blocks.extend(std::iter::repeat_n(a.clone(), n));
                let mut derivs = vec![gen(Gen::M)];
                derivs.extend(pi.block_sizes().into_iter().map(d));
                seq(vec![
                    ten(vec![Term::delta_pow(1 + k, &a), id(ap(n))]),
                    ten(vec![id(ba.clone()), perm_on(tau_pi(pi), blocks)]),
                    ten(derivs),
                    Term::d_pow(k, &ba),
                ])
            })
            .collect();
        let rhs = Term::sum(parts, Obj::tensor(vec![ba.clone(), ap(n)]), bba.clone());
        ch.check("higher.faa_di_bruno", Params::ints(&[("n", n)]), seq(vec![d(n), gen(Gen::M)]), rhs);
    }
    for n in 2..=max_n {
        for i in 1..=n {
            for j in i + 1..=n {
                let tau = Permutation::transposition(n, i, j).expect("indices in range");
                ch.check(
                    "higher.interchange",
                    Params::ints(&[("n", n), ("i", i), ("j", j)]),
                    seq(vec![ten(vec![id(ba.clone()), Term::perm(tau, vec![a.clone(); n])]), d(n)]),
                    d(n),
                );
            }
        }
    }
}

/// The kept basis of `!_{≤n}A` three ways: the model's dense solve, the
/// engine's lazy row test, and the model's closed form.
fn kept_bases(ch: &mut Checker, max_n: usize) {
    let frag = ch.fragment();
    let a = frag.base();
    let results: Vec<(usize, Option<Counterexample>)> = (0..=max_n)
        .map(|n| {
            let dense = match frag.dense_kept(n) {
                Ok(v) => v,
                Err(e) => return (n, Some(error_cx(&e))),
            };
            let lazy = match ch.ev.basis(&Obj::bang_leq(n, a.clone())) {
                Ok(v) => v,
                Err(e) => return (n, Some(error_cx(&e))),
            };
            let all = match ch.ev.basis(&Obj::bang(a.clone())) {
                Ok(v) => v,
                Err(e) => return (n, Some(error_cx(&e))),
            };
            for c in all.iter() {
                let by_dense = dense.contains(c);
                let by_lazy = lazy.contains(c);
                let by_formula = frag.expected_kept(n, c);
                if by_dense != by_formula || by_lazy != by_formula {
                    let word = |b: bool| if b { "kept" } else { "dropped" }.to_string();
                    return (
                        n,
                        Some(Counterexample {
                            domain: c.to_string(),
                            codomain: format!("!<={n}A"),
                            lhs: word(by_dense),
                            rhs: word(by_formula),
                            note: Some(format!("row test says {}", word(by_lazy))),
                        }),
                    );
                }
            }
            let stray: Option<&Elem> = dense.iter().find(|e| !all.contains(e));
            (n, stray.map(|e| placeholder_cx(format!("dense solve keeps {e}, which is not in !A"))))
        })
        .collect();
    for (n, cx) in results {
        ch.push("extract.kept", Params::ints(&[("n", n)]), cx);
    }
}

pub(crate) fn extraction_into(ch: &mut Checker, max_n: usize) {
    let a = ch.fragment().base();
    let ext = |g: ExtGen| Term::ext(g, &a);
    let gen = |g: Gen| Term::gen(g, &a);
    kept_bases(ch, max_n);

    let graded = Syntax::new(Grading::Filtered, a.clone());
    functor_laws(ch, &graded, max_n);
    for which in [Natural::M, Natural::U, Natural::Delta, Natural::Eps, Natural::D] {
        naturality(ch, &graded, which, max_n);
    }

    for n in 0..=max_n {
        for p in 0..=max_n {
            ch.check(
                "morphism.m",
                Params::ints(&[("n", n), ("p", p)]),
                seq(vec![gen(Gen::M), Term::s_bullet(n, p, &a)]),
                seq(vec![ext(ExtGen::S(n * p)), ext(ExtGen::M(n, p))]),
            );
        }
    }
    ch.check("morphism.u", Params::none(), seq(vec![ext(ExtGen::S(1)), ext(ExtGen::U)]), gen(Gen::U));
    for n in 0..=max_n {
        for p in 0..=max_n {
            ch.check(
                "morphism.delta",
                Params::ints(&[("n", n), ("p", p)]),
                seq(vec![gen(Gen::Delta), ten(vec![ext(ExtGen::S(n)), ext(ExtGen::S(p))])]),
                seq(vec![ext(ExtGen::S(n + p)), ext(ExtGen::Delta(n, p))]),
            );
        }
    }
    ch.check("morphism.eps", Params::none(), seq(vec![ext(ExtGen::S(0)), ext(ExtGen::Eps)]), gen(Gen::Eps));
    for n in 0..=max_n {
        ch.check(
            "morphism.d",
            Params::ints(&[("n", n)]),
            seq(vec![ten(vec![ext(ExtGen::S(n)), id(a.clone())]), ext(ExtGen::D(n))]),
            seq(vec![gen(Gen::D), ext(ExtGen::S(n + 1))]),
        );
    }

    for x in 0..=max_n {
        ch.check(
            "filtered.t_identity",
            Params::ints(&[("a", x)]),
            ext(ExtGen::T(x, x)),
            id(Obj::bang_leq(x, a.clone())),
        );
    }
    for x in 0..=max_n {
        for y in 0..=x {
            for z in 0..=y {
                ch.check(
                    "filtered.t_compose",
                    Params::ints(&[("a", x), ("b", y), ("c", z)]),
                    seq(vec![ext(ExtGen::T(x, y)), ext(ExtGen::T(y, z))]),
                    ext(ExtGen::T(x, z)),
                );
            }
        }
    }
    for x in 0..=max_n {
        for y in 0..=max_n {
            for z in 0..=x {
                for w in 0..=y {
                    let ps = Params::ints(&[("a", x), ("b", y), ("c", z), ("d", w)]);
                    ch.check(
                        "filtered.delta",
                        ps.clone(),
                        seq(vec![ext(ExtGen::T(x + y, z + w)), ext(ExtGen::Delta(z, w))]),
                        seq(vec![ext(ExtGen::Delta(x, y)), ten(vec![ext(ExtGen::T(x, z)), ext(ExtGen::T(y, w))])]),
                    );
                    ch.check(
                        "filtered.m",
                        ps,
                        seq(vec![ext(ExtGen::T(x * y, z * w)), ext(ExtGen::M(z, w))]),
                        seq(vec![ext(ExtGen::M(x, y)), Term::t_bullet(x, z, y, w, &a)]),
                    );
                }
            }
        }
    }
    for x in 0..=max_n {
        for y in 0..=x {
            ch.check(
                "filtered.d",
                Params::ints(&[("a", x), ("b", y)]),
                seq(vec![ten(vec![ext(ExtGen::T(x, y)), id(a.clone())]), ext(ExtGen::D(y))]),
                seq(vec![ext(ExtGen::D(x)), ext(ExtGen::T(x + 1, y + 1))]),
            );
        }
    }
    naturality(ch, &graded, Natural::T, max_n);
    for n in 0..=max_n {
        for p in 0..=n {
            ch.check(
                "filtered.s_t",
                Params::ints(&[("n", n), ("p", p)]),
                seq(vec![ext(ExtGen::S(n)), ext(ExtGen::T(n, p))]),
                ext(ExtGen::S(p)),
            );
        }
    }
}

/// Comonad laws of `!` and of the extracted `!_{≤n}`, with naturality of
/// `m` and `u`.
pub fn check_comonad(frag: &dyn ModelFragment, max_n: usize) -> Vec<CheckResult> {
    let mut ch = Checker::new(frag);
    comonad_into(&mut ch, max_n);
    ch.finish()
}

/// Comonoid laws and the six differential axioms, plain and graded.
pub fn check_comonoid_and_rules(frag: &dyn ModelFragment, max_idx: usize) -> Vec<CheckResult> {
    let mut ch = Checker::new(frag);
    comonoid_and_rules_into(&mut ch, max_idx);
    ch.finish()
}

/// Consequences of the axioms for iterated derivatives.
pub fn check_higher_order(frag: &dyn ModelFragment, max_n: usize) -> Vec<CheckResult> {
    let mut ch = Checker::new(frag);
    higher_order_into(&mut ch, max_n);
    ch.finish()
}

/// The extracted filtered modality: kept bases, functoriality and
/// naturality, the maps `s_n` as morphisms, and the transitions `t`.
pub fn check_extraction(frag: &dyn ModelFragment, max_n: usize) -> Vec<CheckResult> {
    let mut ch = Checker::new(frag);
    extraction_into(&mut ch, max_n);
    ch.finish()
}
