//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion does.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use dmod_core::combinatorics::{binomial, chi, partitions, rho, unsh, unsh_recursion, unshuffles};
use dmod_core::engine::{
    check_comonad, check_comonoid_and_rules, check_extraction, check_higher_order, run_suite, CheckResult, ParamValue,
    RunConfig,
};
use dmod_core::fragment::{ModelFragment, Obj};
use dmod_core::linalg::{Elem, ScalarDomain};
use dmod_core::poly_model::{
    fragment_as_model, kernel_slice, monomial_kernel_predicate, taylor_reconstruct, Monomial, PolyFragment, Polynomial,
};
use dmod_core::rel_model::{enumerate_basis, RelFragment};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_pass(label: &str, rs: &[CheckResult]) -> Outcome {
    match rs.iter().find(|r| !r.passed()) {
        None => Ok(()),
        Some(r) => Err(format!("{label}: {r} {:?}", r.counterexample)),
    }
}

fn int(r: &CheckResult, key: &str) -> Option<usize> {
    match r.params.get(key) {
        Some(ParamValue::Int(v)) => Some(*v),
        _ => None,
    }
}

/// Names that must occur among passing results.
fn require(rs: &[CheckResult], names: &[&str]) -> Outcome {
    for name in names {
        ensure(rs.iter().any(|r| r.name == *name && r.passed()), || format!("no passing {name}"))?;
    }
    Ok(())
}

/// A passing instance of `name` whose integer parameters match `want`.
fn require_instance(rs: &[CheckResult], name: &str, want: &[(&str, usize)]) -> Outcome {
    let found = rs.iter().any(|r| r.name == name && r.passed() && want.iter().all(|(k, v)| int(r, k) == Some(*v)));
    ensure(found, || format!("no passing {name} {want:?}"))
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn rel_modality_axioms() -> Outcome {
    let start = Instant::now();
    for size in [1, 2] {
        let frag = RelFragment::new(size, 4).map_err(|e| e.to_string())?;
        let mut rs = check_comonad(&frag, 2);
        rs.extend(check_comonoid_and_rules(&frag, 2));
        all_pass(&format!("size {size}"), &rs)?;
        require(
            &rs,
            &[
                "comonad.coassoc",
                "comonad.counit.left",
                "comonad.counit.right",
                "comonoid.coassoc",
                "comonoid.counit",
                "comonoid.cocomm",
                "rule.m_delta",
                "rule.m_eps",
                "rule.linear",
                "rule.product",
                "rule.chain",
                "rule.symmetry",
                "functor.compose",
                "functor.identity",
                "natural.m",
                "natural.u",
                "natural.delta",
                "natural.eps",
                "natural.d",
            ],
        )?;
    }
    within(start, Duration::from_secs(60))
}

fn higher_order_rules() -> Outcome {
    for size in [1, 2] {
        let frag = RelFragment::new(size, 4).map_err(|e| e.to_string())?;
        let rs = check_higher_order(&frag, 4);
        all_pass(&format!("rel size {size}"), &rs)?;
        require(&rs, &["higher.d_eps", "higher.d2_u"])?;
        for n in 0..=4 {
            require_instance(&rs, "higher.product", &[("n", n)])?;
        }
        for n in 1..=3 {
            require_instance(&rs, "higher.product2", &[("n", n)])?;
        }
        for n in 0..=3 {
            require_instance(&rs, "higher.faa_di_bruno", &[("n", n)])?;
        }
        for n in 2..=3 {
            for i in 1..=n {
                for j in i + 1..=n {
                    require_instance(&rs, "higher.interchange", &[("n", n), ("i", i), ("j", j)])?;
                }
            }
        }
    }
    ensure(partitions(3).len() == 5, || "the n = 3 sum should have 5 terms".into())?;
    for (vars, c, d) in [(1, 0, 4), (2, 0, 3), (1, 2, 4), (1, 3, 5)] {
        let field = ScalarDomain::field_of_characteristic(c).map_err(|e| e.to_string())?;
        let frag = PolyFragment::new(vars, field, d).map_err(|e| e.to_string())?;
        let rs = check_higher_order(fragment_as_model(&frag), 2);
        let constant: Vec<CheckResult> =
            rs.into_iter().filter(|r| r.name == "higher.d_eps" || r.name == "higher.d2_u").collect();
        ensure(constant.len() == 2, || format!("poly v={vars} char {c}: constant rules missing"))?;
        all_pass(&format!("poly v={vars} char {c}"), &constant)?;
    }
    Ok(())
}

fn rel_extraction() -> Outcome {
    for size in [1, 2] {
        let frag = RelFragment::new(size, 3).map_err(|e| e.to_string())?;
        let all = enumerate_basis(&Obj::bang(frag.base()), 3).map_err(|e| e.to_string())?;
        for n in 0..=2 {
            let ext = frag.extract(n).map_err(|e| e.to_string())?;
            let kept: Vec<&Elem> = ext.kept.iter().collect();
            let small: Vec<&Elem> = all.iter().filter(|e| e.as_bag().is_some_and(|m| m.cardinality() <= n)).collect();
            ensure(kept == small, || format!("size {size} n={n}: kept {kept:?}, expected {small:?}"))?;
        }
        let mut rs = check_extraction(&frag, 2);
        let graded: Vec<CheckResult> = check_comonad(&frag, 2)
            .into_iter()
            .chain(check_comonoid_and_rules(&frag, 2))
            .filter(|r| r.name.starts_with("graded."))
            .collect();
        rs.extend(graded);
        all_pass(&format!("size {size}"), &rs)?;
        require(
            &rs,
            &[
                "extract.kept",
                "graded.functor.compose",
                "graded.functor.identity",
                "graded.natural.eps",
                "graded.natural.u",
                "graded.natural.delta",
                "graded.natural.m",
                "graded.natural.d",
                "graded.comonad.coassoc",
                "graded.comonad.counit.left",
                "graded.comonad.counit.right",
                "graded.comonoid.coassoc",
                "graded.comonoid.counit",
                "graded.comonoid.cocomm",
                "graded.rule.m_delta",
                "graded.rule.m_eps",
                "graded.rule.linear",
                "graded.rule.product",
                "graded.rule.chain",
                "graded.rule.symmetry",
                "morphism.m",
                "morphism.u",
                "morphism.delta",
                "morphism.eps",
                "morphism.d",
                "filtered.t_identity",
                "filtered.t_compose",
                "filtered.delta",
                "filtered.m",
                "filtered.d",
                "filtered.natural",
            ],
        )?;
        for n in 0..=2 {
            for p in 0..=n {
                require_instance(&rs, "filtered.s_t", &[("n", n), ("p", p)])?;
            }
            for q in 0..=2 {
                require_instance(&rs, "graded.comonad.coassoc", &[("n", n), ("p", 1), ("q", q)])?;
            }
        }
    }
    Ok(())
}

fn derivative_power_lemmas() -> Outcome {
    let rel = RelFragment::new(2, 4).map_err(|e| e.to_string())?;
    let q2 = PolyFragment::new(2, ScalarDomain::Rational, 4).map_err(|e| e.to_string())?;
    let f3 =
        PolyFragment::new(1, ScalarDomain::prime_field(3).map_err(|e| e.to_string())?, 6).map_err(|e| e.to_string())?;
    let frags: [(&str, &dyn ModelFragment); 3] =
        [("rel", &rel), ("poly Q", fragment_as_model(&q2)), ("poly F3", fragment_as_model(&f3))];
    for (label, frag) in frags {
        let rs: Vec<CheckResult> = check_higher_order(frag, 4)
            .into_iter()
            .filter(|r| matches!(r.name.as_str(), "higher.dn_closed" | "higher.d_reverse" | "higher.d_split"))
            .collect();
        all_pass(label, &rs)?;
        for n in 0..=4 {
            require_instance(&rs, "higher.dn_closed", &[("n", n)])?;
        }
        for k in 0..4 {
            require_instance(&rs, "higher.d_reverse", &[("k", k)])?;
        }
        for k in 0..=4 {
            for l in 0..=4 - k {
                require_instance(&rs, "higher.d_split", &[("k", k), ("l", l)])?;
            }
        }
    }
    Ok(())
}

fn bell_numbers(n: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    let mut bell = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        bell.push(next[0]);
        row = next;
    }
    bell
}

fn combinatorics() -> Outcome {
    let start = Instant::now();
    for n in 1..=6 {
        for k in 0..n {
            let lhs = unsh(n + 1, k + 1).map_err(|e| e.to_string())?;
            let rhs = unsh_recursion(n, k).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("unshuffle recursion fails at n={n} k={k}"))?;
        }
    }
    for n in 0..=7 {
        for k in 0..=n {
            let count = unshuffles(n, k).map_err(|e| e.to_string())?.len() as u128;
            ensure(count == binomial(n as u64, k as u64), || format!("|Unsh({n},{k})| = {count}"))?;
        }
    }
    for n in 0..=6 {
        for pi in partitions(n) {
            let s = pi.block_sizes();
            for i in 1..=pi.len() + 1 {
                let theta = rho(&pi, i).map_err(|e| e.to_string())?;
                let back = chi(&theta).map_err(|e| e.to_string())?;
                ensure(back == (pi.clone(), i), || format!("chi(rho({pi:?}, {i})) = {back:?}"))?;
                let t = theta.block_sizes();
                let ok = if i == 1 {
                    t.len() == s.len() + 1 && t[0] == 1 && (1..t.len()).all(|r| t[r] == s[r - 1])
                } else {
                    t.len() == s.len() && t[i - 2] == s[i - 2] + 1 && (0..t.len()).all(|r| r == i - 2 || t[r] == s[r])
                };
                ensure(ok, || format!("block sizes of rho({pi:?}, {i}) are {t:?}"))?;
            }
        }
        for theta in partitions(n + 1) {
            let (pi, i) = chi(&theta).map_err(|e| e.to_string())?;
            ensure(rho(&pi, i).map_err(|e| e.to_string())? == theta, || format!("rho(chi({theta:?})) differs"))?;
        }
    }
    let bell = bell_numbers(8);
    for (n, b) in bell.iter().enumerate() {
        let count = partitions(n).len() as u64;
        ensure(count == *b, || format!("|H({n})| = {count}, Bell number {b}"))?;
    }
    within(start, Duration::from_secs(30))
}

fn dense_monomials(frag: &PolyFragment, r: usize) -> Result<BTreeSet<Monomial>, String> {
    let kept = fragment_as_model(frag).dense_kept(r).map_err(|e| e.to_string())?;
    kept.iter().map(|e| Monomial::from_elem(e).ok_or_else(|| format!("{e} is not a monomial"))).collect()
}

fn char_zero_slices() -> Outcome {
    for vars in [1, 2] {
        let frag = PolyFragment::new(vars, ScalarDomain::Rational, 8).map_err(|e| e.to_string())?;
        let all = frag.monomials().map_err(|e| e.to_string())?;
        for r in 0..=4 {
            let expected: BTreeSet<Monomial> = all.iter().filter(|m| m.degree() <= r).cloned().collect();
            let by_predicate: BTreeSet<Monomial> =
                all.iter().filter(|m| monomial_kernel_predicate(m, r, ScalarDomain::Rational)).cloned().collect();
            let by_elimination = dense_monomials(&frag, r)?;
            let slice: BTreeSet<Monomial> = kernel_slice(&frag, r).map_err(|e| e.to_string())?.into_iter().collect();
            ensure(by_predicate == by_elimination, || format!("v={vars} r={r}: criteria disagree"))?;
            ensure(slice == expected && by_predicate == expected, || {
                format!("v={vars} r={r}: slice is not the degree <= {r} monomials")
            })?;
        }
    }
    Ok(())
}

fn char_p_one_variable() -> Outcome {
    for p in [2u64, 3, 5] {
        let field = ScalarDomain::prime_field(p).map_err(|e| e.to_string())?;
        let d = 3 * p as usize;
        let frag = PolyFragment::new(1, field, d).map_err(|e| e.to_string())?;
        for r in 0..p as usize {
            let got: Vec<usize> =
                kernel_slice(&frag, r).map_err(|e| e.to_string())?.iter().map(|m| m.degree()).collect();
            let want: Vec<usize> = (0..=d).filter(|e| e % p as usize <= r).collect();
            ensure(got == want, || format!("p={p} r={r}: exponents {got:?}, expected {want:?}"))?;
        }
    }
    let frag = PolyFragment::new(1, ScalarDomain::prime_field(5).unwrap(), 12).map_err(|e| e.to_string())?;
    let words: Vec<String> = kernel_slice(&frag, 1).map_err(|e| e.to_string())?.iter().map(|m| m.render(1)).collect();
    ensure(words.join(" ") == "1 x x^5 x^6 x^10 x^11", || format!("p=5 r=1 D=12 gives {words:?}"))
}

fn char_p_many_variables() -> Outcome {
    for (p, n) in [(2u64, 1u32), (2, 2), (3, 1)] {
        let field = ScalarDomain::prime_field(p).map_err(|e| e.to_string())?;
        let d = 2 * p as usize * n as usize;
        let frag = PolyFragment::new(n, field, d).map_err(|e| e.to_string())?;
        let all = frag.monomials().map_err(|e| e.to_string())?;
        let r = p as usize * n as usize - 1;
        let slice = kernel_slice(&frag, r).map_err(|e| e.to_string())?;
        ensure(slice.len() == all.len(), || format!("p={p} n={n} r={r}: {} of {} monomials", slice.len(), all.len()))?;
        let mut i = 0;
        while p as usize * i <= d {
            let mut exps = vec![0; n as usize];
            exps[0] = p as usize * i;
            let m = Monomial::from_exponents(&exps);
            ensure(monomial_kernel_predicate(&m, 0, field), || {
                format!("x1^{} has a nonzero derivative", p as usize * i)
            })?;
            i += 1;
        }
    }
    for c in [0u64, 2, 3, 5] {
        let field = ScalarDomain::field_of_characteristic(c).map_err(|e| e.to_string())?;
        for r in 0..=3 {
            let mut exps = vec![1; r + 1];
            exps.push(0);
            let m = Monomial::from_exponents(&exps);
            ensure(!monomial_kernel_predicate(&m, r, field), || {
                format!("char {c}: x1...x{} is killed by derivatives of order {}", r + 1, r + 1)
            })?;
        }
    }
    Ok(())
}

fn random_polynomial(rng: &mut ChaCha8Rng) -> Polynomial {
    let vars = rng.gen_range(1..=3u32);
    let terms = rng.gen_range(0..=6);
    let mut spec: Vec<(Vec<usize>, i64)> = Vec::new();
    for _ in 0..terms {
        let deg = rng.gen_range(0..=6usize);
        let mut exps = vec![0; vars as usize];
        for _ in 0..deg {
            exps[rng.gen_range(0..vars as usize)] += 1;
        }
        spec.push((exps, rng.gen_range(-9..=9)));
    }
    let refs: Vec<(&[usize], i64)> = spec.iter().map(|(e, c)| (e.as_slice(), *c)).collect();
    Polynomial::from_ints(ScalarDomain::Rational, vars, &refs).expect("valid polynomial")
}

fn taylor_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for k in 0..200 {
        let f = random_polynomial(&mut rng);
        ensure(f.degree().unwrap_or(0) <= 6, || "degree bound exceeded".into())?;
        let g = taylor_reconstruct(&f).map_err(|e| e.to_string())?;
        ensure(g == f, || format!("sample {k}: reconstruction differs"))?;
    }
    Ok(())
}

fn mutation_sensitivity() -> Outcome {
    let space = RelFragment::new(2, 3).map_err(|e| e.to_string())?.mutation_space();
    ensure(space.len() >= 20, || "mutation space too small".into())?;
    let step = space.len() / 20;
    for k in 0..20 {
        let mu = space[k * step];
        let mut cfg = RunConfig::rel(2, 3, 2);
        cfg.mutation = Some(mu);
        let report = run_suite(&cfg).map_err(|e| e.to_string())?;
        let first = report.failures().next().ok_or_else(|| format!("{mu:?} went undetected"))?;
        let cx = first.counterexample.as_ref().ok_or_else(|| format!("{first} has no counterexample"))?;
        ensure(cx.domain != "-", || format!("{first} names no basis element"))?;
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("rel modality axioms", rel_modality_axioms),
        ("higher-order rules", higher_order_rules),
        ("extraction in rel", rel_extraction),
        ("iterated derivative lemmas", derivative_power_lemmas),
        ("combinatorics", combinatorics),
        ("characteristic zero slices", char_zero_slices),
        ("characteristic p, one variable", char_p_one_variable),
        ("characteristic p, several variables", char_p_many_variables),
        ("taylor reconstruction", taylor_identity),
        ("mutation sensitivity", mutation_sensitivity),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(()) => println!("PASS {} {name} ({:.2?})", i + 1, start.elapsed()),
            Err(msg) => {
                println!("FAIL {} {name}: {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
