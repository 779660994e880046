//! Symmetric polynomials and elementarity.

use itertools::Itertools;

use super::generate::{random_poly, symmetric_family};
use super::{Run, Stop, Step};
use crate::elementarity::{
    decompose, elementary_exponents, frobenius_from_2elementarity_witness, verify_decomposition,
    Regime,
};
use crate::error::Error;
use crate::poly::{elementary, format_poly, is_symmetric_expr, minsym, sym_operator, Monomial, Poly};
use crate::predicates::{
    frobenius_at, frobenius_witness_exponent, is_2_cancellative, is_frobenius, is_idempotent,
    is_linear_order, is_supertropical, is_upper_bound, search,
};
use crate::report::{PropertyReport, Witness};
use crate::semiring::{nat_embed, pow, rng, unit, Element, Strategy};

/// Largest exponent used by the factoring lemmas.
const MAX_FACTOR_EXP: u32 = 4;

fn factor_bound(run: &Run) -> u32 {
    run.budget.max_degree.clamp(1, MAX_FACTOR_EXP)
}

/// Non-increasing sequences of length `len` with entries in `lo..=hi`.
fn nonincreasing(len: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|prefix: Vec<u32>| {
                let top = prefix.last().copied().unwrap_or(hi);
                (lo..=top).map(move |d| {
                    let mut next = prefix.clone();
                    next.push(d);
                    next
                })
            })
            .collect()
    })
}

fn padded(d: &[u32], n: usize) -> Vec<u32> {
    let mut v = d.to_vec();
    v.resize(n, 0);
    v
}

fn pure(x: &dyn crate::semiring::Semiring, exps: Vec<u32>) -> Step<Poly> {
    let n = exps.len();
    Ok(Poly::new(n, vec![Monomial::new(unit(x)?, exps)])?)
}

/// Absorbs a pointwise report without a trace line; failure is a violation.
fn quietly(run: &mut Run, label: &str, report: PropertyReport) -> Step {
    run.absorb(&report);
    match report.verdict.clone() {
        crate::report::Verdict::Fails(w) => Err(run.violation(label, w)),
        _ => Ok(()),
    }
}

/// `lhs(pt) = rhs(pt)` at every point of `strategy`.
fn pointwise<F>(run: &mut Run, label: &str, n: usize, lhs: &Poly, rhs: F) -> Step
where
    F: Fn(&[Element]) -> crate::error::Result<Element>,
{
    let x = run.x;
    let strategy = run.strategy();
    let report = search(label, x, &strategy, n, |pt| {
        let (l, r) = (lhs.evaluate(x, pt)?, rhs(pt)?);
        Ok((l != r).then(|| format!("lhs = {} but rhs = {}", x.format(&l), x.format(&r))))
    })?;
    quietly(run, label, report)
}

/// Decomposes a seeded symmetric family in each variable count and verifies every result.
fn round_trip(run: &mut Run, regime: Regime, ns: impl IntoIterator<Item = usize>) -> Step {
    let x = run.x;
    let strategy = run.strategy();
    let b = run.budget;
    for n in ns {
        let family = symmetric_family(x, n, b.max_degree, b.polys, b.seed.wrapping_add(n as u64))?;
        for p in &family {
            match decompose(x, p, regime, &strategy) {
                Ok(d) => run.absorb(&d.report),
                Err(Error::VerificationFailed(report)) => {
                    let w = report.witness().cloned().unwrap_or(Witness {
                        elements: vec![],
                        description: "verification failed".into(),
                    });
                    return Err(Stop::Violated(Witness {
                        description: format!(
                            "{regime} decomposition of {}: {}",
                            format_poly(x, p),
                            w.description
                        ),
                        elements: w.elements,
                    }));
                }
                Err(e) => return Err(e.into()),
            }
        }
        run.note(format!("{regime}: {} polynomials in {n} variables verified", family.len()));
    }
    Ok(())
}

/// Re-evaluates a Frobenius failure reported by a witness.
fn replay_frobenius_failure(run: &mut Run, w: &Witness) -> Step {
    let x = run.x;
    let n = frobenius_witness_exponent(w)
        .ok_or_else(|| run.fail(w.elements.clone(), "witness carries no exponent"))?;
    let ok = w.elements.len() == 2 && !frobenius_at(x, &w.elements[0], &w.elements[1], n);
    run.ensure(ok, w.elements.clone(), format!("Frobenius failure at n={n} does not replay"))
}

/// The canonical rewriting of `x^k + y^k` must fail, and its witness must be a
/// genuine Frobenius violation.
fn not_two_elementary(run: &mut Run, n_max: u32, strategy: &Strategy) -> Step {
    let report = frobenius_from_2elementarity_witness(run.x, n_max, strategy)?;
    let w = run.expect_failure("x^k + y^k = E1^k", report)?;
    replay_frobenius_failure(run, &w)
}

pub(crate) fn frob_2elem(run: &mut Run) -> Step {
    let x = run.x;
    unit(x)?;
    let d = x.declared();
    let n_max = run.budget.frob_n;
    let strategy = run.strategy();
    if run.property("frobenius", d.frobenius, |s| is_frobenius(x, n_max, s))? {
        round_trip(run, Regime::TwoVarFrobenius, [2])?;
        let report = frobenius_from_2elementarity_witness(x, n_max, &strategy)?;
        return run.conclude("x^k + y^k = E1^k", report);
    }
    let ub = run.property("upper-bound", d.upper_bound, |s| is_upper_bound(x, s))?;
    run.require(ub, "neither Frobenius nor upper-bound")?;
    not_two_elementary(run, n_max, &strategy)
}

pub(crate) fn sym_facts(run: &mut Run) -> Step {
    let x = run.x;
    unit(x)?;
    run.hypothesis("idempotent", x.declared().idempotent, |s| is_idempotent(x, s))?;
    let b = run.budget;
    let mut r = rng(b.seed);
    let mut count = 0;
    for n in 1..=b.max_vars {
        for j in 1..=n {
            let mut exps = vec![1; j];
            exps.resize(n, 0);
            let sym = sym_operator(x, &pure(x, exps)?)?;
            let e = elementary(x, j, n)?.canonicalize(x);
            run.ensure(sym == e, vec![], format!("e_{j} != Sym(x1..x{j}) in {n} variables"))?;
        }
        for _ in 0..b.polys {
            let p = random_poly(x, n, b.max_degree, 4, &mut r)?.canonicalize(x);
            let q = random_poly(x, n, b.max_degree, 4, &mut r)?.canonicalize(x);
            let a = x.sample(&mut r);
            let (sp, sq) = (sym_operator(x, &p)?, sym_operator(x, &q)?);
            let shown = format_poly(x, &p);
            run.ensure(is_symmetric_expr(x, &sp), vec![], format!("Sym({shown}) is not symmetric"))?;
            run.ensure(
                is_symmetric_expr(x, &p) == (sp == p),
                vec![],
                format!("{shown}: symmetric disagrees with Sym(p) = p"),
            )?;
            let additive = sym_operator(x, &p.plus(&q)?)? == sp.plus(&sq)?.canonicalize(x);
            run.ensure(additive, vec![], format!("Sym(p + q) != Sym(p) + Sym(q) for p = {shown}"))?;
            let linear = sym_operator(x, &p.scale(x, &a))? == sp.scale(x, &a).canonicalize(x);
            run.ensure(linear, vec![a], format!("Sym(a p) != a Sym(p) for p = {shown}"))?;
            count += 1;
        }
        for s in symmetric_family(x, n, b.max_degree, b.polys, b.seed)? {
            let fixed = sym_operator(x, &s)? == s;
            run.ensure(fixed, vec![], format!("symmetric {} is not fixed by Sym", format_poly(x, &s)))?;
            count += 1;
        }
    }
    run.tally(count);
    Ok(())
}

fn idempotent_frobenius(run: &mut Run) -> Step {
    let x = run.x;
    unit(x)?;
    let d = x.declared();
    let n_max = run.budget.frob_n;
    run.hypothesis("idempotent", d.idempotent, |s| is_idempotent(x, s))?;
    run.hypothesis("frobenius", d.frobenius, |s| is_frobenius(x, n_max, s))
}

pub(crate) fn factor_idem(run: &mut Run) -> Step {
    idempotent_frobenius(run)?;
    let x = run.x;
    let top = factor_bound(run);
    let mut configs = 0;
    for n in 1..=run.budget.max_vars {
        for j in 1..=n {
            let ej = elementary(x, j, n)?;
            for d in nonincreasing(j, 1, top) {
                let dj = d[j - 1];
                let lhs = sym_operator(x, &pure(x, padded(&d, n))?)?;
                let reduced: Vec<u32> = d[..j - 1].iter().map(|&di| di - dj).collect();
                let rest = sym_operator(x, &pure(x, padded(&reduced, n))?)?;
                let label = format!("Sym(x^{d:?}) factors, n={n}");
                pointwise(run, &label, n, &lhs, |pt| {
                    Ok(x.mul(&pow(x, &ej.evaluate(x, pt)?, dj), &rest.evaluate(x, pt)?))
                })?;
                configs += 1;
            }
        }
    }
    run.note(format!("{configs} exponent configurations"));
    Ok(())
}

pub(crate) fn elemfact_idem(run: &mut Run) -> Step {
    idempotent_frobenius(run)?;
    let x = run.x;
    let one = unit(x)?;
    let strategy = run.strategy();
    let top = factor_bound(run);
    let mut configs = 0;
    for n in 1..=run.budget.max_vars {
        for d in nonincreasing(n, 0, top) {
            let p = sym_operator(x, &pure(x, d.clone())?)?;
            let r = Poly::new(n, vec![Monomial::new(one.clone(), elementary_exponents(&d))])?;
            let report = verify_decomposition(x, &p, &r, &strategy)?;
            quietly(run, &format!("Sym(x^{d:?}) is elementary"), report)?;
            configs += 1;
        }
    }
    run.note(format!("{configs} sorted exponent vectors"));
    Ok(())
}

pub(crate) fn idem_equiv(run: &mut Run) -> Step {
    let x = run.x;
    unit(x)?;
    let d = x.declared();
    let n_max = run.budget.frob_n;
    let strategy = run.strategy();
    let frob = run.property("frobenius", d.frobenius, |s| is_frobenius(x, n_max, s))?;
    let idem = run.property("idempotent", d.idempotent, |s| is_idempotent(x, s))?;
    let ub = run.property("upper-bound", d.upper_bound, |s| is_upper_bound(x, s))?;
    let canc = run.property("2-cancellative", None, |s| is_2_cancellative(x, s))?;
    let mut exercised = false;
    if frob && idem {
        round_trip(run, Regime::IdempotentFrobenius, 1..=run.budget.max_vars)?;
        run.ensure(ub, vec![], "Frobenius and idempotent but not upper-bound")?;
        run.ensure(canc, vec![], "Frobenius and idempotent but not 2-cancellative")?;
        exercised = true;
    }
    if ub && canc {
        if frob {
            let (one, two, four) = (unit(x)?, nat_embed(x, 2)?, nat_embed(x, 4)?);
            run.ensure(two == four, vec![two.clone(), four], "Frobenius but 2 != 4")?;
            run.ensure(idem, vec![one, two], "2 = 4 and 2-cancellative but 1 != 2")?;
        } else {
            not_two_elementary(run, n_max, &strategy)?;
        }
        exercised = true;
    }
    run.require(exercised, "neither side of the equivalence has its hypotheses")
}

pub(crate) fn factor_super(run: &mut Run) -> Step {
    let x = run.x;
    unit(x)?;
    run.hypothesis("supertropical", x.declared().supertropical, |s| is_supertropical(x, s))?;
    let top = factor_bound(run);
    let mut configs = 0;
    for n in 1..=run.budget.max_vars {
        for j in 1..=n {
            for ends in (1..=n).combinations(j) {
                for ds in (1..=top).rev().combinations(j) {
                    let mut exps = vec![0; n];
                    let mut reduced = vec![0; n];
                    let dj = ds[j - 1];
                    let mut start = 0;
                    for (k, (&end, &dk)) in ends.iter().zip(&ds).enumerate() {
                        for pos in start..end {
                            exps[pos] = dk;
                            if k + 1 < j {
                                reduced[pos] = dk - dj;
                            }
                        }
                        start = end;
                    }
                    let lhs = minsym(x, &exps)?;
                    let rest = minsym(x, &reduced)?;
                    let e = elementary(x, ends[j - 1], n)?;
                    let label = format!("Minsym(x^{exps:?}) factors");
                    pointwise(run, &label, n, &lhs, |pt| {
                        Ok(x.mul(&pow(x, &e.evaluate(x, pt)?, dj), &rest.evaluate(x, pt)?))
                    })?;
                    configs += 1;
                }
            }
        }
    }
    run.note(format!("{configs} block configurations"));
    Ok(())
}

pub(crate) fn super_fullelem(run: &mut Run) -> Step {
    let x = run.x;
    unit(x)?;
    run.hypothesis("supertropical", x.declared().supertropical, |s| is_supertropical(x, s))?;
    round_trip(run, Regime::Supertropical, 1..=run.budget.max_vars)
}

pub(crate) fn tropical_fullelem(run: &mut Run) -> Step {
    let x = run.x;
    let d = x.declared();
    let n_max = run.budget.frob_n;
    let strategy = run.strategy();
    match x.name().as_str() {
        "min_plus" | "max_plus" => {
            run.hypothesis("idempotent", d.idempotent, |s| is_idempotent(x, s))?;
            run.hypothesis("linear", d.linear, |s| is_linear_order(x, s))?;
            let report = is_frobenius(x, n_max, &strategy)?;
            run.conclude("frobenius", report)?;
            round_trip(run, Regime::IdempotentFrobenius, 1..=run.budget.max_vars)?;
            round_trip(run, Regime::Supertropical, 1..=run.budget.max_vars)
        }
        "symm:min_plus" | "symm:max_plus" => not_two_elementary(run, n_max, &strategy),
        _ => Err(Stop::Inapplicable(
            "only about min_plus, max_plus and their symmetrizations".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::checker::{run_check, Budget, TheoremId};
    use crate::instances::{symmetrize, table, Boolean, ExtendedTropical, Naturals, Tropical};
    use crate::report::Verdict;
    use crate::semiring::Semiring;

    fn verdict(x: &dyn Semiring, id: TheoremId) -> Verdict {
        run_check(x, id, &Budget::default()).unwrap().verdict
    }

    fn small() -> Budget {
        Budget {
            max_vars: 3,
            samples: 200,
            polys: 8,
            ..Budget::default()
        }
    }

    #[test]
    fn sequences() {
        assert_eq!(nonincreasing(2, 1, 2), vec![vec![1, 1], vec![2, 1], vec![2, 2]]);
        assert_eq!(nonincreasing(0, 0, 3), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn boolean_idem_equiv_holds() {
        assert_eq!(verdict(&Boolean, TheoremId::IdemEquiv), Verdict::Holds);
    }

    #[test]
    fn naturals_idem_equiv_refutes_elementarity() {
        let r = run_check(&Naturals, TheoremId::IdemEquiv, &small()).unwrap();
        assert_eq!(r.verdict, Verdict::SampledHolds, "{:?}", r.trace);
        assert!(r.trace.iter().any(|l| l.contains("fails as predicted")));
    }

    #[test]
    fn factoring_lemmas() {
        for id in [TheoremId::FactorIdem, TheoremId::ElemFactIdem, TheoremId::SymFacts] {
            assert_eq!(verdict(&Boolean, id), Verdict::Holds, "{id}");
            let v = run_check(&Tropical::min_plus(), id, &small()).unwrap().verdict;
            assert_eq!(v, Verdict::SampledHolds, "{id}");
            assert!(matches!(verdict(&ExtendedTropical, id), Verdict::NotApplicable(_)), "{id}");
        }
        let t = table::supertropical3();
        assert_eq!(verdict(&t, TheoremId::FactorSuper), Verdict::Holds);
        assert_eq!(verdict(&t, TheoremId::SuperFullElem), Verdict::Holds);
        let v = run_check(&ExtendedTropical, TheoremId::FactorSuper, &small()).unwrap().verdict;
        assert_eq!(v, Verdict::SampledHolds);
    }

    #[test]
    fn two_elementarity_both_directions() {
        assert_eq!(verdict(&Boolean, TheoremId::Frob2Elem), Verdict::Holds);
        let r = run_check(&Naturals, TheoremId::Frob2Elem, &small()).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.trace.iter().any(|l| l.contains("fails as predicted")));
        let e = run_check(&ExtendedTropical, TheoremId::Frob2Elem, &small()).unwrap();
        assert_eq!(e.verdict, Verdict::SampledHolds);
    }

    #[test]
    fn tropical_instances() {
        let b = small();
        let m = Tropical::max_plus();
        assert_eq!(run_check(&m, TheoremId::TropicalFullElem, &b).unwrap().verdict, Verdict::SampledHolds);
        let s = symmetrize(Arc::new(m), &Strategy::Sampled { count: 100, seed: 0 }).unwrap();
        let r = run_check(&s, TheoremId::TropicalFullElem, &b).unwrap();
        assert_eq!(r.verdict, Verdict::Holds, "{:?}", r.trace);
        assert!(matches!(verdict(&Boolean, TheoremId::TropicalFullElem), Verdict::NotApplicable(_)));
    }
}
