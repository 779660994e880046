//! Quasisymmetrization and symmetrization.

use super::{Run, Stop, Step};
use crate::elementarity::verify_decomposition;
use crate::instances::quasi::twisted_mul;
use crate::instances::{is_symmetrizable_upper_bound, sym_related, symmetrize};
use crate::poly::{Monomial, Poly};
use crate::predicates::{frobenius_at, is_frobenius, is_trivial, is_upper_bound};
use crate::semiring::{
    cartesian, intrinsic_leq, intrinsic_lt, is_finite, nat_embed, pow, unit, Construction, Element,
    Semiring, Strategy,
};

type Pair = (Element, Element);

fn rel(x: &dyn Semiring, p: &Pair, q: &Pair) -> bool {
    sym_related(x, (&p.0, &p.1), (&q.0, &q.1))
}

fn padd(x: &dyn Semiring, p: &Pair, q: &Pair) -> Pair {
    (x.add(&p.0, &q.0), x.add(&p.1, &q.1))
}

fn pmul(x: &dyn Semiring, p: &Pair, q: &Pair) -> Pair {
    twisted_mul(x, (&p.0, &p.1), (&q.0, &q.1))
}

fn show(x: &dyn Semiring, p: &Pair) -> String {
    format!("({}|{})", x.format(&p.0), x.format(&p.1))
}

/// `x^2 + y^2` against `E1^2` at the single point `(a, b)`.
fn sum_of_squares_at(run: &mut Run, a: Element, b: Element) -> Step {
    let x = run.x;
    let one = unit(x)?;
    let p = Poly::new(
        2,
        vec![
            Monomial::new(one.clone(), vec![2, 0]),
            Monomial::new(one.clone(), vec![0, 2]),
        ],
    )?;
    let r = Poly::new(2, vec![Monomial::new(one, vec![2, 0])])?;
    let report = verify_decomposition(x, &p, &r, &Strategy::Grid(vec![a, b]))?;
    run.expect_failure("x^2 + y^2 = E1^2 at (1,0), (0,1)", report)?;
    Ok(())
}

pub(crate) fn quasi_elem(run: &mut Run) -> Step {
    let x = run.x;
    let Construction::Quasisymmetrization(inner) = x.construction() else {
        return Err(Stop::Inapplicable("not a quasisymmetrization".into()));
    };
    let y = inner.as_ref();
    let (zero, one) = (y.zero(), unit(y)?);
    run.hypothesis_on(y, "base upper-bound", y.declared().upper_bound, |s| is_upper_bound(y, s))?;
    let two = nat_embed(y, 2)?;
    let a = Element::pair(one.clone(), zero.clone());
    let b = Element::pair(zero.clone(), one.clone());
    let squares = x.add(&pow(x, &a, 2), &pow(x, &b, 2));
    let sum_squared = pow(x, &x.add(&a, &b), 2);
    run.ensure(
        squares == Element::pair(two.clone(), zero.clone()),
        vec![squares.clone()],
        "(1,0)^2 + (0,1)^2 != (2,0)",
    )?;
    run.ensure(
        sum_squared == Element::pair(two.clone(), two.clone()),
        vec![sum_squared.clone()],
        "((1,0) + (0,1))^2 != (2,2)",
    )?;
    if is_trivial(y)? {
        let report = is_frobenius(x, run.budget.frob_n, &run.strategy())?;
        return run.conclude("frobenius over trivial base", report);
    }
    run.ensure(two != zero, vec![two], "upper-bound and nontrivial but 2 = 0")?;
    run.ensure(
        !frobenius_at(x, &a, &b, 2),
        vec![a.clone(), b.clone()],
        "Frobenius holds at (1,0), (0,1) for n=2",
    )?;
    run.note("not Frobenius: (x+y)^2 != x^2 + y^2 at (1,0), (0,1)");
    sum_of_squares_at(run, a, b)
}

/// Pairs over the element pool, used as raw representatives.
fn pair_pool(run: &Run) -> Vec<Pair> {
    cartesian(&run.pool(), 2)
        .into_iter()
        .map(|v| (v[0].clone(), v[1].clone()))
        .collect()
}

/// Condition (2) holds: `∼` is a congruence and the quotient order is antisymmetric.
fn symmetrizable_side(run: &mut Run) -> Step {
    let x = run.x;
    let pairs = pair_pool(run);
    let mut checked = 0;
    for p in &pairs {
        for q in pairs.iter().filter(|q| rel(x, p, q)) {
            for r in &pairs {
                checked += 1;
                let what = if rel(x, q, r) && !rel(x, p, r) {
                    Some("~ is not transitive")
                } else if !rel(x, &padd(x, p, r), &padd(x, q, r)) {
                    Some("~ is not compatible with +")
                } else if !rel(x, &pmul(x, p, r), &pmul(x, q, r)) {
                    Some("~ is not compatible with *")
                } else {
                    None
                };
                if let Some(what) = what {
                    return Err(run.fail(
                        vec![],
                        format!("{what}: {} {} {}", show(x, p), show(x, q), show(x, r)),
                    ));
                }
            }
        }
    }
    // [p] <= [q] iff p + r ~ q for some r in the pool.
    let below = |p: &Pair, q: &Pair| pairs.iter().any(|r| rel(x, &padd(x, p, r), q));
    for p in &pairs {
        for q in &pairs {
            checked += 1;
            if !rel(x, p, q) && below(p, q) && below(q, p) {
                return Err(run.fail(
                    vec![],
                    format!("classes of {} and {} are mutually below", show(x, p), show(x, q)),
                ));
            }
        }
    }
    run.tally(checked);
    run.note(format!("congruence and antisymmetry on {} pairs", pairs.len()));
    Ok(())
}

/// Condition (2) fails: replays the counterexample for the failing clause.
fn non_symmetrizable_side(run: &mut Run) -> Step {
    let x = run.x;
    let (zero, one) = (x.zero(), unit(x)?);
    if x.add(&one, &one) != one {
        let (e1, e2) = ((one.clone(), zero.clone()), (zero.clone(), one.clone()));
        let both = padd(x, &e1, &e2);
        let above = padd(x, &both, &e1);
        run.ensure(
            rel(x, &above, &e1) && !rel(x, &e1, &both),
            vec![],
            format!(
                "expected {} ~ (1|0) and (1|0) !~ {}",
                show(x, &above),
                show(x, &both)
            ),
        )?;
        run.note("not idempotent: [(1|0)] <= [(1|1)] <= [(1|0)] are distinct classes");
        return Ok(());
    }
    let pool = run.pool();
    for a in &pool {
        for b in &pool {
            if intrinsic_leq(x, a, b)? || intrinsic_leq(x, b, a)? {
                continue;
            }
            let s = x.add(a, b);
            let chain = [
                (a.clone(), b.clone()),
                (s.clone(), b.clone()),
                (s.clone(), a.clone()),
                (b.clone(), a.clone()),
            ];
            let linked = chain.windows(2).all(|w| rel(x, &w[0], &w[1]));
            run.ensure(
                linked && !rel(x, &chain[0], &chain[3]),
                vec![a.clone(), b.clone()],
                "incomparable pair does not break transitivity of ~",
            )?;
            run.note(format!(
                "not linear: {} ~ {} ~ {} ~ {} but the ends are not related",
                show(x, &chain[0]),
                show(x, &chain[1]),
                show(x, &chain[2]),
                show(x, &chain[3])
            ));
            return Ok(());
        }
    }
    for a in &pool {
        for b in &pool {
            if !intrinsic_lt(x, a, b)? {
                continue;
            }
            for c in &pool {
                let (ac, bc) = (x.mul(a, c), x.mul(b, c));
                if ac == zero || intrinsic_lt(x, &ac, &bc)? {
                    continue;
                }
                let (p, q) = ((zero.clone(), b.clone()), (a.clone(), b.clone()));
                let cc = (c.clone(), zero.clone());
                let (pc, qc) = (pmul(x, &p, &cc), pmul(x, &q, &cc));
                run.ensure(
                    rel(x, &p, &q) && !rel(x, &pc, &qc),
                    vec![a.clone(), b.clone(), c.clone()],
                    "a < b, a*x != 0, not a*x < b*x, yet ~ survives multiplication",
                )?;
                run.note(format!(
                    "not a congruence: {} ~ {} but {} !~ {}",
                    show(x, &p),
                    show(x, &q),
                    show(x, &pc),
                    show(x, &qc)
                ));
                return Ok(());
            }
        }
    }
    Err(Stop::Inapplicable(
        "condition fails outside the test pool; no replayable witness".into(),
    ))
}

pub(crate) fn ub_symmetrizable(run: &mut Run) -> Step {
    let x = run.x;
    unit(x)?;
    let report = is_symmetrizable_upper_bound(x, &run.strategy())?;
    run.absorb(&report);
    run.note(format!("symmetrizable-upper-bound: {}", report.verdict.label()));
    if report.fails() {
        non_symmetrizable_side(run)
    } else {
        symmetrizable_side(run)
    }
}

pub(crate) fn sym_elem(run: &mut Run) -> Step {
    let x = run.x;
    let Construction::Symmetrization(inner) = x.construction() else {
        return Err(Stop::Inapplicable("not a symmetrization".into()));
    };
    let check = Strategy::default_for(inner.as_ref(), run.budget.samples, run.budget.seed);
    let s = symmetrize(inner.clone(), &check)?;
    let y = inner.as_ref();
    let (zero, one) = (y.zero(), unit(y)?);
    if is_trivial(y)? {
        let report = is_frobenius(x, run.budget.frob_n, &run.strategy())?;
        return run.conclude("frobenius over trivial base", report);
    }
    let a = s.canonical(&one, &zero);
    let b = s.canonical(&zero, &one);
    let squares = x.add(&pow(x, &a, 2), &pow(x, &b, 2));
    let sum_squared = pow(x, &x.add(&a, &b), 2);
    run.ensure(squares == a, vec![squares.clone()], "[(1,0)]^2 + [(0,1)]^2 != [(1,0)]")?;
    let balanced = s.canonical(&one, &one);
    run.ensure(
        sum_squared == balanced,
        vec![sum_squared.clone()],
        "([(1,0)] + [(0,1)])^2 != [(1,1)]",
    )?;
    let pool = if is_finite(y) { y.elements().unwrap_or_default() } else { y.test_grid() };
    let unit_pair = (one.clone(), one.clone());
    for p in cartesian(&pool, 2) {
        let p = (p[0].clone(), p[1].clone());
        if p != unit_pair && rel(y, &unit_pair, &p) {
            return Err(run.fail(vec![], format!("(1|1) ~ {}", show(y, &p))));
        }
    }
    run.points += pool.len() * pool.len();
    run.ensure(!frobenius_at(x, &a, &b, 2), vec![a.clone(), b.clone()], "Frobenius holds at n=2")?;
    run.note("not Frobenius: (x+y)^2 != x^2 + y^2 at [(1,0)], [(0,1)]");
    sum_of_squares_at(run, a, b)
}
