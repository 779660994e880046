//! Order, Frobenius and supertropical structure.

use super::{Run, Step};
use crate::predicates::{
    ghost_ideal, is_frobenius, is_idempotent, is_linear_order, is_supertropical, is_upper_bound,
};
use crate::semiring::{
    intrinsic_leq, intrinsic_lt, is_ghost, nat_embed, nu, sum, unit, Element, Strategy,
};

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// `a ≤ b ≤ a ⟹ a = b` over pairs of `strategy`.
fn antisymmetric(run: &mut Run, strategy: &Strategy) -> Step {
    let x = run.x;
    run.each("upper-bound", strategy, 2, |t| {
        let (a, b) = (&t[0], &t[1]);
        Ok((a != b && intrinsic_leq(x, a, b)? && intrinsic_leq(x, b, a)?)
            .then(|| "a <= b <= a but a != b".to_string()))
    })
}

pub(crate) fn order_idem(run: &mut Run) -> Step {
    let x = run.x;
    let strategy = run.strategy();
    let idem = is_idempotent(x, &strategy)?.holds();
    let mut tuples = strategy.tuples(x, 3)?;
    if let Some(one) = x.one() {
        tuples.push(vec![one.clone(), one.clone(), one]);
    }
    let plus_leq = |a: &Element, b: &Element| &x.add(a, b) == b;
    // First counterexample to: a+b=b is a partial order, it is the intrinsic
    // order, a+b is the least upper bound.
    let mut found: [Option<Vec<Element>>; 3] = Default::default();
    for t in &tuples {
        let (a, b, c) = (&t[0], &t[1], &t[2]);
        let order_fails = !plus_leq(a, a)
            || (a != b && plus_leq(a, b) && plus_leq(b, a))
            || (plus_leq(a, b) && plus_leq(b, c) && !plus_leq(a, c));
        if order_fails && found[0].is_none() {
            found[0] = Some(t.clone());
        }
        if plus_leq(a, b) != intrinsic_leq(x, a, b)? && found[1].is_none() {
            found[1] = Some(vec![a.clone(), b.clone()]);
        }
        let s = x.add(a, b);
        if found[2].is_none()
            && intrinsic_leq(x, a, c)?
            && intrinsic_leq(x, b, c)?
            && !intrinsic_leq(x, &s, c)?
        {
            found[2] = Some(t.clone());
        }
    }
    run.tally(tuples.len());
    let statements = [idem, found[0].is_none(), found[1].is_none(), found[2].is_none()];
    run.note(format!(
        "idempotent={} partial-order={} intrinsic={} join={}",
        yes(statements[0]),
        yes(statements[1]),
        yes(statements[2]),
        yes(statements[3])
    ));
    if statements.iter().any(|&s| s != idem) {
        let elements = found.into_iter().flatten().next().unwrap_or_default();
        return Err(run.fail(
            elements,
            format!(
                "equivalent statements disagree: idempotent={} partial-order={} intrinsic={} join={}",
                yes(statements[0]),
                yes(statements[1]),
                yes(statements[2]),
                yes(statements[3])
            ),
        ));
    }
    if idem {
        antisymmetric(run, &strategy)?;
    }
    Ok(())
}

pub(crate) fn linear_frob(run: &mut Run) -> Step {
    let x = run.x;
    unit(x)?;
    let d = x.declared();
    run.hypothesis("idempotent", d.idempotent, |s| is_idempotent(x, s))?;
    run.hypothesis("linear", d.linear, |s| is_linear_order(x, s))?;
    let report = is_frobenius(x, run.budget.frob_n, &run.strategy())?;
    run.conclude("frobenius", report)
}

pub(crate) fn two_in_frob(run: &mut Run) -> Step {
    let x = run.x;
    let n_max = run.budget.frob_n;
    let [two, three, four] = [2, 3, 4].map(|k| nat_embed(x, k));
    let (two, three, four) = (two?, three?, four?);
    if run.finite() {
        // Does 2 = 3 alone force Frobenius on linear upper-bound carriers?
        let s = Strategy::Exhaustive;
        let candidate = two == three
            && is_upper_bound(x, &s)?.holds()
            && is_linear_order(x, &s)?.holds()
            && is_frobenius(x, n_max, &s)?.fails();
        run.note(if candidate {
            "converse search: linear upper-bound with 2 = 3 but not Frobenius"
        } else {
            "converse search: no counterexample on this carrier"
        });
    }
    let d = x.declared();
    run.hypothesis("frobenius", d.frobenius, |s| is_frobenius(x, n_max, s))?;
    run.ensure(two == four, vec![two.clone(), four], "2 != 4")?;
    if run.property("upper-bound", d.upper_bound, |s| is_upper_bound(x, s))? {
        run.ensure(two == three, vec![two, three], "upper-bound but 2 != 3")?;
    } else {
        run.note("2 = 3: not-applicable (not upper-bound)");
    }
    Ok(())
}

pub(crate) fn nu_props(run: &mut Run) -> Step {
    let x = run.x;
    let one = unit(x)?;
    let (two, four) = (nat_embed(x, 2)?, nat_embed(x, 4)?);
    let strategy = run.strategy();
    let mut tuples = strategy.tuples(x, 2)?;
    tuples.push(vec![one.clone(), one.clone()]);
    let mut hom = None;
    let mut proj = None;
    for t in &tuples {
        let (a, b) = (&t[0], &t[1]);
        let (na, nb) = (nu(x, a), nu(x, b));
        let hom_fails =
            nu(x, &x.mul(a, b)) != x.mul(&na, &nb) || nu(x, &x.add(a, b)) != x.add(&na, &nb);
        if hom_fails && hom.is_none() {
            hom = Some(t.clone());
        }
        if nu(x, &na) != na && proj.is_none() {
            proj = Some(vec![a.clone()]);
        }
    }
    run.tally(tuples.len());
    let image = match x.elements() {
        Some(all) => {
            let mut img: Vec<Element> = all.iter().map(|a| nu(x, a)).collect();
            img.sort();
            img.dedup();
            let mut ghosts = ghost_ideal(x)?;
            ghosts.sort();
            img == ghosts
        }
        None => tuples.iter().all(|t| is_ghost(x, &nu(x, &t[0]))),
    };
    let statements = [two == four, hom.is_none(), proj.is_none(), image];
    run.note(format!(
        "2=4 {} homomorphism {} projection {} image {}",
        yes(statements[0]),
        yes(statements[1]),
        yes(statements[2]),
        yes(statements[3])
    ));
    if statements.iter().any(|&s| s != statements[0]) {
        let elements = hom.or(proj).unwrap_or_else(|| vec![two, four]);
        return Err(run.fail(elements, "equivalent statements about nu disagree"));
    }
    if statements[0] {
        let unit_ghost = nu(x, &one);
        run.each("nu(1) is the unit of the ghost ideal", &strategy, 1, |t| {
            let g = nu(x, &t[0]);
            Ok((x.mul(&unit_ghost, &g) != g).then(|| "nu(1) * nu(a) != nu(a)".to_string()))
        })?;
    }
    Ok(())
}

pub(crate) fn supertrop_props(run: &mut Run) -> Step {
    let x = run.x;
    let d = x.declared();
    run.hypothesis("supertropical", d.supertropical, |s| is_supertropical(x, s))?;
    let strategy = run.strategy();
    run.each("ghosts bipotent", &strategy, 2, |t| {
        let (g, h) = (nu(x, &t[0]), nu(x, &t[1]));
        let s = x.add(&g, &h);
        Ok((s != g && s != h).then(|| "nu(a) + nu(b) not in {nu(a), nu(b)}".to_string()))
    })?;
    run.each("ghost order", &strategy, 2, |t| {
        let (g, h) = (nu(x, &t[0]), nu(x, &t[1]));
        Ok((intrinsic_leq(x, &g, &h)? != (x.add(&g, &h) == h))
            .then(|| "order on ghosts differs from g + h = h".to_string()))
    })?;
    antisymmetric(run, &strategy)?;
    let report = is_frobenius(x, run.budget.frob_n, &strategy)?;
    run.conclude("frobenius", report)?;
    let (two, three) = (nat_embed(x, 2)?, nat_embed(x, 3)?);
    run.ensure(two == three, vec![two, three], "2 != 3")
}

pub(crate) fn fibers(run: &mut Run) -> Step {
    let x = run.x;
    let d = x.declared();
    run.hypothesis("supertropical", d.supertropical, |s| is_supertropical(x, s))?;
    let grid = run.grid();
    run.each("fiber maximum", &grid, 2, |t| {
        let (a, y) = (&t[0], &t[1]);
        if &nu(x, y) != a {
            return Ok(None);
        }
        if !is_ghost(x, a) {
            return Ok(Some("fiber of a tangible element is non-empty".into()));
        }
        Ok((!intrinsic_leq(x, y, a)?).then(|| "y in fiber of a but not y <= a".to_string()))
    })?;
    run.each("ghost in own fiber", &grid, 1, |t| {
        let a = &t[0];
        Ok((is_ghost(x, a) && &nu(x, a) != a).then(|| "ghost a not in fiber of a".to_string()))
    })?;
    run.each("fiber incomparable", &grid, 2, |t| {
        let (y, z) = (&t[0], &t[1]);
        let n = nu(x, y);
        if y == z || nu(x, z) != n || y == &n || z == &n {
            return Ok(None);
        }
        Ok((intrinsic_leq(x, y, z)? || intrinsic_leq(x, z, y)?)
            .then(|| "distinct non-top fiber elements are comparable".to_string()))
    })
}

pub(crate) fn strict_ineq(run: &mut Run) -> Step {
    let x = run.x;
    let d = x.declared();
    run.hypothesis("supertropical", d.supertropical, |s| is_supertropical(x, s))?;
    let grid = run.grid();
    let lt = |a: &Element, b: &Element| intrinsic_lt(x, a, b);
    let le = |a: &Element, b: &Element| intrinsic_leq(x, a, b);
    let tangible = |a: &Element| !is_ghost(x, a);
    run.each("clause 1", &grid, 2, |t| {
        let (a, b) = (&t[0], &t[1]);
        let lhs = &x.add(a, b) == b;
        let rhs = lt(a, b)? || (le(a, b)? && is_ghost(x, b));
        Ok((lhs != rhs).then(|| "a + b = b disagrees with a < b or (a <= b, b ghost)".to_string()))
    })?;
    run.each("clause 2", &grid, 3, |t| {
        let (a, b, c) = (&t[0], &t[1], &t[2]);
        let (ac, bc) = (x.mul(a, c), x.mul(b, c));
        if !tangible(&bc) {
            return Ok(None);
        }
        Ok((lt(a, b)? != lt(&ac, &bc)?).then(|| "b*x tangible but a < b disagrees with a*x < b*x".to_string()))
    })?;
    run.each("clause 3", &grid, 4, |t| {
        let (a, b, c, e) = (&t[0], &t[1], &t[2], &t[3]);
        let by = x.mul(b, e);
        if !tangible(&by) || !lt(a, b)? || !le(c, e)? {
            return Ok(None);
        }
        Ok((!lt(&x.mul(a, c), &by)?).then(|| "b*y tangible, a < b, x <= y but not a*x < b*y".to_string()))
    })?;
    run.each("clause 4", &grid, 2, |t| {
        let (a, b) = (&t[0], &t[1]);
        if !tangible(b) {
            return Ok(None);
        }
        let (na, nb) = (nu(x, a), nu(x, b));
        let (s1, s2, s3) = (lt(a, b)?, lt(&na, b)?, lt(&na, &nb)?);
        Ok((s1 != s2 || s2 != s3).then(|| "y tangible but x < y, 2x < y, 2x < 2y disagree".to_string()))
    })?;
    run.each("clause 5", &grid, 2, |t| {
        let (a, b) = (&t[0], &t[1]);
        if !tangible(a) || !tangible(b) {
            return Ok(None);
        }
        let count = [lt(a, b)?, lt(b, a)?, nu(x, a) == nu(x, b)]
            .iter()
            .filter(|&&c| c)
            .count();
        Ok((count != 1).then(|| format!("tangibles satisfy {count} of x < y, y < x, same fiber")))
    })
}

/// `sup{x, y}` in a supertropical semiring.
fn sup2(x: &dyn crate::semiring::Semiring, a: &Element, b: &Element) -> Element {
    if a == b {
        a.clone()
    } else {
        x.add(a, b)
    }
}

/// Largest tuple length for the tangible-sum clause.
const MAX_SUMMANDS: usize = 4;

pub(crate) fn tangible_sum(run: &mut Run) -> Step {
    let x = run.x;
    let d = x.declared();
    run.hypothesis("supertropical", d.supertropical, |s| is_supertropical(x, s))?;
    let grid = run.grid();
    let zero = x.zero();
    run.each("zero is least", &grid, 1, |t| {
        Ok((!intrinsic_leq(x, &zero, &t[0])?).then(|| "0 is not below a".to_string()))
    })?;
    run.each("binary join", &grid, 3, |t| {
        let (a, b, u) = (&t[0], &t[1], &t[2]);
        let f = sup2(x, a, b);
        if !intrinsic_leq(x, a, &f)? || !intrinsic_leq(x, b, &f)? {
            return Ok(Some("sup{x, y} is not an upper bound".into()));
        }
        let bounds = intrinsic_leq(x, a, u)? && intrinsic_leq(x, b, u)?;
        Ok((bounds && !intrinsic_leq(x, &f, u)?).then(|| "sup{x, y} is not least".to_string()))
    })?;
    for k in 0..=MAX_SUMMANDS {
        let label = format!("unique maximal summand, n={k}");
        run.each(&label, &grid, k, |t| {
            let s = sum(x, t);
            let m = t.iter().fold(x.zero(), |acc, a| sup2(x, &acc, a));
            let at_m = t.iter().filter(|a| **a == m).count();
            let s_tangible = !is_ghost(x, &s);
            let first = !is_ghost(x, &m) && at_m == 1;
            let second = first && m == s;
            Ok((s_tangible != first || first != second)
                .then(|| "tangible sum disagrees with unique maximal summand".to_string()))
        })?;
    }
    Ok(())
}
