//! Decidable structural predicates on semirings.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::report::{PropertyReport, Verdict, Witness};
use crate::semiring::{
    intrinsic_leq, intrinsic_lt, is_finite, nat_embed, nu, pow, unit, Element, Semiring, Strategy,
};

/// Runs `violation` over every tuple of `strategy`; the first `Some(reason)`
/// becomes the failure witness.
pub fn search<F>(
    subject: &str,
    x: &dyn Semiring,
    strategy: &Strategy,
    arity: usize,
    mut violation: F,
) -> Result<PropertyReport>
where
    F: FnMut(&[Element]) -> Result<Option<String>>,
{
    let tuples = strategy.tuples(x, arity)?;
    let count = tuples.len();
    for t in tuples {
        if let Some(reason) = violation(&t)? {
            let w = Witness::new(x, t, reason);
            return Ok(PropertyReport::new(subject, Verdict::Fails(w)).with_stats(count, strategy.seed()));
        }
    }
    Ok(PropertyReport::new(subject, strategy.passing_verdict()).with_stats(count, strategy.seed()))
}

/// Commutative semiring axioms (plus unit laws when unital).
pub fn check_axioms(x: &dyn Semiring, strategy: &Strategy) -> Result<PropertyReport> {
    let zero = x.zero();
    let one = x.one();
    search("axioms", x, strategy, 3, |t| {
        let (a, b, c) = (&t[0], &t[1], &t[2]);
        let checks: [(&str, bool); 9] = [
            (
                "additive associativity",
                x.add(&x.add(a, b), c) == x.add(a, &x.add(b, c)),
            ),
            ("additive commutativity", x.add(a, b) == x.add(b, a)),
            ("additive unit", x.add(a, &zero) == *a),
            (
                "multiplicative associativity",
                x.mul(&x.mul(a, b), c) == x.mul(a, &x.mul(b, c)),
            ),
            ("multiplicative commutativity", x.mul(a, b) == x.mul(b, a)),
            (
                "left distributivity",
                x.mul(a, &x.add(b, c)) == x.add(&x.mul(a, b), &x.mul(a, c)),
            ),
            (
                "right distributivity",
                x.mul(&x.add(a, b), c) == x.add(&x.mul(a, c), &x.mul(b, c)),
            ),
            (
                "absorbing zero",
                x.mul(&zero, a) == zero && x.mul(a, &zero) == zero,
            ),
            (
                "multiplicative unit",
                one.as_ref()
                    .is_none_or(|u| x.mul(u, a) == *a && x.mul(a, u) == *a),
            ),
        ];
        Ok(checks
            .iter()
            .find(|(_, ok)| !ok)
            .map(|(name, _)| name.to_string()))
    })
}

/// Antisymmetry of the intrinsic order.
pub fn is_upper_bound(x: &dyn Semiring, strategy: &Strategy) -> Result<PropertyReport> {
    let declared = x.declared().upper_bound;
    let finite_domain = matches!(strategy, Strategy::Exhaustive) || is_finite(x);
    if !finite_domain && declared.is_none() {
        return Err(Error::Undecidable {
            property: "upper-bound".into(),
            semiring: x.name(),
        });
    }
    let report = search("upper-bound", x, strategy, 2, |t| {
        let (a, b) = (&t[0], &t[1]);
        if a != b && intrinsic_leq(x, a, b)? && intrinsic_leq(x, b, a)? {
            Ok(Some("a <= b and b <= a but a != b".into()))
        } else {
            Ok(None)
        }
    })?;
    if !finite_domain && report.holds() && declared == Some(false) {
        return Err(Error::Undecidable {
            property: "upper-bound".into(),
            semiring: x.name(),
        });
    }
    Ok(report)
}

/// Set of fixed points of ν on a finite carrier, checked to be an ideal.
pub fn ghost_ideal(x: &dyn Semiring) -> Result<Vec<Element>> {
    let all = x
        .elements()
        .ok_or_else(|| Error::NeedsFiniteCarrier(x.name()))?;
    let ghosts: Vec<Element> = all.iter().filter(|e| nu(x, e) == **e).cloned().collect();
    let set: HashSet<&Element> = ghosts.iter().collect();
    for g in &ghosts {
        for h in &ghosts {
            if !set.contains(&x.add(g, h)) {
                return Err(Error::AxiomViolation(format!(
                    "ghost set of {} not closed under +",
                    x.name()
                )));
            }
        }
        for e in &all {
            if !set.contains(&x.mul(e, g)) {
                return Err(Error::AxiomViolation(format!(
                    "ghost set of {} not a multiplicative ideal",
                    x.name()
                )));
            }
        }
    }
    Ok(ghosts)
}

/// `x + x = x` everywhere. For unital semirings `1 + 1 = 1` decides it exactly.
pub fn is_idempotent(x: &dyn Semiring, strategy: &Strategy) -> Result<PropertyReport> {
    if let Some(one) = x.one() {
        let verdict = if x.add(&one, &one) == one {
            Verdict::Holds
        } else {
            Verdict::Fails(Witness::new(x, vec![one], "1 + 1 != 1"))
        };
        let mut report = PropertyReport::new("idempotent", verdict).with_stats(1, None);
        report.note("decided by 1 + 1 = 1");
        return Ok(report);
    }
    search("idempotent", x, strategy, 1, |t| {
        Ok((x.add(&t[0], &t[0]) != t[0]).then(|| "x + x != x".to_string()))
    })
}

/// `(a + b)^n = a^n + b^n` at one pair.
pub fn frobenius_at(x: &dyn Semiring, a: &Element, b: &Element, n: u32) -> bool {
    pow(x, &x.add(a, b), n) == x.add(&pow(x, a, n), &pow(x, b, n))
}

/// Frobenius equalities. On finite carriers each pair's power sequence is
/// followed until its state repeats, which decides every `n ≥ 1`; otherwise
/// `1 ≤ n ≤ n_max` is tested.
pub fn is_frobenius(x: &dyn Semiring, n_max: u32, strategy: &Strategy) -> Result<PropertyReport> {
    let exact = is_finite(x) && strategy.is_proof();
    let subject = "frobenius";
    let mut report = search(subject, x, strategy, 2, |t| {
        let (a, b) = (&t[0], &t[1]);
        let s = x.add(a, b);
        let (mut an, mut bn, mut sn) = (a.clone(), b.clone(), s.clone());
        let mut seen: HashSet<(Element, Element, Element)> = HashSet::new();
        let mut n = 1u32;
        loop {
            if sn != x.add(&an, &bn) {
                return Ok(Some(format!("(x+y)^{n} != x^{n} + y^{n}, n={n}")));
            }
            if exact {
                if !seen.insert((an.clone(), bn.clone(), sn.clone())) {
                    return Ok(None);
                }
            } else if n >= n_max {
                return Ok(None);
            }
            an = x.mul(&an, a);
            bn = x.mul(&bn, b);
            sn = x.mul(&sn, &s);
            n += 1;
        }
    })?;
    if !exact {
        report.note(format!("exponents 1..={n_max}"));
    }
    Ok(report)
}

/// Recovers the exponent from a Frobenius failure witness.
pub fn frobenius_witness_exponent(w: &Witness) -> Option<u32> {
    w.description.rsplit("n=").next()?.trim().parse().ok()
}

pub fn is_2_cancellative(x: &dyn Semiring, strategy: &Strategy) -> Result<PropertyReport> {
    search("2-cancellative", x, strategy, 2, |t| {
        let (a, b) = (&t[0], &t[1]);
        Ok((a != b && nu(x, a) == nu(x, b)).then(|| "x + x = y + y but x != y".to_string()))
    })
}

pub fn is_linear_order(x: &dyn Semiring, strategy: &Strategy) -> Result<PropertyReport> {
    search("linear-order", x, strategy, 2, |t| {
        let (a, b) = (&t[0], &t[1]);
        let comparable = intrinsic_leq(x, a, b)? || intrinsic_leq(x, b, a)?;
        Ok((!comparable).then(|| "incomparable".to_string()))
    })
}

/// Supertropical axioms: `2 = 4`, sums of ν-distinct elements pick an
/// operand, ν-equal elements sum to their ghost.
pub fn is_supertropical(x: &dyn Semiring, strategy: &Strategy) -> Result<PropertyReport> {
    let two = nat_embed(x, 2)?;
    let four = nat_embed(x, 4)?;
    if two != four {
        let w = Witness::new(x, vec![two, four], "clause (i): 2 != 4");
        return Ok(PropertyReport::new("supertropical", Verdict::Fails(w)).with_stats(1, None));
    }
    search("supertropical", x, strategy, 2, |t| {
        let (a, b) = (&t[0], &t[1]);
        let (na, nb) = (nu(x, a), nu(x, b));
        let s = x.add(a, b);
        if na != nb {
            if &s != a && &s != b {
                return Ok(Some("clause (ii): nu(a) != nu(b) but a + b not in {a, b}".into()));
            }
        } else if s != na {
            return Ok(Some("clause (iii): nu(a) = nu(b) but a + b != nu(a)".into()));
        }
        Ok(None)
    })
}

/// Whether `0 = 1`, i.e. the carrier is a single point.
pub fn is_trivial(x: &dyn Semiring) -> Result<bool> {
    Ok(unit(x)? == x.zero())
}

/// Strict order helper used by the supertropical lemmas.
pub fn lt(x: &dyn Semiring, a: &Element, b: &Element) -> Result<bool> {
    intrinsic_lt(x, a, b)
}
