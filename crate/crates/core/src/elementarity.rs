//! Rewriting symmetric polynomials as polynomials in the elementary ones.
//!
//! Each orbit of a symmetric expression with sorted exponents
//! `d1 ≥ … ≥ dn` and coefficient `a` becomes
//! `a · E1^(d1-d2) · E2^(d2-d3) ⋯ En^dn`. The three regimes differ only in the
//! hypotheses they require of the semiring. Every decomposition is verified
//! before it is returned.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::{elementary, orbits, Monomial, Poly};
use crate::predicates::{is_frobenius, is_idempotent, is_supertropical, search};
use crate::report::{PropertyReport, Verdict, Witness};
use crate::semiring::{Element, Semiring, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    TwoVarFrobenius,
    IdempotentFrobenius,
    Supertropical,
}

impl Regime {
    pub const ALL: [Regime; 3] = [
        Regime::TwoVarFrobenius,
        Regime::IdempotentFrobenius,
        Regime::Supertropical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Regime::TwoVarFrobenius => "two-var-frobenius",
            Regime::IdempotentFrobenius => "idempotent-frobenius",
            Regime::Supertropical => "supertropical",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Regime::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::WrongRegime(format!("unknown regime `{s}`")))
    }
}

/// One orbit of the input and the elementary product it was mapped to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitMapping {
    /// Sorted exponents `d1 ≥ … ≥ dn`.
    pub orbit: Vec<u32>,
    pub coeff: Element,
    /// Exponents of `E1 … En`.
    pub product: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub n: usize,
    /// Polynomial in `E1 … En`.
    pub r: Poly,
    pub regime: Regime,
    pub mapping: Vec<OrbitMapping>,
    pub report: PropertyReport,
}

/// Exponents of `E1 … En` for the orbit with sorted exponents `d`.
pub fn elementary_exponents(d: &[u32]) -> Vec<u32> {
    (0..d.len())
        .map(|k| d[k] - d.get(k + 1).copied().unwrap_or(0))
        .collect()
}

fn rewrite(x: &dyn Semiring, p: &Poly) -> Result<(Poly, Vec<OrbitMapping>)> {
    let mapping: Vec<OrbitMapping> = orbits(x, p)?
        .into_iter()
        .map(|o| OrbitMapping {
            product: elementary_exponents(&o.exps),
            orbit: o.exps,
            coeff: o.coeff,
        })
        .collect();
    let terms = mapping
        .iter()
        .map(|m| Monomial::new(m.coeff.clone(), m.product.clone()))
        .collect();
    Ok((Poly::new(p.n(), terms)?.canonicalize(x), mapping))
}

/// Substitutes `Ej ↦ e_j(x1 … xn)` in `r` and compares with `p` at every strategy point.
pub fn verify_decomposition(
    x: &dyn Semiring,
    p: &Poly,
    r: &Poly,
    strategy: &Strategy,
) -> Result<PropertyReport> {
    let n = p.n();
    if r.n() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: r.n(),
        });
    }
    let es: Vec<Poly> = (1..=n)
        .map(|j| elementary(x, j, n))
        .collect::<Result<_>>()?;
    search("decomposition", x, strategy, n, |point| {
        let lhs = p.evaluate(x, point)?;
        let values: Vec<Element> = es
            .iter()
            .map(|e| e.evaluate(x, point))
            .collect::<Result<_>>()?;
        let rhs = r.evaluate(x, &values)?;
        Ok((lhs != rhs).then(|| {
            format!(
                "p = {} but r(e1..en) = {}",
                x.format(&lhs),
                x.format(&rhs)
            )
        }))
    })
}

fn finish(
    x: &dyn Semiring,
    p: &Poly,
    regime: Regime,
    strategy: &Strategy,
) -> Result<Decomposition> {
    let (r, mapping) = rewrite(x, p)?;
    let report = verify_decomposition(x, p, &r, strategy)?;
    if report.fails() {
        return Err(Error::VerificationFailed(Box::new(report)));
    }
    Ok(Decomposition {
        n: p.n(),
        r,
        regime,
        mapping,
        report,
    })
}

/// Two variables over a Frobenius semiring: `a x^i y^j` (i ≥ j) ↦ `a E2^j E1^(i-j)`.
/// The Frobenius hypothesis is not pre-checked; verification catches it.
pub fn decompose_two_var(x: &dyn Semiring, p: &Poly, strategy: &Strategy) -> Result<Decomposition> {
    if p.n() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            got: p.n(),
        });
    }
    finish(x, p, Regime::TwoVarFrobenius, strategy)
}

fn require(
    x: &dyn Semiring,
    label: &str,
    declared: Option<bool>,
    check: impl FnOnce() -> Result<PropertyReport>,
) -> Result<()> {
    if holds_or_declared(declared, check)? {
        Ok(())
    } else {
        Err(Error::WrongRegime(format!("{} is not {label}", x.name())))
    }
}

pub fn decompose_idempotent(
    x: &dyn Semiring,
    p: &Poly,
    strategy: &Strategy,
) -> Result<Decomposition> {
    let declared = x.declared();
    require(x, "idempotent", declared.idempotent, || is_idempotent(x, strategy))?;
    let n_max = p.degree().max(1);
    require(x, "Frobenius", declared.frobenius, || is_frobenius(x, n_max, strategy))?;
    finish(x, p, Regime::IdempotentFrobenius, strategy)
}

/// Orbit sums are minimal symmetrizations; equal adjacent exponents merge
/// into one block, which gives the same exponent-difference formula.
pub fn decompose_supertropical(
    x: &dyn Semiring,
    p: &Poly,
    strategy: &Strategy,
) -> Result<Decomposition> {
    require(x, "supertropical", x.declared().supertropical, || {
        is_supertropical(x, strategy)
    })?;
    finish(x, p, Regime::Supertropical, strategy)
}

pub fn decompose(
    x: &dyn Semiring,
    p: &Poly,
    regime: Regime,
    strategy: &Strategy,
) -> Result<Decomposition> {
    match regime {
        Regime::TwoVarFrobenius => decompose_two_var(x, p, strategy),
        Regime::IdempotentFrobenius => decompose_idempotent(x, p, strategy),
        Regime::Supertropical => decompose_supertropical(x, p, strategy),
    }
}

/// A declared verdict is trusted; otherwise the check decides.
fn holds_or_declared(
    declared: Option<bool>,
    check: impl FnOnce() -> Result<PropertyReport>,
) -> Result<bool> {
    match declared {
        Some(v) => Ok(v),
        None => Ok(check()?.holds()),
    }
}

/// First applicable regime: two variables over a Frobenius semiring, then
/// idempotent Frobenius, then supertropical.
pub fn choose_regime(x: &dyn Semiring, n: usize, frob_n: u32, strategy: &Strategy) -> Result<Regime> {
    let declared = x.declared();
    let frobenius = holds_or_declared(declared.frobenius, || is_frobenius(x, frob_n, strategy))?;
    if n == 2 && frobenius {
        return Ok(Regime::TwoVarFrobenius);
    }
    if frobenius && holds_or_declared(declared.idempotent, || is_idempotent(x, strategy))? {
        return Ok(Regime::IdempotentFrobenius);
    }
    if holds_or_declared(declared.supertropical, || is_supertropical(x, strategy))? {
        return Ok(Regime::Supertropical);
    }
    Err(Error::WrongRegime(format!(
        "{} is neither Frobenius (for n = 2), idempotent Frobenius nor supertropical",
        x.name()
    )))
}

/// Decomposes `x^k + y^k` as `E1^k` for `1 ≤ k ≤ n_max`; a verification
/// failure at `(x, y)` is a Frobenius violation at exponent `k`.
pub fn frobenius_from_2elementarity_witness(
    x: &dyn Semiring,
    n_max: u32,
    strategy: &Strategy,
) -> Result<PropertyReport> {
    let subject = "frobenius-from-2-elementarity";
    let one = crate::semiring::unit(x)?;
    let mut points = 0;
    for k in 1..=n_max {
        let p = Poly::new(
            2,
            vec![
                Monomial::new(one.clone(), vec![k, 0]),
                Monomial::new(one.clone(), vec![0, k]),
            ],
        )?;
        let (r, _) = rewrite(x, &p)?;
        let report = verify_decomposition(x, &p, &r, strategy)?;
        points += report.points;
        if let Verdict::Fails(w) = report.verdict {
            let (a, b) = (&w.elements[0], &w.elements[1]);
            let sum_pow = crate::semiring::pow(x, &x.add(a, b), k);
            let pow_sum = x.add(&crate::semiring::pow(x, a, k), &crate::semiring::pow(x, b, k));
            let w = Witness::new(
                x,
                w.elements.clone(),
                format!(
                    "(x+y)^{k} = {} but x^{k} + y^{k} = {}, n={k}",
                    x.format(&sum_pow),
                    x.format(&pow_sum)
                ),
            );
            return Ok(PropertyReport::new(subject, Verdict::Fails(w)).with_stats(points, strategy.seed()));
        }
    }
    let mut report = PropertyReport::new(subject, strategy.passing_verdict()).with_stats(points, strategy.seed());
    report.note(format!("x^k + y^k = E1^k verified for k = 1..={n_max}"));
    Ok(report)
}
