//! The symmetrization `S̃(X) = S(X)/∼`.
//!
//! `∼` relates two pairs when they are equal, or when both are unbalanced and
//! their cross sums agree. For idempotent, linearly ordered `X` in which
//! `a < b` forces `ax = 0` or `ax < bx`, every unbalanced class is fixed by
//! its dominant coordinate, so classes are stored as (sign, magnitude):
//! `Positive(a)` = `{(a, b) : b < a}`, `Negative(a)` = `{(b, a) : b < a}`,
//! `Balanced(a)` = `{(a, a)}`. The zero class is `Balanced(0)`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::predicates::{is_idempotent, is_linear_order, search};
use crate::report::{PropertyReport, Verdict};
use crate::semiring::{
    intrinsic_leq, intrinsic_lt, literal_error, Construction, Declared, Element, SampleRng,
    Semiring, SemiringRef, Sign, Strategy,
};

use super::quasi::twisted_mul;

/// The relation `∼` on raw pairs of `x`.
pub fn sym_related(
    x: &dyn Semiring,
    (a1, a2): (&Element, &Element),
    (b1, b2): (&Element, &Element),
) -> bool {
    (a1 == b1 && a2 == b2) || (a1 != a2 && b1 != b2 && x.add(a1, b2) == x.add(a2, b1))
}

/// `X` is idempotent, linearly ordered, and `a < b ⟹ ax = 0 ∨ ax < bx`.
pub fn is_symmetrizable_upper_bound(
    x: &dyn Semiring,
    strategy: &Strategy,
) -> Result<PropertyReport> {
    let idem = is_idempotent(x, strategy)?;
    if idem.fails() {
        return Ok(relabel(idem, "not idempotent"));
    }
    let linear = is_linear_order(x, strategy)?;
    if linear.fails() {
        return Ok(relabel(linear, "not linearly ordered"));
    }
    let zero = x.zero();
    let mut report = search("symmetrizable-upper-bound", x, strategy, 3, |t| {
        let (a, b, c) = (&t[0], &t[1], &t[2]);
        if !intrinsic_lt(x, a, b)? {
            return Ok(None);
        }
        let (ac, bc) = (x.mul(a, c), x.mul(b, c));
        if ac == zero || intrinsic_lt(x, &ac, &bc)? {
            Ok(None)
        } else {
            Ok(Some("a < b but a*x != 0 and not a*x < b*x".into()))
        }
    })?;
    if !strategy.is_proof() && report.holds() {
        report.verdict = Verdict::SampledHolds;
    }
    Ok(report)
}

fn relabel(mut r: PropertyReport, why: &str) -> PropertyReport {
    r.subject = "symmetrizable-upper-bound".into();
    if let Verdict::Fails(w) = &mut r.verdict {
        w.description = format!("{} ({why})", w.description);
    }
    r
}

#[derive(Debug, Clone)]
pub struct Symmetrization {
    inner: SemiringRef,
}

/// Builds `S̃(X)`, failing unless `X` passes [`is_symmetrizable_upper_bound`].
pub fn symmetrize(inner: SemiringRef, strategy: &Strategy) -> Result<Symmetrization> {
    let report = is_symmetrizable_upper_bound(inner.as_ref(), strategy)?;
    match &report.verdict {
        Verdict::Fails(w) => Err(Error::NotSymmetrizable {
            semiring: inner.name(),
            reason: w.description.clone(),
        }),
        _ => Ok(Symmetrization { inner }),
    }
}

fn class(e: &Element) -> (Sign, &Element) {
    match e {
        Element::Class(s, m) => (*s, m),
        other => panic!("symmetrization: foreign element {other:?}"),
    }
}

impl Symmetrization {
    pub fn inner(&self) -> &SemiringRef {
        &self.inner
    }

    /// Class of the raw pair `(a, b)`.
    pub fn canonical(&self, a: &Element, b: &Element) -> Element {
        let x = self.inner.as_ref();
        if a == b {
            Element::Class(Sign::Balanced, Box::new(a.clone()))
        } else if intrinsic_leq(x, b, a).expect("inner order") {
            Element::Class(Sign::Positive, Box::new(a.clone()))
        } else {
            Element::Class(Sign::Negative, Box::new(b.clone()))
        }
    }

    /// Representative pair of a class.
    pub fn representative(&self, e: &Element) -> (Element, Element) {
        let (sign, m) = class(e);
        let zero = self.inner.zero();
        match sign {
            Sign::Positive => (m.clone(), zero),
            Sign::Negative => (zero, m.clone()),
            Sign::Balanced => (m.clone(), m.clone()),
        }
    }

    /// The embedding `x ↦ [(x, 0)]`.
    pub fn embed(&self, e: &Element) -> Element {
        self.canonical(e, &self.inner.zero())
    }

    fn magnitude<'a>(&self, e: &'a Element) -> &'a Element {
        class(e).1
    }
}

impl Semiring for Symmetrization {
    fn name(&self) -> String {
        format!("symm:{}", self.inner.name())
    }
    fn zero(&self) -> Element {
        Element::Class(Sign::Balanced, Box::new(self.inner.zero()))
    }
    fn one(&self) -> Option<Element> {
        Some(self.canonical(&self.inner.one()?, &self.inner.zero()))
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        let (a1, a2) = self.representative(a);
        let (b1, b2) = self.representative(b);
        self.canonical(&self.inner.add(&a1, &b1), &self.inner.add(&a2, &b2))
    }
    fn mul(&self, a: &Element, b: &Element) -> Element {
        let (a1, a2) = self.representative(a);
        let (b1, b2) = self.representative(b);
        let (c1, c2) = twisted_mul(self.inner.as_ref(), (&a1, &a2), (&b1, &b2));
        self.canonical(&c1, &c2)
    }
    fn elements(&self) -> Option<Vec<Element>> {
        let inner = self.inner.elements()?;
        let zero = self.inner.zero();
        let mut out = vec![self.zero()];
        for m in inner.into_iter().filter(|m| *m != zero) {
            for sign in [Sign::Positive, Sign::Negative, Sign::Balanced] {
                out.push(Element::Class(sign, Box::new(m.clone())));
            }
        }
        Some(out)
    }
    fn sample(&self, rng: &mut SampleRng) -> Element {
        let m = self.inner.sample(rng);
        if m == self.inner.zero() {
            return self.zero();
        }
        let sign = match rng.gen_range(0..10) {
            0..=3 => Sign::Positive,
            4..=6 => Sign::Negative,
            _ => Sign::Balanced,
        };
        Element::Class(sign, Box::new(m))
    }
    fn sample_near(&self, e: &Element, rng: &mut SampleRng) -> Element {
        let (_, m) = class(e);
        if *m == self.inner.zero() {
            return e.clone();
        }
        let sign = [Sign::Positive, Sign::Negative, Sign::Balanced][rng.gen_range(0..3)];
        Element::Class(sign, Box::new(m.clone()))
    }
    fn test_grid(&self) -> Vec<Element> {
        let zero = self.inner.zero();
        let mut out = vec![self.zero()];
        for m in self.inner.test_grid().into_iter().filter(|m| *m != zero) {
            for sign in [Sign::Positive, Sign::Negative, Sign::Balanced] {
                out.push(Element::Class(sign, Box::new(m.clone())));
            }
        }
        out
    }
    /// `x ≤ y` iff `x = y`, `|y| > |x|`, or `y` is balanced with `|y| ≥ |x|`.
    fn analytic_leq(&self, a: &Element, b: &Element) -> Option<bool> {
        if a == b {
            return Some(true);
        }
        let x = self.inner.as_ref();
        let (ma, mb) = (self.magnitude(a), self.magnitude(b));
        let balanced = class(b).0 == Sign::Balanced;
        Some(intrinsic_lt(x, ma, mb).ok()? || (balanced && intrinsic_leq(x, ma, mb).ok()?))
    }
    fn declared(&self) -> Declared {
        Declared {
            upper_bound: Some(true),
            idempotent: Some(true),
            linear: Some(false),
            ..Declared::default()
        }
    }
    fn parse_literal(&self, s: &str) -> Result<Element> {
        let t = s.trim();
        if t == "0" {
            return Ok(self.zero());
        }
        let mut chars = t.chars();
        let sign = chars.next().ok_or_else(|| literal_error(self, t))?;
        let m = self.inner.parse_literal(chars.as_str())?;
        let zero = self.inner.zero();
        Ok(match sign {
            '+' => self.canonical(&m, &zero),
            '-' => self.canonical(&zero, &m),
            '.' => self.canonical(&m, &m),
            _ => return Err(literal_error(self, t)),
        })
    }
    fn format(&self, e: &Element) -> String {
        if *e == self.zero() {
            return "0".into();
        }
        let (sign, m) = class(e);
        let prefix = match sign {
            Sign::Positive => '+',
            Sign::Negative => '-',
            Sign::Balanced => '.',
        };
        format!("{prefix}{}", self.inner.format(m))
    }
    fn construction(&self) -> Construction {
        Construction::Symmetrization(self.inner.clone())
    }
}
