//! Naturals, Booleans and the min-plus / max-plus semirings.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;

use crate::error::Result;
use crate::rational::{self, Rational};
use crate::semiring::{
    literal_error, sample_magnitude, Declared, Element, SampleRng, Semiring,
};

/// `(ℕ, +, ·)` with arbitrary-precision integers.
#[derive(Debug, Default)]
pub struct Naturals;

fn nat(e: &Element) -> &BigUint {
    match e {
        Element::Nat(n) => n,
        other => panic!("naturals: foreign element {other:?}"),
    }
}

impl Semiring for Naturals {
    fn name(&self) -> String {
        "naturals".into()
    }
    fn zero(&self) -> Element {
        Element::Nat(BigUint::zero())
    }
    fn one(&self) -> Option<Element> {
        Some(Element::Nat(BigUint::from(1u32)))
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        Element::Nat(nat(a) + nat(b))
    }
    fn mul(&self, a: &Element, b: &Element) -> Element {
        Element::Nat(nat(a) * nat(b))
    }
    fn elements(&self) -> Option<Vec<Element>> {
        None
    }
    fn sample(&self, rng: &mut SampleRng) -> Element {
        Element::Nat(BigUint::from(rng.gen_range(0u32..=20)))
    }
    fn test_grid(&self) -> Vec<Element> {
        (0u32..=5).map(|n| Element::Nat(n.into())).collect()
    }
    fn analytic_leq(&self, a: &Element, b: &Element) -> Option<bool> {
        Some(nat(a) <= nat(b))
    }
    fn declared(&self) -> Declared {
        Declared {
            upper_bound: Some(true),
            idempotent: Some(false),
            frobenius: Some(false),
            supertropical: Some(false),
            linear: Some(true),
        }
    }
    fn parse_literal(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(literal_error(self, s));
        }
        s.parse::<BigUint>()
            .map(Element::Nat)
            .map_err(|_| literal_error(self, s))
    }
    fn format(&self, e: &Element) -> String {
        nat(e).to_string()
    }
}

/// `({0, 1}, ∨, ∧)`.
#[derive(Debug, Default)]
pub struct Boolean;

fn boolean(e: &Element) -> bool {
    match e {
        Element::Bool(b) => *b,
        other => panic!("boolean: foreign element {other:?}"),
    }
}

impl Semiring for Boolean {
    fn name(&self) -> String {
        "boolean".into()
    }
    fn zero(&self) -> Element {
        Element::Bool(false)
    }
    fn one(&self) -> Option<Element> {
        Some(Element::Bool(true))
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        Element::Bool(boolean(a) || boolean(b))
    }
    fn mul(&self, a: &Element, b: &Element) -> Element {
        Element::Bool(boolean(a) && boolean(b))
    }
    fn elements(&self) -> Option<Vec<Element>> {
        Some(vec![Element::Bool(false), Element::Bool(true)])
    }
    fn sample(&self, rng: &mut SampleRng) -> Element {
        Element::Bool(rng.gen_bool(0.5))
    }
    fn analytic_leq(&self, a: &Element, b: &Element) -> Option<bool> {
        Some(boolean(a) <= boolean(b))
    }
    fn declared(&self) -> Declared {
        Declared {
            upper_bound: Some(true),
            idempotent: Some(true),
            frobenius: Some(true),
            supertropical: Some(true),
            linear: Some(true),
        }
    }
    fn parse_literal(&self, s: &str) -> Result<Element> {
        match s.trim() {
            "0" | "false" => Ok(Element::Bool(false)),
            "1" | "true" => Ok(Element::Bool(true)),
            other => Err(literal_error(self, other)),
        }
    }
    fn format(&self, e: &Element) -> String {
        if boolean(e) { "1" } else { "0" }.into()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TropicalKind {
    /// `ℚ ∪ {+∞}` with `min` and `+`.
    Min,
    /// `ℚ ∪ {−∞}` with `max` and `+`.
    Max,
}

/// The min-plus or max-plus semiring over exact rationals.
#[derive(Debug)]
pub struct Tropical {
    pub kind: TropicalKind,
}

fn trop(e: &Element) -> Option<&Rational> {
    match e {
        Element::Tropical(v) => v.as_ref(),
        other => panic!("tropical: foreign element {other:?}"),
    }
}

impl Tropical {
    pub fn min_plus() -> Self {
        Tropical {
            kind: TropicalKind::Min,
        }
    }

    pub fn max_plus() -> Self {
        Tropical {
            kind: TropicalKind::Max,
        }
    }

    pub fn value(q: Rational) -> Element {
        Element::Tropical(Some(q))
    }

    fn infinity_literal(&self) -> &'static str {
        match self.kind {
            TropicalKind::Min => "inf",
            TropicalKind::Max => "-inf",
        }
    }

    /// Order in which `+` picks the larger operand; the zero is the least.
    fn cmp_sum(&self, a: Option<&Rational>, b: Option<&Rational>) -> Ordering {
        match (a, b) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(p), Some(q)) => match self.kind {
                TropicalKind::Max => p.cmp(q),
                TropicalKind::Min => q.cmp(p),
            },
        }
    }
}

impl Semiring for Tropical {
    fn name(&self) -> String {
        match self.kind {
            TropicalKind::Min => "min_plus",
            TropicalKind::Max => "max_plus",
        }
        .into()
    }
    fn zero(&self) -> Element {
        Element::Tropical(None)
    }
    fn one(&self) -> Option<Element> {
        Some(Element::Tropical(Some(rational::int(0))))
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        if self.cmp_sum(trop(a), trop(b)) == Ordering::Less {
            b.clone()
        } else {
            a.clone()
        }
    }
    fn mul(&self, a: &Element, b: &Element) -> Element {
        match (trop(a), trop(b)) {
            (Some(p), Some(q)) => Element::Tropical(Some(rational::add(p, q))),
            _ => Element::Tropical(None),
        }
    }
    fn elements(&self) -> Option<Vec<Element>> {
        None
    }
    fn sample(&self, rng: &mut SampleRng) -> Element {
        if rng.gen_bool(0.05) {
            Element::Tropical(None)
        } else {
            Element::Tropical(Some(sample_magnitude(rng)))
        }
    }
    fn test_grid(&self) -> Vec<Element> {
        let mut grid = vec![Element::Tropical(None)];
        grid.extend((-2..=2).map(|k| Element::Tropical(Some(rational::int(k)))));
        grid
    }
    fn analytic_leq(&self, a: &Element, b: &Element) -> Option<bool> {
        Some(self.cmp_sum(trop(a), trop(b)) != Ordering::Greater)
    }
    fn declared(&self) -> Declared {
        Declared {
            upper_bound: Some(true),
            idempotent: Some(true),
            frobenius: Some(true),
            supertropical: Some(true),
            linear: Some(true),
        }
    }
    fn parse_literal(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        if s == self.infinity_literal() {
            return Ok(Element::Tropical(None));
        }
        rational::parse(s)
            .map(|q| Element::Tropical(Some(q)))
            .ok_or_else(|| literal_error(self, s))
    }
    fn format(&self, e: &Element) -> String {
        match trop(e) {
            None => self.infinity_literal().into(),
            Some(q) => rational::format(q),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{intrinsic_leq, nat_embed, nu};

    #[test]
    fn min_plus_add_is_min() {
        let x = Tropical::min_plus();
        let two = x.parse_literal("2").unwrap();
        let five = x.parse_literal("5").unwrap();
        assert_eq!(x.add(&two, &five), two);
        assert_eq!(x.mul(&two, &five), x.parse_literal("7").unwrap());
        assert_eq!(x.add(&x.zero(), &five), five);
        assert_eq!(x.mul(&x.zero(), &five), x.zero());
    }

    #[test]
    fn min_plus_order_is_reversed() {
        let x = Tropical::min_plus();
        let two = x.parse_literal("2").unwrap();
        let five = x.parse_literal("5").unwrap();
        assert!(intrinsic_leq(&x, &five, &two).unwrap());
        assert!(!intrinsic_leq(&x, &two, &five).unwrap());
        assert!(intrinsic_leq(&x, &x.zero(), &two).unwrap());
        assert_eq!(nu(&x, &two), two);
    }

    #[test]
    fn max_plus_zero_is_least() {
        let x = Tropical::max_plus();
        for lit in ["-3", "0", "7/2"] {
            let a = x.parse_literal(lit).unwrap();
            assert!(intrinsic_leq(&x, &x.zero(), &a).unwrap());
        }
        assert!(x.parse_literal("inf").is_err());
        assert_eq!(x.format(&x.zero()), "-inf");
    }

    #[test]
    fn nat_embed_on_naturals() {
        let x = Naturals;
        assert_eq!(nat_embed(&x, 5).unwrap(), x.parse_literal("5").unwrap());
        assert_eq!(nat_embed(&x, 0).unwrap(), x.zero());
        assert_eq!(nat_embed(&x, 1).unwrap(), x.one().unwrap());
        let three = x.parse_literal("3").unwrap();
        assert_eq!(nu(&x, &three), x.parse_literal("6").unwrap());
        assert!(intrinsic_leq(&x, &x.parse_literal("2").unwrap(), &x.parse_literal("5").unwrap()).unwrap());
    }

    #[test]
    fn boolean_literals() {
        let x = Boolean;
        assert_eq!(x.parse_literal("true").unwrap(), Element::Bool(true));
        assert_eq!(x.format(&Element::Bool(false)), "0");
        assert!(x.parse_literal("2").is_err());
    }
}
