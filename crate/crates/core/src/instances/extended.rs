//! The extended tropical semiring: tangible and ghost copies of ℚ plus `−∞`.

use std::cmp::Ordering;

use rand::Rng;

use crate::error::Result;
use crate::rational::{self, Rational};
use crate::semiring::{
    literal_error, sample_magnitude, Declared, Element, ExtTropical, SampleRng, Semiring,
};

#[derive(Debug, Default)]
pub struct ExtendedTropical;

fn ext(e: &Element) -> &ExtTropical {
    match e {
        Element::Extended(v) => v,
        other => panic!("extended_tropical: foreign element {other:?}"),
    }
}

impl ExtendedTropical {
    pub fn tangible(q: Rational) -> Element {
        Element::Extended(ExtTropical::Tangible(q))
    }

    pub fn ghost(q: Rational) -> Element {
        Element::Extended(ExtTropical::Ghost(q))
    }

    pub fn neg_infinity() -> Element {
        Element::Extended(ExtTropical::NegInfinity)
    }

    /// Magnitudes `lo..=hi` in both tangible and ghost form, plus `−∞`.
    pub fn grid(lo: i64, hi: i64) -> Vec<Element> {
        let mut grid = vec![Self::neg_infinity()];
        for k in lo..=hi {
            grid.push(Self::tangible(rational::int(k)));
            grid.push(Self::ghost(rational::int(k)));
        }
        grid
    }
}

impl Semiring for ExtendedTropical {
    fn name(&self) -> String {
        "extended_tropical".into()
    }
    fn zero(&self) -> Element {
        Self::neg_infinity()
    }
    fn one(&self) -> Option<Element> {
        Some(Self::tangible(rational::int(0)))
    }

    /// Larger magnitude wins; equal magnitudes give the ghost.
    fn add(&self, a: &Element, b: &Element) -> Element {
        match (ext(a).magnitude(), ext(b).magnitude()) {
            (None, _) => b.clone(),
            (_, None) => a.clone(),
            (Some(p), Some(q)) => match p.cmp(q) {
                Ordering::Greater => a.clone(),
                Ordering::Less => b.clone(),
                Ordering::Equal => Self::ghost(*p),
            },
        }
    }

    /// Magnitudes add; a ghost factor makes the product a ghost.
    fn mul(&self, a: &Element, b: &Element) -> Element {
        use ExtTropical::*;
        match (ext(a), ext(b)) {
            (NegInfinity, _) | (_, NegInfinity) => Self::neg_infinity(),
            (Tangible(p), Tangible(q)) => Self::tangible(rational::add(p, q)),
            (Ghost(p), Tangible(q)) | (Tangible(p), Ghost(q)) | (Ghost(p), Ghost(q)) => {
                Self::ghost(rational::add(p, q))
            }
        }
    }

    fn elements(&self) -> Option<Vec<Element>> {
        None
    }

    fn sample(&self, rng: &mut SampleRng) -> Element {
        if rng.gen_bool(0.05) {
            return Self::neg_infinity();
        }
        let q = sample_magnitude(rng);
        if rng.gen_bool(0.7) {
            Self::tangible(q)
        } else {
            Self::ghost(q)
        }
    }

    /// Same magnitude, kind redrawn (mostly tangible).
    fn sample_near(&self, e: &Element, rng: &mut SampleRng) -> Element {
        match ext(e).magnitude() {
            None => e.clone(),
            Some(q) if rng.gen_bool(0.75) => Self::tangible(*q),
            Some(q) => Self::ghost(*q),
        }
    }

    fn test_grid(&self) -> Vec<Element> {
        Self::grid(-2, 2)
    }

    fn analytic_leq(&self, a: &Element, b: &Element) -> Option<bool> {
        use ExtTropical::*;
        Some(match (ext(a), ext(b)) {
            (NegInfinity, _) => true,
            (_, NegInfinity) => false,
            (Tangible(p), Tangible(q)) => p <= q,
            (Tangible(p), Ghost(q)) => p <= q,
            (Ghost(p), Tangible(q)) => p < q,
            (Ghost(p), Ghost(q)) => p <= q,
        })
    }

    fn declared(&self) -> Declared {
        Declared {
            upper_bound: Some(true),
            idempotent: Some(false),
            frobenius: Some(true),
            supertropical: Some(true),
            linear: Some(true),
        }
    }

    fn parse_literal(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        if s == "-inf" {
            return Ok(Self::neg_infinity());
        }
        if let Some(body) = s.strip_suffix('v') {
            return rational::parse(body)
                .map(Self::ghost)
                .ok_or_else(|| literal_error(self, s));
        }
        rational::parse(s)
            .map(Self::tangible)
            .ok_or_else(|| literal_error(self, s))
    }

    fn format(&self, e: &Element) -> String {
        match ext(e) {
            ExtTropical::NegInfinity => "-inf".into(),
            ExtTropical::Tangible(q) => rational::format(q),
            ExtTropical::Ghost(q) => format!("{}v", rational::format(q)),
        }
    }
}
