//! The semiring abstraction shared by every instance.
//!
//! A semiring is an object-safe [`Semiring`] implementation handed around as a
//! [`SemiringRef`]. Elements are plain [`Element`] values whose payload depends
//! on the instance; equality of payloads is equality of semiring elements.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type SemiringRef = Arc<dyn Semiring>;
pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Nat(BigUint),
    Bool(bool),
    /// Min-plus or max-plus value; `None` is the infinite additive zero.
    Tropical(Option<Rational>),
    Extended(ExtTropical),
    /// Row index into a finite Cayley table.
    Index(usize),
    /// Quasisymmetrization element `(a', a'')`.
    Pair(Box<Element>, Box<Element>),
    /// Canonical representative of a symmetrization class.
    Class(Sign, Box<Element>),
}

impl Element {
    pub fn pair(a: Element, b: Element) -> Element {
        Element::Pair(Box::new(a), Box::new(b))
    }

    pub fn as_pair(&self) -> Option<(&Element, &Element)> {
        match self {
            Element::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

/// Elements of the extended tropical semiring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtTropical {
    NegInfinity,
    Tangible(Rational),
    Ghost(Rational),
}

impl ExtTropical {
    pub fn magnitude(&self) -> Option<&Rational> {
        match self {
            ExtTropical::NegInfinity => None,
            ExtTropical::Tangible(q) | ExtTropical::Ghost(q) => Some(q),
        }
    }
}

/// Sign of a symmetrization class. The zero class is `Balanced` with zero magnitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
    Balanced,
}

/// Verdicts an infinite built-in carries for properties that cannot be
/// decided by search. `None` means "unknown".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Declared {
    pub upper_bound: Option<bool>,
    pub idempotent: Option<bool>,
    pub frobenius: Option<bool>,
    pub supertropical: Option<bool>,
    pub linear: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderMode {
    /// Witness search over a finite carrier.
    Computed,
    /// Built-in rule valid on the whole carrier.
    Analytic,
}

/// How a semiring was built from another one.
#[derive(Clone, Debug)]
pub enum Construction {
    Base,
    Quasisymmetrization(SemiringRef),
    Symmetrization(SemiringRef),
}

pub trait Semiring: fmt::Debug + Send + Sync {
    fn name(&self) -> String;
    fn zero(&self) -> Element;
    fn one(&self) -> Option<Element>;
    fn add(&self, a: &Element, b: &Element) -> Element;
    fn mul(&self, a: &Element, b: &Element) -> Element;

    /// All elements for finite carriers, `None` for infinite ones.
    fn elements(&self) -> Option<Vec<Element>>;

    fn sample(&self, rng: &mut SampleRng) -> Element;

    /// An element sharing structure with `e` (same magnitude, same component…),
    /// used to provoke ties in sampled tuples.
    fn sample_near(&self, e: &Element, _rng: &mut SampleRng) -> Element {
        e.clone()
    }

    /// Small deterministic sub-carrier for exhaustive lemma checks.
    fn test_grid(&self) -> Vec<Element> {
        match self.elements() {
            Some(all) => all,
            None => {
                let mut r = rng(0x5eed);
                let mut pool: Vec<Element> = (0..12).map(|_| self.sample(&mut r)).collect();
                pool.sort();
                pool.dedup();
                pool
            }
        }
    }

    /// Closed-form intrinsic order, when the instance has one.
    fn analytic_leq(&self, _a: &Element, _b: &Element) -> Option<bool> {
        None
    }

    fn declared(&self) -> Declared {
        Declared::default()
    }

    fn parse_literal(&self, s: &str) -> Result<Element>;
    fn format(&self, e: &Element) -> String;

    fn construction(&self) -> Construction {
        Construction::Base
    }
}

impl fmt::Display for dyn Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub(crate) fn literal_error(x: &dyn Semiring, s: &str) -> Error {
    Error::Literal {
        literal: s.to_string(),
        semiring: x.name(),
    }
}

pub fn unit(x: &dyn Semiring) -> Result<Element> {
    x.one().ok_or_else(|| Error::NonUnital(x.name()))
}

pub fn is_finite(x: &dyn Semiring) -> bool {
    x.elements().is_some()
}

pub fn order_mode(x: &dyn Semiring) -> OrderMode {
    let probe = x.zero();
    if x.analytic_leq(&probe, &probe).is_some() {
        OrderMode::Analytic
    } else {
        OrderMode::Computed
    }
}

/// `e^k` by repeated multiplication; `e^0` is the unit.
///
/// # Panics
/// When `k == 0` and the semiring is not unital.
pub fn pow(x: &dyn Semiring, e: &Element, k: u32) -> Element {
    if k == 0 {
        return x.one().expect("x^0 requires a unital semiring");
    }
    let mut acc = e.clone();
    for _ in 1..k {
        acc = x.mul(&acc, e);
    }
    acc
}

/// `1 + 1 + … + 1` (`n` times), by doubling.
pub fn nat_embed(x: &dyn Semiring, n: u64) -> Result<Element> {
    let one = unit(x)?;
    let mut result = x.zero();
    let mut base = one;
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            result = x.add(&result, &base);
        }
        k >>= 1;
        if k > 0 {
            base = x.add(&base, &base);
        }
    }
    Ok(result)
}

pub fn nu(x: &dyn Semiring, e: &Element) -> Element {
    x.add(e, e)
}

pub fn is_ghost(x: &dyn Semiring, e: &Element) -> bool {
    &nu(x, e) == e
}

pub fn sum<'a>(x: &dyn Semiring, items: impl IntoIterator<Item = &'a Element>) -> Element {
    items
        .into_iter()
        .fold(x.zero(), |acc, e| x.add(&acc, e))
}

/// `a ≤ b` iff `a + c = b` for some `c`.
pub fn intrinsic_leq(x: &dyn Semiring, a: &Element, b: &Element) -> Result<bool> {
    if let Some(v) = x.analytic_leq(a, b) {
        return Ok(v);
    }
    match x.elements() {
        Some(all) => Ok(leq_by_witness(x, &all, a, b)),
        None => Err(Error::NeedsAnalyticOrder(x.name())),
    }
}

/// Witness search restricted to `pool`.
pub fn leq_by_witness(x: &dyn Semiring, pool: &[Element], a: &Element, b: &Element) -> bool {
    pool.iter().any(|c| &x.add(a, c) == b)
}

pub fn intrinsic_lt(x: &dyn Semiring, a: &Element, b: &Element) -> Result<bool> {
    Ok(a != b && intrinsic_leq(x, a, b)?)
}

/// How universally quantified statements are tested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Every element / point of a finite carrier.
    Exhaustive,
    /// Seeded random tuples with ties injected.
    Sampled { count: usize, seed: u64 },
    /// Every tuple over an explicit finite pool.
    Grid(Vec<Element>),
}

impl Strategy {
    /// Exhaustive on finite carriers, sampled otherwise.
    pub fn default_for(x: &dyn Semiring, samples: usize, seed: u64) -> Strategy {
        if is_finite(x) {
            Strategy::Exhaustive
        } else {
            Strategy::Sampled {
                count: samples,
                seed,
            }
        }
    }

    pub fn is_proof(&self) -> bool {
        !matches!(self, Strategy::Sampled { .. })
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Strategy::Sampled { seed, .. } => Some(*seed),
            _ => None,
        }
    }

    /// Verdict for a search that found no counterexample.
    pub fn passing_verdict(&self) -> crate::report::Verdict {
        if self.is_proof() {
            crate::report::Verdict::Holds
        } else {
            crate::report::Verdict::SampledHolds
        }
    }

    /// All tuples of the given arity this strategy covers.
    pub fn tuples(&self, x: &dyn Semiring, arity: usize) -> Result<Vec<Vec<Element>>> {
        match self {
            Strategy::Exhaustive => {
                let pool = x
                    .elements()
                    .ok_or_else(|| Error::NeedsFiniteCarrier(x.name()))?;
                Ok(cartesian(&pool, arity))
            }
            Strategy::Grid(pool) => Ok(cartesian(pool, arity)),
            Strategy::Sampled { count, seed } => {
                let mut r = rng(*seed);
                Ok((0..*count).map(|_| sample_point(x, arity, &mut r)).collect())
            }
        }
    }

    /// Single elements covered by this strategy.
    pub fn elements(&self, x: &dyn Semiring) -> Result<Vec<Element>> {
        Ok(self.tuples(x, 1)?.into_iter().map(|mut t| t.remove(0)).collect())
    }
}

pub fn cartesian(pool: &[Element], arity: usize) -> Vec<Vec<Element>> {
    let mut out: Vec<Vec<Element>> = vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::with_capacity(out.len() * pool.len());
        for prefix in &out {
            for e in pool {
                let mut t = prefix.clone();
                t.push(e.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Probability that a coordinate is derived from an earlier one.
const TIE_RATE: f64 = 0.3;

/// A random point of `X^n`. Each coordinate after the first is, with
/// probability [`TIE_RATE`], a [`Semiring::sample_near`] copy of an earlier
/// coordinate so that equal magnitudes show up regularly.
pub fn sample_point(x: &dyn Semiring, n: usize, r: &mut SampleRng) -> Vec<Element> {
    let mut point: Vec<Element> = Vec::with_capacity(n);
    for i in 0..n {
        let e = if i > 0 && r.gen_bool(TIE_RATE) {
            let j = r.gen_range(0..i);
            let src = point[j].clone();
            x.sample_near(&src, r)
        } else {
            x.sample(r)
        };
        point.push(e);
    }
    point
}

/// Rational magnitude in `[-10, 10]` with denominator at most 4.
pub fn sample_magnitude(r: &mut SampleRng) -> Rational {
    let den: i64 = r.gen_range(1..=4);
    let num: i64 = r.gen_range(-10 * den..=10 * den);
    Rational::new(num, den)
}
