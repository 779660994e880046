//! The quasisymmetrization `S(X) = X × X`.

use rand::Rng;

use crate::error::Result;
use crate::semiring::{
    cartesian, intrinsic_leq, literal_error, Construction, Declared, Element, SampleRng, Semiring,
    SemiringRef,
};

#[derive(Debug, Clone)]
pub struct Quasisymmetrization {
    inner: SemiringRef,
}

pub(crate) fn split_pair(e: &Element) -> (&Element, &Element) {
    e.as_pair()
        .unwrap_or_else(|| panic!("pair semiring: foreign element {e:?}"))
}

/// `(a', a'') · (b', b'') = (a'b' + a''b'', a'b'' + a''b')` over `x`.
pub fn twisted_mul(
    x: &dyn Semiring,
    (a1, a2): (&Element, &Element),
    (b1, b2): (&Element, &Element),
) -> (Element, Element) {
    (
        x.add(&x.mul(a1, b1), &x.mul(a2, b2)),
        x.add(&x.mul(a1, b2), &x.mul(a2, b1)),
    )
}

/// Splits `s` at top-level occurrences of `sep`, ignoring separators nested in parentheses.
pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

impl Quasisymmetrization {
    pub fn new(inner: SemiringRef) -> Self {
        Quasisymmetrization { inner }
    }

    pub fn inner(&self) -> &SemiringRef {
        &self.inner
    }

    /// The embedding `x ↦ (x, 0)`.
    pub fn embed(&self, e: &Element) -> Element {
        Element::pair(e.clone(), self.inner.zero())
    }
}

impl Semiring for Quasisymmetrization {
    fn name(&self) -> String {
        format!("quasi:{}", self.inner.name())
    }
    fn zero(&self) -> Element {
        Element::pair(self.inner.zero(), self.inner.zero())
    }
    fn one(&self) -> Option<Element> {
        Some(Element::pair(self.inner.one()?, self.inner.zero()))
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        let (a1, a2) = split_pair(a);
        let (b1, b2) = split_pair(b);
        Element::pair(self.inner.add(a1, b1), self.inner.add(a2, b2))
    }
    fn mul(&self, a: &Element, b: &Element) -> Element {
        let (c1, c2) = twisted_mul(self.inner.as_ref(), split_pair(a), split_pair(b));
        Element::pair(c1, c2)
    }
    fn elements(&self) -> Option<Vec<Element>> {
        let inner = self.inner.elements()?;
        Some(
            cartesian(&inner, 2)
                .into_iter()
                .map(|mut t| {
                    let b = t.pop().unwrap();
                    let a = t.pop().unwrap();
                    Element::pair(a, b)
                })
                .collect(),
        )
    }
    fn sample(&self, rng: &mut SampleRng) -> Element {
        let a = self.inner.sample(rng);
        let b = self.inner.sample(rng);
        match rng.gen_range(0..10) {
            0..=2 => Element::pair(a, self.inner.zero()),
            3 => Element::pair(self.inner.zero(), b),
            _ => Element::pair(a, b),
        }
    }
    fn sample_near(&self, e: &Element, rng: &mut SampleRng) -> Element {
        let (a, b) = split_pair(e);
        Element::pair(self.inner.sample_near(a, rng), self.inner.sample_near(b, rng))
    }
    fn test_grid(&self) -> Vec<Element> {
        let g = self.inner.test_grid();
        cartesian(&g, 2)
            .into_iter()
            .map(|mut t| {
                let b = t.pop().unwrap();
                let a = t.pop().unwrap();
                Element::pair(a, b)
            })
            .collect()
    }
    fn analytic_leq(&self, a: &Element, b: &Element) -> Option<bool> {
        // Addition is componentwise, so witnesses can be chosen per component.
        let (a1, a2) = split_pair(a);
        let (b1, b2) = split_pair(b);
        let x = self.inner.as_ref();
        Some(intrinsic_leq(x, a1, b1).ok()? && intrinsic_leq(x, a2, b2).ok()?)
    }
    fn declared(&self) -> Declared {
        let inner = self.inner.declared();
        Declared {
            upper_bound: inner.upper_bound,
            idempotent: inner.idempotent,
            ..Declared::default()
        }
    }
    fn parse_literal(&self, s: &str) -> Result<Element> {
        let t = s.trim();
        let body = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| literal_error(self, t))?;
        match split_top_level(body, '|').as_slice() {
            [a, b] => Ok(Element::pair(
                self.inner.parse_literal(a)?,
                self.inner.parse_literal(b)?,
            )),
            _ => Err(literal_error(self, t)),
        }
    }
    fn format(&self, e: &Element) -> String {
        let (a, b) = split_pair(e);
        format!("({}|{})", self.inner.format(a), self.inner.format(b))
    }
    fn construction(&self) -> Construction {
        Construction::Quasisymmetrization(self.inner.clone())
    }
}
