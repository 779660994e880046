//! Sparse multivariate polynomial expressions over a semiring.
//!
//! A [`Poly`] is a syntactic object: a list of monomials `a · x1^d1 ⋯ xn^dn`.
//! Evaluation realizes the polynomial function; [`Poly::canonicalize`] folds
//! duplicate exponent vectors, drops zero coefficients and sorts terms in
//! descending graded-lexicographic order.

mod sym;
mod text;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::semiring::{Element, Semiring};

pub use sym::{
    check_permutation_invariance, distinct_permutations, elementary, is_symmetric_expr, minsym,
    orbits, permutations, sym_operator, Orbit, MAX_PERMUTATION_VARS,
};
pub use text::{format_poly, format_poly_in, parse_poly, parse_poly_in};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: Element,
    pub exps: Vec<u32>,
}

impl Monomial {
    pub fn new(coeff: Element, exps: Vec<u32>) -> Self {
        Monomial { coeff, exps }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

/// Graded lexicographic order on exponent vectors.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: Vec<Monomial>,
    canonical: bool,
}

impl Poly {
    pub fn new(n: usize, terms: Vec<Monomial>) -> Result<Self> {
        if let Some(bad) = terms.iter().find(|t| t.exps.len() != n) {
            return Err(Error::ArityMismatch {
                expected: n,
                got: bad.exps.len(),
            });
        }
        Ok(Poly {
            n,
            terms,
            canonical: false,
        })
    }

    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: Vec::new(),
            canonical: true,
        }
    }

    pub fn constant(n: usize, c: Element) -> Self {
        Poly {
            n,
            terms: vec![Monomial::new(c, vec![0; n])],
            canonical: false,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn canonicalize(&self, x: &dyn Semiring) -> Poly {
        if self.canonical {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| grlex(&b.exps, &a.exps));
        let zero = x.zero();
        let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.exps == t.exps => last.coeff = x.add(&last.coeff, &t.coeff),
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coeff != zero);
        Poly {
            n: self.n,
            terms: out,
            canonical: true,
        }
    }

    /// Concatenation of the term lists (not canonical).
    pub fn plus(&self, other: &Poly) -> Result<Poly> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Poly::new(self.n, terms)
    }

    /// Expanded product by distributivity (not canonical).
    pub fn times(&self, x: &dyn Semiring, other: &Poly) -> Result<Poly> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for s in &self.terms {
            for t in &other.terms {
                let exps = s.exps.iter().zip(&t.exps).map(|(a, b)| a + b).collect();
                terms.push(Monomial::new(x.mul(&s.coeff, &t.coeff), exps));
            }
        }
        Poly::new(self.n, terms)
    }

    /// Multiplies every coefficient by `a` on the left.
    pub fn scale(&self, x: &dyn Semiring, a: &Element) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|t| Monomial::new(x.mul(a, &t.coeff), t.exps.clone()))
            .collect();
        Poly {
            n: self.n,
            terms,
            canonical: false,
        }
    }

    /// `p ∘ σ`, i.e. `p(x_σ(1), …, x_σ(n))`.
    pub fn permuted(&self, sigma: &[usize]) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut exps = vec![0; self.n];
                for (j, &d) in t.exps.iter().enumerate() {
                    exps[sigma[j]] = d;
                }
                Monomial::new(t.coeff.clone(), exps)
            })
            .collect();
        Poly {
            n: self.n,
            terms,
            canonical: false,
        }
    }

    pub fn evaluate(&self, x: &dyn Semiring, point: &[Element]) -> Result<Element> {
        evaluate(x, self, point)
    }
}

/// Value of `p` at `point`. The empty sum is zero; zero exponents contribute nothing.
pub fn evaluate(x: &dyn Semiring, p: &Poly, point: &[Element]) -> Result<Element> {
    if point.len() != p.n {
        return Err(Error::ArityMismatch {
            expected: p.n,
            got: point.len(),
        });
    }
    // powers[j][d - 1] = point[j]^d
    let mut max_exp = vec![0u32; p.n];
    for t in &p.terms {
        for (m, &d) in max_exp.iter_mut().zip(&t.exps) {
            *m = (*m).max(d);
        }
    }
    let powers: Vec<Vec<Element>> = point
        .iter()
        .zip(&max_exp)
        .map(|(v, &m)| {
            let mut row: Vec<Element> = Vec::with_capacity(m as usize);
            for d in 0..m as usize {
                let next = if d == 0 { v.clone() } else { x.mul(&row[d - 1], v) };
                row.push(next);
            }
            row
        })
        .collect();
    let mut acc = x.zero();
    for t in &p.terms {
        let mut value = t.coeff.clone();
        for (j, &d) in t.exps.iter().enumerate() {
            if d > 0 {
                value = x.mul(&value, &powers[j][d as usize - 1]);
            }
        }
        acc = x.add(&acc, &value);
    }
    Ok(acc)
}

pub fn canonicalize(x: &dyn Semiring, p: &Poly) -> Poly {
    p.canonicalize(x)
}
