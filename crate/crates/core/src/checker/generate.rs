//! Seeded families of test polynomials.

use rand::Rng;

use crate::error::Result;
use crate::poly::{distinct_permutations, elementary, sym_operator, Monomial, Poly};
use crate::semiring::{rng, unit, SampleRng, Semiring};

/// Random exponent vector of total degree at most `max_degree`.
pub fn random_exponents(n: usize, max_degree: u32, r: &mut SampleRng) -> Vec<u32> {
    let mut e: Vec<u32> = (0..n).map(|_| r.gen_range(0..=max_degree)).collect();
    while e.iter().sum::<u32>() > max_degree {
        let nonzero: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
        let i = nonzero[r.gen_range(0..nonzero.len())];
        e[i] -= 1;
    }
    e
}

/// Arbitrary (usually non-symmetric) polynomial with up to `max_terms` terms.
pub fn random_poly(
    x: &dyn Semiring,
    n: usize,
    max_degree: u32,
    max_terms: usize,
    r: &mut SampleRng,
) -> Result<Poly> {
    let k = r.gen_range(1..=max_terms);
    let terms = (0..k)
        .map(|_| Monomial::new(x.sample(r), random_exponents(n, max_degree, r)))
        .collect();
    Poly::new(n, terms)
}

fn orbit_mixture(x: &dyn Semiring, n: usize, max_degree: u32, r: &mut SampleRng) -> Result<Poly> {
    let mut terms = Vec::new();
    for _ in 0..r.gen_range(1..=3) {
        let c = x.sample(r);
        for e in distinct_permutations(&random_exponents(n, max_degree, r)) {
            terms.push(Monomial::new(c.clone(), e));
        }
    }
    Poly::new(n, terms)
}

fn power_sum(x: &dyn Semiring, n: usize, max_degree: u32, r: &mut SampleRng) -> Result<Poly> {
    let k = r.gen_range(1..=max_degree.max(1));
    let c = x.sample(r);
    let terms = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = k;
            Monomial::new(c.clone(), e)
        })
        .collect();
    Poly::new(n, terms)
}

fn elementary_product(x: &dyn Semiring, n: usize, max_degree: u32, r: &mut SampleRng) -> Result<Poly> {
    let mut p = Poly::constant(n, x.sample(r));
    let mut budget = max_degree;
    for _ in 0..r.gen_range(1..=3) {
        let j = r.gen_range(1..=n);
        if j as u32 > budget {
            continue;
        }
        budget -= j as u32;
        p = p.times(x, &elementary(x, j, n)?)?.canonicalize(x);
    }
    Ok(p)
}

fn sym_of_monomial(x: &dyn Semiring, n: usize, max_degree: u32, r: &mut SampleRng) -> Result<Poly> {
    let m = Poly::new(
        n,
        vec![Monomial::new(x.sample(r), random_exponents(n, max_degree, r))],
    )?;
    sym_operator(x, &m)
}

/// `count` symmetric polynomials in `n` variables, cycling through orbit
/// mixtures, power sums, products of elementary polynomials and Sym of
/// random monomials. Deterministic in `seed`.
pub fn symmetric_family(
    x: &dyn Semiring,
    n: usize,
    max_degree: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<Poly>> {
    unit(x)?;
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let p = match i % 4 {
                0 => orbit_mixture(x, n, max_degree, &mut r)?,
                1 => power_sum(x, n, max_degree, &mut r)?,
                2 => elementary_product(x, n, max_degree, &mut r)?,
                _ => sym_of_monomial(x, n, max_degree, &mut r)?,
            };
            Ok(p.canonicalize(x))
        })
        .collect()
}
