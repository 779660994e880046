//! Symmetry: orbits, the Sym and Minsym operators, elementary polynomials.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;

use super::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::predicates::search;
use crate::report::PropertyReport;
use crate::semiring::{rng, unit, Element, Semiring, Strategy};

/// Largest `n` for which `S_n` is enumerated.
pub const MAX_PERMUTATION_VARS: usize = 8;

/// All of `S_n` in lexicographic order.
pub fn permutations(n: usize) -> Result<Vec<Vec<usize>>> {
    if n > MAX_PERMUTATION_VARS {
        return Err(Error::PermutationLimit {
            n,
            limit: MAX_PERMUTATION_VARS,
        });
    }
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    Ok(out)
}

/// Distinct rearrangements of a multiset, in lexicographic order.
pub fn distinct_permutations(values: &[u32]) -> Vec<Vec<u32>> {
    let mut current = values.to_vec();
    current.sort_unstable();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The exponent multiset of a symmetric expression together with its shared coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Exponents sorted non-increasing.
    pub exps: Vec<u32>,
    pub coeff: Element,
}

fn sorted_desc(exps: &[u32]) -> Vec<u32> {
    let mut s = exps.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

/// Groups the canonical form of `p` by exponent orbit. Fails with
/// `NonSymmetric` when an orbit is incomplete or its coefficients differ.
pub fn orbits(x: &dyn Semiring, p: &Poly) -> Result<Vec<Orbit>> {
    let p = p.canonicalize(x);
    let mut groups: BTreeMap<Vec<u32>, Vec<&Monomial>> = BTreeMap::new();
    for t in p.terms() {
        groups.entry(sorted_desc(&t.exps)).or_default().push(t);
    }
    let mut out = Vec::with_capacity(groups.len());
    // descending so that orbits come out in the same order as canonical terms
    for (exps, members) in groups.into_iter().rev() {
        let coeff = members[0].coeff.clone();
        if let Some(odd) = members.iter().find(|m| m.coeff != coeff) {
            return Err(Error::NonSymmetric(format!(
                "orbit {exps:?}: coefficient {} at {:?} differs from {} at {:?}",
                x.format(&odd.coeff),
                odd.exps,
                x.format(&coeff),
                members[0].exps
            )));
        }
        let expected = distinct_permutations(&exps).len();
        if members.len() != expected {
            let present: Vec<&Vec<u32>> = members.iter().map(|m| &m.exps).collect();
            let missing = distinct_permutations(&exps)
                .into_iter()
                .find(|e| !present.contains(&e))
                .unwrap_or_default();
            return Err(Error::NonSymmetric(format!(
                "orbit {exps:?}: exponent vector {missing:?} is missing"
            )));
        }
        out.push(Orbit { exps, coeff });
    }
    Ok(out)
}

/// Orbit-coefficient equality on the canonical form.
pub fn is_symmetric_expr(x: &dyn Semiring, p: &Poly) -> bool {
    orbits(x, p).is_ok()
}

/// `Σ_{σ ∈ S_n} p ∘ σ`, canonicalized.
pub fn sym_operator(x: &dyn Semiring, p: &Poly) -> Result<Poly> {
    let mut terms = Vec::new();
    for sigma in permutations(p.n())? {
        terms.extend(p.permuted(&sigma).terms().iter().cloned());
    }
    Ok(Poly::new(p.n(), terms)?.canonicalize(x))
}

/// Sum of the distinct rearrangements of `x1^d1 ⋯ xn^dn`, each with coefficient one.
pub fn minsym(x: &dyn Semiring, sorted_exps: &[u32]) -> Result<Poly> {
    if sorted_exps.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::UnsortedExponents(sorted_exps.to_vec()));
    }
    let one = unit(x)?;
    let terms = distinct_permutations(sorted_exps)
        .into_iter()
        .map(|e| Monomial::new(one.clone(), e))
        .collect();
    Ok(Poly::new(sorted_exps.len(), terms)?.canonicalize(x))
}

/// `e_j` in `n` variables.
pub fn elementary(x: &dyn Semiring, j: usize, n: usize) -> Result<Poly> {
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    let mut exps = vec![0u32; n];
    exps[..j].fill(1);
    minsym(x, &exps)
}

/// Semantic symmetry test: `p(v) = p(σ·v)` at each strategy point. All of
/// `S_n` is used up to `n = 5`; beyond that 120 seeded random permutations.
pub fn check_permutation_invariance(
    x: &dyn Semiring,
    p: &Poly,
    strategy: &Strategy,
) -> Result<PropertyReport> {
    let n = p.n();
    let sigmas = if n <= 5 {
        permutations(n)?
    } else {
        let mut r = rng(strategy.seed().unwrap_or(0) ^ 0x5157);
        (0..120)
            .map(|_| {
                let mut s: Vec<usize> = (0..n).collect();
                s.shuffle(&mut r);
                s
            })
            .collect()
    };
    search("permutation-invariance", x, strategy, n, |point| {
        let base = p.evaluate(x, point)?;
        for sigma in &sigmas {
            let moved: Vec<Element> = sigma.iter().map(|&i| point[i].clone()).collect();
            let v = p.evaluate(x, &moved)?;
            if v != base {
                return Ok(Some(format!(
                    "p = {} but p at permutation {:?} = {}",
                    x.format(&base),
                    sigma,
                    x.format(&v)
                )));
            }
        }
        Ok(None)
    })
}
