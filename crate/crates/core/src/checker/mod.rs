//! Executable checks of the structural theorems about semirings.
//!
//! Every check first evaluates the hypotheses of its statement and reports
//! `not-applicable` when one of them fails, so that implications are never
//! passed vacuously. Conclusions are then tested exhaustively on finite
//! carriers and on seeded samples (or small grids) otherwise.

pub mod generate;

mod elementary;
mod structure;
mod symmetrized;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::report::{PropertyReport, Verdict, Witness};
use crate::semiring::{is_finite, Element, Semiring, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    OrderIdem,
    LinearFrob,
    TwoInFrob,
    Frob2Elem,
    SymFacts,
    FactorIdem,
    ElemFactIdem,
    IdemEquiv,
    NuProps,
    SupertropProps,
    Fibers,
    StrictIneq,
    TangibleSum,
    FactorSuper,
    SuperFullElem,
    QuasiElem,
    UbSymmetrizable,
    SymElem,
    TropicalFullElem,
}

impl TheoremId {
    pub const ALL: [TheoremId; 19] = [
        TheoremId::OrderIdem,
        TheoremId::LinearFrob,
        TheoremId::TwoInFrob,
        TheoremId::Frob2Elem,
        TheoremId::SymFacts,
        TheoremId::FactorIdem,
        TheoremId::ElemFactIdem,
        TheoremId::IdemEquiv,
        TheoremId::NuProps,
        TheoremId::SupertropProps,
        TheoremId::Fibers,
        TheoremId::StrictIneq,
        TheoremId::TangibleSum,
        TheoremId::FactorSuper,
        TheoremId::SuperFullElem,
        TheoremId::QuasiElem,
        TheoremId::UbSymmetrizable,
        TheoremId::SymElem,
        TheoremId::TropicalFullElem,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::OrderIdem => "P-order-idem",
            TheoremId::LinearFrob => "P-linear-frob",
            TheoremId::TwoInFrob => "L-two-in-frob",
            TheoremId::Frob2Elem => "T-frob-2elem",
            TheoremId::SymFacts => "P-symfacts",
            TheoremId::FactorIdem => "L-factor-idem",
            TheoremId::ElemFactIdem => "L-elemfact-idem",
            TheoremId::IdemEquiv => "T-idem-equiv",
            TheoremId::NuProps => "P-nu-props",
            TheoremId::SupertropProps => "P-supertrop-props",
            TheoremId::Fibers => "L-fibers",
            TheoremId::StrictIneq => "L-strict-ineq",
            TheoremId::TangibleSum => "L-tangible-sum",
            TheoremId::FactorSuper => "L-factor-super",
            TheoremId::SuperFullElem => "T-super-fullelem",
            TheoremId::QuasiElem => "P-quasi-elem",
            TheoremId::UbSymmetrizable => "L-ub-symmetrizable",
            TheoremId::SymElem => "P-sym-elem",
            TheoremId::TropicalFullElem => "T-tropical-fullelem",
        }
    }

    /// One-line statement of the result.
    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::OrderIdem => "idempotent <=> a+b=b is reflexive <=> it is the intrinsic order <=> a+b is the join",
            TheoremId::LinearFrob => "idempotent and linearly ordered => Frobenius",
            TheoremId::TwoInFrob => "Frobenius => 2 = 4; Frobenius and upper-bound => 2 = 3",
            TheoremId::Frob2Elem => "Frobenius => 2-elementary; converse for upper-bound",
            TheoremId::SymFacts => "Sym facts in idempotent semirings",
            TheoremId::FactorIdem => "Sym(x1^d1..xj^dj) = e_j^dj * Sym(x1^(d1-dj)..) in idempotent Frobenius semirings",
            TheoremId::ElemFactIdem => "Sym of a pure monomial is a product of elementary polynomials",
            TheoremId::IdemEquiv => "fully elementary, upper-bound, 2-cancellative <=> Frobenius, idempotent",
            TheoremId::NuProps => "2 = 4 <=> nu homomorphism <=> nu projection <=> image of nu is the ghost ideal",
            TheoremId::SupertropProps => "supertropical => ghosts bipotent, upper-bound, Frobenius, 2 = 3",
            TheoremId::Fibers => "fibers of nu: ghost on top, tangibles incomparable",
            TheoremId::StrictIneq => "strict inequality clauses in supertropical semirings",
            TheoremId::TangibleSum => "bounded join-semilattice; tangible sums have a unique maximal summand",
            TheoremId::FactorSuper => "Minsym factors through elementary polynomials in supertropical semirings",
            TheoremId::SuperFullElem => "supertropical => fully elementary",
            TheoremId::QuasiElem => "S(X) Frobenius <=> X trivial",
            TheoremId::UbSymmetrizable => "symmetrizable with upper-bound symmetrization <=> idempotent, linear, a<b => ax=0 or ax<bx",
            TheoremId::SymElem => "symmetrization Frobenius <=> X trivial",
            TheoremId::TropicalFullElem => "min-plus and max-plus are fully elementary; their symmetrizations are not",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// Size limits for bounded checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_vars: usize,
    pub max_degree: u32,
    /// Sampled points (or tuples) on infinite carriers.
    pub samples: usize,
    pub seed: u64,
    /// Generated polynomials per variable count.
    pub polys: usize,
    /// Largest exponent for sampled Frobenius checks.
    pub frob_n: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vars: 4,
            max_degree: 5,
            samples: 1000,
            seed: 0,
            polys: 20,
            frob_n: 5,
        }
    }
}

pub(crate) enum Stop {
    Inapplicable(String),
    Violated(Witness),
    Error(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Error(e)
    }
}

pub(crate) type Step<T = ()> = std::result::Result<T, Stop>;

/// State shared by the individual checks.
pub(crate) struct Run<'a> {
    pub x: &'a dyn Semiring,
    pub budget: &'a Budget,
    pub points: usize,
    pub trace: Vec<String>,
    /// Some conclusion rests on sampled evidence.
    pub sampled: bool,
}

impl<'a> Run<'a> {
    fn new(x: &'a dyn Semiring, budget: &'a Budget) -> Self {
        Run {
            x,
            budget,
            points: 0,
            trace: Vec::new(),
            sampled: false,
        }
    }

    pub fn finite(&self) -> bool {
        is_finite(self.x)
    }

    /// Exhaustive on finite carriers, seeded samples otherwise.
    pub fn strategy(&self) -> Strategy {
        Strategy::default_for(self.x, self.budget.samples, self.budget.seed)
    }

    /// Exhaustive on finite carriers, the instance's test grid otherwise.
    pub fn grid(&self) -> Strategy {
        match self.x.elements() {
            Some(_) => Strategy::Exhaustive,
            None => Strategy::Grid(self.x.test_grid()),
        }
    }

    pub fn pool(&self) -> Vec<Element> {
        self.x.elements().unwrap_or_else(|| self.x.test_grid())
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.trace.push(line.into());
    }

    fn absorb(&mut self, report: &PropertyReport) {
        self.points += report.points;
        if report.verdict == Verdict::SampledHolds || (!self.finite() && report.points > 0) {
            self.sampled = true;
        }
    }

    /// Adds points evaluated outside a report.
    pub fn tally(&mut self, points: usize) {
        self.points += points;
        if !self.finite() && points > 0 {
            self.sampled = true;
        }
    }

    /// A hypothesis. On infinite carriers a declared verdict is trusted.
    pub fn hypothesis(
        &mut self,
        label: &str,
        declared: Option<bool>,
        check: impl FnOnce(&Strategy) -> Result<PropertyReport>,
    ) -> Step {
        self.hypothesis_on(self.x, label, declared, check)
    }

    /// A hypothesis about another semiring (the base of a construction).
    pub fn hypothesis_on(
        &mut self,
        y: &dyn Semiring,
        label: &str,
        declared: Option<bool>,
        check: impl FnOnce(&Strategy) -> Result<PropertyReport>,
    ) -> Step {
        if !is_finite(y) {
            if let Some(v) = declared {
                self.note(format!("hypothesis {label}: declared {}", if v { "yes" } else { "no" }));
                return if v {
                    Ok(())
                } else {
                    Err(Stop::Inapplicable(format!("{label} does not hold")))
                };
            }
        }
        let strategy = Strategy::default_for(y, self.budget.samples, self.budget.seed);
        let report = check(&strategy)?;
        self.absorb(&report);
        self.note(format!("hypothesis {label}: {}", report.verdict.label()));
        match report.verdict {
            Verdict::Holds | Verdict::SampledHolds => Ok(()),
            Verdict::Fails(w) => Err(Stop::Inapplicable(format!(
                "{label} does not hold: {}",
                w.description
            ))),
            Verdict::NotApplicable(reason) => Err(Stop::Inapplicable(reason)),
        }
    }

    /// Evaluates a property without gating on it.
    pub fn property(
        &mut self,
        label: &str,
        declared: Option<bool>,
        check: impl FnOnce(&Strategy) -> Result<PropertyReport>,
    ) -> Step<bool> {
        match self.hypothesis(label, declared, check) {
            Ok(()) => Ok(true),
            Err(Stop::Inapplicable(_)) => Ok(false),
            Err(other) => Err(other),
        }
    }

    pub fn require(&mut self, ok: bool, reason: impl Into<String>) -> Step {
        if ok {
            Ok(())
        } else {
            Err(Stop::Inapplicable(reason.into()))
        }
    }

    /// A conclusion that must hold.
    pub fn conclude(&mut self, label: &str, report: PropertyReport) -> Step {
        self.absorb(&report);
        self.note(format!("{label}: {}", report.verdict.label()));
        match report.verdict {
            Verdict::Holds | Verdict::SampledHolds => Ok(()),
            Verdict::Fails(w) => Err(self.violation(label, w)),
            Verdict::NotApplicable(reason) => Err(Stop::Inapplicable(reason)),
        }
    }

    /// A conclusion that predicts a concrete failure.
    pub fn expect_failure(&mut self, label: &str, report: PropertyReport) -> Step<Witness> {
        self.points += report.points;
        match report.verdict {
            Verdict::Fails(w) => {
                self.note(format!("{label}: fails as predicted, {}", w.description));
                Ok(w)
            }
            other => Err(self.fail(
                vec![],
                format!("{label}: predicted failure but {}", other.label()),
            )),
        }
    }

    pub fn ensure(&mut self, ok: bool, elements: Vec<Element>, what: impl fmt::Display) -> Step {
        if ok {
            Ok(())
        } else {
            Err(self.fail(elements, what))
        }
    }

    pub fn fail(&self, elements: Vec<Element>, what: impl fmt::Display) -> Stop {
        Stop::Violated(Witness::new(self.x, elements, what))
    }

    fn violation(&self, label: &str, w: Witness) -> Stop {
        Stop::Violated(Witness {
            description: format!("{label}: {}", w.description),
            elements: w.elements,
        })
    }

    /// Runs `f` over every tuple of `strategy`, counting points.
    pub fn each<F>(&mut self, label: &str, strategy: &Strategy, arity: usize, f: F) -> Step
    where
        F: FnMut(&[Element]) -> Result<Option<String>>,
    {
        let report = crate::predicates::search(label, self.x, strategy, arity, f)?;
        self.conclude(label, report)
    }
}

/// Runs one theorem check.
pub fn run_check(x: &dyn Semiring, id: TheoremId, budget: &Budget) -> Result<PropertyReport> {
    let mut run = Run::new(x, budget);
    let outcome = match id {
        TheoremId::OrderIdem => structure::order_idem(&mut run),
        TheoremId::LinearFrob => structure::linear_frob(&mut run),
        TheoremId::TwoInFrob => structure::two_in_frob(&mut run),
        TheoremId::NuProps => structure::nu_props(&mut run),
        TheoremId::SupertropProps => structure::supertrop_props(&mut run),
        TheoremId::Fibers => structure::fibers(&mut run),
        TheoremId::StrictIneq => structure::strict_ineq(&mut run),
        TheoremId::TangibleSum => structure::tangible_sum(&mut run),
        TheoremId::Frob2Elem => elementary::frob_2elem(&mut run),
        TheoremId::SymFacts => elementary::sym_facts(&mut run),
        TheoremId::FactorIdem => elementary::factor_idem(&mut run),
        TheoremId::ElemFactIdem => elementary::elemfact_idem(&mut run),
        TheoremId::IdemEquiv => elementary::idem_equiv(&mut run),
        TheoremId::FactorSuper => elementary::factor_super(&mut run),
        TheoremId::SuperFullElem => elementary::super_fullelem(&mut run),
        TheoremId::TropicalFullElem => elementary::tropical_fullelem(&mut run),
        TheoremId::QuasiElem => symmetrized::quasi_elem(&mut run),
        TheoremId::UbSymmetrizable => symmetrized::ub_symmetrizable(&mut run),
        TheoremId::SymElem => symmetrized::sym_elem(&mut run),
    };
    let verdict = match outcome {
        Ok(()) if run.sampled => Verdict::SampledHolds,
        Ok(()) => Verdict::Holds,
        Err(Stop::Inapplicable(reason)) => Verdict::NotApplicable(reason),
        Err(Stop::Violated(w)) => Verdict::Fails(w),
        Err(Stop::Error(e)) => match e {
            Error::NonUnital(_)
            | Error::NeedsAnalyticOrder(_)
            | Error::NeedsFiniteCarrier(_)
            | Error::Undecidable { .. }
            | Error::NotSymmetrizable { .. }
            | Error::PermutationLimit { .. } => Verdict::NotApplicable(e.to_string()),
            other => return Err(other),
        },
    };
    let seed = run.sampled.then_some(budget.seed);
    let mut report = PropertyReport::new(id.name(), verdict).with_stats(run.points, seed);
    report.trace = run.trace;
    Ok(report)
}

/// Every theorem in catalogue order.
pub fn run_suite(x: &dyn Semiring, budget: &Budget) -> Result<Vec<PropertyReport>> {
    TheoremId::ALL
        .iter()
        .map(|&id| run_check(x, id, budget))
        .collect()
}

/// Counts by verdict, in the order holds, sampled-holds, fails, not-applicable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub holds: usize,
    pub sampled_holds: usize,
    pub fails: usize,
    pub not_applicable: usize,
}

impl Summary {
    pub fn of(reports: &[PropertyReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.verdict {
                Verdict::Holds => s.holds += 1,
                Verdict::SampledHolds => s.sampled_holds += 1,
                Verdict::Fails(_) => s.fails += 1,
                Verdict::NotApplicable(_) => s.not_applicable += 1,
            }
        }
        s
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SUMMARY holds={} sampled-holds={} fails={} not-applicable={}",
            self.holds, self.sampled_holds, self.fails, self.not_applicable
        )
    }
}
