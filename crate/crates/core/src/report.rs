//! Outcome of a property or theorem check.

use std::fmt;

use crate::semiring::{Element, Semiring};

/// Concrete counterexample: the elements involved plus a rendered explanation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub elements: Vec<Element>,
    pub description: String,
}

impl Witness {
    pub fn new(x: &dyn Semiring, elements: Vec<Element>, what: impl fmt::Display) -> Self {
        let rendered: Vec<String> = elements.iter().map(|e| x.format(e)).collect();
        Witness {
            description: format!("[{}] {what}", rendered.join(", ")),
            elements,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Proven on every element or point of a finite domain.
    Holds,
    /// No violation among seeded samples of an infinite domain.
    SampledHolds,
    Fails(Witness),
    NotApplicable(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::SampledHolds => "sampled-holds",
            Verdict::Fails(_) => "fails",
            Verdict::NotApplicable(_) => "not-applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub subject: String,
    pub verdict: Verdict,
    /// Number of tuples or points evaluated.
    pub points: usize,
    pub seed: Option<u64>,
    pub trace: Vec<String>,
}

impl PropertyReport {
    pub fn new(subject: impl Into<String>, verdict: Verdict) -> Self {
        PropertyReport {
            subject: subject.into(),
            verdict,
            points: 0,
            seed: None,
            trace: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self.verdict, Verdict::Holds | Verdict::SampledHolds)
    }

    pub fn fails(&self) -> bool {
        matches!(self.verdict, Verdict::Fails(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.verdict {
            Verdict::Fails(w) => Some(w),
            _ => None,
        }
    }

    pub fn with_stats(mut self, points: usize, seed: Option<u64>) -> Self {
        self.points = points;
        self.seed = seed;
        self
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.trace.push(line.into());
    }

    /// `<TAG> <subject> <verdict> [witness="..."] [reason="..."] [seed=S] [points=N]`
    pub fn line(&self, tag: &str) -> String {
        let mut out = format!("{tag} {} {}", self.subject, self.verdict.label());
        match &self.verdict {
            Verdict::Fails(w) => out.push_str(&format!(" witness={}", quote(&w.description))),
            Verdict::NotApplicable(reason) => out.push_str(&format!(" reason={}", quote(reason))),
            _ => {}
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!(" seed={seed}"));
        }
        out.push_str(&format!(" points={}", self.points));
        out
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
