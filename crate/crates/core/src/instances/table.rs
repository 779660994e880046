//! Finite semirings given by Cayley tables.
//!
//! Text format:
//!
//! ```text
//! semiring supertropical3
//! elements: 0 1 e
//! one: 1
//! add:
//! 0 1 e
//! 1 e e
//! e e e
//! mul:
//! 0 0 0
//! 0 1 e
//! 0 e e
//! ```
//!
//! The first listed element is the additive zero; rows are left operands.
//! Blank lines and `#` comments are ignored.

use std::collections::HashMap;
use std::path::Path;

use rand::Rng;

use crate::error::{Error, Result};
use crate::predicates::check_axioms;
use crate::semiring::{literal_error, Element, SampleRng, Semiring, Strategy};

#[derive(Debug, Clone)]
pub struct TableSemiring {
    name: String,
    names: Vec<String>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    one: Option<usize>,
}

fn idx(e: &Element) -> usize {
    match e {
        Element::Index(i) => *i,
        other => panic!("table semiring: foreign element {other:?}"),
    }
}

impl TableSemiring {
    /// Builds a table semiring and verifies every axiom exhaustively.
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        one: Option<usize>,
    ) -> Result<Self> {
        let k = names.len();
        if k == 0 {
            return Err(Error::AxiomViolation("empty carrier".into()));
        }
        for (label, table) in [("add", &add), ("mul", &mul)] {
            if table.len() != k || table.iter().any(|row| row.len() != k) {
                return Err(Error::AxiomViolation(format!("{label} table is not {k}x{k}")));
            }
            if table.iter().flatten().any(|&v| v >= k) {
                return Err(Error::AxiomViolation(format!("{label} table is not closed")));
            }
        }
        let table = TableSemiring {
            name: name.into(),
            names,
            add,
            mul,
            one,
        };
        let report = check_axioms(&table, &Strategy::Exhaustive)?;
        if let Some(w) = report.witness() {
            return Err(Error::AxiomViolation(w.description.clone()));
        }
        Ok(table)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let err = |line: usize, message: &str| Error::Parse {
            line,
            message: message.to_string(),
        };
        let mut it = lines.into_iter().peekable();

        let (line, header) = it.next().ok_or_else(|| err(0, "empty file"))?;
        let name = header
            .strip_prefix("semiring")
            .map(str::trim)
            .filter(|n| !n.is_empty())
            .ok_or_else(|| err(line, "expected `semiring <name>`"))?
            .to_string();

        let (line, elems) = it.next().ok_or_else(|| err(line, "missing `elements:`"))?;
        let names: Vec<String> = elems
            .strip_prefix("elements:")
            .ok_or_else(|| err(line, "expected `elements: e0 e1 ...`"))?
            .split_whitespace()
            .map(String::from)
            .collect();
        if names.is_empty() {
            return Err(err(line, "no elements listed"));
        }
        let index: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        if index.len() != names.len() {
            return Err(err(line, "duplicate element name"));
        }
        let lookup = |line: usize, n: &str| {
            index
                .get(n)
                .copied()
                .ok_or_else(|| err(line, &format!("unknown element `{n}`")))
        };

        let mut one = None;
        if let Some((line, l)) = it.peek().copied() {
            if let Some(u) = l.strip_prefix("one:") {
                one = Some(lookup(line, u.trim())?);
                it.next();
            }
        }

        let k = names.len();
        let mut read_table = |label: &str| -> Result<Vec<Vec<usize>>> {
            let (line, l) = it
                .next()
                .ok_or_else(|| err(0, &format!("missing `{label}:`")))?;
            if l != format!("{label}:") {
                return Err(err(line, &format!("expected `{label}:`")));
            }
            let mut rows = Vec::with_capacity(k);
            for _ in 0..k {
                let (line, row) = it
                    .next()
                    .ok_or_else(|| err(line, &format!("{label} table has fewer than {k} rows")))?;
                let cells: Vec<usize> = row
                    .split_whitespace()
                    .map(|c| lookup(line, c))
                    .collect::<Result<_>>()?;
                if cells.len() != k {
                    return Err(err(line, &format!("{label} row needs {k} entries")));
                }
                rows.push(cells);
            }
            Ok(rows)
        };
        let add = read_table("add")?;
        let mul = read_table("mul")?;
        if let Some((line, _)) = it.next() {
            return Err(err(line, "trailing content"));
        }
        TableSemiring::new(name, names, add, mul, one)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn element(&self, name: &str) -> Option<Element> {
        self.names.iter().position(|n| n == name).map(Element::Index)
    }
}

impl Semiring for TableSemiring {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn zero(&self) -> Element {
        Element::Index(0)
    }
    fn one(&self) -> Option<Element> {
        self.one.map(Element::Index)
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        Element::Index(self.add[idx(a)][idx(b)])
    }
    fn mul(&self, a: &Element, b: &Element) -> Element {
        Element::Index(self.mul[idx(a)][idx(b)])
    }
    fn elements(&self) -> Option<Vec<Element>> {
        Some((0..self.names.len()).map(Element::Index).collect())
    }
    fn sample(&self, rng: &mut SampleRng) -> Element {
        Element::Index(rng.gen_range(0..self.names.len()))
    }
    fn parse_literal(&self, s: &str) -> Result<Element> {
        self.element(s.trim()).ok_or_else(|| literal_error(self, s))
    }
    fn format(&self, e: &Element) -> String {
        self.names[idx(e)].clone()
    }
}

/// `{0, 1, e}`: a tangible unit whose double is the ghost `e`.
pub const SUPERTROPICAL3: &str = include_str!("../../data/supertropical3.sr");

/// `ℕ/∼` where `m ∼ n` iff equal, or both at least 2 with equal parity.
pub const PARITY: &str = include_str!("../../data/parity.sr");

pub fn supertropical3() -> TableSemiring {
    TableSemiring::parse(SUPERTROPICAL3).expect("bundled table is valid")
}

pub fn parity() -> TableSemiring {
    TableSemiring::parse(PARITY).expect("bundled table is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{intrinsic_leq, nat_embed};

    #[test]
    fn bundled_tables_load() {
        let s = supertropical3();
        assert_eq!(s.elements().unwrap().len(), 3);
        let p = parity();
        assert_eq!(p.elements().unwrap().len(), 4);
        assert_eq!(nat_embed(&p, 2).unwrap(), nat_embed(&p, 4).unwrap());
        assert_ne!(nat_embed(&p, 2).unwrap(), nat_embed(&p, 3).unwrap());
    }

    #[test]
    fn parity_order_cycles() {
        let p = parity();
        let e = |n: &str| p.element(n).unwrap();
        assert!(intrinsic_leq(&p, &e("3"), &e("2")).unwrap());
        assert!(intrinsic_leq(&p, &e("2"), &e("3")).unwrap());
    }

    #[test]
    fn rejects_non_associative_add() {
        // (a + a) + b = a but a + (a + b) = b
        let text = "semiring bad\nelements: 0 a b\nadd:\n0 a b\na b a\nb a a\nmul:\n0 0 0\n0 0 0\n0 0 0\n";
        let err = TableSemiring::parse(text).unwrap_err();
        assert!(err.to_string().contains("additive associativity"), "{err}");
    }

    #[test]
    fn rejects_bad_zero_and_malformed_tables() {
        let not_zero = "semiring z\nelements: a b\nadd:\na a\na b\nmul:\na a\na b\n";
        let err = TableSemiring::parse(not_zero).unwrap_err();
        assert!(err.to_string().contains("additive unit"), "{err}");

        let short = "semiring s\nelements: 0 1\nadd:\n0 1\nmul:\n0 0\n0 1\n";
        assert!(matches!(TableSemiring::parse(short), Err(Error::Parse { .. })));

        let unknown = "semiring u\nelements: 0 1\nadd:\n0 1\n1 q\nmul:\n0 0\n0 1\n";
        let err = TableSemiring::parse(unknown).unwrap_err();
        assert!(err.to_string().contains("unknown element `q`"), "{err}");
    }

    #[test]
    fn rejects_noncommutative_mul() {
        let text = "semiring nc\nelements: 0 a b\nadd:\n0 a b\na a b\nb b b\nmul:\n0 0 0\n0 a a\n0 b b\n";
        let err = TableSemiring::parse(text).unwrap_err();
        assert!(err.to_string().contains("commutativity"), "{err}");
    }
}
