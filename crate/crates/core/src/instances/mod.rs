//! Concrete semirings and the selector syntax used to name them.

pub mod basic;
pub mod extended;
pub mod quasi;
pub mod symm;
pub mod table;

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::semiring::{SemiringRef, Strategy};

pub use basic::{Boolean, Naturals, Tropical, TropicalKind};
pub use extended::ExtendedTropical;
pub use quasi::Quasisymmetrization;
pub use symm::{is_symmetrizable_upper_bound, sym_related, symmetrize, Symmetrization};
pub use table::TableSemiring;

pub const BUILTIN_NAMES: [&str; 5] = [
    "naturals",
    "boolean",
    "min_plus",
    "max_plus",
    "extended_tropical",
];

pub fn make_builtin(name: &str) -> Result<SemiringRef> {
    Ok(match name {
        "naturals" => Arc::new(Naturals),
        "boolean" => Arc::new(Boolean),
        "min_plus" => Arc::new(Tropical::min_plus()),
        "max_plus" => Arc::new(Tropical::max_plus()),
        "extended_tropical" => Arc::new(ExtendedTropical),
        // bundled Cayley tables
        "supertropical3" => Arc::new(table::supertropical3()),
        "parity" => Arc::new(table::parity()),
        other => return Err(Error::UnknownSemiring(other.to_string())),
    })
}

pub fn load_finite(path: impl AsRef<Path>) -> Result<SemiringRef> {
    Ok(Arc::new(TableSemiring::load(path)?))
}

pub fn quasisymmetrize(x: SemiringRef) -> SemiringRef {
    Arc::new(Quasisymmetrization::new(x))
}

/// Resolves `name`, a table file path, `quasi:<sel>` or `symm:<sel>`.
///
/// `check` is used for the symmetrizability precondition of `symm:`.
pub fn resolve(selector: &str, check: &Strategy) -> Result<SemiringRef> {
    if let Some(rest) = selector.strip_prefix("quasi:") {
        return Ok(quasisymmetrize(resolve(rest, check)?));
    }
    if let Some(rest) = selector.strip_prefix("symm:") {
        let inner = resolve(rest, check)?;
        let strategy = match check {
            _ if inner.elements().is_some() => Strategy::Exhaustive,
            Strategy::Sampled { .. } => check.clone(),
            _ => Strategy::Sampled {
                count: 1000,
                seed: 0,
            },
        };
        return Ok(Arc::new(symmetrize(inner, &strategy)?));
    }
    match make_builtin(selector) {
        Ok(x) => Ok(x),
        Err(Error::UnknownSemiring(_)) if Path::new(selector).exists() => load_finite(selector),
        Err(e) => Err(e),
    }
}
