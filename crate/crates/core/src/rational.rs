//! Exact rational magnitudes used by the tropical instances.
//!
//! Magnitudes are `Ratio<i64>`; tropical multiplication is rational addition,
//! so values stay small, but every operation is still overflow-checked and
//! panics rather than silently wrapping.

use num_rational::Ratio;
use num_traits::{CheckedAdd, Zero};

pub type Rational = Ratio<i64>;

pub fn add(a: &Rational, b: &Rational) -> Rational {
    a.checked_add(b)
        .unwrap_or_else(|| panic!("rational overflow in {a} + {b}"))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Parses `7`, `-3/2` or a decimal such as `-2.25`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = parse_int(num)?;
        let den: i64 = parse_int(den)?;
        if den == 0 {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 12 {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let whole_val: i64 = if whole_digits.is_empty() {
            0
        } else {
            parse_int(whole_digits)?
        };
        let scale = 10i64.checked_pow(frac.len() as u32)?;
        let frac_val: i64 = frac.parse().ok()?;
        let magnitude = whole_val.checked_mul(scale)?.checked_add(frac_val)?;
        let num = if negative { -magnitude } else { magnitude };
        return Some(Rational::new(num, scale));
    }
    parse_int(s).map(Rational::from_integer)
}

fn parse_int(s: &str) -> Option<i64> {
    let digits = s.trim_start_matches(['-', '+']);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Prints `p/q`, or just `p` for integers.
pub fn format(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn is_zero(q: &Rational) -> bool {
    q.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse("7"), Some(int(7)));
        assert_eq!(parse("-3/2"), Some(Rational::new(-3, 2)));
        assert_eq!(parse("2.5"), Some(Rational::new(5, 2)));
        assert_eq!(parse("-0.25"), Some(Rational::new(-1, 4)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
        assert_eq!(parse("--1"), None);
    }

    #[test]
    fn format_round_trips() {
        for q in [int(0), int(-4), Rational::new(7, 4), Rational::new(-1, 3)] {
            assert_eq!(parse(&format(&q)), Some(q));
        }
    }

    #[test]
    #[should_panic(expected = "rational overflow")]
    fn overflow_panics() {
        add(&int(i64::MAX), &int(1));
    }
}
