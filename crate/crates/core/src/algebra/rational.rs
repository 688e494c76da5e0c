use num::{BigInt, One, Zero};

use crate::error::{Error, Result};

/// Exact rational number; always normalized to lowest terms with a positive
/// denominator.
pub type Rational = num::BigRational;

/// Parses `"p"` or `"p/q"` with optional leading `-` on the numerator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Input(format!("malformed rational {s:?}"));
    let is_int = |t: &str| {
        let digits = t.strip_prefix('-').unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if !is_int(num) || !is_int(den) || den.starts_with('-') {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Input(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical rendering: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Signed;
    use proptest::prelude::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), Rational::from_integer(3.into()));
        assert_eq!(
            parse_rational("-4/6").unwrap(),
            Rational::new((-2).into(), 3.into())
        );
    }

    #[test]
    fn parse_rejects_malformed() {
        for s in ["1/0", "", "1/", "/2", "1.5", "a", "1/-2", "--1", "+1"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(format_rational(&parse_rational("-0/7").unwrap()), "0");
        assert_eq!(format_rational(&parse_rational("-10/5").unwrap()), "-2");
    }

    proptest! {
        #[test]
        fn add_sub_round_trip(p in -1000i64..1000, q in 1i64..1000, r in -1000i64..1000, s in 1i64..1000) {
            let a = Rational::new(p.into(), q.into());
            let b = Rational::new(r.into(), s.into());
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert!(a.denom().is_positive());
            prop_assert_eq!(parse_rational(&format_rational(&a)).unwrap(), a);
        }
    }
}
