//! Exact integers and rationals.
//!
//! Everything numeric in the crate bottoms out here: big integers from
//! `num-bigint`, a canonical [`Rational`] wrapper that serializes as
//! `"num/den"`, prime factorizations, and exact square roots.

mod factor;
mod rational;

pub use factor::{factor_integer, is_prime_u64, FactoredRational};
pub use rational::Rational;

pub use num_bigint::BigInt as Integer;

use crate::error::{Error, Result};
use num_traits::Signed;

/// Integer square root when `n` is a perfect square.
pub fn exact_isqrt(n: &Integer) -> Option<Integer> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

/// Returns `s > 0` with `s² = r`.
pub fn exact_sqrt(r: &Rational) -> Result<Rational> {
    if !r.is_positive() {
        return Err(Error::Domain(format!("square root of nonpositive value {r}")));
    }
    let n = exact_isqrt(r.numer()).ok_or_else(|| Error::NotASquare(r.to_string()))?;
    let d = exact_isqrt(r.denom()).ok_or_else(|| Error::NotASquare(r.to_string()))?;
    Ok(Rational::new(n, d))
}

/// `b^e` for a small exponent.
pub fn ipow(b: &Integer, e: u32) -> Integer {
    num_traits::pow(b.clone(), e as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sqrt_examples() {
        assert_eq!(exact_sqrt(&Rational::from(4)).unwrap(), Rational::from(2));
        assert_eq!(exact_sqrt(&Rational::from(16)).unwrap(), Rational::from(4));
        assert!(matches!(exact_sqrt(&Rational::from(8)), Err(Error::NotASquare(_))));
        assert_eq!(
            exact_sqrt(&"9/4".parse().unwrap()).unwrap(),
            "3/2".parse::<Rational>().unwrap()
        );
        assert!(matches!(exact_sqrt(&Rational::from(0)), Err(Error::Domain(_))));
        assert!(matches!(exact_sqrt(&Rational::from(-4)), Err(Error::Domain(_))));
    }

    proptest! {
        #[test]
        fn sqrt_of_square(n in 1i64..1_000_000, d in 1i64..1_000_000) {
            let s = Rational::new(Integer::from(n), Integer::from(d));
            prop_assert_eq!(exact_sqrt(&(&s * &s)).unwrap(), s);
        }
    }
}
