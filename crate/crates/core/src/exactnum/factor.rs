use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

/// A signed product of prime powers with nonzero integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FactoredRational {
    pub negative: bool,
    pub exponents: BTreeMap<u64, i64>,
}

impl FactoredRational {
    pub fn one() -> Self {
        Self::default()
    }

    /// Factors numerator and denominator of a nonzero rational.
    pub fn from_rational(r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::Domain("cannot factor zero".into()));
        }
        let mut f = factor_integer(r.numer())?;
        let d = factor_integer(r.denom())?;
        for (p, e) in d.exponents {
            f.push(p, -e);
        }
        Ok(f)
    }

    fn push(&mut self, p: u64, e: i64) {
        let slot = self.exponents.entry(p).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exponents.remove(&p);
        }
    }

    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Rational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (&p, &e) in &self.exponents {
            let pp = num_traits::pow(BigInt::from(p), e.unsigned_abs() as usize);
            if e > 0 {
                num *= pp;
            } else {
                den *= pp;
            }
        }
        if self.negative {
            num = -num;
        }
        Rational::new(num, den)
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl Serialize for FactoredRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Complete factorization of a nonzero integer: trial division up to 10^6,
/// then Miller–Rabin and Pollard rho on a cofactor that fits in 64 bits.
pub fn factor_integer(n: &BigInt) -> Result<FactoredRational> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor zero".into()));
    }
    let mut out = FactoredRational { negative: n.is_negative(), ..Default::default() };
    let mut m = n.abs();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        while (&m % &bp).is_zero() {
            m /= &bp;
            out.push(p, 1);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        return Ok(out);
    }
    let rest = m.to_u64().ok_or_else(|| {
        Error::Unsupported(format!("{n} has a cofactor {m} beyond 64 bits after trial division"))
    })?;
    let mut stack = vec![rest];
    while let Some(c) = stack.pop() {
        if c == 1 {
            continue;
        }
        if is_prime_u64(c) {
            out.push(c, 1);
        } else {
            let d = pollard_brent(c);
            stack.push(d);
            stack.push(c / d);
        }
    }
    Ok(out)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(n: i64) -> String {
        factor_integer(&BigInt::from(n)).unwrap().to_string()
    }

    #[test]
    fn examples() {
        assert_eq!(f(12), "2^2*3");
        assert_eq!(f(22), "2*11");
        assert_eq!(f(1), "1");
        assert_eq!(f(-18), "-2*3^2");
        assert!(factor_integer(&BigInt::zero()).is_err());
    }

    #[test]
    fn large_cofactors() {
        // two primes above the trial bound
        let p = 1_000_003u64;
        let q = 2_147_483_647u64;
        let n = BigInt::from(p) * BigInt::from(q) * BigInt::from(6);
        let fac = factor_integer(&n).unwrap();
        assert_eq!(fac.exponents.get(&p), Some(&1));
        assert_eq!(fac.exponents.get(&q), Some(&1));
        assert_eq!(fac.expand(), Rational::from(n));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn rational_factorization() {
        let r: Rational = "-45/28".parse().unwrap();
        let fr = FactoredRational::from_rational(&r).unwrap();
        assert_eq!(fr.to_string(), "-2^-2*3^2*5*7^-1");
        assert_eq!(fr.expand(), r);
    }

    proptest! {
        #[test]
        fn round_trip(n in 1i64..i64::MAX) {
            let fac = factor_integer(&BigInt::from(n)).unwrap();
            prop_assert!(fac.exponents.keys().all(|&p| is_prime_u64(p)));
            prop_assert_eq!(fac.expand(), Rational::from(n));
        }
    }
}
