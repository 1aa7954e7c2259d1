use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ArithRing, Frac, Pid};
use crate::error::{Error, Result};
use crate::exactnum::factor_integer;
use crate::field::Place;
use crate::quaternion::hilbert;

/// The ring `Z`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Pid for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        assert!(!b.is_zero(), "division by zero");
        let r = a.mod_floor(&b.abs());
        let q = (a - &r) / b;
        (q, r)
    }
    fn size_lt(&self, a: &BigInt, b: &BigInt) -> bool {
        a.abs() < b.abs()
    }
    fn normalize(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.is_negative() {
            (-a, BigInt::from(-1))
        } else {
            (a.clone(), BigInt::one())
        }
    }
    fn unit_inv(&self, u: &BigInt) -> BigInt {
        u.clone()
    }
    fn display(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigInt> {
        s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
    }
    fn gcd(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.gcd(b)
    }
    fn divides(&self, d: &BigInt, a: &BigInt) -> bool {
        if d.is_zero() {
            a.is_zero()
        } else {
            (a % d).is_zero()
        }
    }
    fn exact_div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        debug_assert!((a % b).is_zero(), "inexact division");
        a / b
    }
}

impl ArithRing for Integers {
    fn is_function_field(&self) -> bool {
        false
    }

    fn to_integer(&self, a: &BigInt) -> Option<BigInt> {
        Some(a.clone())
    }

    fn prime_factors(&self, a: &BigInt) -> Result<Vec<(BigInt, u32)>> {
        Ok(factor_integer(a)?
            .exponents
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e as u32))
            .collect())
    }

    fn residue_char(&self, prime: &BigInt) -> u64 {
        prime.to_u64().expect("residue characteristic fits in 64 bits")
    }

    fn residue_degree(&self, _prime: &BigInt) -> u32 {
        1
    }

    fn residue_basis(&self, _prime: &BigInt) -> Vec<BigInt> {
        vec![BigInt::one()]
    }

    fn residue_coords(&self, a: &BigInt, prime: &BigInt) -> Vec<u64> {
        vec![a.mod_floor(prime).to_u64().unwrap()]
    }

    fn place_of(&self, prime: &BigInt) -> Place {
        Place::Prime(prime.to_u64().expect("prime fits in 64 bits"))
    }

    fn prime_of(&self, place: &Place) -> Result<BigInt> {
        match place {
            Place::Prime(p) => Ok(BigInt::from(*p)),
            Place::Infinity => Err(Error::Domain("the archimedean place has no prime ideal".into())),
            other => Err(Error::Schema(format!("{other} is not a place of Q"))),
        }
    }

    fn hilbert_symbol(&self, a: &Frac<BigInt>, b: &Frac<BigInt>, place: &Place) -> Result<i8> {
        hilbert::hilbert_rational(&(&a.num * &a.den), &(&b.num * &b.den), place)
    }

    fn hilbert_support(&self, a: &Frac<BigInt>, b: &Frac<BigInt>) -> Result<Vec<Place>> {
        let mut places = vec![Place::Infinity, Place::Prime(2)];
        for x in [&a.num, &a.den, &b.num, &b.den] {
            for (p, _) in self.prime_factors(x)? {
                let pl = self.place_of(&p);
                if !places.contains(&pl) {
                    places.push(pl);
                }
            }
        }
        Ok(places)
    }
}
