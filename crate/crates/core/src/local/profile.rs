use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::finite_algebra::{gl_order, KappaClass};
use crate::error::{Error, Result};
use crate::exactnum::{ipow, Rational};
use crate::field::{bigint_serde, Place};

/// Per-place invariants of a local order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalOrderProfile {
    pub place: Place,
    #[serde(with = "bigint_serde")]
    pub q: BigInt,
    /// Local index of the algebra at the place.
    pub d: u32,
    /// `|𝔡(R_v)|`, a power of `q`.
    #[serde(with = "bigint_serde")]
    pub disc_abs: BigInt,
    #[serde(with = "bigint_serde")]
    pub kappa_size: BigInt,
    #[serde(with = "bigint_serde")]
    pub kappa_units: BigInt,
    #[serde(with = "bigint_serde", default = "one")]
    pub norm_index: BigInt,
    #[serde(with = "opt_bigint", default, skip_serializing_if = "Option::is_none")]
    pub normalizer_index: Option<BigInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eichler_symbol: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_class: Option<KappaClass>,
}

fn one() -> BigInt {
    BigInt::one()
}

/// Exponent `k` with `n = q^k`, if any.
pub fn log_exact(n: &BigInt, q: &BigInt) -> Option<u32> {
    let mut k = 0;
    let mut x = n.clone();
    if x.is_zero() || *q <= BigInt::one() {
        return None;
    }
    while x > BigInt::one() {
        let (d, r) = x.div_rem(q);
        if !r.is_zero() {
            return None;
        }
        x = d;
        k += 1;
    }
    (x == BigInt::one()).then_some(k)
}

impl LocalOrderProfile {
    /// Profile of the maximal order of `D_v` (index `d`) in degree `n`.
    pub fn maximal(place: Place, q: BigInt, d: u32, n: u32) -> Result<Self> {
        if d == 0 || !n.is_multiple_of(d) {
            return Err(Error::Domain(format!("local index {d} does not divide the degree {n}")));
        }
        let m = n / d;
        let disc_abs = ipow(&q, m * m * d * (d - 1) / 2);
        let qd = ipow(&q, d);
        let kappa_size = ipow(&qd, m * m);
        let kappa_units = gl_order(m, &qd);
        let (class, symbol) = match (n, d) {
            (2, 2) => (Some(KappaClass::FieldExt), Some(-1)),
            (2, 1) => (Some(KappaClass::Matrix), None),
            (_, 1) if m == 1 => (Some(KappaClass::BaseField), None),
            _ => (None, None),
        };
        Ok(LocalOrderProfile {
            place,
            q,
            d,
            disc_abs,
            kappa_size,
            kappa_units,
            norm_index: BigInt::one(),
            normalizer_index: Some(BigInt::from(d)),
            eichler_symbol: symbol,
            kappa_class: class,
        })
    }

    /// Checks the structural invariants of a user-supplied profile.
    pub fn validate(&self, n: u32) -> Result<()> {
        let bad = |m: String| Err(Error::Schema(format!("profile at {}: {m}", self.place)));
        if self.q < BigInt::from(2) {
            return bad("q must be at least 2".into());
        }
        if self.d == 0 || !n.is_multiple_of(self.d) {
            return bad(format!("local index {} must divide the degree {n}", self.d));
        }
        if log_exact(&self.disc_abs, &self.q).is_none() {
            return bad(format!("disc_abs {} is not a power of q = {}", self.disc_abs, self.q));
        }
        if log_exact(&self.kappa_size, &self.q).is_none() {
            return bad(format!("kappa_size {} is not a power of q = {}", self.kappa_size, self.q));
        }
        if self.kappa_units <= BigInt::zero() || self.kappa_units >= self.kappa_size {
            return bad("kappa_units must lie strictly between 0 and kappa_size".into());
        }
        let two_part = crate::field::prime_power(crate::field::small(&self.q).unwrap_or(4)).map(|(p, _)| p == 2).unwrap_or(false);
        let cap = if two_part { 4 } else { 2 };
        if self.norm_index <= BigInt::zero() || !(BigInt::from(cap) % &self.norm_index).is_zero() {
            return bad(format!("norm_index must divide {cap}"));
        }
        if let Some(e) = self.eichler_symbol {
            if !(-1..=1).contains(&e) {
                return bad("eichler_symbol must be 1, -1 or 0".into());
            }
        }
        if let Some(ni) = &self.normalizer_index {
            if *ni <= BigInt::zero() {
                return bad("normalizer_index must be positive".into());
            }
        }
        Ok(())
    }

    /// `λ_v(R_v) = |𝔡(R_v)| · Π_{i≤n}(1 - q^{-i}) / (|κ^×|/|κ|)`.
    pub fn lambda(&self, n: u32) -> Result<Rational> {
        if self.kappa_units.is_zero() {
            return Err(Error::Domain(format!("zero kappa_units at {}", self.place)));
        }
        let q = Rational::from(self.q.clone());
        let mut prod = Rational::from(self.disc_abs.clone());
        for i in 1..=n {
            prod = prod * (Rational::one() - q.pow(-(i as i32))?);
        }
        let ratio = Rational::new(self.kappa_units.clone(), self.kappa_size.clone());
        prod.checked_div(&ratio)
    }

    /// Whether this is the profile of the maximal order of `D_v`.
    pub fn is_maximal(&self, n: u32) -> bool {
        LocalOrderProfile::maximal(self.place.clone(), self.q.clone(), self.d, n)
            .map(|m| m.disc_abs == self.disc_abs && m.kappa_size == self.kappa_size && m.kappa_units == self.kappa_units)
            .unwrap_or(false)
    }
}

/// `λ_v = Π_{1≤i≤n-1, d∤i} (q^i - 1)` for the maximal order of a local
/// algebra of index `d`.
pub fn lambda_max(q: &BigInt, d: u32, n: u32) -> Result<Rational> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::Domain(format!("local index {d} does not divide the degree {n}")));
    }
    let mut prod = BigInt::one();
    for i in 1..n {
        if i % d != 0 {
            prod *= ipow(q, i) - 1;
        }
    }
    Ok(Rational::from(prod))
}

/// `[R̃_v^× : R_v^×]` for `R ⊆ R̃`, from the two profiles.
pub fn local_unit_index(r: &LocalOrderProfile, rmax: &LocalOrderProfile) -> Result<Rational> {
    if r.place != rmax.place || r.q != rmax.q {
        return Err(Error::Mismatch(format!("profiles at different places {} and {}", r.place, rmax.place)));
    }
    let disc = Rational::new(r.disc_abs.clone(), rmax.disc_abs.clone());
    let big = Rational::new(rmax.kappa_units.clone(), rmax.kappa_size.clone());
    let small = Rational::new(r.kappa_units.clone(), r.kappa_size.clone());
    Ok(disc * big.checked_div(&small)?)
}

/// Eichler symbol of a classified `κ`.
pub fn eichler_symbol(class: KappaClass) -> Option<i8> {
    class.eichler_symbol()
}

pub(crate) mod opt_bigint {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_str(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            N(i64),
        }
        match Option::<Raw>::deserialize(d)? {
            None => Ok(None),
            Some(Raw::S(s)) => s.trim().parse().map(Some).map_err(serde::de::Error::custom),
            Some(Raw::N(n)) => Ok(Some(BigInt::from(n))),
        }
    }
}
