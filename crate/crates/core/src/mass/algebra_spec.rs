use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::field::{FieldContext, Place};
use crate::quaternion::QuaternionAlgebra;
use crate::ring::ArithRing;

/// A central simple algebra of degree `n`, described by its local Hasse
/// invariants in `Q/Z`. Places that are not listed carry invariant 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    degree: u32,
    invariants: BTreeMap<Place, Rational>,
}

fn reduce_mod_one(r: &Rational) -> Rational {
    let (n, d) = (r.numer(), r.denom());
    Rational::new(n.mod_floor(d), d.clone())
}

impl AlgebraSpec {
    /// Invariants are reduced into `[0, 1)`; zero entries are dropped.
    pub fn new(degree: u32, invariants: impl IntoIterator<Item = (Place, Rational)>) -> Result<Self> {
        if degree < 2 {
            return Err(Error::Schema(format!("degree must be at least 2, got {degree}")));
        }
        let mut map = BTreeMap::new();
        for (p, r) in invariants {
            let r = reduce_mod_one(&r);
            if r.is_zero() {
                continue;
            }
            if map.insert(p.clone(), r).is_some() {
                return Err(Error::Schema(format!("place {p} listed twice")));
            }
        }
        Ok(AlgebraSpec { degree, invariants: map })
    }

    /// The quaternion algebra ramified exactly at `ramified`.
    pub fn quaternion(ramified: &[Place]) -> Result<Self> {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        Self::new(2, ramified.iter().map(|p| (p.clone(), half.clone())))
    }

    pub fn from_quaternion<R: ArithRing>(alg: &QuaternionAlgebra<R>) -> Result<Self> {
        Self::quaternion(&alg.ramified_places()?)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn invariants(&self) -> &BTreeMap<Place, Rational> {
        &self.invariants
    }

    /// `d_v`, the denominator of the local invariant.
    pub fn local_index(&self, place: &Place) -> u32 {
        self.invariants.get(place).map_or(1, |r| r.denom().to_u32().unwrap_or(u32::MAX))
    }

    /// `S_D`, the places where `D_v` is not a matrix algebra over `K_v`.
    pub fn ramified(&self) -> Vec<Place> {
        self.invariants.keys().cloned().collect()
    }

    /// Checks that the invariants describe a central division algebra of
    /// degree `n` over the given field.
    pub fn validate(&self, ctx: &FieldContext) -> Result<()> {
        let n = self.degree;
        if !ctx.is_function_field() && n != 2 {
            return Err(Error::Domain(format!(
                "a definite algebra over a number field is a quaternion algebra; degree {n} is impossible"
            )));
        }
        let mut sum = Rational::zero();
        let mut lcm = BigInt::one();
        for (p, r) in &self.invariants {
            if ctx.is_archimedean(p) {
                if r != &Rational::new(BigInt::one(), BigInt::from(2)) {
                    return Err(Error::Schema(format!("the invariant at a real place is 0 or 1/2, got {r}")));
                }
                sum = sum + r * Rational::from(BigInt::from(ctx.archimedean_count()));
            } else {
                ctx.residue_size(p)?;
                sum = sum + r;
            }
            lcm = lcm.lcm(r.denom());
        }
        if !sum.is_integer() {
            return Err(Error::Schema(format!("local invariants sum to {sum}, not an integer")));
        }
        if lcm != BigInt::from(n) {
            return Err(Error::Domain(format!(
                "the local indices have lcm {lcm}, so the algebra is not a division algebra of degree {n}"
            )));
        }
        Ok(())
    }

    /// Definite: `D_v` is a division algebra at every place of `S`.
    pub fn check_definite(&self, ctx: &FieldContext) -> Result<()> {
        for p in ctx.s() {
            if self.local_index(p) != self.degree {
                return Err(Error::NotDefinite(format!("D is not a division algebra at {p} ∈ S")));
            }
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        let inv: Vec<String> = self.invariants.iter().map(|(p, r)| format!("{p}:{r}")).collect();
        format!("degree {} with invariants {{{}}}", self.degree, inv.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn quaternion_over_q() {
        let q = FieldContext::rationals();
        let b2 = AlgebraSpec::quaternion(&[Place::Infinity, Place::Prime(2)]).unwrap();
        b2.validate(&q).unwrap();
        b2.check_definite(&q).unwrap();
        assert_eq!(b2.local_index(&Place::Prime(3)), 1);
        assert_eq!(b2.local_index(&Place::Prime(2)), 2);
        let s3 = q.clone().with_s(&["infty", "3"]).unwrap();
        assert!(matches!(b2.check_definite(&s3), Err(Error::NotDefinite(_))));
        let odd = AlgebraSpec::quaternion(&[Place::Infinity]).unwrap();
        assert!(odd.validate(&q).is_err());
    }

    #[test]
    fn degree_three_over_f2t() {
        let k = FieldContext::rational_function_field(2).unwrap();
        let t = k.place("t").unwrap();
        let d = AlgebraSpec::new(3, [(Place::Infinity, r("1/3")), (t.clone(), r("2/3"))]).unwrap();
        d.validate(&k).unwrap();
        d.check_definite(&k).unwrap();
        assert_eq!(d.local_index(&t), 3);
        let bad = AlgebraSpec::new(3, [(Place::Infinity, r("1/3")), (t, r("1/3"))]).unwrap();
        assert!(bad.validate(&k).is_err());
        let partial = AlgebraSpec::new(4, [(Place::Infinity, r("1/2")), (k.place("t").unwrap(), r("1/2"))]).unwrap();
        assert!(partial.validate(&k).is_err());
    }
}
