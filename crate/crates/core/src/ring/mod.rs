//! Euclidean coefficient rings and their fraction fields.
//!
//! Lattice code is written once against [`Pid`] and instantiated for the
//! integers and for `F_p[t]`. Elements carry no context; the ring value does
//! (the characteristic of `F_p[t]`, for instance), so every operation goes
//! through the ring.

mod frac;
pub(crate) mod fp_poly;
mod integers;
pub mod matrix;

pub use fp_poly::{FpPoly, FpPolyRing};
pub use frac::{Frac, FracField};
pub use integers::Integers;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;

use crate::error::Result;
use crate::field::Place;

/// A Euclidean domain with canonical remainders and canonical associates.
pub trait Pid: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Euclidean division. The remainder is the canonical representative
    /// modulo `b` (in `[0, |b|)` for integers, degree below `deg b` for
    /// polynomials). Panics when `b` is zero.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// Strict comparison of Euclidean sizes.
    fn size_lt(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    /// Splits `a = u * c` with `u` a unit and `c` the canonical associate
    /// (positive integer, monic polynomial). Zero maps to `(0, 1)`.
    fn normalize(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);
    fn unit_inv(&self, u: &Self::Elem) -> Self::Elem;
    fn display(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        !self.is_zero(a) && self.is_one(&self.normalize(a).0)
    }

    fn canonical(&self, a: &Self::Elem) -> Self::Elem {
        self.normalize(a).0
    }

    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !self.is_zero(&y) {
            let r = self.div_rem(&x, &y).1;
            x = y;
            y = r;
        }
        self.canonical(&x)
    }

    fn lcm(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero();
        }
        let g = self.gcd(a, b);
        self.canonical(&self.mul(&self.exact_div(a, &g), b))
    }

    fn divides(&self, d: &Self::Elem, a: &Self::Elem) -> bool {
        if self.is_zero(d) {
            return self.is_zero(a);
        }
        self.is_zero(&self.div_rem(a, d).1)
    }

    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (q, r) = self.div_rem(a, b);
        debug_assert!(self.is_zero(&r), "inexact division");
        q
    }

    fn rem(&self, a: &Self::Elem, m: &Self::Elem) -> Self::Elem {
        self.div_rem(a, m).1
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut r = self.one();
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }

    /// Exponent of the prime `p` in `a` (which must be nonzero).
    fn valuation(&self, a: &Self::Elem, p: &Self::Elem) -> u32 {
        assert!(!self.is_zero(a), "valuation of zero");
        let mut v = 0;
        let mut x = a.clone();
        loop {
            let (q, r) = self.div_rem(&x, p);
            if !self.is_zero(&r) {
                return v;
            }
            x = q;
            v += 1;
        }
    }
}

/// The arithmetic of a ring of integers of a global field: primes, residue
/// fields and the map to [`Place`] labels.
pub trait ArithRing: Pid {
    fn is_function_field(&self) -> bool;
    /// Prime factorization into canonical primes.
    fn prime_factors(&self, a: &Self::Elem) -> Result<Vec<(Self::Elem, u32)>>;
    fn residue_char(&self, prime: &Self::Elem) -> u64;
    fn residue_degree(&self, prime: &Self::Elem) -> u32;
    fn residue_size(&self, prime: &Self::Elem) -> BigInt {
        num_traits::pow(BigInt::from(self.residue_char(prime)), self.residue_degree(prime) as usize)
    }
    /// Ring elements whose images form an `F_p`-basis of the residue field.
    fn residue_basis(&self, prime: &Self::Elem) -> Vec<Self::Elem>;
    /// Coordinates of `a mod prime` in the residue basis.
    fn residue_coords(&self, a: &Self::Elem, prime: &Self::Elem) -> Vec<u64>;
    fn place_of(&self, prime: &Self::Elem) -> Place;
    fn prime_of(&self, place: &Place) -> Result<Self::Elem>;
    /// Local Hilbert symbol `(a, b)_v` at any place, including infinity.
    fn hilbert_symbol(&self, a: &Frac<Self::Elem>, b: &Frac<Self::Elem>, place: &Place) -> Result<i8>;
    /// Places outside which `(a, b)_v = 1` is guaranteed.
    fn hilbert_support(&self, a: &Frac<Self::Elem>, b: &Frac<Self::Elem>) -> Result<Vec<Place>>;

    /// The element as a rational integer, when the ring is `Z`.
    fn to_integer(&self, _a: &Self::Elem) -> Option<BigInt> {
        None
    }

    fn from_residue_coords(&self, coords: &[u64], prime: &Self::Elem) -> Self::Elem {
        let basis = self.residue_basis(prime);
        let mut acc = self.zero();
        for (c, b) in coords.iter().zip(&basis) {
            acc = self.add(&acc, &self.mul(&self.from_i64(*c as i64), b));
        }
        acc
    }
}
