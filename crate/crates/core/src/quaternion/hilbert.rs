//! Local Hilbert symbols over `Q` and over `F_p(t)` for odd `p`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Place;
use crate::ring::{Frac, FpPoly, FpPolyRing, Pid};

/// Splits off the `p`-part: returns `(v, u)` with `n = p^v u`, `p ∤ u`.
fn split_val(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut u = n.clone();
    let mut v = 0;
    while (&u % p).is_zero() {
        u /= p;
        v += 1;
    }
    (v, u)
}

/// Legendre symbol of a unit modulo an odd prime, by Euler's criterion.
fn legendre(u: &BigInt, p: &BigInt) -> i8 {
    let e = (p - 1u32) / 2u32;
    let r = u.mod_floor(p).modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// `(a, b)_v` for nonzero integers `a, b` at a place of `Q`.
pub fn hilbert_rational(a: &BigInt, b: &BigInt, place: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Domain("Hilbert symbol of zero".into()));
    }
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(2) => {
            let two = BigInt::from(2);
            let (alpha, u) = split_val(a, &two);
            let (beta, v) = split_val(b, &two);
            let m8 = |x: &BigInt| x.mod_floor(&BigInt::from(8)).to_u32().unwrap();
            let eps = |x: u32| ((x - 1) / 2) % 2;
            let omega = |x: u32| ((x * x - 1) / 8) % 2;
            let (u8_, v8) = (m8(&u), m8(&v));
            let e = eps(u8_) * eps(v8) + alpha * omega(v8) + beta * omega(u8_);
            Ok(if e % 2 == 0 { 1 } else { -1 })
        }
        Place::Prime(p) => {
            let p = BigInt::from(*p);
            let (alpha, u) = split_val(a, &p);
            let (beta, v) = split_val(b, &p);
            let mut s: i8 = 1;
            if (alpha * beta) % 2 == 1 && legendre(&BigInt::from(-1), &p) == -1 {
                s = -s;
            }
            if beta % 2 == 1 {
                s *= legendre(&u, &p);
            }
            if alpha % 2 == 1 {
                s *= legendre(&v, &p);
            }
            Ok(s)
        }
        other => Err(Error::Schema(format!("{other} is not a place of Q"))),
    }
}

/// `(a, b)_v` over `F_p(t)`, `p` odd, by the tame symbol.
pub fn hilbert_function_field(ring: &FpPolyRing, a: &Frac<FpPoly>, b: &Frac<FpPoly>, place: &Place) -> Result<i8> {
    let p = ring.characteristic();
    if p == 2 {
        return Err(Error::Unsupported("Hilbert symbols in characteristic 2".into()));
    }
    if ring.is_zero(&a.num) || ring.is_zero(&b.num) {
        return Err(Error::Domain("Hilbert symbol of zero".into()));
    }
    match place {
        Place::Infinity => {
            let val = |x: &Frac<FpPoly>| x.den.degree().unwrap() as i64 - x.num.degree().unwrap() as i64;
            let chi = |c: u64| -> i8 { if c == 0 { 0 } else if ring.pow_mod(&ring.constant(c), ((p - 1) / 2) as u128, &ring.t()).0 == vec![1] { 1 } else { -1 } };
            let unit_char = |x: &Frac<FpPoly>| chi(x.num.lead()) * chi(x.den.lead());
            Ok(tame(val(a), val(b), unit_char(a), unit_char(b), chi(p - 1)))
        }
        Place::Poly(c) => {
            let pi = ring.from_coeffs(&c.iter().map(|&x| x as i64).collect::<Vec<_>>());
            let d = pi.degree().ok_or_else(|| Error::Domain("constant polynomial is not a place".into()))?;
            let qv = (p as u128)
                .checked_pow(d as u32)
                .ok_or_else(|| Error::Unsupported(format!("residue field of {place} is too large")))?;
            let e = (qv - 1) / 2;
            let chi = |f: &FpPoly| -> i8 {
                let r = ring.pow_mod(f, e, &pi);
                if r == ring.one() {
                    1
                } else {
                    -1
                }
            };
            let split = |x: &Frac<FpPoly>| -> (i64, i8) {
                let vn = ring.valuation(&x.num, &pi) as i64;
                let vd = ring.valuation(&x.den, &pi) as i64;
                let un = ring.exact_div(&x.num, &ring.pow(&pi, vn as u32));
                let ud = ring.exact_div(&x.den, &ring.pow(&pi, vd as u32));
                (vn - vd, chi(&un) * chi(&ud))
            };
            let (va, ca) = split(a);
            let (vb, cb) = split(b);
            Ok(tame(va, vb, ca, cb, chi(&ring.from_i64(-1))))
        }
        other => Err(Error::Schema(format!("{other} is not a place of F_{p}(t)"))),
    }
}

/// Quadratic character of `(-1)^{αβ} u^β v^{-α}` given the characters of the
/// unit parts.
fn tame(alpha: i64, beta: i64, chi_u: i8, chi_v: i8, chi_minus_one: i8) -> i8 {
    let mut s = 1i8;
    if (alpha * beta).rem_euclid(2) == 1 {
        s *= chi_minus_one;
    }
    if beta.rem_euclid(2) == 1 {
        s *= chi_u;
    }
    if alpha.rem_euclid(2) == 1 {
        s *= chi_v;
    }
    s
}
