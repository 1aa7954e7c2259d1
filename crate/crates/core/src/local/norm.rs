//! The norm index `[A_v^× : nrd(R_v^×)]`.
//!
//! An element of an order is a unit exactly when its reduced norm is, and
//! `nrd(R_v^×)` always contains the squares, so only the square classes of
//! unit norms matter. In odd residue characteristic those are read off the
//! rank of the norm form modulo `π`: a form of rank at least two over a
//! finite field represents every nonzero value. Over `Z_2` the unit square
//! classes are `(Z/8)^×` and the norm form is enumerated modulo 8.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::quaternion::{Lattice, QuaternionAlgebra};
use crate::ring::{ArithRing, FracField};

/// Inverse of `a` modulo the prime `p`, by the extended Euclidean algorithm.
fn inv_mod<R: ArithRing>(ring: &R, a: &R::Elem, p: &R::Elem) -> Option<R::Elem> {
    let (mut r0, mut r1) = (ring.rem(a, p), p.clone());
    let (mut s0, mut s1) = (ring.one(), ring.zero());
    if ring.is_zero(&r0) {
        return None;
    }
    while !ring.is_zero(&r1) {
        let (q, r) = ring.div_rem(&r0, &r1);
        let s = ring.sub(&s0, &ring.mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is a unit
    let u = ring.unit_inv(&r0);
    Some(ring.rem(&ring.mul(&s0, &u), p))
}

/// Rank of a matrix over `A/πA`.
fn rank_mod<R: ArithRing>(ring: &R, m: &[Vec<R::Elem>], p: &R::Elem) -> usize {
    let mut rows: Vec<Vec<R::Elem>> = m.iter().map(|r| r.iter().map(|x| ring.rem(x, p)).collect()).collect();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| !ring.is_zero(&rows[i][c])) else { continue };
        rows.swap(rank, piv);
        let inv = inv_mod(ring, &rows[rank][c], p).expect("nonzero residue is invertible");
        for i in 0..rows.len() {
            if i == rank || ring.is_zero(&rows[i][c]) {
                continue;
            }
            let f = ring.mul(&rows[i][c], &inv);
            for k in 0..ncols {
                let v = ring.sub(&rows[i][k], &ring.mul(&f, &rows[rank][k]));
                rows[i][k] = ring.rem(&v, p);
            }
        }
        rank += 1;
    }
    rank
}

/// `[A_π^× : nrd(R_π^×)]` for a basis-given order `R`.
pub fn local_norm_index<R: ArithRing>(
    alg: &QuaternionAlgebra<R>,
    order: &Lattice<R::Elem>,
    prime: &R::Elem,
) -> Result<BigInt> {
    let ring = &alg.ring;
    let q = alg.norm_form(order);
    if !q.iter().flatten().all(|x| ring.f_is_integral(x)) {
        return Err(Error::Domain("norm form is not integral; the lattice is not an order".into()));
    }
    let coeffs: Vec<Vec<R::Elem>> = q.iter().map(|r| r.iter().map(|x| x.num.clone()).collect()).collect();
    let p = ring.residue_char(prime);
    if p != 2 {
        // Gram matrix of the bilinear form 2·nrd: 2q_ss on the diagonal, q_st off it
        let mut gram = vec![vec![ring.zero(); 4]; 4];
        for s in 0..4 {
            gram[s][s] = ring.mul(&ring.from_i64(2), &coeffs[s][s]);
            for t in s + 1..4 {
                gram[s][t] = coeffs[s][t].clone();
                gram[t][s] = coeffs[s][t].clone();
            }
        }
        return Ok(BigInt::from(if rank_mod(ring, &gram, prime) >= 2 { 1 } else { 2 }));
    }
    if ring.is_function_field() {
        return Err(Error::Unsupported("norm index in characteristic 2".into()));
    }
    // Z_2: enumerate the form modulo 8
    let c: Vec<Vec<i64>> = coeffs
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let big = ring.to_integer(x).expect("rational integer");
                    big.mod_floor(&BigInt::from(8)).to_i64().expect("residue mod 8")
                })
                .collect()
        })
        .collect();
    let mut values = BTreeSet::new();
    for idx in 0..8usize.pow(4) {
        let x: [i64; 4] = std::array::from_fn(|s| ((idx >> (3 * s)) & 7) as i64);
        let mut n = 0;
        for s in 0..4 {
            n += c[s][s] * x[s] * x[s];
            for t in s + 1..4 {
                n += c[s][t] * x[s] * x[t];
            }
        }
        let n = n.rem_euclid(8);
        if n % 2 == 1 {
            values.insert(n);
        }
    }
    let mut group: BTreeSet<i64> = BTreeSet::from([1]);
    loop {
        let next: BTreeSet<i64> =
            group.iter().flat_map(|a| values.iter().map(move |b| (a * b) % 8)).chain(group.iter().copied()).collect();
        if next == group {
            break;
        }
        group = next;
    }
    Ok(BigInt::from(4 / group.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::named;

    #[test]
    fn maximal_orders_have_trivial_index() {
        let (h, hur) = named::hurwitz();
        for p in [2, 3, 5, 7] {
            assert_eq!(local_norm_index(&h, &hur, &BigInt::from(p)).unwrap(), BigInt::from(1));
        }
        let (_, lip) = named::lipschitz();
        assert_eq!(local_norm_index(&h, &lip, &BigInt::from(2)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn small_orders_have_index_two() {
        let (h, hur) = named::hurwitz();
        for p in [3i64, 5] {
            // Z + p·Hurwitz has norm form ≡ x_0^2 mod p
            let mut gens = vec![h.one()];
            gens.extend(h.basis(&hur).iter().map(|e| h.scale(e, &crate::ring::Integers.f_i64(p))));
            let o = h.lattice(&gens).unwrap();
            assert_eq!(local_norm_index(&h, &o, &BigInt::from(p)).unwrap(), BigInt::from(2));
        }
        // Z + 4·Lipschitz: norms of units are ≡ x_0^2 mod 8, index 4
        let (_, lip) = named::lipschitz();
        let mut gens = vec![h.one()];
        gens.extend(h.basis(&lip).iter().map(|e| h.scale(e, &crate::ring::Integers.f_i64(4))));
        let o = h.lattice(&gens).unwrap();
        assert_eq!(local_norm_index(&h, &o, &BigInt::from(2)).unwrap(), BigInt::from(4));
    }
}
