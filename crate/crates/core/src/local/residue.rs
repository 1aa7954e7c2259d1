use super::finite_algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::quaternion::{Lattice, Quat, QuaternionAlgebra};
use crate::ring::{ArithRing, FracField};

/// `R/πR` as an algebra over `F_p`, with basis `β_a e_s` at index
/// `s·deg + a` where `β_a` runs over the residue basis of the prime.
pub fn residue_algebra<R: ArithRing>(
    alg: &QuaternionAlgebra<R>,
    order: &Lattice<R::Elem>,
    prime: &R::Elem,
) -> Result<FiniteAlgebra> {
    let ring = &alg.ring;
    let p = ring.residue_char(prime);
    let deg = ring.residue_degree(prime) as usize;
    let consts = alg.structure_constants(order)?;
    let beta = ring.residue_basis(prime);
    let dim = 4 * deg;
    let mut mult = vec![0u64; dim * dim * dim];
    for s in 0..4 {
        for t in 0..4 {
            for a in 0..deg {
                for b in 0..deg {
                    let bb = ring.mul(&beta[a], &beta[b]);
                    let row = (s * deg + a) * dim + (t * deg + b);
                    for u in 0..4 {
                        let c = ring.mul(&bb, &consts[s][t][u]);
                        for (k, x) in ring.residue_coords(&c, prime).into_iter().enumerate() {
                            mult[row * dim + u * deg + k] = x;
                        }
                    }
                }
            }
        }
    }
    let one_coords = alg.coords(order, &alg.one());
    let mut one = vec![0u64; dim];
    for (s, c) in one_coords.iter().enumerate() {
        if !ring.f_is_integral(c) {
            return Err(Error::Domain("1 is not in the order".into()));
        }
        for (k, x) in ring.residue_coords(&c.num, prime).into_iter().enumerate() {
            one[s * deg + k] = x;
        }
    }
    FiniteAlgebra::new(p, dim, deg as u32, mult, one)
}

/// An element of the order lifting a residue vector.
pub fn lift_residue<R: ArithRing>(
    alg: &QuaternionAlgebra<R>,
    order: &Lattice<R::Elem>,
    prime: &R::Elem,
    v: &[u64],
) -> Quat<R::Elem> {
    let ring = &alg.ring;
    let deg = ring.residue_degree(prime) as usize;
    let basis = alg.basis(order);
    let mut x = alg.zero();
    for (s, e) in basis.iter().enumerate() {
        let c = ring.from_residue_coords(&v[s * deg..(s + 1) * deg], prime);
        x = alg.add(&x, &alg.scale(e, &ring.f_int(c)));
    }
    x
}
