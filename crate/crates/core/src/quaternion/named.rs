//! Standard orders: Lipschitz, Hurwitz, maximal orders in `B_{p,∞}`, and
//! Eichler orders.

use num_bigint::BigInt;

use super::algebra::{Quat, QuaternionAlgebra};
use super::lattice::{Lattice, LatticeOps};
use crate::error::{Error, Result};
use crate::exactnum::is_prime_u64;
use crate::field::Place;
use crate::ring::{ArithRing, FracField, Integers};

fn hamilton() -> QuaternionAlgebra<Integers> {
    QuaternionAlgebra::new(Integers, BigInt::from(-1), BigInt::from(-1)).expect("nonzero parameters")
}

/// `Z⟨1, i, j, k⟩` in `(-1, -1)`.
pub fn lipschitz() -> (QuaternionAlgebra<Integers>, Lattice<BigInt>) {
    let h = hamilton();
    let l = standard_order(&h).expect("standard order");
    (h, l)
}

/// The Hurwitz order `Z⟨1, i, j, (1+i+j+k)/2⟩` in `(-1, -1)`.
pub fn hurwitz() -> (QuaternionAlgebra<Integers>, Lattice<BigInt>) {
    let h = hamilton();
    let half = Integers.frac(&BigInt::from(1), &BigInt::from(2));
    let w: Quat<BigInt> = std::array::from_fn(|_| half.clone());
    let l = h.lattice(&[h.basis_elem(0), h.basis_elem(1), h.basis_elem(2), w]).expect("full rank");
    (h, l)
}

/// `A⟨1, i, j, k⟩`, an order because `a` and `b` are integral.
pub fn standard_order<R: ArithRing>(alg: &QuaternionAlgebra<R>) -> Result<Lattice<R::Elem>> {
    alg.lattice(&[alg.basis_elem(0), alg.basis_elem(1), alg.basis_elem(2), alg.basis_elem(3)])
}

/// A maximal order of the algebra, grown from the standard order.
pub fn maximal_order<R: ArithRing>(alg: &QuaternionAlgebra<R>) -> Result<Lattice<R::Elem>> {
    alg.maximalize(&standard_order(alg)?)
}

/// A presentation `(a, b)` of the quaternion algebra over `Q` ramified
/// exactly at `p` and `∞`.
pub fn b_p_infinity(p: u64) -> Result<QuaternionAlgebra<Integers>> {
    if !is_prime_u64(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let want = vec![Place::Infinity, Place::Prime(p)];
    let p = BigInt::from(p);
    for b in [-p.clone(), -2 * p.clone()] {
        for m in 1..=2000i64 {
            let alg = QuaternionAlgebra::new(Integers, BigInt::from(-m), b.clone())?;
            if alg.ramified_places()? == want {
                return Ok(alg);
            }
        }
    }
    Err(Error::BoundExceeded(format!("no small presentation of B_{{{p},∞}} found")))
}

/// The algebra ramified at `p` and `∞` with a maximal order.
pub fn maximal_b_p_infinity(p: u64) -> Result<(QuaternionAlgebra<Integers>, Lattice<BigInt>)> {
    if p == 2 {
        return Ok(hurwitz());
    }
    let alg = b_p_infinity(p)?;
    let o = maximal_order(&alg)?;
    Ok((alg, o))
}

/// A right `O`-ideal of reduced norm `π` (so index `N(π)^2`), for a prime
/// `π` at which the algebra splits.
pub fn prime_right_ideal<R: ArithRing>(
    alg: &QuaternionAlgebra<R>,
    order: &Lattice<R::Elem>,
    prime: &R::Elem,
) -> Result<Lattice<R::Elem>> {
    let ring = &alg.ring;
    let deg = ring.residue_degree(prime) as usize;
    let p = ring.residue_char(prime);
    let dim = 4 * deg;
    let total = (p as u128).checked_pow(dim as u32).filter(|&n| n <= 1 << 24).ok_or_else(|| {
        Error::Unsupported(format!("search for a norm-{} ideal is too large", ring.display(prime)))
    })? as u64;
    let basis = alg.basis(order);
    let pi = ring.f_int(prime.clone());
    let pi_o: Vec<Quat<R::Elem>> = basis.iter().map(|e| alg.scale(e, &pi)).collect();
    let target = ring.f_int(ring.pow(prime, 2));
    for idx in 1..total {
        let mut v = vec![0u64; dim];
        let mut k = idx;
        for c in v.iter_mut() {
            *c = k % p;
            k /= p;
        }
        let x = crate::local::residue::lift_residue(alg, order, prime, &v);
        let n = alg.nrd(&x);
        if !ring.f_is_integral(&n) || !ring.divides(prime, &n.num) {
            continue;
        }
        let mut gens: Vec<Quat<R::Elem>> = basis.iter().map(|b| alg.mul(&x, b)).collect();
        gens.extend(pi_o.iter().cloned());
        let j = alg.lattice(&gens)?;
        if alg.chi(order, &j)? == target {
            return Ok(j);
        }
    }
    Err(Error::Domain(format!("no right ideal of norm {} exists", ring.display(prime))))
}

/// The Eichler order `A + I_N` of squarefree level `N` inside a maximal order
/// `O`, where `I_N` is the intersection of one right ideal of norm `π` for
/// each prime `π | N`.
pub fn eichler_order<R: ArithRing>(
    alg: &QuaternionAlgebra<R>,
    maximal: &Lattice<R::Elem>,
    level: &R::Elem,
) -> Result<Lattice<R::Elem>> {
    let ring = &alg.ring;
    let ram = alg.ramified_places()?;
    let mut ideal: Option<Lattice<R::Elem>> = None;
    for (p, e) in ring.prime_factors(level)? {
        if e != 1 {
            return Err(Error::Unsupported(format!("Eichler level {} is not squarefree", ring.display(level))));
        }
        if ram.contains(&ring.place_of(&p)) {
            return Err(Error::Domain(format!(
                "Eichler level {} meets the ramified place {}",
                ring.display(level),
                ring.display(&p)
            )));
        }
        let j = prime_right_ideal(alg, maximal, &p)?;
        ideal = Some(match ideal {
            None => j,
            Some(i) => ring.lat_intersect(&i, &j)?,
        });
    }
    let Some(i) = ideal else { return Ok(maximal.clone()) };
    let mut gens = vec![alg.one()];
    gens.extend(alg.basis(&i));
    let o = alg.lattice(&gens)?;
    debug_assert!(alg.verify_order(&o).is_order);
    Ok(o)
}
