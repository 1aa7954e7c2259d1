//! Local invariants of orders: residue algebras, radicals, `κ(R_v)`, the
//! Eichler symbol, `λ_v`, and the local unit, norm and normalizer indices.

mod finite_algebra;
mod linalg;
mod norm;
mod profile;
pub mod residue;

pub use finite_algebra::{gl_order, FiniteAlgebra, KappaClass, KappaInvariants, BRUTE_FORCE_LIMIT};
pub use norm::local_norm_index;
pub use profile::{eichler_symbol, lambda_max, local_unit_index, log_exact, LocalOrderProfile};
pub(crate) use profile::opt_bigint;
pub use residue::residue_algebra;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::quaternion::{Lattice, QuaternionAlgebra};
use crate::ring::ArithRing;

/// Radical and semisimple quotient of `R/πR`.
pub fn kappa_of_order<R: ArithRing>(
    alg: &QuaternionAlgebra<R>,
    order: &Lattice<R::Elem>,
    prime: &R::Elem,
) -> Result<(FiniteAlgebra, Vec<Vec<u64>>, KappaInvariants)> {
    let a = residue_algebra(alg, order, prime)?;
    let rad = a.radical()?;
    let kappa = a.quotient(&rad)?;
    let inv = kappa.semisimple_invariants()?;
    Ok((a, rad, inv))
}

/// The full local profile of a basis-given quaternion order at a prime.
pub fn profile_of_order<R: ArithRing>(
    alg: &QuaternionAlgebra<R>,
    order: &Lattice<R::Elem>,
    prime: &R::Elem,
) -> Result<LocalOrderProfile> {
    let ring = &alg.ring;
    let place = ring.place_of(prime);
    let q = ring.residue_size(prime);
    let d: u32 = if alg.hilbert_symbol(&place)? == -1 { 2 } else { 1 };
    let v = alg.disc_valuation(order, prime)?;
    let disc_abs = crate::exactnum::ipow(&q, v);
    let (_, _, kappa) = kappa_of_order(alg, order, prime)?;
    let norm_index = local_norm_index(alg, order, prime)?;
    let maximal = v == d - 1;
    let normalizer_index = if maximal {
        Some(BigInt::from(d))
    } else if kappa.class == KappaClass::SplitPair && d == 1 {
        Some(BigInt::from(2))
    } else {
        None
    };
    let eichler_symbol = if maximal && d == 1 { None } else { kappa.class.eichler_symbol() };
    if maximal && norm_index != BigInt::from(1) {
        return Err(Error::Mismatch(format!("maximal order at {place} has norm index {norm_index}")));
    }
    Ok(LocalOrderProfile {
        place,
        q,
        d,
        disc_abs,
        kappa_size: kappa.size,
        kappa_units: kappa.units,
        norm_index,
        normalizer_index,
        eichler_symbol,
        kappa_class: Some(kappa.class),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::quaternion::named;

    #[test]
    fn lipschitz_and_hurwitz_at_two() {
        let two = BigInt::from(2);
        let (h, lip) = named::lipschitz();
        let (a, rad, k) = kappa_of_order(&h, &lip, &two).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(rad.len(), 3);
        assert_eq!((k.size.clone(), k.units.clone(), k.class), (2.into(), 1.into(), KappaClass::BaseField));
        let p = profile_of_order(&h, &lip, &two).unwrap();
        assert_eq!(p.lambda(2).unwrap(), Rational::from(3));
        assert_eq!(p.eichler_symbol, Some(0));
        assert_eq!(p.disc_abs, 4.into());
        assert_eq!(p.norm_index, 1.into());

        let (_, hur) = named::hurwitz();
        let (_, rad, k) = kappa_of_order(&h, &hur, &two).unwrap();
        assert_eq!(rad.len(), 2);
        assert_eq!((k.size.clone(), k.units.clone(), k.class), (4.into(), 3.into(), KappaClass::FieldExt));
        let p = profile_of_order(&h, &hur, &two).unwrap();
        assert_eq!(p.eichler_symbol, Some(-1));
        assert_eq!(p.lambda(2).unwrap(), Rational::from(1));
        assert_eq!(p.normalizer_index, Some(2.into()));

        let (_, rad, k) = kappa_of_order(&h, &hur, &BigInt::from(3)).unwrap();
        assert!(rad.is_empty());
        assert_eq!(k.class, KappaClass::Matrix);
        let p5 = profile_of_order(&h, &hur, &BigInt::from(5)).unwrap();
        assert_eq!(p5.lambda(2).unwrap(), Rational::from(1));
        assert_eq!(p5.normalizer_index, Some(1.into()));
    }

    #[test]
    fn eichler_level_three() {
        let (alg, o) = named::maximal_b_p_infinity(2).unwrap();
        let e = named::eichler_order(&alg, &o, &BigInt::from(3)).unwrap();
        let p = profile_of_order(&alg, &e, &BigInt::from(3)).unwrap();
        assert_eq!((p.kappa_size.clone(), p.kappa_units.clone()), (9.into(), 4.into()));
        assert_eq!(p.kappa_class, Some(KappaClass::SplitPair));
        assert_eq!(p.eichler_symbol, Some(1));
        assert_eq!(p.lambda(2).unwrap(), Rational::from(4));
        assert_eq!(p.normalizer_index, Some(2.into()));
    }
}
