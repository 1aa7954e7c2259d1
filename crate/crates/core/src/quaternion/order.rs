//! Localization and maximalization of orders.

use super::algebra::QuaternionAlgebra;
use super::lattice::{ideal_valuation, Lattice, LatticeOps};
use crate::error::{Error, Result};
use crate::local::residue::{lift_residue, residue_algebra};
use crate::ring::matrix;
use crate::ring::{ArithRing, FracField};

/// An order reduced modulo `π^k`.
#[derive(Clone, Debug)]
pub struct Localization<E> {
    pub prime: E,
    pub k: u32,
    /// Structure constants reduced modulo `π^k`.
    pub consts: Vec<Vec<Vec<E>>>,
    /// `v_π(𝔡(R))`.
    pub disc_valuation: u32,
}

impl<R: ArithRing> QuaternionAlgebra<R> {
    /// `v_π` of the reduced discriminant, read off the Smith form of the
    /// trace form.
    pub fn disc_valuation(&self, order: &Lattice<R::Elem>, prime: &R::Elem) -> Result<u32> {
        let r = &self.ring;
        let gram = self.trace_gram(order);
        if !gram.iter().flatten().all(|x| r.f_is_integral(x)) {
            return Err(Error::Domain("trace form is not integral; the lattice is not an order".into()));
        }
        let ints: Vec<Vec<R::Elem>> = gram.iter().map(|row| row.iter().map(|x| x.num.clone()).collect()).collect();
        let diag = matrix::smith_diagonal(r, &ints);
        if diag.len() != 4 {
            return Err(Error::Domain("degenerate trace form".into()));
        }
        let total: u32 = diag.iter().map(|d| r.valuation(d, prime)).sum();
        if !total.is_multiple_of(2) {
            return Err(Error::NotASquare(format!("discriminant has odd valuation {total} at {}", r.display(prime))));
        }
        Ok(total / 2)
    }

    pub fn localize(&self, order: &Lattice<R::Elem>, prime: &R::Elem, k: u32) -> Result<Localization<R::Elem>> {
        if k == 0 {
            return Err(Error::Domain("localization depth must be positive".into()));
        }
        let r = &self.ring;
        let modulus = r.pow(prime, k);
        let consts = self
            .structure_constants(order)?
            .into_iter()
            .map(|a| a.into_iter().map(|b| b.into_iter().map(|c| r.rem(&c, &modulus)).collect()).collect())
            .collect();
        Ok(Localization { prime: prime.clone(), k, consts, disc_valuation: self.disc_valuation(order, prime)? })
    }

    /// Whether the order is maximal at `prime`.
    pub fn is_maximal_at(&self, order: &Lattice<R::Elem>, prime: &R::Elem) -> Result<bool> {
        let target = if self.hilbert_symbol(&self.ring.place_of(prime))? == -1 { 1 } else { 0 };
        Ok(self.disc_valuation(order, prime)? == target)
    }

    /// An order containing `order` and maximal at `prime`, by iterating the
    /// idealizer of the radical.
    pub fn p_maximalize(&self, order: &Lattice<R::Elem>, prime: &R::Elem) -> Result<Lattice<R::Elem>> {
        let r = &self.ring;
        let place = r.place_of(prime);
        let target = if self.hilbert_symbol(&place)? == -1 { 1 } else { 0 };
        let mut o = order.clone();
        let start = self.disc_valuation(&o, prime)?;
        for _ in 0..=start {
            let v = self.disc_valuation(&o, prime)?;
            if v == target {
                return Ok(o);
            }
            if v < target {
                return Err(Error::Mismatch(format!("discriminant valuation {v} below the maximal value at {place}")));
            }
            let a = residue_algebra(self, &o, prime)?;
            let rad = a.radical()?;
            let pi = r.f_int(prime.clone());
            let mut gens: Vec<_> = self.basis(&o).iter().map(|e| self.scale(e, &pi)).collect();
            gens.extend(rad.iter().map(|x| lift_residue(self, &o, prime, x)));
            let j = self.lattice(&gens)?;
            let mut grown = None;
            for cand in [self.right_order(&j)?, self.left_order(&j)?] {
                if cand != o {
                    grown = Some(cand);
                    break;
                }
            }
            if grown.is_none() {
                // hereditary but not maximal: split along a central idempotent of κ
                let kappa = a.quotient(&rad)?;
                let keep = a.complement_columns(&rad);
                for e in kappa.central_idempotents()? {
                    if e == kappa.one() {
                        continue;
                    }
                    let mut full = vec![0u64; a.dim()];
                    for (c, x) in keep.iter().zip(&e) {
                        full[*c] = *x;
                    }
                    let lift = lift_residue(self, &o, prime, &full);
                    let basis = self.basis(&o);
                    let mut right: Vec<_> = basis.iter().map(|b| self.mul(&lift, b)).collect();
                    right.extend(self.basis(&j));
                    let mut left: Vec<_> = basis.iter().map(|b| self.mul(b, &lift)).collect();
                    left.extend(self.basis(&j));
                    for cand in [self.right_order(&self.lattice(&right)?)?, self.left_order(&self.lattice(&left)?)?] {
                        if cand != o && r.lat_is_sublattice(&o, &cand) {
                            grown = Some(cand);
                            break;
                        }
                    }
                    if grown.is_some() {
                        break;
                    }
                }
            }
            match grown {
                Some(g) => o = g,
                None => {
                    return Err(Error::Mismatch(format!(
                        "order with discriminant valuation {v} at {place} could not be enlarged"
                    )))
                }
            }
        }
        let v = self.disc_valuation(&o, prime)?;
        if v != target {
            return Err(Error::BoundExceeded(format!("maximalization at {place} did not terminate")));
        }
        Ok(o)
    }

    /// An order containing `order` that is maximal everywhere.
    pub fn maximalize(&self, order: &Lattice<R::Elem>) -> Result<Lattice<R::Elem>> {
        let d = self.reduced_disc(order)?;
        let mut o = order.clone();
        for (p, _) in self.ring.prime_factors(&d.num)? {
            o = self.p_maximalize(&o, &p)?;
        }
        Ok(o)
    }

    /// `v_π` of `χ(X1, X2)`.
    pub fn chi_valuation(&self, x1: &Lattice<R::Elem>, x2: &Lattice<R::Elem>, prime: &R::Elem) -> Result<i64> {
        Ok(ideal_valuation(&self.ring, &self.chi(x1, x2)?, prime))
    }
}
