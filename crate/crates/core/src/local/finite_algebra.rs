//! Finite-dimensional associative algebras over a prime field.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::linalg::{in_span, invm, kernel, mulm, rank, reduce, rref};
use crate::error::{Error, Result};
use crate::exactnum::ipow;
use crate::ring::{FpPoly, FpPolyRing, Pid};

/// Largest algebra (in elements) searched exhaustively.
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 20;

/// An associative unital algebra over `F_p`, with `F_{p^f}` (`f =
/// center_degree`) acting centrally so that the algebra has dimension
/// `dim / f` over `F_Q`, `Q = p^f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    p: u64,
    dim: usize,
    center_degree: u32,
    /// `e_i e_j = Σ_k mult[(i*dim + j)*dim + k] e_k`.
    mult: Vec<u64>,
    one: Vec<u64>,
}

/// Shape of a semisimple algebra `Π M_{m_i}(F_{p^{f_i}})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KappaClass {
    SplitPair,
    FieldExt,
    BaseField,
    Matrix,
    Other,
}

impl KappaClass {
    /// The three-valued symbol attached to the shape, where defined.
    pub fn eichler_symbol(self) -> Option<i8> {
        match self {
            KappaClass::SplitPair => Some(1),
            KappaClass::FieldExt => Some(-1),
            KappaClass::BaseField => Some(0),
            KappaClass::Matrix | KappaClass::Other => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            KappaClass::SplitPair => "split-pair",
            KappaClass::FieldExt => "field-ext",
            KappaClass::BaseField => "base-field",
            KappaClass::Matrix => "matrix",
            KappaClass::Other => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaInvariants {
    pub size: BigInt,
    pub units: BigInt,
    /// `(m, f)` for each simple factor `M_m(F_{p^f})`, sorted.
    pub factors: Vec<(u32, u32)>,
    pub class: KappaClass,
}

/// `|GL_m(F_Q)|`.
pub fn gl_order(m: u32, q: &BigInt) -> BigInt {
    let qm = ipow(q, m);
    (0..m).map(|k| &qm - ipow(q, k)).product()
}

impl FiniteAlgebra {
    pub fn new(p: u64, dim: usize, center_degree: u32, mult: Vec<u64>, one: Vec<u64>) -> Result<Self> {
        if mult.len() != dim * dim * dim || one.len() != dim {
            return Err(Error::Schema("structure constant table has the wrong size".into()));
        }
        if center_degree == 0 || !dim.is_multiple_of(center_degree as usize) {
            return Err(Error::Schema("central field degree must divide the dimension".into()));
        }
        let a = FiniteAlgebra {
            p,
            dim,
            center_degree,
            mult: mult.into_iter().map(|c| c % p).collect(),
            one: one.into_iter().map(|c| c % p).collect(),
        };
        a.check()?;
        Ok(a)
    }

    fn check(&self) -> Result<()> {
        for i in 0..self.dim {
            let e = self.basis(i);
            if self.mul(&self.one, &e) != e || self.mul(&e, &self.one) != e {
                return Err(Error::Mismatch(format!("unity does not act as identity on e{i}")));
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let eij = self.mul(&self.basis(i), &self.basis(j));
                for k in 0..self.dim {
                    let ek = self.basis(k);
                    if self.mul(&eij, &ek) != self.mul(&self.basis(i), &self.mul(&self.basis(j), &ek)) {
                        return Err(Error::Mismatch(format!("not associative on (e{i}, e{j}, e{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn center_degree(&self) -> u32 {
        self.center_degree
    }

    /// Dimension over the central field `F_Q`.
    pub fn dim_over_center_field(&self) -> usize {
        self.dim / self.center_degree as usize
    }

    pub fn one(&self) -> &[u64] {
        &self.one
    }

    pub fn size(&self) -> BigInt {
        ipow(&BigInt::from(self.p), self.dim as u32)
    }

    fn small_size(&self) -> Option<u64> {
        (self.p as u128).checked_pow(self.dim as u32).filter(|&s| s <= BRUTE_FORCE_LIMIT as u128).map(|s| s as u64)
    }

    pub fn basis(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.dim]
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(a, b)| (a + b) % self.p).collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(a, b)| (a + self.p - b) % self.p).collect()
    }

    pub fn scale(&self, x: &[u64], c: u64) -> Vec<u64> {
        x.iter().map(|a| mulm(*a, c, self.p)).collect()
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let d = self.dim;
        let p = self.p as u128;
        let mut acc = vec![0u128; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = (xi as u128 * yj as u128) % p;
                let base = (i * d + j) * d;
                for (k, a) in acc.iter_mut().enumerate() {
                    let m = self.mult[base + k];
                    if m != 0 {
                        *a = (*a + c * m as u128) % p;
                    }
                }
            }
        }
        acc.into_iter().map(|a| a as u64).collect()
    }

    pub fn pow(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut r = self.one.clone();
        let mut b = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn is_nilpotent(&self, x: &[u64]) -> bool {
        let mut y = x.to_vec();
        let mut reach = 1;
        while reach < self.dim_over_center_field().max(1) {
            y = self.mul(&y, &y);
            reach *= 2;
        }
        y.iter().all(|&c| c == 0)
    }

    /// Matrix of `y ↦ x·y` with rows the images of the basis.
    fn left_matrix(&self, x: &[u64]) -> Vec<Vec<u64>> {
        (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect()
    }

    pub fn is_unit(&self, x: &[u64]) -> bool {
        rank(&self.left_matrix(x), self.p) == self.dim
    }

    fn element(&self, mut idx: u64) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        for c in v.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        v
    }

    fn index(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// The Jacobson radical, as an RREF basis.
    pub fn radical(&self) -> Result<Vec<Vec<u64>>> {
        if self.p as usize > self.dim_over_center_field() {
            return Ok(self.radical_by_trace());
        }
        match self.small_size() {
            Some(n) => Ok(self.radical_by_search(n)),
            None => Err(Error::Unsupported(format!(
                "radical of a {}-dimensional algebra in characteristic {} with more than 2^20 elements",
                self.dim, self.p
            ))),
        }
    }

    fn radical_by_trace(&self) -> Vec<Vec<u64>> {
        let d = self.dim;
        let p = self.p;
        let tr: Vec<u64> = (0..d).map(|i| (0..d).fold(0, |a, k| (a + self.mult[(i * d + k) * d + k]) % p)).collect();
        let gram: Vec<Vec<u64>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).fold(0, |a, l| (a + mulm(self.mult[(i * d + j) * d + l], tr[l], p)) % p))
                    .collect()
            })
            .collect();
        rref(&kernel(&gram, d, p), p).0
    }

    fn radical_by_search(&self, n: u64) -> Vec<Vec<u64>> {
        let nil: Vec<bool> = (0..n).map(|i| self.is_nilpotent(&self.element(i))).collect();
        let mut v: Vec<Vec<u64>> = Vec::new();
        let mut piv: Vec<usize> = Vec::new();
        for idx in 1..n {
            if !nil[idx as usize] {
                continue;
            }
            let x = self.element(idx);
            if in_span(&x, &v, &piv, self.p) {
                continue;
            }
            let mut gens = v.clone();
            gens.extend((0..self.dim).map(|j| self.mul(&x, &self.basis(j))));
            let (w, wp) = rref(&gens, self.p);
            if self.span_is_nil(&w, &nil) {
                v = w;
                piv = wp;
            }
        }
        v
    }

    fn span_is_nil(&self, basis: &[Vec<u64>], nil: &[bool]) -> bool {
        if basis.iter().any(|b| !nil[self.index(b) as usize]) {
            return false;
        }
        let count = (self.p as u128).pow(basis.len() as u32) as u64;
        for c in 1..count {
            let mut v = self.zero();
            let mut k = c;
            for b in basis {
                let coef = k % self.p;
                k /= self.p;
                if coef != 0 {
                    v = self.add(&v, &self.scale(b, coef));
                }
            }
            if !nil[self.index(&v) as usize] {
                return false;
            }
        }
        true
    }

    /// Coordinates kept by [`FiniteAlgebra::quotient`]: the quotient basis is
    /// the image of these standard basis vectors.
    pub fn complement_columns(&self, ideal: &[Vec<u64>]) -> Vec<usize> {
        let (_, pivots) = rref(ideal, self.p);
        (0..self.dim).filter(|c| !pivots.contains(c)).collect()
    }

    /// The quotient by a two-sided ideal given as an RREF basis.
    pub fn quotient(&self, ideal: &[Vec<u64>]) -> Result<FiniteAlgebra> {
        let (basis, pivots) = rref(ideal, self.p);
        let keep = self.complement_columns(ideal);
        let proj = |v: &[u64]| -> Vec<u64> {
            let r = reduce(v, &basis, &pivots, self.p);
            keep.iter().map(|&c| r[c]).collect()
        };
        let qd = keep.len();
        let mut mult = vec![0u64; qd * qd * qd];
        for (a, &ca) in keep.iter().enumerate() {
            for (b, &cb) in keep.iter().enumerate() {
                let prod = proj(&self.mul(&self.basis(ca), &self.basis(cb)));
                mult[(a * qd + b) * qd..(a * qd + b + 1) * qd].copy_from_slice(&prod);
            }
        }
        let deg = if qd.is_multiple_of(self.center_degree as usize) { self.center_degree } else { 1 };
        FiniteAlgebra::new(self.p, qd, deg, mult, proj(&self.one))
    }

    /// Basis of the center.
    pub fn center(&self) -> Vec<Vec<u64>> {
        let d = self.dim;
        // rows: for each (j, k), the linear functional z ↦ (z e_j - e_j z)_k
        let mut rows = Vec::with_capacity(d * d);
        let comm: Vec<Vec<Vec<u64>>> = (0..d)
            .map(|i| (0..d).map(|j| self.sub(&self.mul(&self.basis(i), &self.basis(j)), &self.mul(&self.basis(j), &self.basis(i)))).collect())
            .collect();
        for j in 0..d {
            for k in 0..d {
                rows.push((0..d).map(|i| comm[i][j][k]).collect());
            }
        }
        kernel(&rows, d, self.p)
    }

    /// Invariants of a semisimple algebra.
    pub fn semisimple_invariants(&self) -> Result<KappaInvariants> {
        let factors = self.simple_factors()?;
        let mut units = BigInt::one();
        for &(m, f) in &factors {
            units *= gl_order(m, &ipow(&BigInt::from(self.p), f));
        }
        if let Some(n) = self.small_size() {
            let counted = (0..n).filter(|&i| self.is_unit(&self.element(i))).count();
            if BigInt::from(counted) != units {
                return Err(Error::Mismatch(format!(
                    "unit count {counted} disagrees with the structure {factors:?}"
                )));
            }
        }
        let d = self.center_degree;
        let class = match factors.as_slice() {
            [(1, f)] if *f == d => KappaClass::BaseField,
            [(1, f)] if *f == 2 * d => KappaClass::FieldExt,
            [(1, f), (1, g)] if *f == d && *g == d => KappaClass::SplitPair,
            [(2, f)] if *f == d => KappaClass::Matrix,
            _ => KappaClass::Other,
        };
        Ok(KappaInvariants { size: self.size(), units, factors, class })
    }

    /// Primitive central idempotents of a semisimple algebra.
    pub fn central_idempotents(&self) -> Result<Vec<Vec<u64>>> {
        let z = self.center();
        // Frobenius-fixed part of the center: z^p = z
        let frob_rows: Vec<Vec<u64>> = z.iter().map(|b| self.sub(&self.pow(b, self.p), b)).collect();
        let coeffs = kernel(&crate::ring::matrix::transpose(&frob_rows), z.len(), self.p);
        let fixed: Vec<Vec<u64>> = coeffs
            .iter()
            .map(|c| c.iter().zip(&z).fold(self.zero(), |acc, (ci, b)| self.add(&acc, &self.scale(b, *ci))))
            .collect();
        let mut idems = vec![self.one.clone()];
        for w in &fixed {
            let mut next = Vec::new();
            for e in &idems {
                next.extend(self.split_idempotent(e, &self.mul(e, w))?);
            }
            idems = next;
        }
        if idems.len() != fixed.len() {
            return Err(Error::Mismatch("center did not split into the expected fields".into()));
        }
        Ok(idems)
    }

    /// `(m, f)` for each simple factor, via primitive central idempotents.
    fn simple_factors(&self) -> Result<Vec<(u32, u32)>> {
        if self.dim == 0 {
            return Ok(vec![]);
        }
        let z = self.center();
        let idems = self.central_idempotents()?;
        let mut out = Vec::new();
        for e in &idems {
            let block = rank(&(0..self.dim).map(|j| self.mul(e, &self.basis(j))).collect::<Vec<_>>(), self.p);
            let f = rank(&z.iter().map(|b| self.mul(e, b)).collect::<Vec<_>>(), self.p);
            let m2 = block / f;
            let m = (m2 as f64).sqrt().round() as usize;
            if m * m * f != block {
                return Err(Error::Mismatch(format!("simple block of dimension {block} over a degree-{f} center")));
            }
            out.push((m as u32, f as u32));
        }
        out.sort();
        Ok(out)
    }

    /// Splits the central idempotent `e` along the eigenvalues of `w ∈ eZ`.
    fn split_idempotent(&self, e: &[u64], w: &[u64]) -> Result<Vec<Vec<u64>>> {
        // minimal polynomial of w in eA (unity e)
        let mut powers = vec![e.to_vec()];
        let minpoly = loop {
            let next = self.mul(powers.last().unwrap(), w);
            let mut rows = powers.clone();
            rows.push(next.clone());
            if rank(&rows, self.p) < rows.len() {
                let k = kernel(&crate::ring::matrix::transpose(&rows), rows.len(), self.p);
                let c = &k[0];
                let lead = c[c.len() - 1];
                let inv = invm(lead, self.p);
                break c.iter().map(|x| mulm(*x, inv, self.p)).collect::<Vec<u64>>();
            }
            powers.push(next);
        };
        let roots = split_roots(self.p, &minpoly)?;
        if roots.len() == 1 {
            return Ok(vec![e.to_vec()]);
        }
        let mut out = Vec::new();
        for &lam in &roots {
            let mut acc = e.to_vec();
            for &mu in roots.iter().filter(|&&m| m != lam) {
                let factor = self.scale(&self.sub(w, &self.scale(e, mu)), invm((lam + self.p - mu) % self.p, self.p));
                acc = self.mul(&acc, &factor);
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// Roots of a monic polynomial over `F_p` that splits into distinct linear
/// factors.
fn split_roots(p: u64, coeffs: &[u64]) -> Result<Vec<u64>> {
    let ring = FpPolyRing::new(p)?;
    let f = FpPoly(coeffs.to_vec());
    let mut out = Vec::new();
    let mut stack = vec![f];
    while let Some(g) = stack.pop() {
        match g.degree() {
            None | Some(0) => continue,
            Some(1) => {
                let c = g.0[0];
                out.push((p - c % p) % p);
                continue;
            }
            _ => {}
        }
        if p <= 64 {
            for r in 0..p {
                let ev = g.0.iter().rev().fold(0u64, |acc, &c| (mulm(acc, r, p) + c) % p);
                if ev == 0 {
                    out.push(r);
                }
            }
            continue;
        }
        let mut split = false;
        for a in 0..p.min(10_000) {
            let x_plus_a = FpPoly::from_vec(vec![a, 1]);
            let h = ring.pow_mod(&x_plus_a, ((p - 1) / 2) as u128, &g);
            let h1 = ring.sub(&h, &ring.one());
            let d = ring.gcd(&h1, &g);
            let dd = d.degree().unwrap_or(0);
            if dd > 0 && dd < g.degree().unwrap() {
                let (q, _) = ring.div_rem(&g, &d);
                stack.push(d);
                stack.push(ring.canonical(&q));
                split = true;
                break;
            }
        }
        if !split {
            return Err(Error::Mismatch("failed to split a polynomial over F_p".into()));
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `M_2(F_p)` with basis e11, e12, e21, e22.
    pub(crate) fn matrix_algebra(p: u64) -> FiniteAlgebra {
        let d = 4;
        let mut mult = vec![0; 64];
        let idx = |r: usize, c: usize| r * 2 + c;
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for (c, e) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                if b == c {
                    mult[(idx(a, b) * d + idx(c, e)) * d + idx(a, e)] = 1;
                }
            }
        }
        FiniteAlgebra::new(p, 4, 1, mult, vec![1, 0, 0, 1]).unwrap()
    }

    /// `F_p[x]/(x^2)`.
    fn dual_numbers(p: u64) -> FiniteAlgebra {
        let mut mult = vec![0; 8];
        mult[0] = 1; // 1*1 = 1
        mult[2 + 1] = 1; // 1*x = x
        mult[(2) * 2 + 1] = 1; // x*1 = x
        FiniteAlgebra::new(p, 2, 1, mult, vec![1, 0]).unwrap()
    }

    #[test]
    fn radicals() {
        for p in [2, 3, 5, 7] {
            let m = matrix_algebra(p);
            assert!(m.radical().unwrap().is_empty());
            let inv = m.semisimple_invariants().unwrap();
            assert_eq!(inv.class, KappaClass::Matrix);
            assert_eq!(inv.units, gl_order(2, &BigInt::from(p)));
            let dn = dual_numbers(p);
            assert_eq!(dn.radical().unwrap(), vec![vec![0, 1]]);
            let q = dn.quotient(&dn.radical().unwrap()).unwrap();
            assert_eq!(q.dim(), 1);
            assert_eq!(q.semisimple_invariants().unwrap().class, KappaClass::BaseField);
        }
    }

    #[test]
    fn product_of_fields() {
        // F_5 x F_5 with basis (1,0), (0,1)
        let mut mult = vec![0; 8];
        mult[0] = 1;
        mult[(3) * 2 + 1] = 1;
        let a = FiniteAlgebra::new(5, 2, 1, mult, vec![1, 1]).unwrap();
        let inv = a.semisimple_invariants().unwrap();
        assert_eq!(inv.class, KappaClass::SplitPair);
        assert_eq!(inv.units, BigInt::from(16));
        // F_9 = F_3[x]/(x^2+1)
        let mut mult = vec![0; 8];
        mult[0] = 1;
        mult[2 + 1] = 1;
        mult[2 * 2 + 1] = 1;
        mult[3 * 2] = 2;
        let f9 = FiniteAlgebra::new(3, 2, 1, mult, vec![1, 0]).unwrap();
        let inv = f9.semisimple_invariants().unwrap();
        assert_eq!(inv.class, KappaClass::FieldExt);
        assert_eq!(inv.units, BigInt::from(8));
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(1, &BigInt::from(4)), BigInt::from(3));
        assert_eq!(gl_order(2, &BigInt::from(3)), BigInt::from(48));
    }

    #[test]
    fn root_splitting_large_prime() {
        let p = 1_000_003;
        // (x - 5)(x - 77)(x - 123456)
        let ring = FpPolyRing::new(p).unwrap();
        let f = [5u64, 77, 123456].iter().fold(ring.one(), |acc, &r| ring.mul(&acc, &FpPoly::from_vec(vec![p - r, 1])));
        assert_eq!(split_roots(p, &f.0).unwrap(), vec![5, 77, 123456]);
    }
}
