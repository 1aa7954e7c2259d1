//! Full lattices in a quaternion algebra, stored as `(1/den) · H` with `H` in
//! Hermite normal form. Two lattices are equal iff their stored forms are.

use super::algebra::{Quat, QuaternionAlgebra};
use crate::error::{Error, Result};
use crate::ring::matrix::{self, Mat};
use crate::ring::{ArithRing, Frac, FracField, Pid};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Lattice<E> {
    pub den: E,
    pub rows: Mat<E>,
}

impl<E: Clone> Lattice<E> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Lattice spanned by the given vectors (any number of generators).
pub fn lattice_from<R: Pid>(ring: &R, gens: &[Vec<Frac<R::Elem>>]) -> Lattice<R::Elem> {
    let (d, n) = matrix::clear_denominators(ring, &gens.to_vec());
    normalize(ring, d, matrix::hnf(ring, &n))
}

fn normalize<R: Pid>(ring: &R, den: R::Elem, rows: Mat<R::Elem>) -> Lattice<R::Elem> {
    let mut g = den.clone();
    for x in rows.iter().flatten() {
        if ring.is_one(&g) {
            break;
        }
        g = ring.gcd(&g, x);
    }
    if ring.is_one(&g) {
        return Lattice { den, rows };
    }
    let rows = rows.iter().map(|r| r.iter().map(|x| ring.exact_div(x, &g)).collect()).collect();
    Lattice { den: ring.exact_div(&den, &g), rows }
}

impl<R: Pid> LatticeOps for R {}

/// Lattice arithmetic that needs only the coefficient ring.
pub trait LatticeOps: Pid {
    fn lat_basis(&self, l: &Lattice<Self::Elem>) -> Mat<Frac<Self::Elem>> {
        l.rows.iter().map(|r| r.iter().map(|x| self.frac(x, &l.den)).collect()).collect()
    }

    /// Coordinates of `x` in the lattice basis, if `x` lies in the
    /// `K`-span; `None` only when `x` is outside the span.
    fn lat_coords(&self, l: &Lattice<Self::Elem>, x: &[Frac<Self::Elem>]) -> Option<Vec<Frac<Self::Elem>>> {
        let mut y: Vec<Frac<Self::Elem>> = x.iter().map(|c| self.f_scale(c, &l.den)).collect();
        let mut coords = Vec::with_capacity(l.rows.len());
        for row in &l.rows {
            let c = row.iter().position(|e| !self.is_zero(e)).unwrap();
            let q = self.f_div(&y[c], &self.f_int(row[c].clone())).ok()?;
            for (yk, rk) in y.iter_mut().zip(row) {
                *yk = self.f_sub(yk, &self.f_scale(&q, rk));
            }
            coords.push(q);
        }
        if y.iter().all(|c| self.f_is_zero(c)) {
            Some(coords)
        } else {
            None
        }
    }

    fn lat_contains(&self, l: &Lattice<Self::Elem>, x: &[Frac<Self::Elem>]) -> bool {
        self.lat_coords(l, x).is_some_and(|c| c.iter().all(|q| self.f_is_integral(q)))
    }

    fn lat_sum(&self, a: &Lattice<Self::Elem>, b: &Lattice<Self::Elem>) -> Lattice<Self::Elem> {
        let mut gens = self.lat_basis(a);
        gens.extend(self.lat_basis(b));
        lattice_from(self, &gens)
    }

    fn lat_scale(&self, l: &Lattice<Self::Elem>, c: &Frac<Self::Elem>) -> Lattice<Self::Elem> {
        let gens: Mat<Frac<Self::Elem>> =
            self.lat_basis(l).iter().map(|r| r.iter().map(|x| self.f_mul(x, c)).collect()).collect();
        lattice_from(self, &gens)
    }

    /// `{y : y·x ∈ A for all x ∈ l}` for the standard dot product.
    fn lat_dual(&self, l: &Lattice<Self::Elem>) -> Result<Lattice<Self::Elem>> {
        let b = self.lat_basis(l);
        if b.len() != b.first().map_or(0, |r| r.len()) {
            return Err(Error::Domain("dual of a lattice that is not full rank".into()));
        }
        let inv = matrix::inverse(self, &b)?;
        Ok(lattice_from(self, &matrix::transpose(&inv)))
    }

    fn lat_intersect(&self, a: &Lattice<Self::Elem>, b: &Lattice<Self::Elem>) -> Result<Lattice<Self::Elem>> {
        let s = self.lat_sum(&self.lat_dual(a)?, &self.lat_dual(b)?);
        self.lat_dual(&s)
    }

    /// Determinant of the stored basis.
    fn lat_det(&self, l: &Lattice<Self::Elem>) -> Frac<Self::Elem> {
        matrix::det(self, &self.lat_basis(l))
    }

    fn lat_is_sublattice(&self, small: &Lattice<Self::Elem>, big: &Lattice<Self::Elem>) -> bool {
        self.lat_basis(small).iter().all(|x| self.lat_contains(big, x))
    }

    /// Canonical generator of the fractional ideal generated by `x`.
    fn ideal_of(&self, x: &Frac<Self::Elem>) -> Frac<Self::Elem> {
        Frac { num: self.canonical(&x.num), den: x.den.clone() }
    }
}

/// Square root of a fractional ideal, by halving exponents.
pub fn ideal_sqrt<R: ArithRing>(ring: &R, x: &Frac<R::Elem>) -> Result<Frac<R::Elem>> {
    if ring.f_is_zero(x) {
        return Err(Error::Domain("square root of the zero ideal".into()));
    }
    let half = |e: &R::Elem| -> Result<R::Elem> {
        let mut acc = ring.one();
        for (p, k) in ring.prime_factors(e)? {
            if k % 2 != 0 {
                return Err(Error::NotASquare(format!("the ideal ({})", ring.f_display(x))));
            }
            acc = ring.mul(&acc, &ring.pow(&p, k / 2));
        }
        Ok(acc)
    };
    Ok(ring.frac(&half(&x.num)?, &half(&x.den)?))
}

/// `v_π` of a fractional ideal.
pub fn ideal_valuation<R: Pid>(ring: &R, x: &Frac<R::Elem>, prime: &R::Elem) -> i64 {
    ring.valuation(&x.num, prime) as i64 - ring.valuation(&x.den, prime) as i64
}

fn quat_row<E: Clone>(x: &Quat<E>) -> Vec<Frac<E>> {
    x.to_vec()
}

fn row_quat<E: Clone>(r: &[Frac<E>]) -> Quat<E> {
    [r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone()]
}

/// Outcome of [`QuaternionAlgebra::verify_order`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCheck {
    pub is_order: bool,
    pub witness: Option<String>,
}

impl<R: ArithRing> QuaternionAlgebra<R> {
    /// Lattice spanned by the given elements.
    pub fn lattice(&self, gens: &[Quat<R::Elem>]) -> Result<Lattice<R::Elem>> {
        let rows: Mat<Frac<R::Elem>> = gens.iter().map(quat_row).collect();
        let l = lattice_from(&self.ring, &rows);
        if l.rank() != 4 {
            return Err(Error::Domain(format!("lattice has rank {} instead of 4", l.rank())));
        }
        Ok(l)
    }

    pub fn basis(&self, l: &Lattice<R::Elem>) -> Vec<Quat<R::Elem>> {
        self.ring.lat_basis(l).iter().map(|r| row_quat(r)).collect()
    }

    pub fn contains(&self, l: &Lattice<R::Elem>, x: &Quat<R::Elem>) -> bool {
        self.ring.lat_contains(l, x)
    }

    pub fn coords(&self, l: &Lattice<R::Elem>, x: &Quat<R::Elem>) -> Vec<Frac<R::Elem>> {
        self.ring.lat_coords(l, x).expect("full-rank lattice spans the algebra")
    }

    /// The lattice `XY` spanned by all products.
    pub fn product(&self, x: &Lattice<R::Elem>, y: &Lattice<R::Elem>) -> Result<Lattice<R::Elem>> {
        let bx = self.basis(x);
        let by = self.basis(y);
        let mut gens = Vec::with_capacity(16);
        for u in &bx {
            for v in &by {
                gens.push(self.mul(u, v));
            }
        }
        self.lattice(&gens)
    }

    /// Matrix of `x ↦ x·y` acting on row vectors.
    fn right_mult(&self, y: &Quat<R::Elem>) -> Mat<Frac<R::Elem>> {
        (0..4).map(|k| quat_row(&self.mul(&self.basis_elem(k), y))).collect()
    }

    /// Matrix of `x ↦ y·x` acting on row vectors.
    fn left_mult(&self, y: &Quat<R::Elem>) -> Mat<Frac<R::Elem>> {
        (0..4).map(|k| quat_row(&self.mul(y, &self.basis_elem(k)))).collect()
    }

    fn solve_colon(&self, mats: Vec<Mat<Frac<R::Elem>>>, target: &Lattice<R::Elem>) -> Result<Lattice<R::Elem>> {
        let r = &self.ring;
        let tinv = matrix::inverse(r, &r.lat_basis(target))?;
        let mut cols: Mat<Frac<R::Elem>> = Vec::with_capacity(16);
        for m in mats {
            let c = matrix::mul(r, &m, &tinv);
            cols.extend(matrix::transpose(&c));
        }
        let span = lattice_from(r, &cols);
        if span.rank() != 4 {
            return Err(Error::Domain("degenerate colon lattice".into()));
        }
        r.lat_dual(&span)
    }

    /// `{x : x·I ⊆ J}`.
    pub fn colon_left(&self, i: &Lattice<R::Elem>, j: &Lattice<R::Elem>) -> Result<Lattice<R::Elem>> {
        let mats = self.basis(i).iter().map(|l| self.right_mult(l)).collect();
        self.solve_colon(mats, j)
    }

    /// `{x : I·x ⊆ J}`.
    pub fn colon_right(&self, i: &Lattice<R::Elem>, j: &Lattice<R::Elem>) -> Result<Lattice<R::Elem>> {
        let mats = self.basis(i).iter().map(|l| self.left_mult(l)).collect();
        self.solve_colon(mats, j)
    }

    pub fn left_order(&self, i: &Lattice<R::Elem>) -> Result<Lattice<R::Elem>> {
        self.colon_left(i, i)
    }

    pub fn right_order(&self, i: &Lattice<R::Elem>) -> Result<Lattice<R::Elem>> {
        self.colon_right(i, i)
    }

    /// Checks that `l` contains 1 and is closed under multiplication.
    pub fn verify_order(&self, l: &Lattice<R::Elem>) -> OrderCheck {
        if l.rank() != 4 {
            return OrderCheck { is_order: false, witness: Some("basis is not full rank".into()) };
        }
        if !self.contains(l, &self.one()) {
            return OrderCheck { is_order: false, witness: Some("1 is not in the lattice".into()) };
        }
        let b = self.basis(l);
        for (s, u) in b.iter().enumerate() {
            for (t, v) in b.iter().enumerate() {
                let p = self.mul(u, v);
                if !self.contains(l, &p) {
                    return OrderCheck {
                        is_order: false,
                        witness: Some(format!("e{} * e{} = {} is not in the lattice", s + 1, t + 1, self.display_elem(&p))),
                    };
                }
            }
        }
        OrderCheck { is_order: true, witness: None }
    }

    /// `(Tr(e_s e_t))` for the stored basis.
    pub fn trace_gram(&self, l: &Lattice<R::Elem>) -> Mat<Frac<R::Elem>> {
        let b = self.basis(l);
        b.iter().map(|u| b.iter().map(|v| self.trd(&self.mul(u, v))).collect()).collect()
    }

    /// The discriminant ideal `𝔡_T`, as its canonical generator.
    pub fn disc_t(&self, l: &Lattice<R::Elem>) -> Frac<R::Elem> {
        let d = matrix::det(&self.ring, &self.trace_gram(l));
        self.ring.ideal_of(&d)
    }

    /// The reduced discriminant `𝔡` with `𝔡² = 𝔡_T`.
    pub fn reduced_disc(&self, l: &Lattice<R::Elem>) -> Result<Frac<R::Elem>> {
        ideal_sqrt(&self.ring, &self.disc_t(l))
    }

    /// Serre's `χ(X1, X2)`: the ideal of `det M` where `X2 = M·X1`.
    pub fn chi(&self, x1: &Lattice<R::Elem>, x2: &Lattice<R::Elem>) -> Result<Frac<R::Elem>> {
        let r = &self.ring;
        let d1 = r.lat_det(x1);
        let d2 = r.lat_det(x2);
        Ok(r.ideal_of(&r.f_div(&d2, &d1)?))
    }

    /// `e_s e_t = Σ c[s][t][u] e_u` for an order basis.
    pub fn structure_constants(&self, order: &Lattice<R::Elem>) -> Result<Vec<Vec<Vec<R::Elem>>>> {
        let b = self.basis(order);
        let mut out = Vec::with_capacity(4);
        for u in &b {
            let mut row = Vec::with_capacity(4);
            for v in &b {
                let c = self.coords(order, &self.mul(u, v));
                if !c.iter().all(|x| self.ring.f_is_integral(x)) {
                    return Err(Error::Domain("lattice is not closed under multiplication".into()));
                }
                row.push(c.into_iter().map(|x| x.num).collect());
            }
            out.push(row);
        }
        Ok(out)
    }

    /// Gram data of the reduced norm on an integral lattice: `nrd(Σ x_s e_s) =
    /// Σ_{s≤t} q[s][t] x_s x_t`.
    pub fn norm_form(&self, l: &Lattice<R::Elem>) -> Mat<Frac<R::Elem>> {
        let r = &self.ring;
        let b = self.basis(l);
        let mut q = vec![vec![r.f_zero(); 4]; 4];
        for s in 0..4 {
            q[s][s] = self.nrd(&b[s]);
            for t in s + 1..4 {
                q[s][t] = self.trd(&self.mul(&b[s], &self.conj(&b[t])));
            }
        }
        q
    }
}
