use crate::error::{Error, Result};
use crate::field::{FieldContext, Place};
use crate::ring::{ArithRing, Frac, FracField};

/// Coordinates in the standard basis `{1, i, j, k}`.
pub type Quat<E> = [Frac<E>; 4];

/// The quaternion algebra `(a, b)` with `i² = a`, `j² = b`, `k = ij = -ji`,
/// over the fraction field of `ring`. `a` and `b` are ring elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionAlgebra<R: ArithRing> {
    pub ring: R,
    pub a: R::Elem,
    pub b: R::Elem,
}

impl<R: ArithRing> QuaternionAlgebra<R> {
    pub fn new(ring: R, a: R::Elem, b: R::Elem) -> Result<Self> {
        if ring.is_zero(&a) || ring.is_zero(&b) {
            return Err(Error::Domain("quaternion parameters must be nonzero".into()));
        }
        Ok(QuaternionAlgebra { ring, a, b })
    }

    /// Builds `(a, b)` from parsed fractions, which must be integral.
    pub fn from_fracs(ring: R, a: &Frac<R::Elem>, b: &Frac<R::Elem>) -> Result<Self> {
        if !ring.f_is_integral(a) || !ring.f_is_integral(b) {
            return Err(Error::Unsupported(format!(
                "quaternion parameters must be integral, got ({}, {})",
                ring.f_display(a),
                ring.f_display(b)
            )));
        }
        Self::new(ring, a.num.clone(), b.num.clone())
    }

    pub fn zero(&self) -> Quat<R::Elem> {
        std::array::from_fn(|_| self.ring.f_zero())
    }

    pub fn one(&self) -> Quat<R::Elem> {
        self.basis_elem(0)
    }

    pub fn basis_elem(&self, idx: usize) -> Quat<R::Elem> {
        std::array::from_fn(|n| if n == idx { self.ring.f_one() } else { self.ring.f_zero() })
    }

    pub fn from_ints(&self, c: [i64; 4]) -> Quat<R::Elem> {
        std::array::from_fn(|n| self.ring.f_i64(c[n]))
    }

    pub fn add(&self, x: &Quat<R::Elem>, y: &Quat<R::Elem>) -> Quat<R::Elem> {
        std::array::from_fn(|n| self.ring.f_add(&x[n], &y[n]))
    }

    pub fn sub(&self, x: &Quat<R::Elem>, y: &Quat<R::Elem>) -> Quat<R::Elem> {
        std::array::from_fn(|n| self.ring.f_sub(&x[n], &y[n]))
    }

    pub fn scale(&self, x: &Quat<R::Elem>, c: &Frac<R::Elem>) -> Quat<R::Elem> {
        std::array::from_fn(|n| self.ring.f_mul(&x[n], c))
    }

    pub fn mul(&self, x: &Quat<R::Elem>, y: &Quat<R::Elem>) -> Quat<R::Elem> {
        let r = &self.ring;
        let a = r.f_int(self.a.clone());
        let b = r.f_int(self.b.clone());
        let ab = r.f_mul(&a, &b);
        let m = |u: &Frac<R::Elem>, v: &Frac<R::Elem>| r.f_mul(u, v);
        let s = |terms: &[Frac<R::Elem>]| terms.iter().fold(r.f_zero(), |acc, t| r.f_add(&acc, t));
        let c0 = s(&[
            m(&x[0], &y[0]),
            m(&a, &m(&x[1], &y[1])),
            m(&b, &m(&x[2], &y[2])),
            r.f_neg(&m(&ab, &m(&x[3], &y[3]))),
        ]);
        let c1 = s(&[
            m(&x[0], &y[1]),
            m(&x[1], &y[0]),
            r.f_neg(&m(&b, &m(&x[2], &y[3]))),
            m(&b, &m(&x[3], &y[2])),
        ]);
        let c2 = s(&[
            m(&x[0], &y[2]),
            m(&x[2], &y[0]),
            m(&a, &m(&x[1], &y[3])),
            r.f_neg(&m(&a, &m(&x[3], &y[1]))),
        ]);
        let c3 = s(&[m(&x[0], &y[3]), m(&x[3], &y[0]), m(&x[1], &y[2]), r.f_neg(&m(&x[2], &y[1]))]);
        [c0, c1, c2, c3]
    }

    pub fn conj(&self, x: &Quat<R::Elem>) -> Quat<R::Elem> {
        let r = &self.ring;
        [x[0].clone(), r.f_neg(&x[1]), r.f_neg(&x[2]), r.f_neg(&x[3])]
    }

    pub fn trd(&self, x: &Quat<R::Elem>) -> Frac<R::Elem> {
        self.ring.f_add(&x[0], &x[0])
    }

    pub fn nrd(&self, x: &Quat<R::Elem>) -> Frac<R::Elem> {
        let r = &self.ring;
        let a = r.f_int(self.a.clone());
        let b = r.f_int(self.b.clone());
        let sq = |u: &Frac<R::Elem>| r.f_mul(u, u);
        let t0 = sq(&x[0]);
        let t1 = r.f_mul(&a, &sq(&x[1]));
        let t2 = r.f_mul(&b, &sq(&x[2]));
        let t3 = r.f_mul(&r.f_mul(&a, &b), &sq(&x[3]));
        r.f_add(&r.f_sub(&r.f_sub(&t0, &t1), &t2), &t3)
    }

    pub fn inv(&self, x: &Quat<R::Elem>) -> Result<Quat<R::Elem>> {
        let n = self.nrd(x);
        let ni = self.ring.f_inv(&n)?;
        Ok(self.scale(&self.conj(x), &ni))
    }

    pub fn is_zero(&self, x: &Quat<R::Elem>) -> bool {
        x.iter().all(|c| self.ring.f_is_zero(c))
    }

    pub fn a_frac(&self) -> Frac<R::Elem> {
        self.ring.f_int(self.a.clone())
    }

    pub fn b_frac(&self) -> Frac<R::Elem> {
        self.ring.f_int(self.b.clone())
    }

    pub fn hilbert_symbol(&self, place: &Place) -> Result<i8> {
        self.ring.hilbert_symbol(&self.a_frac(), &self.b_frac(), place)
    }

    /// The ramified places, sorted.
    pub fn ramified_places(&self) -> Result<Vec<Place>> {
        let mut out = Vec::new();
        for v in self.ring.hilbert_support(&self.a_frac(), &self.b_frac())? {
            if self.hilbert_symbol(&v)? == -1 {
                out.push(v);
            }
        }
        out.sort();
        if out.len() % 2 != 0 {
            return Err(Error::Mismatch(format!("odd number of ramified places {out:?}")));
        }
        Ok(out)
    }

    /// Whether the algebra is a division algebra at every place of `S`.
    pub fn is_definite(&self, ctx: &FieldContext) -> Result<bool> {
        let ram = self.ramified_places()?;
        Ok(ctx.s().iter().all(|v| ram.contains(v)))
    }

    pub fn display(&self) -> String {
        format!("({}, {})", self.ring.display(&self.a), self.ring.display(&self.b))
    }

    pub fn display_elem(&self, x: &Quat<R::Elem>) -> String {
        let names = ["", "i", "j", "k"];
        let mut parts = Vec::new();
        for (c, n) in x.iter().zip(names) {
            if self.ring.f_is_zero(c) {
                continue;
            }
            let s = self.ring.f_display(c);
            parts.push(if n.is_empty() { s } else { format!("({s}){n}") });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
