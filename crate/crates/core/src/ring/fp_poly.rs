use std::fmt;

use super::{ArithRing, Frac, Pid};
use crate::error::{Error, Result};
use crate::exactnum::is_prime_u64;
use crate::field::Place;
use crate::quaternion::hilbert;

/// A polynomial over `F_p`, coefficients from the constant term up, with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FpPoly(pub Vec<u64>);

impl FpPoly {
    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn lead(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }

    /// Drops trailing zeros; coefficients must already be reduced.
    pub fn from_vec(v: Vec<u64>) -> Self {
        Self::trimmed(v)
    }

    fn trimmed(mut v: Vec<u64>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        FpPoly(v)
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", poly_to_string(&self.0))
    }
}

/// Renders coefficients (constant term first) as `2t^2+t+1`.
pub fn poly_to_string(c: &[u64]) -> String {
    let mut terms = Vec::new();
    for (k, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let coef = if a == 1 && k > 0 { String::new() } else { a.to_string() };
        let mon = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        terms.push(format!("{coef}{mon}"));
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Parses an expression such as `t^2 - 3t + 1` into integer coefficients
/// (constant first), not yet reduced modulo anything.
pub fn parse_poly_coeffs(s: &str) -> Result<Vec<i64>> {
    let bad = || Error::Parse(format!("not a polynomial in t: {s:?}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut coeffs: Vec<i64> = Vec::new();
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1i64, rest),
            None => (1, term.strip_prefix('+').unwrap_or(&term)),
        };
        let (coef, deg) = match body.find('t') {
            None => (body.parse::<i64>().map_err(|_| bad())?, 0usize),
            Some(pos) => {
                let c = body[..pos].trim_end_matches('*');
                let c = if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| bad())? };
                let rest = &body[pos + 1..];
                let d = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                };
                (c, d)
            }
        };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] += sign * coef;
    }
    Ok(coeffs)
}

/// The ring `F_p[t]` for a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FpPolyRing {
    p: u64,
}

impl FpPolyRing {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime_u64(p) || p >= 1 << 31 {
            return Err(Error::Unsupported(format!("F_p[t] needs a prime p < 2^31, got {p}")));
        }
        Ok(FpPolyRing { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn t(&self) -> FpPoly {
        FpPoly(vec![0, 1])
    }

    pub fn constant(&self, c: u64) -> FpPoly {
        FpPoly::trimmed(vec![c % self.p])
    }

    pub fn from_coeffs(&self, c: &[i64]) -> FpPoly {
        let p = self.p as i64;
        FpPoly::trimmed(c.iter().map(|&x| x.rem_euclid(p) as u64).collect())
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn inv_mod(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_p");
        let mut r = 1u64;
        let mut b = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulm(r, b);
            }
            b = self.mulm(b, b);
            e >>= 1;
        }
        r
    }

    /// `a^e mod m`.
    pub fn pow_mod(&self, a: &FpPoly, mut e: u128, m: &FpPoly) -> FpPoly {
        let mut r = self.rem(&self.one(), m);
        let mut b = self.rem(a, m);
        while e > 0 {
            if e & 1 == 1 {
                r = self.rem(&self.mul(&r, &b), m);
            }
            b = self.rem(&self.mul(&b, &b), m);
            e >>= 1;
        }
        r
    }

    /// Is `f` irreducible (and of positive degree)?
    pub fn is_irreducible(&self, f: &FpPoly) -> bool {
        match f.degree() {
            None | Some(0) => false,
            Some(_) => {
                let fac = self.prime_factors(f).expect("polynomial factorization");
                fac.len() == 1 && fac[0].1 == 1
            }
        }
    }

    fn monic_of_degree(&self, d: usize) -> impl Iterator<Item = FpPoly> + '_ {
        let count = (self.p as u128).pow(d as u32);
        (0..count).map(move |mut idx| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push((idx % self.p as u128) as u64);
                idx /= self.p as u128;
            }
            c.push(1);
            FpPoly(c)
        })
    }
}

impl Pid for FpPolyRing {
    type Elem = FpPoly;

    fn zero(&self) -> FpPoly {
        FpPoly(Vec::new())
    }
    fn one(&self) -> FpPoly {
        FpPoly(vec![1])
    }
    fn from_i64(&self, n: i64) -> FpPoly {
        FpPoly::trimmed(vec![n.rem_euclid(self.p as i64) as u64])
    }
    fn is_zero(&self, a: &FpPoly) -> bool {
        a.0.is_empty()
    }
    fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.0.len().max(b.0.len());
        let v = (0..n)
            .map(|i| (a.0.get(i).copied().unwrap_or(0) + b.0.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        FpPoly::trimmed(v)
    }
    fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &FpPoly) -> FpPoly {
        FpPoly(a.0.iter().map(|&c| (self.p - c) % self.p).collect())
    }
    fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        if a.0.is_empty() || b.0.is_empty() {
            return self.zero();
        }
        let mut v = vec![0u64; a.0.len() + b.0.len() - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                v[i + j] = (v[i + j] + self.mulm(x, y)) % self.p;
            }
        }
        FpPoly::trimmed(v)
    }
    fn div_rem(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
        let db = b.degree().expect("division by zero polynomial");
        let inv = self.inv_mod(b.lead());
        let mut r = a.0.clone();
        if r.len() <= db {
            return (self.zero(), a.clone());
        }
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mulm(r[k + db], inv);
            q[k] = c;
            if c != 0 {
                for (j, &bj) in b.0.iter().enumerate() {
                    r[k + j] = (r[k + j] + self.p - self.mulm(c, bj)) % self.p;
                }
            }
        }
        r.truncate(db);
        (FpPoly::trimmed(q), FpPoly::trimmed(r))
    }
    fn size_lt(&self, a: &FpPoly, b: &FpPoly) -> bool {
        a.degree().map(|d| d as i64).unwrap_or(-1) < b.degree().map(|d| d as i64).unwrap_or(-1)
    }
    fn normalize(&self, a: &FpPoly) -> (FpPoly, FpPoly) {
        if a.0.is_empty() {
            return (self.zero(), self.one());
        }
        let lc = a.lead();
        let inv = self.inv_mod(lc);
        (FpPoly(a.0.iter().map(|&c| self.mulm(c, inv)).collect()), FpPoly(vec![lc]))
    }
    fn unit_inv(&self, u: &FpPoly) -> FpPoly {
        FpPoly(vec![self.inv_mod(u.lead())])
    }
    fn display(&self, a: &FpPoly) -> String {
        poly_to_string(&a.0)
    }
    fn parse(&self, s: &str) -> Result<FpPoly> {
        Ok(self.from_coeffs(&parse_poly_coeffs(s)?))
    }
}

impl ArithRing for FpPolyRing {
    fn is_function_field(&self) -> bool {
        true
    }

    fn prime_factors(&self, a: &FpPoly) -> Result<Vec<(FpPoly, u32)>> {
        if self.is_zero(a) {
            return Err(Error::Domain("cannot factor the zero polynomial".into()));
        }
        let mut rest = self.canonical(a);
        let mut out = Vec::new();
        let mut d = 1usize;
        while rest.degree().unwrap_or(0) >= 2 * d {
            if (self.p as f64).powi(d as i32) > 5.0e7 {
                return Err(Error::Unsupported(format!(
                    "factoring {} over F_{} by trial division",
                    self.display(a),
                    self.p
                )));
            }
            let cands: Vec<FpPoly> = self.monic_of_degree(d).collect();
            for f in cands {
                let mut e = 0;
                loop {
                    let (q, r) = self.div_rem(&rest, &f);
                    if !self.is_zero(&r) {
                        break;
                    }
                    rest = q;
                    e += 1;
                }
                if e > 0 {
                    out.push((f, e));
                }
            }
            d += 1;
        }
        if rest.degree().unwrap_or(0) > 0 {
            match out.iter_mut().find(|(f, _)| *f == rest) {
                Some(slot) => slot.1 += 1,
                None => out.push((rest, 1)),
            }
        }
        out.sort();
        Ok(out)
    }

    fn residue_char(&self, _prime: &FpPoly) -> u64 {
        self.p
    }

    fn residue_degree(&self, prime: &FpPoly) -> u32 {
        prime.degree().expect("nonzero prime") as u32
    }

    fn residue_basis(&self, prime: &FpPoly) -> Vec<FpPoly> {
        let d = prime.degree().unwrap();
        (0..d)
            .map(|k| {
                let mut c = vec![0u64; k + 1];
                c[k] = 1;
                FpPoly(c)
            })
            .collect()
    }

    fn residue_coords(&self, a: &FpPoly, prime: &FpPoly) -> Vec<u64> {
        let d = prime.degree().unwrap();
        let r = self.rem(a, prime);
        (0..d).map(|k| r.0.get(k).copied().unwrap_or(0)).collect()
    }

    fn place_of(&self, prime: &FpPoly) -> Place {
        Place::Poly(prime.0.clone())
    }

    fn prime_of(&self, place: &Place) -> Result<FpPoly> {
        match place {
            Place::Poly(c) => {
                let ints: Vec<i64> = c.iter().map(|&x| x as i64).collect();
                let f = self.from_coeffs(&ints);
                if f.lead() != 1 || !self.is_irreducible(&f) {
                    return Err(Error::Schema(format!(
                        "{place} is not a monic irreducible polynomial over F_{}",
                        self.p
                    )));
                }
                Ok(f)
            }
            Place::Infinity => Err(Error::Domain("the place at infinity is not a prime of F_p[t]".into())),
            other => Err(Error::Schema(format!("{other} is not a place of F_{}(t)", self.p))),
        }
    }

    fn hilbert_symbol(&self, a: &Frac<FpPoly>, b: &Frac<FpPoly>, place: &Place) -> Result<i8> {
        hilbert::hilbert_function_field(self, a, b, place)
    }

    fn hilbert_support(&self, a: &Frac<FpPoly>, b: &Frac<FpPoly>) -> Result<Vec<Place>> {
        let mut places = vec![Place::Infinity];
        for x in [&a.num, &a.den, &b.num, &b.den] {
            for (f, _) in self.prime_factors(x)? {
                let pl = self.place_of(&f);
                if !places.contains(&pl) {
                    places.push(pl);
                }
            }
        }
        Ok(places)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let r = FpPolyRing::new(3).unwrap();
        assert_eq!(r.display(&r.parse("t^2+1").unwrap()), "t^2+1");
        assert_eq!(r.display(&r.parse("-t").unwrap()), "2t");
        assert_eq!(r.display(&r.parse("4t^3 - 2*t + 7").unwrap()), "t^3+t+1");
        assert_eq!(r.display(&r.parse("3").unwrap()), "0");
        assert!(r.parse("t^").is_err());
        assert!(r.parse("x+1").is_err());
    }

    #[test]
    fn division_and_gcd() {
        let r = FpPolyRing::new(5).unwrap();
        let a = r.parse("t^3+2t+1").unwrap();
        let b = r.parse("t^2+3").unwrap();
        let (q, rem) = r.div_rem(&a, &b);
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
        assert!(r.size_lt(&rem, &b));
        let f = r.parse("t^2+t+1").unwrap();
        let g = r.gcd(&r.mul(&a, &f), &r.mul(&b, &f));
        assert_eq!(g, f);
    }

    #[test]
    fn factorization() {
        let r = FpPolyRing::new(3).unwrap();
        let f = r.parse("t^5+t^4+2t^3+t^2+2t").unwrap();
        let fac = r.prime_factors(&f).unwrap();
        let mut prod = r.one();
        for (g, e) in &fac {
            assert!(r.is_irreducible(g));
            prod = r.mul(&prod, &r.pow(g, *e));
        }
        assert_eq!(prod, r.canonical(&f));
        assert!(r.is_irreducible(&r.parse("t^2+1").unwrap()));
        assert!(!r.is_irreducible(&r.parse("t^2+2").unwrap()));
        assert_eq!(r.residue_size(&r.parse("t^2+1").unwrap()), 9.into());
    }
}
