use super::Pid;
use crate::error::{Error, Result};

/// A fraction `num/den` over a [`Pid`], kept in lowest terms with a
/// canonical denominator. Construct through [`FracField`] methods.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Frac<E> {
    pub num: E,
    pub den: E,
}

/// Fraction-field arithmetic, available on every [`Pid`].
pub trait FracField: Pid {
    fn frac(&self, num: &Self::Elem, den: &Self::Elem) -> Frac<Self::Elem> {
        assert!(!self.is_zero(den), "zero denominator");
        if self.is_zero(num) {
            return Frac { num: self.zero(), den: self.one() };
        }
        let g = self.gcd(num, den);
        let n = self.exact_div(num, &g);
        let d = self.exact_div(den, &g);
        let (dc, u) = self.normalize(&d);
        let ui = self.unit_inv(&u);
        Frac { num: self.mul(&n, &ui), den: dc }
    }

    fn f_int(&self, a: Self::Elem) -> Frac<Self::Elem> {
        Frac { num: a, den: self.one() }
    }

    fn f_i64(&self, n: i64) -> Frac<Self::Elem> {
        self.f_int(self.from_i64(n))
    }

    fn f_zero(&self) -> Frac<Self::Elem> {
        self.f_int(self.zero())
    }

    fn f_one(&self) -> Frac<Self::Elem> {
        self.f_int(self.one())
    }

    fn f_is_zero(&self, a: &Frac<Self::Elem>) -> bool {
        self.is_zero(&a.num)
    }

    fn f_is_integral(&self, a: &Frac<Self::Elem>) -> bool {
        self.is_one(&a.den)
    }

    fn f_add(&self, a: &Frac<Self::Elem>, b: &Frac<Self::Elem>) -> Frac<Self::Elem> {
        if a.den == b.den {
            return self.frac(&self.add(&a.num, &b.num), &a.den);
        }
        let num = self.add(&self.mul(&a.num, &b.den), &self.mul(&b.num, &a.den));
        self.frac(&num, &self.mul(&a.den, &b.den))
    }

    fn f_sub(&self, a: &Frac<Self::Elem>, b: &Frac<Self::Elem>) -> Frac<Self::Elem> {
        self.f_add(a, &self.f_neg(b))
    }

    fn f_neg(&self, a: &Frac<Self::Elem>) -> Frac<Self::Elem> {
        Frac { num: self.neg(&a.num), den: a.den.clone() }
    }

    fn f_mul(&self, a: &Frac<Self::Elem>, b: &Frac<Self::Elem>) -> Frac<Self::Elem> {
        if self.is_one(&a.den) && self.is_one(&b.den) {
            return self.f_int(self.mul(&a.num, &b.num));
        }
        self.frac(&self.mul(&a.num, &b.num), &self.mul(&a.den, &b.den))
    }

    fn f_inv(&self, a: &Frac<Self::Elem>) -> Result<Frac<Self::Elem>> {
        if self.f_is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.frac(&a.den, &a.num))
    }

    fn f_div(&self, a: &Frac<Self::Elem>, b: &Frac<Self::Elem>) -> Result<Frac<Self::Elem>> {
        Ok(self.f_mul(a, &self.f_inv(b)?))
    }

    fn f_scale(&self, a: &Frac<Self::Elem>, c: &Self::Elem) -> Frac<Self::Elem> {
        self.frac(&self.mul(&a.num, c), &a.den)
    }

    fn f_display(&self, a: &Frac<Self::Elem>) -> String {
        if self.is_one(&a.den) {
            self.display(&a.num)
        } else {
            let wrap = |s: String| if s[1..].contains(['+', '-']) { format!("({s})") } else { s };
            format!("{}/{}", wrap(self.display(&a.num)), wrap(self.display(&a.den)))
        }
    }

    /// Parses `x` or `x/y`, where either side may be parenthesized.
    fn f_parse(&self, s: &str) -> Result<Frac<Self::Elem>> {
        let s = s.trim();
        let strip = |t: &str| {
            let t = t.trim();
            if t.starts_with('(') && t.ends_with(')') {
                t[1..t.len() - 1].to_string()
            } else {
                t.to_string()
            }
        };
        match split_top_level_slash(s) {
            Some((n, d)) => {
                let num = self.parse(&strip(n))?;
                let den = self.parse(&strip(d))?;
                if self.is_zero(&den) {
                    return Err(Error::DivisionByZero);
                }
                Ok(self.frac(&num, &den))
            }
            None => Ok(self.f_int(self.parse(&strip(s))?)),
        }
    }
}

impl<R: Pid> FracField for R {}

fn split_top_level_slash(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FpPolyRing, Integers};

    #[test]
    fn integer_fractions() {
        let z = Integers;
        let a = z.f_parse("6/-4").unwrap();
        assert_eq!(z.f_display(&a), "-3/2");
        let b = z.f_parse("1/6").unwrap();
        assert_eq!(z.f_display(&z.f_add(&a, &b)), "-4/3");
        assert!(z.f_inv(&z.f_zero()).is_err());
    }

    #[test]
    fn polynomial_fractions() {
        let r = FpPolyRing::new(3).unwrap();
        // t^2+2 = (t+1)(t+2) over F_3
        assert_eq!(r.f_display(&r.f_parse("(t^2+2)/(2t+2)").unwrap()), "2t+1");
        let a = r.f_parse("(t^2+2)/(2t)").unwrap();
        // denominator made monic
        assert_eq!(r.f_display(&a), "(2t^2+1)/t");
        let b = r.f_parse("t").unwrap();
        assert_eq!(r.f_display(&r.f_mul(&a, &b)), "2t^2+1");
    }
}
