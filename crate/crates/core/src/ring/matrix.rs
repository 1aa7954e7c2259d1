//! Dense matrices over a [`Pid`] and over its fraction field.

use super::frac::{Frac, FracField};
use super::Pid;
use crate::error::{Error, Result};

pub type Mat<E> = Vec<Vec<E>>;

/// Row-style Hermite normal form of the module spanned by the rows of `m`.
///
/// The result is in echelon form: each row's leading entry is a canonical
/// associate strictly to the right of the previous row's, and entries above a
/// leading entry are reduced modulo it. Zero rows are dropped.
pub fn hnf<R: Pid>(ring: &R, m: &Mat<R::Elem>) -> Mat<R::Elem> {
    let mut rows: Mat<R::Elem> = m.iter().filter(|r| r.iter().any(|x| !ring.is_zero(x))).cloned().collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut top = 0;
    for c in 0..ncols {
        if top == rows.len() {
            break;
        }
        loop {
            // smallest nonzero entry of column c at or below `top`
            let mut best: Option<usize> = None;
            for r in top..rows.len() {
                if ring.is_zero(&rows[r][c]) {
                    continue;
                }
                if best.is_none_or(|b| ring.size_lt(&rows[r][c], &rows[b][c])) {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            rows.swap(top, b);
            let mut done = true;
            for r in top + 1..rows.len() {
                if ring.is_zero(&rows[r][c]) {
                    continue;
                }
                let (q, _) = ring.div_rem(&rows[r][c], &rows[top][c]);
                let pivot = rows[top].clone();
                sub_mul_row(ring, &mut rows[r], &pivot, &q);
                if !ring.is_zero(&rows[r][c]) {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if ring.is_zero(&rows[top][c]) {
            continue;
        }
        let (_, u) = ring.normalize(&rows[top][c]);
        let ui = ring.unit_inv(&u);
        for x in rows[top].iter_mut() {
            *x = ring.mul(x, &ui);
        }
        let pivot = rows[top].clone();
        for r in 0..top {
            let (q, _) = ring.div_rem(&rows[r][c], &pivot[c]);
            if !ring.is_zero(&q) {
                sub_mul_row(ring, &mut rows[r], &pivot, &q);
            }
        }
        top += 1;
    }
    rows.truncate(top);
    rows.retain(|r| r.iter().any(|x| !ring.is_zero(x)));
    rows
}

fn sub_mul_row<R: Pid>(ring: &R, row: &mut [R::Elem], pivot: &[R::Elem], q: &R::Elem) {
    for (x, p) in row.iter_mut().zip(pivot) {
        *x = ring.sub(x, &ring.mul(q, p));
    }
}

/// Elementary divisors of `m` (the nonzero diagonal of its Smith form), each a
/// canonical associate, in divisibility order.
pub fn smith_diagonal<R: Pid>(ring: &R, m: &Mat<R::Elem>) -> Vec<R::Elem> {
    let mut a = m.clone();
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // pick the smallest nonzero entry of the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !ring.is_zero(&a[i][j])
                    && best.is_none_or(|(bi, bj)| ring.size_lt(&a[i][j], &a[bi][bj]))
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..nr {
            if ring.is_zero(&a[i][t]) {
                continue;
            }
            let (q, _) = ring.div_rem(&a[i][t], &a[t][t]);
            let pivot = a[t].clone();
            sub_mul_row(ring, &mut a[i], &pivot, &q);
            if !ring.is_zero(&a[i][t]) {
                clean = false;
            }
        }
        for j in t + 1..nc {
            if ring.is_zero(&a[t][j]) {
                continue;
            }
            let (q, _) = ring.div_rem(&a[t][j], &a[t][t]);
            for row in a.iter_mut() {
                let v = ring.sub(&row[j], &ring.mul(&q, &row[t]));
                row[j] = v;
            }
            if !ring.is_zero(&a[t][j]) {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // the pivot must divide the whole remaining block
        let mut bad = None;
        'outer: for i in t + 1..nr {
            for j in t + 1..nc {
                if !ring.divides(&a[t][t], &a[i][j]) {
                    bad = Some(i);
                    break 'outer;
                }
            }
        }
        if let Some(i) = bad {
            for j in t..nc {
                let v = ring.add(&a[t][j], &a[i][j]);
                a[t][j] = v;
            }
            continue;
        }
        diag.push(ring.canonical(&a[t][t]));
        t += 1;
    }
    diag
}

/// Determinant over the fraction field.
pub fn det<R: Pid>(ring: &R, m: &Mat<Frac<R::Elem>>) -> Frac<R::Elem> {
    let n = m.len();
    let mut a = m.clone();
    let mut d = ring.f_one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !ring.f_is_zero(&a[r][c])) else {
            return ring.f_zero();
        };
        if p != c {
            a.swap(p, c);
            d = ring.f_neg(&d);
        }
        d = ring.f_mul(&d, &a[c][c]);
        let inv = ring.f_inv(&a[c][c]).expect("nonzero pivot");
        for r in c + 1..n {
            if ring.f_is_zero(&a[r][c]) {
                continue;
            }
            let f = ring.f_mul(&a[r][c], &inv);
            for k in c..n {
                let v = ring.f_sub(&a[r][k], &ring.f_mul(&f, &a[c][k]));
                a[r][k] = v;
            }
        }
    }
    d
}

/// Inverse over the fraction field.
pub fn inverse<R: Pid>(ring: &R, m: &Mat<Frac<R::Elem>>) -> Result<Mat<Frac<R::Elem>>> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv: Mat<Frac<R::Elem>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { ring.f_one() } else { ring.f_zero() }).collect()).collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !ring.f_is_zero(&a[r][c]))
            .ok_or_else(|| Error::Domain("singular matrix".into()))?;
        a.swap(p, c);
        inv.swap(p, c);
        let pinv = ring.f_inv(&a[c][c])?;
        for k in 0..n {
            a[c][k] = ring.f_mul(&a[c][k], &pinv);
            inv[c][k] = ring.f_mul(&inv[c][k], &pinv);
        }
        for r in 0..n {
            if r == c || ring.f_is_zero(&a[r][c]) {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..n {
                let v = ring.f_sub(&a[r][k], &ring.f_mul(&f, &a[c][k]));
                a[r][k] = v;
                let w = ring.f_sub(&inv[r][k], &ring.f_mul(&f, &inv[c][k]));
                inv[r][k] = w;
            }
        }
    }
    Ok(inv)
}

pub fn mul<R: Pid>(ring: &R, a: &Mat<Frac<R::Elem>>, b: &Mat<Frac<R::Elem>>) -> Mat<Frac<R::Elem>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| {
                    row.iter().zip(b).fold(ring.f_zero(), |acc, (x, brow)| ring.f_add(&acc, &ring.f_mul(x, &brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &Mat<T>) -> Mat<T> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Clears denominators: returns `(d, N)` with `m = N / d`, `d` canonical and
/// minimal.
pub fn clear_denominators<R: Pid>(ring: &R, m: &Mat<Frac<R::Elem>>) -> (R::Elem, Mat<R::Elem>) {
    let mut d = ring.one();
    for x in m.iter().flatten() {
        d = ring.lcm(&d, &x.den);
    }
    let n = m
        .iter()
        .map(|r| r.iter().map(|x| ring.mul(&x.num, &ring.exact_div(&d, &x.den))).collect())
        .collect();
    (d, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FpPolyRing, Integers};
    use num_bigint::BigInt;

    fn zmat(rows: &[&[i64]]) -> Mat<BigInt> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hnf_of_integer_lattice() {
        let z = Integers;
        let h = hnf(&z, &zmat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16], &[0, 0, 0]]));
        assert_eq!(h, zmat(&[&[2, 4, 4], &[0, 6, 0], &[0, 0, 12]]));
        // idempotent
        assert_eq!(hnf(&z, &h), h);
    }

    #[test]
    fn smith_of_integer_matrix() {
        let z = Integers;
        let d = smith_diagonal(&z, &zmat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = smith_diagonal(&z, &zmat(&[&[4, 6], &[6, 4]]));
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(10)]);
    }

    #[test]
    fn polynomial_hnf_and_det() {
        let r = FpPolyRing::new(3).unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        let m = vec![vec![p("t"), p("1")], vec![p("0"), p("t^2+1")]];
        let h = hnf(&r, &m);
        assert_eq!(h[1][1], p("t^2+1"));
        let fm: Mat<_> = m.iter().map(|row| row.iter().map(|x| r.f_int(x.clone())).collect()).collect();
        assert_eq!(det(&r, &fm), r.f_int(p("t^3+t")));
        let inv = inverse(&r, &fm).unwrap();
        let id = super::mul(&r, &fm, &inv);
        assert!(r.f_is_zero(&id[0][1]) && id[0][0] == r.f_one());
    }
}
