//! Integral positive definite forms: exact LLL on Gram matrices, short vector
//! enumeration, and isometry search. A form is stored as the Gram matrix `G`
//! of its bilinear form, so the value of `x` is `xᵀGx`.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Gram = Vec<Vec<BigInt>>;

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn round(r: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (r + half).floor().to_integer()
}

pub fn value(g: &Gram, x: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for i in 0..x.len() {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..x.len() {
            s += &x[i] * &g[i][j] * &x[j];
        }
    }
    s
}

pub fn inner(g: &Gram, x: &[BigInt], y: &[BigInt]) -> BigInt {
    let mut s = BigInt::zero();
    for i in 0..x.len() {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..y.len() {
            s += &x[i] * &g[i][j] * &y[j];
        }
    }
    s
}

/// `d_i` and `μ_ij` with `xᵀGx = Σ d_i (x_i + Σ_{j>i} μ_ij x_j)^2`, or an
/// error if `G` is not positive definite.
fn ldl(g: &Gram) -> Result<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let n = g.len();
    let mut d = vec![BigRational::zero(); n];
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let mut di = rat(&g[i][i]);
        for k in 0..i {
            di -= &mu[k][i] * &mu[k][i] * &d[k];
        }
        if !di.is_positive() {
            return Err(Error::NotDefinite("the norm form is not positive definite".into()));
        }
        for j in i + 1..n {
            let mut m = rat(&g[i][j]);
            for k in 0..i {
                m -= &mu[k][i] * &mu[k][j] * &d[k];
            }
            mu[i][j] = m / &di;
        }
        d[i] = di;
    }
    Ok((d, mu))
}

pub fn is_positive_definite(g: &Gram) -> bool {
    ldl(g).is_ok()
}

/// LLL reduction (δ = 3/4) of the basis behind `G`. Returns the unimodular
/// change of basis `U` (rows are new basis vectors in old coordinates) and
/// the reduced Gram matrix `U G Uᵀ`.
pub fn lll(g: &Gram) -> Result<(Vec<Vec<BigInt>>, Gram)> {
    let n = g.len();
    let mut u: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut gram = g.clone();
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        if guard > 100_000 {
            return Err(Error::BoundExceeded("LLL did not converge".into()));
        }
        for j in (0..k).rev() {
            let (_, mu) = ldl(&gram)?;
            // μ in LDL is the transpose of the Gram–Schmidt coefficient
            let q = round(&mu[j][k]);
            if !q.is_zero() {
                sub_row(&mut u, &mut gram, k, j, &q);
            }
        }
        let (d, mu) = ldl(&gram)?;
        let m = &mu[k - 1][k];
        if d[k] < (&delta - m * m) * &d[k - 1] {
            u.swap(k, k - 1);
            gram.swap(k, k - 1);
            for row in gram.iter_mut() {
                row.swap(k, k - 1);
            }
            k = k.max(2) - 1;
        } else {
            k += 1;
        }
    }
    Ok((u, gram))
}

/// `b_k ← b_k - q·b_j`, updating `U` and `G`.
fn sub_row(u: &mut [Vec<BigInt>], g: &mut Gram, k: usize, j: usize, q: &BigInt) {
    let n = g.len();
    for c in 0..n {
        let t = &u[j][c] * q;
        u[k][c] -= t;
    }
    // G' = E G Eᵀ with E = I - q e_k e_jᵀ
    for c in 0..n {
        let t = &g[j][c] * q;
        g[k][c] -= t;
    }
    for r in 0..n {
        let t = &g[r][j] * q;
        g[r][k] -= t;
    }
}

/// Every nonzero `x` with `xᵀGx ≤ bound`, with its value. Both `x` and `-x`
/// are listed.
pub fn short_vectors(g: &Gram, bound: &BigInt) -> Result<Vec<(Vec<BigInt>, BigInt)>> {
    let (d, mu) = ldl(g)?;
    let n = g.len();
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    let bound_r = rat(bound);
    enumerate(n, &d, &mu, &bound_r, &mut x, BigRational::zero(), &mut |x| {
        if x.iter().any(|c| !c.is_zero()) {
            out.push((x.to_vec(), value(g, x)));
        }
    });
    Ok(out)
}

fn enumerate(
    level: usize,
    d: &[BigRational],
    mu: &[Vec<BigRational>],
    bound: &BigRational,
    x: &mut Vec<BigInt>,
    used: BigRational,
    emit: &mut dyn FnMut(&[BigInt]),
) {
    if level == 0 {
        emit(x);
        return;
    }
    let i = level - 1;
    let n = x.len();
    let mut c = BigRational::zero();
    for j in i + 1..n {
        c -= &mu[i][j] * rat(&x[j]);
    }
    let rest = bound - &used;
    let cost = |xi: &BigInt| -> BigRational {
        let t = rat(xi) - &c;
        &d[i] * &t * &t
    };
    let start = c.ceil().to_integer();
    // the cost is monotone on each side of c: walk up from ceil(c), down from ceil(c) - 1
    let mut xi = start.clone();
    loop {
        let cst = cost(&xi);
        if cst > rest {
            break;
        }
        x[i] = xi.clone();
        enumerate(i, d, mu, bound, x, &used + cst, emit);
        xi += 1;
    }
    let mut xi = start - 1;
    loop {
        let cst = cost(&xi);
        if cst > rest {
            break;
        }
        x[i] = xi.clone();
        enumerate(i, d, mu, bound, x, &used + cst, emit);
        xi -= 1;
    }
    x[i] = BigInt::zero();
}

/// Numbers of vectors of value `2, 4, …, 2k` (theta coefficients of an even
/// form), used as a cheap isometry invariant.
pub fn theta(g: &Gram, k: u32) -> Result<Vec<usize>> {
    let mut counts = vec![0usize; k as usize];
    for (_, v) in short_vectors(g, &BigInt::from(2 * k))? {
        let (q, r) = v.div_rem(&BigInt::from(2));
        if r.is_zero() && q >= BigInt::one() {
            counts[(q - 1u32).try_into().unwrap_or(0usize)] += 1;
        }
    }
    Ok(counts)
}

pub fn det(g: &Gram) -> BigInt {
    use crate::ring::{FracField, Integers};
    let m: Vec<Vec<_>> = g.iter().map(|r| r.iter().map(|x| Integers.f_int(x.clone())).collect()).collect();
    crate::ring::matrix::det(&Integers, &m).num
}

/// Whether two forms are isometric, by matching basis images.
pub fn isometric(g1: &Gram, g2: &Gram) -> Result<bool> {
    let n = g1.len();
    if g2.len() != n || det(g1) != det(g2) {
        return Ok(false);
    }
    let (_, a) = lll(g1)?;
    let (_, b) = lll(g2)?;
    let top = (0..n).map(|i| a[i][i].clone()).max().unwrap_or_default();
    let pool = short_vectors(&b, &top)?;
    let cands: Vec<Vec<&Vec<BigInt>>> =
        (0..n).map(|i| pool.iter().filter(|(_, v)| *v == a[i][i]).map(|(x, _)| x).collect()).collect();
    if cands.iter().any(|c| c.is_empty()) {
        return Ok(false);
    }
    let mut chosen: Vec<&Vec<BigInt>> = Vec::with_capacity(n);
    Ok(backtrack(&a, &b, &cands, &mut chosen))
}

fn backtrack<'a>(a: &Gram, b: &Gram, cands: &[Vec<&'a Vec<BigInt>>], chosen: &mut Vec<&'a Vec<BigInt>>) -> bool {
    let i = chosen.len();
    if i == a.len() {
        return true;
    }
    for v in &cands[i] {
        if (0..i).all(|j| inner(b, chosen[j], v) == a[j][i]) {
            chosen.push(v);
            if backtrack(a, b, cands, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(rows: &[&[i64]]) -> Gram {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn short_vectors_of_z4() {
        let id = g(&[&[2, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]]);
        let v = short_vectors(&id, &BigInt::from(2)).unwrap();
        assert_eq!(v.len(), 8);
        // r_4(2) = 24
        assert_eq!(theta(&id, 2).unwrap(), vec![8, 24]);
    }

    #[test]
    fn lll_reduces_a_skewed_basis() {
        // basis (1,0), (100,1) of Z^2 with the standard form
        let skew = g(&[&[1, 100], &[100, 10001]]);
        let (u, r) = lll(&skew).unwrap();
        assert_eq!(r, g(&[&[1, 0], &[0, 1]]));
        assert_eq!(det(&u).abs(), BigInt::one());
        assert!(isometric(&skew, &g(&[&[1, 0], &[0, 1]])).unwrap());
        assert!(!isometric(&g(&[&[2, 1], &[1, 2]]), &g(&[&[1, 0], &[0, 3]])).unwrap());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(200))]
        #[test]
        fn enumeration_matches_a_box_search(off in proptest::collection::vec(-2i64..=2, 3), diag in proptest::collection::vec(5i64..9, 3)) {
            // diagonally dominant, so every entry of a vector of value ≤ 12 is at most 3
            let gm = g(&[&[diag[0], off[0], off[1]], &[off[0], diag[1], off[2]], &[off[1], off[2], diag[2]]]);
            let bound = BigInt::from(12);
            let mut want = 0;
            for a in -3i64..=3 { for b in -3i64..=3 { for c in -3i64..=3 {
                let x = [BigInt::from(a), BigInt::from(b), BigInt::from(c)];
                if (a, b, c) != (0, 0, 0) && value(&gm, &x) <= bound { want += 1; }
            }}}
            proptest::prop_assert_eq!(short_vectors(&gm, &bound).unwrap().len(), want);
            let (_, red) = lll(&gm).unwrap();
            proptest::prop_assert_eq!(short_vectors(&red, &bound).unwrap().len(), want);
            proptest::prop_assert!(isometric(&gm, &red).unwrap());
        }
    }

    #[test]
    fn rejects_indefinite() {
        assert!(short_vectors(&g(&[&[1, 0], &[0, -1]]), &BigInt::from(3)).is_err());
    }
}
