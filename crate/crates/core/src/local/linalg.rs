//! Linear algebra over a prime field `F_p`, vectors as `Vec<u64>`.

pub(crate) fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn invm(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of 0 mod {p}");
    powm(a, p - 2, p)
}

/// Reduced row echelon form of the span of `rows`; returns the nonzero rows
/// and their pivot columns.
pub(crate) fn rref(rows: &[Vec<u64>], p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..ncols {
        let Some(r) = (top..m.len()).find(|&r| !m[r][c].is_multiple_of(p)) else { continue };
        m.swap(top, r);
        let inv = invm(m[top][c], p);
        for x in m[top].iter_mut() {
            *x = mulm(*x, inv, p);
        }
        let pivot = m[top].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == top || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = (*x + p - mulm(f, *y, p)) % p;
            }
        }
        pivots.push(c);
        top += 1;
        if top == m.len() {
            break;
        }
    }
    m.truncate(top);
    (m, pivots)
}

pub(crate) fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    rref(rows, p).0.len()
}

/// Basis of `{x : M x = 0}` for `M` given by its rows (`ncols` columns).
pub(crate) fn kernel(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let (r, pivots) = rref(rows, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = (p - row[f] % p) % p;
            }
            v
        })
        .collect()
}

/// Reduces `v` modulo the span of an RREF basis.
pub(crate) fn reduce(v: &[u64], basis: &[Vec<u64>], pivots: &[usize], p: u64) -> Vec<u64> {
    let mut v = v.to_vec();
    for (row, &c) in basis.iter().zip(pivots) {
        let f = v[c];
        if f != 0 {
            for (x, y) in v.iter_mut().zip(row) {
                *x = (*x + p - mulm(f, *y, p)) % p;
            }
        }
    }
    v
}

pub(crate) fn in_span(v: &[u64], basis: &[Vec<u64>], pivots: &[usize], p: u64) -> bool {
    reduce(v, basis, pivots, p).iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let p = 5;
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&rows, p), 2);
        let k = kernel(&rows, 3, p);
        assert_eq!(k.len(), 1);
        for r in &rows {
            let dot: u64 = r.iter().zip(&k[0]).map(|(a, b)| a * b).sum::<u64>() % p;
            assert_eq!(dot, 0);
        }
        assert_eq!(invm(3, 7), 5);
        assert_eq!(powm(2, 10, 1000), 24);
    }
}
