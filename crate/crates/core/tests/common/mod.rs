//! Independent oracles and property checks shared by the acceptance suite
//! and the property tests. Nothing here calls the code path it checks.
#![allow(dead_code)]

use massforge::exactnum::Rational;
use massforge::field::{FieldContext, Place};
use massforge::local::{lambda_max, LocalOrderProfile};
use massforge::mass::{compare_orders, explicit_profiles, AlgebraSpec};
use massforge::oracle::{self, BfsOptions, Stop};
use massforge::quaternion::{named, Lattice, Quat, QuaternionAlgebra};
use massforge::ring::{ArithRing, FpPolyRing, Frac, FracField, Integers, Pid};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub type Alg = QuaternionAlgebra<Integers>;

pub fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

/// Distinct prime divisors by trial division.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn bp(p: u64) -> AlgebraSpec {
    AlgebraSpec::quaternion(&[Place::Infinity, Place::Prime(p)]).unwrap()
}

/// Mass of every right ideal class, found by exhausting the neighbor graph.
pub fn enumerated_mass(alg: &Alg, order: &Lattice<BigInt>) -> Rational {
    let opts = BfsOptions { stop: Stop::Exhaust, ..BfsOptions::default() };
    oracle::mass_by_enumeration(alg, order, &opts).unwrap()
}

pub fn problem_path(name: &str) -> String {
    format!("{}/../../problems/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn problem(name: &str) -> massforge::problem::Problem {
    massforge::problem::Problem::from_json_str(&std::fs::read_to_string(problem_path(name)).unwrap()).unwrap()
}

fn int_det(m: &[Vec<i64>]) -> BigInt {
    // Laplace expansion along the first row; 4×4 at most here
    let n = m.len();
    if n == 1 {
        return BigInt::from(m[0][0]);
    }
    let mut s = BigInt::zero();
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect()).collect();
        let t = BigInt::from(m[0][c]) * int_det(&minor);
        if c % 2 == 0 {
            s += t
        } else {
            s -= t
        }
    }
    s
}

fn random_full_rank(rng: &mut impl Rng) -> (Vec<Vec<i64>>, BigInt) {
    loop {
        let m: Vec<Vec<i64>> = (0..4).map(|_| (0..4).map(|_| rng.gen_range(-4..=4)).collect()).collect();
        let d = int_det(&m);
        if !d.is_zero() {
            return (m, d.abs());
        }
    }
}

fn lattice_of_rows(alg: &Alg, m: &[Vec<i64>]) -> Lattice<BigInt> {
    let gens: Vec<Quat<BigInt>> = m.iter().map(|row| alg.from_ints([row[0], row[1], row[2], row[3]])).collect();
    alg.lattice(&gens).unwrap()
}

/// `χ` on three random lattices of a random definite algebra: compared with
/// a cofactor determinant, checked for the cocycle identity, and checked
/// against `𝔡_T(X2) = χ(X1,X2)^2 𝔡_T(X1)`.
pub fn check_chi(rng: &mut impl Rng) -> Result<(), String> {
    let a = -rng.gen_range(1..=9i64);
    let b = -rng.gen_range(1..=9i64);
    let alg = QuaternionAlgebra::new(Integers, BigInt::from(a), BigInt::from(b)).unwrap();
    let z = &alg.ring;
    let (m1, d1) = random_full_rank(rng);
    let (m2, d2) = random_full_rank(rng);
    let (m3, _) = random_full_rank(rng);
    let (x1, x2, x3) = (lattice_of_rows(&alg, &m1), lattice_of_rows(&alg, &m2), lattice_of_rows(&alg, &m3));
    let c12 = alg.chi(&x1, &x2).map_err(|e| e.to_string())?;
    let c23 = alg.chi(&x2, &x3).map_err(|e| e.to_string())?;
    let c13 = alg.chi(&x1, &x3).map_err(|e| e.to_string())?;
    if c12 != z.frac(&d2, &d1) {
        return Err(format!("chi = {c12:?}, cofactor determinants give {d2}/{d1}"));
    }
    if z.f_mul(&c12, &c23) != c13 {
        return Err(format!("cocycle fails: {c12:?}·{c23:?} ≠ {c13:?}"));
    }
    let want = z.f_mul(&z.f_mul(&c12, &c12), &alg.disc_t(&x1));
    if alg.disc_t(&x2) != want {
        return Err(format!("disc_T(X2) = {:?}, expected {want:?}", alg.disc_t(&x2)));
    }
    Ok(())
}

/// A random order `Z + Zx + Zy + M·O` closed under products, inside the
/// Hurwitz order `O`.
pub struct Suborder {
    pub m: i64,
    pub order: Lattice<BigInt>,
    /// `[O : R]` by counting residues.
    pub index: u64,
    /// `|(O/MO)^×| / |(R/MO)^×|`, by counting residues of coprime norm.
    pub unit_index: Rational,
}

fn hurwitz_combo(alg: &Alg, basis: &[Quat<BigInt>], c: &[i64]) -> Quat<BigInt> {
    let mut x = alg.zero();
    for (b, &k) in basis.iter().zip(c) {
        x = alg.add(&x, &alg.scale(b, &Integers.f_i64(k)));
    }
    x
}

pub fn random_hurwitz_suborder(rng: &mut impl Rng) -> Suborder {
    let (alg, hur) = named::hurwitz();
    let basis = alg.basis(&hur);
    let m = [2i64, 3, 4][rng.gen_range(0..3)];
    let mk = Integers.f_i64(m);
    let mut gens = vec![alg.one()];
    for _ in 0..2 {
        let c: Vec<i64> = (0..4).map(|_| rng.gen_range(-3..=3)).collect();
        gens.push(hurwitz_combo(&alg, &basis, &c));
    }
    gens.extend(basis.iter().map(|b| alg.scale(b, &mk)));
    let mut l = alg.lattice(&gens).unwrap();
    loop {
        let b = alg.basis(&l);
        let mut g = b.clone();
        for u in &b {
            for v in &b {
                g.push(alg.mul(u, v));
            }
        }
        let next = alg.lattice(&g).unwrap();
        if next == l {
            break;
        }
        l = next;
    }
    // residues of O/MO as combinations with coefficients in [0, M)
    let mu = m as u64;
    let (mut in_r, mut units_o, mut units_r) = (0u64, 0u64, 0u64);
    for idx in 0..mu.pow(4) {
        let c: Vec<i64> = (0..4).map(|k| ((idx / mu.pow(k)) % mu) as i64).collect();
        let x = hurwitz_combo(&alg, &basis, &c);
        let n = alg.nrd(&x).num.to_i64().unwrap();
        let unit = num_integer::gcd(n, m) == 1;
        let member = alg.contains(&l, &x);
        units_o += unit as u64;
        in_r += member as u64;
        units_r += (unit && member) as u64;
    }
    Suborder {
        m,
        order: l,
        index: mu.pow(4) / in_r,
        unit_index: Rational::new(BigInt::from(units_o), BigInt::from(units_r)),
    }
}

/// Draws suborders until one has index at most `max_index`.
pub fn random_small_suborder(rng: &mut impl Rng, max_index: u64) -> Suborder {
    loop {
        let s = random_hurwitz_suborder(rng);
        if s.index <= max_index {
            return s;
        }
    }
}

/// `Mass(R)/Mass(O) = [Ô^× : R̂^×]` with the unit index counted directly.
pub fn check_unit_index(s: &Suborder) -> Result<(), String> {
    let (alg, hur) = named::hurwitz();
    let ctx = FieldContext::rationals();
    let chi = alg.chi(&hur, &s.order).map_err(|e| e.to_string())?;
    if chi != Integers.f_int(BigInt::from(s.index)) {
        return Err(format!("chi(O, R) = {chi:?} but the residue count gives index {}", s.index));
    }
    let pr = explicit_profiles(&ctx, &alg, &s.order).map_err(|e| e.to_string())?;
    let ph = explicit_profiles(&ctx, &alg, &hur).map_err(|e| e.to_string())?;
    let ratio = compare_orders(&ctx, &bp(2), &pr, &ph).map_err(|e| e.to_string())?;
    if ratio != s.unit_index {
        return Err(format!("M = {}, index {}: mass ratio {ratio}, unit count {}", s.m, s.index, s.unit_index));
    }
    Ok(())
}

/// `𝔡_T` of an order is the square of an ideal.
pub fn check_disc_square(alg: &Alg, order: &Lattice<BigInt>) -> Result<(), String> {
    let d = alg.disc_t(order);
    if !d.den.is_one() {
        return Err(format!("disc_T = {d:?} is not integral"));
    }
    let s = d.num.sqrt();
    if &s * &s != d.num {
        return Err(format!("disc_T = {} is not a square", d.num));
    }
    let red = alg.reduced_disc(order).map_err(|e| e.to_string())?;
    if red.num != s {
        return Err(format!("reduced disc {:?} vs square root {s}", red));
    }
    Ok(())
}

/// `λ` of the maximal order `M_m(O_D)`, `m = n/d`, from its residue data:
/// `𝔡_T = π^{m²d(d-1)}` so `|𝔡| = q^{m²d(d-1)/2}`, `|κ| = q^{dm²}` and
/// `|κ^×| = |GL_m(F_{q^d})|`.
pub fn lambda_from_residue_data(q: u64, d: u32, n: u32) -> Rational {
    let m = n / d;
    let qb = BigInt::from(q);
    let qd = qb.pow(d);
    let mut gl = BigInt::one();
    for i in 0..m {
        gl *= qd.pow(m) - qd.pow(i);
    }
    let mut v = Rational::from(qb.pow(m * m * d * (d - 1) / 2)) * Rational::new(qb.pow(d * m * m), gl);
    for i in 1..=n {
        v = v * (Rational::one() - Rational::new(BigInt::one(), qb.pow(i)));
    }
    v
}

/// Every `(q, d, n)` with `q ∈ {2,3,4,5,7,9}`, `n ≤ 6`, `d | n`: the engine's
/// `λ` of the maximal profile, the product formula, and the residue data
/// agree. Returns the number of cases.
pub fn check_lambda_grid() -> Result<usize, String> {
    let mut cases = 0;
    for q in [2u64, 3, 4, 5, 7, 9] {
        for n in 1..=6u32 {
            for d in (1..=n).filter(|d| n % d == 0) {
                let prof = LocalOrderProfile::maximal(Place::Named("v".into()), BigInt::from(q), d, n)
                    .map_err(|e| e.to_string())?;
                let a = prof.lambda(n).map_err(|e| e.to_string())?;
                let b = lambda_max(&BigInt::from(q), d, n).map_err(|e| e.to_string())?;
                let c = lambda_from_residue_data(q, d, n);
                if a != b || b != c {
                    return Err(format!("q={q} d={d} n={n}: {a} / {b} / {c}"));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

/// `Π_v (a,b)_v = 1` over `∞` and the primes dividing `2ab`.
pub fn check_reciprocity_q(a: i64, b: i64) -> Result<(), String> {
    let (ab, bb) = (BigInt::from(a), BigInt::from(b));
    let mut places = vec![Place::Infinity];
    places.extend(prime_divisors(2 * (a * b).unsigned_abs()).into_iter().map(Place::Prime));
    let mut prod = 1i8;
    let mut ramified = 0;
    for p in &places {
        let s = massforge::quaternion::hilbert::hilbert_rational(&ab, &bb, p).map_err(|e| e.to_string())?;
        prod *= s;
        ramified += (s == -1) as u32;
    }
    if prod != 1 || ramified % 2 != 0 {
        return Err(format!("({a},{b}): product {prod} over {} places", places.len()));
    }
    Ok(())
}

/// The same over `F_q(t)` for odd prime `q`, with `a`, `b` random polynomials.
pub fn check_reciprocity_fq(q: u64, ca: &[i64], cb: &[i64]) -> Result<(), String> {
    let ring = FpPolyRing::new(q).map_err(|e| e.to_string())?;
    let (a, b) = (ring.from_coeffs(ca), ring.from_coeffs(cb));
    if ring.is_zero(&a) || ring.is_zero(&b) {
        return Ok(());
    }
    let mut places = vec![Place::Infinity];
    for f in [&a, &b] {
        for (p, _) in ring.prime_factors(f).map_err(|e| e.to_string())? {
            let pl = ring.place_of(&p);
            if !places.contains(&pl) {
                places.push(pl);
            }
        }
    }
    let (fa, fb): (Frac<_>, Frac<_>) = (ring.f_int(a), ring.f_int(b));
    let mut prod = 1i8;
    for p in &places {
        prod *= ring.hilbert_symbol(&fa, &fb, p).map_err(|e| e.to_string())?;
    }
    if prod != 1 {
        return Err(format!("F_{q}(t), {ca:?}, {cb:?}: product {prod}"));
    }
    Ok(())
}

/// `[Z_2^× : nrd(R_2^×)]` from the reduced norms mod 8 of `R/8R`, given the
/// integer norm form coefficients of a basis. Valid when the norms reached
/// contain `1 + 8Z_2`, which holds for every order containing `Z + 2O`.
pub fn norm_index_mod_8(alg: &Alg, basis: &[Quat<BigInt>]) -> u64 {
    let mut seen = std::collections::BTreeSet::new();
    for idx in 0..8u64.pow(4) {
        let c: Vec<i64> = (0..4).map(|k| ((idx / 8u64.pow(k)) % 8) as i64).collect();
        let n = alg.nrd(&hurwitz_combo(alg, basis, &c));
        let n = n.num.to_i64().unwrap().rem_euclid(8);
        if n % 2 == 1 {
            seen.insert(n);
        }
    }
    4 / seen.len() as u64
}
