//! Mass formulas: `Mass(D,R)` from local factors, the closed form for
//! maximal orders, the comparison constants, Körner's form for quaternions,
//! type masses and un-normalized masses.

mod algebra_spec;
mod report;

pub use algebra_spec::AlgebraSpec;
pub use report::{MassReport, TraceEntry, TYPE_MASS_WARNING};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::field::{FieldContext, Place};
use crate::local::{lambda_max, local_unit_index, profile_of_order, LocalOrderProfile};
use crate::quaternion::{Lattice, QuaternionAlgebra};
use crate::ring::ArithRing;

fn pow_int(base: u32, e: i64) -> Rational {
    Rational::from(BigInt::from(base)).pow(e as i32).expect("nonzero base")
}

/// `|S|` for a number field counts each real place; `|∞|` is the number of
/// real places.
fn s_minus_one(ctx: &FieldContext) -> i64 {
    ctx.s_size() as i64 - 1
}

/// Local data at every non-Archimedean place that can contribute: the
/// finite places of `S` and of `S_D`, and every place with a supplied
/// profile. Absent places are maximal; places of `S` always carry the
/// maximal order of `D_v`.
pub fn local_factors(
    ctx: &FieldContext,
    alg: &AlgebraSpec,
    profiles: &[LocalOrderProfile],
) -> Result<BTreeMap<Place, LocalOrderProfile>> {
    let n = alg.degree();
    let mut out = BTreeMap::new();
    for p in profiles {
        p.validate(n)?;
        if ctx.is_archimedean(&p.place) {
            return Err(Error::Schema("profiles live at non-Archimedean places".into()));
        }
        let q = ctx.residue_size(&p.place)?;
        if q != p.q {
            return Err(Error::Schema(format!("profile at {} has q = {} but the residue field has {q} elements", p.place, p.q)));
        }
        let d = alg.local_index(&p.place);
        if d != p.d {
            return Err(Error::Schema(format!("profile at {} has d = {} but the algebra has local index {d}", p.place, p.d)));
        }
        if ctx.in_s(&p.place) && !p.is_maximal(n) {
            return Err(Error::Domain(format!(
                "{} lies in S, where R_v is by definition the maximal order of D_v",
                p.place
            )));
        }
        if out.insert(p.place.clone(), p.clone()).is_some() {
            return Err(Error::Schema(format!("two profiles at {}", p.place)));
        }
    }
    let implicit: Vec<Place> =
        alg.ramified().into_iter().chain(ctx.finite_s()).filter(|p| !ctx.is_archimedean(p)).collect();
    for p in implicit {
        if !out.contains_key(&p) {
            let q = ctx.residue_size(&p)?;
            out.insert(p.clone(), LocalOrderProfile::maximal(p.clone(), q, alg.local_index(&p), n)?);
        }
    }
    Ok(out)
}

/// `c(S,U)`: `n^{-(|S|-1)}·N` for a function field and `2^{-(|S|-|∞|-1)}·N`
/// for a totally real field, with `N = [Â^× : Nr(U)]`.
pub fn c_factor(ctx: &FieldContext, n: u32, norm_index_global: &BigInt) -> Rational {
    let base = if ctx.is_function_field() {
        pow_int(n, -s_minus_one(ctx))
    } else {
        pow_int(2, -(ctx.s_size() as i64 - ctx.archimedean_count() as i64 - 1))
    };
    base * Rational::from(norm_index_global.clone())
}

/// `c^ad = n^{-(|S|-1)}`.
pub fn c_ad(ctx: &FieldContext, n: u32) -> Rational {
    pow_int(n, -s_minus_one(ctx))
}

/// `c_1`: 1 for a function field, `2^{-[K:Q]}` for a totally real field.
pub fn c_one(ctx: &FieldContext) -> Rational {
    if ctx.is_function_field() {
        Rational::one()
    } else {
        pow_int(2, -(ctx.archimedean_count() as i64))
    }
}

fn zeta_product(ctx: &FieldContext, n: u32, trace: &mut Vec<TraceEntry>) -> Result<Rational> {
    let mut prod = Rational::one();
    for i in 1..n {
        let z = ctx.zeta_abs(i)?;
        trace.push(TraceEntry::new(format!("|zeta(-{i})|"), &z));
        prod = prod * z;
    }
    Ok(prod)
}

fn prepare(ctx: &FieldContext, alg: &AlgebraSpec) -> Result<()> {
    alg.validate(ctx)?;
    alg.check_definite(ctx)
}

/// `Mass(D,R) = h_A · n^{-(|S|-1)} · Π|ζ_K(-i)| · Π_v λ_v(R_v)` together with
/// `Mass(G^ad,U^ad)`, `Mass(G_1,U_1)`, the constants and the type mass.
pub fn mass_report(ctx: &FieldContext, alg: &AlgebraSpec, profiles: &[LocalOrderProfile]) -> Result<MassReport> {
    prepare(ctx, alg)?;
    let n = alg.degree();
    let factors = local_factors(ctx, alg, profiles)?;
    let mut trace = Vec::new();
    let h = Rational::from(ctx.class_number());
    trace.push(TraceEntry::new("h_A", &h));
    let cad = c_ad(ctx, n);
    trace.push(TraceEntry::new("n^-(|S|-1)", &cad));
    let mut mass = &h * &cad * zeta_product(ctx, n, &mut trace)?;
    let mut norm_index = BigInt::one();
    for (p, prof) in &factors {
        let l = prof.lambda(n)?;
        trace.push(TraceEntry::new(format!("lambda_{p}"), &l));
        mass = mass * l;
        if !ctx.in_s(p) {
            norm_index *= &prof.norm_index;
        }
    }
    let c = c_factor(ctx, n, &norm_index);
    trace.push(TraceEntry::new("c(S,U)", &c));
    let mass_gad = mass.checked_div(&h)?;
    let mass_g1 = mass_gad.checked_div(&c)?;
    let mut report = MassReport {
        mass_dr: mass,
        mass_gad,
        mass_g1,
        c,
        c_ad: cad,
        norm_index_global: norm_index,
        type_mass: None,
        type_mass_multiplied: None,
        normalizer_index_global: None,
        warning: None,
        unnormalized: None,
        korner: None,
        trace,
    };
    if let Ok(idx) = normalizer_index(ctx, &factors) {
        let idx_r = Rational::from(idx.clone());
        report.type_mass = Some(report.mass_gad.checked_div(&idx_r)?);
        report.type_mass_multiplied = Some(&report.mass_gad * &idx_r);
        report.normalizer_index_global = Some(idx);
        report.warning = Some(TYPE_MASS_WARNING.to_string());
    }
    report.unnormalized = unnormalized_mass(&report, ctx).ok();
    if n == 2 {
        report.korner = mass_korner(ctx, alg, profiles).ok();
    }
    report.check()?;
    Ok(report)
}

/// `Π_{v∉S} [N(R_v) : K_v^× R_v^×]`.
fn normalizer_index(ctx: &FieldContext, factors: &BTreeMap<Place, LocalOrderProfile>) -> Result<BigInt> {
    let mut idx = BigInt::one();
    for (p, prof) in factors {
        if ctx.in_s(p) {
            continue;
        }
        match &prof.normalizer_index {
            Some(x) => idx *= x,
            None => return Err(Error::MissingData(format!("normalizer index at {p}"))),
        }
    }
    Ok(idx)
}

/// The closed form for a maximal order:
/// `Mass(G^ad) = c^ad · Π|ζ_K(-i)| · Π_{v∈S_D finite} λ_v` and
/// `Mass(G_1) = c_1 · Π|ζ_K(-i)| · Π λ_v`, with `Mass(D) = h_A · Mass(G^ad)`.
pub fn mass_maximal(ctx: &FieldContext, alg: &AlgebraSpec) -> Result<MassReport> {
    prepare(ctx, alg)?;
    let n = alg.degree();
    let mut trace = Vec::new();
    let zeta = zeta_product(ctx, n, &mut trace)?;
    let mut lam = Rational::one();
    for p in alg.ramified() {
        if ctx.is_archimedean(&p) {
            continue;
        }
        let l = lambda_max(&ctx.residue_size(&p)?, alg.local_index(&p), n)?;
        trace.push(TraceEntry::new(format!("lambda_max_{p}"), &l));
        lam = lam * l;
    }
    let cad = c_ad(ctx, n);
    let c1 = c_one(ctx);
    trace.push(TraceEntry::new("c^ad", &cad));
    trace.push(TraceEntry::new("c_1", &c1));
    let h = Rational::from(ctx.class_number());
    trace.push(TraceEntry::new("h_A", &h));
    let mass_gad = &cad * &zeta * &lam;
    let mass_g1 = &c1 * &zeta * &lam;
    let c = mass_gad.checked_div(&mass_g1)?;
    let expected = c_factor(ctx, n, &BigInt::one());
    if c != expected {
        return Err(Error::Mismatch(format!("c^ad/c_1 = {c} differs from c(S,U) = {expected}")));
    }
    // maximal orders: normalizer index d_v at each ramified place outside S
    let mut idx = BigInt::one();
    for p in alg.ramified() {
        if !ctx.is_archimedean(&p) && !ctx.in_s(&p) {
            idx *= BigInt::from(alg.local_index(&p));
        }
    }
    let idx_r = Rational::from(idx.clone());
    let mut report = MassReport {
        mass_dr: &h * &mass_gad,
        type_mass: Some(mass_gad.checked_div(&idx_r)?),
        type_mass_multiplied: Some(&mass_gad * &idx_r),
        normalizer_index_global: Some(idx),
        warning: Some(TYPE_MASS_WARNING.to_string()),
        mass_gad,
        mass_g1,
        c,
        c_ad: cad,
        norm_index_global: BigInt::one(),
        unnormalized: None,
        korner: None,
        trace,
    };
    report.unnormalized = unnormalized_mass(&report, ctx).ok();
    report.check()?;
    Ok(report)
}

/// Körner's form for quaternion orders:
/// `h_A|ζ_K(-1)|/2^{|S|-1} · Π_{v∈S_R} |𝔡(R_v)|(1-q_v^{-2})/(1-e(R_v)q_v^{-1})`.
pub fn mass_korner(ctx: &FieldContext, alg: &AlgebraSpec, profiles: &[LocalOrderProfile]) -> Result<Rational> {
    prepare(ctx, alg)?;
    if alg.degree() != 2 {
        return Err(Error::Domain("the Eichler-symbol form applies to quaternion algebras only".into()));
    }
    let factors = local_factors(ctx, alg, profiles)?;
    let mut mass = Rational::from(ctx.class_number()) * ctx.zeta_abs(1)? * pow_int(2, -s_minus_one(ctx));
    for (p, prof) in &factors {
        let maximal_split = prof.d == 1 && prof.is_maximal(2);
        if maximal_split {
            continue;
        }
        let e = eichler_symbol_of(prof)
            .ok_or_else(|| Error::Unsupported(format!("Eichler symbol undefined at {p}")))?;
        let q = Rational::from(prof.q.clone());
        let num = Rational::from(prof.disc_abs.clone()) * (Rational::one() - q.pow(-2)?);
        let den = Rational::one() - Rational::from(e as i64) * q.pow(-1)?;
        mass = mass * num.checked_div(&den)?;
    }
    Ok(mass)
}

/// The Eichler symbol of a profile, read from the stored value or from the
/// shape of `κ` (`|κ| = q, q^2` with the matching unit count).
pub fn eichler_symbol_of(p: &LocalOrderProfile) -> Option<i8> {
    if p.eichler_symbol.is_some() {
        return p.eichler_symbol;
    }
    let q = &p.q;
    let q2 = q * q;
    let one = BigInt::one();
    if p.kappa_size == *q && p.kappa_units == q - &one {
        Some(0)
    } else if p.kappa_size == q2 && p.kappa_units == (q - &one) * (q - &one) {
        Some(1)
    } else if p.kappa_size == q2 && p.kappa_units == &q2 - &one {
        Some(-1)
    } else {
        None
    }
}

/// `Mass(D,R)/Mass(D,R')`, checked against the product of local unit
/// indices `[R̃_v^× : R_v^×]/[R̃_v^× : R'_v^×]`.
pub fn compare_orders(
    ctx: &FieldContext,
    alg: &AlgebraSpec,
    r: &[LocalOrderProfile],
    r_prime: &[LocalOrderProfile],
) -> Result<Rational> {
    let a = mass_report(ctx, alg, r)?;
    let b = mass_report(ctx, alg, r_prime)?;
    let ratio = a.mass_dr.checked_div(&b.mass_dr)?;
    let n = alg.degree();
    let fa = local_factors(ctx, alg, r)?;
    let fb = local_factors(ctx, alg, r_prime)?;
    let mut index = Rational::one();
    for p in fa.keys().chain(fb.keys()).collect::<std::collections::BTreeSet<_>>() {
        let max = LocalOrderProfile::maximal(p.clone(), ctx.residue_size(p)?, alg.local_index(p), n)?;
        let ia = fa.get(p).map_or(Ok(Rational::one()), |x| local_unit_index(x, &max))?;
        let ib = fb.get(p).map_or(Ok(Rational::one()), |x| local_unit_index(x, &max))?;
        index = index * ia.checked_div(&ib)?;
    }
    if index != ratio {
        return Err(Error::Mismatch(format!("mass ratio {ratio} differs from the local unit index product {index}")));
    }
    Ok(ratio)
}

/// `Mass^u(D,R) = Mass(D,R)/|A^×|`, defined when `A^×` is finite.
pub fn unnormalized_mass(report: &MassReport, ctx: &FieldContext) -> Result<Rational> {
    let u = ctx.unit_group_order()?;
    report.mass_dr.checked_div(&Rational::from(u))
}

/// Local profiles of a basis-given order at every prime of its reduced
/// discriminant outside `S`.
pub fn explicit_profiles<R: ArithRing>(
    ctx: &FieldContext,
    alg: &QuaternionAlgebra<R>,
    order: &Lattice<R::Elem>,
) -> Result<Vec<LocalOrderProfile>> {
    let check = alg.verify_order(order);
    if !check.is_order {
        return Err(Error::Domain(format!(
            "the lattice is not an order{}",
            check.witness.map(|w| format!(": {w}")).unwrap_or_default()
        )));
    }
    let ring = &alg.ring;
    let disc = alg.reduced_disc(order)?;
    let primes = ring.prime_factors(&disc.num)?;
    let jobs: Vec<R::Elem> = primes.into_iter().map(|(p, _)| p).filter(|p| !ctx.in_s(&ring.place_of(p))).collect();
    let out = crate::par::map(jobs, |p| profile_of_order(alg, order, &p));
    let mut profiles = out.into_iter().collect::<Result<Vec<_>>>()?;
    profiles.retain(|p| !(p.d == 1 && p.is_maximal(2)));
    Ok(profiles)
}
