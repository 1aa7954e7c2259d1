//! Parameter sweeps: one row of masses per member of a family, with the
//! closed form and, where feasible, the enumerated mass alongside.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{is_prime_u64, Rational};
use crate::field::{prime_power, FieldContext, Place};
use crate::mass::{explicit_profiles, mass_korner, mass_maximal, mass_report, AlgebraSpec};
use crate::oracle::{self, BfsOptions, Stop};
use crate::par::{self, Strategy};
use crate::quaternion::named;

pub const FAMILIES: [&str; 3] = ["maximal-Bp-infty", "eichler", "fq-maximal"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub family: String,
    pub param: u64,
    pub mass_dr: Rational,
    pub mass_gad: Rational,
    pub mass_g1: Rational,
    pub c: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type_mass: Option<Rational>,
    /// The family's closed form, evaluated independently.
    pub closed_form: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub korner: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass_enumerated: Option<Rational>,
}

#[derive(Clone, Debug)]
pub struct TableOptions {
    /// The ramified prime for the Eichler family.
    pub p: u64,
    /// Degree for the function-field family.
    pub degree: u32,
    /// Enumerate classes only while the closed-form mass stays below this.
    pub enumerate_below: Rational,
    pub strategy: Strategy,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            p: 2,
            degree: 2,
            enumerate_below: Rational::from(10),
            strategy: Strategy::default_for_build(),
        }
    }
}

/// Parses `a..b` (inclusive) into bounds.
pub fn parse_range(s: &str) -> Result<(u64, u64)> {
    let (a, b) = s.split_once("..").ok_or_else(|| Error::Schema(format!("range {s:?} is not a..b")))?;
    let lo: u64 = a.trim().parse().map_err(|_| Error::Schema(format!("bad range start {a:?}")))?;
    let hi: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| Error::Schema(format!("bad range end {b:?}")))?;
    if lo > hi {
        return Err(Error::Schema(format!("empty range {s}")));
    }
    Ok((lo, hi))
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn bp_row(p: u64, opts: &TableOptions) -> Result<TableRow> {
    let ctx = FieldContext::rationals();
    let spec = AlgebraSpec::quaternion(&[Place::Infinity, Place::Prime(p)])?;
    let rep = mass_report(&ctx, &spec, &[])?;
    let closed = mass_maximal(&ctx, &spec)?.mass_dr;
    let expected = frac(p as i64 - 1, 12);
    let (alg, order) = named::maximal_b_p_infinity(p)?;
    let explicit = mass_report(&ctx, &spec, &explicit_profiles(&ctx, &alg, &order)?)?;
    if explicit.mass_dr != rep.mass_dr || closed != expected || rep.mass_dr != expected {
        return Err(Error::Mismatch(format!("B_{p}: masses {} / {} / {closed} disagree", rep.mass_dr, explicit.mass_dr)));
    }
    let mass_enumerated = if expected < opts.enumerate_below {
        let b = BfsOptions { stop: Stop::AtMass(expected.clone()), strategy: Strategy::Sequential, ..BfsOptions::default() };
        Some(oracle::mass_by_enumeration(&alg, &order, &b)?)
    } else {
        None
    };
    Ok(TableRow {
        family: FAMILIES[0].into(),
        param: p,
        mass_dr: rep.mass_dr,
        mass_gad: rep.mass_gad,
        mass_g1: rep.mass_g1,
        c: rep.c,
        type_mass: rep.type_mass,
        closed_form: closed,
        korner: rep.korner,
        mass_enumerated,
    })
}

fn eichler_row(q: u64, opts: &TableOptions) -> Result<TableRow> {
    let p = opts.p;
    let ctx = FieldContext::rationals();
    let (alg, max) = named::maximal_b_p_infinity(p)?;
    let order = named::eichler_order(&alg, &max, &BigInt::from(q))?;
    let spec = AlgebraSpec::from_quaternion(&alg)?;
    let profiles = explicit_profiles(&ctx, &alg, &order)?;
    let rep = mass_report(&ctx, &spec, &profiles)?;
    let closed = frac((p as i64 - 1) * (q as i64 + 1), 12);
    if rep.mass_dr != closed {
        return Err(Error::Mismatch(format!("Eichler level {q} in B_{p}: {} vs {closed}", rep.mass_dr)));
    }
    let korner = Some(mass_korner(&ctx, &spec, &profiles)?);
    let mass_enumerated = if closed < opts.enumerate_below {
        let b = BfsOptions { stop: Stop::AtMass(closed.clone()), strategy: Strategy::Sequential, ..BfsOptions::default() };
        Some(oracle::mass_by_enumeration(&alg, &order, &b)?)
    } else {
        None
    };
    Ok(TableRow {
        family: FAMILIES[1].into(),
        param: q,
        mass_dr: rep.mass_dr,
        mass_gad: rep.mass_gad,
        mass_g1: rep.mass_g1,
        c: rep.c,
        type_mass: rep.type_mass,
        closed_form: closed,
        korner,
        mass_enumerated,
    })
}

fn fq_row(q: u64, opts: &TableOptions) -> Result<TableRow> {
    let n = opts.degree;
    let ctx = FieldContext::rational_function_field(q)?;
    let t = ctx.place("t")?;
    let spec = AlgebraSpec::new(n, [(Place::Infinity, frac(1, n as i64)), (t, frac(n as i64 - 1, n as i64))])?;
    spec.validate(&ctx)?;
    let rep = mass_report(&ctx, &spec, &[])?;
    let closed = mass_maximal(&ctx, &spec)?.mass_dr;
    if rep.mass_dr != closed {
        return Err(Error::Mismatch(format!("F_{q}(t), degree {n}: {} vs {closed}", rep.mass_dr)));
    }
    Ok(TableRow {
        family: FAMILIES[2].into(),
        param: q,
        mass_dr: rep.mass_dr,
        mass_gad: rep.mass_gad,
        mass_g1: rep.mass_g1,
        c: rep.c,
        type_mass: rep.type_mass,
        closed_form: closed,
        korner: rep.korner,
        mass_enumerated: None,
    })
}

/// Rows for every admissible parameter in `lo..=hi`, in increasing order.
pub fn table(family: &str, lo: u64, hi: u64, opts: &TableOptions) -> Result<Vec<TableRow>> {
    let params: Vec<u64> = match family {
        "maximal-Bp-infty" => (lo..=hi).filter(|&p| is_prime_u64(p)).collect(),
        "eichler" => {
            if !is_prime_u64(opts.p) {
                return Err(Error::Schema(format!("p = {} is not prime", opts.p)));
            }
            (lo..=hi).filter(|&q| is_prime_u64(q) && q != opts.p).collect()
        }
        "fq-maximal" => (lo..=hi).filter(|&q| prime_power(q).is_ok()).collect(),
        other => {
            return Err(Error::Schema(format!("unknown family {other:?}; expected one of {}", FAMILIES.join(", "))))
        }
    };
    let rows = par::map_with(opts.strategy, params, |x| match family {
        "maximal-Bp-infty" => bp_row(x, opts),
        "eichler" => eichler_row(x, opts),
        _ => fq_row(x, opts),
    });
    rows.into_iter().collect()
}

fn opt(r: &Option<Rational>) -> String {
    r.as_ref().map_or_else(|| "-".into(), |x| x.to_string())
}

pub fn to_tsv(rows: &[TableRow]) -> String {
    let mut out = String::from("family\tparam\tmass_dr\tmass_gad\tmass_g1\tc\ttype_mass\tclosed_form\tkorner\tmass_enumerated\n");
    for r in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.family,
            r.param,
            r.mass_dr,
            r.mass_gad,
            r.mass_g1,
            r.c,
            opt(&r.type_mass),
            r.closed_form,
            opt(&r.korner),
            opt(&r.mass_enumerated)
        ));
    }
    out
}
