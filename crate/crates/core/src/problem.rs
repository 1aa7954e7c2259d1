//! Problem files: a field, an algebra and an order as JSON, resolved into
//! local profiles for the mass engine and, when the algebra is given as
//! `(a, b)`, an explicit order for the local and enumeration tools.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::field::{FieldContext, FieldJson, FieldKind};
use crate::local::{profile_of_order, LocalOrderProfile};
use crate::mass::{explicit_profiles, mass_report, AlgebraSpec, MassReport};
use crate::oracle::{self, BfsOptions, ClassSummary, Stop};
use crate::par::Strategy;
use crate::quaternion::{named, Lattice, QuaternionAlgebra};
use crate::ring::{ArithRing, FpPolyRing, FracField, Integers};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub field: FieldJson,
    pub algebra: AlgebraJson,
    pub order: OrderJson,
    #[serde(default)]
    pub options: ProblemOptions,
}

/// Either a quaternion presentation `(a, b)` or a degree with local
/// invariants keyed by place label.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<BTreeMap<String, Rational>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OrderJson {
    /// Rows are basis vectors in coordinates of `1, i, j, k`.
    Basis { rows: Vec<Vec<String>> },
    Maximal,
    Eichler { level: String },
    LocalData { profiles: Vec<LocalOrderProfile> },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemOptions {
    #[serde(default)]
    pub verify: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neighbor_prime: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    /// Local normalizer indices for places where they cannot be derived.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub normalizer_index: BTreeMap<String, u64>,
}

/// An explicit quaternion order over `Z` or `F_p[t]`.
#[derive(Clone, Debug)]
pub enum Explicit {
    OverZ { alg: QuaternionAlgebra<Integers>, order: Lattice<BigInt> },
    OverPoly { alg: QuaternionAlgebra<FpPolyRing>, order: Lattice<crate::ring::FpPoly> },
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub ctx: FieldContext,
    pub algebra: AlgebraSpec,
    pub explicit: Option<Explicit>,
    pub profiles: Vec<LocalOrderProfile>,
    pub options: ProblemOptions,
}

/// Output of `local`: the profile plus the derived `λ_v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReport {
    pub profile: LocalOrderProfile,
    pub disc_valuation: u32,
    pub lambda: Rational,
    pub maximal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub classes: Vec<ClassSummary>,
    pub mass_enumerated: Rational,
    pub mass_formula: Rational,
    #[serde(rename = "match")]
    pub matches: bool,
    pub neighbor_prime: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_number: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_mass_enumerated: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_mass_formula: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalizeReport {
    pub rows: Vec<Vec<String>>,
    pub reduced_disc: String,
    pub was_maximal: bool,
}

impl ProblemSpec {
    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))
    }
}

fn parse_algebra<R: ArithRing>(ring: R, a: &str, b: &str) -> Result<QuaternionAlgebra<R>> {
    let pa = ring.f_parse(a).map_err(|e| Error::Schema(format!("algebra parameter a: {e}")))?;
    let pb = ring.f_parse(b).map_err(|e| Error::Schema(format!("algebra parameter b: {e}")))?;
    QuaternionAlgebra::from_fracs(ring, &pa, &pb)
}

fn build_order<R: ArithRing>(
    alg: &QuaternionAlgebra<R>,
    order: &OrderJson,
) -> Result<Option<Lattice<R::Elem>>> {
    let ring = &alg.ring;
    match order {
        OrderJson::Basis { rows } => {
            if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
                return Err(Error::Schema("a basis is a 4×4 matrix of strings".into()));
            }
            let mut gens = Vec::with_capacity(4);
            for r in rows {
                let v: Vec<_> = r.iter().map(|s| ring.f_parse(s)).collect::<Result<_>>()?;
                gens.push([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]);
            }
            let l = alg.lattice(&gens).map_err(|e| Error::Schema(format!("basis: {e}")))?;
            let check = alg.verify_order(&l);
            if !check.is_order {
                return Err(Error::Domain(format!("the basis is not an order: {}", check.witness.unwrap_or_default())));
            }
            Ok(Some(l))
        }
        OrderJson::Maximal => Ok(Some(named::maximal_order(alg)?)),
        OrderJson::Eichler { level } => {
            let lv = ring.f_parse(level)?;
            if !ring.f_is_integral(&lv) || ring.is_zero(&lv.num) {
                return Err(Error::Schema(format!("Eichler level {level} must be a nonzero integral element")));
            }
            let max = named::maximal_order(alg)?;
            Ok(Some(named::eichler_order(alg, &max, &lv.num)?))
        }
        OrderJson::LocalData { .. } => Ok(None),
    }
}

impl Problem {
    pub fn from_spec(spec: &ProblemSpec) -> Result<Self> {
        let ctx = FieldContext::from_json(&spec.field)?;
        let aj = &spec.algebra;
        let (algebra, explicit) = match (&aj.a, &aj.b) {
            (Some(a), Some(b)) => {
                if aj.invariants.is_some() || aj.degree.is_some_and(|n| n != 2) {
                    return Err(Error::Schema("(a, b) describes a quaternion algebra; drop degree/invariants".into()));
                }
                match ctx.kind() {
                    FieldKind::Rationals => {
                        let alg = parse_algebra(ctx.integers()?, a, b)?;
                        let spec_alg = AlgebraSpec::from_quaternion(&alg)?;
                        let ex = build_order(&alg, &spec.order)?.map(|order| Explicit::OverZ { alg, order });
                        (spec_alg, ex)
                    }
                    FieldKind::RationalFunctionField { q } => {
                        if q % 2 == 0 {
                            return Err(Error::Unsupported(
                                "(a, b) presentations need odd characteristic; give invariants instead".into(),
                            ));
                        }
                        let alg = parse_algebra(ctx.poly_ring()?, a, b)?;
                        let spec_alg = AlgebraSpec::from_quaternion(&alg)?;
                        let ex = build_order(&alg, &spec.order)?.map(|order| Explicit::OverPoly { alg, order });
                        (spec_alg, ex)
                    }
                    FieldKind::Custom { .. } => {
                        return Err(Error::Unsupported("explicit algebras over custom fields".into()));
                    }
                }
            }
            (None, None) => {
                let n = aj.degree.ok_or_else(|| Error::Schema("algebra needs (a, b) or a degree".into()))?;
                let mut inv = Vec::new();
                for (label, r) in aj.invariants.iter().flatten() {
                    inv.push((ctx.place(label)?, r.clone()));
                }
                if !matches!(spec.order, OrderJson::LocalData { .. } | OrderJson::Maximal) {
                    return Err(Error::Schema("basis and Eichler orders need an (a, b) algebra".into()));
                }
                (AlgebraSpec::new(n, inv)?, None)
            }
            _ => return Err(Error::Schema("give both a and b".into())),
        };
        algebra.check_definite(&ctx)?;
        algebra.validate(&ctx)?;
        let mut profiles = match (&spec.order, &explicit) {
            (OrderJson::LocalData { profiles }, _) => profiles.clone(),
            (_, Some(Explicit::OverZ { alg, order })) => explicit_profiles(&ctx, alg, order)?,
            (_, Some(Explicit::OverPoly { alg, order })) => explicit_profiles(&ctx, alg, order)?,
            (_, None) => Vec::new(),
        };
        for (label, n) in &spec.options.normalizer_index {
            let place = ctx.place(label)?;
            let p = profiles
                .iter_mut()
                .find(|p| p.place == place)
                .ok_or_else(|| Error::Schema(format!("normalizer index given for {label}, where the order is maximal split")))?;
            p.normalizer_index = Some(BigInt::from(*n));
        }
        Ok(Problem { ctx, algebra, explicit, profiles, options: spec.options.clone() })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_spec(&ProblemSpec::from_json_str(s)?)
    }

    pub fn report(&self) -> Result<MassReport> {
        let r = mass_report(&self.ctx, &self.algebra, &self.profiles)?;
        r.check()?;
        Ok(r)
    }

    /// Local data at a place: the supplied profile if there is one, else the
    /// profile computed from the explicit order.
    pub fn local(&self, label: &str) -> Result<LocalReport> {
        let place = self.ctx.place(label)?;
        if self.ctx.is_archimedean(&place) {
            return Err(Error::Domain("local data lives at non-Archimedean places".into()));
        }
        let profile = match &self.explicit {
            Some(Explicit::OverZ { alg, order }) => profile_of_order(alg, order, &alg.ring.prime_of(&place)?)?,
            Some(Explicit::OverPoly { alg, order }) => profile_of_order(alg, order, &alg.ring.prime_of(&place)?)?,
            None => match self.profiles.iter().find(|p| p.place == place) {
                Some(p) => p.clone(),
                None => LocalOrderProfile::maximal(
                    place.clone(),
                    self.ctx.residue_size(&place)?,
                    self.algebra.local_index(&place),
                    self.algebra.degree(),
                )?,
            },
        };
        let mut profile = profile;
        if let Some(n) = self.options.normalizer_index.get(label) {
            profile.normalizer_index = Some(BigInt::from(*n));
        }
        let disc_valuation = crate::local::log_exact(&profile.disc_abs, &profile.q)
            .ok_or_else(|| Error::Schema("disc_abs is not a power of q".into()))?;
        let n = self.algebra.degree();
        Ok(LocalReport { lambda: profile.lambda(n)?, maximal: profile.is_maximal(n), disc_valuation, profile })
    }

    fn over_z(&self) -> Result<(&QuaternionAlgebra<Integers>, &Lattice<BigInt>)> {
        match &self.explicit {
            Some(Explicit::OverZ { alg, order }) => Ok((alg, order)),
            _ => Err(Error::Unsupported("enumeration needs an explicit order over Z".into())),
        }
    }

    /// Formula against enumeration. The search stops once the formula's mass
    /// is reached; if it cannot be reached, the graph is walked in full to
    /// report what was found.
    pub fn verify(&self, neighbor_prime: Option<u64>, with_types: bool, strategy: Strategy) -> Result<VerifyReport> {
        let (alg, order) = self.over_z()?;
        let report = self.report()?;
        let formula = report.mass_dr.clone();
        let np = neighbor_prime.or(self.options.neighbor_prime);
        let opts = BfsOptions { neighbor_prime: np, stop: Stop::AtMass(formula.clone()), strategy, ..BfsOptions::default() };
        let (classes, matches) = match oracle::right_ideal_classes(alg, order, &opts) {
            Ok(c) => (c, true),
            Err(Error::Mismatch(_)) => {
                let full = BfsOptions { stop: Stop::Exhaust, ..opts };
                let c = oracle::right_ideal_classes(alg, order, &full)?;
                let same = c.mass == formula;
                (c, same)
            }
            Err(e) => return Err(e),
        };
        let (type_number, type_mass_enumerated) = if with_types {
            let t = oracle::types_by_enumeration(alg, &classes, strategy)?;
            (Some(t.types.len()), Some(t.type_mass))
        } else {
            (None, None)
        };
        let type_ok = match (&type_mass_enumerated, &report.type_mass) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        };
        Ok(VerifyReport {
            classes: classes.classes.iter().map(|c| c.summary()).collect(),
            mass_enumerated: classes.mass.clone(),
            mass_formula: formula,
            matches: matches && type_ok,
            neighbor_prime: classes.neighbor_prime,
            type_number,
            type_mass_enumerated,
            type_mass_formula: if with_types { report.type_mass } else { None },
        })
    }

    pub fn maximalize(&self) -> Result<MaximalizeReport> {
        fn go<R: ArithRing>(alg: &QuaternionAlgebra<R>, order: &Lattice<R::Elem>) -> Result<MaximalizeReport> {
            let m = alg.maximalize(order)?;
            let ring = &alg.ring;
            let rows = alg.basis(&m).iter().map(|q| q.iter().map(|c| ring.f_display(c)).collect()).collect();
            Ok(MaximalizeReport {
                rows,
                reduced_disc: ring.f_display(&alg.reduced_disc(&m)?),
                was_maximal: &m == order,
            })
        }
        match &self.explicit {
            Some(Explicit::OverZ { alg, order }) => go(alg, order),
            Some(Explicit::OverPoly { alg, order }) => go(alg, order),
            None => Err(Error::Unsupported("maximalize needs an explicit order".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HURWITZ: &str = r#"{
        "field": {"kind": "Q"},
        "algebra": {"a": "-1", "b": "-1"},
        "order": {"kind": "basis", "rows": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["1/2","1/2","1/2","1/2"]]}
    }"#;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn hurwitz_problem() {
        let p = Problem::from_json_str(HURWITZ).unwrap();
        let rep = p.report().unwrap();
        assert_eq!(rep.mass_dr, r("1/12"));
        let l = p.local("2").unwrap();
        assert_eq!((l.lambda.clone(), l.profile.eichler_symbol), (r("1"), Some(-1)));
        let v = p.verify(None, true, Strategy::Sequential).unwrap();
        assert!(v.matches);
        assert_eq!(v.type_mass_enumerated, Some(r("1/24")));
        assert!(p.maximalize().unwrap().was_maximal);
    }

    #[test]
    fn schema_errors() {
        let bad = HURWITZ.replace("\"kind\": \"basis\"", "\"kind\": \"bogus\"");
        assert!(Problem::from_json_str(&bad).unwrap_err().is_input_error());
        let indefinite = HURWITZ.replace("\"-1\", \"b\"", "\"1\", \"b\"");
        assert!(matches!(Problem::from_json_str(&indefinite), Err(Error::NotDefinite(_))));
    }

    #[test]
    fn function_field_by_invariants() {
        let js = r#"{"field": {"kind": "Fq(t)", "q": 2}, "algebra": {"degree": 3, "invariants": {"infty": "1/3", "t": "2/3"}},
                     "order": {"kind": "maximal"}}"#;
        assert_eq!(Problem::from_json_str(js).unwrap().report().unwrap().mass_dr, r("1/7"));
    }
}
