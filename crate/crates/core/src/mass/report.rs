use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{FactoredRational, Rational};
use crate::field::bigint_serde;

pub const TYPE_MASS_WARNING: &str = "type_mass divides Mass(G^ad) by the normalizer index; \
multiplying instead (type_mass_multiplied) contradicts the enumeration of types";

/// One labeled factor of a mass computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub label: String,
    pub value: Rational,
    /// Prime factorization of `value`, for reading off divergences.
    pub factored: String,
}

impl TraceEntry {
    pub fn new(label: impl Into<String>, value: &Rational) -> Self {
        let factored = FactoredRational::from_rational(value).map(|f| f.to_string()).unwrap_or_else(|_| "?".into());
        TraceEntry { label: label.into(), value: value.clone(), factored }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassReport {
    /// `Mass(D,R)`.
    pub mass_dr: Rational,
    /// `Mass(G^ad,U^ad)`.
    pub mass_gad: Rational,
    /// `Mass(G_1,U_1)`.
    pub mass_g1: Rational,
    /// `c(S,U)`.
    pub c: Rational,
    pub c_ad: Rational,
    #[serde(with = "bigint_serde")]
    pub norm_index_global: BigInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type_mass: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type_mass_multiplied: Option<Rational>,
    #[serde(default, with = "crate::local::opt_bigint", skip_serializing_if = "Option::is_none")]
    pub normalizer_index_global: Option<BigInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unnormalized: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub korner: Option<Rational>,
    pub trace: Vec<TraceEntry>,
}

impl MassReport {
    /// `Mass(D,R) = h_A·Mass(G^ad)` is built in; this checks
    /// `Mass(G^ad) = c·Mass(G_1)`, positivity, and the Körner value.
    pub fn check(&self) -> Result<()> {
        if !(self.mass_dr.is_positive() && self.mass_gad.is_positive() && self.mass_g1.is_positive()) {
            return Err(Error::Mismatch("masses must be positive".into()));
        }
        if &self.c * &self.mass_g1 != self.mass_gad {
            return Err(Error::Mismatch(format!(
                "Mass(G^ad) = {} but c·Mass(G_1) = {}",
                self.mass_gad,
                &self.c * &self.mass_g1
            )));
        }
        if let Some(k) = &self.korner {
            if *k != self.mass_dr {
                return Err(Error::Mismatch(format!("Eichler-symbol mass {k} differs from {}", self.mass_dr)));
            }
        }
        Ok(())
    }

    /// `h_A`, recovered from the report.
    pub fn class_number(&self) -> Result<Rational> {
        self.mass_dr.checked_div(&self.mass_gad)
    }

    /// Aligned text rendering with an approximate decimal column.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("Mass(D,R)".into(), self.mass_dr.to_string()),
            ("Mass(G^ad,U^ad)".into(), self.mass_gad.to_string()),
            ("Mass(G_1,U_1)".into(), self.mass_g1.to_string()),
            ("c(S,U)".into(), self.c.to_string()),
            ("c^ad".into(), self.c_ad.to_string()),
            ("[A^x : Nr(U)]".into(), self.norm_index_global.to_string()),
        ];
        if let Some(t) = &self.type_mass {
            rows.push(("Mass(T(R))".into(), t.to_string()));
        }
        if let Some(t) = &self.type_mass_multiplied {
            rows.push(("Mass(T(R)) multiplied [!]".into(), t.to_string()));
        }
        if let Some(u) = &self.unnormalized {
            rows.push(("Mass^u(D,R)".into(), u.to_string()));
        }
        if let Some(k) = &self.korner {
            rows.push(("Mass via Eichler symbols".into(), k.to_string()));
        }
        let w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        let v = rows.iter().map(|r| r.1.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, x) in &rows {
            let approx = x.parse::<Rational>().map(|r| r.to_decimal_string(8)).unwrap_or_default();
            out.push_str(&format!("{k:<w$}  {x:>v$}  ~{approx}\n"));
        }
        out.push_str("trace:\n");
        for t in &self.trace {
            out.push_str(&format!("  {:<20} {:>12}  = {}\n", t.label, t.value.to_string(), t.factored));
        }
        if let Some(msg) = &self.warning {
            out.push_str(&format!("warning: {msg}\n"));
        }
        out
    }
}
