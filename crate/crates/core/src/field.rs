//! Global fields, places, and the data of the S-integer ring.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{factor_integer, ipow, Rational};
use crate::ring::fp_poly::{parse_poly_coeffs, poly_to_string};
use crate::ring::{FpPolyRing, Integers};

/// A place of a global field, identified by its label.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    /// The Archimedean place of `Q`, or the degree-one place `1/t` of `F_q(t)`.
    Infinity,
    Prime(u64),
    /// Monic polynomial over `F_p`, coefficients from the constant term up.
    Poly(Vec<u64>),
    /// A place of a user-described field.
    Named(String),
}

impl Place {
    /// Parses a label without reference to a field. Polynomial coefficients
    /// are kept as written; [`FieldContext::place`] reduces them.
    pub fn parse(label: &str) -> Result<Place> {
        let s = label.trim();
        match s {
            "infty" | "inf" | "∞" | "oo" => return Ok(Place::Infinity),
            "" => return Err(Error::Parse("empty place label".into())),
            _ => {}
        }
        if s.chars().all(|c| c.is_ascii_digit()) {
            let p = s.parse::<u64>().map_err(|_| Error::Parse(format!("place label {s:?} is too large")))?;
            return Ok(Place::Prime(p));
        }
        if s.contains('t') && s.chars().all(|c| c.is_ascii_digit() || "t^+-* ".contains(c)) {
            let c = parse_poly_coeffs(s)?;
            if c.iter().any(|&x| x < 0) {
                return Err(Error::Parse(format!("negative coefficient in place label {s:?}")));
            }
            return Ok(Place::Poly(c.into_iter().map(|x| x as u64).collect()));
        }
        Ok(Place::Named(s.to_string()))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "infty"),
            Place::Prime(p) => write!(f, "{p}"),
            Place::Poly(c) => write!(f, "{}", poly_to_string(c)),
            Place::Named(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            N(u64),
        }
        match Raw::deserialize(d)? {
            Raw::S(s) => Place::parse(&s).map_err(serde::de::Error::custom),
            Raw::N(n) => Ok(Place::Prime(n)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    RationalFunctionField { q: u64 },
    /// A field described only by user data. `real_places` is the number of
    /// Archimedean places of a totally real number field (ignored for function
    /// fields).
    Custom { function_field: bool, real_places: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomPlace {
    pub label: String,
    #[serde(with = "bigint_serde")]
    pub q: BigInt,
}

/// The global field `K`, the set `S`, and the data of `A` needed by the mass
/// formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldContext {
    kind: FieldKind,
    s: Vec<Place>,
    h: BigInt,
    zeta: Vec<Rational>,
    places: Vec<CustomPlace>,
}

impl FieldContext {
    pub fn rationals() -> Self {
        FieldContext { kind: FieldKind::Rationals, s: vec![Place::Infinity], h: BigInt::one(), zeta: vec![], places: vec![] }
    }

    pub fn rational_function_field(q: u64) -> Result<Self> {
        prime_power(q)?;
        Ok(FieldContext {
            kind: FieldKind::RationalFunctionField { q },
            s: vec![Place::Infinity],
            h: BigInt::one(),
            zeta: vec![],
            places: vec![],
        })
    }

    /// A user-described field. `zeta[i-1]` is `|ζ_K(-i)|`; `places` lists the
    /// residue sizes of every finite place the computation will touch (and of
    /// `infty` for a function field).
    pub fn custom(
        function_field: bool,
        real_places: u32,
        h: BigInt,
        zeta: Vec<Rational>,
        places: Vec<CustomPlace>,
        s: &[&str],
    ) -> Result<Self> {
        if h < BigInt::one() {
            return Err(Error::Schema(format!("class number must be positive, got {h}")));
        }
        if !function_field && real_places == 0 {
            return Err(Error::Schema("a number field needs at least one real place".into()));
        }
        if zeta.iter().any(|z| !z.is_positive()) {
            return Err(Error::Schema("zeta magnitudes must be positive".into()));
        }
        for p in &places {
            if p.q < BigInt::from(2) {
                return Err(Error::Schema(format!("residue size of {} must be at least 2", p.label)));
            }
        }
        let ctx = FieldContext {
            kind: FieldKind::Custom { function_field, real_places },
            s: vec![Place::Infinity],
            h,
            zeta,
            places,
        };
        ctx.with_s(s)
    }

    /// Replaces `S` by the places with the given labels.
    pub fn with_s(mut self, labels: &[&str]) -> Result<Self> {
        let mut s = Vec::new();
        for l in labels {
            let p = self.place(l)?;
            if !s.contains(&p) {
                s.push(p);
            }
        }
        s.sort();
        let needs_inf = match self.kind {
            FieldKind::Custom { function_field: true, .. } => false,
            _ => true,
        };
        if s.is_empty() || (needs_inf && !s.contains(&Place::Infinity)) {
            return Err(Error::Schema("S must contain the place infty".into()));
        }
        if let FieldKind::Custom { function_field: true, .. } = self.kind {
            for p in &s {
                self.residue_size(p)?;
            }
        }
        self.s = s;
        Ok(self)
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn s(&self) -> &[Place] {
        &self.s
    }

    pub fn is_function_field(&self) -> bool {
        match self.kind {
            FieldKind::Rationals => false,
            FieldKind::RationalFunctionField { .. } => true,
            FieldKind::Custom { function_field, .. } => function_field,
        }
    }

    /// Number of Archimedean places (0 for function fields).
    pub fn archimedean_count(&self) -> u32 {
        match self.kind {
            FieldKind::Rationals => 1,
            FieldKind::RationalFunctionField { .. } => 0,
            FieldKind::Custom { function_field: true, .. } => 0,
            FieldKind::Custom { real_places, .. } => real_places,
        }
    }

    /// `|S|`, counting every real place of a number field separately.
    pub fn s_size(&self) -> u32 {
        let finite = self.s.iter().filter(|p| !self.is_archimedean(p)).count() as u32;
        finite + self.archimedean_count()
    }

    pub fn is_archimedean(&self, p: &Place) -> bool {
        p.is_infinity() && !self.is_function_field()
    }

    pub fn in_s(&self, p: &Place) -> bool {
        self.s.contains(p)
    }

    /// Non-Archimedean places of `S`.
    pub fn finite_s(&self) -> Vec<Place> {
        self.s.iter().filter(|p| !self.is_archimedean(p)).cloned().collect()
    }

    /// Interprets a label as a place of this field.
    pub fn place(&self, label: &str) -> Result<Place> {
        let raw = Place::parse(label)?;
        match (&self.kind, raw) {
            (_, Place::Infinity) => Ok(Place::Infinity),
            (FieldKind::Rationals, Place::Prime(p)) => {
                if !crate::exactnum::is_prime_u64(p) {
                    return Err(Error::Schema(format!("{p} is not a prime")));
                }
                Ok(Place::Prime(p))
            }
            (FieldKind::RationalFunctionField { q }, Place::Poly(c)) => {
                let (p, _) = prime_power(*q)?;
                let ints: Vec<i64> = c.iter().map(|&x| x as i64).collect();
                let reduced: Vec<u64> = ints.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
                let mut reduced = reduced;
                while reduced.last() == Some(&0) {
                    reduced.pop();
                }
                if reduced.len() < 2 || *reduced.last().unwrap() != 1 {
                    return Err(Error::Schema(format!("place {label:?} must be a monic polynomial of positive degree")));
                }
                if p == *q {
                    let ring = FpPolyRing::new(p)?;
                    if !ring.is_irreducible(&ring.from_coeffs(&ints)) {
                        return Err(Error::Schema(format!("{label:?} is not irreducible over F_{q}")));
                    }
                } else if reduced.len() > 2 {
                    return Err(Error::Unsupported(format!(
                        "places of degree above one over F_{q} (q not prime) cannot be named"
                    )));
                }
                Ok(Place::Poly(reduced))
            }
            (FieldKind::Custom { .. }, _) => {
                let name = label.trim().to_string();
                if self.places.iter().any(|p| p.label == name) {
                    Ok(Place::Named(name))
                } else {
                    Err(Error::Schema(format!("place {name:?} is not in the custom place table")))
                }
            }
            (_, other) => Err(Error::Schema(format!("{other} is not a place of {}", self.describe()))),
        }
    }

    /// `q_v` for a non-Archimedean place.
    pub fn residue_size(&self, place: &Place) -> Result<BigInt> {
        match (&self.kind, place) {
            (FieldKind::Rationals, Place::Prime(p)) => Ok(BigInt::from(*p)),
            (FieldKind::RationalFunctionField { q }, Place::Infinity) => Ok(BigInt::from(*q)),
            (FieldKind::RationalFunctionField { q }, Place::Poly(c)) => Ok(ipow(&BigInt::from(*q), (c.len() - 1) as u32)),
            (FieldKind::Custom { function_field, .. }, p) => {
                if p.is_infinity() && !function_field {
                    return Err(Error::Domain("the Archimedean places have no residue field".into()));
                }
                let label = p.to_string();
                self.places
                    .iter()
                    .find(|c| c.label == label)
                    .map(|c| c.q.clone())
                    .ok_or_else(|| Error::MissingData(format!("residue size of place {label}")))
            }
            (_, Place::Infinity) => Err(Error::Domain("the Archimedean place has no residue field".into())),
            (_, p) => Err(Error::Schema(format!("{p} is not a place of {}", self.describe()))),
        }
    }

    pub fn class_number(&self) -> BigInt {
        self.h.clone()
    }

    /// `|ζ_K(-i)|`.
    pub fn zeta_abs(&self, i: u32) -> Result<Rational> {
        if i == 0 {
            return Err(Error::Domain("zeta index must be positive".into()));
        }
        match self.kind {
            FieldKind::Rationals => {
                if i == 1 {
                    Ok(Rational::new(BigInt::one(), BigInt::from(12)))
                } else {
                    Err(Error::Unsupported(format!("zeta_Q(-{i}) is not needed for definite algebras over Q")))
                }
            }
            FieldKind::RationalFunctionField { q } => {
                let q = BigInt::from(q);
                let a = ipow(&q, i) - 1;
                let b = ipow(&q, i + 1) - 1;
                Ok(Rational::new(BigInt::one(), a * b))
            }
            FieldKind::Custom { .. } => self
                .zeta
                .get(i as usize - 1)
                .cloned()
                .ok_or_else(|| Error::MissingData(format!("|zeta_K(-{i})| was not supplied"))),
        }
    }

    /// `|A^×|` when the unit group is finite.
    pub fn unit_group_order(&self) -> Result<BigInt> {
        match self.kind {
            FieldKind::Rationals if self.s.len() == 1 => Ok(BigInt::from(2)),
            FieldKind::RationalFunctionField { q } if self.s.len() == 1 => Ok(BigInt::from(q - 1)),
            _ => Err(Error::Domain(format!("the unit group of A is infinite for S = {:?}", self.s))),
        }
    }

    /// Characteristic of a function field.
    pub fn characteristic(&self) -> Option<u64> {
        match self.kind {
            FieldKind::RationalFunctionField { q } => prime_power(q).ok().map(|(p, _)| p),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self.kind {
            FieldKind::Rationals => "Q".into(),
            FieldKind::RationalFunctionField { q } => format!("F_{q}(t)"),
            FieldKind::Custom { function_field: true, .. } => "a custom function field".into(),
            FieldKind::Custom { .. } => "a custom number field".into(),
        }
    }

    /// The coefficient ring of explicit arithmetic over `Q`.
    pub fn integers(&self) -> Result<Integers> {
        match self.kind {
            FieldKind::Rationals => Ok(Integers),
            _ => Err(Error::Unsupported(format!("integer arithmetic over {}", self.describe()))),
        }
    }

    /// The coefficient ring `F_p[t]` of explicit arithmetic over `F_p(t)`.
    pub fn poly_ring(&self) -> Result<FpPolyRing> {
        match self.kind {
            FieldKind::RationalFunctionField { q } => {
                if !crate::exactnum::is_prime_u64(q) {
                    return Err(Error::Unsupported(format!(
                        "explicit arithmetic over F_{q}(t) needs a prime q; use local data instead"
                    )));
                }
                FpPolyRing::new(q)
            }
            _ => Err(Error::Unsupported(format!("polynomial arithmetic over {}", self.describe()))),
        }
    }

    pub fn to_json(&self) -> FieldJson {
        let s = self.s.iter().map(|p| p.to_string()).collect();
        match &self.kind {
            FieldKind::Rationals => FieldJson { kind: "Q".into(), s: Some(s), ..Default::default() },
            FieldKind::RationalFunctionField { q } => FieldJson { kind: "Fq(t)".into(), q: Some(*q), s: Some(s), ..Default::default() },
            FieldKind::Custom { function_field, real_places } => FieldJson {
                kind: "custom".into(),
                q: None,
                h: Some(self.h.to_string()),
                zeta: Some(self.zeta.clone()),
                places: Some(self.places.clone()),
                function_field: Some(*function_field),
                real_places: Some(*real_places),
                s: Some(s),
            },
        }
    }

    pub fn from_json(j: &FieldJson) -> Result<Self> {
        let s_labels: Vec<String> = j.s.clone().unwrap_or_else(|| vec!["infty".into()]);
        let s: Vec<&str> = s_labels.iter().map(|x| x.as_str()).collect();
        match j.kind.as_str() {
            "Q" | "rationals" => FieldContext::rationals().with_s(&s),
            "Fq(t)" | "function_field" => {
                let q = j.q.ok_or_else(|| Error::Schema("field kind Fq(t) needs q".into()))?;
                FieldContext::rational_function_field(q).map_err(|e| match e {
                    Error::Domain(m) => Error::Schema(m),
                    e => e,
                })?
                .with_s(&s)
            }
            "custom" => {
                let h: BigInt = j
                    .h
                    .as_deref()
                    .unwrap_or("1")
                    .parse()
                    .map_err(|_| Error::Schema("custom field h must be an integer".into()))?;
                FieldContext::custom(
                    j.function_field.unwrap_or(false),
                    j.real_places.unwrap_or(1),
                    h,
                    j.zeta.clone().unwrap_or_default(),
                    j.places.clone().unwrap_or_default(),
                    &s,
                )
            }
            other => Err(Error::Schema(format!("unknown field kind {other:?}"))),
        }
    }
}

/// JSON form of a [`FieldContext`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub places: Option<Vec<CustomPlace>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function_field: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real_places: Option<u32>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<String>>,
}

/// Splits `q = p^k`, rejecting anything that is not a prime power.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::Domain(format!("{q} is not a prime power")));
    }
    let f = factor_integer(&BigInt::from(q))?;
    if f.exponents.len() != 1 {
        return Err(Error::Domain(format!("{q} is not a prime power")));
    }
    let (p, k) = f.exponents.iter().next().unwrap();
    Ok((*p, *k as u32))
}

pub(crate) mod bigint_serde {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            N(i64),
        }
        match Raw::deserialize(d)? {
            Raw::S(s) => s.trim().parse().map_err(serde::de::Error::custom),
            Raw::N(n) => Ok(BigInt::from(n)),
        }
    }
}


/// Small helper for callers that need `q_v` as a machine integer.
pub fn small(q: &BigInt) -> Result<u64> {
    q.to_u64().ok_or_else(|| Error::Unsupported(format!("residue size {q} does not fit in 64 bits")))
}
