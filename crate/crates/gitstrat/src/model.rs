//! Serialized forms of representations, rationals and the shipped tables.

use gitstrat_core::exact::{Rat, RatVec};
use gitstrat_core::rep::{ExtFactor, GroupSpec, RepSpec, Summand};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Errors raised while reading input files and arguments.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{0}")]
    Schema(String),
}

impl InputError {
    pub fn schema(msg: impl Into<String>) -> Self {
        InputError::Schema(msg.into())
    }
}

/// A rational as a pair of decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatRepr {
    pub num: String,
    pub den: String,
}

impl RatRepr {
    pub fn to_rat(&self) -> Result<Rat, InputError> {
        let num: BigInt = self.num.trim().parse().map_err(|_| InputError::schema(format!("bad numerator {:?}", self.num)))?;
        let den: BigInt = self.den.trim().parse().map_err(|_| InputError::schema(format!("bad denominator {:?}", self.den)))?;
        if den.is_zero() {
            return Err(InputError::schema("zero denominator"));
        }
        Ok(Rat::new(num, den))
    }
}

impl From<&Rat> for RatRepr {
    fn from(r: &Rat) -> Self {
        RatRepr { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

pub fn rat_vec_repr(v: &RatVec) -> Vec<RatRepr> {
    v.as_slice().iter().map(RatRepr::from).collect()
}

pub fn rat_vec_from(v: &[RatRepr]) -> Result<RatVec, InputError> {
    Ok(RatVec(v.iter().map(RatRepr::to_rat).collect::<Result<_, _>>()?))
}

/// Parses `p` or `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat, InputError> {
    let s = s.trim();
    let bad = || InputError::schema(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

/// Parses a rational vector written either as `r1,r2,...` or as
/// `(p/q)(a1,a2,...)`.
pub fn parse_rat_vector(s: &str) -> Result<RatVec, InputError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let list = |body: &str| -> Result<Vec<Rat>, InputError> {
        if body.is_empty() {
            return Err(InputError::schema("empty vector"));
        }
        body.split(',').map(parse_rat).collect()
    };
    if let Some(rest) = s.strip_prefix('(') {
        if let Some((scale, tail)) = rest.split_once(")(") {
            let body = tail.strip_suffix(')').ok_or_else(|| InputError::schema(format!("bad vector {s:?}")))?;
            let k = parse_rat(scale)?;
            return Ok(RatVec(list(body)?.into_iter().map(|v| v * &k).collect()));
        }
        let body = rest.strip_suffix(')').ok_or_else(|| InputError::schema(format!("bad vector {s:?}")))?;
        return Ok(RatVec(list(body)?));
    }
    Ok(RatVec(list(&s)?))
}

/// Primitive integer tuple and denominator, e.g. `-8 -8 -8 12 12 -5 -5 -5 15 / 20`.
pub fn format_primitive(v: &RatVec) -> String {
    let (ints, den) = v.to_primitive();
    let body: Vec<String> = ints.iter().map(ToString::to_string).collect();
    format!("{} / {}", body.join(" "), den)
}

pub fn parse_primitive(s: &str) -> Result<RatVec, InputError> {
    let (body, den) = s.split_once('/').ok_or_else(|| InputError::schema(format!("bad line {s:?}")))?;
    let den = parse_rat(den)?;
    let v = body.split_whitespace().map(|t| parse_rat(t).map(|x| x / &den)).collect::<Result<Vec<_>, _>>()?;
    Ok(RatVec(v))
}

/// One exterior factor of a summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorConfig {
    pub group: usize,
    pub degree: usize,
    /// Optional half-open range `[start, end)` of basis vectors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<[usize; 2]>,
}

/// A representation of a product of general linear groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepConfig {
    pub factors: Vec<usize>,
    pub summands: Vec<Vec<FactorConfig>>,
}

impl RepConfig {
    pub fn build(&self) -> Result<RepSpec, InputError> {
        let group = GroupSpec::new(self.factors.clone()).map_err(|e| InputError::schema(e.to_string()))?;
        let summands = self
            .summands
            .iter()
            .map(|s| Summand {
                factors: s
                    .iter()
                    .map(|f| match f.range {
                        Some([a, b]) => ExtFactor::with_range(f.group, f.degree, a, b),
                        None => ExtFactor::new(f.group, f.degree),
                    })
                    .collect(),
            })
            .collect();
        RepSpec::new(group, summands).map_err(|e| InputError::schema(e.to_string()))
    }

    pub fn from_rep(rep: &RepSpec) -> Self {
        RepConfig {
            factors: rep.group().factor_sizes().to_vec(),
            summands: rep
                .summands()
                .iter()
                .map(|s| {
                    s.factors
                        .iter()
                        .map(|f| FactorConfig { group: f.group, degree: f.degree, range: f.range.map(|(a, b)| [a, b]) })
                        .collect()
                })
                .collect(),
        }
    }
}

/// Common envelope of the data files.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DataFile<T> {
    pub kind: String,
    #[serde(default)]
    pub description: String,
    pub rows: Vec<T>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BetaRow {
    pub index: usize,
    pub beta: Vec<RatRepr>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumRow {
    pub index: usize,
    pub nonempty: bool,
    pub cuts: Vec<Vec<usize>>,
    pub z: Vec<usize>,
    /// Only tabulated for nonempty strata.
    pub w: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateRow {
    pub index: usize,
    pub beta: Vec<RatRepr>,
    pub zeroed: Vec<usize>,
    pub lambda: Vec<i64>,
    pub weights: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErratumRow {
    pub index: usize,
    /// `weights` (key is an ordinal) or `lambda` (key is a 1-based position).
    pub field: String,
    pub key: usize,
    pub printed: i64,
    pub corrected: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecipeInvariantRow {
    pub name: String,
    pub expr: serde_json::Value,
    pub expected: Option<RatRepr>,
    /// `published` or `derived`.
    pub expected_source: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecipeRow {
    pub index: usize,
    /// `explicit` or `deferred`.
    pub status: String,
    #[serde(default)]
    pub representative: Vec<(String, RatRepr)>,
    #[serde(default)]
    pub invariants: Vec<RecipeInvariantRow>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleRow {
    pub index: usize,
    /// `explicit`, `deferred` or `not-needed` (empty `W_beta`).
    pub status: String,
    #[serde(default)]
    pub representative: Vec<(String, RatRepr)>,
    #[serde(default)]
    pub pinned: Vec<String>,
    #[serde(default)]
    pub extras: Vec<String>,
    #[serde(default)]
    pub steps: Vec<(usize, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureRow {
    pub name: String,
    pub rep: RepConfig,
    /// Sparse point: (ordinal, coefficient).
    pub point: Vec<(usize, RatRepr)>,
    pub expected: usize,
}

/// Reads a data file and checks its `kind`.
pub fn read_data_file<T: for<'de> Deserialize<'de>>(text: &str, path: &str, kind: &str) -> Result<DataFile<T>, InputError> {
    let f: DataFile<T> = serde_json::from_str(text).map_err(|source| InputError::Json { path: path.into(), source })?;
    if f.kind != kind {
        return Err(InputError::schema(format!("{path}: expected kind {kind:?}, found {:?}", f.kind)));
    }
    Ok(f)
}

/// The `kind` field of a data file.
pub fn peek_kind(text: &str, path: &str) -> Result<String, InputError> {
    #[derive(Deserialize)]
    struct Kind {
        kind: String,
    }
    let k: Kind = serde_json::from_str(text).map_err(|source| InputError::Json { path: path.into(), source })?;
    Ok(k.kind)
}

/// Ordinal of a coordinate label such as `x452` or `452`.
pub fn label_ordinal(rep: &RepSpec, label: &str) -> Result<usize, InputError> {
    let l = label.strip_prefix('x').unwrap_or(label);
    rep.coordinates()
        .iter()
        .find(|c| c.label() == l)
        .map(|c| c.ordinal)
        .ok_or_else(|| InputError::schema(format!("unknown coordinate {label:?}")))
}

/// Dense point from sparse `(label, coefficient)` pairs.
pub fn sparse_point(rep: &RepSpec, terms: &[(String, RatRepr)]) -> Result<Vec<Rat>, InputError> {
    let mut x = vec![Rat::zero(); rep.dim()];
    for (l, c) in terms {
        x[label_ordinal(rep, l)? - 1] += c.to_rat()?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gitstrat_core::exact::rat;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rat("-3/12").unwrap(), rat(-1, 4));
        assert_eq!(parse_rat(" 7 ").unwrap(), rat(7, 1));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a").is_err());
        let v = parse_rat_vector("(1/20)(-8,-8,-8,12,12,-5,-5,-5,15)").unwrap();
        assert_eq!(v[0], rat(-2, 5));
        assert_eq!(v, parse_rat_vector("-2/5, -2/5,-2/5,3/5,3/5,-1/4,-1/4,-1/4,3/4").unwrap());
        assert!(parse_rat_vector("").is_err());
        assert!(parse_rat_vector("(1/2)(1,2").is_err());
    }

    #[test]
    fn primitive_round_trip() {
        let v = parse_rat_vector("(1/12)(0,0,0,0,0,-3,1,1,1)").unwrap();
        let s = format_primitive(&v);
        assert_eq!(s, "0 0 0 0 0 -3 1 1 1 / 12");
        assert_eq!(parse_primitive(&s).unwrap(), v);
    }

    #[test]
    fn repr_round_trip() {
        let r = rat(-6, 4);
        let j = serde_json::to_string(&RatRepr::from(&r)).unwrap();
        assert_eq!(j, r#"{"num":"-3","den":"2"}"#);
        let back: RatRepr = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_rat().unwrap(), r);
        assert!(RatRepr { num: "1".into(), den: "0".into() }.to_rat().is_err());
    }

    #[test]
    fn config_round_trip() {
        let rep = RepSpec::flagship();
        let c = RepConfig::from_rep(&rep);
        assert_eq!(c.build().unwrap(), rep);
        let bad = RepConfig { factors: vec![2], summands: vec![vec![FactorConfig { group: 3, degree: 1, range: None }]] };
        assert!(bad.build().is_err());
        assert_eq!(label_ordinal(&rep, "x454").unwrap(), 40);
        assert_eq!(label_ordinal(&rep, "121").unwrap(), 1);
        assert!(label_ordinal(&rep, "x999").is_err());
    }

    proptest::proptest! {
        #[test]
        fn text_forms_round_trip(nums in proptest::collection::vec(-50i64..=50, 1..10), den in 1i64..=60) {
            let v = RatVec(nums.iter().map(|&n| rat(n, den)).collect());
            proptest::prop_assert_eq!(parse_primitive(&format_primitive(&v)).unwrap(), v.clone());
            let listed: Vec<String> = v.0.iter().map(ToString::to_string).collect();
            proptest::prop_assert_eq!(parse_rat_vector(&listed.join(",")).unwrap(), v.clone());
            let ints: Vec<String> = nums.iter().map(ToString::to_string).collect();
            proptest::prop_assert_eq!(parse_rat_vector(&format!("(1/{den})({})", ints.join(","))).unwrap(), v.clone());
            let reprs = rat_vec_repr(&v);
            proptest::prop_assert_eq!(rat_vec_from(&reprs).unwrap(), v);
        }
    }
}
