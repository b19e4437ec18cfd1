//! Loaders for the shipped tables, which are also embedded in the binary.

use crate::expr::parse_expr;
use crate::model::*;
use gitstrat_core::certificates::EmptinessCertificate;
use gitstrat_core::exact::{Rat, RatVec};
use gitstrat_core::invariants::recipe::{Recipe, RecipeInvariant};
use gitstrat_core::rep::RepSpec;
use gitstrat_core::stabilizers::fixtures;
use gitstrat_core::unipotent::{Schedule, UVar};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

pub const FLAGSHIP_JSON: &str = include_str!("../data/flagship.json");
pub const BETAS_JSON: &str = include_str!("../data/betas.json");
pub const STRATA_JSON: &str = include_str!("../data/strata.json");
pub const CERTIFICATES_JSON: &str = include_str!("../data/certificates.json");
pub const ERRATA_JSON: &str = include_str!("../data/errata.json");
pub const RECIPES_JSON: &str = include_str!("../data/recipes.json");
pub const SCHEDULES_JSON: &str = include_str!("../data/schedules.json");
pub const FIXTURES_JSON: &str = include_str!("../data/fixtures.json");

/// Directory of the shipped data files in the source tree.
pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn read_text(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::schema(format!("{}: {e}", path.display())))
}

pub fn parse_config(text: &str, path: &str) -> Result<RepSpec, InputError> {
    let c: RepConfig = serde_json::from_str(text).map_err(|source| InputError::Json { path: path.into(), source })?;
    c.build()
}

pub fn flagship() -> RepSpec {
    parse_config(FLAGSHIP_JSON, "flagship.json").expect("shipped configuration")
}

fn check_unique<T>(rows: &[T], index: impl Fn(&T) -> usize, path: &str) -> Result<(), InputError> {
    let mut seen = BTreeSet::new();
    for (k, r) in rows.iter().enumerate() {
        if !seen.insert(index(r)) {
            return Err(InputError::schema(format!("{path}: row {k}: duplicate index {}", index(r))));
        }
    }
    Ok(())
}

fn row_err(path: &str, k: usize, e: InputError) -> InputError {
    InputError::schema(format!("{path}: row {k}: {e}"))
}

/// External index and value of every tabulated `beta`.
pub fn load_betas(text: &str, path: &str) -> Result<Vec<(usize, RatVec)>, InputError> {
    let f: DataFile<BetaRow> = read_data_file(text, path, "betas")?;
    check_unique(&f.rows, |r| r.index, path)?;
    f.rows.iter().enumerate().map(|(k, r)| Ok((r.index, rat_vec_from(&r.beta).map_err(|e| row_err(path, k, e))?))).collect()
}

pub fn shipped_betas() -> Vec<(usize, RatVec)> {
    load_betas(BETAS_JSON, "betas.json").expect("shipped betas")
}

/// Map from `beta` value to external index.
pub fn beta_index_map(betas: &[(usize, RatVec)]) -> BTreeMap<RatVec, usize> {
    betas.iter().map(|(i, b)| (b.clone(), *i)).collect()
}

pub fn load_strata(text: &str, path: &str) -> Result<Vec<StratumRow>, InputError> {
    let f: DataFile<StratumRow> = read_data_file(text, path, "strata")?;
    check_unique(&f.rows, |r| r.index, path)?;
    Ok(f.rows)
}

pub fn certificate_from_row(r: &CertificateRow) -> Result<EmptinessCertificate, InputError> {
    let weights = r
        .weights
        .iter()
        .map(|(k, v)| Ok((k.parse::<usize>().map_err(|_| InputError::schema(format!("bad ordinal {k:?}")))?, *v)))
        .collect::<Result<_, InputError>>()?;
    Ok(EmptinessCertificate {
        index: r.index,
        beta: rat_vec_from(&r.beta)?,
        zeroed: r.zeroed.clone(),
        lambda: r.lambda.clone(),
        weights,
    })
}

pub fn certificate_to_row(c: &EmptinessCertificate) -> CertificateRow {
    CertificateRow {
        index: c.index,
        beta: rat_vec_repr(&c.beta),
        zeroed: c.zeroed.clone(),
        lambda: c.lambda.clone(),
        weights: c.weights.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    }
}

/// Certificates of a data file; an empty file gives an empty list.
pub fn load_certificates(text: &str, path: &str) -> Result<Vec<EmptinessCertificate>, InputError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let f: DataFile<CertificateRow> = read_data_file(text, path, "certificates")?;
    check_unique(&f.rows, |r| r.index, path)?;
    f.rows.iter().enumerate().map(|(k, r)| certificate_from_row(r).map_err(|e| row_err(path, k, e))).collect()
}

pub fn shipped_certificates() -> Vec<EmptinessCertificate> {
    load_certificates(CERTIFICATES_JSON, "certificates.json").expect("shipped certificates")
}

pub fn load_errata(text: &str, path: &str) -> Result<Vec<ErratumRow>, InputError> {
    let f: DataFile<ErratumRow> = read_data_file(text, path, "errata")?;
    for (k, r) in f.rows.iter().enumerate() {
        if r.field != "weights" && r.field != "lambda" {
            return Err(row_err(path, k, InputError::schema(format!("unknown field {:?}", r.field))));
        }
    }
    Ok(f.rows)
}

pub fn shipped_errata() -> Vec<ErratumRow> {
    load_errata(ERRATA_JSON, "errata.json").expect("shipped errata")
}

/// The certificates with the erratum entries reverted to their printed values.
pub fn printed_certificates(certs: &[EmptinessCertificate], errata: &[ErratumRow]) -> Vec<EmptinessCertificate> {
    let mut out = certs.to_vec();
    for e in errata {
        for c in out.iter_mut().filter(|c| c.index == e.index) {
            match e.field.as_str() {
                "weights" => {
                    c.weights.insert(e.key, e.printed);
                }
                _ => c.lambda[e.key - 1] = e.printed,
            }
        }
    }
    out
}

/// A recipe row resolved against a representation.
#[derive(Clone, Debug)]
pub struct LoadedRecipe {
    pub index: usize,
    pub status: String,
    pub recipe: Option<Recipe>,
    /// Origin of each expected value, parallel to the invariants.
    pub sources: Vec<String>,
}

fn sparse_terms(rep: &RepSpec, terms: &[(String, RatRepr)]) -> Result<Vec<(usize, Rat)>, InputError> {
    terms.iter().map(|(l, c)| Ok((label_ordinal(rep, l)?, c.to_rat()?))).collect()
}

pub fn load_recipes(text: &str, path: &str, rep: &RepSpec) -> Result<Vec<LoadedRecipe>, InputError> {
    let f: DataFile<RecipeRow> = read_data_file(text, path, "recipes")?;
    check_unique(&f.rows, |r| r.index, path)?;
    let mut out = Vec::new();
    for (k, r) in f.rows.iter().enumerate() {
        let wrap = |e| row_err(path, k, e);
        let recipe = match r.status.as_str() {
            "explicit" => {
                if r.invariants.is_empty() {
                    return Err(wrap(InputError::schema("explicit recipe without invariants")));
                }
                let invariants = r
                    .invariants
                    .iter()
                    .map(|i| {
                        Ok(RecipeInvariant {
                            name: i.name.clone(),
                            expr: parse_expr(&i.expr, rep)?,
                            expected: i.expected.as_ref().map(RatRepr::to_rat).transpose()?,
                        })
                    })
                    .collect::<Result<_, InputError>>()
                    .map_err(wrap)?;
                let representative = sparse_terms(rep, &r.representative).map_err(wrap)?;
                Some(Recipe { index: r.index, representative, invariants })
            }
            "deferred" => None,
            s => return Err(wrap(InputError::schema(format!("unknown status {s:?}")))),
        };
        let sources = r.invariants.iter().map(|i| i.expected_source.clone().unwrap_or_default()).collect();
        out.push(LoadedRecipe { index: r.index, status: r.status.clone(), recipe, sources });
    }
    Ok(out)
}

pub fn shipped_recipes() -> Vec<LoadedRecipe> {
    load_recipes(RECIPES_JSON, "recipes.json", &flagship()).expect("shipped recipes")
}

/// A schedule row with its representative.
#[derive(Clone, Debug)]
pub struct LoadedSchedule {
    pub index: usize,
    pub status: String,
    pub representative: Vec<Rat>,
    pub schedule: Option<Schedule>,
}

fn uvar(s: &str) -> Result<UVar, InputError> {
    UVar::parse(s).ok_or_else(|| InputError::schema(format!("bad variable {s:?}")))
}

pub fn load_schedules(text: &str, path: &str, rep: &RepSpec) -> Result<Vec<LoadedSchedule>, InputError> {
    let f: DataFile<ScheduleRow> = read_data_file(text, path, "schedules")?;
    check_unique(&f.rows, |r| r.index, path)?;
    let mut out = Vec::new();
    for (k, r) in f.rows.iter().enumerate() {
        let wrap = |e| row_err(path, k, e);
        let schedule = match r.status.as_str() {
            "explicit" => {
                let vars = |v: &[String]| v.iter().map(|s| uvar(s)).collect::<Result<Vec<_>, _>>();
                let steps =
                    r.steps.iter().map(|(o, v)| Ok((*o, uvar(v)?))).collect::<Result<Vec<_>, InputError>>().map_err(wrap)?;
                Some(Schedule {
                    index: r.index,
                    pinned: vars(&r.pinned).map_err(wrap)?,
                    extras: vars(&r.extras).map_err(wrap)?,
                    steps,
                })
            }
            "deferred" | "not-needed" => None,
            s => return Err(wrap(InputError::schema(format!("unknown status {s:?}")))),
        };
        let representative = sparse_point(rep, &r.representative).map_err(wrap)?;
        out.push(LoadedSchedule { index: r.index, status: r.status.clone(), representative, schedule });
    }
    Ok(out)
}

pub fn shipped_schedules() -> Vec<LoadedSchedule> {
    load_schedules(SCHEDULES_JSON, "schedules.json", &flagship()).expect("shipped schedules")
}

/// A stabilizer fixture resolved into a representation and a point.
#[derive(Clone, Debug)]
pub struct LoadedFixture {
    pub name: String,
    pub rep: RepSpec,
    pub point: Vec<Rat>,
    pub expected: usize,
}

pub fn load_fixtures(text: &str, path: &str) -> Result<Vec<LoadedFixture>, InputError> {
    let f: DataFile<FixtureRow> = read_data_file(text, path, "fixtures")?;
    let mut names = BTreeSet::new();
    let mut out = Vec::new();
    for (k, r) in f.rows.iter().enumerate() {
        let wrap = |e| row_err(path, k, e);
        if !names.insert(r.name.clone()) {
            return Err(wrap(InputError::schema(format!("duplicate fixture {:?}", r.name))));
        }
        let rep = r.rep.build().map_err(wrap)?;
        let mut point = vec![Rat::zero(); rep.dim()];
        for (o, c) in &r.point {
            if *o == 0 || *o > rep.dim() {
                return Err(wrap(InputError::schema(format!("ordinal {o} out of range"))));
            }
            point[o - 1] += c.to_rat().map_err(wrap)?;
        }
        out.push(LoadedFixture { name: r.name.clone(), rep, point, expected: r.expected });
    }
    Ok(out)
}

pub fn shipped_fixtures() -> Vec<LoadedFixture> {
    load_fixtures(FIXTURES_JSON, "fixtures.json").expect("shipped fixtures")
}

/// The built-in stabilizer fixtures as a data file.
pub fn builtin_fixture_file() -> DataFile<FixtureRow> {
    let rows = fixtures()
        .into_iter()
        .map(|f| FixtureRow {
            name: f.name.to_string(),
            rep: RepConfig::from_rep(f.point.rep()),
            point: f
                .point
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i + 1, RatRepr::from(c)))
                .collect(),
            expected: f.expected,
        })
        .collect();
    DataFile {
        kind: "fixtures".into(),
        description: "Points with known stabilizer dimensions".into(),
        rows,
    }
}
