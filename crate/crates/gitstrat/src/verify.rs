//! Record-by-record verification of the data files.

use crate::data::*;
use crate::model::{peek_kind, rat_vec_repr, ErratumRow, InputError, RatRepr, StratumRow};
use gitstrat_core::beta::in_chamber;
use gitstrat_core::certificates::{verify_certificate, EmptinessCertificate};
use gitstrat_core::exact::{Rat, RatVec};
use gitstrat_core::invariants::recipe::eval_recipe;
use gitstrat_core::rep::{RepSpec, WeightTable};
use gitstrat_core::stabilizers::{open_orbit_certify, stabilizer_dim, stabilizer_dim_dual};
use gitstrat_core::strata::{is_min_norm_point, stratum, StratumData};
use gitstrat_core::unipotent::{act_unipotent, check_schedule, UnipotentVars};
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Outcome of one record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not checkable, e.g. a deferred recipe.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub id: String,
    pub status: Status,
    pub detail: Value,
}

/// Machine-readable summary of a verification run.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub kind: String,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub rows: Vec<RowReport>,
}

impl VerifyReport {
    pub fn new(kind: &str, rows: Vec<RowReport>) -> Self {
        let count = |s| rows.iter().filter(|r| r.status == s).count();
        VerifyReport {
            kind: kind.into(),
            total: rows.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
            rows,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> Vec<&str> {
        self.rows.iter().filter(|r| r.status == Status::Fail).map(|r| r.id.as_str()).collect()
    }
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn fail(id: String, msg: String) -> RowReport {
    RowReport { id, status: Status::Fail, detail: json!({ "error": msg }) }
}

/// Context shared by the verifiers: the representation and the index map.
pub struct Context {
    pub rep: RepSpec,
    pub weights: WeightTable,
    pub betas: BTreeMap<usize, RatVec>,
}

impl Context {
    pub fn new(rep: RepSpec, betas: &[(usize, RatVec)]) -> Self {
        let weights = rep.weights();
        Context { rep, weights, betas: betas.iter().cloned().collect() }
    }

    pub fn flagship() -> Self {
        Context::new(flagship(), &shipped_betas())
    }

    fn stratum_of(&self, index: usize) -> Result<StratumData, String> {
        let b = self.betas.get(&index).ok_or_else(|| format!("no beta with index {index}"))?;
        stratum(&self.rep, &self.weights, b).map_err(|e| e.to_string())
    }
}

pub fn verify_certificates(ctx: &Context, certs: &[EmptinessCertificate]) -> VerifyReport {
    let rows = certs
        .iter()
        .map(|c| {
            let id = c.index.to_string();
            let s = match stratum(&ctx.rep, &ctx.weights, &c.beta) {
                Ok(s) => s,
                Err(e) => return fail(id, e.to_string()),
            };
            match verify_certificate(&ctx.rep, c, &s) {
                Ok(r) => RowReport {
                    id,
                    status: status(r.passed()),
                    detail: json!({
                        "orthogonality_ok": r.orthogonality_ok,
                        "membership_ok": r.membership_ok,
                        "positivity_ok": r.positivity_ok,
                        "weights_match": r.weights_match,
                        "offending": r.offending,
                        "computed": r.computed.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
                    }),
                },
                Err(e) => fail(id, e.to_string()),
            }
        })
        .collect();
    VerifyReport::new("certificates", rows)
}

/// Each `beta` lies in the chamber and is the min-norm point of its `Z` weights.
pub fn verify_betas(ctx: &Context) -> VerifyReport {
    let chamber = ctx.rep.group().blocks();
    let rows = ctx
        .betas
        .iter()
        .map(|(i, b)| {
            if b.dim() != ctx.rep.group().torus_rank() {
                return fail(i.to_string(), "wrong dimension".into());
            }
            let ch = in_chamber(b, &chamber);
            let mn = is_min_norm_point(&ctx.weights, b);
            RowReport { id: i.to_string(), status: status(ch && mn), detail: json!({ "in_chamber": ch, "min_norm": mn }) }
        })
        .collect();
    VerifyReport::new("betas", rows)
}

pub fn verify_strata(ctx: &Context, rows: &[StratumRow]) -> VerifyReport {
    let out = rows
        .iter()
        .map(|r| {
            let id = r.index.to_string();
            let s = match ctx.stratum_of(r.index) {
                Ok(s) => s,
                Err(e) => return fail(id, e),
            };
            let z_ok = s.z == r.z;
            let w_ok = r.w.as_ref().is_none_or(|w| *w == s.w);
            let cuts_ok = s.cuts == r.cuts;
            RowReport {
                id,
                status: status(z_ok && w_ok && cuts_ok),
                detail: json!({ "z_ok": z_ok, "w_ok": w_ok, "w_checked": r.w.is_some(), "cuts_ok": cuts_ok }),
            }
        })
        .collect();
    VerifyReport::new("strata", out)
}

pub fn verify_recipes(ctx: &Context, recipes: &[LoadedRecipe]) -> VerifyReport {
    let rows = recipes
        .iter()
        .map(|l| {
            let id = l.index.to_string();
            let Some(recipe) = &l.recipe else {
                return RowReport { id, status: Status::Skipped, detail: json!({ "status": l.status }) };
            };
            let s = match ctx.stratum_of(l.index) {
                Ok(s) => s,
                Err(e) => return fail(id, e),
            };
            let in_z = recipe.representative.iter().all(|(o, c)| c.is_zero() || s.z.contains(o));
            let x = recipe.representative_point(ctx.rep.dim());
            match eval_recipe(recipe, &x) {
                Ok(values) => {
                    let ok = recipe.invariants.iter().zip(&values).all(|(inv, v)| inv.expected.as_ref().is_none_or(|e| e == v));
                    let vals: Vec<Value> = recipe
                        .invariants
                        .iter()
                        .zip(&values)
                        .zip(&l.sources)
                        .map(|((inv, v), src)| {
                            json!({
                                "name": inv.name,
                                "value": RatRepr::from(v),
                                "expected": inv.expected.as_ref().map(RatRepr::from),
                                "expected_source": src,
                            })
                        })
                        .collect();
                    RowReport { id, status: status(ok && in_z), detail: json!({ "representative_in_z": in_z, "values": vals }) }
                }
                Err(e) => fail(id, e.to_string()),
            }
        })
        .collect();
    VerifyReport::new("recipes", rows)
}

pub fn verify_schedules(ctx: &Context, schedules: &[LoadedSchedule]) -> VerifyReport {
    let group = ctx.rep.group();
    let rows = schedules
        .iter()
        .map(|l| {
            let id = l.index.to_string();
            let s = match ctx.stratum_of(l.index) {
                Ok(s) => s,
                Err(e) => return fail(id, e),
            };
            let Some(sched) = &l.schedule else {
                return match l.status.as_str() {
                    "not-needed" => RowReport { id, status: status(s.w.is_empty()), detail: json!({ "w_empty": s.w.is_empty() }) },
                    _ => RowReport { id, status: Status::Skipped, detail: json!({ "status": l.status }) },
                };
            };
            let in_z = l.representative.iter().enumerate().all(|(i, c)| c.is_zero() || s.z.contains(&(i + 1)));
            let vars = match UnipotentVars::with_pinned(group, &sched.pinned) {
                Ok(v) => v,
                Err(e) => return fail(id, e.to_string()),
            };
            let polys = act_unipotent(&ctx.rep, &l.representative, &vars, &s.w);
            match check_schedule(&polys, sched, &vars) {
                Ok(r) => RowReport {
                    id,
                    status: status(r.passed() && in_z),
                    detail: json!({
                        "representative_in_z": in_z,
                        "steps": sched.steps.len(),
                        "signs": r.signs,
                        "violation": r.violation.map(|v| json!({
                            "step": v.step, "ordinal": v.ordinal, "pivot": v.pivot.to_string(), "polynomial": v.polynomial,
                        })),
                    }),
                },
                Err(e) => fail(id, e.to_string()),
            }
        })
        .collect();
    VerifyReport::new("schedules", rows)
}

pub fn verify_fixtures(fixtures: &[LoadedFixture]) -> VerifyReport {
    let rows = fixtures
        .iter()
        .map(|f| {
            let d = stabilizer_dim(&f.rep, &f.point);
            let dd = stabilizer_dim_dual(&f.rep, &f.point);
            RowReport {
                id: f.name.clone(),
                status: status(d == f.expected && dd == f.expected),
                detail: json!({
                    "expected": f.expected,
                    "computed": d,
                    "oracle": dd,
                    "group_dim": f.rep.group().dim(),
                    "space_dim": f.rep.dim(),
                    "open_orbit": open_orbit_certify(&f.rep, &f.point),
                }),
            }
        })
        .collect();
    VerifyReport::new("fixtures", rows)
}

/// Each erratum: the printed value fails and the corrected value passes.
pub fn verify_errata(ctx: &Context, certs: &[EmptinessCertificate], errata: &[ErratumRow]) -> VerifyReport {
    let printed = printed_certificates(certs, errata);
    let rows = errata
        .iter()
        .map(|e| {
            let id = format!("{}:{}:{}", e.index, e.field, e.key);
            let find = |v: &[EmptinessCertificate]| v.iter().find(|c| c.index == e.index).cloned();
            let (Some(c), Some(p)) = (find(certs), find(&printed)) else {
                return fail(id, format!("no certificate {}", e.index));
            };
            let rc = verify_certificates(ctx, &[c]);
            let rp = verify_certificates(ctx, &[p]);
            let ok = rc.all_passed() && !rp.all_passed();
            RowReport {
                id,
                status: status(ok),
                detail: json!({ "corrected_passes": rc.all_passed(), "printed_fails": !rp.all_passed(), "printed": rp.rows[0].detail }),
            }
        })
        .collect();
    VerifyReport::new("errata", rows)
}

/// Dispatches on the `kind` field of a data file.
pub fn verify_text(ctx: &Context, text: &str, path: &str) -> Result<VerifyReport, InputError> {
    if text.trim().is_empty() {
        return Ok(verify_certificates(ctx, &[]));
    }
    Ok(match peek_kind(text, path)?.as_str() {
        "certificates" => verify_certificates(ctx, &load_certificates(text, path)?),
        "betas" => {
            let b = load_betas(text, path)?;
            verify_betas(&Context::new(ctx.rep.clone(), &b))
        }
        "strata" => verify_strata(ctx, &load_strata(text, path)?),
        "recipes" => verify_recipes(ctx, &load_recipes(text, path, &ctx.rep)?),
        "schedules" => verify_schedules(ctx, &load_schedules(text, path, &ctx.rep)?),
        "fixtures" => verify_fixtures(&load_fixtures(text, path)?),
        "errata" => verify_errata(ctx, &shipped_certificates(), &load_errata(text, path)?),
        k => return Err(InputError::schema(format!("{path}: unknown kind {k:?}"))),
    })
}

/// A dense rational vector as a JSON array.
pub fn vec_json(v: &RatVec) -> Value {
    serde_json::to_value(rat_vec_repr(v)).expect("serializable")
}

/// Scalars as JSON.
pub fn rat_json(r: &Rat) -> Value {
    serde_json::to_value(RatRepr::from(r)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_certificates_pass() {
        let ctx = Context::flagship();
        let r = verify_certificates(&ctx, &shipped_certificates());
        assert_eq!((r.passed, r.failed), (231, 0), "{:?}", r.failures());
    }

    #[test]
    fn tampered_certificate_is_identified() {
        let ctx = Context::flagship();
        let mut certs = shipped_certificates();
        let (k, o) = certs.iter().enumerate().find_map(|(k, c)| c.weights.keys().next().map(|&o| (k, o))).unwrap();
        *certs[k].weights.get_mut(&o).unwrap() += 1;
        let r = verify_certificates(&ctx, &certs);
        assert_eq!((r.passed, r.failed), (230, 1));
        assert_eq!(r.failures(), vec![certs[k].index.to_string()]);
        assert!(verify_certificates(&ctx, &[]).all_passed());
    }

    #[test]
    fn errata_behave_as_recorded() {
        let ctx = Context::flagship();
        let r = verify_errata(&ctx, &shipped_certificates(), &shipped_errata());
        assert_eq!((r.passed, r.failed), (2, 0), "{:?}", r.rows);
    }

    #[test]
    fn shipped_recipes_schedules_fixtures_pass() {
        let ctx = Context::flagship();
        let r = verify_recipes(&ctx, &shipped_recipes());
        assert!(r.all_passed(), "{:?}", r.rows.iter().filter(|r| r.status == Status::Fail).collect::<Vec<_>>());
        assert!(r.passed >= 20);
        let s = verify_schedules(&ctx, &shipped_schedules());
        assert!(s.all_passed(), "{:?}", s.rows.iter().filter(|r| r.status == Status::Fail).collect::<Vec<_>>());
        assert!(s.passed >= 5);
        let f = verify_fixtures(&shipped_fixtures());
        assert_eq!((f.passed, f.failed), (12, 0));
    }

    #[test]
    fn unknown_kind_is_an_input_error() {
        let ctx = Context::flagship();
        assert!(verify_text(&ctx, r#"{"kind":"nonsense","rows":[]}"#, "x").is_err());
        assert!(verify_text(&ctx, "", "x").unwrap().all_passed());
    }
}
