//! Structured reports of the enumeration, stratum and substrata commands.

use crate::model::{format_primitive, rat_vec_repr, RatRepr};
use gitstrat_core::beta::{in_chamber, BetaRecord};
use gitstrat_core::exact::RatVec;
use gitstrat_core::rep::{RepSpec, WeightTable};
use gitstrat_core::strata::{block_ranges, is_min_norm_point, stratum, StrataError, StratumData};
use gitstrat_core::substrata::{
    proposition_applicability, substrata_direct, substrata_scan, substrata_scan_realizable,
};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, Serialize)]
pub struct BetaEntry {
    /// 1-based position in canonical order.
    pub position: usize,
    /// External index, when known.
    pub index: Option<usize>,
    pub beta: Vec<RatRepr>,
    pub norm_sq: RatRepr,
    /// Primitive integer tuple and denominator.
    pub primitive: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub count: usize,
    pub betas: Vec<BetaEntry>,
}

impl EnumerationReport {
    pub fn new(records: &[BetaRecord], index: &BTreeMap<RatVec, usize>) -> Self {
        let betas = records
            .iter()
            .enumerate()
            .map(|(k, r)| BetaEntry {
                position: k + 1,
                index: index.get(&r.beta).copied(),
                beta: rat_vec_repr(&r.beta),
                norm_sq: RatRepr::from(&r.norm_sq),
                primitive: format_primitive(&r.beta),
            })
            .collect();
        EnumerationReport { count: records.len(), betas }
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["position", "index", "norm_sq", "beta"])?;
        for b in &self.betas {
            let idx = b.index.map(|i| i.to_string()).unwrap_or_default();
            w.write_record([b.position.to_string(), idx, format!("{}/{}", b.norm_sq.num, b.norm_sq.den), b.primitive.clone()])?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf-8"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoordinateEntry {
    pub ordinal: usize,
    pub label: String,
}

fn coords(rep: &RepSpec, ordinals: &[usize]) -> Vec<CoordinateEntry> {
    ordinals.iter().map(|&o| CoordinateEntry { ordinal: o, label: format!("x{}", rep.coordinate(o).label()) }).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumReport {
    pub index: Option<usize>,
    pub beta: Vec<RatRepr>,
    pub norm_sq: RatRepr,
    pub lambda: Vec<i64>,
    pub z: Vec<CoordinateEntry>,
    pub w: Vec<CoordinateEntry>,
    /// Cut positions per group factor.
    pub cuts: Vec<Vec<usize>>,
    /// 1-based inclusive torus index ranges of the diagonal blocks.
    pub blocks: Vec<[usize; 2]>,
    /// Exponent of `det` per diagonal block.
    pub chi: Vec<i64>,
}

impl StratumReport {
    pub fn new(rep: &RepSpec, s: &StratumData, index: Option<usize>) -> Self {
        StratumReport {
            index,
            beta: rat_vec_repr(&s.beta),
            norm_sq: RatRepr::from(&s.norm_sq),
            lambda: s.lambda.clone(),
            z: coords(rep, &s.z),
            w: coords(rep, &s.w),
            cuts: s.cuts.clone(),
            blocks: block_ranges(&s.cuts, rep.group()).into_iter().map(|r| [r.start + 1, r.end]).collect(),
            chi: s.chi.clone(),
        }
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["set", "ordinal", "label"])?;
        for (name, set) in [("Z", &self.z), ("W", &self.w)] {
            for c in set {
                w.write_record([name, &c.ordinal.to_string(), &c.label])?;
            }
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf-8"))
    }
}

/// Why a vector was rejected as a stratum label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotInFrakB {
    Dimension,
    NotInChamber,
    NotMinNorm,
    Strata(StrataError),
}

impl std::fmt::Display for NotInFrakB {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotInFrakB::Dimension => f.write_str("wrong dimension"),
            NotInFrakB::NotInChamber => f.write_str("not in the Weyl chamber"),
            NotInFrakB::NotMinNorm => f.write_str("not a min-norm point of any set of weights"),
            NotInFrakB::Strata(e) => write!(f, "{e}"),
        }
    }
}

/// Stratum data for a member of the chamber-normalized set of min-norm points.
pub fn stratum_checked(rep: &RepSpec, weights: &WeightTable, beta: &RatVec) -> Result<StratumData, NotInFrakB> {
    if beta.dim() != rep.group().torus_rank() {
        return Err(NotInFrakB::Dimension);
    }
    if !in_chamber(beta, &rep.group().blocks()) {
        return Err(NotInFrakB::NotInChamber);
    }
    if !is_min_norm_point(weights, beta) {
        return Err(NotInFrakB::NotMinNorm);
    }
    stratum(rep, weights, beta).map_err(NotInFrakB::Strata)
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateEntry {
    pub beta_prime: Vec<RatRepr>,
    pub beta_double_prime: Vec<RatRepr>,
    /// `None` when `beta' + beta` is not conjugate to a known value.
    pub z_contained: Option<bool>,
    pub m_contained: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubstrataReport {
    pub index: Option<usize>,
    pub beta: Vec<RatRepr>,
    /// Weyl-scan candidates before the realizability filter.
    pub scan_raw: usize,
    pub scan: Vec<Vec<RatRepr>>,
    pub direct: Vec<Vec<RatRepr>>,
    pub agreement: bool,
    pub candidates: Vec<CandidateEntry>,
}

/// Both candidate routes for a stratum and their comparison.
pub fn substrata_report(
    rep: &RepSpec,
    weights: &WeightTable,
    s: &StratumData,
    frak_b: &[RatVec],
    index: Option<usize>,
) -> SubstrataReport {
    let group = rep.group();
    let raw = substrata_scan(s, frak_b, group);
    let scan = substrata_scan_realizable(s, weights, frak_b, group);
    let direct = substrata_direct(s, weights, group);
    let known: BTreeSet<RatVec> = frak_b.iter().cloned().collect();
    let candidates = direct
        .iter()
        .map(|b| {
            let app = proposition_applicability(s, b, weights, &known, group).ok();
            CandidateEntry {
                beta_prime: rat_vec_repr(b),
                beta_double_prime: rat_vec_repr(&s.beta.add(b)),
                z_contained: app.map(|a| a.z_contained),
                m_contained: app.map(|a| a.m_contained),
            }
        })
        .collect();
    SubstrataReport {
        index,
        beta: rat_vec_repr(&s.beta),
        scan_raw: raw.len(),
        scan: scan.iter().map(rat_vec_repr).collect(),
        direct: direct.iter().map(rat_vec_repr).collect(),
        agreement: scan == direct,
        candidates,
    }
}
