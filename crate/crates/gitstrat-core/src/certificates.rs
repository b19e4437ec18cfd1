//! Verification of destabilizing 1-PS certificates for empty strata.
//!
//! A certificate names coordinates of `Z_beta` that can be eliminated and an
//! integral 1-PS `lambda` orthogonal to `beta`. It proves `Z^ss_beta` empty
//! when `lambda` has positive weight on every remaining coordinate.

use crate::exact::{Rat, RatVec};
use crate::rep::RepSpec;
use crate::strata::StratumData;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use num_traits::Zero;

/// One emptiness certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmptinessCertificate {
    /// Index of `beta` in the external numbering.
    pub index: usize,
    pub beta: RatVec,
    /// Ordinals of `Z_beta` claimed to be eliminable.
    pub zeroed: Vec<usize>,
    pub lambda: Vec<i64>,
    /// Expected weights of `lambda` on selected ordinals.
    pub weights: BTreeMap<usize, i64>,
}

/// Outcome of checking one certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub index: usize,
    /// Per-block sums of `lambda` vanish and `(lambda, beta) = 0`.
    pub orthogonality_ok: bool,
    /// `zeroed` lists distinct ordinals of `I_beta`.
    pub membership_ok: bool,
    /// Every ordinal of `I_beta \ zeroed` has positive weight.
    pub positivity_ok: bool,
    /// Every expected weight equals the computed one.
    pub weights_match: bool,
    /// Weight of `lambda` on every ordinal of `I_beta \ zeroed`.
    pub computed: BTreeMap<usize, i64>,
    /// Ordinals whose weight is non-positive or disagrees with the expected value.
    pub offending: Vec<usize>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.orthogonality_ok && self.membership_ok && self.positivity_ok && self.weights_match
    }
}

/// Structural problems that prevent verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateError {
    /// `zeroed` or an expected weight names an ordinal outside `I_beta`.
    Malformed { index: usize, ordinal: usize },
    /// The stratum data belongs to a different `beta`.
    BetaMismatch { index: usize },
    DimensionMismatch { index: usize },
    /// No stratum was supplied for the certificate's `beta`.
    MissingStratum { index: usize },
}

impl fmt::Display for CertificateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateError::Malformed { index, ordinal } => {
                write!(f, "certificate {index}: ordinal {ordinal} is not in I_beta")
            }
            CertificateError::BetaMismatch { index } => write!(f, "certificate {index}: stratum has a different beta"),
            CertificateError::DimensionMismatch { index } => write!(f, "certificate {index}: lambda has the wrong dimension"),
            CertificateError::MissingStratum { index } => write!(f, "certificate {index}: no stratum for its beta"),
        }
    }
}

/// Pairing of an integral 1-PS with a raw weight.
pub fn lambda_weight(lambda: &[i64], raw: &[i64]) -> i64 {
    lambda.iter().zip(raw).map(|(a, b)| a * b).sum()
}

/// Checks a certificate against the stratum of its `beta`.
pub fn verify_certificate(
    rep: &RepSpec,
    cert: &EmptinessCertificate,
    stratum: &StratumData,
) -> Result<CertificateReport, CertificateError> {
    let index = cert.index;
    if stratum.beta != cert.beta {
        return Err(CertificateError::BetaMismatch { index });
    }
    let group = rep.group();
    if cert.lambda.len() != group.torus_rank() {
        return Err(CertificateError::DimensionMismatch { index });
    }
    for &o in cert.zeroed.iter().chain(cert.weights.keys()) {
        if stratum.z.binary_search(&o).is_err() {
            return Err(CertificateError::Malformed { index, ordinal: o });
        }
    }
    let block_sums_ok = group.blocks().into_iter().all(|b| cert.lambda[b].iter().sum::<i64>() == 0);
    let pairing: Rat = cert.lambda.iter().zip(cert.beta.as_slice()).map(|(l, b)| b * Rat::from_integer((*l).into())).sum();
    let orthogonality_ok = block_sums_ok && pairing.is_zero();

    let mut computed = BTreeMap::new();
    let mut offending = Vec::new();
    for &o in &stratum.z {
        if cert.zeroed.contains(&o) {
            continue;
        }
        let w = lambda_weight(&cert.lambda, &rep.raw_weight(rep.coordinate(o)));
        if w <= 0 {
            offending.push(o);
        }
        computed.insert(o, w);
    }
    let positivity_ok = offending.is_empty() && !computed.is_empty();
    // Every zeroed ordinal must be a distinct member of Z_beta.
    let mut z = cert.zeroed.clone();
    z.sort_unstable();
    z.dedup();
    let membership_ok = z.len() == cert.zeroed.len();
    let mut weights_match = true;
    for (o, &w) in &cert.weights {
        match computed.get(o) {
            Some(&c) if c == w => {}
            _ => {
                weights_match = false;
                offending.push(*o);
            }
        }
    }
    offending.sort_unstable();
    offending.dedup();
    Ok(CertificateReport { index, orthogonality_ok, membership_ok, positivity_ok, weights_match, computed, offending })
}

/// Aggregate result of [`verify_all`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationSummary {
    pub passed: usize,
    pub failed: usize,
    pub reports: Vec<CertificateReport>,
}

impl VerificationSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Indices of failing certificates.
    pub fn failures(&self) -> Vec<usize> {
        self.reports.iter().filter(|r| !r.passed()).map(|r| r.index).collect()
    }
}

/// Verifies every certificate against the stratum of its `beta`.
pub fn verify_all(
    rep: &RepSpec,
    certs: &[EmptinessCertificate],
    strata: &BTreeMap<RatVec, StratumData>,
) -> Result<VerificationSummary, CertificateError> {
    let mut summary = VerificationSummary::default();
    for cert in certs {
        let s = strata.get(&cert.beta).ok_or(CertificateError::MissingStratum { index: cert.index })?;
        let r = verify_certificate(rep, cert, s)?;
        if r.passed() {
            summary.passed += 1;
        } else {
            summary.failed += 1;
        }
        summary.reports.push(r);
    }
    Ok(summary)
}
