//! Tiger constructions as checkable certificates.
//!
//! Each case fixes a relation `m(-K) ~ Z + F`, a point `Q` and a required
//! multiplicity `r` of a general `N` in `|F|` at `Q`. The tiger is
//! `(Z + N) / m`; it is not log canonical once `mult_Q(Z + N) > 2m`.

pub mod cases;
pub mod certificate;
pub mod decompose;
pub mod trace;

pub use cases::{case_table, case_tables, CaseId, CaseTable, CurveRef, LemmaId, PointSpec};
pub use certificate::{Assumptions, AuxiliaryWitness, CertificateStatus, ResidualSummary, Term, TigerCertificate};
pub use decompose::{enumerate_decompositions, DecompositionRecord, Obstruction, Split};

use crate::ade_lattice::SurfaceSpec;
use crate::divisor_algebra::{AlgebraError, DivisorClass};
use crate::linear_systems::LinearSystemError;
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TigerError {
    #[error("no tiger construction covers {0}")]
    NoCaseApplies(String),
    #[error("point {0} lies on a curve outside the configuration")]
    PointOffConfiguration(String),
    #[error("{0} is not a split of the configuration")]
    BadSplit(String),
    #[error("expected an integer, got {0}")]
    NonIntegral(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    LinearSystem(#[from] LinearSystemError),
}

/// Multiplicity at the point of `config + N` where `N` has multiplicity
/// `residual_mult` there: the coefficients of the curves through the
/// point (smooth, meeting transversally) plus `residual_mult`.
pub fn local_multiplicity(
    config: &DivisorClass,
    point: &PointSpec,
    point_index: Option<usize>,
    residual_mult: u32,
) -> Result<Rational, TigerError> {
    let mut total = int(residual_mult as i64);
    for c in point.curves() {
        if matches!(c, CurveRef::Node(_)) && point_index.is_none() {
            return Err(TigerError::PointOffConfiguration(point.to_string()));
        }
        let coefficient = config.coefficient(c.generator(point_index));
        if coefficient == int(0) {
            return Err(TigerError::PointOffConfiguration(point.to_string()));
        }
        total += coefficient;
    }
    Ok(total)
}

/// Every case applicable to `spec` with the index of its singular point,
/// in dispatch order: degree-based constructions first, then singular
/// points in table order.
pub fn candidate_cases(spec: &SurfaceSpec) -> Vec<(CaseTable, Option<usize>)> {
    let d = spec.degree();
    case_tables()
        .into_iter()
        .filter(|t| t.applies_at(d))
        .filter_map(|t| match t.point_type {
            None => Some((t, None)),
            Some(ty) => spec.position(ty).map(|i| (t, Some(i))),
        })
        .collect()
}

pub fn select_case(spec: &SurfaceSpec) -> Option<(CaseTable, Option<usize>)> {
    candidate_cases(spec).into_iter().next()
}

/// The first applicable case whose certificate verifies. When none does,
/// the first case's discrepancy certificate is returned.
pub fn build_tiger(spec: &SurfaceSpec) -> Result<TigerCertificate, TigerError> {
    let mut first = None;
    for (table, point) in candidate_cases(spec) {
        let cert = TigerCertificate::for_case(spec, &table, point)?;
        if cert.is_verified() {
            return Ok(cert);
        }
        first.get_or_insert(cert);
    }
    first.ok_or_else(|| TigerError::NoCaseApplies(spec.to_string()))
}
