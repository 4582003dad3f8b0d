//! Existence of cylinders, decided from the degree and the singularities.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ade_lattice::{DynkinType, SurfaceSpec};
use crate::tiger_engine::{build_tiger, CaseId};

/// The governing clause behind an anticanonical verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnticanonicalClause {
    /// `d = 1`, every singular point of type `A1, A2, A3` or `D4` (or none).
    DegreeOneMild,
    /// `d = 2`, every singular point of type `A1` (or none).
    DegreeTwoNodes,
    /// `d = 3` and smooth.
    SmoothCubic,
    /// None of the above: a cylinder exists.
    Otherwise,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolarClause {
    /// Picard rank one with one of the three exceptional collections.
    ExceptionalCollection,
    Otherwise,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub anticanonical_cylinder: bool,
    pub h_polar_cylinder: bool,
    pub picard_rank: u32,
    pub anticanonical_clause: AnticanonicalClause,
    pub polar_clause: PolarClause,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "anticanonical {} ({:?}), polar {} ({:?}), rho {}",
            yn(self.anticanonical_cylinder),
            self.anticanonical_clause,
            yn(self.h_polar_cylinder),
            self.polar_clause,
            self.picard_rank
        )
    }
}

fn only(spec: &SurfaceSpec, allowed: &[DynkinType]) -> bool {
    spec.singularities().iter().all(|t| allowed.contains(t))
}

pub fn classify_anticanonical(spec: &SurfaceSpec) -> (bool, AnticanonicalClause) {
    use DynkinType as T;
    let clause = match spec.degree() {
        1 if only(spec, &[T::a(1), T::a(2), T::a(3), T::d(4)]) => AnticanonicalClause::DegreeOneMild,
        2 if only(spec, &[T::a(1)]) => AnticanonicalClause::DegreeTwoNodes,
        3 if spec.singularities().is_empty() => AnticanonicalClause::SmoothCubic,
        _ => AnticanonicalClause::Otherwise,
    };
    (clause == AnticanonicalClause::Otherwise, clause)
}

/// The collections with no polar cylinder for any ample class, each
/// filling the rank budget at `d = 1`.
pub fn exceptional_collections() -> [Vec<DynkinType>; 3] {
    use DynkinType as T;
    [
        vec![T::a(2); 4],
        vec![T::a(1), T::a(1), T::a(3), T::a(3)],
        vec![T::d(4), T::d(4)],
    ]
}

pub fn classify_polar(spec: &SurfaceSpec) -> (bool, PolarClause) {
    let exceptional = spec.picard_rank() == 1
        && exceptional_collections().iter().any(|c| {
            let mut c = c.clone();
            c.sort();
            c == spec.singularities()
        });
    if exceptional {
        (false, PolarClause::ExceptionalCollection)
    } else {
        (true, PolarClause::Otherwise)
    }
}

pub fn classify(spec: &SurfaceSpec) -> Verdict {
    let (anticanonical_cylinder, anticanonical_clause) = classify_anticanonical(spec);
    let (h_polar_cylinder, polar_clause) = classify_polar(spec);
    Verdict {
        anticanonical_cylinder,
        h_polar_cylinder,
        picard_rank: spec.picard_rank(),
        anticanonical_clause,
        polar_clause,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub spec: SurfaceSpec,
    pub verdict: Verdict,
    /// The case of the tiger certificate, when one was demanded and built.
    pub tiger_case: Option<CaseId>,
    pub violations: Vec<String>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn cross_check(spec: &SurfaceSpec) -> ConsistencyReport {
    let verdict = classify(spec);
    let mut violations = Vec::new();
    let mut tiger_case = None;
    if verdict.anticanonical_cylinder {
        match build_tiger(spec) {
            Ok(cert) => {
                tiger_case = Some(cert.case);
                if let Err(failures) = cert.verify() {
                    violations.push(format!("{spec}: certificate for case {} fails: {}", cert.case, failures.join("; ")));
                }
            }
            Err(e) => violations.push(format!("{spec}: {e}")),
        }
    }
    if !verdict.h_polar_cylinder {
        if verdict.anticanonical_cylinder {
            violations.push(format!("{spec}: polar no but anticanonical yes"));
        }
        if spec.degree() != 1 || spec.total_rank() != 8 {
            violations.push(format!("{spec}: exceptional collection off degree 1 or rank 8"));
        }
    }
    ConsistencyReport { spec: spec.clone(), verdict, tiger_case, violations }
}
