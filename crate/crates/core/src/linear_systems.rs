//! Dimension counts for complete linear systems and point-multiplicity
//! subsystems.
//!
//! On a rational surface `chi(O) = 1`, so Riemann-Roch with `h^1 = h^2 = 0`
//! gives `dim |C| = C.(C - K) / 2`. The vanishing is assumed rather than
//! checked; every [`LinearSystemInfo`] carries a flag saying so. The value
//! is an expected dimension: it may be reported for classes that are not
//! known to be effective.

use crate::divisor_algebra::{AlgebraError, DivisorClass, GramTable};
use crate::rational::{to_i64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinearSystemError {
    #[error("C.(C - K) = {0} is not an even integer")]
    Parity(Rational),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystemInfo {
    pub class: DivisorClass,
    pub self_intersection: Rational,
    pub canonical_degree: Rational,
    pub dim: i64,
    pub vanishing_assumed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsystemInfo {
    pub parent: LinearSystemInfo,
    pub multiplicity: u32,
    pub dim: i64,
}

impl SubsystemInfo {
    /// Non-emptiness is guaranteed exactly when the dimension is `>= 0`.
    pub fn is_nonempty(&self) -> bool {
        self.dim >= 0
    }
}

/// `(C^2 - C.K) / 2` from the two intersection numbers.
pub fn riemann_roch_dim(self_intersection: &Rational, canonical_degree: &Rational) -> Result<i64, LinearSystemError> {
    let twice = self_intersection - canonical_degree;
    match to_i64(&twice) {
        Some(t) if t % 2 == 0 => Ok(t / 2),
        _ => Err(LinearSystemError::Parity(twice)),
    }
}

pub fn dim_complete(table: &GramTable, class: &DivisorClass) -> Result<LinearSystemInfo, LinearSystemError> {
    let self_intersection = table.intersect(class, class)?;
    let canonical_degree = table.intersect(class, &DivisorClass::canonical())?;
    let dim = riemann_roch_dim(&self_intersection, &canonical_degree)?;
    Ok(LinearSystemInfo {
        class: class.clone(),
        self_intersection,
        canonical_degree,
        dim,
        vanishing_assumed: true,
    })
}

/// Number of linear conditions imposed by multiplicity `>= m` at a point.
pub fn conditions(m: u32) -> i64 {
    let m = m as i64;
    m * (m + 1) / 2
}

pub fn subsystem_dim(parent: &LinearSystemInfo, m: u32) -> SubsystemInfo {
    SubsystemInfo { parent: parent.clone(), multiplicity: m, dim: parent.dim - conditions(m) }
}

/// Largest `m` with `dim >= m(m+1)/2`, or `None` when `dim < 0`.
pub fn multiplicity_budget(dim: i64) -> Option<u32> {
    if dim < 0 {
        return None;
    }
    let mut m = 0u32;
    while conditions(m + 1) <= dim {
        m += 1;
    }
    Some(m)
}

/// Largest multiplicity a member of `parent` can be forced to have at a
/// given point. `parent.dim` must be non-negative.
pub fn max_multiplicity_budget(parent: &LinearSystemInfo) -> u32 {
    multiplicity_budget(parent.dim).expect("max_multiplicity_budget needs a non-negative dimension")
}

/// `dim |-mK| = m(m+1)d/2` in closed form.
pub fn anticanonical_dim_closed_form(m: u32, degree: u32) -> i64 {
    conditions(m) * degree as i64
}
