//! ADE Dynkin types, their Gram matrices and surface specifications.
//!
//! Node labels follow one fixed convention per family, so that coefficient
//! tables elsewhere in the crate can be written down node by node:
//!
//! * `A_k`: a chain, node `i` meets node `i + 1`.
//! * `D_4`: node 1 is central and meets nodes 2, 3 and 4.
//! * `D_k`, `k >= 5`: node 3 is central, nodes 1 and 2 meet only node 3,
//!   and `3 - 4 - ... - k` is a chain.
//! * `E_k`: node 4 is central, node 1 meets only node 4, node 3 meets
//!   nodes 2 and 4, and `4 - 5 - ... - k` is a chain.
//!
//! Nodes are 1-based everywhere in the public API.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{int, Rational};

/// Largest total rank a surface can carry (`9 - d` with `d = 1`).
pub const MAX_TOTAL_RANK: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("{family}{rank} is not a Dynkin type (A needs k >= 1, D needs k >= 4, E needs k in 6..=8)")]
    InvalidRank { family: Family, rank: u32 },
    #[error("degree {0} is outside 1..=9")]
    InvalidDegree(u32),
    #[error("total rank {total_rank} exceeds the budget 9 - {degree} = {budget} by {}", total_rank - budget)]
    BudgetExceeded { degree: u32, total_rank: u32, budget: u32 },
    #[error("cannot parse singularity token {0:?}")]
    BadToken(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        };
        write!(f, "{c}")
    }
}

/// A simply-laced Dynkin type `A_k`, `D_k` or `E_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    family: Family,
    rank: u32,
}

impl DynkinType {
    pub fn new(family: Family, rank: u32) -> Result<Self, LatticeError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(LatticeError::InvalidRank { family, rank })
        }
    }

    pub fn a(rank: u32) -> Self {
        Self::new(Family::A, rank).expect("invalid A rank")
    }

    pub fn d(rank: u32) -> Self {
        Self::new(Family::D, rank).expect("invalid D rank")
    }

    pub fn e(rank: u32) -> Self {
        Self::new(Family::E, rank).expect("invalid E rank")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Number of nodes, i.e. number of (-2)-curves over the singular point.
    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Every Dynkin type of rank at most `max_rank`, in canonical order.
    pub fn all_up_to(max_rank: u32) -> Vec<DynkinType> {
        let mut out = Vec::new();
        for family in [Family::A, Family::D, Family::E] {
            for rank in 1..=max_rank {
                if let Ok(t) = DynkinType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Edges of the diagram as pairs `(i, j)` with `i < j`, 1-based.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let k = self.rank as usize;
        match self.family {
            Family::A => (1..k).map(|i| (i, i + 1)).collect(),
            Family::D if k == 4 => vec![(1, 2), (1, 3), (1, 4)],
            Family::D => {
                let mut e = vec![(1, 3), (2, 3)];
                e.extend((3..k).map(|i| (i, i + 1)));
                e
            }
            Family::E => {
                let mut e = vec![(1, 4), (2, 3), (3, 4)];
                e.extend((4..k).map(|i| (i, i + 1)));
                e
            }
        }
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges().contains(&(a, b))
    }

    /// Gram matrix of the exceptional curves: `-2` on the diagonal and `1`
    /// for adjacent nodes. Row `i` corresponds to node `i + 1`.
    pub fn gram_table(&self) -> Vec<Vec<Rational>> {
        let k = self.rank as usize;
        let mut g = vec![vec![Rational::zero(); k]; k];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = int(-2);
        }
        for (i, j) in self.edges() {
            g[i - 1][j - 1] = int(1);
            g[j - 1][i - 1] = int(1);
        }
        g
    }

    /// Coefficients of the fundamental cycle, found with Laufer's
    /// algorithm: start from a node and keep adding any node `D_i` with
    /// `Z . D_i > 0` until `Z` is anti-nef on the diagram.
    pub fn fundamental_cycle(&self) -> Vec<u32> {
        let k = self.rank as usize;
        let edges = self.edges();
        let mut z = vec![0i64; k];
        z[0] = 1;
        loop {
            let pairing = |i: usize, z: &[i64]| -> i64 {
                let mut s = -2 * z[i];
                for &(a, b) in &edges {
                    if a - 1 == i {
                        s += z[b - 1];
                    } else if b - 1 == i {
                        s += z[a - 1];
                    }
                }
                s
            };
            match (0..k).find(|&i| pairing(i, &z) > 0) {
                Some(i) => z[i] += 1,
                None => break,
            }
        }
        z.into_iter().map(|c| c as u32).collect()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = LatticeError;

    /// Parses tokens such as `A4`, `D5`, `E8`. A malformed token gives
    /// [`LatticeError::BadToken`]; a well-formed token naming a
    /// non-existent type gives [`LatticeError::InvalidRank`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::BadToken(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let rank: u32 = digits.parse().map_err(|_| bad())?;
        DynkinType::new(family, rank)
    }
}

impl Serialize for DynkinType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DynkinType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A du Val del Pezzo surface described by its degree and the multiset of
/// its singular points. Singularities are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SurfaceSpec {
    degree: u32,
    singularities: Vec<DynkinType>,
}

/// Checks the degree range and the rank budget `sum of ranks <= 9 - d`.
pub fn validate_spec(degree: u32, singularities: &[DynkinType]) -> Result<SurfaceSpec, LatticeError> {
    if !(1..=9).contains(&degree) {
        return Err(LatticeError::InvalidDegree(degree));
    }
    let total_rank: u32 = singularities.iter().map(DynkinType::rank).sum();
    let budget = 9 - degree;
    if total_rank > budget {
        return Err(LatticeError::BudgetExceeded { degree, total_rank, budget });
    }
    let mut singularities = singularities.to_vec();
    singularities.sort();
    Ok(SurfaceSpec { degree, singularities })
}

impl SurfaceSpec {
    pub fn new(degree: u32, singularities: &[DynkinType]) -> Result<Self, LatticeError> {
        validate_spec(degree, singularities)
    }

    pub fn smooth(degree: u32) -> Result<Self, LatticeError> {
        validate_spec(degree, &[])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn singularities(&self) -> &[DynkinType] {
        &self.singularities
    }

    pub fn total_rank(&self) -> u32 {
        self.singularities.iter().map(DynkinType::rank).sum()
    }

    /// `rho(X) = 10 - d - total rank`, at least 1 for every valid spec.
    pub fn picard_rank(&self) -> u32 {
        10 - self.degree - self.total_rank()
    }

    pub fn count(&self, t: DynkinType) -> usize {
        self.singularities.iter().filter(|&&s| s == t).count()
    }

    /// Index of the first singular point of type `t`.
    pub fn position(&self, t: DynkinType) -> Option<usize> {
        self.singularities.iter().position(|&s| s == t)
    }
}

pub fn picard_rank(spec: &SurfaceSpec) -> u32 {
    spec.picard_rank()
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} ", self.degree)?;
        if self.singularities.is_empty() {
            return write!(f, "smooth");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.singularities.len() {
            let t = self.singularities[i];
            let n = self.count(t);
            if !first {
                write!(f, "+")?;
            }
            if n > 1 {
                write!(f, "{n}")?;
            }
            write!(f, "{t}")?;
            first = false;
            i += n;
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct RawSpec {
    degree: u32,
    singularities: Vec<DynkinType>,
}

impl<'de> Deserialize<'de> for SurfaceSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawSpec::deserialize(deserializer)?;
        validate_spec(raw.degree, &raw.singularities).map_err(serde::de::Error::custom)
    }
}

/// Every valid surface specification, degrees 1 to 9, in sorted order.
pub fn enumerate_specs() -> Vec<SurfaceSpec> {
    fn extend(
        types: &[DynkinType],
        start: usize,
        budget: u32,
        current: &mut Vec<DynkinType>,
        out: &mut Vec<Vec<DynkinType>>,
    ) {
        out.push(current.clone());
        for (i, &t) in types.iter().enumerate().skip(start) {
            if t.rank() <= budget {
                current.push(t);
                extend(types, i, budget - t.rank(), current, out);
                current.pop();
            }
        }
    }

    let types = DynkinType::all_up_to(MAX_TOTAL_RANK);
    let mut specs = Vec::new();
    for degree in 1..=9 {
        let mut collections = Vec::new();
        extend(&types, 0, 9 - degree, &mut Vec::new(), &mut collections);
        for c in collections {
            specs.push(validate_spec(degree, &c).expect("enumeration respects the budget"));
        }
    }
    specs.sort();
    specs
}

/// Leading principal minors of a square rational matrix, computed by
/// Gaussian elimination over the rationals.
pub fn leading_minors(m: &[Vec<Rational>]) -> Vec<Rational> {
    let n = m.len();
    let mut minors = Vec::with_capacity(n);
    for size in 1..=n {
        let sub: Vec<Vec<Rational>> = m[..size].iter().map(|r| r[..size].to_vec()).collect();
        minors.push(determinant(sub));
    }
    minors
}

pub fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = int(1);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// Negative definite iff the k-th leading minor has sign `(-1)^k`.
pub fn is_negative_definite(m: &[Vec<Rational>]) -> bool {
    leading_minors(m).iter().enumerate().all(|(i, minor)| {
        if i % 2 == 0 {
            minor.is_negative()
        } else {
            minor.is_positive()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn as_ints(g: &[Vec<Rational>]) -> Vec<Vec<i64>> {
        g.iter()
            .map(|r| r.iter().map(|q| crate::rational::to_i64(q).unwrap()).collect())
            .collect()
    }

    #[test]
    fn small_gram_tables() {
        assert_eq!(as_ints(&DynkinType::a(1).gram_table()), vec![vec![-2]]);
        assert_eq!(as_ints(&DynkinType::a(2).gram_table()), vec![vec![-2, 1], vec![1, -2]]);
        let d4 = as_ints(&DynkinType::d(4).gram_table());
        assert_eq!(d4[0], vec![-2, 1, 1, 1]);
        assert_eq!(d4[1], vec![1, -2, 0, 0]);
        assert_eq!(d4[2], vec![1, 0, -2, 0]);
        assert_eq!(d4[3], vec![1, 0, 0, -2]);
    }

    #[test]
    fn labeling_conventions() {
        let d6 = DynkinType::d(6);
        assert!(d6.adjacent(1, 3) && d6.adjacent(2, 3) && d6.adjacent(3, 4) && d6.adjacent(5, 6));
        assert!(!d6.adjacent(1, 2) && !d6.adjacent(2, 4));
        let e7 = DynkinType::e(7);
        assert!(e7.adjacent(1, 4) && e7.adjacent(3, 2) && e7.adjacent(4, 3) && e7.adjacent(6, 7));
        assert!(!e7.adjacent(1, 3) && !e7.adjacent(2, 4));
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(DynkinType::new(Family::A, 0).is_err());
        assert!(DynkinType::new(Family::D, 3).is_err());
        assert!(DynkinType::new(Family::E, 5).is_err());
        assert!(DynkinType::new(Family::E, 9).is_err());
        assert_eq!(DynkinType::all_up_to(8).len(), 16);
    }

    #[test]
    fn fundamental_cycles() {
        assert_eq!(DynkinType::a(5).fundamental_cycle(), vec![1; 5]);
        assert_eq!(DynkinType::d(4).fundamental_cycle(), vec![2, 1, 1, 1]);
        assert_eq!(DynkinType::d(7).fundamental_cycle(), vec![1, 1, 2, 2, 2, 2, 1]);
        assert_eq!(DynkinType::e(6).fundamental_cycle(), vec![2, 1, 2, 3, 2, 1]);
        assert_eq!(DynkinType::e(7).fundamental_cycle(), vec![2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(DynkinType::e(8).fundamental_cycle(), vec![3, 2, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn token_parsing() {
        assert_eq!("E8".parse::<DynkinType>().unwrap(), DynkinType::e(8));
        assert_eq!("A12".parse::<DynkinType>().unwrap().rank(), 12);
        assert!(matches!("Q3".parse::<DynkinType>(), Err(LatticeError::BadToken(_))));
        assert!(matches!("A".parse::<DynkinType>(), Err(LatticeError::BadToken(_))));
        assert!(matches!("D+4".parse::<DynkinType>(), Err(LatticeError::BadToken(_))));
        assert!(matches!("E9".parse::<DynkinType>(), Err(LatticeError::InvalidRank { .. })));
    }

    #[test]
    fn validate_examples() {
        let a2 = DynkinType::a(2);
        assert!(validate_spec(1, &[a2; 4]).is_ok());
        assert!(validate_spec(9, &[]).is_ok());
        let err = validate_spec(3, &[DynkinType::e(7)]).unwrap_err();
        assert_eq!(err, LatticeError::BudgetExceeded { degree: 3, total_rank: 7, budget: 6 });
        assert!(err.to_string().contains("by 1"));
        assert_eq!(validate_spec(0, &[]), Err(LatticeError::InvalidDegree(0)));
        assert_eq!(validate_spec(10, &[]), Err(LatticeError::InvalidDegree(10)));
    }

    #[test]
    fn picard_rank_examples() {
        let a2 = DynkinType::a(2);
        assert_eq!(SurfaceSpec::new(1, &[a2; 4]).unwrap().picard_rank(), 1);
        assert_eq!(SurfaceSpec::smooth(9).unwrap().picard_rank(), 1);
        let d4 = DynkinType::d(4);
        assert_eq!(SurfaceSpec::new(1, &[d4, d4]).unwrap().picard_rank(), 1);
        assert_eq!(SurfaceSpec::smooth(3).unwrap().picard_rank(), 7);
    }

    #[test]
    fn display_groups_repeats() {
        let s = SurfaceSpec::new(1, &[DynkinType::a(3), DynkinType::a(1), DynkinType::a(3), DynkinType::a(1)]).unwrap();
        assert_eq!(s.to_string(), "d=1 2A1+2A3");
        assert_eq!(SurfaceSpec::smooth(5).unwrap().to_string(), "d=5 smooth");
    }

    #[test]
    fn spec_space_respects_budget() {
        let specs = enumerate_specs();
        assert!(specs.iter().all(|s| s.total_rank() <= 9 - s.degree()));
        assert!(specs.iter().all(|s| s.picard_rank() >= 1));
        // degree 9 and 8: the smooth surface, plus A1 in degree 8
        assert_eq!(specs.iter().filter(|s| s.degree() == 9).count(), 1);
        assert_eq!(specs.iter().filter(|s| s.degree() == 8).count(), 2);
        let mut dedup = specs.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), specs.len());
    }
}
