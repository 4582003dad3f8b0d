//! Splitting a tiger into a member of `|-K|` plus a member of
//! `|-(m-1)K|`, and ruling each split out.
//!
//! Write the tiger as `N + Z` with `N` general in `|F|` and `Z` the
//! configuration. A split `M1 + M2 = N + Z` gives `Z = Z1 + Z2`
//! coefficientwise and `N = N1 + N2` with `N_j` in `|F_j|`, where
//! `F1 = -K - Z1` and `F2 = -(m-1)K - Z2`. Since `N` contains no
//! configuration curve, neither does `N_j`, so for every configuration
//! curve `C` through the point `Q` we get `mult_Q N_j <= F_j . C`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::cases::{CaseTable, CurveRef};
use super::TigerError;
use crate::divisor_algebra::{DivisorClass, Generator, GramTable, Relation};
use crate::linear_systems::{conditions, multiplicity_budget, riemann_roch_dim};
use crate::rational::{int, to_i64};

/// Where the configuration coefficients go: `first` is the part of the
/// configuration inside the `|-K|` member, the rest goes to the other one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Split {
    pub first: Vec<u32>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub first_minus_one: u32,
}

fn is_zero(x: &u32) -> bool {
    *x == 0
}

impl Split {
    /// Coefficients of the second part, or `None` if this is not a split
    /// of the table's configuration.
    pub fn second(&self, table: &CaseTable) -> Option<(Vec<u32>, u32)> {
        if self.first.len() != table.coefficients.len() {
            return None;
        }
        let nodes = self
            .first
            .iter()
            .zip(&table.coefficients)
            .map(|(a, c)| c.checked_sub(*a))
            .collect::<Option<Vec<_>>>()?;
        let e = table.minus_one_coefficient.checked_sub(self.first_minus_one)?;
        Some((nodes, e))
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.first)?;
        if self.first_minus_one > 0 {
            write!(f, "+{}E", self.first_minus_one)?;
        }
        Ok(())
    }
}

/// Why a split cannot occur for a general `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Obstruction {
    /// `F_part^2 <= -2`: the residual part is not movable, so it cannot
    /// absorb a general member.
    NegativeSelfIntersection { part: u8, self_intersection: i64 },
    /// `F_part . curve = 0` for a curve through `Q`, so that part misses
    /// `Q`; the other part can reach at most `available < required`.
    Disjointness { part: u8, curve: CurveRef, pairing: i64, required: i64, available: i64 },
    /// The two parts together reach multiplicity at most `caps` at `Q`.
    MultiplicityBudget { required: i64, caps: [i64; 2] },
    /// Splitting members form a family of dimension `family_dim`, smaller
    /// than the `candidate_dim` of the system `N` is chosen from. An empty
    /// family has dimension `-1`.
    DimensionGap { candidate_dim: i64, family_dim: i64 },
}

impl Obstruction {
    /// Whether the recorded numbers actually witness the obstruction.
    pub fn holds(&self) -> bool {
        match self {
            Obstruction::NegativeSelfIntersection { self_intersection, .. } => *self_intersection <= -2,
            Obstruction::Disjointness { pairing, required, available, .. } => *pairing == 0 && available < required,
            Obstruction::MultiplicityBudget { required, caps } => {
                caps.iter().any(|c| *c < 0) || caps[0] + caps[1] < *required
            }
            Obstruction::DimensionGap { candidate_dim, family_dim } => family_dim < candidate_dim,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Obstruction::NegativeSelfIntersection { .. } => "negative-self-intersection",
            Obstruction::Disjointness { .. } => "disjointness",
            Obstruction::MultiplicityBudget { .. } => "multiplicity-budget",
            Obstruction::DimensionGap { .. } => "dimension-gap",
        }
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::NegativeSelfIntersection { part, self_intersection } => {
                write!(f, "F{part}^2 = {self_intersection} <= -2")
            }
            Obstruction::Disjointness { part, curve, pairing, required, available } => write!(
                f,
                "F{part}.{curve} = {pairing}, so part {part} misses Q; other part reaches {available} < {required}"
            ),
            Obstruction::MultiplicityBudget { required, caps } => {
                write!(f, "mult_Q caps {} + {} < {required}", caps[0], caps[1])
            }
            Obstruction::DimensionGap { candidate_dim, family_dim } => {
                write!(f, "family dim {family_dim} < {candidate_dim}")
            }
        }
    }
}

/// Numbers of one residual part `F_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartResidual {
    pub multiple: u32,
    pub self_intersection: i64,
    pub canonical_degree: i64,
    pub dim: i64,
    /// `F_j . C` for the curves through `Q`, in point order.
    pub point_pairings: Vec<(CurveRef, i64)>,
}

impl PartResidual {
    /// Upper bound for `mult_Q N_j`; negative when no member avoids the
    /// configuration curves.
    pub fn cap(&self) -> i64 {
        let budget = multiplicity_budget(self.dim).map_or(-1, i64::from);
        self.point_pairings.iter().map(|(_, p)| *p).fold(budget, i64::min)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitAnalysis {
    pub split: Split,
    pub parts: [PartResidual; 2],
    pub obstruction: Option<Obstruction>,
}

/// What gets stored per split in a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRecord {
    #[serde(flatten)]
    pub split: Split,
    pub obstruction: Option<Obstruction>,
}

impl From<&SplitAnalysis> for DecompositionRecord {
    fn from(a: &SplitAnalysis) -> Self {
        DecompositionRecord { split: a.split.clone(), obstruction: a.obstruction.clone() }
    }
}

/// The table with only the case's own point (and `E` when used): other
/// singular points are orthogonal to everything in the construction.
pub fn local_table(case: &CaseTable, degree: u32) -> GramTable {
    let points: Vec<_> = case.point_type.into_iter().collect();
    GramTable::new(degree, &points, case.uses_minus_one_curve())
}

fn local_point(case: &CaseTable) -> Option<usize> {
    case.point_type.map(|_| 0)
}

fn configuration_of(case: &CaseTable, nodes: &[u32], e: u32) -> DivisorClass {
    let point = local_point(case);
    let mut c = DivisorClass::zero();
    for (i, &a) in nodes.iter().enumerate() {
        if a > 0 {
            c.add_term(CurveRef::Node(i + 1).generator(point), int(a as i64));
        }
    }
    if e > 0 {
        c.add_term(Generator::MinusOneCurve, int(e as i64));
    }
    c
}

fn integer(q: &crate::rational::Rational) -> Result<i64, TigerError> {
    to_i64(q).ok_or_else(|| TigerError::NonIntegral(q.to_string()))
}

/// Part numbers through `solve_residual`. Slow; the reference for
/// [`Analyzer`].
fn symbolic_part(
    case: &CaseTable,
    table: &GramTable,
    multiple: u32,
    nodes: &[u32],
    e: u32,
) -> Result<PartResidual, TigerError> {
    let relation = Relation::new(multiple, configuration_of(case, nodes, e), "F");
    let res = table.solve_residual(&relation)?;
    let dim = riemann_roch_dim(res.self_intersection(), res.canonical_degree())?;
    let point = local_point(case);
    let mut point_pairings = Vec::new();
    for c in case.point.curves() {
        let q = res.pairing_with(c.generator(point)).expect("point curves are in the local table");
        point_pairings.push((c, integer(q)?));
    }
    Ok(PartResidual {
        multiple,
        self_intersection: integer(res.self_intersection())?,
        canonical_degree: integer(res.canonical_degree())?,
        dim,
        point_pairings,
    })
}

/// `dim |F| - conditions(r)` for the case's full residual.
pub fn candidate_dim(case: &CaseTable, degree: u32) -> Result<i64, TigerError> {
    let table = local_table(case, degree);
    let full = symbolic_part(case, &table, case.multiple, &case.coefficients, case.minus_one_coefficient)?;
    Ok(full.dim - conditions(case.residual_multiplicity))
}

/// Reference analysis of one split, solving both part relations in the
/// divisor algebra.
pub fn analyze_split(case: &CaseTable, degree: u32, split: &Split) -> Result<SplitAnalysis, TigerError> {
    let (second_nodes, second_e) = split.second(case).ok_or_else(|| TigerError::BadSplit(split.to_string()))?;
    let table = local_table(case, degree);
    let p1 = symbolic_part(case, &table, 1, &split.first, split.first_minus_one)?;
    let p2 = symbolic_part(case, &table, case.multiple - 1, &second_nodes, second_e)?;
    let omega = candidate_dim(case, degree)?;
    let obstruction = find_obstruction(case.residual_multiplicity as i64, omega, [&p1, &p2]);
    Ok(SplitAnalysis { split: split.clone(), parts: [p1, p2], obstruction })
}

/// Integer Gram matrix of the local table, for analysing many splits of
/// one case. Part classes are `k(-K) - Z` over `K, D_1.., E`.
pub struct Analyzer<'a> {
    case: &'a CaseTable,
    gram: Vec<Vec<i64>>,
    /// Basis index of each curve through the point.
    point_curves: Vec<(CurveRef, usize)>,
    omega: i64,
}

impl<'a> Analyzer<'a> {
    pub fn new(case: &'a CaseTable, degree: u32) -> Result<Self, TigerError> {
        let table = local_table(case, degree);
        let gens = table.base_generators();
        let mut gram = Vec::with_capacity(gens.len());
        for &g in &gens {
            let row = gens.iter().map(|&h| integer(&table.pairing(g, h)?)).collect::<Result<Vec<_>, _>>()?;
            gram.push(row);
        }
        let point = local_point(case);
        let point_curves = case
            .point
            .curves()
            .into_iter()
            .map(|c| (c, gens.iter().position(|&g| g == c.generator(point)).expect("point curve in table")))
            .collect();
        Ok(Analyzer { case, gram, point_curves, omega: candidate_dim(case, degree)? })
    }

    pub fn candidate_dim(&self) -> i64 {
        self.omega
    }

    fn part(&self, multiple: u32, nodes: &[u32], e: u32) -> Result<PartResidual, TigerError> {
        let mut v = Vec::with_capacity(self.gram.len());
        v.push(-(multiple as i64));
        v.extend(nodes.iter().map(|&a| -(a as i64)));
        if self.case.uses_minus_one_curve() {
            v.push(-(e as i64));
        }
        let pair = |j: usize| -> i64 { v.iter().zip(&self.gram).map(|(x, row)| x * row[j]).sum() };
        let pairings: Vec<i64> = (0..v.len()).map(pair).collect();
        let self_intersection: i64 = v.iter().zip(&pairings).map(|(x, p)| x * p).sum();
        let canonical_degree = pairings[0];
        let dim = riemann_roch_dim(&int(self_intersection), &int(canonical_degree))?;
        let point_pairings = self.point_curves.iter().map(|&(c, i)| (c, pairings[i])).collect();
        Ok(PartResidual { multiple, self_intersection, canonical_degree, dim, point_pairings })
    }

    pub fn analyze(&self, split: &Split) -> Result<SplitAnalysis, TigerError> {
        let (second_nodes, second_e) =
            split.second(self.case).ok_or_else(|| TigerError::BadSplit(split.to_string()))?;
        let p1 = self.part(1, &split.first, split.first_minus_one)?;
        let p2 = self.part(self.case.multiple - 1, &second_nodes, second_e)?;
        let obstruction = find_obstruction(self.case.residual_multiplicity as i64, self.omega, [&p1, &p2]);
        Ok(SplitAnalysis { split: split.clone(), parts: [p1, p2], obstruction })
    }
}

fn find_obstruction(r: i64, omega: i64, parts: [&PartResidual; 2]) -> Option<Obstruction> {
    for (j, p) in parts.iter().enumerate() {
        if p.self_intersection <= -2 {
            return Some(Obstruction::NegativeSelfIntersection {
                part: j as u8 + 1,
                self_intersection: p.self_intersection,
            });
        }
    }
    if parts.iter().any(|p| p.dim < 0) {
        return Some(Obstruction::DimensionGap { candidate_dim: omega, family_dim: -1 });
    }
    let caps = [parts[0].cap(), parts[1].cap()];
    if r > 0 {
        for (j, p) in parts.iter().enumerate() {
            let other = caps[1 - j];
            if let Some((curve, pairing)) = p.point_pairings.iter().find(|(_, q)| *q == 0) {
                if other < r {
                    return Some(Obstruction::Disjointness {
                        part: j as u8 + 1,
                        curve: *curve,
                        pairing: *pairing,
                        required: r,
                        available: other,
                    });
                }
            }
        }
    }
    let budget = Obstruction::MultiplicityBudget { required: r, caps };
    if budget.holds() {
        return Some(budget);
    }
    let lo = (r - caps[1]).max(0);
    let hi = caps[0].min(r);
    let family_dim = (lo..=hi)
        .map(|f1| {
            let f2 = r - f1;
            parts[0].dim - conditions(f1 as u32) + parts[1].dim - conditions(f2 as u32)
        })
        .max()
        .expect("caps cover r");
    let gap = Obstruction::DimensionGap { candidate_dim: omega, family_dim };
    gap.holds().then_some(gap)
}

/// Every split of the configuration, with mirror images identified when
/// both parts are members of `|-K|`.
pub fn enumerate_splits(case: &CaseTable) -> Vec<Split> {
    let mut bounds = case.coefficients.clone();
    bounds.push(case.minus_one_coefficient);
    let mut out = Vec::new();
    let mut current = vec![0u32; bounds.len()];
    loop {
        let complement: Vec<u32> = bounds.iter().zip(&current).map(|(c, a)| c - a).collect();
        if case.multiple != 2 || current <= complement {
            let (nodes, e) = current.split_at(current.len() - 1);
            out.push(Split { first: nodes.to_vec(), first_minus_one: e[0] });
        }
        // odometer, last digit fastest
        let mut i = bounds.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < bounds[i] {
                current[i] += 1;
                break;
            }
            current[i] = 0;
        }
    }
}

pub fn enumerate_decompositions(case: &CaseTable, degree: u32) -> Result<Vec<SplitAnalysis>, TigerError> {
    let analyzer = Analyzer::new(case, degree)?;
    enumerate_splits(case).iter().map(|s| analyzer.analyze(s)).collect()
}
