use std::fmt;

use serde::{Deserialize, Serialize};

use super::cases::{case_table, CaseId, CaseTable, LemmaId, PointSpec};
use super::decompose::{self, enumerate_decompositions, DecompositionRecord};
use super::{local_multiplicity, TigerError};
use crate::ade_lattice::SurfaceSpec;
use crate::divisor_algebra::{DivisorClass, Generator, GramTable, Relation};
use crate::linear_systems::{conditions, riemann_roch_dim};
use crate::rational::{int, Exact, Rational};

/// A generator (or `N`) with an exact coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub generator: String,
    pub coefficient: Exact,
}

impl Term {
    fn new(generator: impl fmt::Display, coefficient: Rational) -> Self {
        Term { generator: generator.to_string(), coefficient: Exact(coefficient) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualSummary {
    /// `F . X` for every base generator `X` of the surface.
    pub pairings: Vec<Term>,
    pub self_intersection: Exact,
    pub canonical_degree: Exact,
    pub dim: i64,
}

/// The `A2` comparison: the subsystem through `Q` of the smaller relation
/// is strictly smaller than the candidate one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxiliaryWitness {
    pub relation: String,
    pub self_intersection: i64,
    pub dim: i64,
    pub subsystem_dim: i64,
    pub candidate_dim: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumptions {
    /// `h^1 = h^2 = 0` for every class whose dimension is counted.
    pub vanishing: bool,
    /// The (-1)-curve meets no exceptional curve.
    pub minus_one_curve_disjoint: bool,
    /// A general member of the residual system avoids the configuration
    /// curves and has the required multiplicity; only the count is checked.
    pub general_member_asserted: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateStatus {
    Verified,
    Discrepancy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TigerCertificate {
    pub spec: SurfaceSpec,
    pub lemma: LemmaId,
    pub case: CaseId,
    /// 1-based index of the singular point carrying the configuration.
    pub singular_point: Option<usize>,
    pub multiple: u32,
    pub configuration: Vec<Term>,
    pub relation: String,
    pub residual: ResidualSummary,
    pub point: PointSpec,
    pub residual_multiplicity: u32,
    /// `dim |F| - r(r+1)/2`.
    pub candidate_dim: i64,
    pub total_multiplicity: Exact,
    pub ratio: Exact,
    /// The tiger on the contracted surface: exceptional curves dropped.
    pub pushforward: Vec<Term>,
    pub auxiliary: Option<AuxiliaryWitness>,
    pub assumptions: Assumptions,
    pub notes: Vec<String>,
    pub status: CertificateStatus,
    #[serde(skip)]
    pub decompositions: Vec<DecompositionRecord>,
}

fn residual_name() -> &'static str {
    "F"
}

fn integer(q: &Rational) -> Result<i64, TigerError> {
    crate::rational::to_i64(q).ok_or_else(|| TigerError::NonIntegral(q.to_string()))
}

impl TigerCertificate {
    /// The certificate of one case on `spec`, with the case's point at index
    /// `point` of the singularity list.
    pub fn for_case(spec: &SurfaceSpec, table: &CaseTable, point: Option<usize>) -> Result<Self, TigerError> {
        let mut gram = GramTable::for_surface(spec, table.uses_minus_one_curve());
        let config = table.configuration(point);
        let relation = Relation::new(table.multiple, config.clone(), residual_name());
        let f = gram.define_residual(&relation)?;
        let res = gram.residual(f).expect("just defined").clone();
        let dim = riemann_roch_dim(res.self_intersection(), res.canonical_degree())?;
        let pairings = gram
            .base_generators()
            .into_iter()
            .map(|g| Term::new(g, res.pairing_with(g).expect("base generators are paired").clone()))
            .collect();
        let residual = ResidualSummary {
            pairings,
            self_intersection: Exact(res.self_intersection().clone()),
            canonical_degree: Exact(res.canonical_degree().clone()),
            dim,
        };

        let candidate_dim = dim - conditions(table.residual_multiplicity);
        let total = local_multiplicity(&config, &table.point, point, table.residual_multiplicity)?;
        let m = int(table.multiple as i64);
        let ratio = &total / &m;

        let mut pushforward = Vec::new();
        if table.uses_minus_one_curve() {
            pushforward.push(Term::new(Generator::MinusOneCurve, int(table.minus_one_coefficient as i64) / &m));
        }
        pushforward.push(Term::new("N", int(1) / &m));

        let auxiliary = table.auxiliary.as_ref().map(|aux| -> Result<_, TigerError> {
            let mut c = DivisorClass::zero();
            for (i, &a) in aux.coefficients.iter().enumerate() {
                c.add_term(Generator::node(point.expect("auxiliary needs a point"), i + 1), int(a as i64));
            }
            let rel = Relation::new(aux.multiple, c, "F~");
            let r = gram.solve_residual(&rel)?;
            let d = riemann_roch_dim(r.self_intersection(), r.canonical_degree())?;
            Ok(AuxiliaryWitness {
                relation: rel.to_string(),
                self_intersection: integer(r.self_intersection())?,
                dim: d,
                subsystem_dim: d - conditions(aux.multiplicity),
                candidate_dim,
            })
        });
        let auxiliary = auxiliary.transpose()?;

        let decompositions: Vec<DecompositionRecord> =
            enumerate_decompositions(table, spec.degree())?.iter().map(DecompositionRecord::from).collect();

        let mut notes = Vec::new();
        if total != int(table.stated_multiplicity as i64) {
            notes.push(format!(
                "stated lower bound {} disagrees with the configuration: mult_Q = {}",
                table.stated_multiplicity, total
            ));
        }
        let open: Vec<String> = decompositions
            .iter()
            .filter(|d| d.obstruction.is_none())
            .map(|d| d.split.to_string())
            .collect();
        if !open.is_empty() {
            notes.push(format!("no obstruction found for splits {}", open.join(", ")));
        }

        let mut cert = TigerCertificate {
            spec: spec.clone(),
            lemma: table.lemma,
            case: table.case,
            singular_point: point.map(|p| p + 1),
            multiple: table.multiple,
            configuration: config.terms().map(|(g, c)| Term::new(g, c.clone())).collect(),
            relation: relation.to_string(),
            residual,
            point: table.point,
            residual_multiplicity: table.residual_multiplicity,
            candidate_dim,
            total_multiplicity: Exact(total),
            ratio: Exact(ratio),
            pushforward,
            auxiliary,
            assumptions: Assumptions {
                vanishing: true,
                minus_one_curve_disjoint: table.uses_minus_one_curve(),
                general_member_asserted: true,
            },
            notes,
            status: CertificateStatus::Verified,
            decompositions,
        };
        if !cert.check().is_empty() {
            cert.status = CertificateStatus::Discrepancy;
        }
        Ok(cert)
    }

    pub fn is_verified(&self) -> bool {
        self.status == CertificateStatus::Verified
    }

    /// Independent re-check of every invariant from the stored data. Returns
    /// the failures; an empty list means the certificate stands.
    pub fn check(&self) -> Vec<String> {
        let mut failures = Vec::new();
        let mut fail = |s: String| failures.push(s);

        let Some(table) = case_table(self.case) else {
            return vec![format!("unknown case {}", self.case)];
        };
        if table.lemma != self.lemma || table.multiple != self.multiple || table.point != self.point {
            fail("case data differs from the case table".into());
        }
        if !table.applies_at(self.spec.degree()) {
            fail(format!("case {} does not apply at degree {}", self.case, self.spec.degree()));
        }
        let point = self.singular_point.map(|p| p - 1);
        if point.map(|p| self.spec.singularities().get(p).copied()) != table.point_type.map(Some) {
            fail("singular point does not carry the case's type".into());
        }

        let mut config = DivisorClass::zero();
        for t in &self.configuration {
            match t.generator.parse::<Generator>() {
                Ok(g) => config.add_term(g, t.coefficient.value().clone()),
                Err(e) => fail(e.to_string()),
            }
        }
        if config != table.configuration(point) {
            fail("configuration differs from the case table".into());
        }

        // configuration + F against m(-K), generator by generator
        let mut gram = GramTable::for_surface(&self.spec, table.uses_minus_one_curve());
        let relation = Relation::new(self.multiple, config.clone(), residual_name());
        match gram.define_residual(&relation) {
            Ok(f) => {
                match gram.relation_defects(&relation, f) {
                    Ok(defects) => {
                        for (g, q) in defects {
                            if q != int(0) {
                                fail(format!("relation defect {q} against {g}"));
                            }
                        }
                    }
                    Err(e) => fail(e.to_string()),
                }
                let res = gram.residual(f).expect("defined");
                for t in &self.residual.pairings {
                    let stored = t.generator.parse::<Generator>().ok().and_then(|g| res.pairing_with(g));
                    if stored != Some(t.coefficient.value()) {
                        fail(format!("F.{} recorded as {}", t.generator, t.coefficient));
                    }
                }
                if res.self_intersection() != self.residual.self_intersection.value()
                    || res.canonical_degree() != self.residual.canonical_degree.value()
                {
                    fail("residual numbers do not recompute".into());
                }
            }
            Err(e) => fail(e.to_string()),
        }
        match riemann_roch_dim(self.residual.self_intersection.value(), self.residual.canonical_degree.value()) {
            Ok(d) if d == self.residual.dim => {}
            _ => fail("dim |F| does not recompute".into()),
        }
        if self.candidate_dim != self.residual.dim - conditions(self.residual_multiplicity)
            || self.candidate_dim < 0
        {
            fail(format!("candidate dimension {} is not a non-negative budget", self.candidate_dim));
        }

        match local_multiplicity(&config, &self.point, point, self.residual_multiplicity) {
            Ok(total) if &total == self.total_multiplicity.value() => {}
            _ => fail("total multiplicity does not recompute".into()),
        }
        let m = int(self.multiple as i64);
        if self.ratio.value() != &(self.total_multiplicity.value() / &m) {
            fail("ratio is not multiplicity / m".into());
        }
        if self.ratio.value() <= &int(2) {
            fail(format!("ratio {} does not exceed 2", self.ratio));
        }

        let splits = decompose::enumerate_splits(&table);
        let analyzer = match decompose::Analyzer::new(&table, self.spec.degree()) {
            Ok(a) => a,
            Err(e) => return [failures, vec![e.to_string()]].concat(),
        };
        if splits.len() != self.decompositions.len()
            || splits.iter().zip(&self.decompositions).any(|(s, d)| *s != d.split)
        {
            fail("decomposition list is not the full split list".into());
        }
        for d in &self.decompositions {
            match &d.obstruction {
                None => fail(format!("split {} has no obstruction", d.split)),
                Some(o) if !o.holds() => fail(format!("split {}: {o} does not hold", d.split)),
                Some(o) => match analyzer.analyze(&d.split) {
                    Ok(a) if a.obstruction.as_ref() == Some(o) => {}
                    _ => fail(format!("split {}: obstruction does not recompute", d.split)),
                },
            }
        }
        if let Some(aux) = &self.auxiliary {
            if aux.subsystem_dim >= aux.candidate_dim {
                fail("auxiliary subsystem is not smaller".into());
            }
        }
        failures
    }

    /// Full check including the status: a discrepancy certificate is
    /// consistent exactly when the check finds something.
    pub fn verify(&self) -> Result<(), Vec<String>> {
        let failures = self.check();
        match (self.status, failures.is_empty()) {
            (CertificateStatus::Verified, true) => Ok(()),
            (CertificateStatus::Discrepancy, false) => Err(failures),
            (CertificateStatus::Verified, false) => Err(failures),
            (CertificateStatus::Discrepancy, true) => Err(vec!["marked discrepancy but every check passes".into()]),
        }
    }
}
