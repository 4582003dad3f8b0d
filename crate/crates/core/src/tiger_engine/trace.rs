//! Step-by-step arithmetic of a certificate, one equation per line with
//! both sides evaluated.

use super::certificate::TigerCertificate;
use super::decompose::Analyzer;
use super::{case_table, TigerError};
use crate::divisor_algebra::{Generator, GramTable, Relation};
use crate::linear_systems::conditions;
use crate::rational::{int, Rational};

fn paren(q: &Rational) -> String {
    if q < &int(0) {
        format!("({q})")
    } else {
        q.to_string()
    }
}

pub fn render(cert: &TigerCertificate) -> Result<Vec<String>, TigerError> {
    let table = case_table(cert.case).ok_or_else(|| TigerError::NoCaseApplies(cert.case.to_string()))?;
    let point = cert.singular_point.map(|p| p - 1);
    let config = table.configuration(point);
    let m = int(cert.multiple as i64);
    let mut gram = GramTable::for_surface(&cert.spec, table.uses_minus_one_curve());
    let relation = Relation::new(cert.multiple, config.clone(), "F");
    let f = gram.define_residual(&relation)?;
    let res = gram.residual(f).expect("defined").clone();

    let mut out = vec![
        format!("surface: {}", cert.spec),
        format!("case: {} ({}), m = {}", cert.case, cert.lemma, cert.multiple),
        format!("relation: {}", relation),
    ];
    for g in gram.base_generators() {
        let minus_k = -gram.pairing(Generator::Canonical, g)?;
        let zg = gram.intersect_generator(&config, g)?;
        out.push(format!(
            "F.{g} = {}*{} - {} = {}",
            m,
            paren(&minus_k),
            paren(&zg),
            res.pairing_with(g).expect("paired")
        ));
    }
    let fk = res.canonical_degree().clone();
    let zf = gram.intersect_generator(&config, f)?;
    out.push(format!(
        "F^2 = {}*{} - {} = {}",
        m,
        paren(&-fk.clone()),
        paren(&zf),
        res.self_intersection()
    ));
    out.push(format!(
        "dim|F| = ({} - {})/2 = {}",
        res.self_intersection(),
        paren(&fk),
        cert.residual.dim
    ));
    let r = cert.residual_multiplicity;
    out.push(format!("conditions({r}) = {r}*{}/2 = {}", r + 1, conditions(r)));
    out.push(format!(
        "dim Omega = {} - {} = {}",
        cert.residual.dim,
        conditions(r),
        cert.candidate_dim
    ));
    let through: Vec<String> = table
        .point
        .curves()
        .iter()
        .map(|c| config.coefficient(c.generator(point)).to_string())
        .chain(std::iter::once(r.to_string()))
        .collect();
    out.push(format!("mult_Q = {} = {}", through.join(" + "), cert.total_multiplicity));
    out.push(format!("ratio = {}/{} = {} > 2", cert.total_multiplicity, m, cert.ratio));
    if let Some(aux) = &cert.auxiliary {
        out.push(format!(
            "auxiliary {}: dim = {}, through Q: {} < {}",
            aux.relation, aux.dim, aux.subsystem_dim, aux.candidate_dim
        ));
    }
    let analyzer = Analyzer::new(&table, cert.spec.degree())?;
    for (i, d) in cert.decompositions.iter().enumerate() {
        let a = analyzer.analyze(&d.split)?;
        let [p1, p2] = &a.parts;
        let verdict = match &d.obstruction {
            Some(o) => format!("{} [{o}]", o.kind()),
            None => "no obstruction".to_string(),
        };
        out.push(format!(
            "split {i} {}: F1^2 = {}, dim F1 = ({} - {})/2 = {}; F2^2 = {}, dim F2 = ({} - {})/2 = {}; {verdict}",
            d.split,
            p1.self_intersection,
            p1.self_intersection,
            paren(&int(p1.canonical_degree)),
            p1.dim,
            p2.self_intersection,
            p2.self_intersection,
            paren(&int(p2.canonical_degree)),
            p2.dim,
        ));
    }
    for n in &cert.notes {
        out.push(format!("note: {n}"));
    }
    out.push(format!("status: {:?}", cert.status).to_lowercase());
    Ok(out)
}
