//! The `classify`, `tiger` and `sweep` commands as plain functions
//! returning what to print and the exit code.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::ade_lattice::{enumerate_specs, SurfaceSpec};
use crate::classifier::{classify, cross_check, Verdict};
use crate::document::{parse_spec_file, CertificateDocument, SpecFileError};
use crate::tiger_engine::{build_tiger, trace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_ANTICANONICAL: i32 = 10;
pub const EXIT_NO_CYLINDER: i32 = 20;
pub const EXIT_DISCREPANCY: i32 = 30;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        stderr.push('\n');
        Outcome { code, stdout: String::new(), stderr }
    }
}

/// Exit code of `classify` for a verdict.
pub fn verdict_code(v: &Verdict) -> i32 {
    match (v.anticanonical_cylinder, v.h_polar_cylinder) {
        (true, _) => EXIT_OK,
        (false, true) => EXIT_NO_ANTICANONICAL,
        (false, false) => EXIT_NO_CYLINDER,
    }
}

fn load(path: &Path) -> Result<SurfaceSpec, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::error(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    parse_spec_file(&text).map_err(|e| match e {
        SpecFileError::Parse(m) => Outcome::error(EXIT_PARSE, format!("{}: {m}", path.display())),
        SpecFileError::Invalid(m) => Outcome::error(EXIT_INVALID, format!("{}: invalid spec: {m}", path.display())),
    })
}

#[derive(Serialize)]
struct ClassifyDocument<'a> {
    spec: &'a SurfaceSpec,
    verdict: &'a Verdict,
}

pub fn run_classify(path: &Path) -> Outcome {
    let spec = match load(path) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let verdict = classify(&spec);
    let mut stdout = serde_json::to_string(&ClassifyDocument { spec: &spec, verdict: &verdict }).expect("serializes");
    stdout.push('\n');
    Outcome { code: verdict_code(&verdict), stdout, stderr: String::new() }
}

pub fn run_tiger(path: &Path, with_trace: bool) -> Outcome {
    let spec = match load(path) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let verdict = classify(&spec);
    if !verdict.anticanonical_cylinder {
        return Outcome::error(EXIT_NO_CYLINDER, format!("{spec}: no anticanonical polar cylinder, no tiger to build"));
    }
    let certificate = match build_tiger(&spec) {
        Ok(c) => c,
        Err(e) => return Outcome::error(EXIT_DISCREPANCY, format!("{spec}: {e}")),
    };
    let mut stderr = String::new();
    if with_trace {
        match trace::render(&certificate) {
            Ok(lines) => lines.iter().for_each(|l| {
                stderr.push_str(l);
                stderr.push('\n');
            }),
            Err(e) => {
                let _ = writeln!(stderr, "trace failed: {e}");
            }
        }
    }
    let code = if certificate.verify().is_ok() { EXIT_OK } else { EXIT_DISCREPANCY };
    if code == EXIT_DISCREPANCY {
        let _ = writeln!(stderr, "{spec}: discrepancy in case {}", certificate.case);
        for n in &certificate.notes {
            let _ = writeln!(stderr, "  {n}");
        }
    }
    let doc = CertificateDocument { verdict, certificate };
    Outcome { code, stdout: doc.to_jsonl(), stderr }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub spec: SurfaceSpec,
    pub verdict: Verdict,
    pub lemma: Option<String>,
    pub case: Option<String>,
    pub status: String,
    pub violations: Vec<String>,
}

pub fn sweep_rows() -> Vec<SweepRow> {
    let mut rows: Vec<SweepRow> = enumerate_specs()
        .into_par_iter()
        .map(|spec| {
            let report = cross_check(&spec);
            let (lemma, case, status) = match report.tiger_case {
                Some(case) => {
                    let status = if report.is_consistent() { "verified" } else { "discrepancy" };
                    (Some(case.lemma().to_string()), Some(case.to_string()), status.to_string())
                }
                None if report.verdict.anticanonical_cylinder => (None, None, "missing".to_string()),
                None => (None, None, "not-required".to_string()),
            };
            SweepRow { spec, verdict: report.verdict, lemma, case, status, violations: report.violations }
        })
        .collect();
    rows.sort_by(|a, b| a.spec.cmp(&b.spec));
    rows
}

pub fn run_sweep() -> Outcome {
    let rows = sweep_rows();
    let yn = |b: bool| if b { "yes" } else { "no" };
    let mut out = String::from("spec\tanticanonical\tpolar\trho\tlemma\tcase\tstatus\n");
    for r in &rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.spec,
            yn(r.verdict.anticanonical_cylinder),
            yn(r.verdict.h_polar_cylinder),
            r.verdict.picard_rank,
            r.lemma.as_deref().unwrap_or("-"),
            r.case.as_deref().unwrap_or("-"),
            r.status
        );
    }
    let count = |f: &dyn Fn(&SweepRow) -> bool| rows.iter().filter(|r| f(r)).count();
    let _ = writeln!(out, "# specs: {}", rows.len());
    let _ = writeln!(out, "# anticanonical no: {}", count(&|r| !r.verdict.anticanonical_cylinder));
    let _ = writeln!(out, "# polar no: {}", count(&|r| !r.verdict.h_polar_cylinder));
    let _ = writeln!(out, "# certificates verified: {}", count(&|r| r.status == "verified"));
    let _ = writeln!(out, "# discrepancies: {}", count(&|r| r.status == "discrepancy" || r.status == "missing"));
    for r in rows.iter().filter(|r| !r.violations.is_empty()) {
        for v in &r.violations {
            let _ = writeln!(out, "# violation: {v}");
        }
    }
    Outcome { code: EXIT_OK, stdout: out, stderr: String::new() }
}
