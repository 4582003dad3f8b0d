//! Spec files in, certificate documents out.
//!
//! A spec file is TOML:
//!
//! ```toml
//! degree = 1
//! singularities = ["A2", "A2", "A2", "A2"]
//! ```
//!
//! A certificate document is JSON Lines: a header object holding the
//! verdict, the certificate and the number of decompositions, then one
//! line per decomposition in enumeration order.

use serde::{Deserialize, Serialize};

use crate::ade_lattice::{DynkinType, LatticeError, SurfaceSpec};
use crate::classifier::Verdict;
use crate::tiger_engine::{DecompositionRecord, TigerCertificate};

#[derive(Debug, thiserror::Error)]
pub enum SpecFileError {
    /// Malformed input: not TOML, wrong shape, or an unknown token.
    #[error("{0}")]
    Parse(String),
    /// Well-formed but not a valid surface.
    #[error("{0}")]
    Invalid(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    degree: i64,
    #[serde(default)]
    singularities: Vec<String>,
}

pub fn parse_spec_file(text: &str) -> Result<SurfaceSpec, SpecFileError> {
    let raw: SpecFile = toml::from_str(text).map_err(|e| SpecFileError::Parse(e.to_string()))?;
    let mut types = Vec::with_capacity(raw.singularities.len());
    for (i, token) in raw.singularities.iter().enumerate() {
        match token.parse::<DynkinType>() {
            Ok(t) => types.push(t),
            Err(LatticeError::BadToken(_)) => {
                return Err(SpecFileError::Parse(format!("singularities[{i}]: unknown type token {token:?}")));
            }
            Err(e) => return Err(SpecFileError::Invalid(format!("singularities[{i}]: {e}"))),
        }
    }
    let degree = u32::try_from(raw.degree)
        .map_err(|_| SpecFileError::Invalid(format!("degree {} is outside 1..=9", raw.degree)))?;
    SurfaceSpec::new(degree, &types).map_err(|e| SpecFileError::Invalid(e.to_string()))
}

pub fn write_spec_file(spec: &SurfaceSpec) -> String {
    let tokens: Vec<String> = spec.singularities().iter().map(|t| format!("{:?}", t.to_string())).collect();
    format!("degree = {}\nsingularities = [{}]\n", spec.degree(), tokens.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateDocument {
    pub verdict: Verdict,
    pub certificate: TigerCertificate,
}

#[derive(Serialize, Deserialize)]
struct Header {
    verdict: Verdict,
    certificate: TigerCertificate,
    decomposition_count: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("expected {expected} decomposition lines, found {found}")]
    Count { expected: usize, found: usize },
}

impl CertificateDocument {
    pub fn to_jsonl(&self) -> String {
        let header = Header {
            verdict: self.verdict.clone(),
            certificate: self.certificate.clone(),
            decomposition_count: self.certificate.decompositions.len(),
        };
        let mut out = serde_json::to_string(&header).expect("document values serialize");
        out.push('\n');
        for d in &self.certificate.decompositions {
            out.push_str(&serde_json::to_string(d).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, DocumentError> {
        let mut lines = text.lines().enumerate();
        let (_, first) = lines.next().ok_or(DocumentError::Line { line: 1, message: "empty document".into() })?;
        let header: Header =
            serde_json::from_str(first).map_err(|e| DocumentError::Line { line: 1, message: e.to_string() })?;
        let mut decompositions = Vec::with_capacity(header.decomposition_count);
        for (i, line) in lines {
            let d: DecompositionRecord =
                serde_json::from_str(line).map_err(|e| DocumentError::Line { line: i + 1, message: e.to_string() })?;
            decompositions.push(d);
        }
        if decompositions.len() != header.decomposition_count {
            return Err(DocumentError::Count { expected: header.decomposition_count, found: decompositions.len() });
        }
        let mut certificate = header.certificate;
        certificate.decompositions = decompositions;
        Ok(CertificateDocument { verdict: header.verdict, certificate })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::classify;
    use crate::tiger_engine::build_tiger;

    #[test]
    fn spec_files() {
        let s = parse_spec_file("degree = 1\nsingularities = [\"A2\", \"A2\", \"A2\", \"A2\"]\n").unwrap();
        assert_eq!(s.to_string(), "d=1 4A2");
        assert_eq!(parse_spec_file(&write_spec_file(&s)).unwrap(), s);
        assert_eq!(parse_spec_file("degree = 9").unwrap().to_string(), "d=9 smooth");
    }

    #[test]
    fn spec_file_errors_are_binned() {
        let parse = |t: &str| matches!(parse_spec_file(t), Err(SpecFileError::Parse(_)));
        let invalid = |t: &str| matches!(parse_spec_file(t), Err(SpecFileError::Invalid(_)));
        assert!(parse("degree = "));
        assert!(parse("degree = 2\nsingularities = [\"Q7\"]"));
        assert!(parse("degree = 2\nextra = 1"));
        assert!(parse("singularities = []"));
        assert!(invalid("degree = 0"));
        assert!(invalid("degree = -3"));
        assert!(invalid("degree = 2\nsingularities = [\"D3\"]"));
        assert!(invalid("degree = 5\nsingularities = [\"A3\", \"A2\"]"));
    }

    #[test]
    fn documents_round_trip_byte_identically() {
        let spec = parse_spec_file("degree = 3\nsingularities = [\"A1\"]").unwrap();
        let doc = CertificateDocument { verdict: classify(&spec), certificate: build_tiger(&spec).unwrap() };
        let text = doc.to_jsonl();
        assert_eq!(text.lines().count(), 5);
        let back = CertificateDocument::from_jsonl(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_jsonl(), text);
        assert!(!text.contains('.'), "no floats");
    }

    #[test]
    fn truncated_documents_are_rejected() {
        let spec = parse_spec_file("degree = 3\nsingularities = [\"A1\"]").unwrap();
        let doc = CertificateDocument { verdict: classify(&spec), certificate: build_tiger(&spec).unwrap() };
        let text = doc.to_jsonl();
        let cut: Vec<&str> = text.lines().take(3).collect();
        assert!(matches!(CertificateDocument::from_jsonl(&cut.join("\n")), Err(DocumentError::Count { .. })));
    }
}
