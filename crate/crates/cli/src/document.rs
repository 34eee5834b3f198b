//! JSON evidence files.
//!
//! ```json
//! {
//!   "frame": ["w1", "w2", "w3"],
//!   "bodies": [
//!     {"name": "rps1", "focal": [{"perm": ["w1", "w2"], "mass": 0.8}, {"i": 4, "j": 1, "mass": 0.2}]},
//!     {"name": "rps2", "focal": [{"perm": ["w2", "w3", "w1"], "mass": 1.0}]}
//!   ]
//! }
//! ```
//!
//! A focal record names its ordered focal set either by labels (`perm`) or by
//! its `(i, j)` code against the frame.

use rps_conflict::{
    evidence::validate_body, Frame, Normalization, OrderCode, OrderedFocalSet,
    PermutationMassFunction, SubsetCode,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvidenceDocument {
    pub frame: Vec<String>,
    pub bodies: Vec<BodyRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyRecord {
    pub name: String,
    pub focal: Vec<FocalRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FocalRecord {
    Perm { perm: Vec<String>, mass: f64 },
    Code { i: u64, j: u64, mass: f64 },
}

impl FocalRecord {
    pub fn mass(&self) -> f64 {
        match self {
            FocalRecord::Perm { mass, .. } | FocalRecord::Code { mass, .. } => *mass,
        }
    }
}

/// A decoded body: its records in file order and the validated mass function.
#[derive(Debug, Clone, PartialEq)]
pub struct Body {
    pub name: String,
    pub records: Vec<(OrderedFocalSet, f64)>,
    pub pmf: PermutationMassFunction,
}

/// A parsed and validated evidence file.
#[derive(Debug, Clone, PartialEq)]
pub struct Evidence {
    pub document: EvidenceDocument,
    pub frame: Frame,
    pub bodies: Vec<Body>,
}

impl Evidence {
    pub fn body(&self, name: &str) -> Result<&Body> {
        self.bodies
            .iter()
            .find(|b| b.name == name)
            .ok_or_else(|| CliError::UnknownBody(name.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.document).expect("document serializes")
    }
}

pub fn parse_evidence(text: &str, norm: Normalization) -> Result<Evidence> {
    let document: EvidenceDocument = serde_json::from_str(text).map_err(|e| CliError::Schema {
        message: e.to_string(),
        line: e.line(),
        column: e.column(),
    })?;
    decode_document(document, norm)
}

pub fn decode_document(document: EvidenceDocument, norm: Normalization) -> Result<Evidence> {
    let frame = Frame::new(document.frame.iter().cloned()).map_err(CliError::Frame)?;
    let mut bodies: Vec<Body> = Vec::with_capacity(document.bodies.len());
    for record in &document.bodies {
        if bodies.iter().any(|b| b.name == record.name) {
            return Err(CliError::DuplicateBody(record.name.clone()));
        }
        bodies.push(decode_body(&frame, record, norm)?);
    }
    Ok(Evidence {
        document,
        frame,
        bodies,
    })
}

fn decode_body(frame: &Frame, record: &BodyRecord, norm: Normalization) -> Result<Body> {
    let mut labelled: Vec<(Vec<String>, f64)> = Vec::with_capacity(record.focal.len());
    for (k, focal) in record.focal.iter().enumerate() {
        let labels = match focal {
            FocalRecord::Perm { perm, .. } => perm.clone(),
            FocalRecord::Code { i, j, .. } => {
                let seq = frame
                    .decode(SubsetCode(*i), OrderCode(*j))
                    .map_err(|source| CliError::Record {
                        body: record.name.clone(),
                        record: k,
                        source,
                    })?;
                seq.elements()
                    .iter()
                    .map(|&e| frame.labels()[e].clone())
                    .collect()
            }
        };
        labelled.push((labels, focal.mass()));
    }
    let mut violations = validate_body(frame, &labelled);
    if norm == Normalization::Renormalize {
        violations.retain(|v| !matches!(v.kind, rps_conflict::ViolationKind::MassSum { .. }));
    }
    if !violations.is_empty() {
        return Err(CliError::Validation {
            body: record.name.clone(),
            violations,
        });
    }
    let records = labelled
        .iter()
        .map(|(labels, m)| Ok((OrderedFocalSet::from_labels(frame, labels)?, *m)))
        .collect::<Result<Vec<_>, rps_conflict::Error>>()
        .map_err(CliError::Input)?;
    let pmf = PermutationMassFunction::with_normalization(frame.clone(), records.clone(), norm)
        .map_err(|e| match e {
            rps_conflict::Error::InvalidBody(violations) => CliError::Validation {
                body: record.name.clone(),
                violations,
            },
            other => CliError::Input(other),
        })?;
    Ok(Body {
        name: record.name.clone(),
        records,
        pmf,
    })
}

/// Builds a document listing each body's focal sets by label.
pub fn document_from_bodies<'a, I>(frame: &Frame, bodies: I) -> EvidenceDocument
where
    I: IntoIterator<Item = (&'a str, &'a PermutationMassFunction)>,
{
    EvidenceDocument {
        frame: frame.labels().to_vec(),
        bodies: bodies
            .into_iter()
            .map(|(name, pmf)| BodyRecord {
                name: name.to_string(),
                focal: pmf
                    .focal()
                    .iter()
                    .map(|(seq, mass)| FocalRecord::Perm {
                        perm: seq
                            .elements()
                            .iter()
                            .map(|&e| frame.labels()[e].clone())
                            .collect(),
                        mass: *mass,
                    })
                    .collect(),
            })
            .collect(),
    }
}
