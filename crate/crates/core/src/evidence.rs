//! Bodies of evidence: classical mass functions over subsets and permutation
//! mass functions over ordered focal sets.
//!
//! Both are closed-world: the empty set never carries mass. Entries with zero
//! mass are dropped on construction since focal sets are exactly the keys
//! with positive mass.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::frame::{Frame, OrderedFocalSet, SubsetCode};
use crate::MASS_TOLERANCE;

/// How a mass total that misses 1 is handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Reject totals further than [`MASS_TOLERANCE`] from 1.
    #[default]
    Strict,
    /// Divide every mass by the total.
    Renormalize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ViolationKind {
    MassSum {
        sum: f64,
    },
    InvalidMass {
        mass: f64,
    },
    DuplicateElement {
        element: String,
    },
    EmptyFocalSet,
    UnknownElement {
        label: String,
    },
    /// Two entries share the same focal set.
    DuplicateFocalSet,
}

/// One problem found in a body of evidence. `entry` is the 0-based index of
/// the offending record; `None` for body-wide problems.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub entry: Option<usize>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.entry {
            write!(f, "entry {k}: ")?;
        }
        match &self.kind {
            ViolationKind::MassSum { sum } => write!(f, "masses sum to {sum}, expected 1"),
            ViolationKind::InvalidMass { mass } => write!(f, "mass {mass} is not in [0, 1]"),
            ViolationKind::DuplicateElement { element } => {
                write!(f, "element {element} repeated")
            }
            ViolationKind::EmptyFocalSet => f.write_str("empty focal set"),
            ViolationKind::UnknownElement { label } => write!(f, "unknown element {label}"),
            ViolationKind::DuplicateFocalSet => f.write_str("focal set listed twice"),
        }
    }
}

impl Violation {
    fn at(entry: usize, kind: ViolationKind) -> Self {
        Violation {
            entry: Some(entry),
            kind,
        }
    }
}

/// Checks a body given as label sequences and masses, reporting every
/// violation rather than stopping at the first.
pub fn validate_body<S: AsRef<str>>(frame: &Frame, entries: &[(Vec<S>, f64)]) -> Vec<Violation> {
    let mut violations = Vec::new();
    let mut decoded = Vec::with_capacity(entries.len());
    for (k, (labels, mass)) in entries.iter().enumerate() {
        let mut indices = Vec::with_capacity(labels.len());
        let mut ok = true;
        for label in labels {
            match frame.index_of(label.as_ref()) {
                Ok(t) if indices.contains(&t) => {
                    ok = false;
                    violations.push(Violation::at(
                        k,
                        ViolationKind::DuplicateElement {
                            element: label.as_ref().to_string(),
                        },
                    ));
                }
                Ok(t) => indices.push(t),
                Err(_) => {
                    ok = false;
                    violations.push(Violation::at(
                        k,
                        ViolationKind::UnknownElement {
                            label: label.as_ref().to_string(),
                        },
                    ));
                }
            }
        }
        if ok {
            // Indices are known distinct and in range here.
            if let Ok(seq) = OrderedFocalSet::new(indices) {
                decoded.push((k, seq, *mass));
                continue;
            }
        }
        check_mass(k, *mass, &mut violations);
    }
    let masses: Vec<_> = decoded.iter().map(|(k, s, m)| (*k, s, *m)).collect();
    check_entries(frame, &masses, &mut violations);
    let sum: f64 = entries.iter().map(|(_, m)| m).sum();
    check_total(sum, Normalization::Strict, &mut violations);
    violations.sort_by_key(|v| v.entry.unwrap_or(usize::MAX));
    violations
}

fn check_mass(k: usize, mass: f64, out: &mut Vec<Violation>) -> bool {
    if !(0.0..=1.0).contains(&mass) {
        out.push(Violation::at(k, ViolationKind::InvalidMass { mass }));
        return false;
    }
    true
}

/// Per-entry checks on decoded sequences, plus duplicate keys. Does not check the total.
fn check_entries(
    frame: &Frame,
    entries: &[(usize, &OrderedFocalSet, f64)],
    out: &mut Vec<Violation>,
) {
    let mut seen: BTreeMap<&OrderedFocalSet, usize> = BTreeMap::new();
    for &(k, seq, mass) in entries {
        check_mass(k, mass, out);
        if let Err(Error::ElementOutOfRange { index, .. }) = frame.check_members(seq) {
            out.push(Violation::at(
                k,
                ViolationKind::UnknownElement {
                    label: alloc::format!("#{index}"),
                },
            ));
        }
        if seq.is_empty() {
            out.push(Violation::at(k, ViolationKind::EmptyFocalSet));
        }
        if mass > 0.0 && seen.insert(seq, k).is_some() {
            out.push(Violation::at(k, ViolationKind::DuplicateFocalSet));
        }
    }
}

fn check_total(sum: f64, norm: Normalization, out: &mut Vec<Violation>) {
    let bad = match norm {
        Normalization::Strict => (sum - 1.0).abs() > MASS_TOLERANCE,
        Normalization::Renormalize => !(sum > 0.0 && sum.is_finite()),
    };
    if bad {
        out.push(Violation {
            entry: None,
            kind: ViolationKind::MassSum { sum },
        });
    }
}

/// A permutation mass function: positive masses on ordered focal sets, summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PermutationMassFunction {
    frame: Frame,
    focal: Vec<(OrderedFocalSet, f64)>,
}

impl PermutationMassFunction {
    pub fn new(frame: Frame, entries: Vec<(OrderedFocalSet, f64)>) -> Result<Self> {
        Self::with_normalization(frame, entries, Normalization::Strict)
    }

    pub fn with_normalization(
        frame: Frame,
        entries: Vec<(OrderedFocalSet, f64)>,
        norm: Normalization,
    ) -> Result<Self> {
        let mut violations = Vec::new();
        let indexed: Vec<_> = entries
            .iter()
            .enumerate()
            .map(|(k, (s, m))| (k, s, *m))
            .collect();
        check_entries(&frame, &indexed, &mut violations);
        let sum: f64 = entries.iter().map(|(_, m)| m).sum();
        check_total(sum, norm, &mut violations);
        if !violations.is_empty() {
            return Err(Error::InvalidBody(violations));
        }
        let scale = match norm {
            Normalization::Strict => 1.0,
            Normalization::Renormalize => sum,
        };
        let mut focal: Vec<_> = entries
            .into_iter()
            .filter(|(_, m)| *m > 0.0)
            .map(|(s, m)| (s, m / scale))
            .collect();
        focal.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(PermutationMassFunction { frame, focal })
    }

    /// Builds from label sequences, validating with [`validate_body`].
    pub fn from_labels<S: AsRef<str>>(
        frame: Frame,
        entries: &[(Vec<S>, f64)],
        norm: Normalization,
    ) -> Result<Self> {
        let mut violations: Vec<_> = validate_body(&frame, entries);
        if norm == Normalization::Renormalize {
            violations.retain(|v| !matches!(v.kind, ViolationKind::MassSum { .. }));
        }
        if !violations.is_empty() {
            return Err(Error::InvalidBody(violations));
        }
        let decoded = entries
            .iter()
            .map(|(labels, m)| Ok((OrderedFocalSet::from_labels(&frame, labels)?, *m)))
            .collect::<Result<Vec<_>>>()?;
        Self::with_normalization(frame, decoded, norm)
    }

    /// Single focal set with mass 1.
    pub fn categorical(frame: Frame, seq: OrderedFocalSet) -> Result<Self> {
        Self::new(frame, alloc::vec![(seq, 1.0)])
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Focal sets and masses, sorted by `(i, j)` code.
    pub fn focal(&self) -> &[(OrderedFocalSet, f64)] {
        &self.focal
    }

    pub fn len(&self) -> usize {
        self.focal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.focal.is_empty()
    }

    pub fn mass(&self, seq: &OrderedFocalSet) -> f64 {
        self.focal
            .binary_search_by(|(s, _)| s.cmp(seq))
            .map_or(0.0, |k| self.focal[k].1)
    }

    pub fn is_categorical(&self) -> bool {
        self.focal.len() == 1
    }

    /// Forgets the order of every focal set, summing masses that share a support.
    pub fn degrade_to_bba(&self) -> Result<MassFunction> {
        let mut merged: BTreeMap<SubsetCode, f64> = BTreeMap::new();
        for (seq, m) in &self.focal {
            if seq.is_open() {
                return Err(Error::Unbounded);
            }
            *merged.entry(seq.subset_code()).or_insert(0.0) += m;
        }
        Ok(MassFunction {
            frame: self.frame.clone(),
            focal: merged.into_iter().collect(),
        })
    }
}

/// A classical mass function (basic belief assignment) over subsets of the frame.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    focal: Vec<(SubsetCode, f64)>,
}

impl MassFunction {
    pub fn new(frame: Frame, entries: Vec<(SubsetCode, f64)>) -> Result<Self> {
        let mut violations = Vec::new();
        let limit = if frame.len() == 64 {
            u64::MAX
        } else {
            (1u64 << frame.len()) - 1
        };
        let mut seen = BTreeMap::new();
        for (k, &(code, mass)) in entries.iter().enumerate() {
            check_mass(k, mass, &mut violations);
            if code.0 & !limit != 0 {
                violations.push(Violation::at(
                    k,
                    ViolationKind::UnknownElement {
                        label: alloc::format!("code {}", code.0),
                    },
                ));
            }
            if code.is_empty() {
                violations.push(Violation::at(k, ViolationKind::EmptyFocalSet));
            }
            if mass > 0.0 && seen.insert(code, k).is_some() {
                violations.push(Violation::at(k, ViolationKind::DuplicateFocalSet));
            }
        }
        let sum: f64 = entries.iter().map(|(_, m)| m).sum();
        check_total(sum, Normalization::Strict, &mut violations);
        if !violations.is_empty() {
            return Err(Error::InvalidBody(violations));
        }
        let mut focal: Vec<_> = entries.into_iter().filter(|(_, m)| *m > 0.0).collect();
        focal.sort_by_key(|(c, _)| *c);
        Ok(MassFunction { frame, focal })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Focal sets and masses, sorted by subset code.
    pub fn focal(&self) -> &[(SubsetCode, f64)] {
        &self.focal
    }

    pub fn mass(&self, code: SubsetCode) -> f64 {
        self.focal
            .iter()
            .find(|(c, _)| *c == code)
            .map_or(0.0, |(_, m)| *m)
    }
}
