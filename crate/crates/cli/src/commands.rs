//! The `conflict`, `sweep` and `codec` commands as pure functions over parsed input.

use std::fmt::Write;
use std::str::FromStr;

use rps_conflict::conflict::conf;
use rps_conflict::overlap::k_perm;
use rps_conflict::{
    DepthSpec, Frame, OrderCode, OrderedFocalSet, PermutationMassFunction, SubsetCode, WeightScheme,
};

use crate::document::{Body, Evidence};
use crate::error::{CliError, Result};
use crate::table::{Cell, Table};

/// Parses `default`, `unbounded` or a positive depth.
pub fn parse_depth(text: &str) -> Result<DepthSpec> {
    match text {
        "default" => Ok(DepthSpec::Default),
        "unbounded" => Ok(DepthSpec::Unbounded),
        n => match n.parse::<usize>() {
            Ok(d) if d >= 1 => Ok(DepthSpec::Truncate(d)),
            _ => Err(CliError::Usage(format!(
                "depth must be 'default', 'unbounded' or a positive integer, got {n:?}"
            ))),
        },
    }
}

/// Builds a weight scheme from its name and optional parameters.
pub fn parse_scheme(name: &str, p: Option<f64>, custom: Option<&[f64]>) -> Result<WeightScheme> {
    match name {
        "uniform" => Ok(WeightScheme::Uniform),
        "geometric" => {
            let p = p.ok_or_else(|| CliError::Usage("--weights geometric needs --p".into()))?;
            Ok(WeightScheme::geometric(p)?)
        }
        "custom" => {
            let w = custom
                .ok_or_else(|| CliError::Usage("--weights custom needs --custom-weights".into()))?;
            Ok(WeightScheme::custom(w.to_vec())?)
        }
        other => Err(CliError::Usage(format!(
            "unknown weight scheme {other:?}; expected uniform, geometric or custom"
        ))),
    }
}

fn fmt_num(x: f64, precision: Option<usize>) -> String {
    match precision {
        Some(p) => format!("{x:.p$}"),
        None => format!("{x}"),
    }
}

fn describe_scheme(scheme: &WeightScheme) -> String {
    match scheme {
        WeightScheme::Uniform => "uniform".into(),
        WeightScheme::Geometric { p } => format!("geometric p={p}"),
        WeightScheme::Custom(w) => format!("custom {w:?}"),
    }
}

fn describe_depth(depth: DepthSpec) -> String {
    match depth {
        DepthSpec::Default => "default".into(),
        DepthSpec::Truncate(n) => n.to_string(),
        DepthSpec::Unbounded => "unbounded".into(),
    }
}

/// Conflict between two named bodies: a total line followed by a CSV breakdown
/// of every cross pair. The total uses `precision` decimals, 4 by default; the
/// breakdown uses full precision unless `precision` is given.
pub fn run_conflict_command(
    evidence: &Evidence,
    body1: &str,
    body2: &str,
    scheme: &WeightScheme,
    depth: DepthSpec,
    precision: Option<usize>,
) -> Result<String> {
    let b1 = evidence.body(body1)?;
    let b2 = evidence.body(body2)?;
    let report = conf(&b1.pmf, &b2.pmf, scheme, depth)?;
    let frame = &evidence.frame;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "conf({body1}, {body2}) = {}",
        fmt_num(report.total, Some(precision.unwrap_or(4)))
    );
    let _ = writeln!(
        out,
        "weights: {}; depth: {}",
        describe_scheme(scheme),
        describe_depth(depth)
    );
    let mut table = Table::new([
        "left",
        "right",
        "left_seq",
        "right_seq",
        "mass_product",
        "k_perm",
        "contribution",
        "taxonomy",
    ]);
    for term in &report.pairs {
        table.push(vec![
            frame.code_label(&term.left).into(),
            frame.code_label(&term.right).into(),
            frame.render(&term.left).into(),
            frame.render(&term.right).into(),
            term.mass_product.into(),
            term.k_perm.into(),
            term.contribution().into(),
            term.taxonomy.as_str().into(),
        ]);
    }
    out.push_str(&table.to_csv(precision));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    P,
    Depth,
    Cardinality,
}

impl FromStr for Axis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(Axis::P),
            "depth" => Ok(Axis::Depth),
            "cardinality" => Ok(Axis::Cardinality),
            other => Err(CliError::Usage(format!(
                "unknown sweep axis {other:?}; expected p, depth or cardinality"
            ))),
        }
    }
}

impl Axis {
    fn name(self) -> &'static str {
        match self {
            Axis::P => "p",
            Axis::Depth => "depth",
            Axis::Cardinality => "cardinality",
        }
    }
}

/// An axis and the values it takes, checked against the axis domain.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub values: Vec<f64>,
}

impl SweepSpec {
    /// `values` is a comma-separated list or a `start:stop:step` range with
    /// `stop` included.
    pub fn parse(axis: Axis, values: &str) -> Result<Self> {
        let bad = |v: &str| CliError::Usage(format!("invalid sweep value {v:?}"));
        let num = |v: &str| v.trim().parse::<f64>().map_err(|_| bad(v));
        let parsed = if values.contains(':') {
            let parts: Vec<&str> = values.split(':').collect();
            let [start, stop, step] = parts[..] else {
                return Err(CliError::Usage(format!(
                    "range {values:?} must be start:stop:step"
                )));
            };
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() {
                return Err(CliError::Usage(format!(
                    "range {values:?} needs finite bounds and a positive step"
                )));
            }
            let count = ((stop - start) / step + 1e-9).floor();
            if count < 0.0 {
                return Err(CliError::Usage(format!("range {values:?} is empty")));
            }
            (0..=count as usize)
                .map(|k| start + k as f64 * step)
                .collect()
        } else {
            values.split(',').map(num).collect::<Result<Vec<_>>>()?
        };
        let spec = SweepSpec {
            axis,
            values: parsed,
        };
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<()> {
        for &v in &self.values {
            let ok = match self.axis {
                Axis::P => (0.0..1.0).contains(&v),
                Axis::Depth | Axis::Cardinality => v >= 1.0 && v.fract().abs() < 1e-9,
            };
            if !ok {
                return Err(CliError::Usage(format!(
                    "value {v} is outside the domain of the {} axis",
                    self.axis.name()
                )));
            }
        }
        if self.values.is_empty() {
            return Err(CliError::Usage("sweep needs at least one value".into()));
        }
        Ok(())
    }
}

/// The record replaced by `(w1 ... wc)` along the cardinality axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vary {
    pub body: String,
    pub record: usize,
}

impl FromStr for Vary {
    type Err = CliError;

    /// `body:index` with a 0-based record index.
    fn from_str(s: &str) -> Result<Self> {
        let (body, record) = s
            .rsplit_once(':')
            .ok_or_else(|| CliError::Usage(format!("--vary expects body:index, got {s:?}")))?;
        let record = record
            .parse()
            .map_err(|_| CliError::Usage(format!("--vary index {record:?} is not an integer")))?;
        Ok(Vary {
            body: body.to_string(),
            record,
        })
    }
}

fn merged_body(
    frame: &Frame,
    records: &[(OrderedFocalSet, f64)],
) -> Result<PermutationMassFunction> {
    let mut merged: Vec<(OrderedFocalSet, f64)> = Vec::with_capacity(records.len());
    for (s, m) in records {
        match merged.iter_mut().find(|(t, _)| t == s) {
            Some(slot) => slot.1 += m,
            None => merged.push((s.clone(), *m)),
        }
    }
    let total: f64 = merged.iter().map(|(_, m)| m).sum();
    for entry in &mut merged {
        entry.1 /= total;
    }
    PermutationMassFunction::new(frame.clone(), merged).map_err(CliError::Input)
}

/// Replaces the varied record, if it belongs to `body`.
fn records_at(
    body: &Body,
    vary: Option<&Vary>,
    x: Option<&OrderedFocalSet>,
) -> Vec<(OrderedFocalSet, f64)> {
    let mut records = body.records.clone();
    if let (Some(v), Some(x)) = (vary, x) {
        if v.body == body.name {
            records[v.record].0 = x.clone();
        }
    }
    records
}

/// One CSV row per sweep value with `value`, `conf` and a `k` column for each
/// pair of records, taken in file order. Column names use the pair's `(i, j)`
/// codes, with `X` standing for the varied record.
pub fn run_sweep_command(
    evidence: &Evidence,
    body1: &str,
    body2: &str,
    spec: &SweepSpec,
    scheme: &WeightScheme,
    depth: DepthSpec,
    vary: Option<&Vary>,
) -> Result<Table> {
    let b1 = evidence.body(body1)?;
    let b2 = evidence.body(body2)?;
    let frame = &evidence.frame;
    match (spec.axis, vary) {
        (Axis::Cardinality, None) => {
            return Err(CliError::Usage(
                "the cardinality axis needs --vary body:index".into(),
            ))
        }
        (Axis::Cardinality, Some(v)) => {
            let owner = evidence.body(&v.body)?;
            if v.body != b1.name && v.body != b2.name {
                return Err(CliError::Usage(format!(
                    "--vary names body {:?}, which is not being compared",
                    v.body
                )));
            }
            if v.record >= owner.records.len() {
                return Err(CliError::Usage(format!(
                    "body {:?} has no record {}",
                    v.body, v.record
                )));
            }
            if let Some(&c) = spec.values.iter().find(|&&c| c as usize > frame.len()) {
                return Err(CliError::Usage(format!(
                    "cardinality {c} exceeds the frame size {}",
                    frame.len()
                )));
            }
        }
        (_, Some(_)) => {
            return Err(CliError::Usage(
                "--vary only applies to the cardinality axis".into(),
            ))
        }
        _ => {}
    }
    let vary = if spec.axis == Axis::Cardinality {
        vary
    } else {
        None
    };
    let name = |body: &Body, k: usize, seq: &OrderedFocalSet| match vary {
        Some(v) if v.body == body.name && v.record == k => "X".to_string(),
        _ => frame.code_label(seq),
    };
    let mut header = vec![spec.axis.name().to_string(), "conf".to_string()];
    for (k1, (s1, _)) in b1.records.iter().enumerate() {
        for (k2, (s2, _)) in b2.records.iter().enumerate() {
            header.push(format!("k({},{})", name(b1, k1, s1), name(b2, k2, s2)));
        }
    }
    let mut table = Table::new(header);
    for &value in &spec.values {
        let (scheme, depth, x) = match spec.axis {
            Axis::P => (WeightScheme::geometric(value)?, depth, None),
            Axis::Depth => (scheme.clone(), DepthSpec::Truncate(value as usize), None),
            Axis::Cardinality => {
                let x = OrderedFocalSet::new(0..value as usize).map_err(CliError::Input)?;
                (scheme.clone(), depth, Some(x))
            }
        };
        let r1 = records_at(b1, vary, x.as_ref());
        let r2 = records_at(b2, vary, x.as_ref());
        let p1 = merged_body(frame, &r1)?;
        let p2 = merged_body(frame, &r2)?;
        let total = conf(&p1, &p2, &scheme, depth)?.total;
        let value_cell = match spec.axis {
            Axis::P => Cell::Num(value),
            Axis::Depth | Axis::Cardinality => Cell::Int(value as i64),
        };
        let mut row: Vec<Cell> = vec![value_cell, total.into()];
        for (s1, _) in &r1 {
            for (s2, _) in &r2 {
                let k = if s1 == s2 {
                    0.0
                } else {
                    k_perm(s1, s2, &scheme, depth)?
                };
                row.push(k.into());
            }
        }
        table.push(row);
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Codec {
    /// Labels (`w3`) or 1-based element numbers of a sequence.
    Encode(Vec<String>),
    Decode {
        i: u64,
        j: u64,
    },
}

fn element_index(frame: &Frame, token: &str) -> Result<usize> {
    if let Ok(k) = token.parse::<usize>() {
        if k >= 1 && k <= frame.len() {
            return Ok(k - 1);
        }
    }
    frame.index_of(token).map_err(CliError::Input)
}

/// `encode` prints `(i, j)`; `decode` prints the sequence's labels, or
/// `(empty)` for the empty sequence. Labels come from `w1..wn`, `n` defaulting
/// to the smallest frame that holds the input.
pub fn run_codec_command(codec: &Codec, frame_size: Option<usize>) -> Result<String> {
    match codec {
        Codec::Encode(tokens) => {
            let n = match frame_size {
                Some(n) => n,
                None => tokens
                    .iter()
                    .map(|t| {
                        t.parse::<usize>()
                            .ok()
                            .or_else(|| t.strip_prefix('w').and_then(|r| r.parse().ok()))
                            .unwrap_or(0)
                    })
                    .max()
                    .unwrap_or(0)
                    .max(1),
            };
            let frame = Frame::numbered(n).map_err(CliError::Input)?;
            let indices = tokens
                .iter()
                .map(|t| element_index(&frame, t))
                .collect::<Result<Vec<_>>>()?;
            let seq = OrderedFocalSet::new(indices).map_err(CliError::Input)?;
            let (i, j) = frame.encode(&seq).map_err(CliError::Input)?;
            Ok(format!("({}, {})", i.0, j.0))
        }
        Codec::Decode { i, j } => {
            let n = frame_size.unwrap_or(((64 - i.leading_zeros()) as usize).max(1));
            let frame = Frame::numbered(n).map_err(CliError::Input)?;
            let seq = frame
                .decode(SubsetCode(*i), OrderCode(*j))
                .map_err(CliError::Input)?;
            if seq.elements().is_empty() {
                return Ok("(empty)".into());
            }
            Ok(seq
                .elements()
                .iter()
                .map(|&e| frame.labels()[e].as_str())
                .collect::<Vec<_>>()
                .join(" "))
        }
    }
}
