//! Reproduction of the reference tables from built-in fixtures.
//!
//! | id | content |
//! |----|---------|
//! | 2 | per-depth prefixes, overlap and `InC_d` for one pair |
//! | 3 | nine taxonomy cases with their conflict and body label |
//! | 4 | adjacent transpositions against a fixed body, with baselines |
//! | 5 | growing identity prefix `X`, with baselines |
//! | 6 | truncation depth 1 to 7, with left/right baselines |
//! | 7 | geometric `p` from 0.0 to 0.9 against `|X|` from 1 to 10 and unbounded |

use rps_conflict::classify::classify_bodies;
use rps_conflict::conflict::{conf, left_conflict, right_conflict, shafer_conflict};
use rps_conflict::overlap::{inconsistency_profile, overlap_at, prefix_set};
use rps_conflict::{DepthSpec, Frame, OrderedFocalSet, PermutationMassFunction, WeightScheme};

use crate::error::{CliError, Result};
use crate::fixtures;
use crate::table::{Cell, Table};

pub const TABLE_IDS: [u32; 6] = [2, 3, 4, 5, 6, 7];

pub fn table(id: u32) -> Result<Table> {
    match id {
        2 => Ok(prefix_table()),
        3 => taxonomy_table(),
        4 => family_table(
            fixtures::transposition_variants(),
            fixtures::transposition_family,
            8,
        ),
        5 => family_table(
            (1..=10).map(fixtures::identity).collect(),
            fixtures::cardinality_family,
            10,
        ),
        6 => depth_table(),
        7 => p_sweep_table(),
        other => Err(CliError::UnknownTable(other)),
    }
}

fn labels(frame: &Frame, code: rps_conflict::SubsetCode) -> String {
    frame
        .subset_from_code(code)
        .map(|ls| ls.join(" "))
        .unwrap_or_default()
}

fn prefix_table() -> Table {
    let frame = Frame::numbered(5).expect("frame");
    let a = fixtures::seq(&[2, 1, 3, 5]);
    let b = fixtures::identity(5);
    let mut t = Table::new(["depth", "prefix_a", "prefix_b", "overlap", "I_d", "InC_d"]);
    for (k, inc) in inconsistency_profile(&a, &b, 5).into_iter().enumerate() {
        let d = k + 1;
        let first = |s: &OrderedFocalSet| {
            s.elements()
                .iter()
                .take(d)
                .map(|&e| frame.labels()[e].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let common = rps_conflict::SubsetCode(prefix_set(&a, d).0 & prefix_set(&b, d).0);
        t.push(vec![
            d.into(),
            first(&a).into(),
            first(&b).into(),
            overlap_at(&a, &b, d).into(),
            format!("{{{}}}", labels(&frame, common)).into(),
            inc.into(),
        ]);
    }
    t
}

fn describe(pmf: &PermutationMassFunction) -> String {
    pmf.focal()
        .iter()
        .map(|(s, m)| format!("{} {m}", pmf.frame().render(s)))
        .collect::<Vec<_>>()
        .join("; ")
}

fn taxonomy_table() -> Result<Table> {
    let mut t = Table::new(["case", "rps1", "rps2", "conf", "taxonomy"]);
    for (k, (p1, p2)) in fixtures::taxonomy_cases().iter().enumerate() {
        let report = conf(p1, p2, &WeightScheme::Uniform, DepthSpec::Default)?;
        t.push(vec![
            (k + 1).into(),
            describe(p1).into(),
            describe(p2).into(),
            report.total.into(),
            classify_bodies(p1, p2)?.as_str().into(),
        ]);
    }
    Ok(t)
}

fn family_table(
    variants: Vec<OrderedFocalSet>,
    build: fn(OrderedFocalSet) -> (PermutationMassFunction, PermutationMassFunction),
    frame_size: usize,
) -> Result<Table> {
    let frame = Frame::numbered(frame_size).expect("frame");
    let mut t = Table::new(["X", "k", "K_left", "K_right", "conf"]);
    for x in variants {
        let label = format!("{} {}", frame.code_label(&x), frame.render(&x));
        let (p1, p2) = build(x);
        t.push(vec![
            label.into(),
            shafer_conflict(&p1.degrade_to_bba()?, &p2.degrade_to_bba()?)?.into(),
            left_conflict(&p1, &p2)?.into(),
            right_conflict(&p1, &p2)?.into(),
            conf(&p1, &p2, &WeightScheme::Uniform, DepthSpec::Default)?
                .total
                .into(),
        ]);
    }
    Ok(t)
}

fn depth_table() -> Result<Table> {
    let (p1, p2) = fixtures::depth_family();
    let mut t = Table::new(["depth", "k", "K_left", "K_right", "conf"]);
    // The classical conflict has no notion of depth; its column is left blank.
    for d in 1..=7 {
        t.push(vec![
            d.into(),
            "-".into(),
            left_conflict(&p1, &p2)?.into(),
            right_conflict(&p1, &p2)?.into(),
            conf(&p1, &p2, &WeightScheme::Uniform, DepthSpec::Truncate(d))?
                .total
                .into(),
        ]);
    }
    Ok(t)
}

pub const P_GRID: [f64; 10] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

fn p_sweep_table() -> Result<Table> {
    let frame = Frame::numbered(10).expect("frame");
    let mut header = vec!["X".to_string()];
    header.extend(P_GRID.iter().map(|p| format!("p={p:.1}")));
    let mut t = Table::new(header);
    let variants = (1..=10)
        .map(fixtures::identity)
        .chain(std::iter::once(fixtures::infinite_identity(10)));
    for x in variants {
        let mut row: Vec<Cell> =
            vec![format!("{} {}", frame.code_label(&x), frame.render(&x)).into()];
        let (p1, p2) = fixtures::cardinality_family(x);
        for p in P_GRID {
            let scheme = WeightScheme::geometric(p)?;
            row.push(conf(&p1, &p2, &scheme, DepthSpec::Default)?.total.into());
        }
        t.push(row);
    }
    Ok(t)
}
