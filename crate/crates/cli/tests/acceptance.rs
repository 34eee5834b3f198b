//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#[path = "../../core/tests/common/mod.rs"]
mod oracle;

use std::process::ExitCode;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rps_conflict::classify::classify_bodies;
use rps_conflict::conflict::conf;
use rps_conflict::frame::{order_rank, perm_from_rank};
use rps_conflict::overlap::{inconsistency_profile, k_perm};
use rps_conflict::{
    BodyTaxonomy, DepthSpec, Frame, OrderCode, OrderedFocalSet, PermutationMassFunction,
    SubsetCode, WeightScheme,
};
use rps_conflict_cli::fixtures::{self, seq};
use rps_conflict_cli::repro;

const TOL: f64 = 5e-4;
const ORACLE_TOL: f64 = 1e-9;
const SEED: u64 = 0x5eed_2024;

struct Suite {
    failures: usize,
}

impl Suite {
    fn record(&mut self, id: u32, name: &str, outcome: Result<String, String>) {
        match outcome {
            Ok(detail) => println!("PASS  {id:>2}  {name}  ({detail})"),
            Err(detail) => {
                self.failures += 1;
                println!("FAIL  {id:>2}  {name}  ({detail})");
            }
        }
    }
}

/// Compares computed values to expected ones, reporting the largest deviation.
fn compare(label: &str, got: &[f64], want: &[f64], tol: f64) -> Result<f64, String> {
    if got.len() != want.len() {
        return Err(format!(
            "{label}: {} values, expected {}",
            got.len(),
            want.len()
        ));
    }
    let mut worst = 0.0f64;
    for (k, (g, w)) in got.iter().zip(want).enumerate() {
        let err = (g - w).abs();
        if err.is_nan() || err > tol {
            return Err(format!("{label}[{k}] = {g:.6}, expected {w} (tol {tol:e})"));
        }
        worst = worst.max(err);
    }
    Ok(worst)
}

fn max_err(parts: &[Result<f64, String>]) -> Result<String, String> {
    let mut worst = 0.0f64;
    for part in parts {
        worst = worst.max(part.clone()?);
    }
    Ok(format!("max deviation {worst:.2e}"))
}

fn uniform(a: &OrderedFocalSet, b: &OrderedFocalSet) -> f64 {
    k_perm(a, b, &WeightScheme::Uniform, DepthSpec::Default).unwrap()
}

fn order_disagreement() -> Result<String, String> {
    let (a1, a2) = (seq(&[2, 1, 3, 5]), seq(&[1, 5, 3]));
    let (b1, b2) = (seq(&[1, 2, 3, 4, 5]), seq(&[1, 3]));
    let ks = [
        uniform(&a1, &b1),
        uniform(&a1, &b2),
        uniform(&a2, &b1),
        uniform(&a2, &b2),
    ];
    let (p1, p2) = fixtures::order_disagreement();
    let total = conf(&p1, &p2, &WeightScheme::Uniform, DepthSpec::Default)
        .map_err(|e| e.to_string())?
        .total;
    max_err(&[
        compare("k_perm", &ks, &[0.29, 0.5833, 0.3467, 0.2778], TOL),
        compare("conf", &[total], &[0.3424], TOL),
    ])
}

fn inconsistency_sequence() -> Result<String, String> {
    let got = inconsistency_profile(&seq(&[2, 1, 3, 5]), &fixtures::identity(5), 5);
    max_err(&[compare("InC_d", &got, &[1.0, 0.0, 0.0, 0.25, 0.2], TOL)])
}

fn two_element_values() -> Result<String, String> {
    let [f1, f2, f3, f4] = fixtures::two_element_sequences();
    let six = [
        uniform(&f1, &f2),
        uniform(&f1, &f3),
        uniform(&f1, &f4),
        uniform(&f2, &f3),
        uniform(&f2, &f4),
        uniform(&f3, &f4),
    ];
    let (w123, w3, w1, w321) = (seq(&[1, 2, 3]), seq(&[3]), seq(&[1]), seq(&[3, 2, 1]));
    let identities = [
        uniform(&f1, &f4) - (uniform(&f2, &f4) + uniform(&f3, &f4)),
        uniform(&f2, &f3) - (uniform(&f1, &f3) + uniform(&f3, &f4)),
        uniform(&w123, &w3) - (uniform(&w123, &w1) + uniform(&w123, &w321)),
    ];
    max_err(&[
        compare("k_perm", &six, &[1.0, 0.25, 0.75, 0.75, 0.25, 0.5], TOL),
        compare("additivity gap", &identities, &[0.0; 3], TOL),
        compare(
            "three-element sum",
            &[uniform(&w123, &w3)],
            &[8.0 / 9.0],
            TOL,
        ),
    ])
}

fn taxonomy_cases() -> Result<String, String> {
    use BodyTaxonomy::*;
    let want_labels = [
        TotalConflict,
        TotalConflict,
        StrongConflict,
        StrongConflict,
        WeakConflict,
        WeakConflict,
        WeakConflict,
        WeakConflict,
        NonConflict,
    ];
    let mut totals = Vec::new();
    for ((p1, p2), want) in fixtures::taxonomy_cases().iter().zip(want_labels) {
        totals.push(
            conf(p1, p2, &WeightScheme::Uniform, DepthSpec::Default)
                .map_err(|e| e.to_string())?
                .total,
        );
        let got = classify_bodies(p1, p2).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!(
                "case {} labelled {got:?}, expected {want:?}",
                totals.len()
            ));
        }
    }
    let want = [
        1.0, 1.0, 0.6111, 0.8222, 0.1667, 0.4167, 0.1111, 0.3333, 0.0,
    ];
    max_err(&[compare("conf", &totals, &want, TOL)])
}

fn table_column(id: u32, name: &str) -> Result<Vec<f64>, String> {
    let table = repro::table(id).map_err(|e| e.to_string())?;
    table
        .column(name)
        .ok_or_else(|| format!("table {id} has no column {name}"))?
        .into_iter()
        .map(|c| c.ok_or_else(|| format!("table {id} column {name} holds text")))
        .collect()
}

fn baseline_table(
    id: u32,
    conf_want: &[f64],
    baseline: f64,
    with_k: bool,
) -> Result<String, String> {
    let n = conf_want.len();
    let mut parts = vec![
        compare("conf", &table_column(id, "conf")?, conf_want, TOL),
        compare(
            "K_left",
            &table_column(id, "K_left")?,
            &vec![baseline; n],
            TOL,
        ),
        compare(
            "K_right",
            &table_column(id, "K_right")?,
            &vec![baseline; n],
            TOL,
        ),
    ];
    if with_k {
        parts.push(compare(
            "k",
            &table_column(id, "k")?,
            &vec![baseline; n],
            TOL,
        ));
    }
    max_err(&parts)
}

const TABLE7: [[f64; 10]; 11] = [
    [
        0.1000, 0.1382, 0.1754, 0.2082, 0.2332, 0.2466, 0.2446, 0.2234, 0.1786, 0.1058,
    ],
    [
        0.1000, 0.0998, 0.1029, 0.1074, 0.1116, 0.1132, 0.1102, 0.1002, 0.0805, 0.0482,
    ],
    [
        0.1000, 0.0974, 0.0943, 0.0906, 0.0860, 0.0799, 0.0718, 0.0610, 0.0464, 0.0266,
    ],
    [
        0.1000, 0.0976, 0.0956, 0.0944, 0.0937, 0.0924, 0.0891, 0.0816, 0.0669, 0.0412,
    ],
    [
        0.1000, 0.0976, 0.0960, 0.0962, 0.0986, 0.1024, 0.1057, 0.1046, 0.0931, 0.0622,
    ],
    [
        0.1000, 0.0976, 0.0961, 0.0969, 0.1010, 0.1086, 0.1181, 0.1248, 0.1193, 0.0858,
    ],
    [
        0.1000, 0.0976, 0.0962, 0.0972, 0.1022, 0.1122, 0.1267, 0.1409, 0.1432, 0.1101,
    ],
    [
        0.1000, 0.0976, 0.0962, 0.0972, 0.1026, 0.1142, 0.1323, 0.1533, 0.1642, 0.1340,
    ],
    [
        0.1000, 0.0976, 0.0962, 0.0973, 0.1029, 0.1152, 0.1359, 0.1625, 0.1821, 0.1570,
    ],
    [
        0.1000, 0.0976, 0.0962, 0.0973, 0.1029, 0.1158, 0.1381, 0.1693, 0.1971, 0.1787,
    ],
    [
        0.1000, 0.0976, 0.0962, 0.0973, 0.1029, 0.1163, 0.1418, 0.1866, 0.2647, 0.4086,
    ],
];

fn p_sweep() -> Result<String, String> {
    let table = repro::table(7).map_err(|e| e.to_string())?;
    if table.rows.len() != TABLE7.len() {
        return Err(format!(
            "{} rows, expected {}",
            table.rows.len(),
            TABLE7.len()
        ));
    }
    let mut parts = Vec::new();
    for (row, want) in table.rows.iter().zip(TABLE7.iter()) {
        let got: Vec<f64> = row[1..].iter().filter_map(|c| c.num()).collect();
        let label = match &row[0] {
            rps_conflict_cli::table::Cell::Text(s) => s.clone(),
            other => format!("{other:?}"),
        };
        parts.push(compare(&label, &got, want, TOL));
    }
    max_err(&parts)
}

fn random_seq(rng: &mut ChaCha8Rng, n: usize) -> OrderedFocalSet {
    let mut items: Vec<usize> = (0..n).collect();
    items.shuffle(rng);
    let len = rng.gen_range(1..=n);
    OrderedFocalSet::new(items.into_iter().take(len)).unwrap()
}

fn random_open_or_finite(rng: &mut ChaCha8Rng, n: usize) -> OrderedFocalSet {
    let s = random_seq(rng, n);
    if rng.gen_bool(0.3) {
        OrderedFocalSet::open_ended(s.elements().iter().copied()).unwrap()
    } else {
        s
    }
}

fn random_body(rng: &mut ChaCha8Rng, n: usize) -> PermutationMassFunction {
    let count = rng.gen_range(1..=n.min(3));
    let mut entries: Vec<(OrderedFocalSet, f64)> = Vec::new();
    while entries.len() < count {
        let s = random_seq(rng, n);
        if !entries.iter().any(|(t, _)| *t == s) {
            entries.push((s, rng.gen_range(0.1..1.0)));
        }
    }
    let total: f64 = entries.iter().map(|(_, m)| m).sum();
    for e in &mut entries {
        e.1 /= total;
    }
    PermutationMassFunction::new(Frame::numbered(n).unwrap(), entries).unwrap()
}

fn schemes(n: usize) -> Vec<(WeightScheme, DepthSpec)> {
    vec![
        (WeightScheme::Uniform, DepthSpec::Default),
        (WeightScheme::Uniform, DepthSpec::Truncate(n.max(2) - 1)),
        (WeightScheme::Geometric { p: 0.5 }, DepthSpec::Default),
        (
            WeightScheme::Geometric { p: 0.8 },
            DepthSpec::Truncate(n + 2),
        ),
        (WeightScheme::Geometric { p: 0.3 }, DepthSpec::Unbounded),
        (
            WeightScheme::Custom(vec![0.4, 0.3, 0.2]),
            DepthSpec::Default,
        ),
    ]
}

/// Checks the pairwise properties for one pair; returns the number of checks made.
fn pair_properties(a: &OrderedFocalSet, b: &OrderedFocalSet, n: usize) -> Result<usize, String> {
    let show = |what: &str| format!("{what} for {a} vs {b}");
    for (scheme, depth) in schemes(n) {
        let ab = k_perm(a, b, &scheme, depth).map_err(|e| e.to_string())?;
        let ba = k_perm(b, a, &scheme, depth).map_err(|e| e.to_string())?;
        if (ab - ba).abs() > ORACLE_TOL {
            return Err(show(&format!("asymmetry {ab} vs {ba} under {scheme:?}")));
        }
        if !(0.0..=1.0).contains(&ab) {
            return Err(show(&format!("value {ab} out of range under {scheme:?}")));
        }
        if k_perm(a, a, &scheme, depth).map_err(|e| e.to_string())? != 0.0 {
            return Err(show("non-zero self conflict"));
        }
    }
    let la = a.elements();
    let lb = b.elements();
    let k = uniform(a, b);
    let want = oracle::k_uniform(la, lb, la.len().max(lb.len()));
    if (k - want).abs() > ORACLE_TOL {
        return Err(show(&format!("uniform value {k}, oracle {want}")));
    }
    let disjoint = a.support() & b.support() == 0;
    if disjoint != ((k - 1.0).abs() < ORACLE_TOL) {
        return Err(show(&format!("disjoint={disjoint} but k_perm={k}")));
    }
    if disjoint {
        for p in [0.0, 0.25, 0.5, 0.9] {
            let depth = la.len().min(lb.len());
            let got = k_perm(
                a,
                b,
                &WeightScheme::Geometric { p },
                DepthSpec::Truncate(depth),
            )
            .unwrap();
            let want = 1.0 - p.powi(depth as i32);
            if (got - want).abs() > ORACLE_TOL {
                return Err(show(&format!(
                    "truncated geometric mass {got}, expected {want}"
                )));
            }
        }
    }
    Ok(8)
}

fn weight_mass(n: usize) -> Result<(), String> {
    for p in [0.0, 0.1, 0.5, 0.75, 0.99] {
        let scheme = WeightScheme::Geometric { p };
        let sum: f64 = (1..=n).map(|d| scheme.weight_at(d, Some(n)).unwrap()).sum();
        let want = 1.0 - p.powi(n as i32);
        if (sum - want).abs() > ORACLE_TOL {
            return Err(format!(
                "weights to depth {n} at p={p} sum to {sum}, expected {want}"
            ));
        }
    }
    Ok(())
}

fn transposition(c: usize, t: usize) -> Result<(), String> {
    let base = fixtures::identity(c);
    let mut swapped: Vec<usize> = (0..c).collect();
    swapped.swap(t - 1, t);
    let got = uniform(&base, &OrderedFocalSet::new(swapped).unwrap());
    let want = 1.0 / (t * c) as f64;
    if (got - want).abs() > ORACLE_TOL {
        return Err(format!("swap at {t} of {c} gives {got}, expected {want}"));
    }
    Ok(())
}

/// Conf against the oracle summed over pairs of distinct focal sets only.
fn exclusion(p1: &PermutationMassFunction, p2: &PermutationMassFunction) -> Result<(), String> {
    let got = conf(p1, p2, &WeightScheme::Uniform, DepthSpec::Default)
        .map_err(|e| e.to_string())?
        .total;
    let mut want = 0.0;
    for (a, m1) in p1.focal() {
        for (b, m2) in p2.focal() {
            if a != b {
                let (la, lb) = (a.elements(), b.elements());
                want += oracle::k_uniform(la, lb, la.len().max(lb.len())) * m1 * m2;
            }
        }
    }
    if (got - want).abs() > ORACLE_TOL {
        return Err(format!("conf {got}, distinct-pair sum {want}"));
    }
    Ok(())
}

fn property_suite() -> Result<String, String> {
    let mut checks = 0usize;
    for n in 1..=4 {
        weight_mass(n)?;
        for t in 1..n {
            transposition(n, t)?;
        }
        let all: Vec<_> = oracle::all_sequences(n)
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect();
        for a in &all {
            for b in &all {
                checks += pair_properties(a, b, n)?;
            }
        }
    }
    let small: Vec<_> = oracle::all_sequences(3)
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    let frame = Frame::numbered(3).unwrap();
    let mut bodies = Vec::new();
    for a in &small {
        bodies.push(PermutationMassFunction::categorical(frame.clone(), a.clone()).unwrap());
        for b in &small {
            if a < b {
                let entries = vec![(a.clone(), 0.3), (b.clone(), 0.7)];
                bodies.push(PermutationMassFunction::new(frame.clone(), entries).unwrap());
            }
        }
    }
    for p1 in &bodies {
        for p2 in &bodies {
            exclusion(p1, p2)?;
            checks += 1;
        }
    }
    let exhaustive = checks;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..2000 {
        let n = rng.gen_range(1..=8);
        let a = random_seq(&mut rng, n);
        let b = random_seq(&mut rng, n);
        checks += pair_properties(&a, &b, n)?;
        weight_mass(n)?;
        if n >= 2 {
            transposition(n, rng.gen_range(1..n))?;
        }
        exclusion(&random_body(&mut rng, n), &random_body(&mut rng, n))?;
        checks += 3;
    }
    Ok(format!(
        "{exhaustive} exhaustive checks for n <= 4, {} seeded random checks for n <= 8",
        checks - exhaustive
    ))
}

fn oracle_equivalence() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xa5a5);
    let grid = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let a = random_open_or_finite(&mut rng, n);
        let b = random_open_or_finite(&mut rng, n);
        for p in grid {
            let got = k_perm(&a, &b, &WeightScheme::Geometric { p }, DepthSpec::Unbounded)
                .map_err(|e| e.to_string())?;
            let want = oracle::k_geometric_partial(&a, &b, p, 1e-13);
            let err = (got - want).abs();
            if err > ORACLE_TOL {
                return Err(format!(
                    "{a} vs {b} at p={p}: analytic {got}, partial sum {want}"
                ));
            }
            worst = worst.max(err);
        }
    }
    Ok(format!(
        "500 pairs x 9 values of p, max deviation {worst:.2e}"
    ))
}

fn encoding() -> Result<String, String> {
    let mut count = 0;
    for n in 0..=4 {
        let frame = Frame::numbered(n.max(1)).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for s in oracle::all_sequences(n) {
            let (i, j) = frame.encode(&s).map_err(|e| e.to_string())?;
            if frame.decode(i, j).map_err(|e| e.to_string())? != s {
                return Err(format!("{s} does not survive the round trip"));
            }
            if !seen.insert((i, j)) {
                return Err(format!("code ({}, {}) used twice", i.0, j.0));
            }
            count += 1;
        }
        for i in 0u64..(1 << n) {
            let c = i.count_ones() as u64;
            let total: u64 = (1..=c).product();
            for j in 1..=total {
                let s = perm_from_rank(SubsetCode(i), OrderCode(j)).map_err(|e| e.to_string())?;
                if s.subset_code() != SubsetCode(i)
                    || order_rank(&s).map_err(|e| e.to_string())? != OrderCode(j)
                {
                    return Err(format!("code ({i}, {j}) does not survive the round trip"));
                }
            }
        }
    }
    let quoted: [(u64, u64, &[usize]); 11] = [
        (5, 2, &[3, 1]),
        (7, 4, &[2, 3, 1]),
        (7, 5, &[3, 1, 2]),
        (21, 2, &[1, 5, 3]),
        (23, 7, &[2, 1, 3, 5]),
        (31, 25, &[2, 1, 3, 4, 5]),
        (31, 31, &[2, 3, 1, 4, 5]),
        (31, 7, &[1, 3, 2, 4, 5]),
        (31, 3, &[1, 2, 4, 3, 5]),
        (31, 2, &[1, 2, 3, 5, 4]),
        (127, 841, &[2, 3, 1, 4, 5, 6, 7]),
    ];
    let frame = Frame::numbered(7).unwrap();
    for (i, j, want) in quoted {
        let got = frame
            .decode(SubsetCode(i), OrderCode(j))
            .map_err(|e| e.to_string())?;
        if got != seq(want) {
            return Err(format!("F{i}^{j} decodes to {}", frame.render(&got)));
        }
    }
    Ok(format!("{count} sequences for n <= 4, 11 quoted codes"))
}

fn main() -> ExitCode {
    let mut suite = Suite { failures: 0 };
    suite.record(
        1,
        "pairwise k_perm and conf for two five-element bodies",
        order_disagreement(),
    );
    suite.record(
        2,
        "per-depth inconsistency profile",
        inconsistency_sequence(),
    );
    suite.record(
        3,
        "two-element k_perm values and additivity identities",
        two_element_values(),
    );
    suite.record(
        4,
        "taxonomy cases: conf values and body labels",
        taxonomy_cases(),
    );
    suite.record(
        5,
        "adjacent transpositions: conf and baselines",
        baseline_table(4, &[0.6, 0.55, 0.5333, 0.525, 0.5], 0.5, true),
    );
    suite.record(
        6,
        "identity prefix cardinality: conf and baselines",
        baseline_table(
            5,
            &[
                0.4047, 0.1824, 0.0936, 0.1436, 0.1976, 0.2469, 0.2903, 0.3282, 0.3614, 0.3906,
            ],
            0.05,
            true,
        ),
    );
    suite.record(
        7,
        "truncation depth: conf and baselines",
        baseline_table(
            6,
            &[0.0, 0.0, 0.0667, 0.125, 0.172, 0.2211, 0.2671],
            0.0,
            false,
        ),
    );
    suite.record(
        8,
        "geometric p sweep including the unbounded row",
        p_sweep(),
    );
    suite.record(9, "property suite", property_suite());
    suite.record(
        10,
        "analytic tail against partial sums",
        oracle_equivalence(),
    );
    suite.record(11, "encoding round trips and quoted codes", encoding());
    if suite.failures == 0 {
        println!("acceptance: all 11 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of 11 criteria failed", suite.failures);
        ExitCode::FAILURE
    }
}
