//! Body-level conflict between two bodies of evidence.

use alloc::vec::Vec;

use crate::classify::{classify_pair, PairTaxonomy};
use crate::error::{Error, Result};
use crate::evidence::{MassFunction, PermutationMassFunction};
use crate::frame::OrderedFocalSet;
use crate::overlap::{k_perm, DepthSpec, WeightScheme};

/// One cross pair of focal sets and its contribution.
#[derive(Debug, Clone, PartialEq)]
pub struct PairTerm {
    pub left: OrderedFocalSet,
    pub right: OrderedFocalSet,
    pub mass_product: f64,
    pub k_perm: f64,
    pub taxonomy: PairTaxonomy,
}

impl PairTerm {
    pub fn contribution(&self) -> f64 {
        self.k_perm * self.mass_product
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConflictReport {
    pub total: f64,
    /// Every cross pair, ordered by the `(i, j)` codes of the first then the second focal set.
    pub pairs: Vec<PairTerm>,
    pub scheme: WeightScheme,
    pub depth: DepthSpec,
}

fn same_frame(a: &crate::Frame, b: &crate::Frame) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FrameMismatch)
    }
}

/// Non-overlap conflict: `sum k_perm(A, B) Perm1(A) Perm2(B)` over pairs with `A != B`.
///
/// Pairs with identical sequences are still listed in the report, with `k_perm = 0`.
pub fn conf(
    pmf1: &PermutationMassFunction,
    pmf2: &PermutationMassFunction,
    scheme: &WeightScheme,
    depth: DepthSpec,
) -> Result<ConflictReport> {
    same_frame(pmf1.frame(), pmf2.frame())?;
    scheme.validate()?;
    let mut pairs = Vec::with_capacity(pmf1.len() * pmf2.len());
    let mut total = 0.0;
    for (a, m1) in pmf1.focal() {
        for (b, m2) in pmf2.focal() {
            let k = if a == b {
                0.0
            } else {
                k_perm(a, b, scheme, depth)?
            };
            let term = PairTerm {
                left: a.clone(),
                right: b.clone(),
                mass_product: m1 * m2,
                k_perm: k,
                taxonomy: classify_pair(a, b),
            };
            total += term.contribution();
            pairs.push(term);
        }
    }
    Ok(ConflictReport {
        total,
        pairs,
        scheme: scheme.clone(),
        depth,
    })
}

/// Classical conflict: total mass product over pairs of focal sets with empty intersection.
pub fn shafer_conflict(m1: &MassFunction, m2: &MassFunction) -> Result<f64> {
    same_frame(m1.frame(), m2.frame())?;
    Ok(m1
        .focal()
        .iter()
        .flat_map(|(a, x)| {
            m2.focal()
                .iter()
                .filter(move |(b, _)| a.0 & b.0 == 0)
                .map(move |(_, y)| x * y)
        })
        .sum())
}

/// Elements of `a` that also occur in `b`, in `a`'s order.
pub fn left_intersection(a: &OrderedFocalSet, b: &OrderedFocalSet) -> OrderedFocalSet {
    restrict(a, b.support())
}

/// Elements of `b` that also occur in `a`, in `b`'s order.
pub fn right_intersection(a: &OrderedFocalSet, b: &OrderedFocalSet) -> OrderedFocalSet {
    restrict(b, a.support())
}

fn restrict(seq: &OrderedFocalSet, keep: u64) -> OrderedFocalSet {
    OrderedFocalSet::new(
        seq.elements()
            .iter()
            .copied()
            .filter(|&e| keep & (1 << e) != 0),
    )
    .expect("subsequence of a valid sequence")
}

fn empty_intersection_mass<F>(
    pmf1: &PermutationMassFunction,
    pmf2: &PermutationMassFunction,
    intersect: F,
) -> Result<f64>
where
    F: Fn(&OrderedFocalSet, &OrderedFocalSet) -> OrderedFocalSet,
{
    same_frame(pmf1.frame(), pmf2.frame())?;
    let mut total = 0.0;
    for (a, x) in pmf1.focal() {
        for (b, y) in pmf2.focal() {
            if intersect(a, b).is_empty() {
                total += x * y;
            }
        }
    }
    Ok(total)
}

/// Left conflict: mass on pairs whose left intersection is empty.
pub fn left_conflict(
    pmf1: &PermutationMassFunction,
    pmf2: &PermutationMassFunction,
) -> Result<f64> {
    empty_intersection_mass(pmf1, pmf2, left_intersection)
}

/// Right conflict: mass on pairs whose right intersection is empty.
pub fn right_conflict(
    pmf1: &PermutationMassFunction,
    pmf2: &PermutationMassFunction,
) -> Result<f64> {
    empty_intersection_mass(pmf1, pmf2, right_intersection)
}
