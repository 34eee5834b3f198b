//! Order and elemental conflict between ordered focal sets, and the pair and
//! body taxonomies built from them.

use crate::conflict::{left_intersection, right_intersection};
use crate::error::{Error, Result};
use crate::evidence::PermutationMassFunction;
use crate::frame::OrderedFocalSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairTaxonomy {
    Identical,
    /// No common element.
    Disjoint,
    /// Same elements, different order.
    OrderOnly,
    /// Elements missing on one side, common elements in consistent positions.
    ElementOnly,
    OrderAndElement,
}

impl PairTaxonomy {
    pub fn as_str(self) -> &'static str {
        match self {
            PairTaxonomy::Identical => "identical",
            PairTaxonomy::Disjoint => "disjoint",
            PairTaxonomy::OrderOnly => "order",
            PairTaxonomy::ElementOnly => "element",
            PairTaxonomy::OrderAndElement => "order+element",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BodyTaxonomy {
    TotalConflict,
    StrongConflict,
    WeakConflict,
    NonConflict,
    /// Mixed pair kinds that none of the other levels describe.
    Unclassified,
}

impl BodyTaxonomy {
    pub fn as_str(self) -> &'static str {
        match self {
            BodyTaxonomy::TotalConflict => "total",
            BodyTaxonomy::StrongConflict => "strong",
            BodyTaxonomy::WeakConflict => "weak",
            BodyTaxonomy::NonConflict => "non-conflict",
            BodyTaxonomy::Unclassified => "unclassified",
        }
    }
}

/// Some shared element sits at different 1-based positions in `a` and `b`.
pub fn has_order_conflict(a: &OrderedFocalSet, b: &OrderedFocalSet) -> bool {
    a.elements()
        .iter()
        .enumerate()
        .any(|(pos, &e)| b.position(e).is_some_and(|q| q != pos + 1))
}

/// Elements present on one side only, among sequences that share something.
///
/// When the left and right intersections agree the pair is elemental iff it
/// is not identical. When they disagree the pair also has an order conflict,
/// and it is elemental iff the supports differ.
pub fn has_elemental_conflict(a: &OrderedFocalSet, b: &OrderedFocalSet) -> bool {
    if a.support() & b.support() == 0 || a == b {
        return false;
    }
    if left_intersection(a, b) == right_intersection(a, b) {
        true
    } else {
        a.support() != b.support() || a.is_open() != b.is_open()
    }
}

pub fn classify_pair(a: &OrderedFocalSet, b: &OrderedFocalSet) -> PairTaxonomy {
    if a == b {
        return PairTaxonomy::Identical;
    }
    if a.support() & b.support() == 0 {
        return PairTaxonomy::Disjoint;
    }
    match (has_order_conflict(a, b), has_elemental_conflict(a, b)) {
        (true, true) => PairTaxonomy::OrderAndElement,
        (true, false) => PairTaxonomy::OrderOnly,
        (false, true) => PairTaxonomy::ElementOnly,
        // Without an order conflict the common elements occupy equal positions,
        // so both intersections coincide and a non-identical pair is elemental.
        (false, false) => unreachable!("non-identical intersecting pair without conflict"),
    }
}

pub fn classify_bodies(
    pmf1: &PermutationMassFunction,
    pmf2: &PermutationMassFunction,
) -> Result<BodyTaxonomy> {
    if pmf1.frame() != pmf2.frame() {
        return Err(Error::FrameMismatch);
    }
    let labels: alloc::vec::Vec<_> = pmf1
        .focal()
        .iter()
        .flat_map(|(a, _)| pmf2.focal().iter().map(move |(b, _)| classify_pair(a, b)))
        .collect();
    use PairTaxonomy::*;
    let all = |f: &dyn Fn(PairTaxonomy) -> bool| labels.iter().all(|&l| f(l));
    Ok(if all(&|l| l == Disjoint) {
        BodyTaxonomy::TotalConflict
    } else if pmf1.is_categorical() && pmf2.is_categorical() && labels == [Identical] {
        BodyTaxonomy::NonConflict
    } else if all(&|l| matches!(l, OrderAndElement | Disjoint)) {
        BodyTaxonomy::StrongConflict
    } else if all(&|l| matches!(l, OrderOnly | ElementOnly)) {
        BodyTaxonomy::WeakConflict
    } else {
        BodyTaxonomy::Unclassified
    })
}
