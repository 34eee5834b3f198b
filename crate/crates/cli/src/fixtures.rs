//! Built-in bodies of evidence for the worked examples behind the reference tables.
//!
//! Sequences are written with 1-based element numbers, `&[2, 1, 3]` standing
//! for `(w2 w1 w3)` on a numbered frame.

use rps_conflict::{Frame, OrderedFocalSet, PermutationMassFunction};

/// Ordered focal set from 1-based element numbers.
pub fn seq(elements: &[usize]) -> OrderedFocalSet {
    OrderedFocalSet::new(elements.iter().map(|e| e - 1)).expect("fixture sequence")
}

/// `(w1 w2 ... wc)`.
pub fn identity(c: usize) -> OrderedFocalSet {
    OrderedFocalSet::new(0..c).expect("identity sequence")
}

/// `(w1 w2 ... wn ...)` continuing without end past the frame.
pub fn infinite_identity(n: usize) -> OrderedFocalSet {
    OrderedFocalSet::open_ended(0..n).expect("identity sequence")
}

/// Builds a body, summing the mass of repeated sequences.
pub fn body(n: usize, entries: &[(OrderedFocalSet, f64)]) -> PermutationMassFunction {
    let mut merged: Vec<(OrderedFocalSet, f64)> = Vec::new();
    for (s, m) in entries {
        match merged.iter_mut().find(|(t, _)| t == s) {
            Some(slot) => slot.1 += m,
            None => merged.push((s.clone(), *m)),
        }
    }
    PermutationMassFunction::new(Frame::numbered(n).expect("frame"), merged).expect("fixture body")
}

fn listed(n: usize, entries: &[(&[usize], f64)]) -> PermutationMassFunction {
    let owned: Vec<_> = entries.iter().map(|(s, m)| (seq(s), *m)).collect();
    body(n, &owned)
}

/// Two bodies on five elements with orders that partly disagree.
pub fn order_disagreement() -> (PermutationMassFunction, PermutationMassFunction) {
    (
        listed(5, &[(&[2, 1, 3, 5], 0.6), (&[1, 5, 3], 0.4)]),
        listed(5, &[(&[1, 2, 3, 4, 5], 0.8), (&[1, 3], 0.2)]),
    )
}

/// Three-element bodies whose supports overlap only partly.
pub fn ordered_supports() -> (PermutationMassFunction, PermutationMassFunction) {
    (
        listed(3, &[(&[1, 2], 0.8), (&[3], 0.2)]),
        listed(3, &[(&[2, 3, 1], 1.0)]),
    )
}

/// `(w1)`, `(w2)`, `(w1 w2)`, `(w2 w1)`.
pub fn two_element_sequences() -> [OrderedFocalSet; 4] {
    [seq(&[1]), seq(&[2]), seq(&[1, 2]), seq(&[2, 1])]
}

/// The nine body pairs on a seven-element frame, in case order.
pub fn taxonomy_cases() -> Vec<(PermutationMassFunction, PermutationMassFunction)> {
    vec![
        (
            listed(7, &[(&[1, 2, 3], 1.0)]),
            listed(7, &[(&[4, 5, 6], 1.0)]),
        ),
        (
            listed(7, &[(&[1, 2], 0.8), (&[4, 7], 0.2)]),
            listed(7, &[(&[3, 5], 0.5), (&[6], 0.5)]),
        ),
        (
            listed(7, &[(&[3, 5, 7], 1.0)]),
            listed(7, &[(&[5, 7], 0.4), (&[7, 3], 0.6)]),
        ),
        (
            listed(7, &[(&[1, 2], 0.3), (&[3, 4], 0.7)]),
            listed(7, &[(&[2, 3, 4], 0.5), (&[5], 0.5)]),
        ),
        (
            listed(7, &[(&[2, 3, 4], 1.0)]),
            listed(7, &[(&[2, 4, 3], 1.0)]),
        ),
        (
            listed(7, &[(&[2, 3, 4], 1.0)]),
            listed(7, &[(&[3, 2, 4], 0.5), (&[4, 2, 3], 0.5)]),
        ),
        (
            listed(7, &[(&[2, 3, 4], 1.0)]),
            listed(7, &[(&[2, 3], 1.0)]),
        ),
        (
            listed(7, &[(&[2, 3, 4], 1.0)]),
            listed(7, &[(&[2], 0.8), (&[2, 3], 0.2)]),
        ),
        (
            listed(7, &[(&[1, 7, 2, 5], 1.0)]),
            listed(7, &[(&[1, 7, 2, 5], 1.0)]),
        ),
    ]
}

/// The five arrangements of `w1..w5` tried as `X`, from the first adjacent
/// transposition down to the identity.
pub fn transposition_variants() -> Vec<OrderedFocalSet> {
    vec![
        seq(&[2, 1, 3, 4, 5]),
        seq(&[1, 3, 2, 4, 5]),
        seq(&[1, 2, 4, 3, 5]),
        seq(&[1, 2, 3, 5, 4]),
        seq(&[1, 2, 3, 4, 5]),
    ]
}

/// Eight-element bodies; the second is categorical on `x`.
pub fn transposition_family(
    x: OrderedFocalSet,
) -> (PermutationMassFunction, PermutationMassFunction) {
    (
        listed(8, &[(&[6], 0.2), (&[7, 8], 0.3), (&[1, 2, 3, 4, 5], 0.5)]),
        body(8, &[(x, 1.0)]),
    )
}

/// Ten-element bodies; `x` carries 0.8 of the first body's mass.
pub fn cardinality_family(
    x: OrderedFocalSet,
) -> (PermutationMassFunction, PermutationMassFunction) {
    (
        body(
            10,
            &[
                (seq(&[4]), 0.05),
                (seq(&[2, 3]), 0.05),
                (x, 0.8),
                (seq(&[1, 2, 3, 4, 5]), 0.1),
            ],
        ),
        listed(10, &[(&[1, 2, 3], 1.0)]),
    )
}

/// Seven-element bodies that agree on the top two positions.
pub fn depth_family() -> (PermutationMassFunction, PermutationMassFunction) {
    (
        listed(7, &[(&[2, 3, 1, 4, 5], 0.4), (&[2, 3], 0.6)]),
        listed(7, &[(&[2, 3, 1, 4, 5, 6, 7], 1.0)]),
    )
}
