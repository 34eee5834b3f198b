//! Prefix overlap between ranked sequences and the permutation-level conflict.
//!
//! For two sequences `A`, `B` and a depth `d`, the depth-`d` prefix of a
//! sequence is the set of its first `d` elements; once `d` passes the end of
//! a finite sequence its prefix stops growing. With `I_d` the intersection
//! of both prefixes:
//!
//! - agreement `C_d = |I_d| / d`
//! - inconsistency `InC_d = (max(|A_{1:d}|, |B_{1:d}|) - |I_d|) / d`
//!
//! Average overlap and rank-biased overlap are weighted sums of `C_d`, and
//! [`k_perm`] is the weighted sum of `InC_d` over depths `1..=n`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::frame::{OrderedFocalSet, SubsetCode};

/// Depth weights `alpha_d`.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightScheme {
    /// `1/n` at each depth `1..=n`.
    Uniform,
    /// `(1 - p) p^(d-1)`, with `0 <= p < 1`. `p = 0` puts all weight on depth 1.
    Geometric { p: f64 },
    /// Explicit weights for depths `1, 2, ...`; zero past the end of the list.
    Custom(Vec<f64>),
}

impl WeightScheme {
    pub fn geometric(p: f64) -> Result<Self> {
        let scheme = WeightScheme::Geometric { p };
        scheme.validate()?;
        Ok(scheme)
    }

    pub fn custom(weights: Vec<f64>) -> Result<Self> {
        let scheme = WeightScheme::Custom(weights);
        scheme.validate()?;
        Ok(scheme)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            WeightScheme::Uniform => Ok(()),
            WeightScheme::Geometric { p } => {
                if (0.0..1.0).contains(p) {
                    Ok(())
                } else {
                    Err(Error::ParameterOutOfRange {
                        name: "p",
                        value: *p,
                    })
                }
            }
            WeightScheme::Custom(w) => {
                let total: f64 = w.iter().sum();
                if w.iter().all(|x| x.is_finite() && *x >= 0.0) && total <= 1.0 + 1e-9 {
                    Ok(())
                } else {
                    Err(Error::InvalidWeights)
                }
            }
        }
    }

    /// Weight of depth `d` when the evaluation depth is `n` (`None` for unbounded).
    pub fn weight_at(&self, d: usize, n: Option<usize>) -> Result<f64> {
        assert!(d >= 1, "depths start at 1");
        self.validate()?;
        Ok(match self {
            WeightScheme::Uniform => {
                let n = n.ok_or(Error::UnboundedUniform)?;
                if d <= n {
                    1.0 / n as f64
                } else {
                    0.0
                }
            }
            WeightScheme::Geometric { p } => (1.0 - p) * libm::pow(*p, (d - 1) as f64),
            WeightScheme::Custom(w) => w.get(d - 1).copied().unwrap_or(0.0),
        })
    }
}

/// How many depths [`k_perm`] sums over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DepthSpec {
    /// `n = max(|A|, |B|)` for each pair; unbounded if either sequence is open.
    #[default]
    Default,
    /// A fixed `n` for every pair.
    Truncate(usize),
    /// Every depth, summed in closed form. Geometric weights only.
    Unbounded,
}

impl DepthSpec {
    /// The evaluation depth for a pair, `None` meaning unbounded.
    pub fn resolve(self, a: &OrderedFocalSet, b: &OrderedFocalSet) -> Result<Option<usize>> {
        match self {
            DepthSpec::Truncate(0) => Err(Error::ParameterOutOfRange {
                name: "depth",
                value: 0.0,
            }),
            DepthSpec::Truncate(n) => Ok(Some(n)),
            DepthSpec::Default if a.is_open() || b.is_open() => Ok(None),
            DepthSpec::Default => Ok(Some(a.len().max(b.len()).max(1))),
            DepthSpec::Unbounded => Ok(None),
        }
    }
}

/// Walks depths `1, 2, ...` keeping both prefix masks current.
struct DepthWalk<'a> {
    a: &'a OrderedFocalSet,
    b: &'a OrderedFocalSet,
    depth: usize,
    mask_a: u64,
    mask_b: u64,
}

/// Prefix cardinalities and overlap at one depth.
#[derive(Debug, Clone, Copy)]
struct Step {
    depth: usize,
    len_a: usize,
    len_b: usize,
    overlap: usize,
}

impl Step {
    fn agreement(self) -> f64 {
        self.overlap as f64 / self.depth as f64
    }

    fn inconsistency(self) -> f64 {
        (self.len_a.max(self.len_b) - self.overlap) as f64 / self.depth as f64
    }
}

impl<'a> DepthWalk<'a> {
    fn new(a: &'a OrderedFocalSet, b: &'a OrderedFocalSet) -> Self {
        DepthWalk {
            a,
            b,
            depth: 0,
            mask_a: 0,
            mask_b: 0,
        }
    }
}

impl Iterator for DepthWalk<'_> {
    type Item = Step;

    fn next(&mut self) -> Option<Step> {
        let k = self.depth;
        self.depth += 1;
        if let Some(&e) = self.a.elements().get(k) {
            self.mask_a |= 1 << e;
        }
        if let Some(&e) = self.b.elements().get(k) {
            self.mask_b |= 1 << e;
        }
        Some(Step {
            depth: self.depth,
            len_a: self.a.prefix_len(self.depth),
            len_b: self.b.prefix_len(self.depth),
            overlap: (self.mask_a & self.mask_b).count_ones() as usize
                + shared_tail(self.a, self.b, self.depth),
        })
    }
}

fn step_at(a: &OrderedFocalSet, b: &OrderedFocalSet, d: usize) -> Step {
    assert!(d >= 1, "depths start at 1");
    Step {
        depth: d,
        len_a: a.prefix_len(d),
        len_b: b.prefix_len(d),
        overlap: (a.prefix_mask(d) & b.prefix_mask(d)).count_ones() as usize + shared_tail(a, b, d),
    }
}

/// Out-of-frame elements common to both depth-`d` prefixes. Every open
/// sequence continues with the same run of fresh elements, so two open
/// prefixes share the part of that run both have reached.
fn shared_tail(a: &OrderedFocalSet, b: &OrderedFocalSet, d: usize) -> usize {
    if a.is_open() && b.is_open() {
        d.saturating_sub(a.len().max(b.len()))
    } else {
        0
    }
}

/// Listed elements among the first `d` (saturating past the end).
pub fn prefix_set(a: &OrderedFocalSet, d: usize) -> SubsetCode {
    assert!(d >= 1, "depths start at 1");
    SubsetCode(a.prefix_mask(d))
}

/// `|I_d|`.
pub fn overlap_at(a: &OrderedFocalSet, b: &OrderedFocalSet, d: usize) -> usize {
    step_at(a, b, d).overlap
}

/// `C_d = |I_d| / d`.
pub fn agreement_at(a: &OrderedFocalSet, b: &OrderedFocalSet, d: usize) -> f64 {
    step_at(a, b, d).agreement()
}

/// `InC_d`, the depth-normalised non-overlap.
pub fn inconsistency_at(a: &OrderedFocalSet, b: &OrderedFocalSet, d: usize) -> f64 {
    step_at(a, b, d).inconsistency()
}

/// `InC_1, ..., InC_n`.
pub fn inconsistency_profile(a: &OrderedFocalSet, b: &OrderedFocalSet, n: usize) -> Vec<f64> {
    DepthWalk::new(a, b)
        .take(n)
        .map(Step::inconsistency)
        .collect()
}

/// Mean of `C_1..C_n`.
pub fn average_overlap(a: &OrderedFocalSet, b: &OrderedFocalSet, n: usize) -> f64 {
    assert!(n >= 1, "depths start at 1");
    DepthWalk::new(a, b)
        .take(n)
        .map(Step::agreement)
        .sum::<f64>()
        / n as f64
}

/// Rank-biased overlap `(1 - p) sum p^(d-1) C_d` summed through `eval_depth`.
pub fn rbo_similarity(
    a: &OrderedFocalSet,
    b: &OrderedFocalSet,
    p: f64,
    eval_depth: usize,
) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::ParameterOutOfRange {
            name: "p",
            value: p,
        });
    }
    assert!(eval_depth >= 1, "depths start at 1");
    let mut weight = 1.0 - p;
    let mut total = 0.0;
    for step in DepthWalk::new(a, b).take(eval_depth) {
        total += weight * step.agreement();
        weight *= p;
    }
    Ok(total)
}

/// `sum_{d > D} p^d / d` for `0 < p < 1`, via `-ln(1 - p) - sum_{d <= D} p^d / d`.
fn log_series_tail(p: f64, head: usize) -> f64 {
    let mut partial = 0.0;
    let mut power = 1.0;
    for d in 1..=head {
        power *= p;
        partial += power / d as f64;
    }
    // Rounding can leave a tiny negative residue when the tail underflows.
    (-libm::log1p(-p) - partial).max(0.0)
}

/// Permutation-level conflict: `sum_d alpha_d InC_d` over the depths chosen by `depth`.
///
/// Symmetric in `a` and `b`, zero when they are equal, and within `[0, 1]`.
/// For unbounded depth the sum past `D = max(|A|, |B|)` is taken in closed
/// form. Beyond `D` every listed element is inside both prefixes, so with
/// `o` the number of shared listed elements `InC_d = (D - o) / d` when both
/// sequences are finite or both open, and `InC_d = (d - o) / d` when exactly
/// one is open. Both are summed against geometric weights with the
/// logarithm series.
pub fn k_perm(
    a: &OrderedFocalSet,
    b: &OrderedFocalSet,
    scheme: &WeightScheme,
    depth: DepthSpec,
) -> Result<f64> {
    scheme.validate()?;
    let n = depth.resolve(a, b)?;
    if n.is_none() && !matches!(scheme, WeightScheme::Geometric { .. }) {
        return Err(Error::UnboundedUniform);
    }
    if a == b {
        return Ok(0.0);
    }
    match (scheme, n) {
        (WeightScheme::Uniform, Some(n)) => {
            let sum: f64 = DepthWalk::new(a, b).take(n).map(Step::inconsistency).sum();
            Ok(sum / n as f64)
        }
        (WeightScheme::Custom(w), Some(n)) => Ok(DepthWalk::new(a, b)
            .zip(w.iter())
            .take(n)
            .map(|(step, alpha)| alpha * step.inconsistency())
            .sum()),
        // Rounding in the weight products can overshoot 1 by an ulp.
        (WeightScheme::Geometric { p }, Some(n)) => Ok(geometric_head(a, b, *p, n).min(1.0)),
        (WeightScheme::Geometric { p }, None) => {
            let p = *p;
            let head = a.len().max(b.len()).max(1);
            let mut total = geometric_head(a, b, p, head);
            if p > 0.0 {
                let shared = (a.support() & b.support()).count_ones() as f64;
                let tail_sum = log_series_tail(p, head);
                let scale = (1.0 - p) / p;
                total += if a.is_open() != b.is_open() {
                    // sum_{d > D} alpha_d = p^D
                    libm::pow(p, head as f64) - shared * scale * tail_sum
                } else {
                    (head as f64 - shared) * scale * tail_sum
                };
            }
            Ok(total.clamp(0.0, 1.0))
        }
        (_, None) => unreachable!(),
    }
}

fn geometric_head(a: &OrderedFocalSet, b: &OrderedFocalSet, p: f64, n: usize) -> f64 {
    let mut weight = 1.0 - p;
    let mut total = 0.0;
    for step in DepthWalk::new(a, b).take(n) {
        total += weight * step.inconsistency();
        weight *= p;
        if weight == 0.0 {
            break;
        }
    }
    total
}
