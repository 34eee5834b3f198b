//! Frame of discernment and the `(i, j)` encoding of ordered focal sets.
//!
//! A subset of the frame is coded by the integer `i` whose bit `t` is set
//! when the element at index `t` is present. An arrangement of that subset is
//! coded by `j`, one plus its lexicographic (Lehmer) rank among all
//! arrangements of the subset, where the base order is the frame order. So
//! `j = 1` is the index-sorted arrangement and `j = c!` its reversal.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

/// Largest frame the bitmask codes can address.
pub const MAX_FRAME_SIZE: usize = 64;

/// Largest cardinality whose factorial fits in a `u64`.
pub const MAX_RANK_LEN: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    labels: Vec<String>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > MAX_FRAME_SIZE {
            return Err(Error::FrameSize(labels.len()));
        }
        for (k, label) in labels.iter().enumerate() {
            if labels[..k].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Frame { labels })
    }

    /// Frame `w1, w2, ..., wn`.
    pub fn numbered(n: usize) -> Result<Self> {
        Frame::new((1..=n).map(|k| format!("w{k}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Option<&str> {
        self.labels.get(index).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// Bitmask code of a set of labels. Order and repetition are ignored.
    pub fn subset_code<S: AsRef<str>>(&self, elements: &[S]) -> Result<SubsetCode> {
        let mut bits = 0u64;
        for e in elements {
            bits |= 1 << self.index_of(e.as_ref())?;
        }
        Ok(SubsetCode(bits))
    }

    /// Labels of the subset coded by `code`, in frame order.
    pub fn subset_from_code(&self, code: SubsetCode) -> Result<Vec<&str>> {
        self.check_code(code)?;
        Ok(code.indices().map(|t| self.labels[t].as_str()).collect())
    }

    fn check_code(&self, code: SubsetCode) -> Result<()> {
        if code.0 & !self.full_mask() != 0 {
            return Err(Error::CodeOutOfRange {
                code: code.0,
                limit: self.full_mask(),
            });
        }
        Ok(())
    }

    /// `(i, j)` code of a finite ordered focal set over this frame.
    pub fn encode(&self, seq: &OrderedFocalSet) -> Result<(SubsetCode, OrderCode)> {
        self.check_members(seq)?;
        Ok((seq.subset_code(), order_rank(seq)?))
    }

    /// The ordered focal set coded by `(i, j)`.
    pub fn decode(&self, i: SubsetCode, j: OrderCode) -> Result<OrderedFocalSet> {
        self.check_code(i)?;
        perm_from_rank(i, j)
    }

    pub(crate) fn check_members(&self, seq: &OrderedFocalSet) -> Result<()> {
        if let Some(&bad) = seq.elements().iter().find(|&&e| e >= self.len()) {
            return Err(Error::ElementOutOfRange {
                index: bad,
                frame_size: self.len(),
            });
        }
        Ok(())
    }

    /// Renders a sequence as `(w2 w1 w3)`; open-ended sets end in `...`.
    pub fn render(&self, seq: &OrderedFocalSet) -> String {
        let mut out = String::from("(");
        for (k, &e) in seq.elements().iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            match self.label(e) {
                Some(l) => out.push_str(l),
                None => out.push_str(&format!("#{e}")),
            }
        }
        if seq.is_open() {
            out.push_str(if seq.is_empty() { "..." } else { " ..." });
        }
        out.push(')');
        out
    }

    /// Short code label `F23^7`, or `F_inf` for open-ended sets.
    pub fn code_label(&self, seq: &OrderedFocalSet) -> String {
        if seq.is_open() {
            return String::from("F_inf");
        }
        match order_rank(seq) {
            Ok(j) => format!("F{}^{}", seq.subset_code().0, j.0),
            Err(_) => format!("F{}", seq.subset_code().0),
        }
    }
}

/// Bit-vector code of a subset: bit `t` set iff the element at index `t` is present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetCode(pub u64);

impl SubsetCode {
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut bits = 0u64;
        for t in indices {
            if t >= MAX_FRAME_SIZE {
                return Err(Error::ElementOutOfRange {
                    index: t,
                    frame_size: MAX_FRAME_SIZE,
                });
            }
            bits |= 1 << t;
        }
        Ok(SubsetCode(bits))
    }

    pub fn cardinality(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Member indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        core::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let t = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(t)
            }
        })
    }
}

/// 1-based lexicographic rank of an arrangement of a subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderCode(pub u64);

/// A duplicate-free sequence of frame element indices.
///
/// An *open* set continues past its listed prefix with an unending run of
/// elements that lie outside the frame; it models a ranking of unbounded
/// depth. All open sets continue with the same run, so two open sets that
/// list the same prefix are equal. Open sets have no `(i, j)` code and never
/// arise from evidence files.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedFocalSet {
    elements: Vec<usize>,
    support: u64,
    open: bool,
}

impl OrderedFocalSet {
    pub fn new<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let elements: Vec<usize> = elements.into_iter().collect();
        let mut support = 0u64;
        for &e in &elements {
            if e >= MAX_FRAME_SIZE {
                return Err(Error::ElementOutOfRange {
                    index: e,
                    frame_size: MAX_FRAME_SIZE,
                });
            }
            if support & (1 << e) != 0 {
                return Err(Error::DuplicateElement(e));
            }
            support |= 1 << e;
        }
        Ok(OrderedFocalSet {
            elements,
            support,
            open: false,
        })
    }

    pub fn from_labels<S: AsRef<str>>(frame: &Frame, labels: &[S]) -> Result<Self> {
        let indices = labels
            .iter()
            .map(|l| frame.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        OrderedFocalSet::new(indices)
    }

    /// `prefix` followed by infinitely many elements from outside the frame.
    pub fn open_ended<I: IntoIterator<Item = usize>>(prefix: I) -> Result<Self> {
        let mut seq = OrderedFocalSet::new(prefix)?;
        seq.open = true;
        Ok(seq)
    }

    /// The listed elements (the whole sequence unless the set is open).
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Number of listed elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty() && !self.open
    }

    pub fn is_open(&self) -> bool {
        self.open
    }

    /// Support bitmask of the listed elements.
    pub fn support(&self) -> u64 {
        self.support
    }

    pub fn subset_code(&self) -> SubsetCode {
        SubsetCode(self.support)
    }

    pub fn contains(&self, element: usize) -> bool {
        element < MAX_FRAME_SIZE && self.support & (1 << element) != 0
    }

    /// 1-based position of `element`, if present.
    pub fn position(&self, element: usize) -> Option<usize> {
        self.elements
            .iter()
            .position(|&e| e == element)
            .map(|p| p + 1)
    }

    /// Bitmask of the first `min(depth, len)` elements.
    pub fn prefix_mask(&self, depth: usize) -> u64 {
        self.elements
            .iter()
            .take(depth)
            .fold(0u64, |acc, &e| acc | (1 << e))
    }

    /// Cardinality of the depth-`depth` prefix, counting out-of-frame tail elements.
    pub fn prefix_len(&self, depth: usize) -> usize {
        if self.open {
            depth
        } else {
            depth.min(self.elements.len())
        }
    }
}

impl PartialOrd for OrderedFocalSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by `(i, j)` code; open sets sort after all finite ones.
impl Ord for OrderedFocalSet {
    fn cmp(&self, other: &Self) -> Ordering {
        // Lexicographic order of element indices within one support is exactly
        // the order of Lehmer ranks, so no rank needs computing here.
        self.open
            .cmp(&other.open)
            .then(self.support.cmp(&other.support))
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl fmt::Display for OrderedFocalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, e) in self.elements.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "w{}", e + 1)?;
        }
        if self.open {
            f.write_str(" ...")?;
        }
        f.write_str(")")
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Order code `j` of a finite sequence.
pub fn order_rank(seq: &OrderedFocalSet) -> Result<OrderCode> {
    if seq.is_open() {
        return Err(Error::Unbounded);
    }
    let c = seq.len();
    if c > MAX_RANK_LEN {
        return Err(Error::TooLarge {
            len: c,
            max: MAX_RANK_LEN,
        });
    }
    let mut remaining = seq.support();
    let mut rank = 0u64;
    for (k, &e) in seq.elements().iter().enumerate() {
        let smaller = (remaining & ((1u64 << e) - 1)).count_ones() as u64;
        rank += smaller * factorial(c - 1 - k);
        remaining &= !(1 << e);
    }
    Ok(OrderCode(rank + 1))
}

/// The arrangement of subset `i` with order code `j`.
pub fn perm_from_rank(i: SubsetCode, j: OrderCode) -> Result<OrderedFocalSet> {
    let c = i.cardinality();
    if c > MAX_RANK_LEN {
        return Err(Error::TooLarge {
            len: c,
            max: MAX_RANK_LEN,
        });
    }
    let total = factorial(c);
    if j.0 == 0 || j.0 > total {
        return Err(Error::CodeOutOfRange {
            code: j.0,
            limit: total,
        });
    }
    let mut pool: Vec<usize> = i.indices().collect();
    let mut rank = j.0 - 1;
    let mut out = Vec::with_capacity(c);
    for k in (0..c).rev() {
        let f = factorial(k);
        let pick = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(pick));
    }
    OrderedFocalSet::new(out)
}
