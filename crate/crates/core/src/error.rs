use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A frame must hold between 1 and 64 elements.
    FrameSize(usize),
    DuplicateLabel(String),
    UnknownElement(String),
    /// Element index outside the frame.
    ElementOutOfRange {
        index: usize,
        frame_size: usize,
    },
    DuplicateElement(usize),
    CodeOutOfRange {
        code: u64,
        limit: u64,
    },
    /// Too many elements to enumerate or rank in 64 bits.
    TooLarge {
        len: usize,
        max: usize,
    },
    /// The operation needs a finite sequence but got an open-ended one.
    Unbounded,
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
    },
    UnboundedUniform,
    FrameMismatch,
    InvalidWeights,
    /// Evidence failed validation; see [`crate::evidence::validate_body`].
    InvalidBody(alloc::vec::Vec<crate::Violation>),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FrameSize(n) => write!(f, "frame size {n} outside 1..=64"),
            Error::DuplicateLabel(l) => write!(f, "label {l:?} appears twice in frame"),
            Error::UnknownElement(l) => write!(f, "element {l:?} is not in the frame"),
            Error::ElementOutOfRange { index, frame_size } => {
                write!(
                    f,
                    "element index {index} outside frame of size {frame_size}"
                )
            }
            Error::DuplicateElement(i) => write!(f, "element index {i} repeated in sequence"),
            Error::CodeOutOfRange { code, limit } => {
                write!(f, "code {code} out of range (limit {limit})")
            }
            Error::TooLarge { len, max } => {
                write!(
                    f,
                    "sequence of length {len} exceeds enumeration limit {max}"
                )
            }
            Error::Unbounded => f.write_str("operation requires a finite ordered focal set"),
            Error::ParameterOutOfRange { name, value } => {
                write!(f, "parameter {name} = {value} out of range")
            }
            Error::UnboundedUniform => f.write_str("unbounded depth requires geometric weights"),
            Error::FrameMismatch => f.write_str("bodies of evidence use different frames"),
            Error::InvalidWeights => {
                f.write_str("custom weights must be finite, non-negative and sum to at most 1")
            }
            Error::InvalidBody(v) => {
                write!(f, "invalid body of evidence:")?;
                for violation in v {
                    write!(f, " {violation};")?;
                }
                Ok(())
            }
        }
    }
}

impl core::error::Error for Error {}
