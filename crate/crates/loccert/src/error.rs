use thiserror::Error;

/// Errors produced by state construction, parsing and certification.
#[derive(Debug, Error)]
pub enum Error {
    /// Two states (or a state and a shape) disagree structurally.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A generator was called with dimensions outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A set that must be pairwise orthogonal is not; carries the violating
    /// label pairs in deterministic order.
    #[error("orthogonality violated for {} pair(s): {}", .0.len(), format_pairs(.0))]
    NotOrthogonal(Vec<(String, String)>),

    /// A party index outside `0..shape.parties()`.
    #[error("party index {party} out of range for {parties} parties")]
    PartyOutOfRange { party: usize, parties: usize },

    /// Text input that does not conform to the state-set file format.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Grid rendering is only defined for 2 or 3 parties.
    #[error("rendering not supported for {0} parties (only 2 or 3)")]
    UnsupportedRendering(usize),

    /// An internal contract was violated; indicates a bug, not bad input.
    #[error("logic error: {0}")]
    Logic(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

fn format_pairs(pairs: &[(String, String)]) -> String {
    let shown: Vec<String> = pairs
        .iter()
        .take(8)
        .map(|(a, b)| format!("({a}, {b})"))
        .collect();
    let mut s = shown.join(", ");
    if pairs.len() > 8 {
        s.push_str(", ...");
    }
    s
}

pub type Result<T> = std::result::Result<T, Error>;
