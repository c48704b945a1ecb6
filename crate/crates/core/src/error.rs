use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("class has rank zero, Mumford slope is undefined")]
    ZeroRank,
    #[error("operation requires Picard rank one (c1 = kH with k integral)")]
    RequiresPicardRankOne,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unsupported target: {0}")]
    UnsupportedTarget(String),
    #[error("search window is unbounded at r = {r}, c1H = {c1h} ({reason})")]
    InfiniteFamily { r: i64, c1h: String, reason: String },
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Failure to read one of the textual formats (rationals, classes, tilt
/// points, exclusion lists, standard class tags).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {what} from {input:?}: {reason}")]
pub struct ParseError {
    pub what: &'static str,
    pub input: String,
    pub reason: String,
}

impl ParseError {
    pub(crate) fn new(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        // Long fuzz inputs make unreadable messages.
        let mut input = input.to_owned();
        if input.len() > 64 {
            let mut cut = 64;
            while !input.is_char_boundary(cut) {
                cut -= 1;
            }
            input.truncate(cut);
            input.push('…');
        }
        ParseError {
            what,
            input,
            reason: reason.into(),
        }
    }
}
