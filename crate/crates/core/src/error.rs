use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{op}: shape mismatch between {left:?} and {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("domain error: {0}")]
    Domain(String),

    /// A computation was refused because its estimated size exceeds a configured cap.
    #[error("{what}: estimated {required:.3e} exceeds cap {cap:.3e}{hint}")]
    CapExceeded {
        what: String,
        required: f64,
        cap: f64,
        hint: &'static str,
    },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("no robust tuple found for su({n}) m={m}: best |Omega| = {best:.3e}")]
    NoRobustTuple { n: usize, m: usize, best: f64 },

    #[error("invalid contraction plan: {0}")]
    Plan(String),

    #[error("decode error: {0}")]
    Decode(String),

    #[error("invalid representation spec {0:?}")]
    RepSpec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn cap(what: impl Into<String>, required: f64, cap: f64, hint: &'static str) -> Self {
        Error::CapExceeded {
            what: what.into(),
            required,
            cap,
            hint,
        }
    }
}
