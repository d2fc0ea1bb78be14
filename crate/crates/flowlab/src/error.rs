use crate::kernel::TermRef;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, FlowError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("unregistered term #{0}")]
    UnregisteredTerm(u32),
    #[error("{term} has cofinite action; co-action {co_action:?}")]
    CofiniteSupport { term: TermRef, co_action: Vec<TermRef> },
    #[error("composition {f} . {g} falls outside the supported closed forms")]
    UnsupportedRuleComposition { f: TermRef, g: TermRef },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{0} is not an ordered pair")]
    NotAPair(TermRef),
    #[error("choice hypothesis fails for members {x} and {y}")]
    ChoiceHypothesisFailed { x: TermRef, y: TermRef },
    #[error("{0} has no local inverse")]
    NoLocalInverse(TermRef),
    #[error("rank {rank} exceeds the maximum of {max}")]
    RankOverflow { rank: u32, max: u32 },
    #[error("numeral {0} exceeds the materialization limit")]
    NumeralOverflow(u64),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("session: {0}")]
    Session(String),
    #[error("io: {0}")]
    Io(String),
}

impl FlowError {
    pub fn code(&self) -> &'static str {
        match self {
            FlowError::Usage(_) => "E-USAGE",
            FlowError::UnregisteredTerm(_) => "E-UNREGISTERED",
            FlowError::CofiniteSupport { .. } => "E-COFINITE",
            FlowError::UnsupportedRuleComposition { .. } => "E-UNSUPPORTED",
            FlowError::Precondition(_) => "E-PRECONDITION",
            FlowError::NotAPair(_) => "E-NOTPAIR",
            FlowError::ChoiceHypothesisFailed { .. } => "E-CHOICE",
            FlowError::NoLocalInverse(_) => "E-NOINVERSE",
            FlowError::RankOverflow { .. } => "E-RANK",
            FlowError::NumeralOverflow(_) => "E-NUMERAL",
            FlowError::Parse { .. } => "E-PARSE",
            FlowError::Session(_) => "E-SESSION",
            FlowError::Io(_) => "E-IO",
        }
    }

    /// Usage-class errors map to exit code 2 in the CLI.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            FlowError::Usage(_) | FlowError::Parse { .. } | FlowError::UnregisteredTerm(_)
        )
    }
}

impl From<std::io::Error> for FlowError {
    fn from(e: std::io::Error) -> Self {
        FlowError::Io(e.to_string())
    }
}
