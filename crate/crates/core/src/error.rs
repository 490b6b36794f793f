use crate::algebra::Element;
use crate::coeffs::CoeffError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("rewriting exceeded the step budget of {budget}; the presentation may not be solvable")]
    NontermLimit { budget: u64 },
    #[error("Gröbner basis computation exceeded its budget of {budget} steps ({} partial elements kept)", partial.len())]
    GroebnerBudget { budget: u64, partial: Vec<Element> },
    #[error("the zero element has no leading data")]
    ZeroElement,
    #[error("N must be at least 1")]
    InvalidRank,
    #[error("pair ({0}) and ({1}) is not ordered by <_lex")]
    UnorderedPair(String, String),
    #[error("no commutation rule for generators {0} and {1}")]
    MissingRule(String, String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("invalid variable subset: {0}")]
    InvalidSubset(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("exponent overflow at position {0}")]
    ExponentOverflow(usize),
    #[error("combinatorial budget exceeded: {0} subsets requested, limit {1}")]
    SubsetBudget(u64, u64),
    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::NontermLimit { .. } | Error::GroebnerBudget { .. } | Error::SubsetBudget(..))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
