use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty word has no period")]
    EmptyWord,
    #[error("symbol {symbol} out of range for alphabet of size {alphabet_size}")]
    SymbolOutOfRange { symbol: u8, alphabet_size: u8 },
    #[error("invalid alphabet size {0}")]
    InvalidAlphabet(usize),
    #[error("cannot parse word {0:?}")]
    WordParse(String),
    #[error("cannot parse exponent bound {input:?}: {reason}")]
    BoundParse { input: String, reason: String },
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("morphism is not prolongable on letter {0}")]
    NotProlongable(u8),
    #[error("structure theorem inapplicable for bound {0}")]
    StructureTheoremInapplicable(String),
    #[error("word {word} is not {bound}-free")]
    NotFree { word: String, bound: String },
    #[error("input word {0} is not squarefree")]
    NotSquarefree(String),
    #[error("minimal forbidden words are only generated for open bounds, got {0}")]
    ClosedBoundUnsupported(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("power iteration did not converge after {iterations} iterations (last estimate {estimate}, last change {delta:e})")]
    NoConvergence { iterations: usize, estimate: f64, delta: f64 },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
