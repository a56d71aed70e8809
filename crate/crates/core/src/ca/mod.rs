//! Classical substrate: alphabets, local rules, finite configurations and
//! cell regions.
//!
//! Symbols are stored as small integers. Index `0` is always the quiescent
//! symbol, the remaining indices follow the order in which the alphabet was
//! declared. Every enumeration in the crate uses this order.

mod alphabet;
mod config;
mod region;
mod rule;

pub use alphabet::Alphabet;
pub(crate) use alphabet::{checked_pow, word_index};
pub use config::{canonicalize, Config};
pub use region::Region;
pub use rule::{catalog, Rule, RuleFile};

use thiserror::Error;

/// Internal symbol index. `0` is the quiescent symbol.
pub type Symbol = u8;

/// The quiescent symbol index.
pub const QUIESCENT: Symbol = 0;

#[derive(Debug, Error)]
pub enum RuleError {
    #[error("malformed rule file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("alphabet has more than 255 symbols")]
    AlphabetTooLarge,
    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(char),
    #[error("quiescent symbol {0:?} is not in the alphabet")]
    UnknownQuiescent(char),
    #[error("neighborhood is empty")]
    EmptyNeighborhood,
    #[error("duplicate offset {0} in neighborhood")]
    DuplicateOffset(i64),
    #[error("table would have more than {max} entries")]
    TableTooLarge { max: usize },
    #[error("table key {key:?} has length {len}, expected {expected}")]
    BadKeyLength { key: String, len: usize, expected: usize },
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),
    #[error("table has no entry for {0:?}")]
    MissingTableEntry(String),
    #[error("local rule maps the all-quiescent word to {0:?}")]
    QuiescenceViolation(char),
    #[error("bad configuration literal {0:?} (expected \"<offset>|<word>\")")]
    BadConfigLiteral(String),
    #[error("bad region {0:?} (expected \"a,b,c\" or \"a..b\")")]
    BadRegion(String),
}
