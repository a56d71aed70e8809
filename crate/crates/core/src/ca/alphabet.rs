use super::{RuleError, Symbol};

/// A finite alphabet `qΣ` with a distinguished quiescent symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    // index 0 is the quiescent symbol
    chars: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet from the declared symbol list. The quiescent symbol
    /// is moved to index 0; the others keep their declared order.
    pub fn new(symbols: &[char], quiescent: char) -> Result<Self, RuleError> {
        if symbols.is_empty() {
            return Err(RuleError::EmptyAlphabet);
        }
        if symbols.len() > usize::from(u8::MAX) {
            return Err(RuleError::AlphabetTooLarge);
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(RuleError::DuplicateSymbol(*c));
            }
        }
        if !symbols.contains(&quiescent) {
            return Err(RuleError::UnknownQuiescent(quiescent));
        }
        let mut chars = vec![quiescent];
        chars.extend(symbols.iter().copied().filter(|&c| c != quiescent));
        Ok(Self { chars })
    }

    /// `{0, 1}` with quiescent `0`.
    pub fn binary() -> Self {
        Self { chars: vec!['0', '1'] }
    }

    /// `{0, 1, …, k-1}` written as decimal digits, quiescent `0`.
    pub fn digits(k: usize) -> Self {
        assert!((1..=10).contains(&k), "digit alphabets have 1..=10 symbols");
        Self {
            chars: (0..k as u32).map(|d| char::from_digit(d, 10).unwrap()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn quiescent(&self) -> char {
        self.chars[0]
    }

    /// Symbols in internal order (quiescent first).
    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    pub fn index_of(&self, c: char) -> Option<Symbol> {
        self.chars.iter().position(|&x| x == c).map(|i| i as Symbol)
    }

    pub fn char_of(&self, s: Symbol) -> char {
        self.chars[usize::from(s)]
    }

    pub fn encode(&self, text: &str) -> Result<Vec<Symbol>, RuleError> {
        text.chars()
            .map(|c| self.index_of(c).ok_or(RuleError::UnknownSymbol(c)))
            .collect()
    }

    pub fn decode(&self, word: &[Symbol]) -> String {
        word.iter().map(|&s| self.char_of(s)).collect()
    }

    /// Decodes a base-`|qΣ|` word index of the given length (first symbol
    /// most significant).
    pub fn word_of_index(&self, mut index: usize, len: usize) -> Vec<Symbol> {
        let k = self.len();
        let mut word = vec![0; len];
        for slot in word.iter_mut().rev() {
            *slot = (index % k) as Symbol;
            index /= k;
        }
        word
    }
}

/// Base-`k` index of a word, first symbol most significant.
pub(crate) fn word_index(word: &[Symbol], k: usize) -> usize {
    word.iter().fold(0, |acc, &s| acc * k + usize::from(s))
}

/// `k^n`, or `None` on overflow.
pub(crate) fn checked_pow(k: usize, n: usize) -> Option<usize> {
    (0..n).try_fold(1usize, |acc, _| acc.checked_mul(k))
}
