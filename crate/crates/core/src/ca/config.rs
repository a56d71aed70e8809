use std::cmp::Ordering;
use std::fmt;

use super::{Alphabet, RuleError, Symbol, QUIESCENT};

/// A finite configuration: quiescent everywhere except on a finite stretch.
///
/// Stored as `(offset, word)` where `offset` is the cell of `word[0]`. The
/// form is canonical: the word is empty or starts and ends with a
/// non-quiescent symbol, and the all-quiescent configuration is `(0, "")`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Config {
    offset: i64,
    word: Vec<Symbol>,
}

/// Trims quiescent symbols from both ends of `word`, adjusting the offset.
pub fn canonicalize(offset: i64, word: &[Symbol]) -> Config {
    let Some(first) = word.iter().position(|&s| s != QUIESCENT) else {
        return Config::quiescent();
    };
    let last = word.iter().rposition(|&s| s != QUIESCENT).unwrap();
    Config {
        offset: offset + first as i64,
        word: word[first..=last].to_vec(),
    }
}

impl Config {
    pub fn quiescent() -> Self {
        Self::default()
    }

    /// Places `word` with its first symbol at cell `offset`.
    pub fn new(offset: i64, word: Vec<Symbol>) -> Self {
        let trimmed = word.first().is_some_and(|&s| s == QUIESCENT) || word.last().is_some_and(|&s| s == QUIESCENT);
        if trimmed || word.is_empty() {
            canonicalize(offset, &word)
        } else {
            Self { offset, word }
        }
    }

    /// Builds the configuration that carries `symbols[j]` on `cells[j]`.
    pub fn from_cells(cells: &[i64], symbols: &[Symbol]) -> Self {
        debug_assert_eq!(cells.len(), symbols.len());
        let live: Vec<(i64, Symbol)> = cells
            .iter()
            .zip(symbols)
            .filter(|(_, &s)| s != QUIESCENT)
            .map(|(&c, &s)| (c, s))
            .collect();
        let (Some(lo), Some(hi)) = (live.iter().map(|p| p.0).min(), live.iter().map(|p| p.0).max()) else {
            return Self::quiescent();
        };
        let mut word = vec![QUIESCENT; (hi - lo + 1) as usize];
        for (c, s) in live {
            word[(c - lo) as usize] = s;
        }
        Self { offset: lo, word }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn word(&self) -> &[Symbol] {
        &self.word
    }

    /// Length of the support hull.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_quiescent(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_quiescent()
    }

    /// First and last non-quiescent cells.
    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.word.is_empty()).then(|| (self.offset, self.offset + self.word.len() as i64 - 1))
    }

    pub fn get(&self, cell: i64) -> Symbol {
        let i = cell - self.offset;
        if i < 0 || i >= self.word.len() as i64 {
            QUIESCENT
        } else {
            self.word[i as usize]
        }
    }

    /// The configuration `d` with `d_i = c_{i+k}`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_quiescent() {
            return Self::quiescent();
        }
        Self {
            offset: self.offset - k,
            word: self.word.clone(),
        }
    }

    /// Same configuration with `cell` overwritten by `symbol`.
    pub fn with_cell(&self, cell: i64, symbol: Symbol) -> Self {
        let (lo, hi) = match self.support() {
            Some((lo, hi)) => (lo.min(cell), hi.max(cell)),
            None => (cell, cell),
        };
        let word = (lo..=hi)
            .map(|i| if i == cell { symbol } else { self.get(i) })
            .collect();
        Self::new(lo, word)
    }

    /// Symbols on the given cells, in order.
    pub fn read(&self, cells: &[i64]) -> Vec<Symbol> {
        cells.iter().map(|&c| self.get(c)).collect()
    }

    /// Same configuration with every listed cell reset to quiescent.
    pub fn blank(&self, cells: &[i64]) -> Self {
        match self.support() {
            None => Self::quiescent(),
            Some((lo, hi)) => {
                let mut word = self.word.clone();
                for &c in cells {
                    if (lo..=hi).contains(&c) {
                        word[(c - lo) as usize] = QUIESCENT;
                    }
                }
                Self::new(lo, word)
            }
        }
    }

    /// Cells where `self` and `other` carry different symbols, ascending.
    pub fn diff_cells(&self, other: &Config) -> Vec<i64> {
        let hull = match (self.support(), other.support()) {
            (None, None) => return Vec::new(),
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
        };
        (hull.0..=hull.1).filter(|&i| self.get(i) != other.get(i)).collect()
    }

    /// Parses the `"<offset>|<word>"` literal; `"0|"` is all-quiescent.
    pub fn parse(literal: &str, alphabet: &Alphabet) -> Result<Self, RuleError> {
        let bad = || RuleError::BadConfigLiteral(literal.to_string());
        let (off, word) = literal.trim().split_once('|').ok_or_else(bad)?;
        let offset: i64 = off.trim().parse().map_err(|_| bad())?;
        Ok(Self::new(offset, alphabet.encode(word)?))
    }

    /// Formats as `"<offset>|<word>"` in canonical form.
    pub fn format(&self, alphabet: &Alphabet) -> String {
        format!("{}|{}", self.offset, alphabet.decode(&self.word))
    }
}

impl fmt::Debug for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|", self.offset)?;
        for s in &self.word {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Support length first, then offset, then the word in symbol order.
impl Ord for Config {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then(self.offset.cmp(&other.offset))
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for Config {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin(lit: &str) -> Config {
        Config::parse(lit, &Alphabet::binary()).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(3, &[0, 0, 1, 0, 0]), bin("5|1"));
        assert_eq!(canonicalize(5, &[1]).offset(), 5);
        assert_eq!(canonicalize(7, &[0, 0, 0]), Config::quiescent());
        assert_eq!(canonicalize(7, &[0, 0, 0]).offset(), 0);
        assert_eq!(canonicalize(0, &[1, 0, 1]), bin("0|101"));
        assert_eq!(canonicalize(0, &[1, 0, 1]).word(), &[1, 0, 1]);
    }

    #[test]
    fn shift_examples() {
        assert_eq!(Config::quiescent().shift(5), Config::quiescent());
        let c = bin("0|11").shift(1);
        assert_eq!((c.offset(), c.word()), (-1, &[1u8, 1][..]));
    }

    #[test]
    fn literal_round_trip() {
        let a = Alphabet::binary();
        for lit in ["0|", "-1|1000000000001", "17|101"] {
            assert_eq!(Config::parse(lit, &a).unwrap().format(&a), lit);
        }
        assert_eq!(bin("3|00100").format(&a), "5|1");
        assert!(Config::parse("x|1", &a).is_err());
        assert!(Config::parse("0|2", &a).is_err());
        assert!(Config::parse("01", &a).is_err());
    }

    #[test]
    fn total_order() {
        let mut v = vec![bin("0|11"), bin("5|1"), bin("0|"), bin("-2|1"), bin("0|101")];
        v.sort();
        assert_eq!(v, vec![bin("0|"), bin("-2|1"), bin("5|1"), bin("0|11"), bin("0|101")]);
    }

    #[test]
    fn cell_edits() {
        let c = bin("0|101");
        assert_eq!(c.with_cell(1, 1), bin("0|111"));
        assert_eq!(c.with_cell(0, 0), bin("2|1"));
        assert_eq!(c.with_cell(-3, 1), bin("-3|100101"));
        assert_eq!(c.blank(&[0, 2]), Config::quiescent());
        assert_eq!(c.diff_cells(&bin("1|1")), vec![0, 1, 2]);
        assert_eq!(Config::from_cells(&[4, -1, 2], &[1, 1, 0]), bin("-1|100001"));
    }
}
