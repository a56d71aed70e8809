use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::alphabet::{checked_pow, word_index};
use super::{Alphabet, Config, Region, RuleError, Symbol, QUIESCENT};

const MAX_TABLE: usize = 1 << 22;

/// On-disk rule format.
///
/// Table keys list the neighborhood symbols in the order the `neighborhood`
/// array gives the offsets.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RuleFile {
    pub name: String,
    pub alphabet: Vec<char>,
    pub quiescent: char,
    pub neighborhood: Vec<i64>,
    pub table: BTreeMap<String, char>,
}

/// A one-dimensional cellular automaton given by its local transition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    name: String,
    alphabet: Alphabet,
    // sorted, distinct
    neighborhood: Vec<i64>,
    // indexed by the base-k word of neighborhood symbols, first offset most significant
    table: Vec<Symbol>,
}

impl Rule {
    /// Builds a rule from a local function over neighborhood words.
    ///
    /// `neighborhood` may be unsorted; `local` always receives the symbols in
    /// the order of `neighborhood` as given.
    pub fn from_fn(
        name: impl Into<String>,
        alphabet: Alphabet,
        neighborhood: &[i64],
        local: impl Fn(&[Symbol]) -> Symbol,
    ) -> Result<Self, RuleError> {
        if neighborhood.is_empty() {
            return Err(RuleError::EmptyNeighborhood);
        }
        for (i, o) in neighborhood.iter().enumerate() {
            if neighborhood[..i].contains(o) {
                return Err(RuleError::DuplicateOffset(*o));
            }
        }
        let k = alphabet.len();
        let n = neighborhood.len();
        let size = checked_pow(k, n)
            .filter(|&s| s <= MAX_TABLE)
            .ok_or(RuleError::TableTooLarge { max: MAX_TABLE })?;

        let mut sorted = neighborhood.to_vec();
        sorted.sort_unstable();
        // position in the caller's order of each sorted offset
        let perm: Vec<usize> = sorted
            .iter()
            .map(|o| neighborhood.iter().position(|x| x == o).unwrap())
            .collect();

        let mut table = vec![QUIESCENT; size];
        let mut given = vec![QUIESCENT; n];
        for (idx, out) in table.iter_mut().enumerate() {
            let word = alphabet.word_of_index(idx, n);
            for (j, &p) in perm.iter().enumerate() {
                given[p] = word[j];
            }
            let s = local(&given);
            assert!(
                usize::from(s) < k,
                "local function returned symbol {s} outside alphabet"
            );
            *out = s;
        }
        if table[0] != QUIESCENT {
            return Err(RuleError::QuiescenceViolation(alphabet.char_of(table[0])));
        }
        Ok(Self {
            name: name.into(),
            alphabet,
            neighborhood: sorted,
            table,
        })
    }

    /// Builds a rule from a complete table in internal word order
    /// (sorted neighborhood, first offset most significant).
    pub fn from_table(
        name: impl Into<String>,
        alphabet: Alphabet,
        neighborhood: &[i64],
        table: Vec<Symbol>,
    ) -> Result<Self, RuleError> {
        let mut sorted = neighborhood.to_vec();
        sorted.sort_unstable();
        let k = alphabet.len();
        let rule = Self::from_fn(name, alphabet, &sorted, |w| table[word_index(w, k)])?;
        Ok(rule)
    }

    /// Parses and validates a JSON rule file.
    pub fn parse(text: &str) -> Result<Self, RuleError> {
        let file: RuleFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }

    pub fn from_file(file: &RuleFile) -> Result<Self, RuleError> {
        let alphabet = Alphabet::new(&file.alphabet, file.quiescent)?;
        let n = file.neighborhood.len();
        let mut entries: BTreeMap<Vec<Symbol>, Symbol> = BTreeMap::new();
        for (key, out) in &file.table {
            let len = key.chars().count();
            if len != n {
                return Err(RuleError::BadKeyLength {
                    key: key.clone(),
                    len,
                    expected: n,
                });
            }
            let word = alphabet.encode(key)?;
            let out = alphabet.index_of(*out).ok_or(RuleError::UnknownSymbol(*out))?;
            entries.insert(word, out);
        }
        // Completeness is checked before building so that the error names the
        // first missing word in enumeration order.
        let k = alphabet.len();
        if n > 0 {
            let size = checked_pow(k, n)
                .filter(|&s| s <= MAX_TABLE)
                .ok_or(RuleError::TableTooLarge { max: MAX_TABLE })?;
            for idx in 0..size {
                let w = alphabet.word_of_index(idx, n);
                if !entries.contains_key(&w) {
                    return Err(RuleError::MissingTableEntry(alphabet.decode(&w)));
                }
            }
        }
        Self::from_fn(file.name.clone(), alphabet, &file.neighborhood, |w| entries[w])
    }

    pub fn to_file(&self) -> RuleFile {
        let n = self.neighborhood.len();
        let table = (0..self.table.len())
            .map(|idx| {
                let w = self.alphabet.word_of_index(idx, n);
                (self.alphabet.decode(&w), self.alphabet.char_of(self.table[idx]))
            })
            .collect();
        RuleFile {
            name: self.name.clone(),
            alphabet: self.alphabet.chars().to_vec(),
            quiescent: self.alphabet.quiescent(),
            neighborhood: self.neighborhood.clone(),
            table,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("rule file serializes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Sorted neighborhood offsets.
    pub fn neighborhood(&self) -> &[i64] {
        &self.neighborhood
    }

    pub fn neighborhood_region(&self) -> Region {
        Region::new(self.neighborhood.iter().copied())
    }

    pub fn table(&self) -> &[Symbol] {
        &self.table
    }

    pub fn min_offset(&self) -> i64 {
        self.neighborhood[0]
    }

    pub fn max_offset(&self) -> i64 {
        *self.neighborhood.last().unwrap()
    }

    /// Number of cells from the leftmost to the rightmost offset.
    pub fn span(&self) -> usize {
        (self.max_offset() - self.min_offset()) as usize + 1
    }

    /// `max |offset|`.
    pub fn radius(&self) -> i64 {
        self.neighborhood.iter().map(|o| o.abs()).max().unwrap()
    }

    /// Applies the local function to neighborhood symbols in sorted-offset order.
    pub fn local(&self, window: &[Symbol]) -> Symbol {
        self.table[word_index(window, self.alphabet.len())]
    }

    /// One step of the global map on a finite configuration.
    pub fn step(&self, c: &Config) -> Config {
        let Some((lo, hi)) = c.support() else {
            return Config::quiescent();
        };
        let start = lo - self.max_offset();
        let end = hi - self.min_offset();
        let mut window = vec![QUIESCENT; self.neighborhood.len()];
        let word = (start..=end)
            .map(|i| {
                for (slot, o) in window.iter_mut().zip(&self.neighborhood) {
                    *slot = c.get(i + o);
                }
                self.local(&window)
            })
            .collect();
        Config::new(start, word)
    }

    /// `n` steps, returning the orbit including the starting configuration.
    pub fn orbit(&self, c: &Config, n: usize) -> Vec<Config> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(c.clone());
        for _ in 0..n {
            let next = self.step(out.last().unwrap());
            out.push(next);
        }
        out
    }
}

/// Rules used throughout the examples and tests.
pub mod catalog {
    use super::*;

    /// Sum modulo 2 over the neighborhood `{0, 1}`.
    pub fn xor() -> Rule {
        Rule::from_fn("xor", Alphabet::binary(), &[0, 1], |w| w[0] ^ w[1]).unwrap()
    }

    /// The identity, neighborhood `{0}`.
    pub fn identity() -> Rule {
        Rule::from_fn("identity", Alphabet::binary(), &[0], |w| w[0]).unwrap()
    }

    /// `F(c)_i = c_{i+1}`.
    pub fn shift() -> Rule {
        Rule::from_fn("shift", Alphabet::binary(), &[1], |w| w[0]).unwrap()
    }

    /// Shift followed by exchanging the two non-quiescent symbols of `{0,1,2}`.
    pub fn negated_shift() -> Rule {
        Rule::from_fn("negated-shift", Alphabet::digits(3), &[1], |w| match w[0] {
            0 => 0,
            1 => 2,
            _ => 1,
        })
        .unwrap()
    }

    /// Elementary rule by Wolfram number, neighborhood `{-1, 0, 1}`.
    ///
    /// Panics on odd numbers, which do not fix the quiescent state.
    pub fn elementary(number: u8) -> Rule {
        Rule::from_fn(format!("eca{number}"), Alphabet::binary(), &[-1, 0, 1], |w| {
            let idx = 4 * w[0] + 2 * w[1] + w[2];
            (number >> idx) & 1
        })
        .expect("even elementary rule numbers fix the quiescent state")
    }

    /// `F(c)_i = c_i AND c_{i+1}`: two-to-one on some finite configurations.
    pub fn and() -> Rule {
        Rule::from_fn("and", Alphabet::binary(), &[0, 1], |w| w[0] & w[1]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    const XOR_JSON: &str = r#"{"name":"xor","alphabet":["0","1"],"quiescent":"0",
        "neighborhood":[0,1],"table":{"00":"0","01":"1","10":"1","11":"0"}}"#;

    fn bin(lit: &str) -> Config {
        Config::parse(lit, &Alphabet::binary()).unwrap()
    }

    #[test]
    fn parse_xor_file() {
        let r = Rule::parse(XOR_JSON).unwrap();
        assert_eq!(r, xor());
        assert_eq!(r.table(), &[0, 1, 1, 0]);
        assert_eq!(Rule::parse(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn parse_identity_file() {
        let text = r#"{"name":"identity","alphabet":["0","1"],"quiescent":"0",
            "neighborhood":[0],"table":{"0":"0","1":"1"}}"#;
        assert_eq!(Rule::parse(text).unwrap(), identity());
    }

    #[test]
    fn parse_errors() {
        let q = XOR_JSON.replace(r#""00":"0""#, r#""00":"1""#);
        assert!(matches!(Rule::parse(&q), Err(RuleError::QuiescenceViolation('1'))));
        let missing = XOR_JSON.replace(r#","11":"0""#, "");
        assert!(matches!(Rule::parse(&missing), Err(RuleError::MissingTableEntry(w)) if w == "11"));
        let dup = XOR_JSON.replace(r#"["0","1"]"#, r#"["0","1","1"]"#);
        assert!(matches!(Rule::parse(&dup), Err(RuleError::DuplicateSymbol('1'))));
        let empty = r#"{"name":"e","alphabet":["0"],"quiescent":"0","neighborhood":[],"table":{}}"#;
        assert!(matches!(Rule::parse(empty), Err(RuleError::EmptyNeighborhood)));
        assert!(matches!(Rule::parse("{"), Err(RuleError::Json(_))));
        let long = XOR_JSON.replace(r#""11":"0""#, r#""110":"0""#);
        assert!(matches!(Rule::parse(&long), Err(RuleError::BadKeyLength { .. })));
    }

    #[test]
    fn unsorted_neighborhood_is_permuted() {
        // keys follow the file's offset order: "ab" means c_{i+1}=a, c_i=b
        let text = r#"{"name":"s","alphabet":["0","1"],"quiescent":"0",
            "neighborhood":[1,0],"table":{"00":"0","01":"0","10":"1","11":"1"}}"#;
        let r = Rule::parse(text).unwrap();
        assert_eq!(r.neighborhood(), &[0, 1]);
        assert_eq!(r.step(&bin("0|1")), bin("-1|1"));
    }

    #[test]
    fn xor_step_examples() {
        let r = xor();
        assert_eq!(r.step(&Config::quiescent()), Config::quiescent());
        // …0011111111111100… ↦ …0100000000000100…
        assert_eq!(r.step(&bin("0|111111111111")), bin("-1|1000000000001"));
    }

    #[test]
    fn identity_and_shift_steps() {
        let c = bin("3|1101");
        assert_eq!(identity().step(&c), c);
        assert_eq!(shift().step(&c), c.shift(1));
    }

    #[test]
    fn step_commutes_with_shift_on_xor() {
        let r = xor();
        let c = bin("0|111");
        for k in -3..=3 {
            assert_eq!(r.step(&c.shift(k)), r.step(&c).shift(k));
        }
    }

    #[test]
    fn elementary_numbers() {
        let r = elementary(90);
        // rule 90: left xor right
        assert_eq!(r.step(&bin("0|1")), bin("-1|101"));
        assert_eq!(r.neighborhood(), &[-1, 0, 1]);
    }
}
