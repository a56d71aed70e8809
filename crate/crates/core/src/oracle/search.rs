use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ca::{checked_pow, Alphabet, Rule, Symbol};
use crate::debruijn::{classify, PropertyReport};

use super::{brute_injective, OracleError, MAX_ENUMERATION};

/// A family of rules: every quiescence-preserving table over an alphabet
/// and neighborhood, optionally subsampled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    pub alphabet_size: usize,
    pub neighborhood: Vec<i64>,
    /// Support bound for the brute-force injectivity cross-check.
    pub max_support: usize,
    /// `(count, seed)`: visit `count` tables drawn without replacement.
    pub sample: Option<(usize, u64)>,
}

impl SearchSpace {
    pub fn exhaustive(alphabet_size: usize, neighborhood: &[i64], max_support: usize) -> Self {
        Self {
            alphabet_size,
            neighborhood: neighborhood.to_vec(),
            max_support,
            sample: None,
        }
    }

    pub fn sampled(mut self, count: usize, seed: u64) -> Self {
        self.sample = Some((count, seed));
        self
    }

    /// Number of quiescence-preserving tables.
    pub fn size(&self) -> Option<usize> {
        let entries = checked_pow(self.alphabet_size, self.neighborhood.len())?;
        checked_pow(self.alphabet_size, entries - 1)
    }

    /// The rule with table number `index`: entry `j + 1` of the table is
    /// digit `j` of `index` in base `k`, least significant first. Entry 0,
    /// the all-quiescent word, is always quiescent.
    pub fn rule(&self, index: usize) -> Rule {
        let k = self.alphabet_size;
        let entries = k.pow(self.neighborhood.len() as u32);
        let mut table: Vec<Symbol> = vec![0; entries];
        let mut rest = index;
        for slot in table.iter_mut().skip(1) {
            *slot = (rest % k) as Symbol;
            rest /= k;
        }
        let name = if k == 2 && self.neighborhood == [-1, 0, 1] {
            format!("eca{}", index << 1)
        } else {
            let offsets: Vec<String> = self.neighborhood.iter().map(i64::to_string).collect();
            let digits: String = table.iter().map(|s| char::from(b'0' + s)).collect();
            format!("k{k}_n{}_t{digits}", offsets.join("_"))
        };
        Rule::from_table(name, Alphabet::digits(k), &self.neighborhood, table).expect("entry 0 is quiescent")
    }

    fn indices(&self) -> Result<Vec<usize>, OracleError> {
        let too_large = || OracleError::SpaceTooLarge {
            what: "rule tables".into(),
            cap: MAX_ENUMERATION,
        };
        let size = self.size().ok_or_else(too_large)?;
        match self.sample {
            None if size > MAX_ENUMERATION => Err(too_large()),
            None => Ok((0..size).collect()),
            Some((count, seed)) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut picked = sample(&mut rng, size, count.min(size)).into_vec();
                picked.sort_unstable();
                Ok(picked)
            }
        }
    }
}

/// Required values of the structural flags; `None` accepts either.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Predicate {
    pub injective_finite: Option<bool>,
    pub reversible: Option<bool>,
    pub left_closing: Option<bool>,
    pub right_closing: Option<bool>,
    pub open: Option<bool>,
}

impl Predicate {
    pub fn matches(&self, r: &PropertyReport) -> bool {
        let ok = |want: Option<bool>, got: bool| want.is_none_or(|w| w == got);
        ok(self.injective_finite, r.injective_finite)
            && ok(self.reversible, r.reversible)
            && ok(self.left_closing, r.left_closing)
            && ok(self.right_closing, r.right_closing)
            && ok(self.open, r.open)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchHit {
    pub rule: Rule,
    pub report: PropertyReport,
    /// Whether the brute-force injectivity check agrees with the report.
    pub oracle_agrees: bool,
}

/// Rules of the space whose classification satisfies `predicate`, in table
/// order.
pub fn search_rules(space: &SearchSpace, predicate: &Predicate) -> Result<Vec<SearchHit>, OracleError> {
    let mut hits = Vec::new();
    for index in space.indices()? {
        let rule = space.rule(index);
        let report = classify(&rule)?;
        if predicate.matches(&report) {
            let brute = brute_injective(&rule, space.max_support)?;
            hits.push(SearchHit {
                oracle_agrees: brute.injective == report.injective_finite,
                rule,
                report,
            });
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::catalog;

    #[test]
    fn table_numbering_matches_elementary_rules() {
        let space = SearchSpace::exhaustive(2, &[-1, 0, 1], 8);
        assert_eq!(space.size(), Some(128));
        assert_eq!(space.rule(15), catalog::elementary(30).with_name("eca30"));
        assert_eq!(space.rule(15).name(), "eca30");
    }

    #[test]
    fn width_two_space() {
        let space = SearchSpace::exhaustive(2, &[0, 1], 8);
        assert_eq!(space.size(), Some(8));
        let open_not_reversible = Predicate {
            injective_finite: Some(true),
            reversible: Some(false),
            open: Some(true),
            ..Predicate::default()
        };
        let hits = search_rules(&space, &open_not_reversible).unwrap();
        assert!(hits.iter().any(|h| h.rule.table() == catalog::xor().table()));
        assert!(hits.iter().all(|h| h.oracle_agrees));

        let reversible = Predicate {
            reversible: Some(true),
            ..Predicate::default()
        };
        let hits = search_rules(&space, &reversible).unwrap();
        // f(a, b) = a and f(a, b) = b
        assert!(hits.iter().any(|h| h.rule.table() == [0, 0, 1, 1]));
        assert!(hits.iter().any(|h| h.rule.table() == [0, 1, 0, 1]));
    }

    #[test]
    fn sampling_is_deterministic() {
        let space = SearchSpace::exhaustive(2, &[-1, 0, 1, 2], 6).sampled(20, 7);
        let a = space.indices().unwrap();
        assert_eq!(a, space.indices().unwrap());
        assert_eq!(a.len(), 20);
    }
}
