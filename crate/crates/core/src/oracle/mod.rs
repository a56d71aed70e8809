//! Brute-force reference implementations.
//!
//! Nothing here looks at the pair diagram: every answer comes from
//! enumerating finite configurations up to a support length, so the results
//! can be used to check [`crate::debruijn`] and [`crate::quantum`] on small
//! instances.

mod search;

pub use search::{search_rules, Predicate, SearchHit, SearchSpace};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ca::{checked_pow, Alphabet, Config, Rule, Symbol, QUIESCENT};
use crate::debruijn::DeBruijnError;

/// Largest number of words a single enumeration may visit.
pub const MAX_ENUMERATION: usize = 1 << 24;

/// Default support bound for binary alphabets.
pub const DEFAULT_L_BINARY: usize = 8;
/// Default support bound for ternary alphabets.
pub const DEFAULT_L_TERNARY: usize = 5;

/// Default support bound for an alphabet of `k` symbols.
pub fn default_support(k: usize) -> usize {
    if k <= 2 {
        DEFAULT_L_BINARY
    } else {
        DEFAULT_L_TERNARY
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("enumeration of {what} exceeds {cap} items")]
    SpaceTooLarge { what: String, cap: usize },
    #[error(transparent)]
    DeBruijn(#[from] DeBruijnError),
}

fn too_large(what: impl Into<String>) -> OracleError {
    OracleError::SpaceTooLarge {
        what: what.into(),
        cap: MAX_ENUMERATION,
    }
}

/// Every word of length `1..=max_len` whose first and last symbols are not
/// quiescent, in length-then-lexicographic order, preceded by the empty word.
fn canonical_words(k: usize, max_len: usize) -> Result<Vec<Vec<Symbol>>, OracleError> {
    let total = checked_pow(k, max_len).ok_or_else(|| too_large(format!("{k}^{max_len} words")))?;
    if total > MAX_ENUMERATION {
        return Err(too_large(format!("{k}^{max_len} words")));
    }
    let alphabet = Alphabet::digits(k);
    let mut out = vec![Vec::new()];
    for len in 1..=max_len {
        for i in 0..k.pow(len as u32) {
            let w = alphabet.word_of_index(i, len);
            if w[0] != QUIESCENT && w[len - 1] != QUIESCENT {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// Result of an exhaustive injectivity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityCheck {
    pub injective: bool,
    /// Two configurations, distinct up to translation, with the same image
    /// (the second one translated to match).
    pub counterexample: Option<(Config, Config)>,
    pub configs_checked: usize,
}

/// Looks for two finite configurations of support length at most `max_len`
/// with equal images.
///
/// Every configuration is enumerated once, at offset 0. Since `F` commutes
/// with translations, `F(x) = F(σᵈ y)` for some `d` exactly when the images
/// of the offset-0 representatives have the same word; two such words then
/// give a collision unless the representatives coincide.
pub fn brute_injective(rule: &Rule, max_len: usize) -> Result<InjectivityCheck, OracleError> {
    let words = canonical_words(rule.alphabet().len(), max_len)?;
    let mut seen: BTreeMap<Vec<Symbol>, Config> = BTreeMap::new();
    for w in &words {
        let x = Config::new(0, w.clone());
        let image = rule.step(&x);
        if let Some(prev) = seen.get(image.word()) {
            let prev_image = rule.step(prev);
            let d = image.offset() - prev_image.offset();
            let aligned = prev.shift(-d);
            debug_assert_eq!(rule.step(&aligned), image);
            return Ok(InjectivityCheck {
                injective: false,
                counterexample: Some((x, aligned)),
                configs_checked: words.len(),
            });
        }
        seen.insert(image.word().to_vec(), x);
    }
    Ok(InjectivityCheck {
        injective: true,
        counterexample: None,
        configs_checked: words.len(),
    })
}

/// All configurations of support length at most `max_len` whose image is `c`.
///
/// For the quiescent target every preimage has a whole family of translates;
/// only the representatives with support starting at cell 0 are listed,
/// after the quiescent configuration itself.
pub fn brute_preimages(rule: &Rule, c: &Config, max_len: usize) -> Result<Vec<Config>, OracleError> {
    let words = canonical_words(rule.alphabet().len(), max_len)?;
    let offsets: Vec<i64> = match c.support() {
        None => vec![0],
        Some((c1, c2)) => {
            // support(F(x)) ⊆ [x1 − hi, x2 − lo] with x2 = x1 + len − 1
            let lo = c2 + rule.min_offset() - max_len as i64 + 1;
            let hi = c1 + rule.max_offset();
            (lo..=hi).collect()
        }
    };
    if offsets.len().saturating_mul(words.len()) > MAX_ENUMERATION {
        return Err(too_large("preimage candidates"));
    }
    let mut found = Vec::new();
    for w in &words {
        for &o in &offsets {
            let x = Config::new(o, w.clone());
            if rule.step(&x) == *c {
                found.push(x);
            }
        }
    }
    found.sort();
    found.dedup();
    Ok(found)
}

/// Tries to build a local rule `G` with neighborhood `[−r, r]` such that
/// `G(F(x)) = x` for every configuration `x` of support length at most
/// `2r + 4`.
///
/// Each table entry is forced by the observed pairs (window of `F(x)`,
/// symbol of `x`); a conflict means no inverse of that radius exists.
/// Windows that never occur map to the quiescent symbol.
pub fn brute_local_inverse(rule: &Rule, r: usize) -> Result<Option<Rule>, OracleError> {
    let k = rule.alphabet().len();
    let width = 2 * r + 1;
    let horizon = 2 * r + 4;
    let table_size = checked_pow(k, width).ok_or_else(|| too_large("inverse table"))?;
    if table_size > MAX_ENUMERATION {
        return Err(too_large("inverse table"));
    }
    let words = canonical_words(k, horizon)?;
    let r = r as i64;
    let mut table: Vec<Option<Symbol>> = vec![None; table_size];
    let mut window = vec![QUIESCENT; width];
    for w in &words {
        let x = Config::new(0, w.clone());
        let y = rule.step(&x);
        let reach = r + rule.radius() + 1;
        let (lo, hi) = (-reach, w.len() as i64 + reach);
        for i in lo..=hi {
            for (j, slot) in window.iter_mut().enumerate() {
                *slot = y.get(i + j as i64 - r);
            }
            let idx = crate::ca::word_index(&window, k);
            let want = x.get(i);
            match table[idx] {
                Some(s) if s != want => return Ok(None),
                _ => table[idx] = Some(want),
            }
        }
    }
    let offsets: Vec<i64> = (-r..=r).collect();
    let table: Vec<Symbol> = table.into_iter().map(|s| s.unwrap_or(QUIESCENT)).collect();
    let inverse = Rule::from_table(
        format!("{}-inverse", rule.name()),
        rule.alphabet().clone(),
        &offsets,
        table,
    )
    .expect("the all-quiescent window is forced to the quiescent symbol");
    Ok(Some(inverse))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::catalog;

    fn bin(s: &str) -> Config {
        Config::parse(s, &Alphabet::binary()).unwrap()
    }

    #[test]
    fn canonical_word_count() {
        // 1 empty, 1 of length 1, then 2^(n-2) for n >= 2
        assert_eq!(canonical_words(2, 4).unwrap().len(), 1 + 1 + 1 + 2 + 4);
    }

    #[test]
    fn xor_and_identity_are_injective() {
        assert!(brute_injective(&catalog::xor(), 8).unwrap().injective);
        assert!(brute_injective(&catalog::identity(), 8).unwrap().injective);
    }

    #[test]
    fn and_collides() {
        let check = brute_injective(&catalog::and(), 8).unwrap();
        assert!(!check.injective);
        let (x, y) = check.counterexample.unwrap();
        assert_ne!(x, y);
        assert_eq!(catalog::and().step(&x), catalog::and().step(&y));
    }

    #[test]
    fn xor_block_preimage() {
        let rule = catalog::xor();
        let pre = brute_preimages(&rule, &bin("-1|1000000000001"), 12).unwrap();
        assert_eq!(pre, vec![bin("0|111111111111")]);
        assert!(brute_preimages(&rule, &bin("0|1"), 10).unwrap().is_empty());
    }

    #[test]
    fn identity_quiescent_preimage() {
        assert_eq!(
            brute_preimages(&catalog::identity(), &Config::quiescent(), 6).unwrap(),
            vec![Config::quiescent()]
        );
    }

    #[test]
    fn local_inverses() {
        let shift = catalog::shift();
        let inv = brute_local_inverse(&shift, 1).unwrap().unwrap();
        let x = bin("3|1101");
        assert_eq!(inv.step(&shift.step(&x)), x);
        // the inverse reads the left neighbour
        assert_eq!(inv.step(&x), x.shift(-1));

        let id = brute_local_inverse(&catalog::identity(), 1).unwrap().unwrap();
        assert_eq!(id.step(&x), x);

        for r in 1..=4 {
            assert_eq!(brute_local_inverse(&catalog::xor(), r).unwrap(), None);
        }
    }

    #[test]
    fn oversized_enumeration_is_refused() {
        assert!(matches!(
            brute_injective(&catalog::xor(), 30),
            Err(OracleError::SpaceTooLarge { .. })
        ));
    }
}
