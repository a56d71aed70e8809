use crate::ca::{Config, Rule, Symbol, QUIESCENT};

/// All finite `x` with `support(x) ⊆ [first, last]` and `F(x) = c`, sorted.
///
/// Runs a trellis over the cells of `[first, last]` whose states are the last
/// `span − 1` symbols placed, pruned forwards and backwards before the
/// surviving paths are enumerated.
pub fn preimages_in(rule: &Rule, c: &Config, (first, last): (i64, i64)) -> Vec<Config> {
    if first > last {
        return if c.is_quiescent() {
            vec![Config::quiescent()]
        } else {
            Vec::new()
        };
    }
    let (lo, hi) = (rule.min_offset(), rule.max_offset());
    if let Some((c1, c2)) = c.support() {
        if c1 < first - hi || c2 > last - lo {
            return Vec::new();
        }
    }
    let k = rule.alphabet().len();
    let w = rule.span() - 1;
    let states = k.pow(w as u32);
    let positions: Vec<usize> = rule.neighborhood().iter().map(|o| (o - lo) as usize).collect();

    // Output produced when symbol `t` is appended to state `s`, and the
    // state that follows.
    let mut window = vec![QUIESCENT; w + 1];
    let mut args = vec![QUIESCENT; positions.len()];
    let mut out = vec![QUIESCENT; states * k];
    for s in 0..states {
        let prefix = rule.alphabet().word_of_index(s, w);
        window[..w].copy_from_slice(&prefix);
        for t in 0..k {
            window[w] = t as Symbol;
            for (a, &p) in args.iter_mut().zip(&positions) {
                *a = window[p];
            }
            out[s * k + t] = rule.local(&args);
        }
    }
    let next = |s: usize, t: usize| if w == 0 { 0 } else { (s * k + t) % states };

    // Layer j holds states after placing cell `first + j - 1`; cells past
    // `last` are forced quiescent for another `w` steps.
    let steps = (last - first + 1) as usize + w;
    let choices = |j: usize| if j < (last - first + 1) as usize { k } else { 1 };
    let mut alive = vec![vec![false; states]; steps + 1];
    alive[0][0] = true;
    for j in 0..steps {
        let cell = first + j as i64 - hi;
        let target = c.get(cell);
        for s in 0..states {
            if !alive[j][s] {
                continue;
            }
            for t in 0..choices(j) {
                if out[s * k + t] == target {
                    alive[j + 1][next(s, t)] = true;
                }
            }
        }
    }
    let mut useful = vec![vec![false; states]; steps + 1];
    useful[steps][0] = alive[steps][0];
    for j in (0..steps).rev() {
        let target = c.get(first + j as i64 - hi);
        for s in 0..states {
            if alive[j][s] {
                useful[j][s] = (0..choices(j)).any(|t| out[s * k + t] == target && useful[j + 1][next(s, t)]);
            }
        }
    }
    if !useful[0][0] {
        return Vec::new();
    }

    let mut found = Vec::new();
    let mut word: Vec<Symbol> = Vec::with_capacity(steps);
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, 0, 0)];
    // (layer, state, next symbol to try)
    while let Some(&mut (j, s, ref mut t)) = stack.last_mut() {
        if j == steps {
            found.push(Config::new(first, word[..(last - first + 1) as usize].to_vec()));
            stack.pop();
            word.pop();
            continue;
        }
        if *t == choices(j) {
            stack.pop();
            word.pop();
            continue;
        }
        let sym = *t;
        *t += 1;
        let target = c.get(first + j as i64 - hi);
        let ns = next(s, sym);
        if out[s * k + sym] == target && useful[j + 1][ns] {
            word.push(sym as Symbol);
            stack.push((j + 1, ns, 0));
        }
    }
    found.sort();
    found
}

/// All preimages of `c` whose support lies within `support(c)` widened by
/// `halo` cells on each side (`[−halo, halo]` for the quiescent target).
pub fn preimages(rule: &Rule, c: &Config, halo: i64) -> Vec<Config> {
    let (a, b) = c.support().unwrap_or((0, 0));
    if c.is_quiescent() && halo == 0 {
        return preimages_in(rule, c, (0, -1));
    }
    preimages_in(rule, c, (a - halo, b + halo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::{catalog, Alphabet};

    fn bin(s: &str) -> Config {
        Config::parse(s, &Alphabet::binary()).unwrap()
    }

    #[test]
    fn xor_has_unique_preimages() {
        let rule = catalog::xor();
        let x = bin("0|1101");
        let fx = rule.step(&x);
        assert_eq!(preimages(&rule, &fx, 2), vec![x]);
    }

    #[test]
    fn xor_single_one_has_no_finite_preimage() {
        assert!(preimages(&catalog::xor(), &bin("0|1"), 6).is_empty());
    }

    #[test]
    fn identity_and_shift() {
        let c = bin("2|101");
        assert_eq!(preimages(&catalog::identity(), &c, 0), vec![c.clone()]);
        assert_eq!(preimages(&catalog::shift(), &c, 1), vec![c.shift(-1)]);
    }

    #[test]
    fn and_collapses_many_configurations_onto_quiescent() {
        let pre = preimages(&catalog::and(), &Config::quiescent(), 1);
        // words on [-1, 1] without two adjacent ones
        for x in &pre {
            assert!(catalog::and().step(x).is_quiescent());
        }
        assert_eq!(pre.len(), 5);
    }

    #[test]
    fn matches_direct_enumeration() {
        let rule = catalog::elementary(30);
        let alphabet = rule.alphabet().clone();
        let target = rule.step(&bin("0|1011"));
        let mut expected: Vec<Config> = (0..1usize << 8)
            .map(|i| Config::new(-2, alphabet.word_of_index(i, 8)))
            .filter(|x| rule.step(x) == target)
            .collect();
        expected.sort();
        expected.dedup();
        assert_eq!(preimages_in(&rule, &target, (-2, 5)), expected);
    }
}
