use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::ca::{Config, Rule};

use super::superposition::Superposition;
use super::{QuantumError, STATE_TOL};

/// A finite-support operator on the configuration space, stored entrywise as
/// `⟨a|ρ|b⟩` keyed by `(a, b)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DensityOp {
    entries: BTreeMap<(Config, Config), Complex64>,
}

impl DensityOp {
    /// Merges duplicate keys by addition and drops exact zeros.
    pub fn from_entries(entries: impl IntoIterator<Item = ((Config, Config), Complex64)>) -> Self {
        let mut map: BTreeMap<(Config, Config), Complex64> = BTreeMap::new();
        for (k, v) in entries {
            *map.entry(k).or_default() += v;
        }
        map.retain(|_, v| *v != Complex64::new(0.0, 0.0));
        Self { entries: map }
    }

    /// `Σ pᵢ ρᵢ`.
    pub fn mixture<'a>(terms: impl IntoIterator<Item = (f64, &'a DensityOp)>) -> Self {
        Self::from_entries(
            terms
                .into_iter()
                .flat_map(|(p, rho)| rho.entries.iter().map(move |(k, v)| (k.clone(), v * p))),
        )
    }

    pub fn entry(&self, a: &Config, b: &Config) -> Complex64 {
        self.entries.get(&(a.clone(), b.clone())).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Config, Config), &Complex64)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.iter().filter(|((a, b), _)| a == b).map(|(_, v)| *v).sum()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.entries
            .iter()
            .all(|((a, b), v)| (self.entry(b, a).conj() - v).norm() <= tol)
    }
}

/// `|s⟩⟨s|` for a normalized superposition.
pub fn pure_density(s: &Superposition) -> Result<DensityOp, QuantumError> {
    if !s.is_normalized(STATE_TOL) {
        return Err(QuantumError::NotNormalized(s.norm_sqr()));
    }
    Ok(DensityOp::from_entries(s.iter().flat_map(|(a, x)| {
        s.iter().map(move |(b, y)| ((a.clone(), b.clone()), x * y.conj()))
    })))
}

/// `F̃ ρ F̃†`, entrywise.
pub fn evolve(rule: &Rule, rho: &DensityOp) -> DensityOp {
    let mut image: BTreeMap<&Config, Config> = BTreeMap::new();
    for (a, b) in rho.entries.keys() {
        for c in [a, b] {
            image.entry(c).or_insert_with(|| rule.step(c));
        }
    }
    DensityOp::from_entries(
        rho.entries
            .iter()
            .map(|((a, b), v)| ((image[a].clone(), image[b].clone()), *v)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::{catalog, Alphabet};
    use crate::quantum::make_superposition;

    fn bin(s: &str) -> Config {
        Config::parse(s, &Alphabet::binary()).unwrap()
    }

    #[test]
    fn basis_state_density() {
        let x = bin("2|11");
        let rho = pure_density(&Superposition::basis(x.clone())).unwrap();
        assert_eq!(rho.len(), 1);
        assert_eq!(rho.entry(&x, &x), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn two_term_block() {
        let s = make_superposition([
            (bin("0|"), Complex64::new(1.0, 0.0)),
            (bin("0|1"), Complex64::new(-1.0, 0.0)),
        ])
        .unwrap();
        let rho = pure_density(&s).unwrap();
        assert_eq!(rho.len(), 4);
        assert!(rho.iter().all(|(_, v)| (v.norm() - 0.5).abs() < 1e-15));
        assert!((rho.trace() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(rho.is_hermitian(1e-15));
    }

    #[test]
    fn unnormalized_input_is_rejected() {
        let s = Superposition::from_pairs([(bin("0|1"), Complex64::new(2.0, 0.0))]);
        assert!(matches!(pure_density(&s), Err(QuantumError::NotNormalized(_))));
    }

    #[test]
    fn evolving_a_pure_state_gives_the_pure_image() {
        let rule = catalog::xor();
        let x = bin("0|1101");
        let rho = pure_density(&Superposition::basis(x.clone())).unwrap();
        let expected = pure_density(&Superposition::basis(rule.step(&x))).unwrap();
        assert_eq!(evolve(&rule, &rho), expected);
    }
}
