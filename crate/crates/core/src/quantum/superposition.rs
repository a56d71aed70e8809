use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::ca::{Config, Symbol};

use super::QuantumError;

/// A finite linear combination of configurations.
///
/// No stored amplitude is exactly zero. Normalization is explicit: only
/// [`make_superposition`] and [`Superposition::normalized`] rescale.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Superposition {
    amps: BTreeMap<Config, Complex64>,
}

impl Superposition {
    /// Merges duplicates by addition and drops exact zeros, without
    /// rescaling.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Config, Complex64)>) -> Self {
        let mut amps: BTreeMap<Config, Complex64> = BTreeMap::new();
        for (c, a) in pairs {
            *amps.entry(c).or_default() += a;
        }
        amps.retain(|_, a| *a != Complex64::new(0.0, 0.0));
        Self { amps }
    }

    pub fn basis(c: Config) -> Self {
        Self::from_pairs([(c, Complex64::new(1.0, 0.0))])
    }

    pub fn amplitude(&self, c: &Config) -> Complex64 {
        self.amps.get(c).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Config, &Complex64)> {
        self.amps.iter()
    }

    pub fn configs(&self) -> impl Iterator<Item = &Config> {
        self.amps.keys()
    }

    /// Number of basis configurations with a nonzero amplitude.
    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    pub fn normalized(&self) -> Result<Self, QuantumError> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return Err(QuantumError::ZeroVector);
        }
        Ok(self.map_amplitudes(|_, a| a / n))
    }

    pub fn scale(&self, z: Complex64) -> Self {
        self.map_amplitudes(|_, a| a * z)
    }

    /// `self + other`, exact zeros dropped.
    pub fn add(&self, other: &Self) -> Self {
        Self::from_pairs(self.iter().chain(other.iter()).map(|(c, a)| (c.clone(), *a)))
    }

    /// Largest absolute amplitude difference over the union of supports.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.configs()
            .chain(other.configs())
            .map(|c| (self.amplitude(c) - other.amplitude(c)).norm())
            .fold(0.0, f64::max)
    }

    /// Applies a configuration map linearly; colliding images add up.
    pub fn map_configs(&self, f: impl Fn(&Config) -> Config) -> Self {
        Self::from_pairs(self.iter().map(|(c, a)| (f(c), *a)))
    }

    /// Multiplies by `-1` every amplitude whose configuration carries
    /// `symbol` on `cell`.
    pub fn controlled_phase(&self, cell: i64, symbol: Symbol) -> Self {
        self.map_amplitudes(|c, a| if c.get(cell) == symbol { -a } else { a })
    }

    fn map_amplitudes(&self, f: impl Fn(&Config, Complex64) -> Complex64) -> Self {
        Self::from_pairs(self.iter().map(|(c, a)| (c.clone(), f(c, *a))))
    }
}

/// Normalized superposition of the given terms.
pub fn make_superposition(pairs: impl IntoIterator<Item = (Config, Complex64)>) -> Result<Superposition, QuantumError> {
    let s = Superposition::from_pairs(pairs);
    if s.is_empty() {
        return Err(QuantumError::ZeroVector);
    }
    s.normalized()
}

/// `⟨s1|s2⟩`, antilinear in the first argument.
pub fn inner_product(s1: &Superposition, s2: &Superposition) -> Complex64 {
    let (small, large, flip) = if s1.len() <= s2.len() {
        (s1, s2, false)
    } else {
        (s2, s1, true)
    };
    let sum: Complex64 = small
        .iter()
        .filter_map(|(c, a)| large.amps.get(c).map(|b| a.conj() * b))
        .sum();
    if flip {
        sum.conj()
    } else {
        sum
    }
}
