use crate::ca::Rule;
use crate::debruijn::{classify_graph, confinement, preimages, Confinement, DeBruijnError, PairGraph, PropertyReport};

use super::superposition::Superposition;
use super::QuantumError;

/// Image of a superposition under `F̃`. `isometric` is false when the rule is
/// not injective on finite configurations (or could not be classified), in
/// which case norms may grow.
#[derive(Clone, Debug, PartialEq)]
pub struct Evolved {
    pub state: Superposition,
    pub isometric: bool,
}

/// A rule together with what its pair diagram says about `F̃` and `F̃†`.
#[derive(Clone, Debug)]
pub struct Quantization {
    rule: Rule,
    report: PropertyReport,
    confinement: Option<Confinement>,
    halo: Option<i64>,
}

impl Quantization {
    pub fn new(rule: &Rule) -> Result<Self, DeBruijnError> {
        let g = PairGraph::build(rule)?;
        let report = classify_graph(&g);
        let confinement = if report.open { Some(confinement(&g)?) } else { None };
        Ok(Self {
            rule: rule.clone(),
            report,
            confinement,
            halo: None,
        })
    }

    /// Fixed preimage halo used by [`Self::apply_f_dagger`] instead of the one
    /// derived from the pair diagram.
    pub fn with_halo(mut self, halo: i64) -> Self {
        self.halo = Some(halo);
        self
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn report(&self) -> &PropertyReport {
        &self.report
    }

    pub fn apply_f(&self, s: &Superposition) -> Evolved {
        Evolved {
            state: s.map_configs(|c| self.rule.step(c)),
            isometric: self.report.injective_finite,
        }
    }

    /// `F̃†`: every basis configuration goes to the sum of its finite
    /// preimages. Configurations outside the image contribute nothing.
    pub fn apply_f_dagger(&self, s: &Superposition) -> Result<Superposition, QuantumError> {
        let mut terms = Vec::new();
        for (c, a) in s.iter() {
            let halo = match (self.halo, &self.confinement) {
                (Some(h), _) => h,
                (None, Some(conf)) => conf.preimage_halo(c),
                (None, None) => return Err(QuantumError::HaloUnavailable),
            };
            terms.extend(preimages(&self.rule, c, halo).into_iter().map(|u| (u, *a)));
        }
        let out = Superposition::from_pairs(terms);
        if out.is_empty() && !s.is_empty() {
            return Err(QuantumError::ZeroVector);
        }
        Ok(out)
    }
}

/// `F̃` on a superposition; no renormalization.
pub fn apply_f(rule: &Rule, s: &Superposition) -> Evolved {
    match Quantization::new(rule) {
        Ok(q) => q.apply_f(s),
        Err(_) => Evolved {
            state: s.map_configs(|c| rule.step(c)),
            isometric: false,
        },
    }
}

/// `F̃†` on a superposition, with an optional halo override.
pub fn apply_f_dagger(rule: &Rule, s: &Superposition, halo: Option<i64>) -> Result<Superposition, QuantumError> {
    let mut q = Quantization::new(rule)?;
    if let Some(h) = halo {
        q = q.with_halo(h);
    }
    q.apply_f_dagger(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::{catalog, Alphabet, Config};
    use crate::quantum::{inner_product, make_superposition};
    use num_complex::Complex64;

    fn bin(s: &str) -> Config {
        Config::parse(s, &Alphabet::binary()).unwrap()
    }

    fn half_root() -> Complex64 {
        Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
    }

    #[test]
    fn xor_maps_block_superposition_to_image_strings() {
        let rule = catalog::xor();
        let s = make_superposition([
            (Config::quiescent(), Complex64::new(1.0, 0.0)),
            (bin("0|111111111111"), Complex64::new(1.0, 0.0)),
        ])
        .unwrap();
        let out = apply_f(&rule, &s);
        assert!(out.isometric);
        assert!((out.state.amplitude(&Config::quiescent()) - half_root()).norm() < 1e-15);
        assert!((out.state.amplitude(&bin("-1|1000000000001")) - half_root()).norm() < 1e-15);
    }

    #[test]
    fn xor_adjoint_recovers_the_block() {
        let rule = catalog::xor();
        let back = apply_f_dagger(&rule, &Superposition::basis(bin("-1|1000000000001")), None).unwrap();
        assert_eq!(back, Superposition::basis(bin("0|111111111111")));
    }

    #[test]
    fn xor_adjoint_annihilates_a_lonely_one() {
        let rule = catalog::xor();
        assert_eq!(
            apply_f_dagger(&rule, &Superposition::basis(bin("0|1")), None),
            Err(QuantumError::ZeroVector)
        );
    }

    #[test]
    fn identity_leaves_states_alone() {
        let rule = catalog::identity();
        let s = make_superposition([
            (bin("0|1"), Complex64::new(1.0, 2.0)),
            (bin("4|101"), Complex64::new(-1.0, 0.5)),
        ])
        .unwrap();
        assert_eq!(apply_f(&rule, &s).state, s);
        assert_eq!(apply_f_dagger(&rule, &s, None).unwrap(), s);
    }

    #[test]
    fn two_to_one_rule_grows_the_norm() {
        let rule = catalog::and();
        // "0|1" and "0|101" both map to the quiescent configuration
        assert!(rule.step(&bin("0|1")).is_quiescent());
        assert!(rule.step(&bin("0|101")).is_quiescent());
        let s = make_superposition([
            (bin("0|1"), Complex64::new(1.0, 0.0)),
            (bin("0|101"), Complex64::new(1.0, 0.0)),
        ])
        .unwrap();
        let out = apply_f(&rule, &s);
        assert!(!out.isometric);
        assert_eq!(out.state.len(), 1);
        let a = out.state.amplitude(&Config::quiescent());
        assert!((a.re - 2f64.sqrt()).abs() < 1e-12);
        assert!(inner_product(&out.state, &out.state).re > 1.5);
    }

    #[test]
    fn adjoint_needs_a_halo_for_rules_that_are_not_open() {
        let rule = catalog::elementary(30);
        let x = bin("0|1");
        let s = Superposition::basis(rule.step(&x));
        assert_eq!(apply_f_dagger(&rule, &s, None), Err(QuantumError::HaloUnavailable));
        assert_eq!(apply_f_dagger(&rule, &s, Some(3)).unwrap(), Superposition::basis(x));
    }
}
