use num_complex::Complex64;

use crate::ca::{Alphabet, Config, Region, Rule};
use crate::quantum::{
    evolve, make_superposition, pure_density, reduce, reduced_to_json, trace_distance, ReducedMatrix,
};

use super::{falsify_uniform_locality, LocalityError};

/// Outcome of one round of the phase-signalling protocol.
#[derive(Clone, Debug, PartialEq)]
pub struct SignallingReport {
    pub x: Config,
    pub y: Config,
    pub bob_cell: i64,
    pub alice_region: Region,
    /// Alice's reduced state when Bob does nothing.
    pub sigma_plus: ReducedMatrix,
    /// Alice's reduced state when Bob flips the phase.
    pub sigma_minus: ReducedMatrix,
    pub distance: f64,
    /// Optimal probability of Alice guessing Bob's bit, `(1 + D)/2`.
    pub success_probability: f64,
}

impl SignallingReport {
    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        serde_json::json!({
            "x": self.x.format(alphabet),
            "y": self.y.format(alphabet),
            "bob_cell": self.bob_cell,
            "alice_region": self.alice_region,
            "sigma_plus": reduced_to_json(&self.sigma_plus, alphabet),
            "sigma_minus": reduced_to_json(&self.sigma_minus, alphabet),
            "distance": self.distance,
            "success_probability": self.success_probability,
        })
    }
}

/// Bob holds `bob_cell` of `(|x⟩ + |y⟩)/√2` and may flip the sign of the
/// `y` branch there; after one step Alice inspects `alice_region`.
pub fn signalling_experiment(
    rule: &Rule,
    x: &Config,
    y: &Config,
    bob_cell: i64,
    alice_region: &Region,
) -> Result<SignallingReport, LocalityError> {
    let bob_symbol = y.get(bob_cell);
    if x.get(bob_cell) == bob_symbol {
        return Err(LocalityError::BobCellEqual(bob_cell));
    }
    let one = Complex64::new(1.0, 0.0);
    let phi_plus = make_superposition([(x.clone(), one), (y.clone(), one)])?;
    let phi_minus = phi_plus.controlled_phase(bob_cell, bob_symbol);
    let alphabet = rule.alphabet();
    let sigma_plus = reduce(&evolve(rule, &pure_density(&phi_plus)?), alice_region, alphabet)?;
    let sigma_minus = reduce(&evolve(rule, &pure_density(&phi_minus)?), alice_region, alphabet)?;
    let distance = trace_distance(&sigma_plus, &sigma_minus)?.clamp(0.0, 1.0);
    Ok(SignallingReport {
        x: x.clone(),
        y: y.clone(),
        bob_cell,
        alice_region: alice_region.clone(),
        sigma_plus,
        sigma_minus,
        distance,
        success_probability: (1.0 + distance) / 2.0,
    })
}

/// A ready-made setup from the falsifier at neighborhood `[−radius, radius]`:
/// Alice sits on the image-difference cells, Bob on the middle of the
/// configuration differences that lie outside `A + N`.
pub fn auto_setup(rule: &Rule, radius: i64) -> Result<(Config, Config, i64, Region), LocalityError> {
    let w = falsify_uniform_locality(rule, &Region::interval(-radius, radius))?;
    let far: Vec<i64> = w
        .region_b
        .cells()
        .iter()
        .copied()
        .filter(|c| !w.a_plus_n.contains(*c))
        .collect();
    let bob = far[far.len() / 2];
    Ok((w.x, w.y, bob, w.region_a))
}
