use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::ca::{Alphabet, Config, Region, Rule, Symbol};

use super::operator::{image_groups, window_dim, NotLocalized, WindowMatrix};
use super::{check_localized, LocalityError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Violated,
    /// The window exceeds the enumeration cap; nothing was checked.
    Inconclusive,
}

/// A basis operator `|z⟩⟨t|` whose conjugate is not localized, with the
/// offending matrix entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub z: Vec<Symbol>,
    pub t: Vec<Symbol>,
    pub u: Config,
    pub v: Config,
}

impl Violation {
    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        serde_json::json!({
            "operator": [alphabet.decode(&self.z), alphabet.decode(&self.t)],
            "u": self.u.format(alphabet),
            "v": self.v.format(alphabet),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalityReport {
    pub region: Region,
    pub neighborhood: Region,
    pub window: Region,
    pub verdict: Verdict,
    pub violation: Option<Violation>,
}

impl LocalityReport {
    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        serde_json::json!({
            "region": self.region,
            "neighborhood": self.neighborhood,
            "window": self.window,
            "verdict": self.verdict,
            "violation": self.violation.as_ref().map(|v| v.to_json(alphabet)),
        })
    }
}

/// `A + N + N_C` widened by two cells on each side.
pub fn default_window(rule: &Rule, region: &Region, neighborhood: &Region) -> Region {
    let cone = region.sum(neighborhood).sum(&rule.neighborhood_region());
    match cone.hull() {
        Some((lo, hi)) => Region::interval(lo - 2, hi + 2),
        None => Region::empty(),
    }
}

/// Checks that for every basis operator `|z⟩⟨t|` on `region`, the conjugate
/// `F̃† (|z⟩⟨t| ⊗ Id) F̃` is localized in `region + neighborhood`, over all
/// configurations supported in `window`.
pub fn verify_locality(
    rule: &Rule,
    region: &Region,
    neighborhood: &Region,
    window: Option<&Region>,
) -> Result<LocalityReport, LocalityError> {
    let window = window
        .cloned()
        .unwrap_or_else(|| default_window(rule, region, neighborhood));
    let target = region.sum(neighborhood);
    let required = target.sum(&rule.neighborhood_region());
    if !required.is_subset(&window) || !target.is_subset(&window) {
        return Err(LocalityError::WindowTooSmall { required });
    }
    let mut report = LocalityReport {
        region: region.clone(),
        neighborhood: neighborhood.clone(),
        window: window.clone(),
        verdict: Verdict::Verified,
        violation: None,
    };
    let k = rule.alphabet().len();
    if window_dim(&window, k).is_err() {
        report.verdict = Verdict::Inconclusive;
        return Ok(report);
    }
    let groups = image_groups(rule, region, &window)?;
    let words = k.pow(region.len() as u32);
    let digits = Alphabet::digits(k);
    for z in 0..words {
        for t in 0..words {
            let mut entries = BTreeMap::new();
            for group in &groups.groups {
                for &(u, _) in group.iter().filter(|(_, r)| *r == z) {
                    for &(v, _) in group.iter().filter(|(_, r)| *r == t) {
                        entries.insert((u, v), Complex64::new(1.0, 0.0));
                    }
                }
            }
            let m = WindowMatrix::from_entries(window.clone(), k, entries);
            if let Err(NotLocalized { u, v, .. }) = check_localized(&m, &target) {
                report.verdict = Verdict::Violated;
                report.violation = Some(Violation {
                    z: digits.word_of_index(z, region.len()),
                    t: digits.word_of_index(t, region.len()),
                    u,
                    v,
                });
                return Ok(report);
            }
        }
    }
    Ok(report)
}
