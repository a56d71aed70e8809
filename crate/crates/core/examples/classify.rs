//! Structural properties of the catalog rules.

use qca_lab::ca::catalog;
use qca_lab::debruijn::classify;

fn main() {
    println!(
        "{:<14} {:>5} {:>5} {:>5} {:>5} {:>5}",
        "rule", "inj", "rev", "lc", "rc", "open"
    );
    for rule in [
        catalog::xor(),
        catalog::identity(),
        catalog::shift(),
        catalog::negated_shift(),
        catalog::elementary(30),
        catalog::and(),
    ] {
        let r = classify(&rule).expect("small rules fit the vertex cap");
        println!(
            "{:<14} {:>5} {:>5} {:>5} {:>5} {:>5}",
            rule.name(),
            r.injective_finite,
            r.reversible,
            r.left_closing,
            r.right_closing,
            r.open
        );
    }
}
