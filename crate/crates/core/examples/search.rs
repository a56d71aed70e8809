//! Searches the elementary rules for injective rules that are not open and
//! cross-checks each against brute-force enumeration.

use qca_lab::debruijn::pump_witness;
use qca_lab::oracle::{search_rules, Predicate, SearchSpace};

fn main() {
    let space = SearchSpace::exhaustive(2, &[-1, 0, 1], 8);
    let predicate = Predicate {
        injective_finite: Some(true),
        open: Some(false),
        ..Predicate::default()
    };
    for hit in search_rules(&space, &predicate).unwrap() {
        let w = pump_witness(&hit.rule, 3).unwrap();
        println!(
            "{:<6} lc={:<5} rc={:<5} oracle agrees={}  image difference {:?}",
            hit.rule.name(),
            hit.report.left_closing,
            hit.report.right_closing,
            hit.oracle_agrees,
            w.diff_set.cells()
        );
    }
}
