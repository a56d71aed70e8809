//! Bob flips a phase at one cell and Alice, far away, sees the difference
//! after one step of a rule that is injective but not open.

use qca_lab::ca::catalog;
use qca_lab::locality::{auto_setup, signalling_experiment};

fn main() {
    let rule = catalog::elementary(30);
    let (x, y, bob, alice) = auto_setup(&rule, 3).unwrap();
    let r = signalling_experiment(&rule, &x, &y, bob, &alice).unwrap();
    let a = rule.alphabet();
    println!("x = {}  y = {}", x.format(a), y.format(a));
    println!("Bob at {bob}, Alice on {:?}", alice.cells());
    println!(
        "trace distance {}  success probability {}",
        r.distance, r.success_probability
    );
}
