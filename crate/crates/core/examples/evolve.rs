//! Classical and quantum evolution under XOR.

use num_complex::Complex64;
use qca_lab::ca::{catalog, Config};
use qca_lab::quantum::{make_superposition, state_to_json, Quantization};

fn main() {
    let rule = catalog::xor();
    let a = rule.alphabet();
    let x = Config::parse("0|111111111111", a).unwrap();
    for c in rule.orbit(&x, 3) {
        println!("{}", c.format(a));
    }

    // (|0⟩ + |1^12⟩)/√2 and back
    let s = make_superposition([
        (Config::quiescent(), Complex64::new(1.0, 0.0)),
        (x, Complex64::new(1.0, 0.0)),
    ])
    .unwrap();
    let q = Quantization::new(&rule).unwrap();
    let image = q.apply_f(&s);
    println!("F: {}", state_to_json(&image.state, a));
    let back = q.apply_f_dagger(&image.state).unwrap();
    println!("F†F: {}", state_to_json(&back, a));
    println!("round trip error {:e}", back.max_abs_diff(&s));
}
