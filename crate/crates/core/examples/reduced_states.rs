//! Reduced density matrices and the trace distance between them.

use num_complex::Complex64;
use qca_lab::ca::{Alphabet, Config, Region};
use qca_lab::quantum::{make_superposition, pure_density, reduce, trace_distance};

fn main() {
    let a = Alphabet::binary();
    let one = Complex64::new(1.0, 0.0);
    let bell = make_superposition([(Config::quiescent(), one), (Config::parse("0|11", &a).unwrap(), one)]).unwrap();
    let product = make_superposition([(Config::parse("0|1", &a).unwrap(), one)]).unwrap();

    let region = Region::single(0);
    let rb = reduce(&pure_density(&bell).unwrap(), &region, &a).unwrap();
    let rp = reduce(&pure_density(&product).unwrap(), &region, &a).unwrap();
    println!("bell on cell 0:\n{}", rb.matrix());
    println!("eigenvalues {:?}", rb.eigenvalues());
    println!("product on cell 0:\n{}", rp.matrix());
    println!("trace distance {}", trace_distance(&rb, &rp).unwrap());
}
