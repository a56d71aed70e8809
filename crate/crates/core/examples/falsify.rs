//! XOR is not uniformly local: for every radius there are two states that
//! agree around `A` but whose images differ on `A`.

use qca_lab::ca::{catalog, Region};
use qca_lab::locality::falsify_uniform_locality;

fn main() {
    let rule = catalog::xor();
    for k in 1..=5 {
        let w = falsify_uniform_locality(&rule, &Region::interval(-k, k)).unwrap();
        println!(
            "k={k}  y={}  A={:?}  residual={:.1e}  evolved distance={}",
            w.y.format(rule.alphabet()),
            w.region_a.cells(),
            w.residual,
            w.evolved_distance
        );
    }
}
