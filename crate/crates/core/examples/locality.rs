//! Locality of the quantization at a single cell: verified for XOR with the
//! neighborhood from the confinement bound, violated for ECA 30.

use qca_lab::ca::{catalog, Region};
use qca_lab::debruijn::lemma_neighborhood;
use qca_lab::locality::verify_locality;

fn main() {
    let region = Region::single(0);
    let xor = catalog::xor();
    let n = lemma_neighborhood(&xor, &region).unwrap();
    let r = verify_locality(&xor, &region, &n, None).unwrap();
    println!("xor  N = {:?}: {:?}", n.cells(), r.verdict);

    let eca30 = catalog::elementary(30);
    for radius in 1..=3 {
        let n = Region::interval(-radius, radius);
        let r = verify_locality(&eca30, &region, &n, None).unwrap();
        println!("eca30 N = [-{radius},{radius}]: {:?}", r.verdict);
    }
}
