//! Equivariant Betti numbers of a few actions and the stabilisation above
//! the dimension of the complex.

use modfour::corpus;
use modfour::equivariant::{equivariant_betti, localization_check};

fn main() {
    for f in [
        corpus::sphere_rotation(3),
        corpus::free_pentagon(),
        corpus::torus_rotation(3),
    ] {
        let d = f.complex.dim().unwrap();
        let b = equivariant_betti(&f.complex, &f.action, 0, d + 4);
        println!("{}: H^n_G for n = 0..{} is {:?}", f.name, d + 4, b);
        let r = localization_check(&f.complex, &f.action);
        println!(
            "  degrees {:?}: {:?} vs fixed set total {} -> {}",
            r.degrees,
            r.equivariant,
            r.fixed_total,
            if r.holds() { "stable" } else { "mismatch" }
        );
    }
}
