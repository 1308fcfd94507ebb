//! The quotient of a free Z/3 action on a triangulated 3-sphere: a lens
//! space whose integral cohomology has a Z/3 summand.

use modfour::corpus;
use modfour::exactalg::{PrimeField, Rationals};
use modfour::group_action::bockstein_witness;
use modfour::simplicial::{cohomology, integral_cohomology, CellComplex};

fn main() {
    let lens = corpus::lens_space();
    let cx = lens.cochain_complex();
    println!(
        "cells per dimension {:?}, χ = {}",
        lens.cell_counts(),
        lens.euler_characteristic()
    );
    let z = integral_cohomology(&cx);
    println!("H^*(L; Z): ranks {:?}, torsion {:?}", z.betti, z.torsion);
    println!("H^*(L; Q):  {:?}", cohomology(&cx, &Rationals).betti);
    println!("H^*(L; F3): {:?}", cohomology(&cx, &PrimeField::new(3).unwrap()).betti);
    match bockstein_witness(&lens, 3) {
        Some((k, d)) => println!("Bockstein condition fails: Z/{d} in degree {k}"),
        None => println!("Bockstein condition holds"),
    }
}
