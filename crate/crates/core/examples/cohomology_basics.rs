//! Betti numbers over several coefficient rings, the cup product pairing,
//! and a Poincaré duality check.

use modfour::exactalg::{PrimeField, Rationals};
use modfour::simplicial::{cohomology, integral_cohomology, pd_check, CellComplex, SimplicialComplex};

fn main() {
    let rp2 = SimplicialComplex::projective_plane();
    let cx = rp2.cochain_complex();
    println!("RP^2 f-vector {:?}", rp2.f_vector());
    println!("  over Q:  {:?}", cohomology(&cx, &Rationals).betti);
    println!("  over F3: {:?}", cohomology(&cx, &PrimeField::new(3).unwrap()).betti);
    let z = integral_cohomology(&cx);
    println!("  over Z:  ranks {:?}, torsion {:?}", z.betti, z.torsion);

    let torus = SimplicialComplex::polygon(3).product(&SimplicialComplex::polygon(3));
    let pd = pd_check(&torus, &Rationals).expect("connected");
    println!(
        "torus: Betti {:?}, PD {}, formal dimension {:?}",
        pd.betti, pd.is_pd, pd.formal_dim
    );

    // over F3 the projective plane looks like a point
    let pd = pd_check(&rp2, &PrimeField::new(3).unwrap()).expect("connected");
    println!("RP^2 over F3: PD {}, formal dimension {:?}", pd.is_pd, pd.formal_dim);
}
