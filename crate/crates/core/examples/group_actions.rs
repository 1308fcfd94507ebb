//! A rotation of the 2-sphere: induced maps, Lefschetz numbers, fixed set
//! and the T/F/R block decomposition.

use modfour::corpus;
use modfour::exactalg::PrimeField;
use modfour::group_action::{
    fixed_subcomplex, induced_cohomology_action, lefschetz_number, make_regular, tfr_decomposition,
};

fn main() {
    for f in [
        corpus::sphere_rotation(5),
        corpus::theta_rotation(3),
        corpus::bouquet_rotation(3),
    ] {
        let (x, a) = (&f.complex, &f.action);
        println!("{} (p = {})", f.name, f.p());
        let field = PrimeField::new(f.p()).unwrap();
        for (k, g) in induced_cohomology_action(x, a, &field).iter().enumerate() {
            println!(
                "  g* on H^{k} is {}x{}, identity: {}",
                g.rows(),
                g.cols(),
                g.is_identity()
            );
        }
        let (y, b, rounds) = make_regular(x, a);
        let fixed = fixed_subcomplex(&y, &b).unwrap();
        println!(
            "  Lefschetz {} = χ(fixed set) {} after {rounds} subdivision(s)",
            lefschetz_number(x, a),
            fixed.euler_characteristic()
        );
        let d = tfr_decomposition(x, a);
        for (k, deg) in d.degrees.iter().enumerate() {
            println!("  H^{k}: T {} F {} R {}", deg.t, deg.f, deg.r);
        }
    }
}
