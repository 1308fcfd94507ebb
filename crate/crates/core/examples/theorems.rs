//! The mod-4 congruences with their hypothesis checklists.

use modfour::corpus;
use modfour::theorems::{check_theorem2, check_theorem4, euler_route_check};

fn main() {
    for f in [
        corpus::torus_rotation(3),
        corpus::sphere_product_rotation(7),
        corpus::free_s3(),
    ] {
        println!("== {}", f.name);
        print!("{}", check_theorem2(&f.complex, &f.action).render());
        print!("{}", check_theorem4(&f.complex, &f.action).render());
        let e = euler_route_check(&f.complex, &f.action);
        println!("{}", e.check_line());
    }
}
