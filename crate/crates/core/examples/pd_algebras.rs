//! Bigraded PD algebras: the even congruence on random free models and the
//! odd congruence on a model with a differential.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use modfour::exactalg::{PrimeField, Rationals};
use modfour::pd_algebra::models::{odd_example, random_free_model, random_twist};
use modfour::pd_algebra::{euler_and_dim, homology, lemma_even_congruence, odd_congruence};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let f5 = PrimeField::new(5).unwrap();
    for _ in 0..5 {
        let m = random_twist(
            &random_free_model(&f5, &mut rng, true, 24).with_zero_differential(),
            &mut rng,
        );
        let r = lemma_even_congruence(&m.algebra, &m.orientation).unwrap();
        println!("{}", r.check_line());
    }

    let m = odd_example(Rationals);
    let h = homology(&m.algebra, &m.differential, &m.orientation).unwrap();
    println!(
        "model (dim, χ) = {:?}, homology dim {}",
        euler_and_dim(&m.algebra),
        h.dim
    );
    print!(
        "{}",
        odd_congruence(&m.algebra, &m.differential, &m.orientation)
            .report
            .render()
    );
}
