use overshear_core::random::{raw_word, surface_point, SymbolicSize};
use overshear_core::{word_apply, Poly, Surface};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let s = Surface::new(Poly::from_ints(&[-1, 0, 0, 0, 1])).unwrap();
    let size = SymbolicSize { max_terms: 1, coeff_degree: 1, exp_degree: 1, bound: 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for i in 0..20 {
        let w_len = rng.random_range(0..=5);
        let w = raw_word(&mut rng, w_len, size);
        let q = surface_point(&mut rng, &s);
        let raw_img = word_apply(&s, &w, &q);
        let red_img = word_apply(&s, &w.reduce(), &q);
        let d = raw_img.distance(&red_img);
        let mag = 1.0 + raw_img.x.norm() + raw_img.y.norm() + raw_img.z.norm();
        println!("{i}: len={w_len} dist={d:.3e} mag={mag:.3e} rel={:.3e}", d / mag);
    }
}
