//! Canonical-basis elements of the affine Hecke algebra and their
//! Kazhdan-Lusztig polynomials; every element is bar-certified.
//!
//! Run with: `cargo run --example kl_polynomials`

use affine_kl::affine_weyl::{enumerate_up_to_length, AffineWeylElement};
use affine_kl::hecke_kl::HeckeEngine;
use affine_kl::root_data::{build_cartan, TypeLabel};

fn main() {
    let d = build_cartan(TypeLabel::parse("A2").unwrap()).unwrap();
    let mut engine = HeckeEngine::new(&d);

    // C_s = H_s + H_e for every simple reflection.
    let s1 = AffineWeylElement::simple(&d, 1);
    let c = engine.kl_basis(&s1).unwrap();
    println!("C_(s1) support size {} (H_s + H_e)", c.terms.len());

    // A longer element: print the P polynomials by length of the lower index.
    let v = AffineWeylElement::from_word(&d, &[0, 1, 2, 0, 1, 0]);
    let c = engine.kl_basis(&v).unwrap();
    println!("\nC_v for the length-6 element v = s0 s1 s2 s0 s1 s0:");
    for (w, p) in &c.terms {
        println!("  l(w) = {}: P = {}", w.length(), p);
    }
    println!(
        "bar-invariant: {}",
        engine.verify_bar_invariance(&v).unwrap()
    );

    // First nontrivial KL polynomial in the length-6 ball.
    let ball = enumerate_up_to_length(&d, 6, 100_000).unwrap();
    let mut nontrivial = 0;
    for (v, _) in &ball {
        let c = engine.kl_basis(v).unwrap();
        for p in c.terms.values() {
            if !p.is_one() {
                nontrivial += 1;
            }
        }
    }
    println!("\nnontrivial P(q) != 1 among all pairs with l(v) <= 6: {nontrivial}");
}
