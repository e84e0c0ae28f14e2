//! Inverse Kazhdan-Lusztig columns: the expansion of a standard basis
//! element in the canonical basis, with the inversion symmetry on display.
//!
//! Run with: `cargo run --example inverse_kl_columns`

use affine_kl::affine_weyl::AffineWeylElement;
use affine_kl::hecke_kl::HeckeEngine;
use affine_kl::root_data::{build_cartan, TypeLabel};

fn main() {
    let d = build_cartan(TypeLabel::parse("A2").unwrap()).unwrap();
    let mut engine = HeckeEngine::new(&d);

    let w = AffineWeylElement::from_word(&d, &[0, 1, 2, 0]);
    let col = engine.inverse_kl(&w).unwrap();
    println!("H_w = sum eps(w v^-1) m^w_v(q) C_v for w = s0 s1 s2 s0:");
    for (v, m) in &col {
        println!(
            "  l(v) = {}: m = {} (at q=1: {})",
            v.length(),
            m,
            m.eval_at_one()
        );
    }

    // Symmetry under inversion: m^w_v = m^(w^-1)_(v^-1).
    let col_inv = engine.inverse_kl(&w.inverse()).unwrap();
    let symmetric = col
        .iter()
        .all(|(v, m)| col_inv.get(&v.inverse()) == Some(m));
    println!("inversion symmetry m^w_v = m^(w^-1)_(v^-1): {symmetric}");

    // Round trip: expanding the column reproduces H_w exactly.
    let mut acc = affine_kl::hecke_kl::HeckeElement::zero();
    for (v, m) in &col {
        let sign = w.sign() * v.sign();
        let cv = engine.kl_basis(v).unwrap();
        acc = acc.add(&cv.scaled(&m.scaled(sign)));
    }
    println!(
        "round trip sum eps m C_v == H_w: {}",
        acc == affine_kl::hecke_kl::HeckeElement::basis(w)
    );
}
