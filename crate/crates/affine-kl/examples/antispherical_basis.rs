//! The anti-spherical module: standard and canonical bases, the projection
//! from the Hecke algebra, and the parabolic inverse expansion consumed by
//! the character formulas.
//!
//! Run with: `cargo run --example antispherical_basis`

use affine_kl::affine_weyl::{subregular_nu, AffineWeylElement};
use affine_kl::hecke_kl::{antispherical_project, AntisphericalEngine, HeckeElement, HeckeEngine};
use affine_kl::root_data::{build_cartan, TypeLabel};

fn main() {
    let d = build_cartan(TypeLabel::parse("A2").unwrap()).unwrap();
    let mut engine = AntisphericalEngine::new(&d);

    // phi(H_{s_1}) = -H'_e: finite reflections act by the sign character.
    let s1 = AffineWeylElement::simple(&d, 1);
    let p = antispherical_project(&d, &HeckeElement::basis(s1.clone()));
    println!("phi(H_s1) = {:?}", p.terms);

    // phi kills canonical elements off the minimal-representative set...
    let mut full = HeckeEngine::new(&d);
    let c = full.kl_basis(&s1).unwrap();
    println!(
        "phi(C_s1) is zero: {}",
        antispherical_project(&d, &c).terms.is_empty()
    );

    // ...and sends C_(w_nu) to the parabolic canonical element C'_(w_nu).
    let nu = subregular_nu(&d, 2, 12).unwrap();
    let w_nu = affine_kl::affine_weyl::min_coset_rep(&d, &nu);
    let via_phi = antispherical_project(&d, &full.kl_basis(&w_nu).unwrap());
    let direct = engine.parabolic_kl(&nu).unwrap();
    println!(
        "phi(C_(w_nu)) = C'_(w_nu) for nu = {nu:?}: {}",
        via_phi == direct
    );

    // T_gamma = sum m^(w_gamma)_(w_nu)(q) C_nu: the expansion whose q=1
    // values are the character multiplicities.
    let gamma = vec![2, -1];
    let col = engine.t_in_c_basis(&gamma).unwrap();
    println!("\nT_gamma expansion for gamma = {gamma:?}:");
    for (nu, m) in &col {
        println!("  nu = {nu:?}: m = {} (at q=1: {})", m, m.eval_at_one());
    }
}
