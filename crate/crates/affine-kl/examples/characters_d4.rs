//! The level-(-1) D4 character fixture through all three routes, compared
//! exactly on merged coefficient tables.
//!
//! Run with: `cargo run --example characters_d4`

use affine_kl::characters::{
    char_closed_form, char_kac_wakimoto, char_kl_oracle, compare, validate_pair,
    verify_table_invariants,
};
use affine_kl::hecke_kl::AntisphericalEngine;
use affine_kl::root_data::{build_cartan, AffineWeight, TypeLabel};
use num_rational::Ratio;

fn main() {
    let d = build_cartan(TypeLabel::parse("D4").unwrap()).unwrap();

    // lambda = -Lambda_0, i = 0: the singular case with alpha = theta.
    let lambda = AffineWeight::new(vec![-1, 0, 0, 0, 0], Ratio::from_integer(0));
    let spec = validate_pair(&d, &lambda, 0, 12).unwrap();
    println!(
        "Lambda = {:?} (case {:?})",
        spec.big_lambda.coeffs, spec.case
    );
    println!(
        "alpha = {:?} (the highest root)",
        spec.alpha.as_ref().unwrap().beta
    );

    let radius = 12;
    let closed = char_closed_form(&spec, radius, false).unwrap();
    let kw = char_kac_wakimoto(&spec, radius, false).unwrap();
    let mut engine = AntisphericalEngine::with_cap(&d, 12);
    let kl = char_kl_oracle(&spec, radius, &mut engine, false).unwrap();

    println!(
        "\nmerged table sizes: closed {} / kw {} / kl {}",
        closed.merged.len(),
        kw.merged.len(),
        kl.merged.len()
    );

    for (name, other) in [("kw", &kw), ("kl", &kl)] {
        let report = compare(&closed, other);
        println!(
            "closed vs {name}: {} exponents compared, max |diff| = {} => {}",
            report.exponents_compared,
            report.max_abs_diff,
            if report.passed() { "agree" } else { "DISAGREE" }
        );
    }

    let inv = verify_table_invariants(&spec, &closed).unwrap();
    println!(
        "\nnormalization: coefficient of e^(Lambda + rho^) = {}, antisymmetry checks {} (failures {})",
        inv.highest_coefficient, inv.antisymmetry_checked, inv.antisymmetry_failures
    );

    // A few rows near the highest weight.
    println!("\nfirst rows of the merged closed-form table:");
    for (expo, coeff) in closed.merged.iter().rev().take(6) {
        println!(
            "  exponent {:?} + ({})delta: {}",
            expo.coeffs, expo.delta_coeff, coeff
        );
    }
}
