//! End-to-end cross-check in one program: closed forms, the module model,
//! the parabolic KL oracle, and the character routes, all on the same data.
//!
//! Run with: `cargo run --example oracle_crosscheck --release`

use affine_kl::characters::{char_closed_form, char_kl_oracle, compare, validate_pair};
use affine_kl::hecke_kl::AntisphericalEngine;
use affine_kl::root_data::{build_cartan, AffineWeight, TypeLabel};
use affine_kl::subregular::verify_oracle_equality;
use num_rational::Ratio;

fn main() {
    // 1. Multiplicity level: closed forms vs inverse KL at q=1.
    for label in ["A2", "D4"] {
        let d = build_cartan(TypeLabel::parse(label).unwrap()).unwrap();
        let report = verify_oracle_equality(&d, 10).unwrap();
        println!(
            "{label}: oracle equality on {} pairs over {} cosets (cap 10): {}",
            report.pairs_checked,
            report.cosets_checked,
            if report.passed() { "PASS" } else { "FAIL" }
        );
    }

    // 2. Character level: the same equality packaged as coefficient tables.
    let d = build_cartan(TypeLabel::parse("D4").unwrap()).unwrap();
    for (desc, coeffs, i) in [
        ("singular level -1", vec![-1, 0, 0, 0, 0], 0i64),
        ("singular leg fixture", vec![0, 0, 0, 0, -1], 4),
        ("regular block", vec![0, 0, 0, 0, 0], 2),
    ] {
        let lambda = AffineWeight::new(coeffs, Ratio::from_integer(0));
        let spec = validate_pair(&d, &lambda, i, 12).unwrap();
        let closed = char_closed_form(&spec, 10, false).unwrap();
        let mut engine = AntisphericalEngine::with_cap(&d, 12);
        let kl = char_kl_oracle(&spec, 10, &mut engine, false).unwrap();
        let report = compare(&closed, &kl);
        println!(
            "D4 {desc}: closed vs KL oracle on {} exponents: {}",
            report.exponents_compared,
            if report.passed() { "PASS" } else { "FAIL" }
        );
    }
}
