//! Type A characters: the corollary weights whose coefficients are the
//! indicator of a half-space in the coroot lattice.
//!
//! Run with: `cargo run --example characters_type_a`

use affine_kl::affine_weyl::subregular_w;
use affine_kl::characters::{char_closed_form, char_kac_wakimoto, compare, validate_pair};
use affine_kl::root_data::{build_cartan, AffineWeight, TypeLabel};

fn main() {
    let n = 3usize;
    let d = build_cartan(TypeLabel::parse("A2").unwrap()).unwrap();

    for i in 0..=2i64 {
        // Lambda = -(1+i) Lambda_0 + i Lambda_{n-1}.
        let mut big = AffineWeight::zero(d.rank);
        big.coeffs[0] = -(1 + i);
        big.coeffs[d.rank] += i;
        let w = subregular_w(&d, i, 3 * n).unwrap();
        let lambda = w.dot_action(&big);
        let spec = validate_pair(&d, &lambda, i, 3 * n).unwrap();
        assert_eq!(spec.big_lambda.coeffs, big.coeffs);

        let closed = char_closed_form(&spec, 16, false).unwrap();
        let indicator = char_kac_wakimoto(&spec, 16, false).unwrap();
        let report = compare(&closed, &indicator);
        println!(
            "n = {n}, Lambda = {:?}: closed form vs indicator sum on {} exponents => {}",
            big.coeffs,
            report.exponents_compared,
            if report.passed() { "agree" } else { "DISAGREE" }
        );
    }

    // The merged coefficients themselves are 0 and +-1: list the nonzero
    // values for i = 1.
    let mut big = AffineWeight::zero(d.rank);
    big.coeffs[0] = -2;
    big.coeffs[d.rank] = 1;
    let w = subregular_w(&d, 1, 9).unwrap();
    let lambda = w.dot_action(&big);
    let spec = validate_pair(&d, &lambda, 1, 9).unwrap();
    let closed = char_closed_form(&spec, 16, false).unwrap();
    let values: std::collections::BTreeSet<i64> = closed.merged.values().copied().collect();
    println!("\ndistinct merged coefficients for Lambda = -2L0 + L2: {values:?}");
}
