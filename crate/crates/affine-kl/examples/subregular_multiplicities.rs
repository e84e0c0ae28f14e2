//! Closed-form subregular multiplicity columns and the sweep that verifies
//! them against the brute-force Hecke oracle.
//!
//! Run with: `cargo run --example subregular_multiplicities`

use affine_kl::root_data::{build_cartan, TypeLabel};
use affine_kl::subregular::{decompose_translate, m_closed, verify_oracle_equality, z_value};

fn main() {
    // The counting function z_i(a eps_k) behind the type A multiplicities.
    println!("z_i(2 eps_1) for n = 3, i = -3..6:");
    let row: Vec<i64> = (-3..=6).map(|i| z_value(i, 2, 1, 3)).collect();
    println!("  {row:?}");

    // D4: the quadratic closed form <Lambda_i, -gamma + |gamma|^2/2 K>.
    let d4 = build_cartan(TypeLabel::parse("D4").unwrap()).unwrap();
    let gamma = vec![1, 0, 0, 0];
    println!("\nD4 multiplicity column for gamma = {gamma:?}:");
    for i in 0..=4i64 {
        println!("  m(i = {i}) = {}", m_closed(&d4, i, &gamma).unwrap());
    }
    // The same column through the lattice model t_gamma(d) = d - sum m alpha_i^v.
    let col = decompose_translate(&d4, &gamma);
    println!("  via the module model: {:?}", col.entries);

    // Type A columns are finitely supported over Z.
    let a2 = build_cartan(TypeLabel::parse("A2").unwrap()).unwrap();
    let gamma = vec![2, 1];
    let col = decompose_translate(&a2, &gamma);
    println!(
        "\nA2 multiplicity column for gamma = {gamma:?}: {:?}",
        col.entries
    );

    // The oracle sweep: closed forms vs parabolic inverse KL at q = 1.
    for label in ["A2", "D4"] {
        let d = build_cartan(TypeLabel::parse(label).unwrap()).unwrap();
        let report = verify_oracle_equality(&d, 8).unwrap();
        println!(
            "\n{label} oracle sweep (cap 8): {} cosets, {} (i, gamma) pairs, pass = {}",
            report.cosets_checked,
            report.pairs_checked,
            report.passed()
        );
    }
}
