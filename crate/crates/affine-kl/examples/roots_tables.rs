//! Build the root-system tables for every supported type and print the
//! invariants derived from them.
//!
//! Run with: `cargo run --example roots_tables`

use affine_kl::root_data::{build_cartan, TypeLabel};

fn main() {
    for label in ["A2", "A4", "D4", "D5", "E6", "E7", "E8"] {
        let datum = build_cartan(TypeLabel::parse(label).unwrap()).unwrap();
        println!("type {label}: rank {}", datum.rank);
        println!("  positive roots: {}", datum.positive_roots.len());
        println!(
            "  highest root theta = {:?} (coordinates on simple roots)",
            datum.theta
        );
        println!("  marks = comarks = {:?}", datum.marks);
        println!(
            "  dual Coxeter number h^v = 1 + sum of comarks = {}",
            datum.dual_coxeter
        );
        println!(
            "  affine node 0 attaches to node(s) {:?}",
            datum.affine_node_neighbors
        );
        println!("  (theta, theta) = {}", datum.norm_sq_vec(&datum.theta));
        println!();
    }

    // Rejected labels come back with a structured error.
    for bad in ["B3", "G2", "A1"] {
        match TypeLabel::parse(bad) {
            Err(e) => println!("{bad}: rejected ({e})"),
            Ok(_) => unreachable!(),
        }
    }
}
