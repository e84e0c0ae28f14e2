//! Affine Weyl group arithmetic: canonical forms, lengths, reduced words,
//! minimal coset representatives and the subregular elements `w_i`.
//!
//! Run with: `cargo run --example weyl_arithmetic`

use affine_kl::affine_weyl::{
    enumerate_up_to_length, min_coset_rep, subregular_nu, subregular_w, AffineWeylElement,
    PeriodicPermutation,
};
use affine_kl::root_data::{build_cartan, TypeLabel};

fn main() {
    let d4 = build_cartan(TypeLabel::parse("D4").unwrap()).unwrap();

    // s_0 in canonical form t_theta s_theta.
    let s0 = AffineWeylElement::simple(&d4, 0);
    println!("s_0 canonical form: {}", s0.to_json());

    // Greedy reduced words multiply back to the element.
    let w = AffineWeylElement::from_word(&d4, &[2, 0, 1, 2, 0]);
    let (len, word) = w.length_and_word();
    println!("w = s2 s0 s1 s2 s0: length {len}, smallest reduced word {word:?}");
    assert_eq!(AffineWeylElement::from_word(&d4, &word), w);
    println!("sign(w) = {} = (-1)^length", w.sign());

    // Minimal coset representatives: gamma = theta yields w_theta = s_0.
    let w_theta = min_coset_rep(&d4, &d4.theta.clone());
    println!(
        "w_theta = {} (equals s_0: {})",
        w_theta.to_json(),
        w_theta == s0
    );

    // The subregular elements w_i and their coweights nu_i.
    println!("\nD4 subregular data (i, word of w_i, nu_i):");
    for i in 0..=4i64 {
        let w_i = subregular_w(&d4, i, 12).unwrap();
        let (_, word) = w_i.length_and_word();
        println!(
            "  i = {i}: word {word:?}, nu_i = {:?}",
            subregular_nu(&d4, i, 12).unwrap()
        );
    }

    // Type A: the same elements in the periodic-permutation picture.
    let a2 = build_cartan(TypeLabel::parse("A2").unwrap()).unwrap();
    println!("\nA2 subregular elements as periodic permutations of Z:");
    for i in -3i64..=3 {
        let w_i = subregular_w(&a2, i, 12).unwrap();
        let p = PeriodicPermutation::from_element(&w_i).unwrap();
        println!(
            "  i = {i:>2}: window {:?} (length {})",
            p.window,
            w_i.length()
        );
    }

    // Ball sizes from BFS with certified lengths.
    let ball = enumerate_up_to_length(&a2, 6, 100_000).unwrap();
    let mut by_len = vec![0usize; 7];
    for (_, l) in &ball {
        by_len[*l] += 1;
    }
    println!("\nA2 affine ball sizes by length 0..6: {by_len:?}");
}
