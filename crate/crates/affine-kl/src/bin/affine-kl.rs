//! Thin command-line front end; all functionality lives in the library.

fn main() {
    let code = affine_kl::cli::run(std::env::args().collect());
    std::process::exit(code);
}
