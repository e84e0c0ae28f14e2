//! Command-line dispatch for the `affine-kl` binary.
//!
//! Every subcommand is a thin wrapper over the library. Output is
//! deterministic for a fixed command line and seed: all tables iterate
//! sorted structures. Errors are reported as machine-readable JSON on
//! stderr with exit codes 0 (pass), 1 (usage), 2 (computation cap),
//! 3 (verification failure).
//!
//! The environment variable `AFFINE_KL_CACHE_DIR` names an optional
//! directory for persisting parabolic canonical-basis tables between runs;
//! files are content-addressed by type label and cap, and every imported
//! entry is re-certified before use.

use clap::{Parser, Subcommand};
use num_rational::Ratio;
use std::io::Write;
use std::sync::Arc;

use crate::affine_weyl::{
    min_coset_rep, subregular_nu, subregular_w, AffineWeylElement, PeriodicPermutation,
};
use crate::characters::{
    char_closed_form, char_kac_wakimoto, char_kl_general, char_kl_oracle, compare,
    kw_table_general, validate_pair, verify_table_invariants, CharacterTruncation,
};
use crate::hecke_kl::{antispherical_project, AntisphericalEngine, HeckeElement, HeckeEngine};
use crate::laurent::LaurentPoly;
use crate::root_data::{build_cartan, AffineRoot, AffineWeight, CartanDatum, TypeLabel};
use crate::subregular::{decompose_translate, m_closed, verify_oracle_equality, z_value};
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "affine-kl",
    version,
    about = "Exact Kazhdan-Lusztig combinatorics for simply-laced affine Weyl groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the root-system and affine Cartan table for a type.
    Roots {
        #[arg(long = "type")]
        type_label: String,
        #[arg(long, default_value = "json", value_parser = ["json", "plain"])]
        format: String,
    },
    /// Element operations in the affine Weyl group.
    Weyl {
        #[arg(long = "type")]
        type_label: String,
        /// One of: length, word, sign, canonical, periodic, min-coset, subreg.
        #[arg(long)]
        op: String,
        /// Word of affine simple reflections, e.g. `0,1,0`.
        #[arg(long)]
        word: Option<String>,
        /// Coroot-lattice point, e.g. `1,0` (for min-coset).
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        /// Subregular index (for subreg).
        #[arg(long, allow_hyphen_values = true)]
        i: Option<i64>,
        #[arg(long, default_value_t = 0)]
        window: usize,
    },
    /// Kazhdan-Lusztig polynomial: coefficient of H_w in C_v.
    Klpoly {
        #[arg(long = "type")]
        type_label: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Inverse KL column of the coset representative w_gamma, at q and q=1.
    Inversekl {
        #[arg(long = "type")]
        type_label: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Anti-spherical module elements: C', T expansions and projections.
    Antispherical {
        #[arg(long = "type")]
        type_label: String,
        /// One of: cprime, texpand, project.
        #[arg(long)]
        op: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Closed-form subregular multiplicity column.
    #[command(name = "subreg-mult")]
    SubregMult {
        #[arg(long = "type")]
        type_label: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long = "all-i", default_value_t = false)]
        all_i: bool,
        #[arg(long)]
        i: Option<i64>,
        #[arg(long, default_value_t = 0)]
        window: usize,
        #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
        format: String,
    },
    /// Sweep: closed forms vs the Hecke-algebra oracle at q=1.
    #[command(name = "subreg-verify")]
    SubregVerify {
        #[arg(long = "type")]
        type_label: String,
        #[arg(long, default_value_t = 8)]
        cap: usize,
    },
    /// Truncated character table via one of the three routes.
    Char {
        #[arg(long = "type")]
        type_label: String,
        /// Coefficients of lambda on Lambda_0..Lambda_r, e.g. `-1,0,0,0,0`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Optional exact rational delta coefficient `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
        #[arg(long, default_value_t = 8)]
        radius: i64,
        #[arg(long, default_value = "closed", value_parser = ["closed", "kw", "kl"])]
        route: String,
        #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
        format: String,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = 0)]
        window: usize,
        /// Record (u word, gamma) provenance per exponent.
        #[arg(long, default_value_t = false)]
        provenance: bool,
    },
    /// Run the packaged character fixtures and compare routes.
    #[command(name = "char-verify")]
    CharVerify {
        /// Fixture selector: `d4-items-1-4`, `d4-item-N`, `d4-items-5-7`,
        /// `typea-corollary`, or `all`.
        #[arg(long, default_value = "d4-items-1-4")]
        examples: String,
        #[arg(long, default_value_t = 12)]
        radius: i64,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Quick end-to-end self-test over the example fixtures.
    Selftest {
        #[arg(long, default_value_t = false)]
        quick: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Entry point used by the `affine-kl` binary; returns the process exit code.
pub fn run(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version with its own success exit.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut stdout = std::io::stdout().lock();
    match dispatch(cli.command, &mut stdout) {
        Ok(code) => code,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(err) => {
            let payload = serde_json::json!({
                "error": { "code": err.code(), "message": err.to_string() }
            });
            eprintln!("{payload}");
            err.exit_code()
        }
    }
}

fn parse_i64_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidArgument(format!("cannot parse integer `{t}`")))
        })
        .collect()
}

fn parse_word(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("cannot parse index `{t}`")))
        })
        .collect()
}

fn parse_ratio(s: &str) -> Result<Ratio<i64>> {
    let parts: Vec<&str> = s.split('/').collect();
    let bad = || Error::InvalidArgument(format!("cannot parse rational `{s}` (use p or p/q)"));
    match parts.as_slice() {
        [p] => Ok(Ratio::from_integer(p.trim().parse().map_err(|_| bad())?)),
        [p, q] => {
            let num = p.trim().parse().map_err(|_| bad())?;
            let den: i64 = q.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(num, den))
        }
        _ => Err(bad()),
    }
}

fn load_datum(label: &str) -> Result<Arc<CartanDatum>> {
    build_cartan(TypeLabel::parse(label)?)
}

fn ratio_str(r: &Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn weight_json(w: &AffineWeight) -> serde_json::Value {
    serde_json::json!({ "coeffs": w.coeffs, "delta": ratio_str(&w.delta_coeff) })
}

fn default_window(datum: &CartanDatum, requested: usize) -> usize {
    if requested > 0 {
        requested
    } else if let Some(n) = datum.eps_dim() {
        3 * n
    } else {
        datum.rank + 1
    }
}

/// Build (or load from the cache directory) an anti-spherical engine.
fn make_as_engine(datum: &Arc<CartanDatum>, cap: usize) -> AntisphericalEngine {
    let mut engine = AntisphericalEngine::with_cap(datum, cap);
    if let Some(dir) = cache_dir() {
        let _ = cache::load(&mut engine, &dir);
    }
    engine
}

fn finish_as_engine(engine: &AntisphericalEngine) {
    if let Some(dir) = cache_dir() {
        let _ = cache::save(engine, &dir);
    }
}

fn cache_dir() -> Option<std::path::PathBuf> {
    std::env::var_os("AFFINE_KL_CACHE_DIR").map(std::path::PathBuf::from)
}

/// Content-addressed persistence of parabolic canonical-basis tables.
mod cache {
    use super::*;
    use sha2::{Digest, Sha256};

    fn file_for(engine: &AntisphericalEngine, dir: &std::path::Path) -> std::path::PathBuf {
        let descriptor = format!(
            "affine-kl/{}/parabolic-canonical/{}/cap{}",
            env!("CARGO_PKG_VERSION"),
            engine.datum.label,
            engine.cap()
        );
        let hash = Sha256::digest(descriptor.as_bytes());
        dir.join(format!("{:x}.json", hash))
    }

    pub fn save(engine: &AntisphericalEngine, dir: &std::path::Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let entries = engine.export_cprime();
        let json: Vec<serde_json::Value> = entries
            .iter()
            .map(|(nu, rows)| {
                serde_json::json!({
                    "nu": nu,
                    "rows": rows
                        .iter()
                        .map(|(g, p)| serde_json::json!({ "gamma": g, "poly": p.to_json() }))
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        let path = file_for(engine, dir);
        std::fs::write(path, serde_json::to_string(&json).unwrap())?;
        Ok(())
    }

    pub fn load(engine: &mut AntisphericalEngine, dir: &std::path::Path) -> Result<()> {
        let path = file_for(engine, dir);
        let Ok(data) = std::fs::read_to_string(&path) else {
            return Ok(());
        };
        let Ok(json) = serde_json::from_str::<Vec<serde_json::Value>>(&data) else {
            return Ok(());
        };
        let mut entries = Vec::new();
        for item in &json {
            let (Some(nu), Some(rows)) = (item.get("nu"), item.get("rows")) else {
                return Ok(());
            };
            let nu: Vec<i64> = serde_json::from_value(nu.clone())
                .map_err(|_| Error::InvalidArgument("malformed cache entry".into()))?;
            let mut parsed = Vec::new();
            for row in rows.as_array().unwrap_or(&Vec::new()) {
                let g: Vec<i64> =
                    serde_json::from_value(row.get("gamma").cloned().unwrap_or_default())
                        .unwrap_or_default();
                let Some(p) = row.get("poly").and_then(LaurentPoly::from_json) else {
                    return Ok(());
                };
                parsed.push((g, p));
            }
            entries.push((nu, parsed));
        }
        // Imported entries are re-certified inside the engine.
        let _ = engine.import_cprime(entries);
        Ok(())
    }
}

fn dispatch(cmd: Command, out: &mut impl Write) -> Result<i32> {
    match cmd {
        Command::Roots { type_label, format } => {
            let datum = load_datum(&type_label)?;
            if format == "json" {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&datum.to_json()).unwrap()
                )?;
            } else {
                writeln!(out, "type {} (rank {})", datum.label, datum.rank)?;
                writeln!(
                    out,
                    "node labels: path/branch convention; affine node 0 attaches to {:?}",
                    datum.affine_node_neighbors
                )?;
                for i in 1..=datum.rank {
                    writeln!(out, "  node {i}: neighbors {:?}", datum.adjacency[i])?;
                }
                writeln!(out, "cartan matrix:")?;
                for row in &datum.cartan {
                    writeln!(out, "  {row:?}")?;
                }
                writeln!(out, "highest root theta = {:?}", datum.theta)?;
                writeln!(out, "marks {:?}, comarks {:?}", datum.marks, datum.comarks)?;
                writeln!(
                    out,
                    "dual Coxeter number (1 + sum of comarks) = {}",
                    datum.dual_coxeter
                )?;
                writeln!(out, "positive roots ({}):", datum.positive_roots.len())?;
                for root in &datum.positive_roots {
                    writeln!(out, "  {root:?}")?;
                }
            }
            Ok(0)
        }
        Command::Weyl {
            type_label,
            op,
            word,
            gamma,
            i,
            window,
        } => {
            let datum = load_datum(&type_label)?;
            let window = default_window(&datum, window);
            let element = |w: &Option<String>| -> Result<AffineWeylElement> {
                let word = parse_word(w.as_deref().ok_or_else(|| {
                    Error::InvalidArgument("--word is required for this op".into())
                })?)?;
                for &s in &word {
                    if s > datum.rank {
                        return Err(Error::InvalidArgument(format!(
                            "index {s} outside 0..={}",
                            datum.rank
                        )));
                    }
                }
                Ok(AffineWeylElement::from_word(&datum, &word))
            };
            let payload = match op.as_str() {
                "length" => {
                    let w = element(&word)?;
                    serde_json::json!({ "length": w.length() })
                }
                "word" => {
                    let w = element(&word)?;
                    let (len, rw) = w.length_and_word();
                    serde_json::json!({ "length": len, "reduced_word": rw })
                }
                "sign" => {
                    let w = element(&word)?;
                    serde_json::json!({ "sign": w.sign() })
                }
                "canonical" => {
                    let w = element(&word)?;
                    w.to_json()
                }
                "periodic" => {
                    let w = element(&word)?;
                    let p = PeriodicPermutation::from_element(&w)?;
                    serde_json::json!({ "n": p.n, "window": p.window })
                }
                "min-coset" => {
                    let g = parse_i64_list(gamma.as_deref().ok_or_else(|| {
                        Error::InvalidArgument("--gamma is required for min-coset".into())
                    })?)?;
                    if g.len() != datum.rank {
                        return Err(Error::InvalidArgument(format!(
                            "gamma must have {} coordinates",
                            datum.rank
                        )));
                    }
                    let w = min_coset_rep(&datum, &g);
                    let (len, rw) = w.length_and_word();
                    serde_json::json!({
                        "w_gamma": w.to_json(), "length": len, "reduced_word": rw
                    })
                }
                "subreg" => {
                    let idx = i.ok_or_else(|| {
                        Error::InvalidArgument("--i is required for subreg".into())
                    })?;
                    let w = subregular_w(&datum, idx, window)?;
                    let nu = subregular_nu(&datum, idx, window)?;
                    let (len, rw) = w.length_and_word();
                    serde_json::json!({
                        "i": idx, "w_i": w.to_json(), "nu_i": nu,
                        "length": len, "reduced_word": rw
                    })
                }
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown weyl op `{other}` (length|word|sign|canonical|periodic|min-coset|subreg)"
                    )))
                }
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&payload).unwrap())?;
            Ok(0)
        }
        Command::Klpoly {
            type_label,
            w,
            v,
            cap,
        } => {
            let datum = load_datum(&type_label)?;
            let we = AffineWeylElement::from_word(&datum, &parse_word(&w)?);
            let ve = AffineWeylElement::from_word(&datum, &parse_word(&v)?);
            let mut engine = match cap {
                Some(c) => HeckeEngine::with_cap(&datum, c),
                None => HeckeEngine::new(&datum),
            };
            let p = engine.kl_polynomial(&we, &ve)?;
            let payload = serde_json::json!({
                "standard_index": we.to_json(),
                "canonical_index": ve.to_json(),
                "P": p.to_json(),
                "P_pretty": p.to_string(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&payload).unwrap())?;
            Ok(0)
        }
        Command::Inversekl {
            type_label,
            gamma,
            cap,
        } => {
            let datum = load_datum(&type_label)?;
            let g = parse_i64_list(&gamma)?;
            if g.len() != datum.rank {
                return Err(Error::InvalidArgument(format!(
                    "gamma must have {} coordinates",
                    datum.rank
                )));
            }
            let mut engine = match cap {
                Some(c) => make_as_engine(&datum, c),
                None => make_as_engine(
                    &datum,
                    crate::hecke_kl::AntisphericalEngine::new(&datum).cap(),
                ),
            };
            let col = engine.parabolic_inverse(&g)?;
            finish_as_engine(&engine);
            let rows: Vec<serde_json::Value> = col
                .iter()
                .map(|(nu, m)| {
                    serde_json::json!({
                        "nu": nu, "m": m.to_json(), "m_pretty": m.to_string(),
                        "m_at_1": m.eval_at_one(),
                    })
                })
                .collect();
            let payload = serde_json::json!({
                "type": datum.label.to_string(),
                "gamma": g,
                "w_gamma_length": engine.coset_length(&g),
                "column": rows,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&payload).unwrap())?;
            Ok(0)
        }
        Command::Antispherical {
            type_label,
            op,
            nu,
            gamma,
            word,
            cap,
        } => {
            let datum = load_datum(&type_label)?;
            let cap = cap.unwrap_or_else(|| AntisphericalEngine::new(&datum).cap());
            let mut engine = make_as_engine(&datum, cap);
            let payload = match op.as_str() {
                "cprime" => {
                    let n = parse_i64_list(nu.as_deref().ok_or_else(|| {
                        Error::InvalidArgument("--nu is required for cprime".into())
                    })?)?;
                    let c = engine.parabolic_kl(&n)?;
                    serde_json::json!({
                        "nu": n,
                        "cprime": c.terms.iter().map(|(g, p)| {
                            serde_json::json!({ "gamma": g, "coeff": p.to_json() })
                        }).collect::<Vec<_>>(),
                    })
                }
                "texpand" => {
                    let g = parse_i64_list(gamma.as_deref().ok_or_else(|| {
                        Error::InvalidArgument("--gamma is required for texpand".into())
                    })?)?;
                    let col = engine.t_in_c_basis(&g)?;
                    serde_json::json!({
                        "gamma": g,
                        "expansion": col.iter().map(|(nu, m)| {
                            serde_json::json!({
                                "nu": nu, "m": m.to_json(), "m_at_1": m.eval_at_one()
                            })
                        }).collect::<Vec<_>>(),
                    })
                }
                "project" => {
                    let wd = parse_word(word.as_deref().ok_or_else(|| {
                        Error::InvalidArgument("--word is required for project".into())
                    })?)?;
                    let w = AffineWeylElement::from_word(&datum, &wd);
                    let proj = antispherical_project(&datum, &HeckeElement::basis(w));
                    serde_json::json!({
                        "word": wd,
                        "phi": proj.terms.iter().map(|(g, p)| {
                            serde_json::json!({ "gamma": g, "coeff": p.to_json() })
                        }).collect::<Vec<_>>(),
                    })
                }
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown antispherical op `{other}` (cprime|texpand|project)"
                    )))
                }
            };
            finish_as_engine(&engine);
            writeln!(out, "{}", serde_json::to_string_pretty(&payload).unwrap())?;
            Ok(0)
        }
        Command::SubregMult {
            type_label,
            gamma,
            all_i,
            i,
            window,
            format,
        } => {
            let datum = load_datum(&type_label)?;
            let window = default_window(&datum, window);
            let g = parse_i64_list(&gamma)?;
            if g.len() != datum.rank {
                return Err(Error::InvalidArgument(format!(
                    "gamma must have {} coordinates",
                    datum.rank
                )));
            }
            let col = decompose_translate(&datum, &g);
            let indices: Vec<i64> = match i {
                Some(idx) if !all_i => vec![idx],
                _ => {
                    if datum.label.is_type_a() {
                        let w = window as i64;
                        (-w..=w).collect()
                    } else {
                        (0..=datum.rank as i64).collect()
                    }
                }
            };
            let mut rows = Vec::new();
            for idx in &indices {
                let closed = m_closed(&datum, *idx, &g)?;
                debug_assert_eq!(closed, col.get(*idx));
                rows.push((*idx, closed));
            }
            if format == "json" {
                let payload = serde_json::json!({
                    "type": datum.label.to_string(),
                    "gamma": g,
                    "column": rows.iter().map(|(i, m)| {
                        serde_json::json!({ "i": i, "m": m })
                    }).collect::<Vec<_>>(),
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&payload).unwrap())?;
            } else {
                writeln!(out, "i,m")?;
                for (i, m) in rows {
                    writeln!(out, "{i},{m}")?;
                }
            }
            Ok(0)
        }
        Command::SubregVerify { type_label, cap } => {
            let datum = load_datum(&type_label)?;
            let report = verify_oracle_equality(&datum, cap)?;
            let payload = serde_json::json!({
                "type": datum.label.to_string(),
                "cap": cap,
                "cosets_checked": report.cosets_checked,
                "pairs_checked": report.pairs_checked,
                "unit_class_checked": report.unit_class_checked,
                "pass": report.passed(),
                "mismatches": report.mismatches.iter().map(|m| {
                    serde_json::json!({
                        "gamma": m.gamma, "i": m.index,
                        "closed_form": m.closed_form, "kl_value": m.kl_value,
                    })
                }).collect::<Vec<_>>(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&payload).unwrap())?;
            Ok(if report.passed() { 0 } else { 3 })
        }
        Command::Char {
            type_label,
            lambda,
            delta,
            i,
            radius,
            route,
            format,
            cap,
            window,
            provenance,
        } => {
            let datum = load_datum(&type_label)?;
            let window = default_window(&datum, window);
            let coeffs = parse_i64_list(&lambda)?;
            if coeffs.len() != datum.rank + 1 {
                return Err(Error::InvalidArgument(format!(
                    "lambda must have {} coefficients (Lambda_0..Lambda_{})",
                    datum.rank + 1,
                    datum.rank
                )));
            }
            let delta = match delta {
                Some(s) => parse_ratio(&s)?,
                None => Ratio::from_integer(0),
            };
            let lam = AffineWeight::new(coeffs, delta);
            let spec = validate_pair(&datum, &lam, i, window)?;
            let table = match route.as_str() {
                "closed" => char_closed_form(&spec, radius, provenance)?,
                "kw" => char_kac_wakimoto(&spec, radius, provenance)?,
                "kl" => {
                    let cap = cap.unwrap_or_else(|| AntisphericalEngine::new(&datum).cap());
                    let mut engine = make_as_engine(&datum, cap);
                    let t = char_kl_oracle(&spec, radius, &mut engine, provenance)?;
                    finish_as_engine(&engine);
                    t
                }
                _ => unreachable!("value_parser"),
            };
            write_char_table(out, &spec.big_lambda, &table, &format)?;
            Ok(0)
        }
        Command::CharVerify {
            examples,
            radius,
            cap,
        } => run_char_verify(out, &examples, radius, cap),
        Command::Selftest { quick, seed } => run_selftest(out, quick, seed),
    }
}

fn write_char_table(
    out: &mut impl Write,
    big_lambda: &AffineWeight,
    table: &CharacterTruncation,
    format: &str,
) -> Result<()> {
    if format == "csv" {
        writeln!(out, "exponent_coeffs,exponent_delta,coefficient,complete")?;
        for (expo, coeff) in &table.merged {
            let coeffs: Vec<String> = expo.coeffs.iter().map(|c| c.to_string()).collect();
            writeln!(
                out,
                "{},{},{},{}",
                coeffs.join(" "),
                ratio_str(&expo.delta_coeff),
                coeff,
                table.complete.contains(expo)
            )?;
        }
        return Ok(());
    }
    let rows: Vec<serde_json::Value> = table
        .merged
        .iter()
        .map(|(expo, coeff)| {
            let mut row = serde_json::json!({
                "exponent": weight_json(expo),
                "coefficient": coeff,
                "complete": table.complete.contains(expo),
            });
            if let Some(prov) = &table.provenance {
                if let Some(list) = prov.get(expo) {
                    row["provenance"] = serde_json::Value::Array(
                        list.iter()
                            .map(|(word, gamma)| serde_json::json!({ "u": word, "gamma": gamma }))
                            .collect(),
                    );
                }
            }
            row
        })
        .collect();
    let payload = serde_json::json!({
        "route": table.route.to_string(),
        "radius": table.radius,
        "highest_weight": weight_json(big_lambda),
        "rows": rows,
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&payload).unwrap())?;
    Ok(())
}

/// A packaged character fixture.
pub struct CharFixture {
    pub label: &'static str,
    pub type_label: &'static str,
    /// Coefficients of the dot-dominant lambda.
    pub lambda: &'static [i64],
    /// Subregular index (validated pairs) or unused for exploratory items.
    pub index: i64,
    /// Expected coefficients of Lambda = w^{-1} ∘ lambda.
    pub expected_big_lambda: &'static [i64],
    /// Conjectural cases: compared and reported, no correctness claim.
    pub exploratory: bool,
    /// Exploratory only: reduced word of the coset representative w.
    pub v_word: &'static [usize],
    /// Exploratory only: alpha = theta - sum of these simple roots.
    pub alpha_subtract: &'static [usize],
}

/// The packaged fixtures: the singular-level-(-1..-5) family in D4 (items
/// 1-4 proven, 5-7 exploratory) and the type A corollary weights.
pub fn d4_fixtures() -> Vec<CharFixture> {
    vec![
        CharFixture {
            label: "d4-item-1",
            type_label: "D4",
            lambda: &[-1, 0, 0, 0, 0],
            index: 0,
            expected_big_lambda: &[-1, 0, 0, 0, 0],
            exploratory: false,
            v_word: &[],
            alpha_subtract: &[],
        },
        CharFixture {
            label: "d4-item-2",
            type_label: "D4",
            lambda: &[0, 1, -1, 0, 0],
            index: 2,
            expected_big_lambda: &[-2, 1, 0, 0, 0],
            exploratory: false,
            v_word: &[],
            alpha_subtract: &[],
        },
        CharFixture {
            label: "d4-item-3",
            type_label: "D4",
            lambda: &[1, 0, -1, 0, 0],
            index: 2,
            expected_big_lambda: &[-3, 0, 1, 0, 0],
            exploratory: false,
            v_word: &[],
            alpha_subtract: &[],
        },
        CharFixture {
            label: "d4-item-4",
            type_label: "D4",
            lambda: &[0, 0, 0, 0, -1],
            index: 4,
            expected_big_lambda: &[-3, 1, 0, 1, 0],
            exploratory: false,
            v_word: &[],
            alpha_subtract: &[],
        },
        CharFixture {
            label: "d4-item-5",
            type_label: "D4",
            lambda: &[0, 0, 0, -1, 0],
            index: 3,
            expected_big_lambda: &[-4, 2, 0, 1, 0],
            exploratory: true,
            v_word: &[3, 4, 2, 0],
            alpha_subtract: &[2, 3],
        },
        CharFixture {
            label: "d4-item-6",
            type_label: "D4",
            lambda: &[0, -1, 0, 0, 0],
            index: 1,
            expected_big_lambda: &[-5, 2, 0, 1, 1],
            exploratory: true,
            v_word: &[1, 4, 3, 2, 0],
            alpha_subtract: &[2, 1],
        },
        CharFixture {
            label: "d4-item-7",
            type_label: "D4",
            lambda: &[0, 1, -1, 0, 0],
            index: 2,
            expected_big_lambda: &[-4, 3, 0, 0, 0],
            exploratory: true,
            v_word: &[2, 3, 4, 2, 0],
            alpha_subtract: &[2, 4, 3],
        },
    ]
}

/// Build the exploratory data for a fixture: Lambda, alpha, sigma, and v.
fn exploratory_setup(
    datum: &Arc<CartanDatum>,
    fx: &CharFixture,
) -> Result<(
    AffineWeight,
    AffineRoot,
    AffineWeylElement,
    AffineWeylElement,
    usize,
)> {
    let lam = AffineWeight::new(fx.lambda.to_vec(), Ratio::from_integer(0));
    let v = AffineWeylElement::from_word(datum, fx.v_word);
    if !crate::affine_weyl::is_min_coset_rep(&v) {
        return Err(Error::InvalidPair(format!(
            "{}: v is not a minimal coset rep",
            fx.label
        )));
    }
    let stab = crate::affine_weyl::stabilizer(datum, &lam)?;
    let [node] = stab.as_slice() else {
        return Err(Error::InvalidPair(format!(
            "{}: exploratory fixtures need a two-element stabilizer",
            fx.label
        )));
    };
    let node = *node;
    let big = v.inverse().dot_action(&lam);
    if big.coeffs != fx.expected_big_lambda {
        return Err(Error::InvalidPair(format!(
            "{}: fixture Lambda mismatch: {:?}",
            fx.label, big.coeffs
        )));
    }
    let mut alpha = datum.theta.clone();
    for &j in fx.alpha_subtract {
        alpha[j - 1] -= 1;
    }
    let alpha = AffineRoot {
        beta: alpha,
        level: 0,
    };
    let s_node = AffineWeylElement::simple(datum, node);
    let sigma = v.inverse().multiply(&s_node)?.multiply(&v)?;
    Ok((big, alpha, sigma, v, node))
}

fn select_fixtures(selector: &str) -> Result<Vec<CharFixture>> {
    let all = d4_fixtures();
    let picked: Vec<CharFixture> = match selector {
        "all" => all,
        "d4-items-1-4" => all.into_iter().filter(|f| !f.exploratory).collect(),
        "d4-items-5-7" => all.into_iter().filter(|f| f.exploratory).collect(),
        label if label.starts_with("d4-item-") => {
            all.into_iter().filter(|f| f.label == label).collect()
        }
        "typea-corollary" => Vec::new(),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown fixture selector `{other}`"
            )))
        }
    };
    if picked.is_empty() && selector != "typea-corollary" {
        return Err(Error::InvalidArgument(format!(
            "no fixtures match `{selector}`"
        )));
    }
    Ok(picked)
}

fn run_char_verify(
    out: &mut impl Write,
    selector: &str,
    radius: i64,
    cap: Option<usize>,
) -> Result<i32> {
    let mut failures = 0usize;
    for fx in select_fixtures(selector)? {
        let datum = load_datum(fx.type_label)?;
        let lam = AffineWeight::new(fx.lambda.to_vec(), Ratio::from_integer(0));
        if !fx.exploratory {
            let spec = validate_pair(&datum, &lam, fx.index, 12)?;
            if spec.big_lambda.coeffs != fx.expected_big_lambda {
                return Err(Error::VerificationFailed(format!(
                    "{}: fixture Lambda mismatch",
                    fx.label
                )));
            }
            let closed = char_closed_form(&spec, radius, false)?;
            let kw = char_kac_wakimoto(&spec, radius, false)?;
            let report = compare(&closed, &kw);
            let inv = verify_table_invariants(&spec, &closed)?;
            let ok =
                report.passed() && inv.highest_coefficient == 1 && inv.antisymmetry_failures == 0;
            if !ok {
                failures += 1;
            }
            writeln!(
                out,
                "{}: {} ({} exponents compared, highest coefficient {}, {} antisymmetry checks)",
                fx.label,
                if ok { "PASS" } else { "FAIL" },
                report.exponents_compared,
                inv.highest_coefficient,
                inv.antisymmetry_checked,
            )?;
            if !report.passed() {
                for (expo, a, b) in report.mismatches.iter().take(5) {
                    writeln!(out, "  mismatch at {:?}: closed {a} vs kw {b}", expo.coeffs)?;
                }
            }
        } else {
            // Conjectural cases: emit both sides and a diff; no claim.
            let (big, alpha, sigma, v, node) = exploratory_setup(&datum, &fx)?;
            let shifted = big.add(&AffineWeight::rho_hat(datum.rank));
            let kw = kw_table_general(&datum, &shifted, &alpha, &sigma, radius, false)?;
            let cap = cap.unwrap_or(12);
            let mut engine = make_as_engine(&datum, cap);
            let kl = char_kl_general(&datum, &lam, &v, Some(node), radius, &mut engine, false)?;
            finish_as_engine(&engine);
            let report = compare(&kw, &kl);
            writeln!(
                out,
                "{}: EXPLORATORY agree={} ({} exponents compared, max |diff| {}) -- no correctness claim either way",
                fx.label,
                report.passed(),
                report.exponents_compared,
                report.max_abs_diff,
            )?;
            for (expo, a, b) in report.mismatches.iter().take(5) {
                writeln!(out, "  diff at {:?}: kw {a} vs kl {b}", expo.coeffs)?;
            }
        }
    }
    if selector == "typea-corollary" || selector == "all" {
        for n in [3usize, 4] {
            let datum = load_datum(&format!("A{}", n - 1))?;
            for i in 0..=2i64 {
                let mut big = AffineWeight::zero(datum.rank);
                big.coeffs[0] = -(1 + i);
                big.coeffs[datum.rank] += i;
                let w = subregular_w(&datum, i, 3 * n)?;
                let lam = w.dot_action(&big);
                let spec = validate_pair(&datum, &lam, i, 3 * n)?;
                let closed = char_closed_form(&spec, radius, false)?;
                let kw = char_kac_wakimoto(&spec, radius, false)?;
                let report = compare(&closed, &kw);
                if !report.passed() {
                    failures += 1;
                }
                writeln!(
                    out,
                    "typea-corollary-n{n}-i{i}: {} ({} exponents compared)",
                    if report.passed() { "PASS" } else { "FAIL" },
                    report.exponents_compared,
                )?;
            }
        }
    }
    Ok(if failures == 0 { 0 } else { 3 })
}

fn run_selftest(out: &mut impl Write, quick: bool, seed: u64) -> Result<i32> {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    let mut failures = 0usize;
    let mut check = |out: &mut dyn Write, name: &str, ok: bool| {
        if !ok {
            failures += 1;
        }
        writeln!(out, "{name}: {}", if ok { "PASS" } else { "FAIL" }).unwrap();
    };

    // Root data invariants.
    let mut ok = true;
    for label in ["A2", "A3", "D4", "D5", "E6", "E7", "E8"] {
        let d = load_datum(label)?;
        ok &= d.dual_coxeter == 1 + d.comarks.iter().sum::<i64>();
        ok &= d.norm_sq_vec(&d.theta) == 2;
    }
    check(out, "root-data invariants (A/D/E tables)", ok);

    // z-function case table.
    let mut ok = true;
    for n in 3..=5i64 {
        for i in (-3 * n..=3 * n).filter(|i| i.rem_euclid(n) != 0) {
            for a in -10..=10 {
                let res = i.rem_euclid(n);
                let lhs = z_value(i, -a, res, n) - z_value(i, -a, res + 1, n);
                ok &= lhs == crate::subregular::z_difference_case_table(i, a, n);
            }
        }
    }
    check(out, "z-function case table (n = 3, 4, 5)", ok);

    // Group arithmetic on seeded randoms.
    let d = load_datum("A2")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    for _ in 0..100 {
        let mut w = AffineWeylElement::identity(&d);
        let steps = rng.gen_range(0..10);
        for _ in 0..steps {
            let i = rng.gen_range(0..=d.rank);
            w = w.multiply(&AffineWeylElement::simple(&d, i))?;
        }
        let (len, word) = w.length_and_word();
        ok &= AffineWeylElement::from_word(&d, &word) == w;
        ok &= w.sign() == if len % 2 == 0 { 1 } else { -1 };
    }
    check(out, "length/word/sign on seeded random elements", ok);

    // Oracle sweep at a small cap.
    let caps = if quick {
        [("A2", 5usize), ("D4", 4)]
    } else {
        [("A2", 8), ("D4", 6)]
    };
    for (label, cap) in caps {
        let datum = load_datum(label)?;
        let report = verify_oracle_equality(&datum, cap)?;
        check(
            out,
            &format!(
                "subregular oracle equality {label} cap {cap} ({} pairs)",
                report.pairs_checked
            ),
            report.passed(),
        );
    }

    // Character fixture item 1 at a small radius.
    let datum = load_datum("D4")?;
    let lam = AffineWeight::new(vec![-1, 0, 0, 0, 0], Ratio::from_integer(0));
    let spec = validate_pair(&datum, &lam, 0, 12)?;
    let r = if quick { 4 } else { 8 };
    let closed = char_closed_form(&spec, r, false)?;
    let kw = char_kac_wakimoto(&spec, r, false)?;
    check(
        out,
        "character routes agree on the level--1 fixture",
        compare(&closed, &kw).passed(),
    );
    let inv = verify_table_invariants(&spec, &closed)?;
    check(
        out,
        "highest coefficient 1 and antisymmetry",
        inv.highest_coefficient == 1 && inv.antisymmetry_failures == 0,
    );

    writeln!(
        out,
        "selftest: {}",
        if failures == 0 { "PASS" } else { "FAIL" }
    )?;
    Ok(if failures == 0 { 0 } else { 3 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_string(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let cli = Cli::try_parse_from(args).expect("parse");
        let code = dispatch(cli.command, &mut buf).unwrap_or(9);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn roots_json_shape() {
        let (code, out) = run_to_string(&["affine-kl", "roots", "--type", "D4"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["dual_coxeter_number"], 6);
        assert_eq!(v["theta"], serde_json::json!([1, 2, 1, 1]));
    }

    #[test]
    fn weyl_length_example() {
        let (code, out) = run_to_string(&[
            "affine-kl",
            "weyl",
            "--type",
            "A2",
            "--op",
            "length",
            "--word",
            "0,1,0",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["length"], 3);
    }

    #[test]
    fn klpoly_c_s() {
        let (code, out) = run_to_string(&[
            "affine-kl",
            "klpoly",
            "--type",
            "A2",
            "--w",
            "1",
            "--v",
            "1",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["P"]["0"], 1);
    }

    #[test]
    fn subreg_verify_passes() {
        let (code, out) =
            run_to_string(&["affine-kl", "subreg-verify", "--type", "A2", "--cap", "6"]);
        assert_eq!(code, 0, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pass"], true);
        assert!(v["pairs_checked"].as_u64().unwrap() > 0);
    }

    #[test]
    fn char_verify_items_pass() {
        let mut buf = Vec::new();
        let code = run_char_verify(&mut buf, "d4-items-1-4", 8, None).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(code, 0, "{text}");
        assert_eq!(text.matches("PASS").count(), 4, "{text}");
    }

    #[test]
    fn selftest_quick_passes() {
        let mut buf = Vec::new();
        let code = run_selftest(&mut buf, true, 0).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(code, 0, "{text}");
        assert!(text.contains("selftest: PASS"));
    }

    #[test]
    fn error_paths_have_codes() {
        let err = load_datum("B3").unwrap_err();
        assert_eq!(err.code(), "unsupported_type");
        assert_eq!(err.exit_code(), 1);
        let err = Error::CapExceeded("x".into());
        assert_eq!(err.exit_code(), 2);
    }
}
