//! `z2mcodes`: inspect codes over `Z_{2^m}`, decompose shadows, run the
//! coset extension constructions with certificates, compare weight
//! enumerators, and check Jacobi transformation laws numerically.
//!
//! Exit codes: 0 = all checks pass, 1 = a check failed, 2 = usage or
//! parse error.

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use z2m_codes::builder::{extend, recipe_for, Variant};
use z2m_codes::cwe::cwe_direct;
use z2m_codes::format::{parse_code_file, write_code_file, write_code_str};
use z2m_codes::jacobi::{
    default_sample_points, evaluate_enumerator, modularity_check, theta_table, JacobiCheckSpec,
};
use z2m_codes::lincode::{LinearCode, TypeVerdict, DEFAULT_ENUM_CAP};
use z2m_codes::shadow::{decompose, shadow_weight_check, verify_orthogonality, ShadowMode};
use z2m_codes::verify::{find_generalized_s, verify_corpus, CorpusManifest, VerifyOptions};
use z2m_codes::zring::RingVector;
use z2m_codes::Error;

const ENV_CAP: &str = "Z2MCODES_ENUM_CAP";

#[derive(Parser)]
#[command(name = "z2mcodes", version, about)]
struct Cli {
    /// Codeword enumeration cap (also via Z2MCODES_ENUM_CAP; default 2^24).
    #[arg(long, global = true)]
    cap: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Shadow of a Type I code.
    Shadow,
    /// Generalized shadow with respect to a vector s.
    Gen,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    A,
    B,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::A => Variant::A,
            VariantArg::B => Variant::B,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print length, size, classification and weight histogram.
    Info { file: PathBuf },
    /// Classify a code and verify its basic invariants (duality law,
    /// shadow lemmas when applicable).
    Check { file: PathBuf },
    /// Compute the dual code.
    Dual {
        file: PathBuf,
        /// Write the dual in code file format instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose into cosets and report the shadow checks as JSON.
    Shadow {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "shadow")]
        mode: ModeArg,
        /// Shadow vector for --mode gen, e.g. "1,0,3".
        #[arg(long)]
        s: Option<String>,
        /// Search seed when --s is omitted in gen mode (0 = plain scan).
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a construction case and certify the result.
    Extend {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "shadow")]
        mode: ModeArg,
        #[arg(long)]
        s: Option<String>,
        #[arg(long, value_enum, default_value = "a")]
        variant: VariantArg,
        /// Write the extended code in code file format.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the full certificate as JSON.
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the complete weight enumerator as JSON.
    Cwe { file: PathBuf },
    /// Evaluate the theta-substituted enumerator, or check the
    /// transformation laws with --check.
    Jacobi {
        file: PathBuf,
        /// Evaluation point, e.g. "2i" or "0.5+1.5i".
        #[arg(long, default_value = "2i")]
        tau: String,
        #[arg(long, default_value = "0.1+0.2i")]
        z: String,
        #[arg(long, default_value_t = z2m_codes::jacobi::DEFAULT_RADIUS)]
        radius: i64,
        #[arg(long, default_value_t = z2m_codes::jacobi::DEFAULT_TOL)]
        tol: f64,
        /// Run the full transformation-law check at the default samples.
        #[arg(long)]
        check: bool,
    },
    /// Run the whole pipeline over a corpus manifest.
    VerifyCorpus {
        manifest: PathBuf,
        /// Search seed for generalized shadow vectors.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Ignore the manifest's expected_failures baseline: any failing
        /// construction makes the run fail.
        #[arg(long)]
        strict: bool,
    },
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    let parse_part = |p: &str| -> Result<f64, String> {
        match p {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => p
                .parse::<f64>()
                .map_err(|e| format!("bad number {p:?}: {e}")),
        }
    };
    // Split before the last +/- that is not an exponent sign.
    let bytes = s.as_bytes();
    let mut split = None;
    for i in (1..s.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            split = Some(i);
            break;
        }
    }
    if let Some(stripped) = s.strip_suffix('i') {
        match split {
            Some(i) => {
                let re = parse_part(&s[..i])?;
                let im = parse_part(&stripped[i..])?;
                Ok(Complex64::new(re, im))
            }
            None => Ok(Complex64::new(0.0, parse_part(stripped)?)),
        }
    } else {
        Ok(Complex64::new(parse_part(&s)?, 0.0))
    }
}

fn enum_cap(cli_cap: Option<u64>) -> u64 {
    cli_cap
        .or_else(|| std::env::var(ENV_CAP).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(DEFAULT_ENUM_CAP)
}

/// Failure propagation: parse errors exit 2, math/check errors exit 1.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } | Error::Io(_) | Error::Json(_) | Error::Domain(_) => 2,
        _ => 1,
    }
}

/// Writes a line to stdout, ignoring broken pipes (e.g. piping to head).
fn emit(text: impl std::fmt::Display) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn load(file: &Path) -> Result<LinearCode, Error> {
    parse_code_file(file)
}

fn resolve_mode(
    code: &LinearCode,
    mode: ModeArg,
    s: &Option<String>,
    seed: u64,
) -> Result<ShadowMode, Error> {
    match mode {
        ModeArg::Shadow => Ok(ShadowMode::TypeIShadow),
        ModeArg::Gen => {
            let s = match s {
                Some(literal) => RingVector::from_literal(code.params(), literal)?,
                None => {
                    let half = code.params().half();
                    find_generalized_s(code, 0, seed, 1 << 16)?
                        .or(find_generalized_s(code, half, seed, 1 << 16)?)
                        .ok_or_else(|| {
                            Error::InvalidShadowVector(
                                "no valid generalized shadow vector exists for this code".into(),
                            )
                        })?
                }
            };
            Ok(ShadowMode::Generalized(s))
        }
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let cap = enum_cap(cli.cap);
    match cli.command {
        Command::Info { file } => {
            let code = load(&file)?;
            let verdict = code.classify(cap)?;
            emit(format!(
                "m={} n={} |C|={} {}",
                code.params().m(),
                code.length(),
                code.size(),
                verdict
            ));
            let hist = code.weight_histogram(cap)?;
            let entries: Vec<String> = hist.iter().map(|(w, c)| format!("{w}:{c}")).collect();
            emit(format!("weights {{{}}}", entries.join(", ")));
            Ok(true)
        }
        Command::Check { file } => {
            let code = load(&file)?;
            let verdict = code.classify(cap)?;
            let dual = code.dual();
            let size_law = code.size_exponent() + dual.size_exponent()
                == code.params().m() * code.length() as u32;
            let mut report = serde_json::json!({
                "m": code.params().m(),
                "n": code.length(),
                "size_exponent": code.size_exponent(),
                "classification": verdict.to_string(),
                "size_law_ok": size_law,
            });
            let mut ok = size_law;
            if verdict == TypeVerdict::TypeI {
                let dec = decompose(&code, ShadowMode::TypeIShadow, cap)?;
                let table = verify_orthogonality(&dec, cap);
                let weights = shadow_weight_check(&dec, cap);
                report["glue"] = serde_json::json!(dec.glue().to_string());
                report["orthogonality_ok"] = serde_json::json!(table.is_ok());
                report["weight_congruence_ok"] = serde_json::json!(weights.is_ok());
                ok = ok && table.is_ok() && weights.is_ok();
            }
            report["passed"] = serde_json::json!(ok);
            emit(serde_json::to_string_pretty(&report)?);
            Ok(ok)
        }
        Command::Dual { file, out } => {
            let code = load(&file)?;
            let dual = code.dual();
            match out {
                Some(path) => write_code_file(&dual, path)?,
                None => {
                    use std::io::Write;
                    let _ = write!(std::io::stdout(), "{}", write_code_str(&dual));
                }
            }
            Ok(true)
        }
        Command::Shadow {
            file,
            mode,
            s,
            seed,
        } => {
            let code = load(&file)?;
            let mode = resolve_mode(&code, mode, &s, seed)?;
            let dec = decompose(&code, mode, cap)?;
            let table = verify_orthogonality(&dec, cap);
            let weights = if dec.is_generalized() {
                None
            } else {
                Some(shadow_weight_check(&dec, cap)?)
            };
            let shadow_size = 2u128 * dec.subcode().size();
            let report = serde_json::json!({
                "m": code.params().m(),
                "n": code.length(),
                "subcode_generators": dec.subcode().generators().iter()
                    .map(|g| g.components().to_vec()).collect::<Vec<_>>(),
                "s": dec.s().components().to_vec(),
                "t": dec.t().components().to_vec(),
                "glue": dec.glue().to_string(),
                "shadow_size": shadow_size.to_string(),
                "orthogonality": match &table {
                    Ok(t) => serde_json::json!({"matches": t.matches, "relabeled": t.relabeled}),
                    Err(e) => serde_json::json!({"matches": false, "error": e.to_string()}),
                },
                "weight_congruence": weights,
            });
            emit(serde_json::to_string_pretty(&report)?);
            Ok(table.is_ok())
        }
        Command::Extend {
            file,
            mode,
            s,
            variant,
            out,
            cert,
            seed,
        } => {
            let code = load(&file)?;
            let mode = resolve_mode(&code, mode, &s, seed)?;
            let dec = decompose(&code, mode, cap)?;
            let recipe = recipe_for(&dec, variant.into())?;
            let certificate = extend(&dec, &recipe, cap)?;
            if let Some(path) = out {
                write_code_file(&certificate.code, path)?;
            }
            let json = certificate.to_json();
            match cert {
                Some(path) => std::fs::write(path, serde_json::to_string_pretty(&json)?)?,
                None => emit(serde_json::to_string_pretty(&json)?),
            }
            Ok(certificate.passed)
        }
        Command::Cwe { file } => {
            let code = load(&file)?;
            let words = code.codewords(cap)?;
            let we = cwe_direct(code.params(), code.length(), words.iter())?;
            emit(serde_json::to_string(&we.to_json())?);
            Ok(true)
        }
        Command::Jacobi {
            file,
            tau,
            z,
            radius,
            tol,
            check,
        } => {
            let code = load(&file)?;
            let tau = parse_complex(&tau).map_err(Error::Domain)?;
            let z = parse_complex(&z).map_err(Error::Domain)?;
            let words = code.codewords(cap)?;
            let we = cwe_direct(code.params(), code.length(), words.iter())?;
            let value = evaluate_enumerator(&we, tau, z, radius)?;
            let thetas = theta_table(code.params(), tau, z, radius)?;
            let mut report = serde_json::json!({
                "tau": [tau.re, tau.im],
                "z": [z.re, z.im],
                "radius": radius,
                "value": [value.re, value.im],
                "theta_tail_bounds": thetas.iter().map(|t| t.tail_bound).collect::<Vec<_>>(),
            });
            let mut ok = true;
            if check {
                let spec = JacobiCheckSpec {
                    weight: (code.length() / 2) as u32,
                    index: code.length() as u64 * code.params().half(),
                    samples: default_sample_points(),
                    tolerance: tol,
                    radius,
                };
                let check_report = modularity_check(&we, &spec)?;
                let structure = z2m_codes::jacobi::structure_check(&we, spec.index, 1 << 16);
                ok = check_report.passed
                    && structure.q_exponents_integral
                    && structure.support_violations == 0;
                report["modularity"] = serde_json::to_value(&check_report)?;
                report["structure"] = serde_json::to_value(&structure)?;
            }
            emit(serde_json::to_string_pretty(&report)?);
            Ok(ok)
        }
        Command::VerifyCorpus {
            manifest,
            seed,
            strict,
        } => {
            let base = manifest
                .parent()
                .map(Path::to_path_buf)
                .unwrap_or_else(|| PathBuf::from("."));
            let mut parsed = CorpusManifest::load(&manifest)?;
            if parsed.seeds.is_empty() {
                eprintln!("warning: empty manifest, nothing to verify");
            }
            if strict {
                for seed in &mut parsed.seeds {
                    seed.expected_failures.clear();
                }
            }
            let options = VerifyOptions {
                search_seed: seed,
                ..VerifyOptions::default()
            };
            let report = verify_corpus(&parsed, &base, &options)?;
            emit(serde_json::to_string_pretty(&report)?);
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
