use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qsphere::algebra::relations::verify_relations;
use qsphere::algebra::{normalize, tampered_r4_rules, to_sphere_generators, Rewriter};
use qsphere::galois::{check_strong_connection, verify_binomial_identity};
use qsphere::projectors::{
    compare_explicit_matrix, export_sphere, export_words, latex_sphere_matrix, latex_words,
    projector, theta_conjugate, to_json, to_sphere_form, verify_projector,
};
use qsphere::report::{all_pass, render_text, CheckRecord};
use qsphere::reps::{
    build_rep, check_rep_relations, classical_chern, rep_projector_check, CHERN_ORIENTATION,
};
use qsphere::suite::{galois_round_trips, run_suite, Level};
use qsphere::syntax::{latex_poly, latex_sphere, parse_expr, print_poly, print_sphere};
use qsphere::Error;

const OK: u8 = 0;
const CHECK_FAILED: u8 = 1;
const USAGE: u8 = 2;
const SINGULAR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qsphere",
    version,
    about = "Exact algebra and verification for the contact quantum sphere"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Basis {
    Word,
    Sphere,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteLevel {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an expression (`-` reads standard input).
    Normalize {
        expr: String,
        #[arg(long, value_enum, default_value = "word")]
        basis: Basis,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Defining and derived relations, including charge conjugation.
    VerifyRelations {
        #[arg(long, default_value_t = 5)]
        k_max: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, hide = true)]
        tamper_r4: bool,
    },
    /// Binomial identities and round trips of the canonical map.
    VerifyGalois {
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Strong connection conditions for all charges up to `n_max`.
    VerifyConnection {
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Prints the projector of the given charge.
    Projector {
        #[arg(long, allow_negative_numbers = true)]
        charge: i64,
        #[arg(long, value_enum, default_value = "sphere")]
        basis: Basis,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Idempotence, hermiticity, coinvariance and trace of one projector.
    VerifyProjector {
        #[arg(long, allow_negative_numbers = true)]
        charge: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Charge conjugation of one projector.
    Symmetry {
        #[arg(long, allow_negative_numbers = true)]
        charge: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Relations in the (N, sigma) representation, and the projector if a
    /// charge is given.
    RepCheck {
        #[arg(long)]
        dim: usize,
        #[arg(long, allow_negative_numbers = true)]
        sigma: i32,
        #[arg(long, allow_negative_numbers = true)]
        charge: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Classical first Chern number of the charge-n projector.
    Chern {
        #[arg(long, allow_negative_numbers = true)]
        charge: i64,
        #[arg(long, default_value_t = 100)]
        grid: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Runs every check at the bounds of the given level.
    Suite {
        #[arg(value_enum, default_value = "quick")]
        level: SuiteLevel,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Singular(_) => SINGULAR,
            Error::Syntax { .. }
            | Error::UnknownToken { .. }
            | Error::NegativePower
            | Error::InvalidDocument(_) => USAGE,
            Error::NotDegreeZero | Error::NotExpressible(_) | Error::GridTooCoarse(_) => {
                CHECK_FAILED
            }
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: USAGE,
        msg: msg.into(),
    }
}

fn no_latex(format: Format) -> Result<(), Failure> {
    if format == Format::Latex {
        return Err(usage(
            "latex output is only available for normalize and projector",
        ));
    }
    Ok(())
}

fn emit_records(command: &str, records: &[CheckRecord], format: Format) -> Result<u8, Failure> {
    no_latex(format)?;
    let pass = all_pass(records);
    match format {
        Format::Json => {
            let doc = json!({
                "schema": "qsphere-report/1",
                "command": command,
                "pass": pass,
                "records": records,
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        _ => {
            print!("{}", render_text(records));
            println!("{command}: {}", if pass { "pass" } else { "FAIL" });
        }
    }
    Ok(if pass { OK } else { CHECK_FAILED })
}

fn read_expr(src: &str) -> Result<String, Failure> {
    if src != "-" {
        return Ok(src.to_string());
    }
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| usage(format!("cannot read standard input: {e}")))?;
    Ok(s)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Normalize {
            expr,
            basis,
            format,
        } => {
            let text = read_expr(&expr)?;
            let x = normalize(&parse_expr(&text)?)?;
            let (plain, latex) = match basis {
                Basis::Word => (print_poly(&x), latex_poly(&x)),
                Basis::Sphere => {
                    let sf = to_sphere_generators(&x)?;
                    (print_sphere(&sf), latex_sphere(&sf))
                }
            };
            match format {
                Format::Text => println!("{plain}"),
                Format::Latex => println!("{latex}"),
                Format::Json => {
                    let doc = json!({
                        "schema": "qsphere-expr/1",
                        "normal_form": plain,
                        "degree": x.homogeneous_degree(),
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
            }
            Ok(OK)
        }
        Command::VerifyRelations {
            k_max,
            format,
            tamper_r4,
        } => {
            if !(0..=20).contains(&k_max) {
                return Err(usage("--k-max must lie in 0..=20"));
            }
            let tampered;
            let rw = if tamper_r4 {
                tampered = Rewriter::new(tampered_r4_rules());
                &tampered
            } else {
                Rewriter::standard()
            };
            emit_records("verify-relations", &verify_relations(rw, k_max), format)
        }
        Command::VerifyGalois { n_max, format } => {
            no_latex(format)?;
            let mut b = Level::Full.bounds();
            b.galois_n = n_max as i64;
            b.galois_degree = n_max as i64;
            let mut records: Vec<CheckRecord> =
                (1..=n_max).flat_map(verify_binomial_identity).collect();
            records.extend(galois_round_trips(&b));
            emit_records("verify-galois", &records, format)
        }
        Command::VerifyConnection { n_max, format } => {
            emit_records("verify-connection", &check_strong_connection(n_max), format)
        }
        Command::Projector {
            charge,
            basis,
            format,
        } => {
            let out = match (basis, format) {
                (Basis::Word, Format::Json) => to_json(&export_words(&projector(charge))),
                (Basis::Word, Format::Latex) => latex_words(&projector(charge)),
                (Basis::Sphere, Format::Json) => to_json(&export_sphere(&to_sphere_form(charge)?)),
                (Basis::Sphere, Format::Latex) => latex_sphere_matrix(&to_sphere_form(charge)?),
                (Basis::Word, Format::Text) => {
                    let p = projector(charge);
                    let mut s = String::new();
                    for (k, row) in p.entries.iter().enumerate() {
                        for (l, x) in row.iter().enumerate() {
                            s.push_str(&format!("p[{k}][{l}] = {}\n", print_poly(x)));
                        }
                    }
                    s.trim_end().to_string()
                }
                (Basis::Sphere, Format::Text) => {
                    let sm = to_sphere_form(charge)?;
                    let mut s = String::new();
                    for (k, row) in sm.entries.iter().enumerate() {
                        for (l, x) in row.iter().enumerate() {
                            s.push_str(&format!("p[{k}][{l}] = {}\n", print_sphere(x)));
                        }
                    }
                    let poles: Vec<String> = sm.poles.iter().map(|k| k.to_string()).collect();
                    s.push_str(&format!("poles k: [{}]", poles.join(", ")));
                    s
                }
            };
            println!("{out}");
            Ok(OK)
        }
        Command::VerifyProjector { charge, format } => {
            let mut records = verify_projector(charge);
            let tr = qsphere::projectors::trace(charge);
            let want = qsphere::NCPoly::scalar(qsphere::MuScalar::linear(charge));
            records.push(CheckRecord::residual(
                "trace = 1 + n mu",
                format!("n={charge}"),
                (&tr - &want).to_string(),
            ));
            records.extend(compare_explicit_matrix(charge));
            emit_records("verify-projector", &records, format)
        }
        Command::Symmetry { charge, format } => {
            emit_records("symmetry", &theta_conjugate(charge), format)
        }
        Command::RepCheck {
            dim,
            sigma,
            charge,
            format,
        } => {
            no_latex(format)?;
            if dim == 0 || sigma.abs() != 1 {
                return Err(usage("need --dim >= 1 and --sigma 1 or -1"));
            }
            let rep = build_rep(dim, sigma);
            let mut records = check_rep_relations(&rep);
            if let Some(n) = charge {
                let r = rep_projector_check(&rep, n)?;
                records.extend(r.records());
                records.push(CheckRecord::new(
                    "rep traces",
                    format!("N={dim} sigma={sigma:+} n={n}"),
                    true,
                    format!(
                        "Tr = {:.12}, Tr/N = {:.12}, trace(sigma/N) = {:.12}",
                        r.trace, r.normalized_trace, r.symbolic_trace
                    ),
                ));
            }
            emit_records("rep-check", &records, format)
        }
        Command::Chern {
            charge,
            grid,
            format,
        } => {
            no_latex(format)?;
            if !(1..=2000).contains(&grid) {
                return Err(usage("--grid must lie in 1..=2000"));
            }
            let v = classical_chern(charge, grid)?;
            match format {
                Format::Json => {
                    let doc = json!({
                        "schema": "qsphere-chern/1",
                        "charge": charge,
                        "grid": grid,
                        "chern": v,
                        "orientation": CHERN_ORIENTATION,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                _ => println!(
                    "c1 = {v:.12} (orientation c = {CHERN_ORIENTATION}, grid {grid}x{grid})"
                ),
            }
            Ok(OK)
        }
        Command::Suite { level, format } => {
            no_latex(format)?;
            let level = match level {
                SuiteLevel::Quick => Level::Quick,
                SuiteLevel::Full => Level::Full,
            };
            let report = run_suite(level);
            match format {
                Format::Json => println!("{}", report.to_json()),
                _ => print!("{}", report.to_text()),
            }
            Ok(if report.pass { OK } else { CHECK_FAILED })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
