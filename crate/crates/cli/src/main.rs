//! Command-line front end.
//!
//! One binary, subcommand style. Group literals are comma-separated moduli
//! ("2,3,4"), element and character literals are comma-separated
//! coordinates, matrices are semicolon-separated rows ("1,0;0,1", row j =
//! target coordinate j), and Q/Z values are "p/q" fractions.
//!
//! Exit codes: 0 success (and sweep pass), 1 sweep counterexample, 2 usage
//! or parse error, 3 enumeration budget exceeded, 4 hypothesis failure
//! (e.g. the map does not preserve the zero locus).

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hypersplit::error::Error;
use hypersplit::hom::HomMatrix;
use hypersplit::hyperplane::{zero_locus, AffineHyperplane};
use hypersplit::signature::{cancellation_analyze, LensSpace, SignatureFamily};
use hypersplit::verify::{self, SweepConfig, Theorem};
use hypersplit::{Group, QmodZ};

const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_HYPOTHESIS: u8 = 4;

/// Hyperplanes in products of finite cyclic groups: zero-locus queries,
/// splitting recovery, dual transport, exact lens-space rho invariants, and
/// exhaustive theorem-verification sweeps.
#[derive(Parser)]
#[command(name = "hypersplit", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the zero locus of a group: the elements with some zero
    /// coordinate.
    Zloc {
        /// Group moduli, e.g. "2,3,4".
        #[arg(long)]
        moduli: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the members of the hyperplane chi^{-1}(target).
    Members {
        #[arg(long)]
        moduli: String,
        /// Character coordinates, e.g. "1,1".
        #[arg(long = "char")]
        character: String,
        /// Target value in Q/Z, e.g. "1/2".
        #[arg(long, default_value = "0")]
        target: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exact rho invariants of the lens space L(n, q).
    Rho {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        /// Single character; omit with --table for the whole table.
        #[arg(long, conflicts_with = "table")]
        k: Option<u64>,
        /// Print the full table k -> rho(k).
        #[arg(long)]
        table: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Find all hyperplane splittings whose union is the zero locus and
    /// recover their coordinate structure.
    Splittings {
        #[arg(long)]
        moduli: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Extract the block form of a zero-locus-preserving isomorphism.
    AnalyzeIso {
        /// Source group moduli (order-2 factors first).
        #[arg(long)]
        moduli: String,
        /// Target group moduli; defaults to the source.
        #[arg(long)]
        target_moduli: Option<String>,
        /// Matrix rows separated by ';', entries by ','; row j holds the
        /// j'th coordinates of the images of the source basis vectors.
        #[arg(long)]
        matrix: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Signature-family queries.
    Signatures {
        #[command(subcommand)]
        command: SignaturesCommand,
    },
    /// Check that an isomorphism of character groups matches the signature
    /// vanishing loci of two families and extract its block form.
    Cancel {
        /// Moduli of the target family, e.g. "3,5".
        #[arg(long)]
        family_a: String,
        /// Moduli of the source family.
        #[arg(long)]
        family_b: String,
        /// Matrix of the map from the source family's character group to
        /// the target family's.
        #[arg(long)]
        matrix: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run an exhaustive verification sweep for a theorem.
    Verify {
        /// One of: thm1, thm1-upgraded, thm2, thm-general-case,
        /// lemma-max-vile, lemma-ord2, lemma-one-h, lemma-no4,
        /// prop-p-group, rho-values, dual-facts, sigprop-c-model.
        theorem: String,
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum SignaturesCommand {
    /// The characters at which the product signature of a model family
    /// vanishes.
    ZeroLocus {
        /// Family moduli, e.g. "3,5,7".
        #[arg(long)]
        family: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Moduli alphabet for sweep groups.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
    alphabet: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    max_factors: usize,
    #[arg(long, default_value_t = 64)]
    max_order: u64,
    /// Bound for lens-space sweeps (odd n up to this value).
    #[arg(long, default_value_t = 99)]
    max_n: u64,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    parallelism: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::EnumerationBudgetExceeded { .. } => EXIT_BUDGET,
        Error::InvalidModulus(_)
        | Error::EmptyGroup
        | Error::GroupMismatch
        | Error::IndexOutOfRange { .. }
        | Error::UnknownTheorem(_) => EXIT_USAGE,
        _ => EXIT_HYPOTHESIS,
    }
}

/// The enumeration budget, overridable through HYPERSPLIT_MAX_ORDER.
fn hard_budget() -> u64 {
    std::env::var("HYPERSPLIT_MAX_ORDER")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(hypersplit::DEFAULT_ENUM_BUDGET)
}

fn parse_moduli(s: &str) -> Result<Vec<u64>, Error> {
    s.split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| Error::InvalidModulus(0)))
        .collect()
}

fn parse_group(s: &str) -> Result<Group, Error> {
    Group::with_budget(&parse_moduli(s)?, hard_budget())
}

fn parse_signed_row(s: &str) -> Result<Vec<i64>, Error> {
    s.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| Error::InvalidModulus(0)))
        .collect()
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<i64>>, Error> {
    s.split(';').map(parse_signed_row).collect()
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Zloc { moduli, format } => {
            let g = parse_group(&moduli)?;
            let zl = zero_locus(&g)?;
            let elements = g.set_elements(&zl);
            match format {
                Format::Text => {
                    println!("zero locus of [{g}]: {} of {} elements", zl.len(), g.order());
                    for e in elements {
                        println!("{e}");
                    }
                }
                Format::Json => {
                    let coords: Vec<Vec<u64>> =
                        elements.iter().map(|e| e.coords().to_vec()).collect();
                    print_json(&json!({
                        "moduli": g.moduli(),
                        "cardinality": zl.len(),
                        "elements": coords,
                    }));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Members {
            moduli,
            character,
            target,
            format,
        } => {
            let g = parse_group(&moduli)?;
            let chi = g.character(&parse_signed_row(&character)?)?;
            let target: QmodZ = target
                .parse()
                .map_err(|_| Error::EmptyFiber { target: target.clone(), order: 0 })?;
            let h = AffineHyperplane::new(&g, chi, target)?;
            let elements = h.member_elements()?;
            match format {
                Format::Text => {
                    println!(
                        "hyperplane {h} in [{g}]: {} members, quotient order {}",
                        elements.len(),
                        h.quotient_order()
                    );
                    for e in elements {
                        println!("{e}");
                    }
                }
                Format::Json => {
                    let coords: Vec<Vec<u64>> =
                        elements.iter().map(|e| e.coords().to_vec()).collect();
                    print_json(&json!({
                        "char": h.character().to_string(),
                        "target": h.target().to_string(),
                        "quotient_order": h.quotient_order(),
                        "members": coords,
                    }));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Rho {
            n,
            q,
            k,
            table,
            format,
        } => {
            let lens = LensSpace::new(n, q)?;
            match (k, table) {
                (Some(k), _) => {
                    let value = lens.rho(k)?;
                    match format {
                        Format::Text => println!("{value}"),
                        Format::Json => print_json(&json!({
                            "n": n, "q": q, "k": k, "rho": value.to_string(),
                        })),
                    }
                }
                (None, _) => {
                    let values = lens.rho_table();
                    match format {
                        Format::Text => {
                            for (k, v) in values.iter().enumerate() {
                                println!("{k}: {v}");
                            }
                        }
                        Format::Json => {
                            let map: serde_json::Map<String, serde_json::Value> = values
                                .iter()
                                .enumerate()
                                .map(|(k, v)| (k.to_string(), json!(v.to_string())))
                                .collect();
                            print_json(&json!({"n": n, "q": q, "rho": map}));
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Splittings { moduli, format } => {
            let g = parse_group(&moduli)?;
            let zl = zero_locus(&g)?;
            let splittings = hypersplit::splitting::find_splittings_with_union(&g, &zl)?;
            let mut reports = Vec::new();
            for s in &splittings {
                reports.push(s.recover()?);
            }
            match format {
                Format::Text => {
                    println!(
                        "{} splitting(s) of the zero locus of [{g}]",
                        splittings.len()
                    );
                    for (s, report) in splittings.iter().zip(&reports) {
                        let desc: Vec<String> =
                            s.hyperplanes().iter().map(|h| h.to_string()).collect();
                        println!("- {}", desc.join(" "));
                        println!(
                            "  coordinates {:?}, quotient orders {:?}",
                            report.permutation, report.quotient_orders
                        );
                    }
                }
                Format::Json => {
                    print_json(&json!({
                        "moduli": g.moduli(),
                        "count": splittings.len(),
                        "reports": reports,
                    }));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::AnalyzeIso {
            moduli,
            target_moduli,
            matrix,
            format,
        } => {
            let source = parse_group(&moduli)?;
            let target = match target_moduli {
                Some(t) => parse_group(&t)?,
                None => source.clone(),
            };
            let f = HomMatrix::new(source, target, &parse_matrix(&matrix)?)?;
            let report = hypersplit::duality::analyze_iso(&f)?;
            match format {
                Format::Text => {
                    println!("ell = {}", report.ell);
                    println!("permutation = {:?}", report.permutation);
                    println!("matched moduli = {:?}", report.matched_moduli);
                    println!("diagonal = {:?}", report.diag);
                    println!("f11 = {:?}", report.f11);
                    println!("f21 = {:?}", report.f21);
                }
                Format::Json => print_json(&json!(report)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Signatures { command } => match command {
            SignaturesCommand::ZeroLocus { family, format } => {
                let fam = SignatureFamily::model(&parse_moduli(&family)?)?;
                for w in fam.warnings() {
                    eprintln!("warning: {w}");
                }
                let zl = fam.signature_zero_locus()?;
                let g = fam.group();
                let elements = g.set_elements(&zl);
                match format {
                    Format::Text => {
                        println!(
                            "signature zero locus of the model family [{g}]: {} of {} characters",
                            zl.len(),
                            g.order()
                        );
                        for e in elements {
                            println!("{e}");
                        }
                    }
                    Format::Json => {
                        let coords: Vec<Vec<u64>> =
                            elements.iter().map(|e| e.coords().to_vec()).collect();
                        print_json(&json!({
                            "moduli": g.moduli(),
                            "cardinality": zl.len(),
                            "characters": coords,
                        }));
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Cancel {
            family_a,
            family_b,
            matrix,
            format,
        } => {
            let fam_a = SignatureFamily::model(&parse_moduli(&family_a)?)?;
            let fam_b = SignatureFamily::model(&parse_moduli(&family_b)?)?;
            let f = HomMatrix::new(
                fam_b.group().clone(),
                fam_a.group().clone(),
                &parse_matrix(&matrix)?,
            )?;
            let report = cancellation_analyze(&fam_a, &fam_b, &f)?;
            match format {
                Format::Text => {
                    println!("families match; block form:");
                    println!("permutation = {:?}", report.permutation);
                    println!("matched moduli = {:?}", report.matched_moduli);
                    println!("diagonal = {:?}", report.diag);
                }
                Format::Json => print_json(&json!(report)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            theorem,
            sweep,
            format,
        } => {
            let theorem = Theorem::from_str(&theorem)?;
            let config = SweepConfig {
                moduli_alphabet: sweep.alphabet,
                max_factors: sweep.max_factors,
                max_group_order: sweep.max_order,
                parallelism: sweep.parallelism,
                max_n: sweep.max_n,
                hard_budget: hard_budget(),
            };
            let report = verify::run(theorem, &config)?;
            match format {
                Format::Text => print!("{report}"),
                Format::Json => print_json(&json!(report)),
            }
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_COUNTEREXAMPLE)
            })
        }
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}
