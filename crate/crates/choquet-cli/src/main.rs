use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use choquet_core::{
    check_lemma_identities, choquet_layer_cake, choquet_sorted, equivalence_scan,
    format_rational, indicator_counterexample, induction_certificate, parse_capacity,
    parse_int_function, parse_point_function, point_in_a_tilde, point_in_b_tilde,
    random_monotone_capacity, random_submodular_capacity, serialize_capacity, Capacity,
    ProofError, VerifierError,
};

/// Exit status contract: 0 success/true, 1 mathematical negative
/// (violation found), 2 usage/parse/budget error, 3 internal cross-check
/// failure.
const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "choquet",
    version,
    about = "Exact Choquet integrals, submodularity checks, and subadditivity certificates on finite ground sets"
)]
struct Cli {
    /// Print only the essential result lines.
    #[arg(long, global = true)]
    quiet: bool,

    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeneratorKind {
    Monotone,
    Submodular,
}

#[derive(Subcommand)]
enum Command {
    /// Decide submodularity of a capacity file.
    Check { capacity: PathBuf },
    /// Print the exact Choquet integral of a function file.
    Integrate {
        capacity: PathBuf,
        function: PathBuf,
    },
    /// Print a validated subadditivity certificate for two integer-valued
    /// function files, or the indicator counterexample if the capacity is
    /// not submodular.
    Prove {
        capacity: PathBuf,
        x: PathBuf,
        y: PathBuf,
    },
    /// Cross-check both theorem directions on randomly generated
    /// capacities.
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        max_value: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render the lattice sets for one k and verify their union and
    /// intersection identities.
    Lemma {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        bound: u64,
    },
    /// Generate a random capacity file (deterministic per seed).
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        kind: GeneratorKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let options = Options {
        quiet: cli.quiet,
        format: cli.format,
    };
    let code = match cli.command {
        Command::Check { capacity } => cmd_check(&capacity, &options),
        Command::Integrate { capacity, function } => cmd_integrate(&capacity, &function, &options),
        Command::Prove { capacity, x, y } => cmd_prove(&capacity, &x, &y, &options),
        Command::Scan {
            n,
            count,
            max_value,
            seed,
        } => cmd_scan(n, count, max_value, seed, &options),
        Command::Lemma { k, bound } => cmd_lemma(k, bound, &options),
        Command::Generate {
            n,
            kind,
            seed,
            out,
        } => cmd_generate(n, kind, seed, out.as_deref(), &options),
    };
    ExitCode::from(code)
}

struct Options {
    quiet: bool,
    format: Format,
}

fn fail_usage(message: impl std::fmt::Display) -> u8 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

fn fail_internal(message: impl std::fmt::Display) -> u8 {
    eprintln!("internal error: {message}");
    EXIT_INTERNAL
}

fn read_file(path: &Path) -> Result<String, u8> {
    fs::read_to_string(path).map_err(|error| fail_usage(format!("{}: {error}", path.display())))
}

fn load_capacity(path: &Path) -> Result<Capacity, u8> {
    let text = read_file(path)?;
    parse_capacity(&text).map_err(|error| fail_usage(format!("{}: {error}", path.display())))
}

fn cmd_check(capacity_path: &Path, options: &Options) -> u8 {
    let capacity = match load_capacity(capacity_path) {
        Ok(capacity) => capacity,
        Err(code) => return code,
    };
    match capacity.check_submodular_exhaustive() {
        None => {
            match options.format {
                Format::Text => println!("submodular"),
                Format::Machine => println!("verdict submodular"),
            }
            EXIT_OK
        }
        Some(report) => {
            match options.format {
                Format::Text => {
                    println!("not submodular");
                    if !options.quiet {
                        println!("{}", choquet_core::format::render_event_violation_text(&report));
                    }
                }
                Format::Machine => {
                    println!("verdict not_submodular");
                    print!("{}", choquet_core::format::render_violation_machine(&report));
                }
            }
            EXIT_NEGATIVE
        }
    }
}

fn cmd_integrate(capacity_path: &Path, function_path: &Path, _options: &Options) -> u8 {
    let capacity = match load_capacity(capacity_path) {
        Ok(capacity) => capacity,
        Err(code) => return code,
    };
    let function = match read_file(function_path).and_then(|text| {
        parse_point_function(&text)
            .map_err(|error| fail_usage(format!("{}: {error}", function_path.display())))
    }) {
        Ok(function) => function,
        Err(code) => return code,
    };
    let value = match choquet_layer_cake(&capacity, &function) {
        Ok(value) => value,
        Err(error) => return fail_usage(error),
    };
    // the sorted-levels evaluator must agree exactly
    let cross = choquet_sorted(&capacity, &function).expect("dimensions already checked");
    if cross != value {
        return fail_internal(format!(
            "evaluator mismatch: layer-cake {} vs sorted {}",
            format_rational(&value),
            format_rational(&cross)
        ));
    }
    println!("{}", format_rational(&value));
    EXIT_OK
}

fn cmd_prove(capacity_path: &Path, x_path: &Path, y_path: &Path, options: &Options) -> u8 {
    let capacity = match load_capacity(capacity_path) {
        Ok(capacity) => capacity,
        Err(code) => return code,
    };
    let load_int = |path: &Path| {
        read_file(path).and_then(|text| {
            parse_int_function(&text)
                .map_err(|error| fail_usage(format!("{}: {error}", path.display())))
        })
    };
    let x = match load_int(x_path) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let y = match load_int(y_path) {
        Ok(y) => y,
        Err(code) => return code,
    };
    match induction_certificate(&capacity, &x, &y) {
        Ok(certificate) => {
            if !certificate.verify() {
                return fail_internal("certificate failed re-validation");
            }
            match options.format {
                Format::Text => {
                    if options.quiet {
                        println!(
                            "final: {} <= {}",
                            format_rational(&certificate.final_lhs),
                            format_rational(&certificate.final_rhs)
                        );
                    } else {
                        println!("{certificate}");
                        println!("ok");
                    }
                }
                Format::Machine => {
                    println!("certificate v1");
                    println!("depth {}", certificate.depth);
                    println!("steps {}", certificate.steps.len());
                    for step in &certificate.steps {
                        println!(
                            "step {}|{}|{}",
                            step.description,
                            format_rational(&step.lhs),
                            format_rational(&step.rhs)
                        );
                    }
                    println!(
                        "final {} {}",
                        format_rational(&certificate.final_lhs),
                        format_rational(&certificate.final_rhs)
                    );
                }
            }
            EXIT_OK
        }
        Err(ProofError::NotSubmodular) => {
            let (_, _, report) =
                indicator_counterexample(&capacity).expect("non-submodular capacity has a witness");
            match options.format {
                Format::Text => {
                    println!("not submodular");
                    if !options.quiet {
                        let submodularity = capacity
                            .check_submodular_exhaustive()
                            .expect("witness exists");
                        println!(
                            "{}",
                            choquet_core::format::render_event_violation_text(&submodularity)
                        );
                        println!(
                            "subadditivity fails on the indicators: {} > {}",
                            format_rational(&report.lhs),
                            format_rational(&report.rhs)
                        );
                    }
                }
                Format::Machine => {
                    println!("verdict not_submodular");
                    print!("{}", choquet_core::format::render_violation_machine(&report));
                }
            }
            EXIT_NEGATIVE
        }
        Err(error) => fail_usage(error),
    }
}

fn cmd_scan(n: usize, count: usize, max_value: u64, seed: u64, options: &Options) -> u8 {
    match equivalence_scan(n, count, max_value, seed) {
        Ok(report) => {
            match options.format {
                Format::Text => {
                    if options.quiet {
                        println!("{}", if report.is_clean() { "ok" } else { "DISAGREEMENT" });
                    } else {
                        println!("{report}");
                        println!("{}", if report.is_clean() { "ok" } else { "DISAGREEMENT" });
                    }
                }
                Format::Machine => {
                    print!("{}", choquet_core::format::render_scan_machine(&report));
                }
            }
            if report.is_clean() {
                EXIT_OK
            } else {
                // disagreement disproves the implementation, not the theorem
                EXIT_INTERNAL
            }
        }
        Err(error @ VerifierError::BudgetExceeded { .. }) => fail_usage(error),
        Err(error) => fail_usage(error),
    }
}

fn cmd_lemma(k: u64, bound: u64, options: &Options) -> u8 {
    let identities = match check_lemma_identities(k, bound) {
        Ok(identities) => identities,
        Err(error) => return fail_usage(error),
    };
    let grid = render_lemma_grid(k, bound);
    match options.format {
        Format::Text => {
            if !options.quiet {
                print!("{grid}");
            }
            println!("{}", if identities { "ok" } else { "FAIL" });
        }
        Format::Machine => {
            println!("lemma v1");
            println!("k {k}");
            println!("bound {bound}");
            for (y, row) in grid.lines().enumerate() {
                println!("row {} {row}", bound as usize - y);
            }
            println!("verdict {}", if identities { "ok" } else { "fail" });
        }
    }
    if identities {
        EXIT_OK
    } else {
        // the identities are known-true; a failure indicts the code
        EXIT_INTERNAL
    }
}

/// One row per y from `bound` down to 0 (origin bottom-left):
/// `o` in A~ only, `^` in B~ only, `@` in both, `.` in neither.
fn render_lemma_grid(k: u64, bound: u64) -> String {
    let mut grid = String::new();
    for y in (0..=bound).rev() {
        for x in 0..=bound {
            let in_a = point_in_a_tilde(k, x, y);
            let in_b = point_in_b_tilde(k, x, y);
            grid.push(match (in_a, in_b) {
                (true, true) => '@',
                (true, false) => 'o',
                (false, true) => '^',
                (false, false) => '.',
            });
        }
        grid.push('\n');
    }
    grid
}

fn cmd_generate(
    n: usize,
    kind: GeneratorKind,
    seed: u64,
    out: Option<&Path>,
    options: &Options,
) -> u8 {
    let capacity = match kind {
        GeneratorKind::Monotone => random_monotone_capacity(n, seed),
        GeneratorKind::Submodular => random_submodular_capacity(n, seed),
    };
    let capacity = match capacity {
        Ok(capacity) => capacity,
        Err(error) => return fail_usage(error),
    };
    let text = serialize_capacity(&capacity);
    match out {
        Some(path) => {
            if let Err(error) = fs::write(path, &text) {
                return fail_usage(format!("{}: {error}", path.display()));
            }
            if !options.quiet && options.format == Format::Text {
                eprintln!("wrote {}", path.display());
            }
        }
        None => print!("{text}"),
    }
    EXIT_OK
}
