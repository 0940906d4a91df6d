//! `qsi`: verification CLI for the quantum-torus qsi algebra.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qsi::checks::{
    self, default_constants_window, default_torsor_window, DEFAULT_SEED,
};
use qsi::hopf::{coinvariants, QuotientTag};
use qsi::linalg::Matrix;
use qsi::module::{dual, internal_hom, iso_test, random_module, tensor, QMatrix, QsiModule};
use qsi::parse::{format_torus, parse, parse_torus};
use qsi::report::Report;
use qsi::scalar::QScalar;
use qsi::torus::ExponentWindow;
use qsi::verify::{replay_certificate, simplicity_certificate, CertStep};

#[derive(Parser)]
#[command(name = "qsi", about = "exact checks for the q-skew iterative sigma-differential torus")]
struct Cli {
    /// Emit one JSON object per check instead of human-readable lines.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check in the acceptance suite.
    VerifyAll,
    /// Determinant obstruction for commutative solution rings.
    Lemma1,
    /// Build and replay a simplicity certificate for the given element.
    Simplicity { expr: String },
    /// Basis of the qsi constants on a window.
    Constants {
        /// t_min t_max q_min q_max
        #[arg(long, num_args = 4, allow_hyphen_values = true)]
        window: Option<Vec<i64>>,
    },
    /// Comodule laws and equivariance of the coaction.
    Coaction,
    /// Hopf algebra axioms on monomials and random pairs.
    HopfAxioms,
    /// Rank and surjectivity probes for the torsor map.
    Torsor {
        /// t_min t_max q_min q_max
        #[arg(long, num_args = 4, allow_hyphen_values = true)]
        window: Option<Vec<i64>>,
    },
    /// Coinvariants and quotient Hopf structures.
    Galois,
    /// Module constructions from matrix spec files.
    #[command(subcommand)]
    Module(ModuleCommand),
    /// Classical differential warm-up in the commutative ring.
    Warmup,
    /// Look for a pair of modules with non-commuting tensor product.
    SearchNoncocommutative {
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum ModuleCommand {
    /// Tensor product of two modules.
    Tensor { left: String, right: String },
    /// Internal Hom of two modules.
    Hom { source: String, target: String },
    /// Dual of a module.
    Dual { spec: String },
    /// Isomorphism test between two modules.
    Iso { left: String, right: String },
}

fn window_from(args: Option<Vec<i64>>, default: ExponentWindow) -> Result<ExponentWindow, String> {
    match args {
        None => Ok(default),
        Some(v) => {
            if v.len() != 4 || v[0] > v[1] || v[2] > v[3] {
                return Err("window must be four integers: t_min t_max q_min q_max".to_string());
            }
            Ok(ExponentWindow::new(v[0], v[1], v[2], v[3]))
        }
    }
}

/// Module spec file: a line `S`, then rows of comma-separated scalar
/// expressions, then a line `T` and its rows.
fn load_module(path: &str) -> Result<QsiModule, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let mut s_rows: Vec<Vec<QScalar>> = Vec::new();
    let mut t_rows: Vec<Vec<QScalar>> = Vec::new();
    let mut current: Option<&mut Vec<Vec<QScalar>>> = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line {
            "S" => {
                s_rows.clear();
                current = Some(&mut s_rows);
            }
            "T" => {
                t_rows.clear();
                current = Some(&mut t_rows);
            }
            _ => {
                let target = current
                    .as_deref_mut()
                    .ok_or_else(|| format!("{path}:{}: row before S or T header", lineno + 1))?;
                let row: Result<Vec<QScalar>, String> = line
                    .split(',')
                    .map(|cell| {
                        parse(cell.trim())
                            .map_err(|e| format!("{path}:{}: {e}", lineno + 1))?
                            .into_scalar()
                            .ok_or_else(|| {
                                format!("{path}:{}: entry is not a scalar", lineno + 1)
                            })
                    })
                    .collect();
                target.push(row?);
            }
        }
    }
    let to_matrix = |rows: Vec<Vec<QScalar>>, name: &str| -> Result<QMatrix, String> {
        if rows.is_empty() {
            return Err(format!("{path}: missing {name} matrix"));
        }
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(format!("{path}: {name} matrix is not square"));
        }
        Ok(Matrix::from_rows(rows))
    };
    let s = to_matrix(s_rows, "S")?;
    let t = to_matrix(t_rows, "T")?;
    QsiModule::new(s, t).map_err(|e| format!("{path}: {e}"))
}

fn render_matrix(m: &QMatrix) -> String {
    (0..m.rows)
        .map(|i| {
            (0..m.cols)
                .map(|j| format!("{}", m[(i, j)]))
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn render_module(m: &QsiModule) -> String {
    format!(
        "S = [{}]; T = [{}]",
        render_matrix(m.sigma_matrix()),
        render_matrix(m.theta_matrix())
    )
}

fn run(cli: Cli) -> Result<Vec<Report>, String> {
    let seed = cli.seed;
    match cli.command {
        Command::VerifyAll => Ok(checks::verify_all(seed)),
        Command::Lemma1 => Ok(vec![checks::check_lemma1()]),
        Command::Simplicity { expr } => {
            let f = parse_torus(&expr).map_err(|e| e.to_string())?;
            let report = match simplicity_certificate(&f) {
                Ok(cert) => match replay_certificate(&cert) {
                    Ok(h) if h == qsi::TorusElement::one() => Report::pass(
                        "simplicity",
                        Some(format!(
                            "replayed {} steps to 1: [{}]",
                            cert.steps.len(),
                            cert.steps
                                .iter()
                                .map(|s| match s {
                                    CertStep::ApplyThetaN { n, .. } => format!("theta^({n})"),
                                    CertStep::MultiplyMonomial { factor, .. } =>
                                        format!("multiply {}", format_torus(factor)),
                                    CertStep::SigmaCombine { s, .. } =>
                                        format!("sigma-combine s={s}"),
                                })
                                .collect::<Vec<_>>()
                                .join(", ")
                        )),
                    ),
                    _ => Report::fail("simplicity", Some("replay diverged".to_string())),
                },
                Err(e) => Report::error("simplicity", e.to_string()),
            };
            Ok(vec![report])
        }
        Command::Constants { window } => {
            let w = window_from(window, default_constants_window())?;
            let basis = qsi::verify::ring_constants(&w);
            Ok(vec![Report::pass(
                "constants",
                Some(format!(
                    "basis: [{}]",
                    basis.iter().map(format_torus).collect::<Vec<_>>().join(", ")
                )),
            )])
        }
        Command::Coaction => Ok(vec![checks::check_coaction()]),
        Command::HopfAxioms => Ok(vec![checks::check_hopf_axioms(seed)]),
        Command::Torsor { window } => {
            let w = window_from(window, default_torsor_window())?;
            if w.t_min < 0 {
                return Err("torsor window requires t_min >= 0".to_string());
            }
            Ok(vec![checks::check_torsor(&w)])
        }
        Command::Galois => {
            let w = checks::default_coinvariants_window();
            let mut reports = vec![checks::check_galois(&w)];
            for (tag, name) in [
                (QuotientTag::Full, "coinvariants-full"),
                (QuotientTag::ModI, "coinvariants-mod-i"),
                (QuotientTag::ModJ, "coinvariants-mod-j"),
            ] {
                let basis = coinvariants(tag, &w);
                reports.push(Report::pass(
                    name,
                    Some(format!(
                        "[{}]",
                        basis.iter().map(format_torus).collect::<Vec<_>>().join(", ")
                    )),
                ));
            }
            Ok(reports)
        }
        Command::Module(cmd) => {
            let report = match cmd {
                ModuleCommand::Tensor { left, right } => {
                    let a = load_module(&left)?;
                    let b = load_module(&right)?;
                    Report::pass("module-tensor", Some(render_module(&tensor(&a, &b))))
                }
                ModuleCommand::Hom { source, target } => {
                    let a = load_module(&source)?;
                    let b = load_module(&target)?;
                    Report::pass("module-hom", Some(render_module(&internal_hom(&a, &b))))
                }
                ModuleCommand::Dual { spec } => {
                    let a = load_module(&spec)?;
                    Report::pass("module-dual", Some(render_module(&dual(&a))))
                }
                ModuleCommand::Iso { left, right } => {
                    let a = load_module(&left)?;
                    let b = load_module(&right)?;
                    match iso_test(&a, &b) {
                        Ok(Some(map)) => Report::pass(
                            "module-iso",
                            Some(format!("isomorphism: [{}]", render_matrix(&map.matrix))),
                        ),
                        Ok(None) => {
                            Report::fail("module-iso", Some("not isomorphic".to_string()))
                        }
                        Err(e) => Report::error("module-iso", e.to_string()),
                    }
                }
            };
            Ok(vec![report])
        }
        Command::Warmup => Ok(vec![checks::check_warmup()]),
        Command::SearchNoncocommutative { seed: sub_seed } => {
            let seed = sub_seed.unwrap_or(seed);
            Ok(vec![search_noncocommutative(seed)])
        }
    }
}

/// Enumerates seeded random module pairs and reports the first pair
/// whose tensor products in the two orders are not isomorphic, if any.
/// Pairs are limited to product dimension 4, the symbolic determinant
/// bound of the isomorphism test.
fn search_noncocommutative(seed: u64) -> Report {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let budget = 40;
    for trial in 0..budget {
        let dim_a = rng.gen_range(1..=3);
        let a = random_module(&mut rng, dim_a);
        let max_b = (4 / dim_a).min(3);
        let dim_b = rng.gen_range(1..=max_b);
        let b = random_module(&mut rng, dim_b);
        let ab = tensor(&a, &b);
        let ba = tensor(&b, &a);
        match iso_test(&ab, &ba) {
            Ok(Some(_)) => {}
            Ok(None) => {
                return Report::pass(
                    "search-noncocommutative",
                    Some(format!(
                        "trial {trial}: tensor orders differ for A: {} and B: {}",
                        render_module(&a),
                        render_module(&b)
                    )),
                )
                .with_seed(seed as i64)
            }
            Err(e) => {
                return Report::error("search-noncocommutative", e.to_string())
                    .with_seed(seed as i64)
            }
        }
    }
    Report::pass(
        "search-noncocommutative",
        Some(format!("none found in budget ({budget} pairs)")),
    )
    .with_seed(seed as i64)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(reports) => {
            let mut all_pass = true;
            for r in &reports {
                if json {
                    println!("{}", r.to_json());
                } else {
                    println!("{}", r.to_human());
                }
                if !r.passed() {
                    all_pass = false;
                }
            }
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
