//! Command-line interface to the impartial game solvers.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use impartial::algebra::{
    best_move, outcome_of, position_outcome, position_value, sum_value, SumPosition,
};
use impartial::digraph::{self, Game, GameDigraph, NodeId, TheoryClass};
use impartial::hackenbush::{self, analyze_sum, compile_to_digraph, DEFAULT_POSITION_CAP};
use impartial::oracle::{check_consistency, random_digraph};
use impartial::solvers::{
    solve_auto, solve_carry, solve_cyclic, solve_entailing, solve_short, Assignment, SolveError,
};
use impartial::values::WhiteValue;

#[derive(Parser)]
#[command(
    name = "impartial",
    version,
    about = "Solve impartial games on finite digraphs, including cyclic games with carry-on moves",
    disable_help_subcommand = true
)]
struct Cli {
    /// Write the report to a file instead of stdout.
    #[arg(long, short, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoryArg {
    Auto,
    Short,
    Cyclic,
    Entailing,
    Carry,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a digraph file and print every node's value in id order.
    Solve {
        file: PathBuf,
        /// Solver to use; auto picks the most restrictive applicable one.
        #[arg(long, value_enum, default_value = "auto")]
        theory: TheoryArg,
        /// Also print one line per step listing newly assigned nodes.
        #[arg(long)]
        trace: bool,
    },
    /// Fold value literals through the sum table and report the outcome.
    Sum {
        #[arg(required = true)]
        values: Vec<String>,
    },
    /// Outcome class of a single value literal.
    Outcome { value: String },
    /// Recommend a move for a sum of digraph files (each with a start line).
    BestMove {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Compare the sum algebra against retrograde product analysis on
    /// seeded random digraph pairs.
    OracleCheck {
        /// Nodes per generated digraph.
        #[arg(long, default_value_t = 6)]
        nodes: usize,
        /// Number of digraph pairs to check.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Seed for the deterministic generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Digraph class to generate.
        #[arg(long, value_enum, default_value = "carry")]
        theory: TheoryArg,
    },
    /// Render a digraph file as DOT, with solved values.
    Dot { file: PathBuf },
    /// Green-lime hackenbush analysis.
    Hb {
        #[command(subcommand)]
        command: HbCommand,
    },
}

#[derive(Subcommand)]
enum HbCommand {
    /// Solve a position file and print its value and outcome.
    Solve {
        file: PathBuf,
        /// Bound on distinct reachable positions.
        #[arg(long, default_value_t = DEFAULT_POSITION_CAP)]
        cap: usize,
    },
    /// Recommend a move for a sum of position files.
    BestMove {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_POSITION_CAP)]
        cap: usize,
    },
    /// Render the compiled game digraph of a position as DOT with values.
    Dot {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_POSITION_CAP)]
        cap: usize,
    },
}

/// Failure carrying its exit code: 1 usage, 2 unsupported digraph, 3 oracle
/// mismatch.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    fn unsupported(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn mismatch(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        Failure::unsupported(e.to_string())
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_digraph(path: &PathBuf) -> Result<(GameDigraph, Option<NodeId>), Failure> {
    let text = read_file(path)?;
    let parsed = digraph::parse(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok((parsed.digraph, parsed.start))
}

fn load_game(path: &PathBuf) -> Result<Game, Failure> {
    let (d, start) = load_digraph(path)?;
    let start = start
        .ok_or_else(|| Failure::usage(format!("{}: missing start line", path.display())))?;
    Game::new(d, start).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_position(path: &PathBuf) -> Result<hackenbush::HbPosition, Failure> {
    let text = read_file(path)?;
    hackenbush::parse_position(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn parse_value(text: &str) -> Result<WhiteValue, Failure> {
    text.parse::<WhiteValue>()
        .map_err(|e| Failure::usage(e.to_string()))
}

fn solve_with(theory: TheoryArg, d: &GameDigraph) -> Result<Assignment, Failure> {
    let a = match theory {
        TheoryArg::Auto => solve_auto(d),
        TheoryArg::Short => solve_short(d),
        TheoryArg::Cyclic => solve_cyclic(d),
        TheoryArg::Entailing => solve_entailing(d),
        TheoryArg::Carry => solve_carry(d),
    }?;
    Ok(a)
}

/// Deterministic digraph pair for one oracle-check trial. Sub-attempts bump
/// the seed until both digraphs have a white start node and fit the
/// carry-on shape the consistency check solves with.
fn generate_pair(
    nodes: usize,
    theory: TheoryClass,
    seed: u64,
    trial: usize,
) -> Result<(Game, Game), Failure> {
    let base = seed
        .wrapping_mul(1_000_003)
        .wrapping_add(trial as u64 * 1_000);
    for attempt in 0u64..500 {
        let s1 = base.wrapping_add(attempt * 2);
        let s2 = base.wrapping_add(attempt * 2 + 1).wrapping_mul(0x9e37_79b9);
        let d1 = random_digraph(nodes, 0.35, 0.3, theory, s1)
            .map_err(|e| Failure::usage(e.to_string()))?;
        let d2 = random_digraph(nodes, 0.4, 0.25, theory, s2)
            .map_err(|e| Failure::usage(e.to_string()))?;
        if !d1.carry_compatible() || !d2.carry_compatible() {
            continue;
        }
        let (Some(w1), Some(w2)) = (
            d1.nodes().find(|&n| d1.is_white(n)),
            d2.nodes().find(|&n| d2.is_white(n)),
        ) else {
            continue;
        };
        return Ok((
            Game::new(d1, w1).expect("start in range"),
            Game::new(d2, w2).expect("start in range"),
        ));
    }
    Err(Failure::usage(format!(
        "could not generate a usable pair for trial {trial}"
    )))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let mut out = String::new();
    match &cli.command {
        Command::Solve { file, theory, trace } => {
            let (d, _) = load_digraph(file)?;
            let a = solve_with(*theory, &d)?;
            if *trace {
                for step in a.trace() {
                    writeln!(out, "{step}").unwrap();
                }
            }
            for n in d.nodes() {
                writeln!(out, "{n}: {}", a.value(n)).unwrap();
            }
        }
        Command::Sum { values } => {
            let vals: Vec<WhiteValue> = values
                .iter()
                .map(|t| parse_value(t))
                .collect::<Result<_, _>>()?;
            let total = vals
                .into_iter()
                .reduce(|a, b| sum_value(&a, &b))
                .expect("clap enforces at least one value");
            writeln!(out, "value {total}, outcome {}", outcome_of(&total)).unwrap();
        }
        Command::Outcome { value } => {
            let v = parse_value(value)?;
            writeln!(out, "{}", outcome_of(&v)).unwrap();
        }
        Command::BestMove { files } => {
            let mut components = Vec::new();
            for path in files {
                let game = load_game(path)?;
                let a = solve_auto(&game.digraph)?;
                components.push((game, a));
            }
            let p = SumPosition::new(components).map_err(|e| Failure::usage(e.to_string()))?;
            let value = position_value(&p).map_err(|e| Failure::usage(e.to_string()))?;
            let outcome = position_outcome(&p).map_err(|e| Failure::usage(e.to_string()))?;
            let advice = best_move(&p).map_err(|e| Failure::unsupported(e.to_string()))?;
            writeln!(out, "value {value}, outcome {outcome}").unwrap();
            writeln!(out, "verdict: {}", advice.verdict).unwrap();
            for step in &advice.line {
                writeln!(out, "{step}").unwrap();
            }
            writeln!(out, "rationale: {}", advice.rationale).unwrap();
        }
        Command::OracleCheck { nodes, trials, seed, theory } => {
            let theory = match theory {
                TheoryArg::Short => TheoryClass::Short,
                TheoryArg::Cyclic => TheoryClass::Cyclic,
                TheoryArg::Entailing => TheoryClass::Entailing,
                TheoryArg::Carry | TheoryArg::Auto => TheoryClass::CarryOn,
            };
            let mut consistent = 0usize;
            for trial in 0..*trials {
                let (g1, g2) = generate_pair(*nodes, theory, *seed, trial)?;
                let report = check_consistency(&g1, &g2)
                    .map_err(|e| Failure::unsupported(e.to_string()))?;
                if report.consistent() {
                    consistent += 1;
                } else {
                    writeln!(
                        out,
                        "trial {trial}: mismatch sum={} algebra={} oracle={}",
                        report.sum, report.algebra_outcome, report.oracle_outcome
                    )
                    .unwrap();
                }
            }
            writeln!(out, "{consistent}/{trials} consistent").unwrap();
            if consistent != *trials {
                print!("{out}");
                return Err(Failure::mismatch(format!(
                    "{} of {trials} trials mismatched",
                    trials - consistent
                )));
            }
        }
        Command::Dot { file } => {
            let (d, _) = load_digraph(file)?;
            let a = solve_auto(&d)?;
            out.push_str(&digraph::to_dot(&d, Some(&a)));
        }
        Command::Hb { command } => match command {
            HbCommand::Solve { file, cap } => {
                let p = load_position(file)?;
                let c = compile_to_digraph(&p, *cap)
                    .map_err(|e| Failure::unsupported(e.to_string()))?;
                let a = solve_carry(&c.game.digraph)?;
                let v = a.white_value(c.root()).expect("root is white");
                writeln!(out, "value {v}, outcome {}", outcome_of(v)).unwrap();
            }
            HbCommand::BestMove { files, cap } => {
                let mut positions = Vec::new();
                for path in files {
                    positions.push(load_position(path)?);
                }
                let analysis = analyze_sum(&positions, *cap)
                    .map_err(|e| Failure::unsupported(e.to_string()))?;
                writeln!(out, "value {}, outcome {}", analysis.value, analysis.outcome).unwrap();
                writeln!(out, "verdict: {}", analysis.advice.verdict).unwrap();
                for step in &analysis.advice.steps {
                    writeln!(out, "{step}").unwrap();
                }
                writeln!(out, "rationale: {}", analysis.advice.rationale).unwrap();
            }
            HbCommand::Dot { file, cap } => {
                let p = load_position(file)?;
                let c = compile_to_digraph(&p, *cap)
                    .map_err(|e| Failure::unsupported(e.to_string()))?;
                let a = solve_carry(&c.game.digraph)?;
                out.push_str(&digraph::to_dot(&c.game.digraph, Some(&a)));
            }
        },
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprintln!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(&cli) {
        Ok(report) => {
            if let Some(path) = &cli.output {
                if let Err(e) = fs::write(path, &report) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{report}");
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
