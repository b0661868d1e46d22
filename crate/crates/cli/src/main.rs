use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lltn::calculus::{
    bound_proof, check_proof, compose_cuts, eliminate_contractions, llt_to_lltn, proof_from_json, proof_to_json,
    search_cutfree, Proof, SearchConfig, SearchOutcome, Sequent, System,
};
use lltn::formula::{parse, Formula};
use lltn::game::{
    all_plays, apply_move, enumerate_moves, gen_positions, position_from_json, to_dot, GameError, Labels,
    Position, Rules, Variant,
};
use lltn::strategy::{soundness_pipeline, validity_check, Base, Judge, Solver, StrategyError, Sweep, Winner};

macro_rules! say {
    ($($t:tt)*) => {
        writeln!(std::io::stdout(), $($t)*)?
    };
}

const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "lltn", version, about = "Proofs and games for linear logic with n-ary exponentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct GameOpts {
    #[arg(long, default_value = "lltn")]
    variant: Variant,
    /// Largest arity offered for exponential choices.
    #[arg(long, default_value_t = 2)]
    expo_cap: usize,
    #[arg(long)]
    exotic: bool,
    /// Node budget for exhaustive exploration.
    #[arg(long, default_value_t = 10_000_000)]
    budget: usize,
}

impl GameOpts {
    fn rules(&self) -> Rules {
        let rules = Rules {
            variant: self.variant,
            expo_cap: self.expo_cap,
            ..Rules::default()
        };
        if self.exotic {
            rules.with_exotic()
        } else {
            rules
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Transform {
    EliminateContractions,
    Bound,
    ToLltn,
    ComposeCuts,
}

#[derive(Subcommand)]
enum Command {
    /// Check a proof file.
    Check {
        #[arg(long, default_value = "lltn")]
        system: System,
        #[arg(long, default_value_t = 4)]
        n_check: usize,
        file: PathBuf,
    },
    /// Rewrite a proof and print the result as JSON.
    Transform {
        kind: Transform,
        file: PathBuf,
        /// Second proof, for compose-cuts.
        second: Option<PathBuf>,
        /// Cut formula, for compose-cuts.
        #[arg(long)]
        cut: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for a cut-free proof.
    Search {
        #[arg(long, default_value = "lltn")]
        system: System,
        #[arg(long)]
        seq: String,
        #[arg(long, default_value_t = 12)]
        depth_limit: usize,
        #[arg(long, default_value_t = 2)]
        arity_cap: usize,
        #[arg(long, default_value_t = 2_000_000)]
        budget: usize,
    },
    /// Decide who wins a position.
    Solve {
        #[command(flatten)]
        game: GameOpts,
        file: PathBuf,
    },
    /// Sweep a sequent against the opponent corpus.
    Validity {
        /// Sequent played by a single proponent vertex.
        #[arg(long, conflicts_with = "proof")]
        seq: Option<String>,
        /// Bounded proof whose strategy is checked instead of solving.
        #[arg(long)]
        proof: Option<PathBuf>,
        /// Largest opponent tree in the corpus.
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[command(flatten)]
        game: GameOpts,
    },
    /// Explore every play of random positions and report play lengths.
    SnReport {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
        /// Probability that a label node is a unit.
        #[arg(long, default_value_t = 0.7)]
        leaf: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        game: GameOpts,
    },
    /// Play a position interactively from standard input.
    Play {
        #[command(flatten)]
        game: GameOpts,
        file: PathBuf,
    },
    /// Print a position in Graphviz format.
    ExportDot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_proof(path: &Path) -> Result<Proof> {
    Ok(proof_from_json(&read(path)?)?)
}

fn load_position(path: &Path) -> Result<Position> {
    Ok(position_from_json(&read(path)?)?)
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => Ok(write!(std::io::stdout(), "{text}")?),
    }
}

fn winner_code(w: Winner) -> u8 {
    match w {
        Winner::ProponentWins => PASS,
        Winner::OpponentWins => FAIL,
        Winner::Unknown => BUDGET,
    }
}

fn is_budget(e: &anyhow::Error) -> bool {
    matches!(e.downcast_ref::<GameError>(), Some(GameError::Budget(_)))
        || matches!(
            e.downcast_ref::<StrategyError>(),
            Some(StrategyError::Game(GameError::Budget(_)))
        )
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check { system, n_check, file } => {
            let report = check_proof(system, &load_proof(&file)?, n_check);
            say!("{report}");
            Ok(if report.valid { PASS } else { FAIL })
        }
        Command::Transform {
            kind,
            file,
            second,
            cut,
            output,
        } => {
            let p = load_proof(&file)?;
            let out = match kind {
                Transform::EliminateContractions => {
                    let (q, ds) = eliminate_contractions(&p)?;
                    let ds: Vec<String> = ds.iter().map(Formula::to_string).collect();
                    eprintln!("duplicators: [{}]", ds.join(", "));
                    q
                }
                Transform::Bound => bound_proof(&p)?,
                Transform::ToLltn => llt_to_lltn(&p)?,
                Transform::ComposeCuts => {
                    let (Some(second), Some(cut)) = (second, cut) else {
                        bail!("compose-cuts needs a second proof and --cut");
                    };
                    compose_cuts(&p, &load_proof(&second)?, &parse(&cut)?)?
                }
            };
            emit(&proof_to_json(&out), output.as_deref())?;
            Ok(PASS)
        }
        Command::Search {
            system,
            seq,
            depth_limit,
            arity_cap,
            budget,
        } => {
            let config = SearchConfig {
                depth_limit,
                arity_cap,
                node_budget: budget,
            };
            match search_cutfree(system, &Sequent::parse(&seq)?, &config) {
                SearchOutcome::Proof(p) => {
                    say!("{}", proof_to_json(&p));
                    Ok(PASS)
                }
                SearchOutcome::Exhausted { complete } => {
                    let scope = if complete { "complete" } else { "within caps" };
                    say!("exhausted ({scope})");
                    Ok(FAIL)
                }
                SearchOutcome::ResourceLimit { explored } => {
                    say!("budget exhausted after {explored} nodes");
                    Ok(BUDGET)
                }
            }
        }
        Command::Solve { game, file } => {
            let p = load_position(&file)?;
            let w = Solver::new(game.rules(), game.budget).solve(&p)?;
            say!("{w}");
            Ok(winner_code(w))
        }
        Command::Validity {
            seq,
            proof,
            bound,
            game,
        } => {
            let sweep = Sweep {
                budget: game.budget,
                ..Sweep::new(bound, game.rules())
            };
            let report = match (seq, proof) {
                (Some(seq), None) => validity_check(&Base::single(&Sequent::parse(&seq)?.0), Judge::Solve, &sweep)?,
                (None, Some(path)) => {
                    let witness = soundness_pipeline(&load_proof(&path)?)?;
                    validity_check(&witness.base, Judge::Witness(&witness), &sweep)?
                }
                _ => bail!("give either --seq or --proof"),
            };
            say!("{report}");
            if let Some(p) = &report.counterexample {
                say!("counterexample: {p}");
            }
            Ok(if report.passed() {
                PASS
            } else if report.refuted() {
                FAIL
            } else {
                BUDGET
            })
        }
        Command::SnReport {
            count,
            max_vertices,
            max_depth,
            leaf,
            seed,
            game,
        } => {
            if !(0.0..=1.0).contains(&leaf) {
                bail!("--leaf must be a probability");
            }
            let rules = game.rules();
            let (mut longest, mut largest, mut failures) = (0, 0, 0);
            for (i, p) in gen_positions(max_vertices, Labels::Random { max_depth, leaf }, count, seed).iter().enumerate() {
                match all_plays(p, &rules, game.budget) {
                    Ok(s) => {
                        longest = longest.max(s.max_length);
                        largest = largest.max(s.positions);
                    }
                    Err(e) => {
                        failures += 1;
                        say!("#{i} {p}: {e}");
                    }
                }
            }
            say!("{count} positions, {failures} unfinished, longest play {longest}, largest game {largest} positions");
            Ok(if failures == 0 { PASS } else { BUDGET })
        }
        Command::Play { game, file } => {
            play(load_position(&file)?, &game.rules(), std::io::stdin().lock(), std::io::stdout().lock())?;
            Ok(PASS)
        }
        Command::ExportDot { file, output } => {
            emit(&to_dot(&load_position(&file)?), output.as_deref())?;
            Ok(PASS)
        }
    }
}

fn play(start: Position, rules: &Rules, input: impl BufRead, mut out: impl Write) -> Result<()> {
    let mut history = vec![start];
    let mut lines = input.lines();
    loop {
        let p = history.last().expect("history is never empty");
        let moves = enumerate_moves(p, rules);
        writeln!(out, "{p}")?;
        if moves.is_empty() {
            writeln!(out, "no moves: {} loses", p.token_team().letter())?;
        }
        for (i, m) in moves.iter().enumerate() {
            writeln!(out, "  {i}: {m}")?;
        }
        write!(out, "> ")?;
        out.flush()?;
        let Some(line) = lines.next() else { return Ok(()) };
        let line = line?;
        let mut words = line.split_whitespace();
        match words.next() {
            None => {}
            Some("q" | "quit") => return Ok(()),
            Some("u" | "undo") => {
                if history.len() > 1 {
                    history.pop();
                } else {
                    writeln!(out, "nothing to undo")?;
                }
            }
            Some("d" | "dot") => match words.next() {
                Some(path) => std::fs::write(path, to_dot(p))?,
                None => write!(out, "{}", to_dot(p))?,
            },
            Some(word) => match word.parse::<usize>().ok().and_then(|i| moves.get(i)) {
                Some(m) => {
                    let (q, _) = apply_move(p, m)?;
                    history.push(q);
                }
                None => writeln!(out, "commands: <move number>, u(ndo), d(ot) [file], q(uit)")?,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { PASS });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe) => {
            ExitCode::from(PASS)
        }
        Err(e) if is_budget(&e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(BUDGET)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
