use std::cmp::Ordering;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gentzen_core::fol::{eval_bounded, parse_formula, parse_sentence, Sentence};
use gentzen_core::game::{
    default_depth, play, synthesize_reduction, GameState, MinimaxAdversary, SearchProponent, StrategyNode, StrategyTree,
};
use gentzen_core::ordinal::parse_list;
use gentzen_core::proof::{
    check_proof, parse_proof, proof_length, search_contradiction_with, LengthMetric, ProofError, SearchConfig,
    SearchError, Theory,
};
use gentzen_core::stabilization::{ProgramSpec, DEFAULT_WINDOW};
use gentzen_core::Ordinal;

use crate::document::{Payload, ProofCheckReport, SearchSummary, StepFailure};
use crate::error::{parse_err, CliError};

#[derive(Debug, Parser)]
#[command(name = "gentzen", version, about = "Ordinals, arithmetic sentences, the reduction game and PA proofs")]
pub struct Cli {
    /// Print a JSON trace document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ordinals in bracket notation.
    #[command(subcommand)]
    Ordinal(OrdinalCmd),
    /// Ordinal-valued sequence programs.
    #[command(subcommand)]
    Seq(SeqCmd),
    /// Sentences of arithmetic.
    #[command(subcommand)]
    Formula(FormulaCmd),
    /// The bounded reduction game.
    #[command(subcommand)]
    Game(GameCmd),
    /// Proofs in PA.
    #[command(subcommand)]
    Proof(ProofCmd),
}

#[derive(Debug, Subcommand)]
pub enum OrdinalCmd {
    /// Print LT, EQ or GT.
    Compare {
        a: String,
        b: String,
    },
    /// Print `valid` or `invalid` (exit 1).
    Validate {
        a: String,
    },
    /// Cantor normal form.
    Cnf {
        a: String,
    },
    Height {
        a: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum SeqCmd {
    /// Run a program and report descent and stabilization.
    Monitor {
        /// `descent:<ordinal>:<seed>`, `countdown:<n>`, `const:<ordinal>` or `list:<o>;<o>;...`
        #[arg(long)]
        program: String,
        #[arg(long)]
        budget: usize,
        /// Length of the constant run reported as a heuristic window.
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum FormulaCmd {
    /// Print the canonical form.
    Parse { text: String },
    /// Negation normal form.
    Nnf { text: String },
    /// Bounded truth value of a sentence.
    Eval {
        #[arg(long)]
        bound: u64,
        text: String,
    },
}

#[derive(Debug, Args)]
pub struct GameArgs {
    #[arg(long)]
    pub bound: u64,
    #[arg(long)]
    pub sentence: String,
}

#[derive(Debug, Subcommand)]
pub enum GameCmd {
    /// Find a reduction for the proponent.
    Synth {
        #[command(flatten)]
        game: GameArgs,
        /// Ply budget; defaults to two per connective and quantifier.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Play the engine proponent against the engine adversary.
    Play {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, default_value_t = 200)]
        steps: usize,
    },
    /// Serve the game API and the UI bundle.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Directory with the built UI.
        #[arg(long, default_value = "ui/dist")]
        static_dir: PathBuf,
        /// Open a game at startup.
        #[arg(long, requires = "sentence")]
        bound: Option<u64>,
        #[arg(long, requires = "bound")]
        sentence: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Metric {
    Symbols,
    Steps,
}

impl From<Metric> for LengthMetric {
    fn from(m: Metric) -> Self {
        match m {
            Metric::Symbols => LengthMetric::Symbols,
            Metric::Steps => LengthMetric::Steps,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum ProofCmd {
    /// Check a proof file against PA.
    Check {
        file: PathBuf,
        /// Extra axiom, numbered after the PA axioms; repeatable.
        #[arg(long = "axiom")]
        axioms: Vec<String>,
    },
    /// Exhaustive search for a short proof of `P & !P`.
    Search {
        #[arg(long)]
        max_length: usize,
        #[arg(long, value_enum, default_value_t = Metric::Symbols)]
        metric: Metric,
        #[arg(long = "axiom")]
        axioms: Vec<String>,
    },
}

/// Result of a finished command.
pub struct Output {
    pub lines: Vec<String>,
    pub payload: Payload,
    /// False for negative verdicts, which exit with status 1.
    pub ok: bool,
}

impl Output {
    fn new(lines: Vec<String>, payload: Payload) -> Self {
        Output { lines, payload, ok: true }
    }

    fn failing(mut self) -> Self {
        self.ok = false;
        self
    }
}

impl Command {
    pub fn name(&self) -> String {
        let sub = match self {
            Command::Ordinal(c) => match c {
                OrdinalCmd::Compare { .. } => "ordinal compare",
                OrdinalCmd::Validate { .. } => "ordinal validate",
                OrdinalCmd::Cnf { .. } => "ordinal cnf",
                OrdinalCmd::Height { .. } => "ordinal height",
            },
            Command::Seq(SeqCmd::Monitor { .. }) => "seq monitor",
            Command::Formula(c) => match c {
                FormulaCmd::Parse { .. } => "formula parse",
                FormulaCmd::Nnf { .. } => "formula nnf",
                FormulaCmd::Eval { .. } => "formula eval",
            },
            Command::Game(c) => match c {
                GameCmd::Synth { .. } => "game synth",
                GameCmd::Play { .. } => "game play",
                GameCmd::Serve { .. } => "game serve",
            },
            Command::Proof(c) => match c {
                ProofCmd::Check { .. } => "proof check",
                ProofCmd::Search { .. } => "proof search",
            },
        };
        sub.to_string()
    }
}

/// Run every command except `game serve`.
pub fn run(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Ordinal(c) => ordinal(c),
        Command::Seq(SeqCmd::Monitor { program, budget, window }) => monitor(program, *budget, *window),
        Command::Formula(c) => formula(c),
        Command::Game(GameCmd::Synth { game, depth }) => synth(game, *depth),
        Command::Game(GameCmd::Play { game, steps }) => play_game(game, *steps),
        Command::Game(GameCmd::Serve { .. }) => Err(CliError::Input("`game serve` runs in the server loop".into())),
        Command::Proof(ProofCmd::Check { file, axioms }) => proof_check(file, axioms),
        Command::Proof(ProofCmd::Search { max_length, metric, axioms }) => proof_search(*max_length, *metric, axioms),
    }
}

fn ordinal_arg(text: &str) -> Result<Ordinal, CliError> {
    text.parse().map_err(parse_err)
}

fn ordinal(cmd: &OrdinalCmd) -> Result<Output, CliError> {
    let payload = |op: &str, inputs: &[&String], result: &str| Payload::Ordinal {
        op: op.into(),
        inputs: inputs.iter().map(|s| s.to_string()).collect(),
        result: result.into(),
    };
    Ok(match cmd {
        OrdinalCmd::Compare { a, b } => {
            let result = match ordinal_arg(a)?.cmp(&ordinal_arg(b)?) {
                Ordering::Less => "LT",
                Ordering::Equal => "EQ",
                Ordering::Greater => "GT",
            };
            Output::new(vec![result.into()], payload("compare", &[a, b], result))
        }
        OrdinalCmd::Validate { a } => {
            let list = parse_list(a).map_err(parse_err)?;
            if list.is_ordinal() {
                Output::new(vec!["valid".into()], payload("validate", &[a], "valid"))
            } else {
                Output::new(vec!["invalid".into()], payload("validate", &[a], "invalid")).failing()
            }
        }
        OrdinalCmd::Cnf { a } => {
            let cnf = ordinal_arg(a)?.to_cnf();
            Output::new(vec![cnf.clone()], payload("cnf", &[a], &cnf))
        }
        OrdinalCmd::Height { a } => {
            let h = ordinal_arg(a)?.height().to_string();
            Output::new(vec![h.clone()], payload("height", &[a], &h))
        }
    })
}

fn monitor(program: &str, budget: usize, window: usize) -> Result<Output, CliError> {
    let spec: ProgramSpec = program.parse().map_err(parse_err)?;
    let report = spec.monitor(budget, window).map_err(|e| CliError::Input(e.to_string()))?;
    let ok = report.violation.is_none();
    let out = Output::new(
        vec![report.to_record()],
        Payload::DescentReport { program: program.into(), budget, window, report },
    );
    Ok(if ok { out } else { out.failing() })
}

fn sentence_arg(text: &str) -> Result<Sentence, CliError> {
    parse_sentence(text).map_err(parse_err)
}

fn formula(cmd: &FormulaCmd) -> Result<Output, CliError> {
    let payload = |op: &str, input: &str, output: &str| Payload::Formula {
        op: op.into(),
        input: input.into(),
        output: output.into(),
        verdict: None,
    };
    Ok(match cmd {
        FormulaCmd::Parse { text } => {
            let f = parse_formula(text).map_err(parse_err)?.to_string();
            Output::new(vec![f.clone()], payload("parse", text, &f))
        }
        FormulaCmd::Nnf { text } => {
            let f = parse_formula(text).map_err(parse_err)?.nnf().to_string();
            Output::new(vec![f.clone()], payload("nnf", text, &f))
        }
        FormulaCmd::Eval { bound, text } => {
            let verdict = eval_bounded(&sentence_arg(text)?, *bound);
            Output::new(
                vec![verdict.to_string()],
                Payload::Formula {
                    op: "eval".into(),
                    input: text.clone(),
                    output: verdict.to_string(),
                    verdict: Some(verdict),
                },
            )
        }
    })
}

fn start_state(game: &GameArgs) -> Result<GameState, CliError> {
    GameState::new([sentence_arg(&game.sentence)?], game.bound).map_err(|e| CliError::Input(e.to_string()))
}

fn tree_lines(tree: &StrategyTree, indent: usize, out: &mut Vec<String>) {
    let pad = "  ".repeat(indent);
    match &tree.node {
        StrategyNode::Win { index } => out.push(format!("{pad}win at {index} [{}]", tree.measure.to_cnf())),
        StrategyNode::Proponent { mv, child } => {
            out.push(format!("{pad}{mv} [{}]", tree.measure.to_cnf()));
            tree_lines(child, indent, out);
        }
        StrategyNode::Adversary { pointed, children } => {
            out.push(format!("{pad}adversary answers {pointed} [{}]", tree.measure.to_cnf()));
            for (choice, child) in children {
                out.push(format!("{pad}- {choice}:"));
                tree_lines(child, indent + 1, out);
            }
        }
    }
}

fn synth(game: &GameArgs, depth: Option<usize>) -> Result<Output, CliError> {
    let state = start_state(game)?;
    let depth_budget = depth.unwrap_or_else(|| default_depth(&state));
    let tree = synthesize_reduction(&state, depth_budget).map_err(|e| CliError::Input(e.to_string()))?;
    let mut lines = Vec::new();
    match &tree {
        None => lines.push("NO-REDUCTION".to_string()),
        Some(t) => {
            lines.push(format!("REDUCTION plies={} measure={}", t.depth(), t.measure.to_cnf()));
            tree_lines(t, 1, &mut lines);
        }
    }
    Ok(Output::new(
        lines,
        Payload::GameSynth { sentence: state.board()[0].to_string(), bound: game.bound, depth_budget, reduction: tree },
    ))
}

fn play_game(game: &GameArgs, steps: usize) -> Result<Output, CliError> {
    let state = start_state(game)?;
    let trace = play(&state, &mut SearchProponent, &mut MinimaxAdversary, steps);
    let mut lines = Vec::new();
    for (i, mv) in trace.moves.iter().enumerate() {
        lines.push(format!("{}. {mv}  board: {}", i + 1, trace.boards[i + 1].join(" ; ")));
    }
    let won = trace.outcome.is_win();
    lines.push(match &trace.outcome {
        gentzen_core::game::Outcome::ProponentWin { index } => format!("WIN at index {index}"),
        other => format!("NO-WIN {}", serde_json::to_string(other).unwrap_or_default()),
    });
    let out = Output::new(lines, Payload::GameTrace { sentence: state.board()[0].to_string(), trace });
    Ok(if won { out } else { out.failing() })
}

fn theory_with(axioms: &[String]) -> Result<Theory, CliError> {
    axioms.iter().try_fold(Theory::pa(), |t, a| Ok(t.with_axiom(sentence_arg(a)?)))
}

fn proof_check(file: &PathBuf, axioms: &[String]) -> Result<Output, CliError> {
    let text = std::fs::read_to_string(file)?;
    let proof = parse_proof(&text).map_err(parse_err)?;
    let theory = theory_with(axioms)?;
    let verdict = check_proof(&theory, &proof);
    let mut report = ProofCheckReport {
        file: file.display().to_string(),
        accepted: verdict.is_ok(),
        steps: proof.len(),
        symbols: proof_length(&proof, LengthMetric::Symbols),
        conclusion: proof.conclusion().map(ToString::to_string),
        error: None,
    };
    let line = match &verdict {
        Ok(()) => format!(
            "OK steps={} symbols={} conclusion={}",
            report.steps,
            report.symbols,
            report.conclusion.as_deref().unwrap_or("-")
        ),
        Err(e) => {
            report.error = Some(StepFailure { step: e.step(), reason: failure_reason(e) });
            format!("REJECTED {e}")
        }
    };
    let out = Output::new(vec![line], Payload::ProofCheck(report));
    Ok(if verdict.is_ok() { out } else { out.failing() })
}

fn failure_reason(e: &ProofError) -> String {
    match e {
        ProofError::Step { reason, .. } => reason.to_string(),
        other => other.to_string(),
    }
}

fn proof_search(max_length: usize, metric: Metric, axioms: &[String]) -> Result<Output, CliError> {
    let config = SearchConfig { theory: theory_with(axioms)?, ..SearchConfig::default() };
    let report = search_contradiction_with(&config, max_length, metric.into()).map_err(|e| match e {
        SearchError::AboveCeiling { .. } | SearchError::StepsMetric => CliError::Refused(e.to_string()),
    })?;
    let length = report.proof.as_ref().map(|p| proof_length(p, LengthMetric::Symbols));
    let mut lines = Vec::new();
    match (&report.proof, length) {
        (Some(p), Some(n)) => {
            lines.push(format!("CONTRADICTION length={n}"));
            lines.extend(p.to_string().lines().map(str::to_string));
        }
        _ => lines.push(format!("CON-VERIFIED length<{max_length}")),
    }
    lines.push(format!(
        "ceiling={} alphabet={} nodes={} elapsed_ms={}",
        report.ceiling,
        report.alphabet.join(","),
        report.nodes,
        report.elapsed_ms
    ));
    let consistent = report.is_consistent();
    let out = Output::new(
        lines,
        Payload::SearchReport(SearchSummary {
            max_length,
            metric: format!("{metric:?}").to_lowercase(),
            ceiling: report.ceiling,
            alphabet: report.alphabet.clone(),
            extra_axioms: axioms.to_vec(),
            nodes: report.nodes,
            elapsed_ms: report.elapsed_ms,
            consistent,
            proof: report.proof.as_ref().map(ToString::to_string),
            proof_length: length,
        }),
    );
    Ok(if consistent { out } else { out.failing() })
}
