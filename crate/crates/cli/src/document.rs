//! The JSON trace document written by `--json`.

use gentzen_core::fol::TruthB;
use gentzen_core::game::{StrategyTree, Trace};
use gentzen_core::stabilization::DescentReport;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct TraceDocument {
    pub schema_version: u32,
    pub invocation: Invocation,
    pub payload: Payload,
}

#[derive(Debug, Serialize)]
pub struct Invocation {
    /// Subcommand path such as `ordinal compare`.
    pub command: String,
    /// Arguments after the program name, as given.
    pub args: Vec<String>,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Ordinal {
        op: String,
        inputs: Vec<String>,
        result: String,
    },
    DescentReport {
        program: String,
        budget: usize,
        window: usize,
        #[serde(flatten)]
        report: DescentReport,
    },
    Formula {
        op: String,
        input: String,
        output: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        verdict: Option<TruthB>,
    },
    GameSynth {
        sentence: String,
        bound: u64,
        depth_budget: usize,
        reduction: Option<StrategyTree>,
    },
    GameTrace {
        sentence: String,
        #[serde(flatten)]
        trace: Trace,
    },
    ProofCheck(ProofCheckReport),
    SearchReport(SearchSummary),
}

#[derive(Debug, Serialize)]
pub struct ProofCheckReport {
    pub file: String,
    pub accepted: bool,
    pub steps: usize,
    pub symbols: usize,
    pub conclusion: Option<String>,
    pub error: Option<StepFailure>,
}

#[derive(Debug, Serialize)]
pub struct StepFailure {
    /// 1-based step, absent when the failure concerns the whole proof.
    pub step: Option<usize>,
    pub reason: String,
}

#[derive(Debug, Serialize)]
pub struct SearchSummary {
    pub max_length: usize,
    pub metric: String,
    pub ceiling: usize,
    pub alphabet: Vec<String>,
    pub extra_axioms: Vec<String>,
    pub nodes: u64,
    pub elapsed_ms: u128,
    pub consistent: bool,
    pub proof: Option<String>,
    pub proof_length: Option<usize>,
}
