use std::process::ExitCode;

use clap::Parser;
use gentzen_cli::commands::{run, Cli, Command, GameCmd};
use gentzen_cli::document::{Invocation, TraceDocument, SCHEMA_VERSION};
use gentzen_cli::error::CliError;
use gentzen_cli::server::{self, AppState};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Game(GameCmd::Serve { port, static_dir, bound, sentence }) => {
            serve(*port, static_dir, *bound, sentence.as_deref())
        }
        command => run_once(&cli, command),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            e.exit_code()
        }
    }
}

fn run_once(cli: &Cli, command: &Command) -> Result<ExitCode, CliError> {
    let output = run(command)?;
    if cli.json {
        let doc = TraceDocument {
            schema_version: SCHEMA_VERSION,
            invocation: Invocation { command: command.name(), args: std::env::args().skip(1).collect() },
            payload: output.payload,
        };
        println!("{}", serde_json::to_string_pretty(&doc).expect("documents serialize"));
    } else {
        for line in &output.lines {
            println!("{line}");
        }
    }
    Ok(if output.ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn serve(
    port: u16,
    static_dir: &std::path::Path,
    bound: Option<u64>,
    sentence: Option<&str>,
) -> Result<ExitCode, CliError> {
    let app = AppState::default();
    if let (Some(bound), Some(sentence)) = (bound, sentence) {
        let id = app.open(sentence, bound).map_err(|e| CliError::Input(e.to_string()))?;
        eprintln!("opened game {id}");
    }
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(server::serve(app, port, static_dir))?;
    Ok(ExitCode::SUCCESS)
}
