use std::process::ExitCode;
use std::sync::Arc;

use clap::Parser;
use tiergov_cli::args::{Cli, Command};
use tiergov_cli::service::{self, AppState};
use tiergov_cli::{open_catalog, validate, Exit, Failure};
use tiergov_core::{validate_catalog, EngineConfig, KnowledgeBase};

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()),
        )
        .with_writer(std::io::stderr)
        .init();

    // clap exits with 2 on usage errors, which is reserved for catalog failures
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(Exit::Input as u8);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::from(Exit::Ok as u8),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.exit as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut config = EngineConfig::default();
    if let Some(w) = cli.common.weights {
        config.weights = w;
    }

    let port = match (&cli.command, cli.serve) {
        (Some(Command::Serve { port }), _) => Some(*port),
        (None, true) => Some(cli.port),
        _ => None,
    };
    if let Some(port) = port {
        let kb = open_catalog(cli.common.catalog.as_deref())?;
        return serve(kb, config, port);
    }

    match cli.command {
        Some(Command::Validate(args)) => {
            let kb = open_catalog(cli.common.catalog.as_deref())?;
            let outcome = validate::run(&args, &kb, &config)?;
            for r in &outcome.reports {
                println!("{}", validate::summary_line(r));
            }
            for p in &outcome.written {
                eprintln!("wrote {}", p.display());
            }
            Ok(())
        }
        Some(Command::CheckCatalog) => check_catalog(cli.common.catalog.as_deref()),
        Some(Command::Serve { .. }) => unreachable!("handled above"),
        None => Err(Failure::input(
            "nothing to do: use `validate`, `serve` or `check-catalog` (see --help)",
        )),
    }
}

fn check_catalog(path: Option<&std::path::Path>) -> Result<(), Failure> {
    let text = match path {
        None => tiergov_core::catalog::BUNDLED_CATALOG.to_string(),
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Failure::input(format!("cannot read catalog {}: {e}", p.display())))?,
    };
    let kb: KnowledgeBase =
        tiergov_core::parse_catalog(&text).map_err(|e| Failure::catalog(e.to_string()))?;
    let diagnostics = validate_catalog(&kb);
    for d in &diagnostics {
        println!("{}\t{}\t{}", d.rule, d.record_id, d.message);
    }
    if diagnostics.is_empty() {
        println!(
            "catalog {} ok: {} obligations, {} controls, {} artifacts, {} chains",
            kb.catalog_version(),
            kb.obligations().len(),
            kb.controls().len(),
            kb.artifacts().len(),
            kb.chains().len()
        );
        Ok(())
    } else {
        Err(Failure::catalog(format!(
            "{} integrity violation(s)",
            diagnostics.len()
        )))
    }
}

fn serve(kb: KnowledgeBase, config: EngineConfig, port: u16) -> Result<(), Failure> {
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::input(e.to_string()))?;
    let state = Arc::new(AppState { kb, config });
    runtime
        .block_on(service::serve(state, port))
        .map_err(|e| Failure::input(format!("service on port {port}: {e}")))
}
