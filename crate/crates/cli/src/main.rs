use std::fs::File;
use std::io::{self, BufWriter};
use std::process::ExitCode;

use clap::Parser;
use surreal_cli::{bench, repl, write_csv, Args, BenchConfig};
use surreal_core::Session;

/// Comparisons recurse once per option level; give them room.
const STACK_BYTES: usize = 256 << 20;

fn run(args: Args) -> Result<(), String> {
    if let Some(port) = args.serve {
        let config = surreal_service::Config {
            engine: args.engine_config(),
            max_generation: args.max_generation,
            budget: Some(args.budget()),
            static_dir: args.static_dir.clone(),
        };
        return surreal_service::serve(port, config).map_err(|e| format!("serve: {e}"));
    }
    if let Some(n_max) = args.bench {
        if n_max == 0 || n_max > args.max_generation {
            return Err(format!(
                "--bench must be between 1 and {}",
                args.max_generation
            ));
        }
        let cfg = BenchConfig {
            n_max,
            strategies: args.strategies.clone(),
            repeats: args.repeats,
            budget: args.budget(),
            max_generation: args.max_generation,
        };
        let rows = bench(&cfg, |r| {
            eprintln!("n={} {} {} ms", r.n, r.strategy, r.millis);
        });
        let result = match &args.csv {
            Some(path) => {
                let file = File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
                write_csv(&rows, BufWriter::new(file))
            }
            None => write_csv(&rows, io::stdout().lock()),
        };
        return result.map_err(|e| format!("csv: {e}"));
    }
    let mut engine = args.engine();
    let mut session = Session::with_budget(Some(args.budget()));
    repl(
        &mut engine,
        &mut session,
        io::stdin().lock(),
        io::stdout().lock(),
    )
    .map_err(|e| format!("io: {e}"))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let worker = std::thread::Builder::new()
        .stack_size(STACK_BYTES)
        .spawn(move || run(args))
        .expect("spawn worker thread");
    match worker.join() {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
        Err(_) => ExitCode::FAILURE,
    }
}
