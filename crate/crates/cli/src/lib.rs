//! Terminal front end: the REPL loop and the `n × n` benchmark harness.

use std::fmt;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::Parser;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use surreal_core::{Dyadic, Engine, EngineConfig, Genealogy, Session, Strategy, SurrealError};

pub const PROMPT: &str = "surreal> ";

#[derive(Debug, Parser)]
#[command(
    name = "surreal",
    version,
    about = "Calculator for Conway's short surreal numbers"
)]
pub struct Args {
    /// Evaluation strategy for the REPL and the service.
    #[arg(long, default_value = "parents")]
    pub strategy: Strategy,
    /// Deepest genealogy generation that may be built.
    #[arg(long, default_value_t = surreal_core::genealogy::DEFAULT_MAX_GENERATION)]
    pub max_generation: u32,
    /// Run the n × n benchmark for n = 1..=N, then exit.
    #[arg(long, value_name = "N")]
    pub bench: Option<u32>,
    /// Strategies to benchmark.
    #[arg(long, value_delimiter = ',', default_value = "naive,memo,parents")]
    pub strategies: Vec<Strategy>,
    /// Write the benchmark CSV here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Timed repeats per benchmark cell; the median is reported.
    #[arg(long, default_value_t = 3, value_name = "K")]
    pub repeats: usize,
    /// Wall-clock budget per benchmark cell and per statement.
    #[arg(long, default_value_t = 60.0, value_name = "S")]
    pub budget_seconds: f64,
    /// Start the HTTP service on this port.
    #[arg(long, value_name = "PORT")]
    pub serve: Option<u16>,
    /// Directory of static web assets served from `/`.
    #[arg(long, value_name = "DIR")]
    pub static_dir: Option<PathBuf>,
}

impl Args {
    pub fn budget(&self) -> Duration {
        Duration::from_secs_f64(self.budget_seconds)
    }

    pub fn engine_config(&self) -> EngineConfig {
        EngineConfig {
            strategy: self.strategy,
            ..EngineConfig::default()
        }
    }

    pub fn engine(&self) -> Engine {
        let tree = Arc::new(Genealogy::with_max_generation(self.max_generation));
        Engine::with_tree(tree, self.engine_config())
    }
}

/// Reads lines until `:quit` or end of input. Evaluation errors are printed
/// and the loop continues; only I/O errors end it early.
pub fn repl(
    engine: &mut Engine,
    session: &mut Session,
    input: impl BufRead,
    mut out: impl Write,
) -> io::Result<()> {
    let mut lines = input.lines();
    loop {
        write!(out, "{PROMPT}")?;
        out.flush()?;
        let Some(line) = lines.next().transpose()? else {
            writeln!(out)?;
            return Ok(());
        };
        if line.trim().is_empty() {
            continue;
        }
        match session.execute(engine, &line) {
            Ok(reply) if reply.quit => return Ok(()),
            Ok(reply) => writeln!(out, "{}", reply.display)?,
            Err(e) => writeln!(out, "{}", e.report())?,
        }
    }
}

/// Wall time of a benchmark cell in milliseconds, rounded to the
/// microsecond, or the marker for an exhausted budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Millis {
    Done(f64),
    Timeout,
}

impl fmt::Display for Millis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Millis::Done(ms) => write!(f, "{ms}"),
            Millis::Timeout => f.write_str("timeout"),
        }
    }
}

impl FromStr for Millis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "timeout" => Ok(Millis::Timeout),
            _ => s
                .parse::<f64>()
                .ok()
                .filter(|ms| *ms >= 0.0)
                .map(Millis::Done)
                .ok_or_else(|| format!("bad millis {s:?}")),
        }
    }
}

impl Serialize for Millis {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Millis {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One `n × n` cell. Counters come from a single run on a fresh engine;
/// for a timeout they are the totals reached before the budget ran out.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchRow {
    pub n: u32,
    pub strategy: Strategy,
    pub millis: Millis,
    pub times_evals: u64,
    pub plus_evals: u64,
    pub ge_calls: u64,
}

pub struct BenchConfig {
    pub n_max: u32,
    pub strategies: Vec<Strategy>,
    pub repeats: usize,
    pub budget: Duration,
    pub max_generation: u32,
}

fn run_cell(cfg: &BenchConfig, strategy: Strategy, n: u32) -> BenchRow {
    let mut times = Vec::new();
    let mut row = None;
    for _ in 0..cfg.repeats.max(1) {
        let tree = Arc::new(Genealogy::with_max_generation(cfg.max_generation));
        let config = EngineConfig {
            strategy,
            ..EngineConfig::default()
        };
        let engine = Engine::with_tree(tree, config);
        let x = engine
            .from_dyadic(&Dyadic::integer(n))
            .expect("n within the generation cap");
        engine.stats_reset();
        engine.set_deadline(Some(Instant::now() + cfg.budget));
        let start = Instant::now();
        let result = engine.mul(&x, &x);
        let elapsed = start.elapsed();
        let s = engine.stats_snapshot();
        let timed_out = matches!(result, Err(SurrealError::Timeout));
        let r = row.get_or_insert(BenchRow {
            n,
            strategy,
            millis: Millis::Timeout,
            times_evals: s.times_evals,
            plus_evals: s.plus_evals,
            ge_calls: s.ge_calls,
        });
        if timed_out {
            r.millis = Millis::Timeout;
            return r.clone();
        }
        result.expect("n × n stays within the generation cap");
        times.push(elapsed.as_secs_f64() * 1e3);
    }
    times.sort_by(f64::total_cmp);
    let mut row = row.unwrap();
    row.millis = Millis::Done((times[times.len() / 2] * 1e3).round() / 1e3);
    row
}

/// Runs every cell in sequence. Once a strategy exceeds the budget, its
/// larger cells are recorded as timeouts without being run.
pub fn bench(cfg: &BenchConfig, mut progress: impl FnMut(&BenchRow)) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for &strategy in &cfg.strategies {
        let mut exhausted = false;
        for n in 1..=cfg.n_max {
            let row = if exhausted {
                BenchRow {
                    n,
                    strategy,
                    millis: Millis::Timeout,
                    times_evals: 0,
                    plus_evals: 0,
                    ge_calls: 0,
                }
            } else {
                run_cell(cfg, strategy, n)
            };
            exhausted |= row.millis == Millis::Timeout;
            progress(&row);
            rows.push(row);
        }
    }
    rows
}

pub fn write_csv(rows: &[BenchRow], out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(input: impl io::Read) -> csv::Result<Vec<BenchRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}
