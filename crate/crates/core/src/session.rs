//! Calculator sessions: reserved `:` commands plus statement evaluation,
//! shared by the terminal REPL and the HTTP service.

use std::time::{Duration, Instant};

use crate::arithmetic::{Engine, Strategy};
use crate::expr::{self, Env, ExprError, Value};

/// Deepest tree dump `:gen` will print.
pub const MAX_GEN_DEPTH: u32 = 12;

pub const HELP: &str = "\
statements:
  expr                 evaluate, e.g. 2*2, <0|1> + 1/2, -x
  name = expr          bind a variable
  a < b, <=, ==, !=, >=, >   compare
commands:
  :gen d               tree dump to depth d
  :time expr           evaluate with wall time and counter deltas
  :stats               counter snapshot
  :parents on|off      select with or without parent links
  :strategy naive|memo|parents
  :reset               clear bindings, tables and counters
  :help                this text
  :quit                leave";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplCommand {
    Eval(String),
    Gen(u32),
    Time(String),
    Stats,
    Parents(bool),
    Strategy(Strategy),
    Reset,
    Help,
    Quit,
}

impl ReplCommand {
    pub fn parse(line: &str) -> Result<ReplCommand, ExprError> {
        let line = line.trim();
        let Some(rest) = line.strip_prefix(':') else {
            return Ok(ReplCommand::Eval(line.to_string()));
        };
        let (word, arg) = match rest.split_once(char::is_whitespace) {
            Some((w, a)) => (w, a.trim()),
            None => (rest, ""),
        };
        let bad = |msg: &str| Err(ExprError::Command(msg.to_string()));
        let no_arg = |cmd: ReplCommand| {
            if arg.is_empty() {
                Ok(cmd)
            } else {
                Err(ExprError::Command(format!(":{word} takes no argument")))
            }
        };
        match word {
            "gen" => match arg.parse::<u32>() {
                Ok(d) if d <= MAX_GEN_DEPTH => Ok(ReplCommand::Gen(d)),
                _ => Err(ExprError::Command(format!(
                    "usage: :gen d with 0 <= d <= {MAX_GEN_DEPTH}"
                ))),
            },
            "time" if arg.is_empty() => bad("usage: :time expr"),
            "time" => Ok(ReplCommand::Time(arg.to_string())),
            "stats" => no_arg(ReplCommand::Stats),
            "parents" => match arg {
                "on" => Ok(ReplCommand::Parents(true)),
                "off" => Ok(ReplCommand::Parents(false)),
                _ => bad("usage: :parents on|off"),
            },
            "strategy" => arg
                .parse()
                .map(ReplCommand::Strategy)
                .or_else(|_| bad("usage: :strategy naive|memo|parents")),
            "reset" => no_arg(ReplCommand::Reset),
            "help" => no_arg(ReplCommand::Help),
            "quit" | "q" => no_arg(ReplCommand::Quit),
            _ => Err(ExprError::Command(format!(
                "unknown command :{word}, try :help"
            ))),
        }
    }
}

/// What a line produced.
#[derive(Clone, Debug, PartialEq)]
pub struct Reply {
    pub display: String,
    /// The evaluated value, for statements and `:time`.
    pub value: Option<Value>,
    pub quit: bool,
}

impl Reply {
    fn text(display: impl Into<String>) -> Reply {
        Reply {
            display: display.into(),
            value: None,
            quit: false,
        }
    }
}

/// One user's bindings. The engine is passed in so it can be shared.
#[derive(Debug, Default)]
pub struct Session {
    pub env: Env,
    /// Per-statement wall-clock budget.
    pub budget: Option<Duration>,
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(budget: Option<Duration>) -> Self {
        Session {
            env: Env::new(),
            budget,
        }
    }

    /// Runs one line, statement or command.
    pub fn execute(&mut self, engine: &mut Engine, line: &str) -> Result<Reply, ExprError> {
        match ReplCommand::parse(line)? {
            ReplCommand::Eval(text) => {
                let v = self.eval(engine, &text)?;
                Ok(Reply {
                    display: expr::format(&v),
                    value: Some(v),
                    quit: false,
                })
            }
            ReplCommand::Time(text) => {
                let before = engine.stats_snapshot();
                let start = Instant::now();
                let v = self.eval(engine, &text)?;
                let elapsed = start.elapsed();
                let d = engine.stats_snapshot().since(&before);
                Ok(Reply {
                    display: format!(
                        "{}\n{:.3} ms geCalls={} plusEvals={} timesEvals={}",
                        expr::format(&v),
                        elapsed.as_secs_f64() * 1e3,
                        d.ge_calls,
                        d.plus_evals,
                        d.times_evals
                    ),
                    value: Some(v),
                    quit: false,
                })
            }
            ReplCommand::Gen(d) => {
                let dump = engine.tree().dump(d)?;
                Ok(Reply::text(dump.trim_end()))
            }
            ReplCommand::Stats => Ok(Reply::text(engine.stats_snapshot().to_string())),
            ReplCommand::Parents(on) => {
                let s = if on {
                    Strategy::MemoParents
                } else {
                    Strategy::Memo
                };
                engine.set_strategy(s);
                Ok(Reply::text(format!("strategy {s}")))
            }
            ReplCommand::Strategy(s) => {
                engine.set_strategy(s);
                Ok(Reply::text(format!("strategy {s}")))
            }
            ReplCommand::Reset => {
                self.env.clear();
                engine.clear_tables();
                engine.stats_reset();
                Ok(Reply::text("reset"))
            }
            ReplCommand::Help => Ok(Reply::text(HELP)),
            ReplCommand::Quit => Ok(Reply {
                display: String::new(),
                value: None,
                quit: true,
            }),
        }
    }

    fn eval(&mut self, engine: &Engine, text: &str) -> Result<Value, ExprError> {
        engine.set_deadline(self.budget.map(|b| Instant::now() + b));
        let r = expr::run(engine, text, &mut self.env);
        engine.set_deadline(None);
        r
    }
}
