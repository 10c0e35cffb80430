//! Conway's `+`, `-` and `×` over canonical surreals.
//!
//! ```text
//! x + y = ⟨xL+y, x+yL | xR+y, x+yR⟩
//! -x    = ⟨-xR | -xL⟩
//! x - y = x + (-y)
//! x × y = ⟨xL·y + x·yL - xL·yL, xR·y + x·yR - xR·yR | xL·y + x·yR - xL·yR, xR·y + x·yL - xR·yL⟩
//! ```
//!
//! Three strategies evaluate these rules:
//!
//! * [`Strategy::Naive`] applies the rules recursively with no tables, so
//!   every sub-sum and sub-product is derived again each time it is needed.
//! * [`Strategy::Memo`] routes every inner `+` and `×` through lazily filled
//!   tables; cells are located by walking the genealogy tree with comparisons.
//! * [`Strategy::MemoParents`] uses the same tables but locates cells by the
//!   operand's parent chain, with no comparisons.

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::Result;
use crate::form::{Form, GeCache, Order, Surreal, DEFAULT_MAX_DESCENT};
use crate::genealogy::{Genealogy, Node, Side};
use crate::memo::{LazyTree, MemoTable};
use crate::stats::{Counters, Stats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Naive,
    Memo,
    #[serde(rename = "parents")]
    MemoParents,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Naive, Strategy::Memo, Strategy::MemoParents];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Naive => "naive",
            Strategy::Memo => "memo",
            Strategy::MemoParents => "parents",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "naive" => Ok(Strategy::Naive),
            "memo" => Ok(Strategy::Memo),
            "parents" | "memo-parents" => Ok(Strategy::MemoParents),
            other => Err(format!(
                "unknown strategy {other:?} (expected naive, memo or parents)"
            )),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub strategy: Strategy,
    pub max_descent: usize,
    /// Cache `>=` on pairs of canonical nodes. Off by default.
    pub memo_ge: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            strategy: Strategy::MemoParents,
            max_descent: DEFAULT_MAX_DESCENT,
            memo_ge: false,
        }
    }
}

/// One evaluation context: a genealogy tree (possibly shared), per-engine
/// memo tables and counters. Not `Sync`; use one engine per thread.
pub struct Engine {
    tree: Arc<Genealogy>,
    config: EngineConfig,
    counters: Counters,
    nodes_baseline: Cell<u64>,
    plus_table: MemoTable,
    times_table: MemoTable,
    ge_cache: Option<GeCache>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    /// An engine with a fresh tree and the default configuration.
    pub fn new() -> Self {
        Self::with_tree(Arc::new(Genealogy::new()), EngineConfig::default())
    }

    pub fn with_strategy(strategy: Strategy) -> Self {
        Self::with_tree(
            Arc::new(Genealogy::new()),
            EngineConfig {
                strategy,
                ..EngineConfig::default()
            },
        )
    }

    pub fn with_tree(tree: Arc<Genealogy>, config: EngineConfig) -> Self {
        let ge_cache = config.memo_ge.then(GeCache::new);
        Engine {
            nodes_baseline: Cell::new(tree.nodes_built()),
            tree,
            config,
            counters: Counters::new(),
            plus_table: MemoTable::new(),
            times_table: MemoTable::new(),
            ge_cache,
        }
    }

    pub fn tree(&self) -> &Arc<Genealogy> {
        &self.tree
    }

    pub fn root(&self) -> &Node {
        self.tree.root()
    }

    pub fn strategy(&self) -> Strategy {
        self.config.strategy
    }

    /// Switches strategy and discards the memo tables.
    pub fn set_strategy(&mut self, strategy: Strategy) {
        self.config.strategy = strategy;
        self.clear_tables();
    }

    pub fn clear_tables(&mut self) {
        self.plus_table = MemoTable::new();
        self.times_table = MemoTable::new();
        if let Some(c) = &self.ge_cache {
            c.clear();
        }
    }

    pub fn plus_table(&self) -> &MemoTable {
        &self.plus_table
    }

    pub fn times_table(&self) -> &MemoTable {
        &self.times_table
    }

    pub fn stats_snapshot(&self) -> Stats {
        Stats {
            nodes_built: self.tree.nodes_built() - self.nodes_baseline.get(),
            ..self.counters.snapshot()
        }
    }

    pub fn stats_reset(&self) {
        self.counters.reset();
        self.nodes_baseline.set(self.tree.nodes_built());
    }

    /// Evaluations poll this deadline and fail with `Timeout` once past it.
    pub fn set_deadline(&self, deadline: Option<Instant>) {
        self.counters.set_deadline(deadline);
    }

    /// The instrumented order relation for this engine.
    pub fn order(&self) -> Order<'_> {
        Order::new(
            Some(&self.counters),
            self.ge_cache.as_ref(),
            self.config.max_descent,
        )
    }

    pub fn from_dyadic(&self, d: &Dyadic) -> Result<Node> {
        self.tree.from_dyadic(d)
    }

    pub fn canonical(&self, x: &Surreal) -> Result<Node> {
        self.tree.canonical(x, &self.order())
    }

    pub fn is_number(&self, x: &Surreal) -> Result<bool> {
        self.order().is_number(x)
    }

    pub fn cmp(&self, x: &Node, y: &Node) -> Result<std::cmp::Ordering> {
        self.order().cmp(&x.into(), &y.into())
    }

    /// `-x`, resolved to the node on the mirrored path.
    pub fn negate(&self, x: &Node) -> Result<Node> {
        self.tree.mirror(x)
    }

    /// The definitional form `⟨-xR | -xL⟩`.
    pub fn negate_form(&self, x: &Node) -> Result<Form> {
        let neg = |opts: &[Surreal]| -> Result<Vec<Surreal>> {
            opts.iter()
                .filter_map(Surreal::as_node)
                .map(|o| self.negate(o).map(Surreal::Node))
                .collect()
        };
        Ok(Form::new(neg(&x.form().right)?, neg(&x.form().left)?))
    }

    /// The definitional sum form; each option is a sum of smaller operands
    /// evaluated with the current strategy.
    pub fn plus_form(&self, x: &Node, y: &Node) -> Result<Form> {
        self.counters.plus_eval()?;
        let side = |xo: Option<&Node>, yo: Option<&Node>| -> Result<Vec<Surreal>> {
            let mut out = Vec::with_capacity(2);
            if let Some(xo) = xo {
                out.push(self.add(xo, y)?.into());
            }
            if let Some(yo) = yo {
                out.push(self.add(x, yo)?.into());
            }
            Ok(out)
        };
        Ok(Form::new(
            side(x.left_option(), y.left_option())?,
            side(x.right_option(), y.right_option())?,
        ))
    }

    /// The definitional product form. Terms needing an option that does not
    /// exist are left out.
    pub fn times_form(&self, x: &Node, y: &Node) -> Result<Form> {
        self.counters.times_eval()?;
        // a·y + x·b - a·b
        let term = |a: &Node, b: &Node| -> Result<Surreal> {
            let ay = self.mul(a, y)?;
            let xb = self.mul(x, b)?;
            let ab = self.mul(a, b)?;
            Ok(self.sub(&self.add(&ay, &xb)?, &ab)?.into())
        };
        let terms = |pairs: [(Option<&Node>, Option<&Node>); 2]| -> Result<Vec<Surreal>> {
            let mut out = Vec::with_capacity(2);
            for pair in pairs {
                if let (Some(a), Some(b)) = pair {
                    out.push(term(a, b)?);
                }
            }
            Ok(out)
        };
        let (xl, xr) = (x.left_option(), x.right_option());
        let (yl, yr) = (y.left_option(), y.right_option());
        Ok(Form::new(
            terms([(xl, yl), (xr, yr)])?,
            terms([(xl, yr), (xr, yl)])?,
        ))
    }

    pub fn add(&self, x: &Node, y: &Node) -> Result<Node> {
        self.evaluate(Op::Plus, x, y)
    }

    pub fn sub(&self, x: &Node, y: &Node) -> Result<Node> {
        self.add(x, &self.negate(y)?)
    }

    pub fn mul(&self, x: &Node, y: &Node) -> Result<Node> {
        self.evaluate(Op::Times, x, y)
    }

    /// Canonical result of `x op y`. The memo strategies consult and fill
    /// the operation's table; the naive one derives the result afresh.
    fn evaluate(&self, op: Op, x: &Node, y: &Node) -> Result<Node> {
        let cell = match self.config.strategy {
            Strategy::Naive => None,
            Strategy::Memo | Strategy::MemoParents => {
                let table = match op {
                    Op::Plus => &self.plus_table,
                    Op::Times => &self.times_table,
                };
                let row = self
                    .select(table.rows(), x)?
                    .cell()
                    .get_or_init(LazyTree::new);
                let cell = self.select(row, y)?.cell();
                if let Some(hit) = cell.get() {
                    self.counters.table_hit();
                    return Ok(hit.clone());
                }
                Some(cell)
            }
        };
        let form = match op {
            Op::Plus => self.plus_form(x, y)?,
            Op::Times => self.times_form(x, y)?,
        };
        let node = self.canonical(&form.into())?;
        if let Some(cell) = cell {
            let _ = cell.set(node.clone());
        }
        Ok(node)
    }

    /// The position of `x` within a tree mirroring the genealogy tree.
    ///
    /// With parents the walk follows `x`'s path and makes no comparisons;
    /// otherwise both trees are descended in lockstep, comparing `x` with
    /// each genealogy node on the way.
    pub fn select<'t, T>(&self, tr: &'t LazyTree<T>, x: &Node) -> Result<&'t LazyTree<T>> {
        if self.config.strategy == Strategy::MemoParents {
            let path = x.path();
            self.counters.select_steps(path.len() as u64);
            return Ok(tr.at(&path));
        }
        let order = self.order();
        let target = Surreal::Node(x.clone());
        let mut s = self.tree.root().clone();
        let mut t = tr;
        loop {
            let side = match order.cmp(&target, &Surreal::Node(s.clone()))? {
                std::cmp::Ordering::Less => Side::Left,
                std::cmp::Ordering::Greater => Side::Right,
                std::cmp::Ordering::Equal => return Ok(t),
            };
            self.counters.select_steps(1);
            s = self.tree.child(&s, side)?;
            t = t.child(side);
        }
    }
}

#[derive(Clone, Copy)]
enum Op {
    Plus,
    Times,
}
