//! Conway's short surreal numbers.
//!
//! Forms `⟨L|R⟩`, the order relation and `+ - ×` follow Conway's rules
//! directly. Canonical surreals live in a lazily built genealogy tree, and
//! results of `+` and `×` are cached in lazy tables that mirror that tree.

pub mod arithmetic;
pub mod dyadic;
pub mod error;
pub mod expr;
pub mod form;
pub mod genealogy;
pub mod memo;
pub mod session;
pub mod stats;

pub use arithmetic::{Engine, EngineConfig, Strategy};
pub use dyadic::Dyadic;
pub use error::{DyadicError, SurrealError};
pub use expr::{format, parse, Ast, Env, ExprError, Value};
pub use form::{Form, Order, Surreal};
pub use genealogy::{Genealogy, Node, Side};
pub use memo::{LazyTree, MemoTable};
pub use session::{ReplCommand, Reply, Session};
pub use stats::Stats;
