//! Fixtures shared by the benchmarks.

use surreal_core::{Dyadic, Engine, Node, Strategy};

/// A fresh engine and the node for integer `n`.
pub fn fresh(strategy: Strategy, n: i64) -> (Engine, Node) {
    let engine = Engine::with_strategy(strategy);
    let x = engine
        .from_dyadic(&Dyadic::integer(n))
        .expect("small integer");
    (engine, x)
}
