//! Independent oracle for the surreal engine: plain rational arithmetic and
//! a direct reading of the simplicity rule, sharing no code with the engine
//! beyond its data types. Also holds the parser corpus.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use surreal_core::{Dyadic, Engine, Node, Surreal};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_of(d: &Dyadic) -> Q {
    Q::new(d.numerator().clone(), d.denominator())
}

pub fn dyadic_of(v: &Q) -> Dyadic {
    Dyadic::from_ratio(v.numer().clone(), v.denom().clone()).expect("oracle value is dyadic")
}

/// The simplest number strictly between `lo` and `hi` (either may be open).
pub fn simplest(lo: Option<&Q>, hi: Option<&Q>) -> Q {
    if let (Some(l), Some(h)) = (lo, hi) {
        assert!(l < h, "empty interval ({l}, {h})");
    }
    let above = |v: &Q| lo.is_none_or(|l| v > l);
    let below = |v: &Q| hi.is_none_or(|h| v < h);
    if above(&q(0)) && below(&q(0)) {
        return q(0);
    }
    // One-sided: step outward through the integers.
    let negative = hi.is_some_and(|h| !h.is_positive());
    let flip = |v: Q| if negative { -v } else { v };
    let (lo, hi) = if negative {
        (hi.map(|h| -h), lo.map(|l| -l))
    } else {
        (lo.cloned(), hi.cloned())
    };
    let lo = lo.expect("bounded below after flipping");
    let n = lo.floor() + Q::one();
    if hi.as_ref().is_none_or(|h| &n < h) {
        return flip(n);
    }
    let hi = hi.unwrap();
    let mut scale = Q::one();
    loop {
        scale *= q(2);
        let m = (&lo * &scale).floor() + Q::one();
        let v = m / &scale;
        if v < hi {
            return flip(v);
        }
    }
}

/// The value of any number-valued form, read off its options.
pub fn value(x: &Surreal) -> Q {
    let form = x.form();
    let lo = form.left.iter().map(value).max();
    let hi = form.right.iter().map(value).min();
    simplest(lo.as_ref(), hi.as_ref())
}

/// Numbers born on or before day `g`, ascending.
pub fn born_by(g: u32) -> Vec<Q> {
    let mut day = vec![q(0)];
    for _ in 0..g {
        let mut next = vec![day[0].clone() - q(1)];
        for w in day.windows(2) {
            next.push(w[0].clone());
            next.push((&w[0] + &w[1]) / q(2));
        }
        let last = day.last().unwrap().clone();
        next.push(last.clone());
        next.push(last + q(1));
        day = next;
    }
    day
}

/// Day on which `v` is born.
pub fn birthday(v: &Q) -> u32 {
    (0..).find(|&g| born_by(g).contains(v)).unwrap()
}

/// All canonical nodes of generation at most `g`, in order.
pub fn nodes(engine: &Engine, g: u32) -> Vec<Node> {
    engine.tree().in_order(g).unwrap()
}

pub fn node_value(n: &Node) -> Q {
    value(&Surreal::from(n))
}

/// Runs `f` on a thread with a stack large enough for deep comparisons.
pub fn big_stack<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    std::thread::Builder::new()
        .stack_size(256 << 20)
        .spawn(f)
        .unwrap()
        .join()
        .unwrap()
}

/// Statements covering every grammar production.
pub const CORPUS: &[&str] = &[
    "0",
    "7",
    "3/4",
    "-5/8",
    "x",
    "long_name_2",
    "1 + 2",
    "1 - 2 - 3",
    "1 - (2 - 3)",
    "2 * 3 * 4",
    "2 * (3 + 4)",
    "1 + 2 * 3",
    "(1 + 2) * 3",
    "--1",
    "-(1 + 1)",
    "-x * y",
    "<|>",
    "<0|>",
    "<|0>",
    "<0|1>",
    "<0, 1/2 | 1, 2>",
    "<-1 | x + 1>",
    "<<0|> | <<0|>|>>",
    "⟨0|1⟩ × 2",
    "x = 4",
    "y = <0|1> * 2",
    "z = x < y",
    "1 < 2",
    "1 <= 2",
    "2 >= 1",
    "2 > 1",
    "1 == 1",
    "1 != 2",
    "1 ≤ 2",
    "1 ≠ 2",
    "<0|> > <|0>",
    "(1 < 2)",
    "a = -3/4 - x",
    "1 − 2",
];

/// Non-dyadic literals.
pub const NOT_DYADIC: &[&str] = &["1/3", "5/6", "7/12", "3/10", "1 + 2/5", "x = 9/7"];
