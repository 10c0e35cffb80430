//! Surreal forms `⟨L|R⟩` and Conway's order relation.
//!
//! `x >= y` holds iff no right option of `x` is `<= y` and no left option of
//! `y` is `>= x`. Every other comparison is derived from that one relation.
//! Equality is semantic: two forms are equal when each is `>=` the other.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Result, SurrealError};
use crate::genealogy::Node;
use crate::stats::Counters;

/// Default bound on the recursion depth of the order relation.
pub const DEFAULT_MAX_DESCENT: usize = 100_000;

/// A reference to a surreal: either a canonical node of the genealogy tree
/// or an arbitrary derived form.
#[derive(Clone)]
pub enum Surreal {
    Node(Node),
    Form(Arc<Form>),
}

/// `⟨L|R⟩`. Options are ordered and may repeat; `⟨1,1|⟩` is a valid form.
#[derive(Clone, Default)]
pub struct Form {
    pub left: Vec<Surreal>,
    pub right: Vec<Surreal>,
}

impl Form {
    pub fn new(left: Vec<Surreal>, right: Vec<Surreal>) -> Self {
        Form { left, right }
    }

    /// The zero form `⟨|⟩`.
    pub fn empty() -> Self {
        Form::default()
    }
}

impl Surreal {
    pub fn form(&self) -> &Form {
        match self {
            Surreal::Node(n) => n.form(),
            Surreal::Form(f) => f,
        }
    }

    pub fn left(&self) -> &[Surreal] {
        &self.form().left
    }

    pub fn right(&self) -> &[Surreal] {
        &self.form().right
    }

    pub fn as_node(&self) -> Option<&Node> {
        match self {
            Surreal::Node(n) => Some(n),
            Surreal::Form(_) => None,
        }
    }
}

impl From<Node> for Surreal {
    fn from(n: Node) -> Self {
        Surreal::Node(n)
    }
}

impl From<&Node> for Surreal {
    fn from(n: &Node) -> Self {
        Surreal::Node(n.clone())
    }
}

impl From<Form> for Surreal {
    fn from(f: Form) -> Self {
        Surreal::Form(Arc::new(f))
    }
}

fn write_options(f: &mut fmt::Formatter<'_>, opts: &[Surreal]) -> fmt::Result {
    for (i, o) in opts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{o}")?;
    }
    Ok(())
}

/// Renders `⟨a,b|c⟩`, substituting names for canonical nodes.
impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        write_options(f, &self.left)?;
        f.write_str("|")?;
        write_options(f, &self.right)?;
        f.write_str("⟩")
    }
}

impl fmt::Display for Surreal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surreal::Node(n) => write!(f, "{}", n.name()),
            Surreal::Form(form) => write!(f, "{form}"),
        }
    }
}

impl fmt::Debug for Surreal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Memo of `>=` results on pairs of canonical nodes, keyed by node identity.
#[derive(Default)]
pub struct GeCache {
    map: RefCell<HashMap<(usize, usize), bool>>,
}

impl GeCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.map.borrow_mut().clear();
    }
}

/// Why a comparison stopped early; kept to one byte on the hot path.
#[derive(Clone, Copy)]
enum Halt {
    Descent,
    Timeout,
}

/// The order relation, parameterised by its instrumentation.
///
/// `Order::default()` counts nothing, caches nothing and uses the default
/// descent limit.
#[derive(Clone, Copy)]
pub struct Order<'a> {
    counters: Option<&'a Counters>,
    cache: Option<&'a GeCache>,
    max_descent: usize,
}

impl Default for Order<'_> {
    fn default() -> Self {
        Order {
            counters: None,
            cache: None,
            max_descent: DEFAULT_MAX_DESCENT,
        }
    }
}

impl<'a> Order<'a> {
    pub fn new(
        counters: Option<&'a Counters>,
        cache: Option<&'a GeCache>,
        max_descent: usize,
    ) -> Self {
        Order {
            counters,
            cache,
            max_descent,
        }
    }

    pub fn with_max_descent(mut self, max_descent: usize) -> Self {
        self.max_descent = max_descent;
        self
    }

    pub fn ge(&self, x: &Surreal, y: &Surreal) -> Result<bool> {
        self.ge_at(x, y, 0).map_err(|halt| match halt {
            Halt::Descent => SurrealError::DescentLimit {
                limit: self.max_descent,
            },
            Halt::Timeout => SurrealError::Timeout,
        })
    }

    fn ge_at(&self, x: &Surreal, y: &Surreal, depth: usize) -> Result<bool, Halt> {
        if depth > self.max_descent {
            return Err(Halt::Descent);
        }
        if let Some(c) = self.counters {
            if c.ge_call().is_err() {
                return Err(Halt::Timeout);
            }
        }
        let key = match (self.cache, x, y) {
            (Some(cache), Surreal::Node(a), Surreal::Node(b)) => {
                let key = (a.id(), b.id());
                if let Some(&hit) = cache.map.borrow().get(&key) {
                    return Ok(hit);
                }
                Some(key)
            }
            _ => None,
        };
        let (xf, yf) = (x.form(), y.form());
        let mut result = true;
        // no x_R <= y, i.e. no y >= x_R
        for xr in &xf.right {
            if self.ge_at(y, xr, depth + 1)? {
                result = false;
                break;
            }
        }
        // no y_L >= x
        if result {
            for yl in &yf.left {
                if self.ge_at(yl, x, depth + 1)? {
                    result = false;
                    break;
                }
            }
        }
        if let (Some(cache), Some(key)) = (self.cache, key) {
            cache.map.borrow_mut().insert(key, result);
        }
        Ok(result)
    }

    pub fn le(&self, x: &Surreal, y: &Surreal) -> Result<bool> {
        self.ge(y, x)
    }

    /// `x < y` as `not (x >= y)`; valid for numbers only.
    pub fn lt(&self, x: &Surreal, y: &Surreal) -> Result<bool> {
        Ok(!self.ge(x, y)?)
    }

    pub fn gt(&self, x: &Surreal, y: &Surreal) -> Result<bool> {
        Ok(!self.ge(y, x)?)
    }

    pub fn eq(&self, x: &Surreal, y: &Surreal) -> Result<bool> {
        Ok(self.ge(x, y)? && self.ge(y, x)?)
    }

    pub fn ne(&self, x: &Surreal, y: &Surreal) -> Result<bool> {
        Ok(!self.eq(x, y)?)
    }

    /// One `>=` call when `x < y`, two otherwise.
    pub fn cmp(&self, x: &Surreal, y: &Surreal) -> Result<Ordering> {
        if !self.ge(x, y)? {
            Ok(Ordering::Less)
        } else if self.ge(y, x)? {
            Ok(Ordering::Equal)
        } else {
            Ok(Ordering::Greater)
        }
    }

    /// True iff no right option is `<=` any left option.
    /// True when every option is a number and no right option is `<=` a
    /// left one. Tree nodes are numbers by construction.
    pub fn is_number(&self, x: &Surreal) -> Result<bool> {
        let Surreal::Form(xf) = x else {
            return Ok(true);
        };
        for o in xf.left.iter().chain(&xf.right) {
            if !self.is_number(o)? {
                return Ok(false);
            }
        }
        for xl in &xf.left {
            for xr in &xf.right {
                if self.le(xr, xl)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub fn ge(x: &Surreal, y: &Surreal) -> Result<bool> {
    Order::default().ge(x, y)
}

pub fn le(x: &Surreal, y: &Surreal) -> Result<bool> {
    Order::default().le(x, y)
}

pub fn lt(x: &Surreal, y: &Surreal) -> Result<bool> {
    Order::default().lt(x, y)
}

pub fn gt(x: &Surreal, y: &Surreal) -> Result<bool> {
    Order::default().gt(x, y)
}

pub fn eq(x: &Surreal, y: &Surreal) -> Result<bool> {
    Order::default().eq(x, y)
}

pub fn ne(x: &Surreal, y: &Surreal) -> Result<bool> {
    Order::default().ne(x, y)
}

pub fn cmp(x: &Surreal, y: &Surreal) -> Result<Ordering> {
    Order::default().cmp(x, y)
}

pub fn is_number(x: &Surreal) -> Result<bool> {
    Order::default().is_number(x)
}
