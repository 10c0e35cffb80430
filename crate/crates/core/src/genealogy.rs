//! The genealogy tree of canonical surreals.
//!
//! The root is `0 = ⟨|⟩`. A node `⟨L|R⟩` has a left child `⟨L|x⟩` and a right
//! child `⟨x|R⟩` where `x` is the node itself, so every canonical surreal has
//! at most one option per side, each born earlier. The tree is infinite and
//! only the parts that are asked for are built; each child is built once and
//! every later request returns the same node.
//!
//! Nodes keep a link to their parent and the side they hang from, so the
//! root-to-node path can be recovered without any comparisons.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex, OnceLock, Weak};

use crate::dyadic::Dyadic;
use crate::error::{Result, SurrealError};
use crate::form::{Form, Order, Surreal};

pub const DEFAULT_MAX_GENERATION: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::Left => 'L',
            Side::Right => 'R',
        }
    }
}

/// Renders a path as a string of `L`/`R`; the empty path renders as `.`.
pub fn path_string(path: &[Side]) -> String {
    if path.is_empty() {
        ".".to_string()
    } else {
        path.iter().map(|s| s.letter()).collect()
    }
}

struct NodeData {
    form: Form,
    parent: Option<Node>,
    side: Option<Side>,
    generation: u32,
    name: Dyadic,
    // Open interval the node was born into; `None` is unbounded.
    lo: Option<Dyadic>,
    hi: Option<Dyadic>,
    // Children are owned by the tree's registry; these are back-references.
    left: OnceLock<Weak<NodeData>>,
    right: OnceLock<Weak<NodeData>>,
}

/// A canonical surreal: a node of the genealogy tree. Equality is identity.
#[derive(Clone)]
pub struct Node(Arc<NodeData>);

impl Node {
    pub fn form(&self) -> &Form {
        &self.0.form
    }

    pub fn parent(&self) -> Option<&Node> {
        self.0.parent.as_ref()
    }

    pub fn side(&self) -> Option<Side> {
        self.0.side
    }

    pub fn generation(&self) -> u32 {
        self.0.generation
    }

    /// The dyadic value this node is named after. Display only.
    pub fn name(&self) -> &Dyadic {
        &self.0.name
    }

    pub fn left_option(&self) -> Option<&Node> {
        self.0.form.left.first().and_then(Surreal::as_node)
    }

    pub fn right_option(&self) -> Option<&Node> {
        self.0.form.right.first().and_then(Surreal::as_node)
    }

    pub fn is_root(&self) -> bool {
        self.0.parent.is_none()
    }

    /// Identity of the node within its tree.
    pub fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn ptr_eq(&self, other: &Node) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Root-to-node sequence of sides, recovered from parent links.
    pub fn path(&self) -> Vec<Side> {
        let mut path = Vec::with_capacity(self.generation() as usize);
        let mut cur = self;
        while let (Some(side), Some(parent)) = (cur.side(), cur.parent()) {
            path.push(side);
            cur = parent;
        }
        path.reverse();
        path
    }

    /// `name = ⟨...⟩ (gen g)`.
    pub fn describe(&self) -> String {
        format!(
            "{} = {} (gen {})",
            self.name(),
            self.form(),
            self.generation()
        )
    }

    fn child_slot(&self, side: Side) -> &OnceLock<Weak<NodeData>> {
        match side {
            Side::Left => &self.0.left,
            Side::Right => &self.0.right,
        }
    }
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other)
    }
}

impl Eq for Node {}

impl Hash for Node {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.id().hash(state);
    }
}

impl fmt::Debug for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Node({})", self.name())
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Name of the simplest dyadic strictly inside `(lo, hi)`, given that the
/// node was born into exactly that interval.
fn interval_name(lo: Option<&Dyadic>, hi: Option<&Dyadic>) -> Dyadic {
    let one = Dyadic::integer(1);
    match (lo, hi) {
        (None, None) => Dyadic::zero(),
        (Some(lo), None) => lo + &one,
        (None, Some(hi)) => hi - &one,
        (Some(lo), Some(hi)) => lo.midpoint(hi),
    }
}

/// The lazily built tree. Shareable across threads; concurrent requests
/// for the same child yield the same node.
pub struct Genealogy {
    root: Node,
    max_generation: u32,
    registry: Mutex<Vec<Node>>,
    built: AtomicU64,
}

impl Default for Genealogy {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Debug for Genealogy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Genealogy")
            .field("max_generation", &self.max_generation)
            .field("nodes_built", &self.nodes_built())
            .finish()
    }
}

impl Genealogy {
    pub fn new() -> Self {
        Self::with_max_generation(DEFAULT_MAX_GENERATION)
    }

    pub fn with_max_generation(max_generation: u32) -> Self {
        let root = Node(Arc::new(NodeData {
            form: Form::empty(),
            parent: None,
            side: None,
            generation: 0,
            name: Dyadic::zero(),
            lo: None,
            hi: None,
            left: OnceLock::new(),
            right: OnceLock::new(),
        }));
        Genealogy {
            root,
            max_generation,
            registry: Mutex::new(Vec::new()),
            built: AtomicU64::new(1),
        }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn max_generation(&self) -> u32 {
        self.max_generation
    }

    /// Number of nodes constructed so far, root included.
    pub fn nodes_built(&self) -> u64 {
        self.built.load(AtomicOrdering::Relaxed)
    }

    pub fn left_child(&self, n: &Node) -> Result<Node> {
        self.child(n, Side::Left)
    }

    pub fn right_child(&self, n: &Node) -> Result<Node> {
        self.child(n, Side::Right)
    }

    pub fn child(&self, n: &Node, side: Side) -> Result<Node> {
        let slot = n.child_slot(side);
        let weak = match slot.get() {
            Some(w) => w,
            None => {
                if n.generation() >= self.max_generation {
                    return Err(SurrealError::GenerationLimit {
                        limit: self.max_generation,
                    });
                }
                slot.get_or_init(|| {
                    let child = Self::build_child(n, side);
                    let weak = Arc::downgrade(&child.0);
                    self.registry
                        .lock()
                        .unwrap_or_else(|e| e.into_inner())
                        .push(child);
                    self.built.fetch_add(1, AtomicOrdering::Relaxed);
                    weak
                })
            }
        };
        Ok(Node(
            weak.upgrade().expect("genealogy registry owns every node"),
        ))
    }

    fn build_child(n: &Node, side: Side) -> Node {
        let me = Surreal::Node(n.clone());
        let (form, lo, hi) = match side {
            Side::Left => (
                Form::new(n.form().left.clone(), vec![me]),
                n.0.lo.clone(),
                Some(n.name().clone()),
            ),
            Side::Right => (
                Form::new(vec![me], n.form().right.clone()),
                Some(n.name().clone()),
                n.0.hi.clone(),
            ),
        };
        let name = interval_name(lo.as_ref(), hi.as_ref());
        Node(Arc::new(NodeData {
            form,
            parent: Some(n.clone()),
            side: Some(side),
            generation: n.generation() + 1,
            name,
            lo,
            hi,
            left: OnceLock::new(),
            right: OnceLock::new(),
        }))
    }

    /// Descends from the root comparing `x` against each node until an
    /// equal one is found: the node where `x`'s value was born.
    pub fn canonical(&self, x: &Surreal, order: &Order<'_>) -> Result<Node> {
        let mut s = self.root.clone();
        loop {
            s = match order.cmp(x, &Surreal::Node(s.clone()))? {
                Ordering::Less => self.left_child(&s)?,
                Ordering::Greater => self.right_child(&s)?,
                Ordering::Equal => return Ok(s),
            };
        }
    }

    pub fn path_of(&self, n: &Node) -> Vec<Side> {
        n.path()
    }

    pub fn node_at(&self, path: &[Side]) -> Result<Node> {
        let mut n = self.root.clone();
        for &side in path {
            n = self.child(&n, side)?;
        }
        Ok(n)
    }

    /// The node at the side-flipped path, i.e. the negation of `n`.
    pub fn mirror(&self, n: &Node) -> Result<Node> {
        let flipped: Vec<Side> = n.path().into_iter().map(Side::flip).collect();
        self.node_at(&flipped)
    }

    /// Finds the node named `d` by comparing dyadic names only.
    pub fn from_dyadic(&self, d: &Dyadic) -> Result<Node> {
        let mut n = self.root.clone();
        loop {
            n = match d.cmp(n.name()) {
                Ordering::Less => self.left_child(&n)?,
                Ordering::Greater => self.right_child(&n)?,
                Ordering::Equal => return Ok(n),
            };
        }
    }

    /// All nodes of generation `<= depth`, in order.
    pub fn in_order(&self, depth: u32) -> Result<Vec<Node>> {
        fn walk(t: &Genealogy, n: &Node, depth: u32, out: &mut Vec<Node>) -> Result<()> {
            if n.generation() < depth {
                walk(t, &t.left_child(n)?, depth, out)?;
            }
            out.push(n.clone());
            if n.generation() < depth {
                walk(t, &t.right_child(n)?, depth, out)?;
            }
            Ok(())
        }
        let mut out = Vec::new();
        walk(self, &self.root, depth, &mut out)?;
        Ok(out)
    }

    /// All nodes born in exactly generation `g`, in order.
    pub fn generation(&self, g: u32) -> Result<Vec<Node>> {
        Ok(self
            .in_order(g)?
            .into_iter()
            .filter(|n| n.generation() == g)
            .collect())
    }

    /// One line per node to `depth`, in order: `path<TAB>name<TAB>form`.
    pub fn dump(&self, depth: u32) -> Result<String> {
        let mut out = String::new();
        for n in self.in_order(depth)? {
            out.push_str(&dump_line(&n));
            out.push('\n');
        }
        Ok(out)
    }
}

pub fn dump_line(n: &Node) -> String {
    format!("{}\t{}\t{}", path_string(&n.path()), n.name(), n.form())
}

#[cfg(test)]
mod tests {
    use super::*;

    use Side::{Left as L, Right as R};

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn root_is_zero() {
        let t = Genealogy::new();
        let r = t.root();
        assert_eq!(r.form().to_string(), "⟨|⟩");
        assert_eq!(r.generation(), 0);
        assert_eq!(r.name(), &Dyadic::zero());
        assert!(r.parent().is_none() && r.side().is_none());
    }

    #[test]
    fn first_generations() {
        let t = Genealogy::new();
        let one = t.right_child(t.root()).unwrap();
        assert_eq!(one.form().to_string(), "⟨0|⟩");
        let minus_one = t.left_child(t.root()).unwrap();
        assert_eq!(minus_one.form().to_string(), "⟨|0⟩");
        assert_eq!(minus_one.name(), &d("-1"));
        let two = t.right_child(&one).unwrap();
        let half = t.left_child(&one).unwrap();
        assert_eq!(two.name(), &d("2"));
        assert_eq!(two.form().to_string(), "⟨1|⟩");
        assert_eq!(half.name(), &d("1/2"));
        assert_eq!(half.form().to_string(), "⟨0|1⟩");
        assert_eq!(half.generation(), 2);
    }

    #[test]
    fn paths_and_values() {
        let t = Genealogy::new();
        assert!(t.root().path().is_empty());
        assert_eq!(t.from_dyadic(&d("1/2")).unwrap().path(), vec![R, L]);
        assert_eq!(t.from_dyadic(&d("-2")).unwrap().path(), vec![L, L]);
        assert_eq!(t.node_at(&[R, L, R]).unwrap().name(), &d("3/4"));
        assert_eq!(t.from_dyadic(&d("-3")).unwrap().path(), vec![L, L, L]);
        assert!(t.from_dyadic(&Dyadic::zero()).unwrap().ptr_eq(t.root()));
    }

    #[test]
    fn children_are_built_once() {
        let t = Genealogy::new();
        let a = t.right_child(t.root()).unwrap();
        let built = t.nodes_built();
        let b = t.right_child(t.root()).unwrap();
        assert!(a.ptr_eq(&b));
        assert_eq!(t.nodes_built(), built);
    }

    #[test]
    fn generation_cap() {
        let t = Genealogy::with_max_generation(3);
        assert!(t.from_dyadic(&d("3")).is_ok());
        assert_eq!(
            t.from_dyadic(&d("4")),
            Err(SurrealError::GenerationLimit { limit: 3 })
        );
    }

    #[test]
    fn canonical_of_simple_forms() {
        let t = Genealogy::new();
        let order = Order::default();
        let one = t.from_dyadic(&d("1")).unwrap();
        let sum = Surreal::from(Form::new(
            vec![one.clone().into(), one.clone().into()],
            vec![],
        ));
        assert_eq!(t.canonical(&sum, &order).unwrap().name(), &d("2"));
        let zero = Surreal::from(Form::empty());
        assert!(t.canonical(&zero, &order).unwrap().ptr_eq(t.root()));
        let lo = t.from_dyadic(&d("1/2")).unwrap();
        let hi = t.from_dyadic(&d("3/2")).unwrap();
        let between = Surreal::from(Form::new(vec![lo.into()], vec![hi.into()]));
        assert!(t.canonical(&between, &order).unwrap().ptr_eq(&one));
    }

    #[test]
    fn dump_format() {
        let t = Genealogy::new();
        assert_eq!(t.dump(1).unwrap(), "L\t-1\t⟨|0⟩\n.\t0\t⟨|⟩\nR\t1\t⟨0|⟩\n");
        let names: Vec<String> = t
            .in_order(2)
            .unwrap()
            .iter()
            .map(|n| n.to_string())
            .collect();
        assert_eq!(names, ["-2", "-1", "-1/2", "0", "1/2", "1", "2"]);
    }

    #[test]
    fn concurrent_forcing_yields_one_node() {
        let t = Arc::new(Genealogy::new());
        let handles: Vec<_> = (0..8)
            .map(|_| {
                let t = Arc::clone(&t);
                std::thread::spawn(move || t.node_at(&[R, R, L, R, L]).unwrap().id())
            })
            .collect();
        let ids: Vec<usize> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(ids.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(t.nodes_built(), 6);
    }
}
