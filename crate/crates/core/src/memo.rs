//! Lazy trees that mirror the genealogy tree, and the operation tables
//! built from them.
//!
//! An operation table is a tree of trees: the outer tree is indexed by the
//! first operand's position in the genealogy tree, each of its cells holds
//! an inner tree indexed by the second operand, and each inner cell holds
//! the canonical result once it has been computed.

use std::cell::OnceCell;

use crate::genealogy::{Node, Side};

/// A lazily grown binary tree with one write-once cell per position.
pub struct LazyTree<T> {
    cell: OnceCell<T>,
    left: OnceCell<Box<LazyTree<T>>>,
    right: OnceCell<Box<LazyTree<T>>>,
}

impl<T> Default for LazyTree<T> {
    fn default() -> Self {
        LazyTree {
            cell: OnceCell::new(),
            left: OnceCell::new(),
            right: OnceCell::new(),
        }
    }
}

impl<T> LazyTree<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cell(&self) -> &OnceCell<T> {
        &self.cell
    }

    pub fn child(&self, side: Side) -> &LazyTree<T> {
        let slot = match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        };
        slot.get_or_init(|| Box::new(LazyTree::new()))
    }

    pub fn at(&self, path: &[Side]) -> &LazyTree<T> {
        path.iter().fold(self, |t, &side| t.child(side))
    }

    /// Positions materialised so far, whether or not their cell is filled.
    pub fn positions(&self) -> usize {
        1 + [&self.left, &self.right]
            .iter()
            .filter_map(|c| c.get())
            .map(|c| c.positions())
            .sum::<usize>()
    }

    fn fold_cells<A>(&self, acc: A, f: &mut impl FnMut(A, &T) -> A) -> A {
        let mut acc = match self.cell.get() {
            Some(v) => f(acc, v),
            None => acc,
        };
        for c in [&self.left, &self.right]
            .into_iter()
            .filter_map(|c| c.get())
        {
            acc = c.fold_cells(acc, f);
        }
        acc
    }
}

/// A table of results for one binary operation.
#[derive(Default)]
pub struct MemoTable {
    rows: LazyTree<LazyTree<Node>>,
}

impl MemoTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rows(&self) -> &LazyTree<LazyTree<Node>> {
        &self.rows
    }

    /// Number of `(x, y)` cells holding a result.
    pub fn filled_cells(&self) -> usize {
        self.rows.fold_cells(0, &mut |acc, row: &LazyTree<Node>| {
            acc + row.fold_cells(0, &mut |n, _| n + 1)
        })
    }

    /// Result stored for the operand paths, if computed.
    pub fn lookup(&self, x: &[Side], y: &[Side]) -> Option<Node> {
        self.rows.at(x).cell().get()?.at(y).cell().get().cloned()
    }
}
