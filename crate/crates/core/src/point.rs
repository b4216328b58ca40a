//! Eventually periodic bi-infinite points `...LLL C RRR...`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sft::{DirectedGraph, Symbol};

/// The point `x` with `x[offset + i] = core[i]` for `0 <= i < core.len()`,
/// repeating `left` to the left of the core and `right` to its right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicPoint {
    left: Vec<Symbol>,
    core: Vec<Symbol>,
    right: Vec<Symbol>,
    offset: i64,
}

impl EventuallyPeriodicPoint {
    pub fn new(left: Vec<Symbol>, core: Vec<Symbol>, right: Vec<Symbol>) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::input("periodic tails must be nonempty"));
        }
        Ok(EventuallyPeriodicPoint { left, core, right, offset: 0 })
    }

    pub fn periodic(block: Vec<Symbol>) -> Result<Self> {
        Self::new(block.clone(), Vec::new(), block)
    }

    pub fn left(&self) -> &[Symbol] {
        &self.left
    }

    pub fn core(&self) -> &[Symbol] {
        &self.core
    }

    pub fn right(&self) -> &[Symbol] {
        &self.right
    }

    /// Position of `core[0]`.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn at(&self, p: i64) -> Symbol {
        let i = p - self.offset;
        if i < 0 {
            let l = self.left.len() as i64;
            self.left[(i.rem_euclid(l)) as usize]
        } else if (i as usize) < self.core.len() {
            self.core[i as usize]
        } else {
            let r = self.right.len() as i64;
            self.right[((i - self.core.len() as i64).rem_euclid(r)) as usize]
        }
    }

    /// Symbols at positions `from..to`.
    pub fn window(&self, from: i64, to: i64) -> Vec<Symbol> {
        (from..to).map(|p| self.at(p)).collect()
    }

    /// The shifted point `σ^t x`, i.e. `(σ^t x)[p] = x[p + t]`.
    pub fn shift(&self, t: i64) -> Self {
        let mut s = self.clone();
        s.offset -= t;
        s
    }

    /// First and one-past-last position of the core.
    pub fn core_range(&self) -> (i64, i64) {
        (self.offset, self.offset + self.core.len() as i64)
    }

    /// All transitions, including the periodic wrap-arounds, are edges.
    pub fn is_admissible(&self, g: &DirectedGraph) -> bool {
        let (a, b) = self.core_range();
        let span = self.window(a - 2 * self.left.len() as i64, b + 2 * self.right.len() as i64);
        g.is_path(&span)
    }

    pub fn render(&self, g: &DirectedGraph) -> String {
        format!(
            "({})^inf [{}] ({})^inf @{}",
            g.render_word(&self.left),
            g.render_word(&self.core),
            g.render_word(&self.right),
            self.offset
        )
    }

    pub fn to_json(&self, g: &DirectedGraph) -> PointJson {
        PointJson {
            left: g.render_word(&self.left),
            core: g.render_word(&self.core),
            right: g.render_word(&self.right),
            offset: self.offset,
        }
    }

    pub fn from_json(j: &PointJson, g: &DirectedGraph) -> Result<Self> {
        let mut p = Self::new(g.parse_word(&j.left)?, g.parse_word(&j.core)?, g.parse_word(&j.right)?)?;
        p.offset = j.offset;
        if !p.is_admissible(g) {
            return Err(Error::input("point is not admissible"));
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub left: String,
    pub core: String,
    pub right: String,
    pub offset: i64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn positions_and_shift() {
        let g = catalog::golden_mean();
        let p = EventuallyPeriodicPoint::new(vec![0], vec![1], vec![0, 1]).unwrap();
        assert!(p.is_admissible(&g));
        assert_eq!(g.render_word(&p.window(-2, 5)), "aababab");
        let q = p.shift(1);
        assert_eq!(q.at(-1), p.at(0));
        assert_eq!(q.window(-3, 4), p.window(-2, 5));
        let bad = EventuallyPeriodicPoint::new(vec![1], vec![], vec![0]).unwrap();
        assert!(!bad.is_admissible(&g));
    }
}
