//! Explicit marker windows from a satisfiability model.
//!
//! One variable per admissible `(2L+1)`-window. Windows whose central
//! `(2k+1)`-block is periodic with a period below `N` are forced false.
//! Conflict clauses forbid a window and its shift by `s < N` from both
//! being selected; coverage clauses demand a selected window at some offset
//! `|o| < N` of every word of length `2(L+N-1)+1` with a good centre.

use std::collections::{BTreeSet, HashMap};

use crate::sft::{DirectedGraph, Symbol};
use crate::words::least_period;

pub(crate) fn solve(g: &DirectedGraph, n: usize, k: usize, l: usize) -> Option<BTreeSet<Vec<Symbol>>> {
    let w = 2 * l + 1;
    let mut index: HashMap<Vec<Symbol>, i32> = HashMap::new();
    let mut windows: Vec<Vec<Symbol>> = Vec::new();
    let mut solver: cadical::Solver = cadical::Solver::new();
    g.for_each_word(w, |u| {
        windows.push(u.to_vec());
        index.insert(u.to_vec(), windows.len() as i32);
        true
    });
    for (i, u) in windows.iter().enumerate() {
        if least_period(&u[l - k..=l + k]) < n {
            solver.add_clause([-(i as i32 + 1)]);
        }
    }
    for s in 1..n {
        g.for_each_word(w + s, |u| {
            let a = index[&u[..w]];
            let b = index[&u[s..]];
            if a == b {
                solver.add_clause([-a]);
            } else {
                solver.add_clause([-a, -b]);
            }
            true
        });
    }
    let t = 2 * (l + n - 1) + 1;
    let centre = n - 1 + l;
    g.for_each_word(t, |u| {
        if least_period(&u[centre - k..=centre + k]) >= n {
            let mut clause: Vec<i32> = (0..2 * n - 1).map(|o| index[&u[o..o + w]]).collect();
            clause.sort_unstable();
            clause.dedup();
            solver.add_clause(clause);
        }
        true
    });
    match solver.solve() {
        Some(true) => Some(
            windows
                .into_iter()
                .enumerate()
                .filter(|(i, _)| solver.value(*i as i32 + 1) == Some(true))
                .map(|(_, u)| u)
                .collect(),
        ),
        _ => None,
    }
}
