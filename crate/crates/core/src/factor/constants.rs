use serde::{Deserialize, Serialize};

use crate::error::{Error, Refusal, Result};
use crate::sft::{self, DirectedGraph, MixingVerdict, Symbol};
use crate::words;

/// `n`: paths of every length `>= n` join every ordered pair of vertices.
/// `w0` contains every word of `W`; `N = 2n + n0` with `n0 = |w0|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixingConstants {
    pub n: usize,
    pub w0: Vec<Symbol>,
    pub n0: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
}

pub fn choose_constants(sigma: &DirectedGraph, w: &[Vec<Symbol>]) -> Result<MixingConstants> {
    let n = match sft::is_mixing(sigma)? {
        MixingVerdict::Mixing { constant } => constant,
        MixingVerdict::NotMixing { obstruction } => return Err(Refusal::NotMixing { obstruction }.into()),
    };
    for u in w {
        if u.is_empty() || !sigma.is_path(u) {
            return Err(Error::input(format!("{} is not a word of the target", sigma.render_word(u))));
        }
    }
    let w0 = superword(sigma, w);
    for u in w {
        debug_assert!(words::find(&w0, u).is_some());
    }
    let n0 = w0.len();
    Ok(MixingConstants { n, w0, n0, big_n: 2 * n + n0 })
}

/// A path containing every word of `w`: words taken greedily by largest
/// overlap with what is built so far, otherwise by shortest connecting path,
/// ties broken lexicographically. The empty family gives the least vertex.
fn superword(g: &DirectedGraph, w: &[Vec<Symbol>]) -> Vec<Symbol> {
    let mut todo: Vec<Vec<Symbol>> = w.to_vec();
    todo.sort();
    todo.dedup();
    let all = todo.clone();
    todo.retain(|u| !all.iter().any(|v| v != u && v.len() > u.len() && words::find(v, u).is_some()));
    if todo.is_empty() {
        return vec![0];
    }
    let nv = g.len();
    // hop[s][t]: fewest edges (at least one) from s to t
    let dist: Vec<Vec<Option<usize>>> = g.vertices().map(|t| g.distances_to(t)).collect();
    let hop = |s: Symbol, t: Symbol| -> usize {
        g.successors(s)
            .iter()
            .filter_map(|&u| dist[t as usize][u as usize])
            .min()
            .map_or(usize::MAX, |d| d + 1)
    };
    debug_assert!(nv > 0);
    let mut out = todo.remove(0);
    while !todo.is_empty() {
        todo.retain(|u| words::find(&out, u).is_none());
        if todo.is_empty() {
            break;
        }
        let last = *out.last().unwrap();
        let best = (0..todo.len())
            .min_by_key(|&i| {
                let u = &todo[i];
                let ov = words::overlap(&out, u);
                let cost = if ov > 0 { 0 } else { hop(last, u[0]) };
                (std::cmp::Reverse(ov), cost, i)
            })
            .unwrap();
        let u = todo.remove(best);
        let ov = words::overlap(&out, &u);
        if ov > 0 {
            out.extend_from_slice(&u[ov..]);
        } else {
            let path = g.shortest_path(last, u[0], 1).expect("mixing graphs are strongly connected");
            out.extend_from_slice(&path[1..path.len() - 1]);
            out.extend_from_slice(&u);
        }
    }
    out
}
