use serde::{Deserialize, Serialize};

use super::MixingConstants;
use crate::error::{Error, Result};
use crate::sft::{DirectedGraph, Symbol};
use crate::verdict::Verdict;

/// Connecting words `Ψ(v, v', l)` of length `l ∈ [N-1, 2N-2]` such that
/// `v Ψ(v, v', l) v'` is a path, each containing `w0`.
///
/// `Ψ(v, v', l) = lead[v] w0 G_1 ... G_m route[G_m][v']`: `lead[v]` leads
/// from `v` to `w0` along a lexicographically least shortest path, `G` is
/// the walk from the end of `w0` that always takes the least successor, and
/// `route[z][v']` is the lexicographically least path of exactly `n` edges
/// from `z` to `v'`. `m` absorbs the remaining length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiTable {
    n: usize,
    big_n: usize,
    w0: Vec<Symbol>,
    lead: Vec<Vec<Symbol>>,
    greedy: Vec<Symbol>,
    route: Vec<Vec<Vec<Symbol>>>,
}

pub fn build_psi(sigma: &DirectedGraph, c: &MixingConstants) -> Result<PsiTable> {
    if !sigma.is_path(&c.w0) || c.w0.is_empty() {
        return Err(Error::input("w0 must be a nonempty path of the target"));
    }
    let (n, big_n) = (c.n, c.big_n);
    let start = c.w0[0];
    let lead = sigma
        .vertices()
        .map(|v| {
            let p = sigma.shortest_path(v, start, 1).ok_or_else(|| Error::input("target is not strongly connected"))?;
            Ok(p[1..p.len() - 1].to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut greedy = Vec::with_capacity(2 * big_n);
    let mut cur = *c.w0.last().unwrap();
    for _ in 0..2 * big_n {
        cur = sigma.successors(cur)[0];
        greedy.push(cur);
    }
    let mut route = vec![vec![Vec::new(); sigma.len()]; sigma.len()];
    for t in sigma.vertices() {
        let reach = sigma.exact_reach_to(t, n + 1);
        for z in sigma.vertices() {
            if !reach[n][z as usize] {
                return Err(Error::input(format!("no path of {n} edges between every pair of target vertices")));
            }
            let mut walk = Vec::with_capacity(n - 1);
            let mut cur = z;
            for left in (1..n).rev() {
                cur = *sigma.successors(cur).iter().find(|&&s| reach[left][s as usize]).unwrap();
                walk.push(cur);
            }
            route[z as usize][t as usize] = walk;
        }
    }
    Ok(PsiTable { n, big_n, w0: c.w0.clone(), lead, greedy, route })
}

impl PsiTable {
    pub fn lengths(&self) -> std::ops::RangeInclusive<usize> {
        self.big_n - 1..=2 * self.big_n - 2
    }

    fn parts(&self, v: Symbol, l: usize) -> (&[Symbol], usize, Symbol) {
        assert!(self.lengths().contains(&l), "connecting length {l} out of range");
        let lead = &self.lead[v as usize];
        let s = l - self.w0.len() - lead.len();
        let m = s + 1 - self.n;
        (lead, m, self.greedy[m - 1])
    }

    /// Symbol `idx` of `Ψ(v, t, l)`, without building the word.
    pub fn at(&self, v: Symbol, t: Symbol, l: usize, idx: usize) -> Symbol {
        let (lead, m, z) = self.parts(v, l);
        let mut i = idx;
        if i < lead.len() {
            return lead[i];
        }
        i -= lead.len();
        if i < self.w0.len() {
            return self.w0[i];
        }
        i -= self.w0.len();
        if i < m {
            return self.greedy[i];
        }
        self.route[z as usize][t as usize][i - m]
    }

    pub fn word(&self, v: Symbol, t: Symbol, l: usize) -> Vec<Symbol> {
        let (lead, m, z) = self.parts(v, l);
        let mut out = lead.to_vec();
        out.extend_from_slice(&self.w0);
        out.extend_from_slice(&self.greedy[..m]);
        out.extend_from_slice(&self.route[z as usize][t as usize]);
        out
    }

    /// Offset of `w0` inside `Ψ(v, ·, ·)`.
    pub fn w0_offset(&self, v: Symbol) -> usize {
        self.lead[v as usize].len()
    }

    /// Every building block is a path and every junction is an edge, which
    /// makes `v Ψ(v, v', l) v'` a path for all arguments.
    pub fn verify(&self, sigma: &DirectedGraph) -> Verdict {
        let fail = |what: String| Verdict::Failed { witness: what };
        if !sigma.is_path(&self.w0) {
            return fail("w0 is not a path".into());
        }
        for v in sigma.vertices() {
            let lead = &self.lead[v as usize];
            let mut p = vec![v];
            p.extend_from_slice(lead);
            p.push(self.w0[0]);
            if !sigma.is_path(&p) || lead.len() + 1 > self.n {
                return fail(format!("lead from {} is not a short path", sigma.name(v)));
            }
        }
        let mut g = vec![*self.w0.last().unwrap()];
        g.extend_from_slice(&self.greedy);
        if !sigma.is_path(&g) || self.greedy.len() < 2 * self.big_n {
            return fail("greedy walk is not a path".into());
        }
        for z in sigma.vertices() {
            for t in sigma.vertices() {
                let mut p = vec![z];
                p.extend_from_slice(&self.route[z as usize][t as usize]);
                p.push(t);
                if p.len() != self.n + 1 || !sigma.is_path(&p) {
                    return fail(format!("route {} -> {} is not a path of {} edges", sigma.name(z), sigma.name(t), self.n));
                }
            }
        }
        Verdict::structural("lead, w0, greedy walk and routes are paths with matching junctions")
    }

    /// Check `v Ψ(v, v', l) v'` for every entry of the table.
    pub fn verify_all(&self, sigma: &DirectedGraph) -> Verdict {
        let mut checked = 0;
        for v in sigma.vertices() {
            for t in sigma.vertices() {
                for l in self.lengths() {
                    let w = self.word(v, t, l);
                    let mut p = vec![v];
                    p.extend_from_slice(&w);
                    p.push(t);
                    checked += 1;
                    let ok = w.len() == l
                        && sigma.is_path(&p)
                        && crate::words::find(&w, &self.w0).is_some()
                        && (0..l).all(|i| self.at(v, t, l, i) == w[i]);
                    if !ok {
                        return Verdict::Failed {
                            witness: format!("Ψ({}, {}, {l}) = {}", sigma.name(v), sigma.name(t), sigma.render_word(&w)),
                        };
                    }
                }
            }
        }
        Verdict::Exhaustive { checked }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::factor::choose_constants;

    #[test]
    fn complete_graph_entry() {
        let g = catalog::full_shift();
        let c = choose_constants(&g, &[g.parse_word("ab").unwrap()]).unwrap();
        let psi = build_psi(&g, &c).unwrap();
        let w = psi.word(0, 1, 3);
        assert_eq!(w.len(), 3);
        assert!(psi.verify(&g).holds());
        assert!(matches!(psi.verify_all(&g), Verdict::Exhaustive { checked: 16 }));
    }

    #[test]
    fn golden_mean_entries_avoid_bb() {
        let g = catalog::golden_mean();
        let c = choose_constants(&g, &[g.parse_word("ab").unwrap(), g.parse_word("ba").unwrap()]).unwrap();
        let psi = build_psi(&g, &c).unwrap();
        for l in psi.lengths() {
            let w = psi.word(1, 1, l);
            assert!(!g.render_word(&w).contains("bb"));
            assert_ne!(w[0], 1);
            assert_ne!(w[l - 1], 1);
        }
        assert!(matches!(psi.verify_all(&g), Verdict::Exhaustive { .. }));
    }

    #[test]
    fn larger_targets() {
        for g in [catalog::loop_and_triangle(), catalog::full_shift_3(), catalog::loop_with_cycle(3)] {
            let w = crate::sft::words(&g, 3);
            let c = choose_constants(&g, &w).unwrap();
            let psi = build_psi(&g, &c).unwrap();
            assert!(psi.verify(&g).holds());
            assert!(psi.verify_all(&g).holds());
        }
    }
}
