use std::sync::OnceLock;

use crate::error::{Error, Refusal, Result};
use crate::sft::{per_spectrum, per_subset_witness, DirectedGraph, Symbol};
use crate::words::{is_primitive, least_period, least_rotation};

const SEARCH_BUDGET: usize = 1 << 18;

/// Images of periodic stretches.
///
/// A stretch of least period `p < N` is sent to the closed walk `q_p` of
/// length `p` in the target, in phase with the least rotation of the
/// stretch's period word. Every orbit of least period `p` therefore goes to
/// the orbit of `q_p`, and the assignment commutes with the shift. `q_p` is
/// the lexicographically least closed walk of length `p` whose least period
/// is `p` when one is found within the search budget, else the least closed
/// walk of length `p`. Walks are computed on first use.
#[derive(Debug)]
pub struct PeriodicAssignment {
    sigma: DirectedGraph,
    big_n: usize,
    walks: Vec<OnceLock<Option<Vec<Symbol>>>>,
}

impl Clone for PeriodicAssignment {
    fn clone(&self) -> Self {
        PeriodicAssignment { sigma: self.sigma.clone(), big_n: self.big_n, walks: self.walks.clone() }
    }
}

/// Refuses when some period of `lambda` is missing from `sigma`.
pub fn assign_periodic(lambda: &DirectedGraph, sigma: &DirectedGraph, big_n: usize) -> Result<PeriodicAssignment> {
    if let Some(p) = per_subset_witness(&per_spectrum(lambda), &per_spectrum(sigma)) {
        return Err(Refusal::Percon { witness: p as u64 }.into());
    }
    Ok(PeriodicAssignment { sigma: sigma.clone(), big_n, walks: (0..big_n).map(|_| OnceLock::new()).collect() })
}

impl PeriodicAssignment {
    /// `q_p` for `1 <= p < N`, or `None` if the target has no closed walk of
    /// length `p`.
    pub fn walk(&self, p: usize) -> Option<&[Symbol]> {
        assert!(p >= 1 && p < self.big_n, "period {p} outside [1, N)");
        self.walks[p].get_or_init(|| choose_walk(&self.sigma, p)).as_deref()
    }

    /// Image of the centre of a block `b` of odd length `2k+1` whose least
    /// period is below `N`.
    pub fn image(&self, b: &[Symbol]) -> Result<Symbol> {
        let k = b.len() / 2;
        let p = least_period(b);
        if p >= self.big_n {
            return Err(Error::Verification(format!("block of least period {p} treated as periodic")));
        }
        let a = least_rotation(&b[..p]);
        let q = self.walk(p).ok_or_else(|| Error::Verification(format!("no closed walk of length {p} in the target")))?;
        Ok(q[(k + p - a % p) % p])
    }

    /// Image of the periodic point `r^∞` at positions `0..len` (with `r[0]`
    /// at position 0).
    pub fn image_of_orbit(&self, r: &[Symbol], len: usize) -> Result<Vec<Symbol>> {
        let p = least_period(r);
        let k = p.max(self.big_n);
        (0..len)
            .map(|t| {
                let b: Vec<Symbol> = (0..=2 * k).map(|i| r[(t + r.len() * (k + 1) + i - k) % r.len()]).collect();
                self.image(&b)
            })
            .collect()
    }
}

fn choose_walk(g: &DirectedGraph, p: usize) -> Option<Vec<Symbol>> {
    let mut budget = SEARCH_BUDGET;
    for s in g.vertices() {
        let reach = g.exact_reach_to(s, p + 1);
        if !reach[p][s as usize] {
            continue;
        }
        let mut walk = vec![s];
        if let Some(w) = primitive_from(g, &reach, p, &mut walk, &mut budget) {
            return Some(w);
        }
        if budget == 0 {
            break;
        }
    }
    // least closed walk of length p: least start, then least steps
    for s in g.vertices() {
        let reach = g.exact_reach_to(s, p + 1);
        if !reach[p][s as usize] {
            continue;
        }
        let mut walk = vec![s];
        let mut cur = s;
        for left in (1..p).rev() {
            cur = *g.successors(cur).iter().find(|&&t| reach[left][t as usize]).unwrap();
            walk.push(cur);
        }
        return Some(walk);
    }
    None
}

fn primitive_from(
    g: &DirectedGraph,
    reach: &[Vec<bool>],
    p: usize,
    walk: &mut Vec<Symbol>,
    budget: &mut usize,
) -> Option<Vec<Symbol>> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    if walk.len() == p {
        return is_primitive(walk).then(|| walk.clone());
    }
    let cur = *walk.last().unwrap();
    let left = p - walk.len();
    for &t in g.successors(cur) {
        if reach[left][t as usize] {
            walk.push(t);
            if let Some(w) = primitive_from(g, reach, p, walk, budget) {
                return Some(w);
            }
            walk.pop();
        }
    }
    None
}
