//! Rank-greedy marking.
//!
//! A position `p` is good when its block `x[p-k..=p+k]` has least period at
//! least `N`. Good positions are visited in increasing lexicographic order of
//! their blocks; `p` is selected unless a smaller selected good position lies
//! within distance `N - 1`. Two good positions closer than `N` never carry
//! equal blocks (that would make the block periodic with a period below `N`),
//! so the order is strict where it matters.
//!
//! On a finite word the rule is evaluated three-valued: positions whose
//! outcome depends on symbols outside the word are `Unknown`.

use super::Mark;
use crate::sft::Symbol;

/// `good[p]` for every `p` whose block lies inside the word, `None` elsewhere.
pub(crate) fn goodness(x: &[Symbol], n: usize, k: usize) -> Vec<Option<bool>> {
    let len = x.len();
    let mut good = vec![None; len];
    if len < 2 * k + 1 {
        return good;
    }
    // next_defect[j][i]: least d >= i with x[d] != x[d + j], or usize::MAX
    let mut periodic_somewhere = vec![false; len];
    for j in 1..n {
        let mut next = usize::MAX;
        let mut nd = vec![usize::MAX; len + 1];
        for i in (0..len).rev() {
            if i + j < len && x[i] != x[i + j] {
                next = i;
            }
            nd[i] = next;
        }
        for p in k..len - k {
            // the block is j-periodic iff no defect in [p-k, p+k-j]
            if j <= 2 * k && nd[p - k] > p + k - j {
                periodic_somewhere[p] = true;
            }
        }
    }
    for p in k..len - k {
        good[p] = Some(!periodic_somewhere[p]);
    }
    good
}

/// Ranks of all substrings of length `2^level` by prefix doubling; returns
/// the level used and the rank table for that level.
fn doubling_ranks(x: &[Symbol], target: usize) -> (usize, Vec<u32>) {
    let len = x.len();
    let mut rank: Vec<u32> = x.iter().map(|&s| s as u32).collect();
    let mut width = 1;
    while width * 2 <= target {
        let count = len + 1 - width * 2;
        let mut idx: Vec<usize> = (0..count).collect();
        let key = |i: usize| (rank[i], rank[i + width]);
        idx.sort_unstable_by_key(|&i| key(i));
        let mut next = vec![0u32; count];
        let mut r = 0;
        for t in 0..count {
            if t > 0 && key(idx[t]) != key(idx[t - 1]) {
                r += 1;
            }
            next[idx[t]] = r;
        }
        rank = next;
        width *= 2;
    }
    (width, rank)
}

/// Three-valued marks of every position of `x`.
pub(crate) fn marks(x: &[Symbol], n: usize, k: usize) -> Vec<Mark> {
    let len = x.len();
    let block = 2 * k + 1;
    let mut out = vec![Mark::Unknown; len];
    if len < block {
        return out;
    }
    let good = goodness(x, n, k);
    let (width, rank) = doubling_ranks(x, block);
    let key = |p: usize| (rank[p - k], rank[p + k + 1 - width]);
    let mut order: Vec<usize> = (k..len - k).filter(|&p| good[p] == Some(true)).collect();
    order.sort_unstable_by_key(|&p| key(p));
    for p in k..len - k {
        if good[p] == Some(false) {
            out[p] = Mark::No;
        }
    }
    for &p in &order {
        let kp = key(p);
        let mut unknown = false;
        let mut blocked = false;
        let lo = p.saturating_sub(n - 1);
        let hi = (p + n - 1).min(len - 1);
        for q in lo..=hi {
            if q == p {
                continue;
            }
            match good.get(q).copied().flatten() {
                Some(false) => {}
                Some(true) => {
                    if key(q) < kp {
                        match out[q] {
                            Mark::Yes => blocked = true,
                            Mark::Unknown => unknown = true,
                            Mark::No => {}
                        }
                    }
                }
                None => {
                    // block of q leaves the word; on the right a strictly
                    // larger visible prefix still decides the comparison
                    if q + k >= len && q >= k {
                        let seen = &x[q - k..];
                        let mine = &x[p - k..p - k + seen.len()];
                        if seen > mine {
                            continue;
                        }
                    }
                    unknown = true;
                }
            }
        }
        out[p] = if blocked {
            Mark::No
        } else if unknown {
            Mark::Unknown
        } else {
            Mark::Yes
        };
    }
    // a position marked No only because of a smaller selected neighbour is
    // final; Unknown propagates only through the rank order, which the loop
    // above respects
    out
}
