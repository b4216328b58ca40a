//! Combinatorics on finite words: periods, rotations, occurrences.

/// True iff `w[i] == w[i + j]` for every in-range `i`.
pub fn is_j_periodic<T: PartialEq>(w: &[T], j: usize) -> bool {
    assert!(j >= 1, "period must be positive");
    w.iter().zip(w.iter().skip(j)).all(|(a, b)| a == b)
}

/// Least `p >= 1` with `w` p-periodic; `w.len()` for primitive words.
/// Empty input returns 1.
pub fn least_period<T: PartialEq>(w: &[T]) -> usize {
    if w.is_empty() {
        return 1;
    }
    let fail = failure_function(w);
    w.len() - fail[w.len() - 1]
}

fn failure_function<T: PartialEq>(w: &[T]) -> Vec<usize> {
    let mut f = vec![0; w.len()];
    let mut k = 0;
    for i in 1..w.len() {
        while k > 0 && w[i] != w[k] {
            k = f[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        f[i] = k;
    }
    f
}

/// True iff the cyclic word `w` is not a proper power.
pub fn is_primitive<T: PartialEq>(w: &[T]) -> bool {
    let p = least_period(w);
    p == w.len() || !w.len().is_multiple_of(p)
}

/// Offset `a` such that `w[a..] ++ w[..a]` is the least rotation of `w`
/// (smallest such offset). Booth's algorithm.
pub fn least_rotation<T: Ord>(w: &[T]) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| &w[i % n];
    let mut f: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k % n
}

pub fn rotate<T: Clone>(w: &[T], a: usize) -> Vec<T> {
    if w.is_empty() {
        return Vec::new();
    }
    let a = a % w.len();
    w[a..].iter().chain(w[..a].iter()).cloned().collect()
}

/// First index at which `needle` occurs in `hay`.
pub fn find<T: PartialEq>(hay: &[T], needle: &[T]) -> Option<usize> {
    if needle.is_empty() {
        return Some(0);
    }
    if needle.len() > hay.len() {
        return None;
    }
    let fail = failure_function(needle);
    let mut k = 0;
    for (i, c) in hay.iter().enumerate() {
        while k > 0 && *c != needle[k] {
            k = fail[k - 1];
        }
        if *c == needle[k] {
            k += 1;
        }
        if k == needle.len() {
            return Some(i + 1 - k);
        }
    }
    None
}

/// Length of the longest proper suffix of `a` that is a prefix of `b`,
/// capped below `b.len()`.
pub fn overlap<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let max = a.len().min(b.len().saturating_sub(1));
    (1..=max).rev().find(|&o| a[a.len() - o..] == b[..o]).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_least_period(w: &[u8]) -> usize {
        (1..=w.len().max(1)).find(|&j| is_j_periodic(w, j)).unwrap()
    }

    #[test]
    fn periodicity_examples() {
        assert!(is_j_periodic(b"ababa", 2));
        assert!(is_j_periodic(b"aaaa", 1));
        assert!(!is_j_periodic(b"aab", 1));
        assert_eq!(least_period(b"abaab"), 3);
        assert_eq!(least_period(b"abab"), 2);
        assert!(is_primitive(b"aab"));
        assert!(!is_primitive(b"abab"));
        assert!(is_primitive(b"aba"));
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(least_rotation(b"bca"), 2);
        assert_eq!(least_rotation(b"baab"), 1);
        assert_eq!(rotate(b"bca", 2), b"abc".to_vec());
    }

    proptest! {
        #[test]
        fn least_period_matches_brute(w in proptest::collection::vec(0u8..3, 1..20)) {
            prop_assert_eq!(least_period(&w), brute_least_period(&w));
        }

        #[test]
        fn least_rotation_is_least(w in proptest::collection::vec(0u8..3, 1..12)) {
            let a = least_rotation(&w);
            let best = (0..w.len()).map(|i| rotate(&w, i)).min().unwrap();
            prop_assert_eq!(rotate(&w, a), best);
        }

        #[test]
        fn find_matches_windows(h in proptest::collection::vec(0u8..2, 0..30),
                                n in proptest::collection::vec(0u8..2, 1..5)) {
            let brute = h.windows(n.len()).position(|x| x == n.as_slice());
            prop_assert_eq!(find(&h, &n), brute);
        }
    }
}
