use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BooleanMatrix, DirectedGraph};

/// A set of positive integers whose indicator is eventually periodic.
///
/// `members[i]` is membership of `n = i + 1` for `n < preperiod + period`;
/// beyond that membership repeats with the period. The pair
/// `(preperiod, period)` is the least one describing the set, so equal sets
/// have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicSet {
    preperiod: usize,
    period: usize,
    members: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct EpsJson {
    preperiod: usize,
    period: usize,
    members: Vec<u8>,
}

impl Serialize for EventuallyPeriodicSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EpsJson {
            preperiod: self.preperiod,
            period: self.period,
            members: self.members.iter().map(|&b| b as u8).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EventuallyPeriodicSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = EpsJson::deserialize(d)?;
        if j.preperiod == 0 || j.period == 0 || j.members.len() != j.preperiod + j.period - 1 {
            return Err(serde::de::Error::custom("members must list n in [1, preperiod + period)"));
        }
        let bits: Vec<bool> = j.members.iter().map(|&b| b != 0).collect();
        Ok(EventuallyPeriodicSet::from_fn(j.preperiod, j.period, |n| bits[n - 1]))
    }
}

impl EventuallyPeriodicSet {
    /// Build from a membership function known to satisfy
    /// `f(n) = f(n + period)` for all `n >= preperiod`.
    pub fn from_fn(preperiod: usize, period: usize, f: impl Fn(usize) -> bool) -> Self {
        assert!(preperiod >= 1 && period >= 1);
        let horizon = preperiod + period;
        let raw: Vec<bool> = (1..horizon).map(&f).collect();
        let at = |n: usize| -> bool {
            if n < horizon {
                raw[n - 1]
            } else {
                raw[preperiod - 1 + (n - preperiod) % period]
            }
        };
        let periodic_with = |p: usize, from: usize| (from..from + period).all(|n| at(n) == at(n + p));
        let p = (1..=period)
            .filter(|d| period.is_multiple_of(*d))
            .find(|&d| periodic_with(d, preperiod))
            .unwrap();
        let mut rho = preperiod;
        while rho > 1 && at(rho - 1) == at(rho - 1 + p) {
            rho -= 1;
        }
        EventuallyPeriodicSet { preperiod: rho, period: p, members: (1..rho + p).map(at).collect() }
    }

    pub fn empty() -> Self {
        Self::from_fn(1, 1, |_| false)
    }

    pub fn all() -> Self {
        Self::from_fn(1, 1, |_| true)
    }

    /// `{m, 2m, 3m, ...}`.
    pub fn multiples(m: usize) -> Self {
        Self::from_fn(1, m, |n| n % m == 0)
    }

    pub fn preperiod(&self) -> usize {
        self.preperiod
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn contains(&self, n: usize) -> bool {
        assert!(n >= 1, "spectra contain positive integers only");
        if n < self.preperiod + self.period {
            self.members[n - 1]
        } else {
            self.members[self.preperiod - 1 + (n - self.preperiod) % self.period]
        }
    }

    pub fn is_empty(&self) -> bool {
        self.members.iter().all(|&b| !b)
    }

    /// Least member, if any.
    pub fn min(&self) -> Option<usize> {
        self.members.iter().position(|&b| b).map(|i| i + 1)
    }

    /// Members below `bound`.
    pub fn members_below(&self, bound: usize) -> impl Iterator<Item = usize> + '_ {
        (1..bound).filter(|&n| self.contains(n))
    }
}

impl fmt::Debug for EventuallyPeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for EventuallyPeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        let shown: Vec<String> =
            self.members_below(self.preperiod + 2 * self.period).map(|n| n.to_string()).collect();
        write!(f, "{{{}, ...}}", shown.join(", "))
    }
}

/// Exact period spectrum of the vertex shift: `n` is a member iff the
/// boolean power `B^n` has a nonzero diagonal.
pub fn per_spectrum(g: &DirectedGraph) -> EventuallyPeriodicSet {
    if g.is_empty() {
        return EventuallyPeriodicSet::empty();
    }
    let b = g.matrix();
    let mut seen: HashMap<BooleanMatrix, usize> = HashMap::new();
    let mut traces = Vec::new();
    let mut power = b.clone();
    let mut n = 1;
    let (rho, p) = loop {
        if let Some(&first) = seen.get(&power) {
            break (first, n - first);
        }
        traces.push(power.trace_nonzero());
        let next = power.mul(b);
        seen.insert(power, n);
        power = next;
        n += 1;
    };
    EventuallyPeriodicSet::from_fn(rho, p, |n| traces[n - 1])
}

/// Least `n` in `a` but not in `b`.
pub fn per_subset_witness(a: &EventuallyPeriodicSet, b: &EventuallyPeriodicSet) -> Option<usize> {
    let horizon = a.preperiod.max(b.preperiod) + lcm(a.period, b.period);
    (1..horizon).find(|&n| a.contains(n) && !b.contains(n))
}

pub fn per_subset(a: &EventuallyPeriodicSet, b: &EventuallyPeriodicSet) -> bool {
    per_subset_witness(a, b).is_none()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn spectrum_examples() {
        assert_eq!(per_spectrum(&catalog::single_loop()), EventuallyPeriodicSet::all());
        assert_eq!(per_spectrum(&catalog::two_cycle()), EventuallyPeriodicSet::multiples(2));
        let s = per_spectrum(&catalog::two_three_cycles());
        assert_eq!(s, EventuallyPeriodicSet::from_fn(2, 1, |n| n >= 2));
        assert!(!s.contains(1));
        assert_eq!((s.preperiod(), s.period()), (2, 1));
    }

    #[test]
    fn subset_examples() {
        let all = EventuallyPeriodicSet::all();
        let evens = EventuallyPeriodicSet::multiples(2);
        let from2 = per_spectrum(&catalog::two_three_cycles());
        assert!(per_subset(&evens, &all));
        assert_eq!(per_subset_witness(&all, &from2), Some(1));
        assert!(per_subset(&EventuallyPeriodicSet::empty(), &evens));
    }

    #[test]
    fn canonical_representation() {
        let a = EventuallyPeriodicSet::from_fn(5, 4, |n| n % 2 == 0);
        assert_eq!(a, EventuallyPeriodicSet::multiples(2));
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(j, r#"{"preperiod":1,"period":2,"members":[0,1]}"#);
        let back: EventuallyPeriodicSet = serde_json::from_str(&j).unwrap();
        assert_eq!(back, a);
    }
}
