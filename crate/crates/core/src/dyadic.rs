//! Exact dyadic rationals `num * 2^(-exp)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// The value `num * 2^(-exp)`, kept in canonical form: the numerator is odd,
/// or the numerator is zero and the exponent is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "RawDyadic")]
pub struct Dyadic {
    num: i64,
    exp: i32,
}

#[derive(Deserialize)]
struct RawDyadic {
    num: i64,
    exp: i32,
}

impl From<RawDyadic> for Dyadic {
    fn from(r: RawDyadic) -> Self {
        Dyadic::new(r.num, r.exp)
    }
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    pub fn new(mut num: i64, mut exp: i32) -> Self {
        if num == 0 {
            return Dyadic::ZERO;
        }
        while num % 2 == 0 {
            num /= 2;
            exp -= 1;
        }
        Dyadic { num, exp }
    }

    /// `2^(-t)`.
    pub fn pow2_neg(t: i32) -> Self {
        Dyadic { num: 1, exp: t }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn exp(&self) -> i32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    /// Halve the value exactly.
    pub fn half(&self) -> Self {
        if self.num == 0 {
            *self
        } else {
            Dyadic { num: self.num, exp: self.exp + 1 }
        }
    }

    /// If the value is a power of two `2^(-t)`, return `t`.
    pub fn neg_log2(&self) -> Option<i32> {
        (self.num == 1).then_some(self.exp)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 * (2f64).powi(-self.exp)
    }

    fn aligned(a: Dyadic, b: Dyadic) -> (i128, i128, i32) {
        let e = a.exp.max(b.exp);
        let sa = (e - a.exp) as u32;
        let sb = (e - b.exp) as u32;
        assert!(sa < 100 && sb < 100, "dyadic exponents too far apart");
        ((a.num as i128) << sa, (b.num as i128) << sb, e)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.num == 0 || other.num == 0 || self.num.signum() != other.num.signum() {
            return self.num.signum().cmp(&other.num.signum());
        }
        let (a, b, _) = Dyadic::aligned(*self, *other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        if self.num == 0 {
            return rhs;
        }
        if rhs.num == 0 {
            return self;
        }
        let (a, b, mut e) = Dyadic::aligned(self, rhs);
        let mut s = a + b;
        if s == 0 {
            return Dyadic::ZERO;
        }
        while s % 2 == 0 {
            s /= 2;
            e -= 1;
        }
        Dyadic { num: i64::try_from(s).expect("dyadic numerator overflow"), exp: e }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp <= 0 {
            write!(f, "{}", (self.num as i128) << (-self.exp) as u32)
        } else if self.num == 1 {
            write!(f, "2^-{}", self.exp)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(Dyadic::new(4, 3), Dyadic::pow2_neg(1));
        assert_eq!(Dyadic::new(0, 7), Dyadic::ZERO);
        assert_eq!(Dyadic::new(6, 0), Dyadic::new(3, -1));
    }

    #[test]
    fn ordering_and_sum() {
        let a = Dyadic::pow2_neg(3);
        let b = Dyadic::pow2_neg(6);
        assert!(b < a);
        assert_eq!(a + b, Dyadic::new(9, 6));
        assert_eq!(a + a, Dyadic::pow2_neg(2));
        assert!(Dyadic::ZERO < b);
        assert_eq!(format!("{}", a + b), "9/2^6");
        assert_eq!(format!("{}", Dyadic::ONE), "1");
    }

    #[test]
    fn json_shape() {
        let d = Dyadic::new(9, 6);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"num":9,"exp":6}"#);
        let back: Dyadic = serde_json::from_str(r#"{"num":18,"exp":7}"#).unwrap();
        assert_eq!(back, d);
    }
}
