use std::fmt;

/// Square bit matrix over the boolean semiring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanMatrix {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BooleanMatrix {
    pub fn zeros(n: usize) -> Self {
        let stride = n.div_ceil(64).max(1);
        BooleanMatrix { n, stride, bits: vec![0; n * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.stride + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    pub fn mul(&self, other: &BooleanMatrix) -> BooleanMatrix {
        assert_eq!(self.n, other.n);
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            let dst = i * self.stride;
            for j in 0..self.n {
                if self.get(i, j) {
                    for (d, s) in out.bits[dst..dst + self.stride].iter_mut().zip(other.row(j)) {
                        *d |= *s;
                    }
                }
            }
        }
        out
    }

    pub fn is_all_ones(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j)))
    }

    pub fn trace_nonzero(&self) -> bool {
        (0..self.n).any(|i| self.get(i, i))
    }
}

impl fmt::Debug for BooleanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: String = (0..self.n).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_definition() {
        let mut a = BooleanMatrix::zeros(70);
        for i in 0..70 {
            a.set(i, (i + 1) % 70, true);
        }
        let a2 = a.mul(&a);
        for i in 0..70 {
            for j in 0..70 {
                assert_eq!(a2.get(i, j), j == (i + 2) % 70);
            }
        }
        assert!(!a2.trace_nonzero());
        assert_eq!(BooleanMatrix::identity(70).mul(&a2), a2);
    }
}
