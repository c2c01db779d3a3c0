//! Small dense integer matrices, used to check matrix identities exactly.

use std::ops::{Add, Mul, Sub};

use crate::bitset::BitMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn all_ones(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![1; n * n],
        }
    }

    pub fn from_bits(b: &BitMatrix) -> Self {
        let n = b.size();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in b.row_iter(i) {
                m.data[i * n + j] = 1;
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn scale(&self, c: i64) -> IntMatrix {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: i64, other: &IntMatrix) {
        if c == 0 {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.data[j * n + i] = self.data[i * n + j];
            }
        }
        t
    }

    /// First entry where the two matrices differ.
    pub fn first_difference(&self, other: &IntMatrix) -> Option<(usize, usize)> {
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|p| (p / self.n, p % self.n))
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let (a, b) = (self.n, other.n);
        let n = a * b;
        let mut out = Self::zeros(n);
        for i in 0..a {
            for j in 0..a {
                let x = self.get(i, j);
                if x == 0 {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out.data[(i * b + k) * n + j * b + l] = x * other.get(k, l);
                    }
                }
            }
        }
        out
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        let n = self.n;
        assert_eq!(n, rhs.n);
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            let row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for (o, b) in row.iter_mut().zip(&rhs.data[k * n..(k + 1) * n]) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        let mut out = self.clone();
        out.add_scaled(1, rhs);
        out
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        let mut out = self.clone();
        out.add_scaled(-1, rhs);
        out
    }
}
