//! Dense linear algebra over the prime field F_p, p a small prime.
//!
//! Everything here is exact. Matrices are row-major with entries reduced
//! mod p. This backs kernels of additive polynomials, composition
//! division, subfield projection and the point-count trace tests.

/// Row-major matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

/// Solution set of a linear system: one particular solution (if any)
/// together with a basis of the kernel.
#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub particular: Option<Vec<u64>>,
    pub kernel: Vec<Vec<u64>>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a != 0 mod p
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u64 = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl FpMat {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = FpMat::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_columns(p: u64, cols: &[Vec<u64>]) -> Self {
        let rows = cols.first().map_or(0, |c| c.len());
        let mut m = FpMat::zeros(p, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn transpose(&self) -> FpMat {
        let mut m = FpMat::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let p = self.p;
        (0..self.rows)
            .map(|i| {
                let mut acc: u128 = 0;
                for j in 0..self.cols {
                    acc += (self.get(i, j) as u128) * (v[j] as u128);
                }
                (acc % p as u128) as u64
            })
            .collect()
    }

    /// Reduced row echelon form of [self | rhs...]; returns pivot columns.
    fn rref(&mut self, rhs: Option<&mut Vec<u64>>) -> Vec<usize> {
        let p = self.p;
        let mut rhs = rhs;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let mut pivot = None;
            for i in r..self.rows {
                if self.get(i, c) != 0 {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(pi) = pivot else { continue };
            // swap rows r, pi
            if pi != r {
                for j in 0..self.cols {
                    let (a, b) = (self.get(r, j), self.get(pi, j));
                    self.set(r, j, b);
                    self.set(pi, j, a);
                }
                if let Some(rhs) = rhs.as_deref_mut() {
                    rhs.swap(r, pi);
                }
            }
            let inv = inv_mod(self.get(r, c), p);
            for j in 0..self.cols {
                let v = self.get(r, j) * inv % p;
                self.set(r, j, v);
            }
            if let Some(rhs) = rhs.as_deref_mut() {
                rhs[r] = rhs[r] * inv % p;
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) != 0 {
                    let f = self.get(i, c);
                    for j in 0..self.cols {
                        let v = (self.get(i, j) + (p - f) * self.get(r, j)) % p;
                        self.set(i, j, v);
                    }
                    if let Some(rhs) = rhs.as_deref_mut() {
                        rhs[i] = (rhs[i] + (p - f) * rhs[r]) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref(None).len()
    }

    /// Solve self * x = rhs over F_p, returning the full solution set.
    pub fn solve(&self, rhs: &[u64]) -> SolutionSet {
        assert_eq!(rhs.len(), self.rows);
        let mut m = self.clone();
        let mut b: Vec<u64> = rhs.iter().map(|&v| v % self.p).collect();
        let pivots = m.rref(Some(&mut b));
        // consistency: any zero row with nonzero rhs?
        for i in pivots.len()..self.rows {
            if b[i] != 0 {
                return SolutionSet { particular: None, kernel: self.kernel() };
            }
        }
        let mut x = vec![0u64; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = b[r];
        }
        SolutionSet { particular: Some(x), kernel: kernel_from_rref(&m, &pivots) }
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref(None);
        kernel_from_rref(&m, &pivots)
    }
}

fn kernel_from_rref(m: &FpMat, pivots: &[usize]) -> Vec<Vec<u64>> {
    let p = m.p;
    let mut basis = Vec::new();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    for free in 0..m.cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; m.cols];
        v[free] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = (p - m.get(r, free)) % p;
        }
        basis.push(v);
    }
    basis
}
