//! Diagonalization of integer matrices reduced modulo `n`.
//!
//! Only unimodular integer operations are used (swaps, `row += c*row`, and
//! 2x2 blocks of determinant 1 built from the extended gcd), so the diagonal
//! entries are the Smith invariants of the integer matrix up to units of
//! `Z/n`. That is all the cocycle computations need: kernels and cokernels
//! over `Z/n` depend only on `gcd(d_i, n)`.

use crate::arith::{ext_gcd, gcd};

/// Dense matrix over `Z/n`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub modulus: u64,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        Self {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(size: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(size, size, modulus);
        for i in 0..size {
            m.set(i, i, 1 % modulus);
        }
        m
    }

    pub fn from_columns(columns: &[Vec<u64>], rows: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(rows, columns.len(), modulus);
        for (j, col) in columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v % modulus);
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
        self.data[i * self.cols + j] = v % self.modulus;
    }

    /// Adds `v` (any integer) to entry `(i, j)`.
    pub fn add_int(&mut self, i: usize, j: usize, v: i64) {
        let n = self.modulus as i64;
        let cur = self.get(i, j) as i64;
        self.data[i * self.cols + j] = (cur + v).rem_euclid(n) as u64;
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let n = self.modulus;
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0u64, |acc, j| (acc + self.get(i, j) * v[j]) % n))
            .collect()
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = ModMatrix::zeros(self.rows, self.cols + other.cols, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Rows `(a, b) <- [[s, t], [u, v]] * (a, b)`.
    fn combine_rows(&mut self, a: usize, b: usize, [s, t, u, v]: [u64; 4]) {
        let n = self.modulus;
        for j in 0..self.cols {
            let x = self.get(a, j);
            let y = self.get(b, j);
            if x == 0 && y == 0 {
                continue;
            }
            self.data[a * self.cols + j] = (s * x + t * y) % n;
            self.data[b * self.cols + j] = (u * x + v * y) % n;
        }
    }

    /// Columns `(a, b) <- (s*a + t*b, u*a + v*b)`.
    fn combine_cols(&mut self, a: usize, b: usize, [s, t, u, v]: [u64; 4]) {
        let n = self.modulus;
        for i in 0..self.rows {
            let x = self.get(i, a);
            let y = self.get(i, b);
            if x == 0 && y == 0 {
                continue;
            }
            self.data[i * self.cols + a] = (s * x + t * y) % n;
            self.data[i * self.cols + b] = (u * x + v * y) % n;
        }
    }
}

/// Result of `P A Q = D` with `D` diagonal.
#[derive(Debug, Clone)]
pub struct Diagonalization {
    /// `D[i][i]` for `i < min(rows, cols)`, as representatives in `0..n`.
    pub diagonal: Vec<u64>,
    /// `P^{-1}`, when requested.
    pub p_inv: Option<ModMatrix>,
    /// `Q`, when requested.
    pub q: Option<ModMatrix>,
}

impl Diagonalization {
    /// Cokernel orders `gcd(d_i, n)` padded with `n` for the rows beyond the
    /// diagonal. Entry `i` is the order of the summand generated by
    /// `P^{-1} e_i`.
    pub fn cokernel_orders(&self, rows: usize, n: u64) -> Vec<u64> {
        (0..rows)
            .map(|i| gcd(self.diagonal.get(i).copied().unwrap_or(0), n))
            .collect()
    }
}

/// Unimodular 2x2 block sending `(x, y)` to `(gcd, 0)`, reduced mod `n`.
fn eliminator(x: u64, y: u64, n: u64) -> [u64; 4] {
    if y.is_multiple_of(x) {
        return [1, 0, (n - (y / x) % n) % n, 1];
    }
    let (g, s, t) = ext_gcd(x as i64, y as i64);
    let ni = n as i64;
    let r = |v: i64| v.rem_euclid(ni) as u64;
    [r(s), r(t), r(-(y as i64) / g), r(x as i64 / g)]
}

/// Inverse of the block `[[s, t], [u, v]]` (determinant 1).
fn inverse_block([s, t, u, v]: [u64; 4], n: u64) -> [u64; 4] {
    [v, (n - t) % n, (n - u) % n, s]
}

pub fn diagonalize(mut a: ModMatrix, want_p_inv: bool, want_q: bool) -> Diagonalization {
    let n = a.modulus;
    let mut p_inv = want_p_inv.then(|| ModMatrix::identity(a.rows, n));
    let mut q = want_q.then(|| ModMatrix::identity(a.cols, n));
    let limit = a.rows.min(a.cols);
    let mut diagonal = Vec::with_capacity(limit);

    for t in 0..limit {
        let Some((pi, pj)) = best_pivot(&a, t) else {
            diagonal.resize(limit, 0);
            break;
        };
        a.swap_rows(t, pi);
        if let Some(m) = p_inv.as_mut() {
            m.swap_cols(t, pi);
        }
        a.swap_cols(t, pj);
        if let Some(m) = q.as_mut() {
            m.swap_cols(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..a.rows {
                let y = a.get(i, t);
                if y == 0 {
                    continue;
                }
                let block = eliminator(a.get(t, t), y, n);
                a.combine_rows(t, i, block);
                if let Some(m) = p_inv.as_mut() {
                    // P^{-1} <- P^{-1} E^{-1}, acting on columns (t, i).
                    let [s2, t2, u2, v2] = inverse_block(block, n);
                    m.combine_cols(t, i, [s2, u2, t2, v2]);
                }
                changed = true;
            }
            for j in t + 1..a.cols {
                let y = a.get(t, j);
                if y == 0 {
                    continue;
                }
                let block = eliminator(a.get(t, t), y, n);
                a.combine_cols(t, j, block);
                if let Some(m) = q.as_mut() {
                    m.combine_cols(t, j, block);
                }
                changed = true;
            }
            let clean = (t + 1..a.rows).all(|i| a.get(i, t) == 0)
                && (t + 1..a.cols).all(|j| a.get(t, j) == 0);
            if clean || !changed {
                break;
            }
        }
        diagonal.push(a.get(t, t));
    }
    Diagonalization { diagonal, p_inv, q }
}

/// Nonzero entry in the trailing block with the smallest `gcd(entry, n)`.
fn best_pivot(a: &ModMatrix, t: usize) -> Option<(usize, usize)> {
    let n = a.modulus;
    let mut best: Option<(u64, usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j);
            if v == 0 {
                continue;
            }
            let g = gcd(v, n);
            if best.is_none_or(|(bg, _, _)| g < bg) {
                best = Some((g, i, j));
                if g == 1 {
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Generators of `{x : A x = 0}` over `Z/n`.
pub fn kernel_generators(a: &ModMatrix) -> Vec<Vec<u64>> {
    let n = a.modulus;
    let cols = a.cols;
    let rows = a.rows;
    let d = diagonalize(a.clone(), false, true);
    let q = d.q.expect("requested");
    let mut gens = Vec::new();
    for i in 0..cols {
        let mult = if i < rows.min(cols) {
            n / gcd(d.diagonal[i], n)
        } else {
            1
        };
        if mult % n == 0 {
            continue;
        }
        let v: Vec<u64> = q.column(i).iter().map(|&x| x * mult % n).collect();
        if v.iter().any(|&x| x != 0) {
            gens.push(v);
        }
    }
    gens
}
