//! Dense matrices over `Z/n` and their Smith form.
//!
//! Every entry is kept reduced in `[0, n)`, so elimination never grows
//! entries and fixed-width storage is exact. The modulus is limited to
//! `n < 2^32` so that a product of two residues fits in a `u64`.
//!
//! Over `Z/n` the Smith form `P·A·Q = D` has diagonal entries that are
//! divisors of `n`; a diagonal entry equal to `n` stands for zero.

use std::fmt;

use super::LinalgError;

/// Largest admissible modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 32;

pub(crate) fn check_modulus(n: u64) -> Result<(), LinalgError> {
    if n == 0 || n >= MAX_MODULUS {
        Err(LinalgError::BadModulus(n))
    } else {
        Ok(())
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Extended Euclid on non-negative inputs: `s·a + t·b = g = gcd(a, b)`.
pub(crate) fn ext_gcd(a: u64, b: u64) -> (u64, i64, i64) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_r as u64, old_s as i64, old_t as i64)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a % m, m);
    if g != 1 {
        return None;
    }
    Some(reduce_signed(s, m))
}

#[inline]
pub(crate) fn reduce_signed(x: i64, m: u64) -> u64 {
    (x as i128).rem_euclid(m as i128) as u64
}

#[inline]
fn mulm(a: u64, b: u64, n: u64) -> u64 {
    a * b % n
}

/// A unit `u` of `Z/n` with `u·a ≡ gcd(a, n) (mod n)`.
pub(crate) fn associate_unit(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let d = gcd(a, n);
    let m = n / d;
    let a1 = (a / d) % m;
    let base = inv_mod(a1, m).expect("a/gcd(a,n) is a unit modulo n/gcd(a,n)");
    let mut u = base;
    while gcd(u, n) != 1 {
        u += m;
    }
    debug_assert_eq!(mulm(u % n, a % n, n), d % n);
    u % n
}

/// Dense row-major matrix over `Z/n`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<u32>,
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ModMatrix {}x{} mod {} [", self.rows, self.cols, self.modulus)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        assert!((1..MAX_MODULUS).contains(&modulus), "modulus out of range");
        ModMatrix { rows, cols, modulus, data: vec![0; rows * cols] }
    }

    pub fn identity(size: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(size, size, modulus);
        for i in 0..size {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, modulus: u64, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(rows, cols, modulus);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = reduce_signed(f(i, j), modulus) as u32;
            }
        }
        m
    }

    /// Builds a matrix from signed rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>], modulus: u64) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, modulus, |i, j| rows[i][j])
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<u64>], modulus: u64) -> Self {
        let mut m = Self::zeros(rows, columns.len(), modulus);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j] as u64
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = (v % self.modulus) as u32;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: u64) {
        let n = self.modulus;
        let cur = self.get(i, j);
        self.set(i, j, (cur + v % n) % n);
    }

    pub fn row(&self, i: usize) -> Vec<u64> {
        self.data[i * self.cols..(i + 1) * self.cols].iter().map(|&x| x as u64).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.modulus);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        assert_eq!(self.modulus, other.modulus, "modulus mismatch in product");
        let n = self.modulus;
        let mut out = ModMatrix::zeros(self.rows, other.cols, n);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (x, &b) in acc.iter_mut().zip(orow) {
                    *x = (*x + a * b as u64) % n;
                }
            }
            for (j, &x) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = x as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        let n = self.modulus;
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a as u64 * (b % n)) % n)
            })
            .collect()
    }

    /// Same entries read modulo a divisor of the current modulus.
    pub fn reduce_to(&self, modulus: u64) -> ModMatrix {
        assert!(self.modulus.is_multiple_of(modulus), "new modulus must divide the old one");
        ModMatrix {
            rows: self.rows,
            cols: self.cols,
            modulus,
            data: self.data.iter().map(|&x| (x as u64 % modulus) as u32).collect(),
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.modulus, other.modulus);
        let cols = self.cols + other.cols;
        let mut out = ModMatrix::zeros(self.rows, cols, self.modulus);
        for i in 0..self.rows {
            out.data[i * cols..i * cols + self.cols].copy_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            out.data[i * cols + self.cols..(i + 1) * cols]
                .copy_from_slice(&other.data[i * other.cols..(i + 1) * other.cols]);
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.modulus, other.modulus);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        ModMatrix { rows: self.rows + other.rows, cols: self.cols, modulus: self.modulus, data }
    }

    /// Whether the matrix is invertible over `Z/n`.
    pub fn is_invertible(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        if self.modulus == 1 {
            return true;
        }
        let s = smith_mod(self, false, false);
        s.diag.iter().all(|&d| d == 1)
    }

    // Row/column primitives on the raw storage. `from` bounds the columns
    // (resp. rows) that may be nonzero, which lets elimination skip work.

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            self.data.swap(a * c + j, b * c + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        for i in 0..self.rows {
            self.data.swap(i * c + a, i * c + b);
        }
    }

    /// `row[dst] += f · row[src]` on columns `from..`.
    fn row_axpy(&mut self, dst: usize, src: usize, f: u64, from: usize) {
        let n = self.modulus;
        let f = f % n;
        if f == 0 {
            return;
        }
        let c = self.cols;
        let (d, s) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * c);
            (&mut lo[dst * c + from..(dst + 1) * c], &hi[from..c])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * c);
            (&mut hi[from..c], &lo[src * c + from..(src + 1) * c])
        };
        for (x, &y) in d.iter_mut().zip(s.iter()) {
            if y != 0 {
                *x = ((*x as u64 + f * y as u64) % n) as u32;
            }
        }
    }

    /// Same as `row_axpy` but only touching the listed columns.
    fn row_axpy_sparse(&mut self, dst: usize, src: usize, f: u64, support: &[usize]) {
        let n = self.modulus;
        let f = f % n;
        if f == 0 {
            return;
        }
        let c = self.cols;
        for &j in support {
            let y = self.data[src * c + j] as u64;
            let x = &mut self.data[dst * c + j];
            *x = ((*x as u64 + f * y) % n) as u32;
        }
    }

    /// `col[dst] += f · col[src]` on rows `from..`.
    fn col_axpy(&mut self, dst: usize, src: usize, f: u64, from: usize) {
        let n = self.modulus;
        let f = f % n;
        if f == 0 {
            return;
        }
        let c = self.cols;
        for i in from..self.rows {
            let y = self.data[i * c + src] as u64;
            if y != 0 {
                let x = &mut self.data[i * c + dst];
                *x = ((*x as u64 + f * y) % n) as u32;
            }
        }
    }

    fn scale_row(&mut self, i: usize, u: u64) {
        let n = self.modulus;
        let c = self.cols;
        for x in &mut self.data[i * c..(i + 1) * c] {
            *x = (*x as u64 * u % n) as u32;
        }
    }

    fn scale_col(&mut self, j: usize, u: u64) {
        let n = self.modulus;
        let c = self.cols;
        for i in 0..self.rows {
            let x = &mut self.data[i * c + j];
            *x = (*x as u64 * u % n) as u32;
        }
    }

    /// Rows `(a, b) ← M · (a, b)` for the 2×2 matrix `[[p, q], [r, s]]`.
    fn rows_2x2(&mut self, a: usize, b: usize, m: [u64; 4], from: usize) {
        let n = self.modulus;
        let c = self.cols;
        for j in from..c {
            let x = self.data[a * c + j] as u64;
            let y = self.data[b * c + j] as u64;
            if x == 0 && y == 0 {
                continue;
            }
            self.data[a * c + j] = ((m[0] * x + m[1] * y) % n) as u32;
            self.data[b * c + j] = ((m[2] * x + m[3] * y) % n) as u32;
        }
    }

    /// Columns `(a, b) ← (a, b) · [[p, q], [r, s]]`.
    fn cols_2x2(&mut self, a: usize, b: usize, m: [u64; 4], from: usize) {
        let n = self.modulus;
        let c = self.cols;
        for i in from..self.rows {
            let x = self.data[i * c + a] as u64;
            let y = self.data[i * c + b] as u64;
            if x == 0 && y == 0 {
                continue;
            }
            self.data[i * c + a] = ((x * m[0] + y * m[2]) % n) as u32;
            self.data[i * c + b] = ((x * m[1] + y * m[3]) % n) as u32;
        }
    }
}

/// Smith form over `Z/n`: `left · A · right = diag`.
#[derive(Clone, Debug)]
pub struct ModSmith {
    pub modulus: u64,
    /// `min(rows, cols)` entries, each a divisor of `n`, forming a divisibility
    /// chain; `n` encodes a zero diagonal entry.
    pub diag: Vec<u64>,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
    pub left: Option<ModMatrix>,
    pub left_inv: Option<ModMatrix>,
    pub right: Option<ModMatrix>,
    pub right_inv: Option<ModMatrix>,
}

impl ModSmith {
    /// Diagonal entry `i`, extended by `n` (zero) past `min(rows, cols)`.
    pub fn divisor(&self, i: usize) -> u64 {
        self.diag.get(i).copied().unwrap_or(self.modulus)
    }

    /// Solves `A·x = b` using the recorded transforms (both sides required).
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let p = self.left.as_ref().expect("solve needs the left transform");
        let q = self.right.as_ref().expect("solve needs the right transform");
        let n = self.modulus;
        let pb = p.mul_vec(b);
        let mut y = vec![0u64; q.rows()];
        for (i, &c) in pb.iter().enumerate() {
            let d = self.divisor(i);
            if i < y.len() && d != n {
                if c % d != 0 {
                    return None;
                }
                y[i] = c / d;
            } else if c != 0 {
                return None;
            }
        }
        Some(q.mul_vec(&y))
    }
}

struct Transforms {
    n: u64,
    left: Option<(ModMatrix, ModMatrix)>,
    right: Option<(ModMatrix, ModMatrix)>,
}

impl Transforms {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if let Some((p, pi)) = &mut self.left {
            p.swap_rows(a, b);
            pi.swap_cols(a, b);
        }
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        if let Some((q, qi)) = &mut self.right {
            q.swap_cols(a, b);
            qi.swap_rows(a, b);
        }
    }
    /// row[dst] += f row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, f: u64) {
        if let Some((p, pi)) = &mut self.left {
            p.row_axpy(dst, src, f, 0);
            pi.col_axpy(src, dst, self.n - f % self.n, 0);
        }
    }
    /// col[dst] += f col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, f: u64) {
        if let Some((q, qi)) = &mut self.right {
            q.col_axpy(dst, src, f, 0);
            qi.row_axpy(src, dst, self.n - f % self.n, 0);
        }
    }
    fn scale_row(&mut self, i: usize, u: u64) {
        if let Some((p, pi)) = &mut self.left {
            p.scale_row(i, u);
            pi.scale_col(i, inv_mod(u, self.n).expect("unit"));
        }
    }
    /// rows (a,b) ← M (a,b) with det M = 1; `inv` is M⁻¹.
    fn rows_2x2(&mut self, a: usize, b: usize, m: [u64; 4], inv: [u64; 4]) {
        if let Some((p, pi)) = &mut self.left {
            p.rows_2x2(a, b, m, 0);
            pi.cols_2x2(a, b, inv, 0);
        }
    }
    /// cols (a,b) ← (a,b) M with det M = 1; `inv` is M⁻¹.
    fn cols_2x2(&mut self, a: usize, b: usize, m: [u64; 4], inv: [u64; 4]) {
        if let Some((q, qi)) = &mut self.right {
            q.cols_2x2(a, b, m, 0);
            qi.rows_2x2(a, b, inv, 0);
        }
    }
}

/// Bezout data for `(a, b)`: returns `M = [[s, t], [-b', a']]` and its
/// inverse `[[a', -t], [b', s]]`, both reduced mod `n`, with `M·(a, b)ᵀ = (g, 0)ᵀ`.
fn bezout(a: u64, b: u64, n: u64) -> ([u64; 4], [u64; 4]) {
    let (g, s, t) = ext_gcd(a, b);
    let a1 = (a / g) % n;
    let b1 = (b / g) % n;
    let s = reduce_signed(s, n);
    let t = reduce_signed(t, n);
    let m = [s, t, (n - b1) % n, a1];
    let inv = [a1, (n - t) % n, b1, s];
    (m, inv)
}

/// Smith form of `a` over `Z/n`, optionally recording the row transform
/// (`left`, with inverse) and the column transform (`right`, with inverse).
pub fn smith_mod(a: &ModMatrix, track_left: bool, track_right: bool) -> ModSmith {
    let n = a.modulus;
    let (m, k) = (a.rows, a.cols);
    let mut w = a.clone();
    let mut tr = Transforms {
        n,
        left: track_left.then(|| (ModMatrix::identity(m, n), ModMatrix::identity(m, n))),
        right: track_right.then(|| (ModMatrix::identity(k, n), ModMatrix::identity(k, n))),
    };
    let steps = m.min(k);
    let mut diag = vec![n; steps];
    let mut rank = 0;

    // Ideal generated by a residue, i.e. gcd(a, n); small moduli use a table.
    let table: Option<Vec<u64>> = (n <= 1 << 16).then(|| (0..n).map(|x| gcd(x, n)).collect());
    let ideal = |x: u64| -> u64 {
        match &table {
            Some(t) => t[x as usize],
            None => gcd(x, n),
        }
    };

    if n > 1 {
        #[allow(clippy::needless_range_loop)]
        for t in 0..steps {
            let Some((pi, pj)) = find_pivot(&w, t, &ideal) else { break };
            w.swap_rows(t, pi);
            tr.swap_rows(t, pi);
            w.swap_cols(t, pj);
            tr.swap_cols(t, pj);
            normalize_pivot(&mut w, &mut tr, t);

            loop {
                clear_column(&mut w, &mut tr, t);
                if clear_row(&mut w, &mut tr, t) {
                    continue;
                }
                let d = w.get(t, t);
                if d != 1 {
                    if let Some(i) = first_non_divisible_row(&w, t, d) {
                        w.row_axpy(t, i, 1, t);
                        tr.row_axpy(t, i, 1);
                        continue;
                    }
                }
                break;
            }
            diag[t] = w.get(t, t);
            rank += 1;
        }
    } else {
        diag.iter_mut().for_each(|d| *d = 1);
    }

    let (left, left_inv) = match tr.left {
        Some((p, pi)) => (Some(p), Some(pi)),
        None => (None, None),
    };
    let (right, right_inv) = match tr.right {
        Some((q, qi)) => (Some(q), Some(qi)),
        None => (None, None),
    };
    ModSmith { modulus: n, diag, rank, left, left_inv, right, right_inv }
}

fn find_pivot(w: &ModMatrix, t: usize, ideal: &impl Fn(u64) -> u64) -> Option<(usize, usize)> {
    // A unit in column t avoids a column swap and is the common case.
    for i in t..w.rows {
        let x = w.get(i, t);
        if x != 0 && ideal(x) == 1 {
            return Some((i, t));
        }
    }
    let mut best: Option<(u64, usize, usize)> = None;
    for i in t..w.rows {
        let row = &w.data[i * w.cols + t..(i + 1) * w.cols];
        for (off, &x) in row.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let g = ideal(x as u64);
            if best.is_none_or(|(bg, _, _)| g < bg) {
                best = Some((g, i, t + off));
                if g == 1 {
                    return Some((i, t + off));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn normalize_pivot(w: &mut ModMatrix, tr: &mut Transforms, t: usize) {
    let n = w.modulus;
    let p = w.get(t, t);
    let d = gcd(p, n);
    if p != d {
        let u = associate_unit(p, n);
        w.scale_row(t, u);
        tr.scale_row(t, u);
    }
}

fn clear_column(w: &mut ModMatrix, tr: &mut Transforms, t: usize) {
    let n = w.modulus;
    let mut support = row_support(w, t);
    for i in t + 1..w.rows {
        let b = w.get(i, t);
        if b == 0 {
            continue;
        }
        let p = w.get(t, t);
        if b.is_multiple_of(p) {
            let f = n - (b / p) % n;
            w.row_axpy_sparse(i, t, f, &support);
            tr.row_axpy(i, t, f);
        } else {
            let (m, inv) = bezout(p, b, n);
            w.rows_2x2(t, i, m, t);
            tr.rows_2x2(t, i, m, inv);
            normalize_pivot(w, tr, t);
            support = row_support(w, t);
        }
    }
}

/// Clears row `t` right of the pivot. Returns true if a Bezout step made
/// column `t` nonzero below the pivot again.
fn clear_row(w: &mut ModMatrix, tr: &mut Transforms, t: usize) -> bool {
    let n = w.modulus;
    let mut dirty = false;
    for j in t + 1..w.cols {
        let b = w.get(t, j);
        if b == 0 {
            continue;
        }
        let p = w.get(t, t);
        if b.is_multiple_of(p) {
            let f = n - (b / p) % n;
            if dirty {
                w.col_axpy(j, t, f, t);
            } else {
                w.set(t, j, 0);
            }
            tr.col_axpy(j, t, f);
        } else {
            let (m, inv) = bezout(p, b, n);
            // Column form: (col_t, col_j) · Mᵀ sends (p, b) to (g, 0).
            let mt = [m[0], m[2], m[1], m[3]];
            let invt = [inv[0], inv[2], inv[1], inv[3]];
            w.cols_2x2(t, j, mt, t);
            tr.cols_2x2(t, j, mt, invt);
            let p2 = w.get(t, t);
            let d = gcd(p2, n);
            if p2 != d {
                let u = associate_unit(p2, n);
                w.scale_row(t, u);
                tr.scale_row(t, u);
            }
            dirty = true;
        }
    }
    dirty && (t + 1..w.rows).any(|i| w.get(i, t) != 0)
}

fn row_support(w: &ModMatrix, t: usize) -> Vec<usize> {
    (t..w.cols).filter(|&j| w.get(t, j) != 0).collect()
}

fn first_non_divisible_row(w: &ModMatrix, t: usize, d: u64) -> Option<usize> {
    (t + 1..w.rows).find(|&i| (t + 1..w.cols).any(|j| !w.get(i, j).is_multiple_of(d)))
}
