//! Dense linear algebra over the two-element field.
//!
//! Rows are packed into `u64` words. Elimination always pivots on the
//! leftmost available column so results are deterministic.

use std::fmt;

use super::LinError;

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A vector over 𝔽₂ stored as packed words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; words_for(len)] }
    }

    /// The `i`-th standard basis vector.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for F2 vector of length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for F2 vector of length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// In-place addition (XOR). Lengths must agree.
    pub fn add_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "F2 vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    fn first_one_from(&self, start: usize) -> Option<usize> {
        self.ones().find(|&i| i >= start)
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector[")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, "]")
    }
}

/// A dense `rows × cols` matrix over 𝔽₂.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    row_words: usize,
    bits: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let row_words = words_for(cols);
        Self { rows, cols, row_words, bits: vec![0; rows * row_words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// The inclusion of the first `cols` coordinates into `rows` coordinates.
    pub fn inclusion(rows: usize, cols: usize) -> Self {
        assert!(cols <= rows, "inclusion needs cols <= rows");
        let mut m = Self::zeros(rows, cols);
        for i in 0..cols {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from row-major 0/1 entries.
    pub fn from_flat(rows: usize, cols: usize, entries: &[u8]) -> Result<Self, LinError> {
        if entries.len() != rows * cols {
            return Err(LinError::Shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                match entries[r * cols + c] {
                    0 => {}
                    1 => m.set(r, c, true),
                    other => {
                        return Err(LinError::Shape(format!("entry {other} is not 0 or 1")));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, LinError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinError::Shape("ragged rows".into()));
        }
        let flat: Vec<u8> = rows.iter().flatten().copied().collect();
        Self::from_flat(rows.len(), cols, &flat)
    }

    pub fn from_columns(rows: usize, columns: &[F2Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.len(), rows, "column length mismatch");
            for r in v.ones() {
                m.set(r, c, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "({r},{c}) outside {}x{}", self.rows, self.cols);
        (self.bits[r * self.row_words + c / WORD] >> (c % WORD)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "({r},{c}) outside {}x{}", self.rows, self.cols);
        let idx = r * self.row_words + c / WORD;
        let mask = 1u64 << (c % WORD);
        if value {
            self.bits[idx] |= mask;
        } else {
            self.bits[idx] &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> F2Vector {
        let start = r * self.row_words;
        F2Vector { len: self.cols, words: self.bits[start..start + self.row_words].to_vec() }
    }

    pub fn column(&self, c: usize) -> F2Vector {
        let mut v = F2Vector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn to_flat(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.push(self.get(r, c) as u8);
            }
        }
        out
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let w = self.row_words;
        let (s, d) = (src * w, dst * w);
        for k in 0..w {
            let v = self.bits[s + k];
            self.bits[d + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.row_words;
        for k in 0..w {
            self.bits.swap(a * w + k, b * w + k);
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix, LinError> {
        if self.cols != other.rows {
            return Err(LinError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        let w = other.row_words;
        for r in 0..self.rows {
            for k in self.row(r).ones() {
                let src = k * w;
                let dst = r * w;
                for j in 0..w {
                    out.bits[dst + j] ^= other.bits[src + j];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &F2Vector) -> Result<F2Vector, LinError> {
        if v.len() != self.cols {
            return Err(LinError::Shape(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = F2Vector::zeros(self.rows);
        for r in 0..self.rows {
            let start = r * self.row_words;
            let parity = self.bits[start..start + self.row_words]
                .iter()
                .zip(&v.words)
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>();
            if parity % 2 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &F2Matrix) -> Result<F2Matrix, LinError> {
        if self.shape() != other.shape() {
            return Err(LinError::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
        Ok(out)
    }

    /// Reduced row echelon form in place; returns pivot columns in order.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(p, row);
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    self.xor_row_into(row, r);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Basis of the null space `{x : self·x = 0}`.
    pub fn kernel(&self) -> Vec<F2Vector> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = F2Vector::unit(self.cols, free);
            for (r, &p) in pivots.iter().enumerate() {
                if m.get(r, free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Result<Option<F2Matrix>, LinError> {
        if self.rows != self.cols {
            return Err(LinError::Shape(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = F2Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in self.row(r).ones() {
                aug.set(r, c, true);
            }
            aug.set(r, n + r, true);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Ok(None);
        }
        let mut inv = F2Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                if aug.get(r, n + c) {
                    inv.set(r, c, true);
                }
            }
        }
        Ok(Some(inv))
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Rank over 𝔽₂. The input is not modified.
pub fn f2_rank(m: &F2Matrix) -> usize {
    let mut work = m.clone();
    work.rref_in_place().len()
}

/// Finds some `x` with `a·x = b`, or `None` when `b` is not in the image of `a`.
pub fn f2_solve(a: &F2Matrix, b: &F2Vector) -> Result<Option<F2Vector>, LinError> {
    if b.len() != a.rows() {
        return Err(LinError::Shape(format!(
            "right-hand side has length {} but matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let (rows, cols) = a.shape();
    let mut aug = F2Matrix::zeros(rows, cols + 1);
    for r in 0..rows {
        for c in a.row(r).ones() {
            aug.set(r, c, true);
        }
        if b.get(r) {
            aug.set(r, cols, true);
        }
    }
    let pivots = aug.rref_in_place();
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = F2Vector::zeros(cols);
    for (r, &p) in pivots.iter().enumerate() {
        if aug.get(r, cols) {
            x.set(p, true);
        }
    }
    debug_assert_eq!(a.mul_vec(&x).ok().as_ref(), Some(b));
    Ok(Some(x))
}

/// Greedy extraction of a row-echelon basis, used for incremental span
/// computations where vectors arrive one at a time.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<(usize, F2Vector)>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        Self { len, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, v: &F2Vector) -> F2Vector {
        let mut v = v.clone();
        for (pivot, row) in &self.rows {
            if v.get(*pivot) {
                v.add_assign(row);
            }
        }
        v
    }

    /// Inserts `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: &F2Vector) -> bool {
        assert_eq!(v.len(), self.len, "echelon basis length mismatch");
        let v = self.reduce(v);
        match v.first_one_from(0) {
            None => false,
            Some(p) => {
                for (_, row) in self.rows.iter_mut() {
                    if row.get(p) {
                        row.add_assign(&v);
                    }
                }
                self.rows.push((p, v));
                true
            }
        }
    }

    /// Grows the ambient length, padding stored rows with zeros.
    pub fn extend_len(&mut self, new_len: usize) {
        assert!(new_len >= self.len);
        for (_, row) in self.rows.iter_mut() {
            let mut grown = F2Vector::zeros(new_len);
            for i in row.ones() {
                grown.set(i, true);
            }
            *row = grown;
        }
        self.len = new_len;
    }
}
