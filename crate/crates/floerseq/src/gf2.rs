//! Dense linear algebra over GF(2).
//!
//! Every linear map in the engine (the operators `∂_j`, the Laurent
//! differential, page differentials, Gysin maps) bottoms out in
//! [`BitMatrix`]. Matrices are bit-packed row-major into `u64` words and
//! all operations are exact and deterministic. Zero-row and zero-column
//! matrices are legal; they represent maps to or from the zero space.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid matrix literal: {0}")]
    BadLiteral(String),
}

/// Dense matrix over the field with two elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Parses row strings over the alphabet {'0','1'}. An `r x 0` matrix is
    /// `r` copies of the empty string.
    pub fn from_row_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self, Gf2Error> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zero(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != ncols {
                return Err(Gf2Error::BadLiteral(format!(
                    "row {i} has length {} but row 0 has length {ncols}",
                    row.len()
                )));
            }
            for (j, ch) in row.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => {
                        return Err(Gf2Error::BadLiteral(format!(
                            "row {i} contains {ch:?}, expected '0' or '1'"
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn to_row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| if self.get(i, j) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        let w = self.bits[i * self.words_per_row + j / 64];
        (w >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = &mut self.bits[i * self.words_per_row + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn row_xor(&mut self, dst: usize, src: usize) {
        let w = self.words_per_row;
        let (d, s) = (dst * w, src * w);
        for k in 0..w {
            let v = self.bits[s + k];
            self.bits[d + k] ^= v;
        }
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for k in 0..w {
            self.bits.swap(a * w + k, b * w + k);
        }
    }

    /// In-place reduced row echelon form. Returns the pivot column of each
    /// of the first `rank` rows, in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(i) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.row_swap(r, i);
            for j in 0..self.rows {
                if j != r && self.get(j, c) {
                    self.row_xor(j, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Columns form a basis of the kernel; count = cols - rank.
    pub fn kernel_basis(&self) -> BitMatrix {
        let mut m = self.clone();
        let pivots = m.rref();
        let is_pivot = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = BitMatrix::zero(self.cols, free.len());
        for (idx, &f) in free.iter().enumerate() {
            k.set(f, idx, true);
            for (row, &p) in pivots.iter().enumerate() {
                if m.get(row, f) {
                    k.set(p, idx, true);
                }
            }
        }
        k
    }

    /// Columns of the original matrix at the echelon pivot positions; they
    /// span the image and there are rank-many of them.
    pub fn image_basis(&self) -> BitMatrix {
        let pivots = self.clone().rref();
        self.select_columns(&pivots)
    }

    pub fn select_columns(&self, idx: &[usize]) -> BitMatrix {
        let mut m = BitMatrix::zero(self.rows, idx.len());
        for (jn, &jo) in idx.iter().enumerate() {
            for i in 0..self.rows {
                if self.get(i, jo) {
                    m.set(i, jn, true);
                }
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> BitMatrix {
        let mut m = BitMatrix::zero(idx.len(), self.cols);
        for (in_, &io) in idx.iter().enumerate() {
            for j in 0..self.cols {
                if self.get(io, j) {
                    m.set(in_, j, true);
                }
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> BitMatrix {
        self.select_columns(&[j])
    }

    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.rows != other.rows {
            return Err(Gf2Error::DimensionMismatch(format!(
                "hstack of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = BitMatrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    m.set(i, j, true);
                }
            }
            for j in 0..other.cols {
                if other.get(i, j) {
                    m.set(i, self.cols + j, true);
                }
            }
        }
        Ok(m)
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = BitMatrix::zero(self.rows, other.cols);
        let w = other.words_per_row;
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let (d, s) = (i * w, k * w);
                    for t in 0..w {
                        let v = other.bits[s + t];
                        m.bits[d + t] ^= v;
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Gf2Error::DimensionMismatch(format!(
                "sum of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = self.clone();
        for (a, b) in m.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
        Ok(m)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut m = BitMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    m.set(j, i, true);
                }
            }
        }
        m
    }

    pub fn permute_rows(&self, perm: &[usize]) -> BitMatrix {
        assert_eq!(perm.len(), self.rows);
        self.select_rows(perm)
    }

    pub fn permute_cols(&self, perm: &[usize]) -> BitMatrix {
        assert_eq!(perm.len(), self.cols);
        self.select_columns(perm)
    }

    /// Some `x` with `self * x = b` (a column vector), or `None` if the
    /// system is inconsistent.
    pub fn solve(&self, b: &BitMatrix) -> Result<Option<BitMatrix>, Gf2Error> {
        let sol = self.solve_mat(b)?;
        Ok(sol)
    }

    /// Solves `self * X = B` column by column; `None` if any column is
    /// inconsistent. Free variables are set to zero, so the solution is
    /// deterministic.
    pub fn solve_mat(&self, b: &BitMatrix) -> Result<Option<BitMatrix>, Gf2Error> {
        if b.rows != self.rows {
            return Err(Gf2Error::DimensionMismatch(format!(
                "solve: matrix is {}x{}, rhs has {} rows",
                self.rows, self.cols, b.rows
            )));
        }
        let mut aug = self.hstack(b)?;
        let pivots = aug.rref();
        // A pivot inside the rhs block means inconsistency.
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = BitMatrix::zero(self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                if aug.get(row, self.cols + j) {
                    x.set(p, j, true);
                }
            }
        }
        Ok(Some(x))
    }

    pub fn random<R: rand::Rng>(rng: &mut R, rows: usize, cols: usize) -> BitMatrix {
        let mut m = BitMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if rng.gen::<bool>() {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn random_invertible<R: rand::Rng>(rng: &mut R, n: usize) -> BitMatrix {
        loop {
            let m = Self::random(rng, n, n);
            if m.rank() == n {
                return m;
            }
        }
    }
}

/// dim(span(big) + span(small)) - dim span(small): the dimension of the
/// quotient of the joint column span by the span of `small`.
pub fn quotient_dim(big: &BitMatrix, small: &BitMatrix) -> Result<usize, Gf2Error> {
    if big.rows() != small.rows() {
        return Err(Gf2Error::DimensionMismatch(format!(
            "quotient_dim: ambient dims {} and {}",
            big.rows(),
            small.rows()
        )));
    }
    let joint = big.hstack(small)?;
    Ok(joint.rank() - small.rank())
}

/// Incremental GF(2) span: tracks a growing column space and answers
/// membership queries. Used to pick deterministic coset representatives.
pub struct Span {
    ambient: usize,
    // Reduced rows of the transposed basis, each with its pivot position.
    reduced: Vec<(usize, Vec<u64>)>,
}

impl Span {
    pub fn new(ambient: usize) -> Self {
        Span {
            ambient,
            reduced: Vec::new(),
        }
    }

    pub fn with_columns(m: &BitMatrix) -> Self {
        let mut s = Span::new(m.rows());
        for j in 0..m.cols() {
            s.insert(&m.column(j));
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.reduced.len()
    }

    fn reduce(&self, col: &BitMatrix) -> Vec<u64> {
        assert_eq!(col.rows(), self.ambient);
        assert_eq!(col.cols(), 1);
        let words = self.ambient.div_ceil(64);
        let mut v = vec![0u64; words];
        for i in 0..self.ambient {
            if col.get(i, 0) {
                v[i / 64] |= 1 << (i % 64);
            }
        }
        for (pivot, basis) in &self.reduced {
            if (v[pivot / 64] >> (pivot % 64)) & 1 == 1 {
                for (a, b) in v.iter_mut().zip(basis) {
                    *a ^= b;
                }
            }
        }
        v
    }

    pub fn contains(&self, col: &BitMatrix) -> bool {
        self.reduce(col).iter().all(|&w| w == 0)
    }

    /// Inserts a column; returns true if it enlarged the span.
    pub fn insert(&mut self, col: &BitMatrix) -> bool {
        let v = self.reduce(col);
        match v
            .iter()
            .enumerate()
            .flat_map(|(w, &word)| (0..64).filter(move |b| (word >> b) & 1 == 1).map(move |b| w * 64 + b))
            .next()
        {
            Some(pivot) => {
                self.reduced.push((pivot, v));
                true
            }
            None => false,
        }
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.to_row_strings().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{row:?}")?;
        }
        write!(f, "]")
    }
}
