//! Spectral sequence of the filtered complex (F^p C~, d~).
//!
//! `F^p C~^l` is the span of the summands with filtration index >= p (the
//! summands of a Laurent degree are ordered by ascending p, so F^p is a
//! trailing coordinate block). With
//!
//! ```text
//! Z_r^{p,q} = { x in F^p C~^{p+q} : d~x in F^{p+r} }
//! B_r^{p,q} = d~(F^{p-r} C~^{p+q-1}) ∩ F^p
//! E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + B_{r-1}^{p,q})
//! ```
//!
//! a page cell stores the denominator span and chosen coset representatives
//! as explicit column spans inside the ambient C~^{p+q}, so the induced
//! differential δ_r is an honest matrix. Bases are chosen by a fixed greedy
//! sweep over deterministic kernel bases, making runs reproducible.
//!
//! Pages are materialized on a window of total degrees [l_lo, l_hi]; each
//! `turn` shrinks the window by one on each side. The direct `page(lc, r, ..)`
//! construction and iterated `turn` are independent routes to the same page;
//! their agreement is a test, not an assumption.

use crate::complex::LaurentComplex;
use crate::gf2::{BitMatrix, Span};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecSeqError {
    #[error("page window [{0}, {1}] needs Laurent degrees [{2}, {3}] materialized")]
    RangeError(isize, isize, isize, isize),
    #[error("window too small: [{0}, {1}]")]
    WindowTooSmall(isize, isize),
}

/// One cell: coset representatives `reps` modulo the span `den`, both as
/// columns in the ambient Laurent degree p+q.
#[derive(Clone, Debug)]
struct Cell {
    den: BitMatrix,
    reps: BitMatrix,
}

/// One spectral-sequence page over a window of total degrees.
#[derive(Clone, Debug)]
pub struct Page<'a> {
    lc: &'a LaurentComplex,
    r: usize,
    l_lo: isize,
    l_hi: isize,
    cells: BTreeMap<(isize, isize), Cell>,
}

/// Coordinate inclusion of F^p C~^l into C~^l.
fn filt_incl(lc: &LaurentComplex, l: isize, p: isize) -> BitMatrix {
    let summands = lc.summands(l);
    let ambient: usize = summands.iter().map(|s| s.dim).sum();
    let idx: Vec<usize> = summands
        .iter()
        .filter(|s| s.p >= p)
        .flat_map(|s| s.offset..s.offset + s.dim)
        .collect();
    BitMatrix::identity(ambient).select_columns(&idx)
}

/// Projection of C~^l onto the coordinates with filtration index < p;
/// a vector lies in F^p iff this kills it.
fn filt_proj_below(lc: &LaurentComplex, l: isize, p: isize) -> BitMatrix {
    let summands = lc.summands(l);
    let ambient: usize = summands.iter().map(|s| s.dim).sum();
    let idx: Vec<usize> = summands
        .iter()
        .filter(|s| s.p < p)
        .flat_map(|s| s.offset..s.offset + s.dim)
        .collect();
    BitMatrix::identity(ambient).select_rows(&idx)
}

/// Columns spanning Z_s^{p, l-p} inside C~^l. For s <= 0 this is all of
/// F^p (d~x lands in F^{p+s} ⊇ F^p automatically).
fn z_span(lc: &LaurentComplex, l: isize, p: isize, s: isize) -> BitMatrix {
    let inc = filt_incl(lc, l, p);
    if s <= 0 {
        return inc;
    }
    let m = filt_proj_below(lc, l + 1, p + s)
        .mul(lc.dtilde(l))
        .unwrap()
        .mul(&inc)
        .unwrap();
    inc.mul(&m.kernel_basis()).unwrap()
}

/// Columns spanning B_s^{p, l-p} = d~(F^{p-s} C~^{l-1}) ∩ F^p.
fn b_span(lc: &LaurentComplex, l: isize, p: isize, s: isize) -> BitMatrix {
    let v = lc.dtilde(l - 1).mul(&filt_incl(lc, l - 1, p - s)).unwrap();
    let k = filt_proj_below(lc, l, p).mul(&v).unwrap().kernel_basis();
    v.mul(&k).unwrap()
}

/// Greedy deterministic choice of coset representatives: columns of `zr`
/// that enlarge the span seeded with `den`.
fn choose_reps(den: &BitMatrix, zr: &BitMatrix) -> BitMatrix {
    let mut span = Span::with_columns(den);
    let mut reps = BitMatrix::zero(zr.rows(), 0);
    for c in 0..zr.cols() {
        let col = zr.column(c);
        if span.insert(&col) {
            reps = reps.hstack(&col).unwrap();
        }
    }
    reps
}

/// Direct construction of page r from the Z/B definitions.
pub fn page(lc: &LaurentComplex, r: usize, l_lo: isize, l_hi: isize) -> Result<Page<'_>, SpecSeqError> {
    let (lc_lo, lc_hi) = lc.degree_range();
    if l_lo > l_hi {
        return Err(SpecSeqError::WindowTooSmall(l_lo, l_hi));
    }
    // cell at degree l needs d~ at l-1 and at l (so degrees l-1 .. l+1)
    if l_lo - 1 < lc_lo || l_hi + 1 > lc_hi {
        return Err(SpecSeqError::RangeError(l_lo, l_hi, lc_lo, lc_hi));
    }
    let n = lc.base().top_degree() as isize;
    let period = lc.base().period() as isize;
    let mut cells = BTreeMap::new();
    for l in l_lo..=l_hi {
        // support: 0 <= l - pN <= n
        let p_min = div_ceil(l - n, period);
        let p_max = (l as i64).div_euclid(period as i64) as isize;
        for p in p_min..=p_max {
            let zr = z_span(lc, l, p, r as isize);
            let den = z_span(lc, l, p + 1, r as isize - 1)
                .hstack(&b_span(lc, l, p, r as isize - 1))
                .unwrap();
            let reps = choose_reps(&den, &zr);
            cells.insert((p, l - p), Cell { den, reps });
        }
    }
    Ok(Page { lc, r, l_lo, l_hi, cells })
}

fn div_ceil(a: isize, b: isize) -> isize {
    a.div_euclid(b) + if a.rem_euclid(b) != 0 { 1 } else { 0 }
}

impl<'a> Page<'a> {
    pub fn r(&self) -> usize {
        self.r
    }

    /// Total-degree window [l_lo, l_hi] on which cells are materialized.
    pub fn window(&self) -> (isize, isize) {
        (self.l_lo, self.l_hi)
    }

    /// Cell dimension; 0 for cells outside the support or the window.
    pub fn cell_dim(&self, p: isize, q: isize) -> usize {
        self.cells.get(&(p, q)).map_or(0, |c| c.reps.cols())
    }

    pub fn has_cell(&self, p: isize, q: isize) -> bool {
        self.cells.contains_key(&(p, q))
    }

    /// Materialized cells as ((p, q), dim), sorted.
    pub fn cells(&self) -> Vec<((isize, isize), usize)> {
        self.cells
            .iter()
            .map(|(&k, c)| (k, c.reps.cols()))
            .collect()
    }

    /// δ_r: cell (p,q) -> cell (p+r, q-r+1), in the chosen bases. `None`
    /// when either cell is not materialized.
    pub fn delta(&self, p: isize, q: isize) -> Option<BitMatrix> {
        let src = self.cells.get(&(p, q))?;
        let tp = p + self.r as isize;
        let tq = q - self.r as isize + 1;
        let tgt = self.cells.get(&(tp, tq))?;
        let l = p + q;
        let dx = self.lc.dtilde(l).mul(&src.reps).unwrap();
        let basis = tgt.den.hstack(&tgt.reps).unwrap();
        let y = basis
            .solve_mat(&dx)
            .unwrap()
            .expect("d~ of a Z_r class must land in the target cell's span");
        let idx: Vec<usize> = (tgt.den.cols()..tgt.den.cols() + tgt.reps.cols()).collect();
        Some(y.select_rows(&idx))
    }

    /// Next page: kernels of δ_r modulo images of δ_r. Shrinks the window
    /// by one on each side.
    pub fn turn(&self) -> Result<Page<'a>, SpecSeqError> {
        let (lo, hi) = (self.l_lo + 1, self.l_hi - 1);
        if lo > hi {
            return Err(SpecSeqError::WindowTooSmall(lo, hi));
        }
        let r = self.r as isize;
        let mut cells = BTreeMap::new();
        for (&(p, q), cell) in &self.cells {
            let l = p + q;
            if l < lo || l > hi {
                continue;
            }
            // a δ target or source outside the support bound is a genuinely
            // zero cell (not materialized), so δ there is the zero map
            let kernel = match self.delta(p, q) {
                Some(d) => d.kernel_basis(),
                None => BitMatrix::identity(cell.reps.cols()),
            };
            let image_in = match self.cells.get(&(p - r, q + r - 1)) {
                Some(src) => self.lc.dtilde(l - 1).mul(&src.reps).unwrap(),
                None => BitMatrix::zero(cell.den.rows(), 0),
            };
            let den = cell.den.hstack(&image_in).unwrap();
            let candidates = cell.reps.mul(&kernel).unwrap();
            let reps = choose_reps(&den, &candidates);
            cells.insert((p, q), Cell { den, reps });
        }
        Ok(Page {
            lc: self.lc,
            r: self.r + 1,
            l_lo: lo,
            l_hi: hi,
            cells,
        })
    }
}

/// The stable page: page ν+1 (the sequence collapses there), all
/// differentials zero.
pub fn e_infinity(lc: &LaurentComplex, l_lo: isize, l_hi: isize) -> Result<Page<'_>, SpecSeqError> {
    page(lc, lc.base().nu() + 1, l_lo, l_hi)
}

/// Checks that for every fixed p whose full support column fits in the
/// window, the q-sum of E_∞ cells equals the total Floer homology over one
/// period.
pub fn check_statement5(lc: &LaurentComplex, l_lo: isize, l_hi: isize) -> Result<bool, SpecSeqError> {
    let pg = e_infinity(lc, l_lo, l_hi)?;
    let n = lc.base().top_degree() as isize;
    let period = lc.base().period() as isize;
    let total = lc
        .total_homology()
        .map_err(|_| SpecSeqError::WindowTooSmall(l_lo, l_hi))?;
    let mut checked = false;
    // the support column of p spans total degrees [pN, pN+n]
    let p_lo = div_ceil(l_lo, period);
    let p_hi = (l_hi - n).div_euclid(period);
    for p in p_lo..=p_hi {
        let sum: usize = (0..=n)
            .map(|off| pg.cell_dim(p, p * period + off - p))
            .sum();
        if sum != total {
            return Ok(false);
        }
        checked = true;
    }
    if !checked {
        return Err(SpecSeqError::WindowTooSmall(l_lo, l_hi));
    }
    Ok(true)
}
