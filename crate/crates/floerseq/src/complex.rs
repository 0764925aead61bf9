//! Graded Z2 complexes with operator families `∂_0, ..., ∂_ν` and their
//! Laurent extension.
//!
//! A [`FloerComplex`] carries chain groups `C^0..C^n` with a period `N >= 2`
//! and operators `∂_j: C^i -> C^{i+1-jN}` for `0 <= j <= ν`,
//! `ν = floor((n+1)/N)`. The total differential `d = ∂_0 + ... + ∂_ν`
//! squares to zero; expanded by the T-degree this is one identity per
//! `m` in `0..=2ν`:
//!
//! ```text
//! sum_{a+b=m} ∂_a ∘ ∂_b = 0   (as maps C^i -> C^{i+2-mN})
//! ```
//!
//! Note the individual `∂_j`, `j >= 1`, need not square to zero.
//!
//! [`LaurentComplex`] materializes `C~ = C ⊗ Z2[T,T^-1]` (deg T = N) on a
//! finite window of total degrees. Each `C~^l` is a finite direct sum of
//! summands `(p, C^{l-pN})` indexed by the filtration index `p`, so the
//! truncation is exact, not approximate.

use crate::gf2::BitMatrix;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("operator shape mismatch at (j={j}, i={i}): got {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    ShapeMismatch {
        j: usize,
        i: usize,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("period N must be >= 2, got {0}")]
    BadPeriod(usize),
    #[error("dims has length {got}, expected n+1 = {want}")]
    BadDims { got: usize, want: usize },
    #[error("∂_0 is not a differential (∂_0∘∂_0 != 0 at degree {0})")]
    NotAComplex(usize),
    #[error("degree {0} (with neighbors) not materialized in [{1}, {2}]")]
    RangeError(isize, isize, isize),
}

/// Graded Z2 complex with Floer-type higher operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloerComplex {
    n: usize,
    period: usize,
    dims: Vec<usize>,
    /// ops[j][i] is `∂_j` out of degree `i`; rows = dims of target degree
    /// `i+1-jN` (zero rows when the target falls outside `[0,n]`).
    ops: Vec<Vec<BitMatrix>>,
}

impl FloerComplex {
    /// Target degree of `∂_j` out of degree `i`.
    pub fn target_degree(i: usize, j: usize, period: usize) -> isize {
        i as isize + 1 - (j * period) as isize
    }

    /// `ops` maps j to the family of operator matrices indexed by source
    /// degree; missing j (or missing trailing families) mean zero operators.
    pub fn new(
        n: usize,
        period: usize,
        dims: Vec<usize>,
        ops: Vec<(usize, Vec<BitMatrix>)>,
    ) -> Result<Self, ComplexError> {
        if period < 2 {
            return Err(ComplexError::BadPeriod(period));
        }
        if dims.len() != n + 1 {
            return Err(ComplexError::BadDims {
                got: dims.len(),
                want: n + 1,
            });
        }
        let nu = (n + 1) / period;
        let mut c = FloerComplex {
            n,
            period,
            dims,
            ops: Vec::new(),
        };
        for j in 0..=nu {
            let family: Vec<BitMatrix> = (0..=n)
                .map(|i| BitMatrix::zero(c.op_rows(i, j), c.dims[i]))
                .collect();
            c.ops.push(family);
        }
        for (j, family) in ops {
            if j > nu {
                // An out-of-range operator index is a shape error unless the
                // matrices are all trivially zero-shaped anyway.
                for (i, m) in family.iter().enumerate() {
                    if m.rows() != 0 || m.cols() != c.dims.get(i).copied().unwrap_or(0) {
                        return Err(ComplexError::ShapeMismatch {
                            j,
                            i,
                            got_rows: m.rows(),
                            got_cols: m.cols(),
                            want_rows: 0,
                            want_cols: c.dims.get(i).copied().unwrap_or(0),
                        });
                    }
                }
                continue;
            }
            for (i, m) in family.into_iter().enumerate() {
                if i > n {
                    return Err(ComplexError::BadDims {
                        got: i + 1,
                        want: n + 1,
                    });
                }
                let (want_rows, want_cols) = (c.op_rows(i, j), c.dims[i]);
                if m.rows() != want_rows || m.cols() != want_cols {
                    return Err(ComplexError::ShapeMismatch {
                        j,
                        i,
                        got_rows: m.rows(),
                        got_cols: m.cols(),
                        want_rows,
                        want_cols,
                    });
                }
                c.ops[j][i] = m;
            }
        }
        Ok(c)
    }

    fn op_rows(&self, i: usize, j: usize) -> usize {
        let t = Self::target_degree(i, j, self.period);
        if t < 0 || t > self.n as isize {
            0
        } else {
            self.dims[t as usize]
        }
    }

    pub fn top_degree(&self) -> usize {
        self.n
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// ν = floor((dim+1)/N): index of the last possibly-nonzero operator.
    pub fn nu(&self) -> usize {
        (self.n + 1) / self.period
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, i: isize) -> usize {
        if i < 0 || i > self.n as isize {
            0
        } else {
            self.dims[i as usize]
        }
    }

    /// `∂_j` out of degree `i` (a zero matrix when the target is out of
    /// range or the operator was not supplied).
    pub fn op(&self, j: usize, i: usize) -> &BitMatrix {
        &self.ops[j][i]
    }

    pub fn ops(&self) -> &[Vec<BitMatrix>] {
        &self.ops
    }

    /// Checks every degree-m identity `sum_{a+b=m} ∂_a ∂_b = 0`. Returns
    /// the list of violated `(m, i)` pairs (m the T-degree, i the source
    /// degree); empty iff the operator family is a valid twisted complex.
    pub fn validate(&self) -> Vec<(usize, usize)> {
        let nu = self.nu();
        let mut violations = Vec::new();
        for m in 0..=2 * nu {
            for i in 0..=self.n {
                let final_deg = i as isize + 2 - (m * self.period) as isize;
                if final_deg < 0 || final_deg > self.n as isize {
                    continue;
                }
                let mut sum = BitMatrix::zero(self.dims[final_deg as usize], self.dims[i]);
                for b in 0..=m.min(nu) {
                    let a = m - b;
                    if a > nu {
                        continue;
                    }
                    let mid = Self::target_degree(i, b, self.period);
                    if mid < 0 || mid > self.n as isize {
                        continue;
                    }
                    let term = self.ops[a][mid as usize].mul(&self.ops[b][i]).unwrap();
                    sum = sum.add(&term).unwrap();
                }
                if !sum.is_zero() {
                    violations.push((m, i));
                }
            }
        }
        violations
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Betti vector of the `∂_0`-homology.
    pub fn morse_homology(&self) -> Result<Vec<usize>, ComplexError> {
        for i in 0..=self.n {
            let mid = Self::target_degree(i, 0, self.period);
            if mid < 0 || mid > self.n as isize {
                continue;
            }
            if !self.ops[0][mid as usize].mul(&self.ops[0][i]).unwrap().is_zero() {
                return Err(ComplexError::NotAComplex(i));
            }
        }
        let mut betti = Vec::with_capacity(self.n + 1);
        for i in 0..=self.n {
            let ker = self.dims[i] - self.ops[0][i].rank();
            let im = if i == 0 { 0 } else { self.ops[0][i - 1].rank() };
            betti.push(ker - im);
        }
        Ok(betti)
    }

    /// Default materialization window for the Laurent extension, wide
    /// enough that every page computation sees only interior degrees.
    pub fn default_window(&self) -> (isize, isize) {
        let margin = ((self.nu() + 2) * self.period) as isize;
        (-margin, self.n as isize + margin)
    }

    pub fn build_laurent(&self, l_lo: isize, l_hi: isize) -> LaurentComplex {
        assert!(l_lo <= l_hi);
        let mut groups = Vec::new();
        for l in l_lo..=l_hi {
            groups.push(self.summands_at(l));
        }
        let mut lc = LaurentComplex {
            base: self.clone(),
            l_lo,
            l_hi,
            groups,
            dtilde: Vec::new(),
        };
        for l in l_lo..l_hi {
            lc.dtilde.push(lc.assemble_dtilde(l));
        }
        lc
    }

    fn summands_at(&self, l: isize) -> Vec<Summand> {
        // p with 0 <= l - pN <= n, ascending p (descending chain degree).
        let np = self.period as isize;
        let p_min = (l - self.n as isize).div_euclid(np)
            + if (l - self.n as isize).rem_euclid(np) != 0 { 1 } else { 0 };
        let p_max = l.div_euclid(np);
        let mut out = Vec::new();
        let mut offset = 0;
        for p in p_min..=p_max {
            let deg = (l - p * np) as usize;
            let dim = self.dims[deg];
            out.push(Summand { p, deg, offset, dim });
            offset += dim;
        }
        out
    }
}

/// One summand `C^deg ⊗ T^p` inside a Laurent degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Summand {
    pub p: isize,
    pub deg: usize,
    pub offset: usize,
    pub dim: usize,
}

/// Finite-window realization of `C ⊗ Z2[T,T^-1]` with differential `d~`.
#[derive(Clone, Debug)]
pub struct LaurentComplex {
    base: FloerComplex,
    l_lo: isize,
    l_hi: isize,
    /// groups[l - l_lo]: summands of C~^l, ascending filtration index p.
    groups: Vec<Vec<Summand>>,
    /// dtilde[l - l_lo]: C~^l -> C~^{l+1}, for l in l_lo .. l_hi.
    dtilde: Vec<BitMatrix>,
}

impl LaurentComplex {
    fn assemble_dtilde(&self, l: isize) -> BitMatrix {
        let src = self.summands(l);
        let dst = self.summands(l + 1);
        let mut m = BitMatrix::zero(
            dst.iter().map(|s| s.dim).sum(),
            src.iter().map(|s| s.dim).sum(),
        );
        for s in src {
            for j in 0..=self.base.nu() {
                let tp = s.p + j as isize;
                let Some(t) = dst.iter().find(|t| t.p == tp) else {
                    continue;
                };
                let block = self.base.op(j, s.deg);
                debug_assert_eq!(block.rows(), t.dim);
                debug_assert_eq!(block.cols(), s.dim);
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        if block.get(r, c) {
                            m.set(t.offset + r, s.offset + c, true);
                        }
                    }
                }
            }
        }
        m
    }

    pub fn base(&self) -> &FloerComplex {
        &self.base
    }

    pub fn degree_range(&self) -> (isize, isize) {
        (self.l_lo, self.l_hi)
    }

    pub fn summands(&self, l: isize) -> &[Summand] {
        assert!(l >= self.l_lo && l <= self.l_hi, "degree {l} not materialized");
        &self.groups[(l - self.l_lo) as usize]
    }

    pub fn group_dim(&self, l: isize) -> usize {
        self.summands(l).iter().map(|s| s.dim).sum()
    }

    /// `d~: C~^l -> C~^{l+1}`; requires both degrees materialized.
    pub fn dtilde(&self, l: isize) -> &BitMatrix {
        assert!(l >= self.l_lo && l < self.l_hi, "d~ at {l} not materialized");
        &self.dtilde[(l - self.l_lo) as usize]
    }

    pub fn contains_degree(&self, l: isize) -> bool {
        l >= self.l_lo && l <= self.l_hi
    }

    /// `dim H^l(C~, d~)`, the Floer homology dimension in degree `l mod N`.
    pub fn homology(&self, l: isize) -> Result<usize, ComplexError> {
        if l - 1 < self.l_lo || l + 1 > self.l_hi {
            return Err(ComplexError::RangeError(l, self.l_lo, self.l_hi));
        }
        let ker = self.group_dim(l) - self.dtilde(l).rank();
        let im = self.dtilde(l - 1).rank();
        // im > ker means the operators do not satisfy the d~^2 = 0 identities
        ker.checked_sub(im).ok_or_else(|| {
            ComplexError::NotAComplex(l.rem_euclid(self.base.period() as isize) as usize)
        })
    }

    /// Total Floer homology dimension over one period.
    pub fn total_homology(&self) -> Result<usize, ComplexError> {
        let mut total = 0;
        for l in 0..self.base.period() as isize {
            total += self.homology(l)?;
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;

    fn mat(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_row_strings(rows).unwrap()
    }

    /// n=1, N=2, dims=(1,1), ∂_0 the isomorphism C^0 -> C^1.
    fn acyclic_two_term() -> FloerComplex {
        FloerComplex::new(
            1,
            2,
            vec![1, 1],
            vec![(0, vec![mat(&["1"]), BitMatrix::zero(0, 1)])],
        )
        .unwrap()
    }

    #[test]
    fn validate_zero_ops() {
        let c = FloerComplex::new(3, 2, vec![1, 2, 2, 1], vec![]).unwrap();
        assert!(c.validate().is_empty());
    }

    #[test]
    fn validate_acyclic_pair() {
        let c = acyclic_two_term();
        assert!(c.validate().is_empty());
        assert_eq!(c.nu(), 1);
    }

    #[test]
    fn validate_detects_m1_violation() {
        // n=3, N=2, one-dimensional groups; ∂_0: C^1->C^2 iso (∂_0^2 = 0
        // since the other blocks vanish), ∂_1: C^2->C^1 iso. Then the m=1
        // identity at i=1 is ∂_1∂_0 + ∂_0∂_1 with only ∂_1^{(2)}∂_0^{(1)}
        // landing in range: C^1 -> C^2 -> C^1, nonzero.
        let d0 = vec![
            BitMatrix::zero(1, 1),
            mat(&["1"]),
            BitMatrix::zero(1, 1),
            BitMatrix::zero(0, 1),
        ];
        let d1 = vec![
            BitMatrix::zero(0, 1), // C^0 -> C^-1
            mat(&["1"]),           // C^1 -> C^0
            mat(&["1"]),           // C^2 -> C^1
            mat(&["1"]),           // C^3 -> C^2
        ];
        let c = FloerComplex::new(3, 2, vec![1, 1, 1, 1], vec![(0, d0), (1, d1)]).unwrap();
        let viol = c.validate();
        assert!(viol.iter().any(|&(m, _)| m == 1), "violations: {viol:?}");
    }

    #[test]
    fn homology_rejects_broken_differential() {
        // ∂_0 with ∂_0^2 != 0 passes the shape check but must surface as an
        // error from homology, not an underflow
        let d0 = vec![mat(&["1"]), mat(&["1"]), BitMatrix::zero(0, 1)];
        let c = FloerComplex::new(2, 2, vec![1, 1, 1], vec![(0, d0)]).unwrap();
        assert!(!c.is_valid());
        let (lo, hi) = c.default_window();
        let lc = c.build_laurent(lo, hi);
        assert!((0..2).any(|l| matches!(lc.homology(l), Err(ComplexError::NotAComplex(_)))));
    }

    #[test]
    fn shape_mismatch_reported() {
        let err = FloerComplex::new(1, 2, vec![1, 1], vec![(0, vec![mat(&["11"])])]);
        assert!(matches!(
            err,
            Err(ComplexError::ShapeMismatch { j: 0, i: 0, .. })
        ));
    }

    #[test]
    fn laurent_group_dims() {
        // dims=(1,1,1,1), n=3, N=4: C~^0 has only p=0, C~^4 only p=1.
        let c = FloerComplex::new(3, 4, vec![1, 1, 1, 1], vec![]).unwrap();
        let lc = c.build_laurent(-8, 12);
        assert_eq!(lc.group_dim(0), 1);
        assert_eq!(lc.group_dim(4), 1);
        // N=2: C~^1 = C^1 (p=0) + C^3 (p=-1).
        let c = FloerComplex::new(3, 2, vec![1, 1, 1, 1], vec![]).unwrap();
        let lc = c.build_laurent(-8, 12);
        assert_eq!(lc.group_dim(1), 2);
        // all-zero dims
        let c = FloerComplex::new(2, 2, vec![0, 0, 0], vec![]).unwrap();
        let lc = c.build_laurent(-4, 6);
        for l in -4..=6 {
            assert_eq!(lc.group_dim(l), 0);
        }
    }

    #[test]
    fn homology_zero_ops_equals_group_dim() {
        let c = FloerComplex::new(2, 3, vec![1, 2, 1], vec![]).unwrap();
        let (lo, hi) = c.default_window();
        let lc = c.build_laurent(lo, hi);
        for l in 0..6 {
            assert_eq!(lc.homology(l).unwrap(), lc.group_dim(l));
        }
    }

    #[test]
    fn homology_acyclic_pair_vanishes() {
        let c = acyclic_two_term();
        let (lo, hi) = c.default_window();
        let lc = c.build_laurent(lo, hi);
        for l in -2..4 {
            assert_eq!(lc.homology(l).unwrap(), 0);
        }
    }

    #[test]
    fn homology_range_error() {
        let c = acyclic_two_term();
        let lc = c.build_laurent(0, 2);
        assert!(matches!(lc.homology(0), Err(ComplexError::RangeError(..))));
        assert!(lc.homology(1).is_ok());
    }

    #[test]
    fn morse_homology_cases() {
        let c = FloerComplex::new(2, 3, vec![1, 2, 1], vec![]).unwrap();
        assert_eq!(c.morse_homology().unwrap(), vec![1, 2, 1]);

        // dims=(1,2,1) with ∂_0 ranks (1,1) and im = ker at the middle.
        let d0 = vec![mat(&["1", "0"]), mat(&["01"]), BitMatrix::zero(0, 1)];
        let c = FloerComplex::new(2, 3, vec![1, 2, 1], vec![(0, d0)]).unwrap();
        assert_eq!(c.morse_homology().unwrap(), vec![0, 0, 0]);

        // sphere-like
        let c = FloerComplex::new(5, 3, vec![1, 0, 0, 0, 0, 1], vec![]).unwrap();
        assert_eq!(c.morse_homology().unwrap(), vec![1, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn morse_homology_rejects_non_complex() {
        // ∂_0 with ∂_0^2 != 0: C^0 -> C^1 -> C^2 both isos.
        let d0 = vec![mat(&["1"]), mat(&["1"]), BitMatrix::zero(0, 1)];
        let c = FloerComplex::new(2, 3, vec![1, 1, 1], vec![(0, d0)]).unwrap();
        assert!(matches!(c.morse_homology(), Err(ComplexError::NotAComplex(_))));
    }

    #[test]
    fn tau_periodicity_of_groups() {
        let c = FloerComplex::new(4, 3, vec![1, 2, 0, 1, 2], vec![]).unwrap();
        let (lo, hi) = c.default_window();
        let lc = c.build_laurent(lo, hi);
        for l in 0..6 {
            let a = lc.summands(l);
            let b = lc.summands(l + 3);
            assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(b) {
                assert_eq!(x.p + 1, y.p);
                assert_eq!(x.deg, y.deg);
                assert_eq!(x.dim, y.dim);
            }
        }
    }
}
