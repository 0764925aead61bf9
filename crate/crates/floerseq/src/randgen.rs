//! Seeded generation of valid random complexes.
//!
//! Rejection sampling on the d²=0 identities essentially never succeeds, so
//! the generator is constructive:
//!
//! 1. `∂_0` is a direct sum of elementary acyclic pairs in canonical form,
//!    conjugated by random invertible matrices per degree.
//! 2. The higher blocks `∂_j^{(i)}` are assigned one at a time in the order
//!    (j ascending, source degree i descending). Within a single d²=0
//!    identity instance a given block appears at most once (it cannot be
//!    both the left and the right factor of the same term split, since that
//!    would force (m−j)·N = 1), so each identity is affine in its
//!    last-assigned block. When a block comes up, all identities whose last
//!    participant it is are collected into one linear system and a uniform
//!    solution is drawn. Unsolvable constants trigger a resample of the
//!    higher blocks; after that the generator falls back to zero higher
//!    operators, which always satisfy the identities.

use crate::complex::FloerComplex;
use crate::gf2::BitMatrix;
use rand::Rng;

fn inverse(m: &BitMatrix) -> BitMatrix {
    m.solve_mat(&BitMatrix::identity(m.rows()))
        .unwrap()
        .expect("matrix not invertible")
}

/// Random complex with only `∂_0` set (a plain chain complex).
pub fn random_morse_complex<R: Rng>(
    rng: &mut R,
    n: usize,
    period: usize,
    max_dim: usize,
) -> FloerComplex {
    let dims: Vec<usize> = (0..=n).map(|_| rng.gen_range(0..=max_dim)).collect();
    let d0 = random_d0(rng, n, &dims);
    FloerComplex::new(n, period, dims, vec![(0, d0)]).unwrap()
}

/// `∂_0` family with `∂_0² = 0`: canonical rank blocks conjugated by random
/// invertibles. Returns one matrix per source degree.
fn random_d0<R: Rng>(rng: &mut R, n: usize, dims: &[usize]) -> Vec<BitMatrix> {
    // ranks r_i of C^i -> C^{i+1}, constrained by r_{i-1} + r_i <= dims[i]
    // (image inside kernel) and r_i <= min(dims[i], dims[i+1]).
    let mut ranks = vec![0usize; n + 1];
    for i in 0..n {
        let prev = if i == 0 { 0 } else { ranks[i - 1] };
        let hi = dims[i].saturating_sub(prev).min(dims[i + 1]);
        ranks[i] = rng.gen_range(0..=hi);
    }
    // Canonical D_i: last r_i source coordinates -> first r_i target
    // coordinates. im(D_i) = first r_i coords, ker(D_{i+1}) ⊇ first
    // dims[i+1]-r_{i+1} coords, and r_i + r_{i+1} <= dims[i+1].
    let p: Vec<BitMatrix> = dims
        .iter()
        .map(|&d| BitMatrix::random_invertible(rng, d))
        .collect();
    let pinv: Vec<BitMatrix> = p.iter().map(inverse).collect();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        if i == n {
            out.push(BitMatrix::zero(0, dims[n]));
            continue;
        }
        let mut d = BitMatrix::zero(dims[i + 1], dims[i]);
        for t in 0..ranks[i] {
            d.set(t, dims[i] - ranks[i] + t, true);
        }
        let m = p[i + 1].mul(&d).unwrap().mul(&pinv[i]).unwrap();
        out.push(m);
    }
    out
}

/// Fully random valid complex: random dims in `0..=max_dim`, `∂_0` as
/// above, higher `∂_j` drawn from the affine solution space of the d²=0
/// identities.
pub fn random_complex<R: Rng>(
    rng: &mut R,
    n: usize,
    period: usize,
    max_dim: usize,
) -> FloerComplex {
    let dims: Vec<usize> = (0..=n).map(|_| rng.gen_range(0..=max_dim)).collect();
    let d0 = random_d0(rng, n, &dims);
    let nu = (n + 1) / period;
    for _ in 0..30 {
        if let Some(c) = try_higher_blocks(rng, n, period, &dims, &d0, nu) {
            debug_assert!(c.is_valid());
            return c;
        }
    }
    FloerComplex::new(n, period, dims, vec![(0, d0)]).unwrap()
}

/// Identity instance (m, i0): sum over a+b=m of ∂_a ∘ ∂_b out of degree i0.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Instance {
    m: usize,
    i0: usize,
}

fn try_higher_blocks<R: Rng>(
    rng: &mut R,
    n: usize,
    period: usize,
    dims: &[usize],
    d0: &[BitMatrix],
    nu: usize,
) -> Option<FloerComplex> {
    let deg = |i: usize, j: usize| FloerComplex::target_degree(i, j, period);
    let dim_at = |d: isize| {
        if d < 0 || d > n as isize {
            0
        } else {
            dims[d as usize]
        }
    };
    let block_shaped = |j: usize, i: usize| dims[i] > 0 && dim_at(deg(i, j)) > 0;

    // assignment order: j ascending, source degree descending
    let mut order: Vec<(usize, usize)> = Vec::new();
    for j in 1..=nu {
        for i in (0..=n).rev() {
            if block_shaped(j, i) {
                order.push((j, i));
            }
        }
    }
    let ord_of = |j: usize, i: usize| order.iter().position(|&b| b == (j, i));

    // ops[j][i], higher entries filled in as they are assigned
    let mut ops: Vec<Vec<BitMatrix>> = Vec::with_capacity(nu + 1);
    for j in 0..=nu {
        ops.push(
            (0..=n)
                .map(|i| {
                    if j == 0 {
                        d0[i].clone()
                    } else {
                        BitMatrix::zero(dim_at(deg(i, j)).max(0), dims[i])
                    }
                })
                .collect(),
        );
    }

    // assign each identity instance to its last participating block
    let mut assigned: Vec<Vec<Instance>> = vec![Vec::new(); order.len()];
    for m in 1..=2 * nu {
        for i0 in 0..=n {
            let fin = i0 as isize + 2 - (m * period) as isize;
            if dims[i0] == 0 || dim_at(fin) == 0 {
                continue;
            }
            let mut last: Option<usize> = None;
            for b in 0..=m.min(nu) {
                let a = m - b;
                if a > nu {
                    continue;
                }
                let mid = deg(i0, b);
                if dim_at(mid) == 0 {
                    continue;
                }
                if b >= 1 {
                    if let Some(o) = ord_of(b, i0) {
                        last = Some(last.map_or(o, |x: usize| x.max(o)));
                    }
                }
                if a >= 1 {
                    if let Some(o) = ord_of(a, mid as usize) {
                        last = Some(last.map_or(o, |x: usize| x.max(o)));
                    }
                }
            }
            if let Some(o) = last {
                assigned[o].push(Instance { m, i0 });
            }
            // no participants: every term contains a zero-shaped factor
        }
    }

    for (pos, &(j, i)) in order.iter().enumerate() {
        let xr = dim_at(deg(i, j));
        let xc = dims[i];
        let nvars = xr * xc;
        let mut a_rows: Vec<BitMatrix> = Vec::new();
        let mut b_rows: Vec<BitMatrix> = Vec::new();
        for inst in &assigned[pos] {
            let fin = inst.i0 as isize + 2 - (inst.m * period) as isize;
            let fdim = dim_at(fin);
            let mut constant = BitMatrix::zero(fdim, dims[inst.i0]);
            // coefficient of the unknown, accumulated over its (single)
            // occurrence; kept as a matrix acting on vec(X)
            let mut coeff = BitMatrix::zero(fdim * dims[inst.i0], nvars);
            for b in 0..=inst.m.min(nu) {
                let a = inst.m - b;
                if a > nu {
                    continue;
                }
                let mid = deg(inst.i0, b);
                if dim_at(mid) == 0 {
                    continue;
                }
                let mid = mid as usize;
                if b == j && inst.i0 == i {
                    // term ∂_a^{(mid)} · X; rows indexed (p, s):
                    // sum_r K[p,r] X[r,s]
                    let k = &ops[a][mid];
                    for p_ in 0..fdim {
                        for s in 0..dims[inst.i0] {
                            for r_ in 0..xr {
                                if k.get(p_, r_) {
                                    let row = p_ * dims[inst.i0] + s;
                                    let var = r_ * xc + s;
                                    let cur = coeff.get(row, var);
                                    coeff.set(row, var, !cur);
                                }
                            }
                        }
                    }
                } else if a == j && mid == i {
                    // term X · ∂_b^{(i0)}; rows indexed (r, c):
                    // sum_s X[r,s] K[s,c]
                    let k = &ops[b][inst.i0];
                    for r_ in 0..xr {
                        for c_ in 0..dims[inst.i0] {
                            for s in 0..xc {
                                if k.get(s, c_) {
                                    let row = r_ * dims[inst.i0] + c_;
                                    let var = r_ * xc + s;
                                    let cur = coeff.get(row, var);
                                    coeff.set(row, var, !cur);
                                }
                            }
                        }
                    }
                } else {
                    let term = ops[a][mid].mul(&ops[b][inst.i0]).unwrap();
                    constant = constant.add(&term).unwrap();
                }
            }
            // flatten the constant to a column (row-major, matching coeff)
            let mut bcol = BitMatrix::zero(fdim * dims[inst.i0], 1);
            for r_ in 0..fdim {
                for c_ in 0..dims[inst.i0] {
                    bcol.set(r_ * dims[inst.i0] + c_, 0, constant.get(r_, c_));
                }
            }
            a_rows.push(coeff);
            b_rows.push(bcol);
        }
        let (sys, rhs) = stack(&a_rows, &b_rows, nvars);
        let particular = sys.solve(&rhs).unwrap()?;
        let kernel = sys.kernel_basis();
        let coeffs = BitMatrix::random(rng, kernel.cols(), 1);
        let x = particular.add(&kernel.mul(&coeffs).unwrap()).unwrap();
        let mut block = BitMatrix::zero(xr, xc);
        for r_ in 0..xr {
            for c_ in 0..xc {
                block.set(r_, c_, x.get(r_ * xc + c_, 0));
            }
        }
        ops[j][i] = block;
    }

    let named: Vec<(usize, Vec<BitMatrix>)> = ops.into_iter().enumerate().collect();
    let c = FloerComplex::new(n, period, dims.to_vec(), named).unwrap();
    if c.is_valid() {
        Some(c)
    } else {
        None
    }
}

fn stack(blocks: &[BitMatrix], rhs: &[BitMatrix], nvars: usize) -> (BitMatrix, BitMatrix) {
    let total: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut a = BitMatrix::zero(total, nvars);
    let mut b = BitMatrix::zero(total, 1);
    let mut off = 0;
    for (blk, r) in blocks.iter().zip(rhs) {
        for i in 0..blk.rows() {
            for jx in 0..nvars {
                if blk.get(i, jx) {
                    a.set(off + i, jx, true);
                }
            }
            if r.get(i, 0) {
                b.set(off + i, 0, true);
            }
        }
        off += blk.rows();
    }
    (a, b)
}
