//! Rank-feasibility deduction from dimensional data alone.
//!
//! Given only a Betti vector and the period N, decide whether a complex
//! with that E_1 page can have vanishing homology of the total differential.
//! For ν = 1 the single page-one differential δ_1 makes E_2 = E_∞, so
//! vanishing is equivalent to exactness of the two-periodic chains
//!
//! ```text
//! ... -> H^{q-1+N} -> H^q -> H^{q+1-N} -> ...
//! ```
//!
//! and over a field every feasible rank profile is realized by explicit
//! shifted-identity matrices — the witness complex is always constructed,
//! never trusted. For ν >= 2 the engine searches over per-page rank
//! profiles; feasibility there is a necessary condition only (infeasibility
//! proves nonexistence), and callers should read a positive answer as
//! "not excluded".
//!
//! The same exact-chain solver powers the Gysin long-exact-sequence
//! enumeration for circle bundles.

use crate::complex::FloerComplex;
use crate::gf2::BitMatrix;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeduceError {
    #[error("nu = {0} >= 2: single-differential route does not apply")]
    NuTooLarge(usize),
    #[error("search budget exceeded after {0} nodes")]
    SearchBudgetExceeded(u64),
    #[error("entry bound {bound} may truncate solutions (need >= {needed})")]
    BoundTooSmall { bound: usize, needed: usize },
}

fn nu_of(k: usize, period: usize) -> usize {
    (k + 1) / period
}

/// Unique rank profile of an exact sequence 0 -> D_0 -> ... -> D_last -> 0,
/// if one exists. `profile[i]` is the rank of the map out of position `i`
/// (the last entry is always 0). Over a field, existence of the profile is
/// equivalent to existence of the exact sequence.
pub fn solve_exact_chain(dims: &[usize]) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(dims.len());
    let mut prev = 0usize;
    for &d in dims {
        if prev > d {
            return None;
        }
        prev = d - prev;
        out.push(prev);
    }
    if prev != 0 {
        return None;
    }
    Some(out)
}

/// Feasibility witness for the ν = 1 vanishing criterion.
#[derive(Clone, Debug, Serialize)]
pub struct Nu1Witness {
    /// rank of ∂_1 out of each degree q (0 where the target is negative)
    pub ranks: Vec<usize>,
    #[serde(skip)]
    pub complex: FloerComplex,
}

/// Decides whether a Betti vector admits vanishing homology when ν <= 1,
/// by exactness of the δ_1 chains; on success the explicit witness complex
/// (dims = beta, ∂_0 = 0, shifted-identity ∂_1 blocks) is returned.
pub fn vanishing_feasible_nu1(
    beta: &[usize],
    period: usize,
) -> Result<Option<Nu1Witness>, DeduceError> {
    let k = beta.len() - 1;
    let nu = nu_of(k, period);
    if nu >= 2 {
        return Err(DeduceError::NuTooLarge(nu));
    }
    if nu == 0 {
        // d = ∂_0, so HF is the cohomology itself
        return Ok(if beta.iter().all(|&b| b == 0) {
            Some(Nu1Witness {
                ranks: vec![0; k + 1],
                complex: FloerComplex::new(k, period, beta.to_vec(), vec![]).unwrap(),
            })
        } else {
            None
        });
    }
    let Some(ranks) = nu1_ranks(beta, period) else {
        return Ok(None);
    };
    let complex = nu1_witness_complex(beta, period, &ranks);
    debug_assert!(complex.is_valid());
    Ok(Some(Nu1Witness { ranks, complex }))
}

/// Forced δ_1 ranks for exactness of all chains; None if infeasible.
fn nu1_ranks(beta: &[usize], period: usize) -> Option<Vec<usize>> {
    let k = beta.len() - 1;
    let step = period - 1;
    let mut r = vec![0usize; k + 1];
    for q in (0..=k).rev() {
        let incoming = if q + step <= k { r[q + step] } else { 0 };
        if incoming > beta[q] {
            return None;
        }
        let out = beta[q] - incoming;
        if q < step {
            // target degree is negative: the class must already be killed
            if out != 0 {
                return None;
            }
        } else {
            r[q] = out;
        }
    }
    Some(r)
}

/// dims = beta, ∂_0 = 0, ∂_1 out of degree q maps the last ranks[q] source
/// coordinates onto the first ranks[q] target coordinates. Exactness makes
/// consecutive blocks compose to zero.
fn nu1_witness_complex(beta: &[usize], period: usize, ranks: &[usize]) -> FloerComplex {
    let k = beta.len() - 1;
    let mut d1 = Vec::with_capacity(k + 1);
    for q in 0..=k {
        let tgt = q as isize + 1 - period as isize;
        let rows = if tgt < 0 { 0 } else { beta[tgt as usize] };
        let mut m = BitMatrix::zero(rows, beta[q]);
        for t in 0..ranks[q] {
            m.set(t, beta[q] - ranks[q] + t, true);
        }
        d1.push(m);
    }
    FloerComplex::new(k, period, beta.to_vec(), vec![(1, d1)]).unwrap()
}

/// One page of a dimension-level profile: cell dims by degree and the rank
/// of δ_r out of each degree.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PageStage {
    pub r: usize,
    pub dims: Vec<usize>,
    pub out: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PageProfile {
    pub stages: Vec<PageStage>,
}

/// Searches for a per-page rank profile driving the Betti vector to zero by
/// page ν+1. Feasibility is necessary for an actual complex with vanishing
/// homology; for ν >= 2 it is not claimed sufficient.
pub fn vanishing_feasible_pages(
    beta: &[usize],
    period: usize,
    budget: u64,
) -> Result<Option<PageProfile>, DeduceError> {
    let k = beta.len() - 1;
    let nu = nu_of(k, period);
    if nu == 0 {
        return Ok(if beta.iter().all(|&b| b == 0) {
            Some(PageProfile { stages: vec![] })
        } else {
            None
        });
    }
    let mut s = PageSearch {
        period,
        nu,
        k,
        budget,
        nodes: 0,
    };
    let stages = s.go(beta.to_vec(), 1)?;
    Ok(stages.map(|stages| PageProfile { stages }))
}

struct PageSearch {
    period: usize,
    nu: usize,
    k: usize,
    budget: u64,
    nodes: u64,
}

impl PageSearch {
    fn go(&mut self, v: Vec<usize>, r: usize) -> Result<Option<Vec<PageStage>>, DeduceError> {
        let step = r * self.period - 1; // δ_r drops the degree by rN-1
        if r == self.nu {
            // last page: the out-ranks are forced by exactness
            let mut out = vec![0usize; self.k + 1];
            for q in (0..=self.k).rev() {
                let incoming = if q + step <= self.k { out[q + step] } else { 0 };
                if incoming > v[q] {
                    return Ok(None);
                }
                let o = v[q] - incoming;
                if q < step {
                    if o != 0 {
                        return Ok(None);
                    }
                } else {
                    out[q] = o;
                }
            }
            return Ok(Some(vec![PageStage { r, dims: v, out }]));
        }
        // enumerate out-vectors, highest degree first so each degree's
        // incoming rank is already fixed
        let mut out = vec![0usize; self.k + 1];
        self.enumerate(&v, r, step, self.k as isize, &mut out)
    }

    fn enumerate(
        &mut self,
        v: &[usize],
        r: usize,
        step: usize,
        q: isize,
        out: &mut Vec<usize>,
    ) -> Result<Option<Vec<PageStage>>, DeduceError> {
        if q < 0 {
            let mut next = vec![0usize; self.k + 1];
            for i in 0..=self.k {
                let incoming = if i + step <= self.k { out[i + step] } else { 0 };
                next[i] = v[i] - out[i] - incoming;
            }
            let rest = self.go(next, r + 1)?;
            return Ok(rest.map(|mut stages| {
                stages.insert(
                    0,
                    PageStage {
                        r,
                        dims: v.to_vec(),
                        out: out.clone(),
                    },
                );
                stages
            }));
        }
        let qu = q as usize;
        let incoming = if qu + step <= self.k { out[qu + step] } else { 0 };
        if incoming > v[qu] {
            return Ok(None);
        }
        let tgt = q - step as isize;
        let hi = if tgt < 0 {
            0
        } else {
            (v[qu] - incoming).min(v[tgt as usize])
        };
        for o in 0..=hi {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(DeduceError::SearchBudgetExceeded(self.nodes));
            }
            out[qu] = o;
            if let Some(found) = self.enumerate(v, r, step, q - 1, out)? {
                return Ok(Some(found));
            }
        }
        out[qu] = 0;
        Ok(None)
    }
}

/// One way a cohomology class could die in the spectral sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DeathOption {
    pub page: usize,
    /// true: killed by an incoming differential from `partner`;
    /// false: maps out onto `partner`
    pub incoming: bool,
    pub partner: usize,
}

/// For each supported degree, the pages r <= ν on which a class there can
/// interact with another supported degree — the arithmetic skeleton of the
/// divisibility arguments.
pub fn death_analysis(
    support: &[usize],
    k: usize,
    period: usize,
) -> Vec<(usize, Vec<DeathOption>)> {
    let nu = nu_of(k, period);
    let in_support = |d: isize| d >= 0 && d <= k as isize && support.contains(&(d as usize));
    let mut report = Vec::new();
    let mut sorted: Vec<usize> = support.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &q in &sorted {
        let mut opts = Vec::new();
        for r in 1..=nu {
            let tgt = q as isize + 1 - (r * period) as isize;
            if in_support(tgt) {
                opts.push(DeathOption {
                    page: r,
                    incoming: false,
                    partner: tgt as usize,
                });
            }
            let src = q as isize - 1 + (r * period) as isize;
            if in_support(src) {
                opts.push(DeathOption {
                    page: r,
                    incoming: true,
                    partner: src as usize,
                });
            }
        }
        report.push((q, opts));
    }
    report
}

/// All N in the range for which the indicator Betti vector of `support` is
/// not excluded by the page search.
pub fn divisibility_set(
    support: &[usize],
    k: usize,
    n_lo: usize,
    n_hi: usize,
    budget: u64,
) -> Result<Vec<usize>, DeduceError> {
    let mut beta = vec![0usize; k + 1];
    for &q in support {
        beta[q] = 1;
    }
    let mut feasible = Vec::new();
    for period in n_lo.max(2)..=n_hi {
        if vanishing_feasible_pages(&beta, period, budget)?.is_some() {
            feasible.push(period);
        }
    }
    Ok(feasible)
}

#[derive(Clone, Debug, Default)]
pub struct GysinConstraints {
    /// pinned base Betti numbers
    pub fixed: BTreeMap<usize, usize>,
    /// lower bounds on base Betti numbers
    pub min: BTreeMap<usize, usize>,
    /// Poincaré duality on the base: β_i = β_{k-i}
    pub pd: bool,
    /// per-entry search bound
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GysinSolution {
    pub base: Vec<usize>,
    /// cup_ranks[j] = rank of ∪w : H^j(L) -> H^{j+2}(L)
    pub cup_ranks: Vec<usize>,
}

/// Enumerates base Betti vectors β(L) making the Z₂ Gysin sequence of a
/// circle bundle Γ -> L exact:
///
/// ```text
/// ... -> H^{i-2}(L) -(∪w)-> H^i(L) -> H^i(Γ) -> H^{i-1}(L) -(∪w)-> ...
/// ```
///
/// `gamma` are the Betti numbers of the total space (degrees 0..=k+1 where
/// k = dim L). With `w_zero` every ∪w rank is forced to vanish and the
/// sequence splits: β_i(L) + β_{i-1}(L) = β_i(Γ). Once β is chosen all
/// ranks are forced, so the enumeration is exact; solutions come out in
/// lexicographic order of β.
pub fn gysin_solve(
    gamma: &[usize],
    k: usize,
    w_zero: bool,
    cons: &GysinConstraints,
) -> Result<Vec<GysinSolution>, DeduceError> {
    assert_eq!(gamma.len(), k + 2, "total space has degrees 0..=k+1");
    // exactness gives β_i <= γ_i + β_{i-2}, so β_i <= γ_i + γ_{i-2} + ...
    let cap = |i: usize| -> usize {
        let mut c = 0;
        let mut d = i as isize;
        while d >= 0 {
            c += gamma[d as usize];
            d -= 2;
        }
        c
    };
    let needed = (0..=k)
        .filter(|i| !cons.fixed.contains_key(i))
        .map(cap)
        .max()
        .unwrap_or(0);
    if cons.bound < needed {
        return Err(DeduceError::BoundTooSmall {
            bound: cons.bound,
            needed,
        });
    }
    let mut st = GysinSearch {
        gamma,
        k,
        w_zero,
        cons,
        solutions: Vec::new(),
    };
    st.dfs(0, 0, &mut Vec::new(), &mut Vec::new());
    Ok(st.solutions)
}

struct GysinSearch<'a> {
    gamma: &'a [usize],
    k: usize,
    w_zero: bool,
    cons: &'a GysinConstraints,
    solutions: Vec<GysinSolution>,
}

impl GysinSearch<'_> {
    /// Processes the triple [β_i, γ_i, β_{i-1}] given the rank entering its
    /// first position; returns the rank leaving the triple, i.e. the ∪w
    /// rank out of H^{i-1}(L).
    fn triple(&self, i: usize, b_i: usize, b_prev: usize, r_in: usize) -> Option<usize> {
        let g = if i <= self.k + 1 { self.gamma[i] } else { 0 };
        let r_a = b_i.checked_sub(r_in)?;
        let r_b = g.checked_sub(r_a)?;
        let r_c = b_prev.checked_sub(r_b)?;
        if self.w_zero && r_c != 0 {
            return None;
        }
        Some(r_c)
    }

    fn dfs(&mut self, i: usize, r_in: usize, base: &mut Vec<usize>, cups: &mut Vec<usize>) {
        if i > self.k {
            // tail triples with β_{k+1} = β_{k+2} = 0
            let mut r = r_in;
            let mut prev = base[self.k];
            let mut ok = true;
            let mut tail_cups = Vec::new();
            for j in self.k + 1..=self.k + 2 {
                match self.triple(j, 0, prev, r) {
                    Some(rc) => {
                        tail_cups.push(rc);
                        r = rc;
                        prev = 0;
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && r == 0 {
                let mut cup_ranks = cups.clone();
                cup_ranks.extend(tail_cups); // triples k+1, k+2 close degrees k-1? no:
                // cups[j] = ∪w rank out of H^{j-1}; after triples 1..=k we have
                // ranks out of H^0..H^{k-1}; the tail adds H^k (and a final 0)
                cup_ranks.pop(); // drop the rank after the last group (always 0)
                self.solutions.push(GysinSolution {
                    base: base.clone(),
                    cup_ranks,
                });
            }
            return;
        }
        let lo = *self.cons.min.get(&i).unwrap_or(&0);
        let candidates: Vec<usize> = if let Some(&v) = self.cons.fixed.get(&i) {
            if v >= lo { vec![v] } else { vec![] }
        } else if self.cons.pd && self.k - i < i {
            let v = base[self.k - i];
            if v >= lo { vec![v] } else { vec![] }
        } else {
            (lo..=self.cons.bound).collect()
        };
        for b in candidates {
            if self.cons.pd && self.k - i < i && b != base[self.k - i] {
                continue;
            }
            let prev = if i == 0 { 0 } else { base[i - 1] };
            let Some(rc) = self.triple(i, b, prev, r_in) else {
                continue;
            };
            base.push(b);
            if i >= 1 {
                cups.push(rc); // rank out of H^{i-1}(L)
            } else {
                debug_assert_eq!(rc, 0);
            }
            self.dfs(i + 1, rc, base, cups);
            base.pop();
            if i >= 1 {
                cups.pop();
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct BettiConstraints {
    pub fixed: BTreeMap<usize, usize>,
    pub pd: bool,
    pub bound: usize,
}

/// Complete enumeration (entries <= bound except where pinned) of Betti
/// vectors of length k+1 admitting vanishing homology at the given period.
/// Uses the exact δ_1 chain criterion for ν <= 1 and the page search (as a
/// necessary condition) for ν >= 2. Sorted lexicographically.
pub fn forced_betti(
    k: usize,
    period: usize,
    cons: &BettiConstraints,
    budget: u64,
) -> Result<Vec<Vec<usize>>, DeduceError> {
    let nu = nu_of(k, period);
    if nu == 0 {
        let zero = vec![0usize; k + 1];
        let ok = cons.fixed.iter().all(|(&i, &v)| i <= k && v == 0);
        return Ok(if ok { vec![zero] } else { vec![] });
    }
    let mut st = BettiSearch {
        k,
        period,
        nu,
        cons,
        budget,
        nodes: 0,
        solutions: Vec::new(),
    };
    // chain ranks for the ν = 1 fast path
    let mut ranks = vec![0usize; k + 1];
    let mut beta_rev = Vec::new();
    st.dfs(k as isize, &mut beta_rev, &mut ranks)?;
    let mut sols = st.solutions;
    sols.sort();
    Ok(sols)
}

struct BettiSearch<'a> {
    k: usize,
    period: usize,
    nu: usize,
    cons: &'a BettiConstraints,
    budget: u64,
    nodes: u64,
    solutions: Vec<Vec<usize>>,
}

impl BettiSearch<'_> {
    /// Degrees are chosen from k downward so that each chain's incoming
    /// rank (from degree q + N - 1) is already known when ν = 1, and so
    /// that Poincaré duality pins β_q from the already-chosen mirror.
    fn dfs(
        &mut self,
        q: isize,
        beta_rev: &mut Vec<usize>,
        ranks: &mut Vec<usize>,
    ) -> Result<(), DeduceError> {
        if q < 0 {
            let beta: Vec<usize> = beta_rev.iter().rev().copied().collect();
            if self.nu >= 2 {
                if vanishing_feasible_pages(&beta, self.period, self.budget - self.nodes)?
                    .is_some()
                {
                    self.solutions.push(beta);
                }
            } else {
                self.solutions.push(beta);
            }
            return Ok(());
        }
        let qu = q as usize;
        let k = self.k;
        // chosen degrees are k, k-1, ..., so degree d sits at index k - d
        let at = move |beta_rev: &Vec<usize>, d: usize| beta_rev[k - d];
        let candidates: Vec<usize> = if let Some(&v) = self.cons.fixed.get(&qu) {
            vec![v]
        } else if self.cons.pd && self.k - qu > qu {
            vec![at(beta_rev, self.k - qu)]
        } else {
            (0..=self.cons.bound).collect()
        };
        let step = self.period - 1;
        for b in candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(DeduceError::SearchBudgetExceeded(self.nodes));
            }
            if self.cons.pd {
                let m = self.k - qu;
                if m > qu && at(beta_rev, m) != b {
                    continue;
                }
            }
            let mut saved = 0;
            if self.nu == 1 {
                // exact-chain pruning
                let incoming = if qu + step <= self.k { ranks[qu + step] } else { 0 };
                if incoming > b {
                    continue;
                }
                let out = b - incoming;
                if qu < step && out != 0 {
                    continue;
                }
                saved = ranks[qu];
                ranks[qu] = if qu < step { 0 } else { out };
            }
            beta_rev.push(b);
            self.dfs(q - 1, beta_rev, ranks)?;
            beta_rev.pop();
            if self.nu == 1 {
                ranks[qu] = saved;
            }
        }
        Ok(())
    }
}
