//! Runs, empirical entropies, and checks of the run-count bound and the
//! context factorization of `bwt_K(w^R)`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Float;

use crate::orders::OrderSpec;
use crate::reference::{sorted_rotation_starts, transform_from_starts};
use crate::symbol::Symbol;
use crate::transform::rotation_order;
use crate::{Error, Result};

/// Above this length the context blocks come from the fast rotation sort
/// rather than the matrix.
pub const MATRIX_LIMIT: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLength<S> {
    pub runs: Vec<(S, usize)>,
}

impl<S: Symbol> RunLength<S> {
    pub fn rho(&self) -> usize {
        self.runs.len()
    }

    pub fn rho_per_symbol(&self) -> BTreeMap<S, usize> {
        let mut m = BTreeMap::new();
        for &(c, _) in &self.runs {
            *m.entry(c).or_insert(0) += 1;
        }
        m
    }

    pub fn expand(&self) -> Vec<S> {
        self.runs.iter().flat_map(|&(c, len)| std::iter::repeat_n(c, len)).collect()
    }
}

pub fn rle<S: Symbol>(w: &[S]) -> RunLength<S> {
    let mut runs: Vec<(S, usize)> = Vec::new();
    for &c in w {
        match runs.last_mut() {
            Some((d, len)) if *d == c => *len += 1,
            _ => runs.push((c, 1)),
        }
    }
    RunLength { runs }
}

fn to_float<F: Float>(x: usize) -> F {
    F::from(x).expect("count fits the float type")
}

// |s| H0(s) from symbol counts
fn weighted_h0<F: Float, I: IntoIterator<Item = usize>>(counts: I, total: usize) -> F {
    if total == 0 {
        return F::zero();
    }
    let n = to_float::<F>(total);
    counts.into_iter().filter(|&c| c > 0).fold(F::zero(), |acc, c| {
        let c = to_float::<F>(c);
        acc - c * (c / n).log2()
    })
}

fn counts<S: Symbol>(w: &[S]) -> HashMap<S, usize> {
    let mut m = HashMap::new();
    for &c in w {
        *m.entry(c).or_insert(0) += 1;
    }
    m
}

/// Zeroth-order empirical entropy, bits per symbol.
pub fn h0<F: Float, S: Symbol>(w: &[S]) -> F {
    if w.is_empty() {
        return F::zero();
    }
    weighted_h0::<F, _>(counts(w).into_values(), w.len()) / to_float(w.len())
}

fn context_entropy<F: Float, S: Symbol>(w: &[S], k: usize, circular: bool) -> F {
    let n = w.len();
    if n == 0 {
        return F::zero();
    }
    if k == 0 {
        return h0(w);
    }
    // context -> counts of the symbol just before it
    let mut table: HashMap<Vec<S>, HashMap<S, usize>> = HashMap::new();
    let starts = if circular { 0..n } else { 1..(n + 1).saturating_sub(k) };
    for i in starts {
        let x: Vec<S> = (0..k).map(|j| w[(i + j) % n]).collect();
        let before = w[(i + n - 1) % n];
        *table.entry(x).or_default().entry(before).or_insert(0) += 1;
    }
    let total = table.values().fold(F::zero(), |acc, m| {
        let len = m.values().sum();
        acc + weighted_h0::<F, _>(m.values().copied(), len)
    });
    total / to_float(n)
}

/// `k`-th order empirical entropy: for each length-`k` factor `x`, the
/// symbols preceding its occurrences form `x_w`, and
/// `H_k = (1/|w|) Σ |x_w| H0(x_w)`. An occurrence at the very start has no
/// preceding symbol and contributes nothing.
pub fn hk<F: Float, S: Symbol>(w: &[S], k: usize) -> F {
    context_entropy(w, k, false)
}

/// [`hk`] over the circular word: factors may wrap and every occurrence has
/// a predecessor.
pub fn hk_circular<F: Float, S: Symbol>(w: &[S], k: usize) -> F {
    context_entropy(w, k, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunBound {
    pub rho_out: usize,
    pub rho_in: usize,
    pub holds: bool,
}

/// `ρ(bwt_K(w)) ≤ 2ρ(w)`.
pub fn check_run_bound<S: Symbol>(w: &[S], spec: &OrderSpec<S>) -> Result<RunBound> {
    let out = transform_from_starts(w, &rotation_order(w, spec)?);
    let rho_out = rle(&out.last_column).rho();
    let rho_in = rle(w).rho();
    Ok(RunBound { rho_out, rho_in, holds: rho_out <= 2 * rho_in })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyCheck<F> {
    /// `H_r(w)` with circular contexts.
    pub lhs: F,
    /// `(1/|u|) Σ |u_i| H0(u_i)` over the context blocks of `u = bwt_K(w^R)`.
    pub rhs: F,
    /// `H_r(w)` with linear contexts, for reference.
    pub lhs_linear: F,
    pub blocks: usize,
    pub equal: bool,
}

pub const ENTROPY_TOLERANCE: f64 = 1e-9;

/// Splits `u = bwt_K(w^R)` into maximal groups of rows sharing their first
/// `r` symbols and returns the block lengths together with `u`.
pub fn context_blocks<S: Symbol>(w: &[S], spec: &OrderSpec<S>, r: usize) -> Result<(Vec<S>, Vec<usize>)> {
    let n = w.len();
    if r >= n.max(1) {
        return Err(Error::ContextTooLong { r, n });
    }
    let wr: Vec<S> = w.iter().rev().copied().collect();
    let starts =
        if n <= MATRIX_LIMIT { sorted_rotation_starts(&wr, spec)? } else { rotation_order(&wr, spec)? };
    let u = transform_from_starts(&wr, &starts).last_column;
    let prefix_eq = |a: usize, b: usize| (0..r).all(|j| wr[(a + j) % n] == wr[(b + j) % n]);
    let mut blocks = Vec::new();
    let mut len = 0;
    for row in 0..n {
        if row > 0 && !prefix_eq(starts[row - 1], starts[row]) {
            blocks.push(len);
            len = 0;
        }
        len += 1;
    }
    blocks.push(len);
    Ok((u, blocks))
}

/// Compares `H_r(w)` against the weighted zeroth-order entropy of the
/// length-`r` context blocks of `bwt_K(w^R)`. The blocks are circular
/// contexts, so the circular `H_r` is the side that matches exactly.
pub fn check_entropy_factorization<F: Float, S: Symbol>(w: &[S], spec: &OrderSpec<S>, r: usize) -> Result<EntropyCheck<F>> {
    let (u, blocks) = context_blocks(w, spec, r)?;
    let mut rhs = F::zero();
    let mut at = 0;
    for &len in &blocks {
        rhs = rhs + weighted_h0::<F, _>(counts(&u[at..at + len]).into_values(), len);
        at += len;
    }
    rhs = rhs / to_float(u.len());
    let lhs = hk_circular::<F, S>(w, r);
    let tol = F::from(ENTROPY_TOLERANCE).unwrap().max(F::epsilon() * to_float(64));
    Ok(EntropyCheck { lhs, rhs, lhs_linear: hk(w, r), blocks: blocks.len(), equal: (lhs - rhs).abs() <= tol })
}
