//! Brute-force transforms built directly from the sorted rotation matrix.
//!
//! Everything here is quadratic or worse and meant as ground truth for the
//! fast paths; [`invert_generic`] targets inputs of a few thousand symbols.

use std::cmp::Ordering;

use crate::galois::is_primitive;
use crate::orders::{cmp_alt, cmp_rotations, OrderSpec};
use crate::symbol::{check_sentinel_terminated, Symbol};
use crate::{Error, Result};

/// Last column `L` of a sorted rotation matrix and the row `I` holding the
/// input word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransformOutput<S> {
    pub last_column: Vec<S>,
    pub row_index: usize,
}

impl<S: Symbol> TransformOutput<S> {
    pub fn new(last_column: Vec<S>, row_index: usize) -> Self {
        TransformOutput { last_column, row_index }
    }

    pub fn len(&self) -> usize {
        self.last_column.len()
    }

    pub fn is_empty(&self) -> bool {
        self.last_column.is_empty()
    }

    /// The first column `F`: the symbols of `L` in base order.
    pub fn first_column(&self) -> Vec<S> {
        let mut f = self.last_column.clone();
        f.sort_unstable();
        f
    }
}

fn check_input<S: Symbol>(w: &[S], spec: &OrderSpec<S>) -> Result<()> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !is_primitive(w) {
        return Err(Error::NotPrimitive);
    }
    spec.check_word(w)
}

/// Start positions of the rotations of `w`, sorted by `spec`.
pub fn sorted_rotation_starts<S: Symbol>(w: &[S], spec: &OrderSpec<S>) -> Result<Vec<usize>> {
    check_input(w, spec)?;
    let mut starts: Vec<usize> = (0..w.len()).collect();
    starts.sort_by(|&i, &j| cmp_rotations(spec, w, i, j));
    Ok(starts)
}

/// The rotations of `w` as rows, sorted by `spec`.
pub fn rotation_matrix<S: Symbol>(w: &[S], spec: &OrderSpec<S>) -> Result<Vec<Vec<S>>> {
    let starts = sorted_rotation_starts(w, spec)?;
    Ok(starts.into_iter().map(|s| rotation(w, s)).collect())
}

pub(crate) fn rotation<S: Symbol>(w: &[S], start: usize) -> Vec<S> {
    w[start..].iter().chain(&w[..start]).copied().collect()
}

/// Builds `(L, I)` from the sorted rotation starts of `w`.
pub fn transform_from_starts<S: Symbol>(w: &[S], starts: &[usize]) -> TransformOutput<S> {
    let n = w.len();
    let last_column = starts.iter().map(|&s| w[(s + n - 1) % n]).collect();
    let row_index = starts.iter().position(|&s| s == 0).expect("starts is a permutation");
    TransformOutput { last_column, row_index }
}

/// `bwt_K(w)` by sorting the rotation matrix.
pub fn bwt_k_naive<S: Symbol>(w: &[S], spec: &OrderSpec<S>) -> Result<TransformOutput<S>> {
    let starts = sorted_rotation_starts(w, spec)?;
    Ok(transform_from_starts(w, &starts))
}

/// The LF-mapping read off a sorted matrix: row `r` goes to the row holding
/// its rotation one step to the right.
pub fn lf_from_starts(starts: &[usize]) -> Vec<usize> {
    let n = starts.len();
    let mut row_of = vec![0; n];
    for (r, &s) in starts.iter().enumerate() {
        row_of[s] = r;
    }
    starts.iter().map(|&s| row_of[(s + n - 1) % n]).collect()
}

/// Inverts any `BWT_K` by rebuilding the matrix one column at a time.
///
/// At step `j` the sorted circular factors of length `j` get `L` prepended
/// row by row and are re-sorted under `spec` on length `j + 1`. After `n - 1`
/// steps the rows are the sorted rotations and row `I` is the answer.
pub fn invert_generic<S: Symbol>(out: &TransformOutput<S>, spec: &OrderSpec<S>) -> Result<Vec<S>> {
    let l = &out.last_column;
    let n = l.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    if out.row_index >= n {
        return Err(Error::CorruptTransform(format!("row index {} with {n} rows", out.row_index)));
    }
    spec.check_word(l)?;

    // rows stored reversed-in-construction: factors[r] holds the first j
    // columns of row r
    let mut factors: Vec<Vec<S>> = out.first_column().into_iter().map(|c| vec![c]).collect();
    for _ in 1..n {
        let mut next: Vec<Vec<S>> = l
            .iter()
            .zip(&factors)
            .map(|(&c, f)| {
                let mut g = Vec::with_capacity(f.len() + 1);
                g.push(c);
                g.extend_from_slice(f);
                g
            })
            .collect();
        next.sort_by(|x, y| spec.cmp(x, y).unwrap_or(Ordering::Equal));
        factors = next;
    }

    let w = factors[out.row_index].clone();
    // the rebuilt matrix must be exactly the sorted rotations of w with last column L
    let expected = bwt_k_naive(&w, spec).map_err(|_| Error::CorruptTransform("rebuilt word is not primitive".into()))?;
    if expected != *out {
        return Err(Error::CorruptTransform("rebuilt matrix is not closed under rotation".into()));
    }
    Ok(w)
}

/// Suffix order under a comparator, for sentinel-terminated words.
fn suffix_sort_by<S: Symbol>(w: &[S], cmp: impl Fn(&[S], &[S]) -> Ordering) -> Result<Vec<usize>> {
    check_sentinel_terminated(w)?;
    let mut sa: Vec<usize> = (0..w.len()).collect();
    sa.sort_by(|&i, &j| cmp(&w[i..], &w[j..]));
    Ok(sa)
}

/// Suffixes of a sentinel-terminated word in `≺_alt` order.
pub fn alt_suffix_sort_naive<S: Symbol>(w: &[S]) -> Result<Vec<usize>> {
    suffix_sort_by(w, cmp_alt)
}

/// Suffixes of a sentinel-terminated word in lexicographic order.
pub fn lex_suffix_sort_naive<S: Symbol>(w: &[S]) -> Result<Vec<usize>> {
    suffix_sort_by(w, |x, y| x.cmp(y))
}
