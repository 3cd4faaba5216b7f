//! Front door: `transform` and `invert` for any order, taking the
//! suffix-sorting path when the order is the standard or alternating one
//! and the matrix path otherwise.

use crate::dcsort::{suffix_array, DifferenceCover, SuffixOrder};
use crate::galois::{alt_rotation_order, is_primitive};
use crate::lfmap::{invert_fast, Mode};
use crate::orders::{OrderSpec, StandardOrder};
use crate::reference::{invert_generic, sorted_rotation_starts, transform_from_starts, TransformOutput};
use crate::symbol::{is_sentinel_terminated, Symbol};
use crate::{Error, Result};

/// Start of the lexicographically least rotation (Booth).
pub fn least_rotation<S: Symbol>(w: &[S]) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| w[i % n];
    let mut f = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k % n
}

/// Rotation starts of a primitive `w` sorted under the plain order, via the
/// least rotation and a suffix sort.
pub fn lex_rotation_order<S: Symbol>(w: &[S], cover: &DifferenceCover) -> Result<Vec<usize>> {
    if !is_primitive(w) {
        return Err(if w.is_empty() { Error::EmptyWord } else { Error::NotPrimitive });
    }
    let n = w.len();
    let k = least_rotation(w);
    let mut lifted: Vec<u32> = Vec::with_capacity(n + 1);
    lifted.extend(w[k..].iter().chain(&w[..k]).map(|&c| {
        u32::try_from(c.index() + 1).expect("symbol too large for suffix sorting")
    }));
    lifted.push(0);
    let sa = suffix_array(&lifted, cover, SuffixOrder::Lex)?;
    Ok(sa[1..].iter().map(|&p| (p + k) % n).collect())
}

/// Rotation starts of `w` in `spec` order, by the fastest available route.
pub fn rotation_order<S: Symbol>(w: &[S], spec: &OrderSpec<S>) -> Result<Vec<usize>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let cover = DifferenceCover::default();
    match spec.standard() {
        Some(StandardOrder::Alternating) if is_sentinel_terminated(w) => suffix_array(w, &cover, SuffixOrder::Alt),
        Some(StandardOrder::Alternating) => alt_rotation_order(w, &cover),
        Some(StandardOrder::Lex) if is_sentinel_terminated(w) => suffix_array(w, &cover, SuffixOrder::Lex),
        Some(StandardOrder::Lex) => lex_rotation_order(w, &cover),
        None => sorted_rotation_starts(w, spec),
    }
}

/// `bwt_K(w) = (L, I)`.
pub fn transform<S: Symbol>(w: &[S], spec: &OrderSpec<S>) -> Result<TransformOutput<S>> {
    let starts = rotation_order(w, spec)?;
    Ok(transform_from_starts(w, &starts))
}

/// Inverse of [`transform`]. LF-walk for the two rank-invertible orders,
/// column-by-column reconstruction for the rest.
pub fn invert<S: Symbol>(out: &TransformOutput<S>, spec: &OrderSpec<S>) -> Result<Vec<S>> {
    match spec.standard() {
        Some(StandardOrder::Lex) => invert_fast(out, Mode::Bwt),
        Some(StandardOrder::Alternating) => invert_fast(out, Mode::Abwt),
        None => invert_generic(out, spec),
    }
}
