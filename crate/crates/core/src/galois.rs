//! Galois words (rotations minimal under `≺_alt`) and the linear-time
//! search for the Galois conjugate of a primitive word, which lets the
//! alternating transform be built without an end-of-string marker.

use std::cmp::Ordering;

use crate::dcsort::{alt_suffix_array_dc, DifferenceCover};
use crate::orders::{cmp_alt, cmp_rotations, OrderSpec};
use crate::reference::TransformOutput;
use crate::symbol::Symbol;
use crate::{Error, Result};

/// Classic failure function: `f[j]` is the border length of `w[..j]`,
/// with `f[0] = -1`.
pub fn failure_function<S: Symbol>(w: &[S]) -> Vec<isize> {
    let mut f = vec![-1isize; w.len() + 1];
    let mut i: isize = -1;
    for j in 0..w.len() {
        while i >= 0 && w[i as usize] != w[j] {
            i = f[i as usize];
        }
        i += 1;
        f[j + 1] = i;
    }
    f
}

/// True when all rotations of `w` are distinct.
pub fn is_primitive<S: Symbol>(w: &[S]) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    let period = n - failure_function(w)[n] as usize;
    period == n || !n.is_multiple_of(period)
}

/// Definition check: `w ⪯_alt vu` for every factorization `w = uv`.
pub fn is_galois<S: Symbol>(w: &[S]) -> Result<bool> {
    if !is_primitive(w) {
        return Err(Error::NotPrimitive);
    }
    let spec = OrderSpec::alternating();
    Ok((1..w.len()).all(|i| cmp_rotations(&spec, w, 0, i) == Ordering::Less))
}

/// Suffix characterization: `w` is smaller than each of its proper
/// suffixes under `≺_alt`. Agrees with [`is_galois`] on primitive words.
pub fn is_galois_by_suffixes<S: Symbol>(w: &[S]) -> Result<bool> {
    if !is_primitive(w) {
        return Err(Error::NotPrimitive);
    }
    Ok((1..w.len()).all(|i| cmp_alt(w, &w[i..]) == Ordering::Less))
}

/// Border array over the current candidate rotation, `B[0] = -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderArray(pub Vec<isize>);

/// Result of [`find_galois_rotation`].
#[derive(Debug, Clone)]
pub struct GaloisRotation {
    /// Start of the Galois conjugate.
    pub start: usize,
    /// Symbol comparisons performed; at most `4n - 3`.
    pub comparisons: usize,
    pub borders: BorderArray,
}

/// Finds the rotation of a primitive word that is a Galois word.
///
/// `k` is the start of the current candidate, `w[k..k+j)` (cyclically) is a
/// Galois word whose border has length `i`. On a mismatch the order used
/// depends on the parity of `i`; a smaller continuation moves the candidate
/// to `k + j - i`. Border values already computed stay valid after the move.
pub fn find_galois_rotation<S: Symbol>(w: &[S]) -> Result<GaloisRotation> {
    let n = w.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    if !is_primitive(w) {
        return Err(Error::NotPrimitive);
    }
    let mut b = vec![0isize; n + 1];
    b[0] = -1;
    let (mut i, mut j, mut k): (isize, usize, usize) = (0, 1, 0);
    let mut comparisons = 0usize;
    while k + j < 2 * n {
        if j <= n {
            b[j] = i;
        }
        while i >= 0 {
            let next = w[(k + j) % n];
            let border = w[(k + i as usize) % n];
            comparisons += 1;
            if next == border {
                break;
            }
            let smaller = if i % 2 == 0 { next < border } else { next > border };
            if smaller {
                k = k + j - i as usize;
                j = i as usize;
            }
            i = b[i as usize];
        }
        i += 1;
        j += 1;
    }
    Ok(GaloisRotation { start: k % n, comparisons, borders: BorderArray(b) })
}

/// `abwt(w)` for a primitive word without an end marker: rotate to the
/// Galois conjugate `w'`, sort the suffixes of `w'$` and drop the sentinel.
/// `I` is the row of `w` itself.
pub fn abwt_sentinel_free<S: Symbol>(w: &[S]) -> Result<TransformOutput<S>> {
    abwt_sentinel_free_with(w, &DifferenceCover::default())
}

pub fn abwt_sentinel_free_with<S: Symbol>(w: &[S], cover: &DifferenceCover) -> Result<TransformOutput<S>> {
    let starts = alt_rotation_order(w, cover)?;
    Ok(crate::reference::transform_from_starts(w, &starts))
}

/// Start positions of the rotations of `w` in `⪯_alt` order, via the
/// Galois conjugate and a difference-cover suffix sort.
pub fn alt_rotation_order<S: Symbol>(w: &[S], cover: &DifferenceCover) -> Result<Vec<usize>> {
    let n = w.len();
    let k = find_galois_rotation(w)?.start;
    // shift every symbol up by one so zero is free for the new sentinel
    let mut lifted: Vec<u32> = Vec::with_capacity(n + 1);
    lifted.extend(w[k..].iter().chain(&w[..k]).map(|&c| {
        u32::try_from(c.index() + 1).expect("symbol too large for suffix sorting")
    }));
    lifted.push(0);
    let sa = alt_suffix_array_dc(&lifted, cover)?;
    debug_assert_eq!(sa[0], n);
    Ok(sa[1..].iter().map(|&p| (p + k) % n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::{bwt_k_naive, rotation};

    #[test]
    fn primitivity() {
        assert!(!is_primitive(b"abab"));
        assert!(is_primitive(b"ababba"));
        assert!(is_primitive(b"a"));
        assert!(!is_primitive(b"aaa"));
        assert!(is_primitive(b"aab"));
        assert!(!is_primitive::<u8>(b""));
    }

    #[test]
    fn galois_examples() {
        assert!(is_galois(b"ababba").unwrap());
        assert!(!is_galois(b"aababb").unwrap());
        assert!(is_galois(b"ababaa").unwrap());
        assert!(!is_galois(b"banana").unwrap());
        assert!(is_galois(b"ananab").unwrap());
        assert!(is_galois(b"abab").is_err());
        for w in [&b"ababba"[..], b"aababb", b"ababaa", b"banana", b"ananab"] {
            assert_eq!(is_galois(w).unwrap(), is_galois_by_suffixes(w).unwrap());
        }
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(find_galois_rotation(b"aababb").unwrap().start, 1);
        assert_eq!(find_galois_rotation(b"aaabab").unwrap().start, 2);
        assert_eq!(find_galois_rotation(b"banana").unwrap().start, 1);
        assert_eq!(find_galois_rotation(b"a").unwrap().start, 0);
        assert!(matches!(find_galois_rotation(b"abab"), Err(Error::NotPrimitive)));
    }

    #[test]
    fn sentinel_free_examples() {
        assert_eq!(abwt_sentinel_free(b"banana").unwrap().last_column, b"bnnaaa");
        assert_eq!(abwt_sentinel_free(b"acaabr").unwrap(), TransformOutput::new(b"racaab".to_vec(), 0));
        assert_eq!(abwt_sentinel_free(b"banana").unwrap(), bwt_k_naive(b"banana", &OrderSpec::alternating()).unwrap());
    }

    #[test]
    fn lyndon_conjugate_orders_suffixes_differently() {
        // the suffix order of the Lyndon conjugate disagrees with its rotation order
        let w = b"aababb";
        let spec = OrderSpec::alternating();
        let mut by_rotation: Vec<usize> = (0..w.len()).collect();
        by_rotation.sort_by(|&i, &j| cmp_rotations(&spec, w, i, j));
        let mut by_suffix: Vec<usize> = (0..w.len()).collect();
        by_suffix.sort_by(|&i, &j| cmp_alt(&w[i..], &w[j..]));
        assert_ne!(by_rotation, by_suffix);
        // while the Galois conjugate agrees
        let g = b"ababba";
        let mut by_rotation: Vec<usize> = (0..g.len()).collect();
        by_rotation.sort_by(|&i, &j| cmp_rotations(&spec, g, i, j));
        let mut by_suffix: Vec<usize> = (0..g.len()).collect();
        by_suffix.sort_by(|&i, &j| cmp_alt(&g[i..], &g[j..]));
        assert_eq!(by_rotation, by_suffix);
        assert_eq!(by_suffix, [0, 2, 5, 3, 4, 1]);
    }

    #[test]
    fn rotation_is_the_galois_conjugate() {
        let w = b"abracadabrab";
        let g = find_galois_rotation(w).unwrap();
        assert!(is_galois(&rotation(w, g.start)).unwrap());
        assert!(g.comparisons <= 4 * w.len() - 3);
    }
}
