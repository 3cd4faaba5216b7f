//! LF-mapping for the BWT and the alternating BWT, and linear inversion.

use crate::rankindex::RankIndex;
use crate::reference::TransformOutput;
use crate::symbol::{DenseAlphabet, Symbol};
use crate::{Error, Result};

/// The two rank-invertible members of the `BWT_K` family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// `K = (Id)`: occurrences keep their relative order between `F` and `L`.
    Bwt,
    /// `K = (Id, Rev)`: occurrences appear in `L` in reverse `F` order.
    Abwt,
}

fn check_row<S: Symbol>(idx: &RankIndex<S>, i: usize) -> Result<usize> {
    let c = *idx.text().get(i).ok_or(Error::OutOfRange { index: i as isize, len: idx.len() })?;
    Ok(idx.code(c).expect("symbol of the text"))
}

/// `LF(i) = #{c < L[i]} + rank_{L[i]}(L, i - 1)`.
pub fn lf_bwt<S: Symbol>(idx: &RankIndex<S>, i: usize) -> Result<usize> {
    let code = check_row(idx, i)?;
    Ok(idx.cum_code(code) + idx.rank_prefix(code, i))
}

/// `LF(i) = #{c ≤ L[i]} - rank_{L[i]}(L, i - 1) - 1`.
pub fn lf_abwt<S: Symbol>(idx: &RankIndex<S>, i: usize) -> Result<usize> {
    let code = check_row(idx, i)?;
    Ok(idx.cum_code(code + 1) - idx.rank_prefix(code, i) - 1)
}

pub fn lf<S: Symbol>(idx: &RankIndex<S>, i: usize, mode: Mode) -> Result<usize> {
    match mode {
        Mode::Bwt => lf_bwt(idx, i),
        Mode::Abwt => lf_abwt(idx, i),
    }
}

/// The whole LF permutation in one left-to-right pass over `L`.
pub fn lf_array<S: Symbol>(l: &[S], mode: Mode) -> Vec<usize> {
    let alphabet = DenseAlphabet::of(l);
    let codes = alphabet.encode(l);
    let sigma = alphabet.len();
    let mut cum = vec![0usize; sigma + 1];
    for &c in &codes {
        cum[c as usize + 1] += 1;
    }
    for c in 0..sigma {
        cum[c + 1] += cum[c];
    }
    let mut seen = vec![0usize; sigma];
    codes
        .iter()
        .map(|&c| {
            let c = c as usize;
            let before = seen[c];
            seen[c] += 1;
            match mode {
                Mode::Bwt => cum[c] + before,
                Mode::Abwt => cum[c + 1] - before - 1,
            }
        })
        .collect()
}

/// Recovers `w` from `(L, I)` with `w[n-1-j] = L[LF^j(I)]`.
///
/// The LF orbit of `I` must have length exactly `n`; anything else means the
/// pair did not come from the transform in `mode`.
pub fn invert_fast<S: Symbol>(out: &TransformOutput<S>, mode: Mode) -> Result<Vec<S>> {
    let l = &out.last_column;
    let n = l.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    if out.row_index >= n {
        return Err(Error::CorruptTransform(format!("row index {} with {n} rows", out.row_index)));
    }
    let lf = lf_array(l, mode);
    let mut w = vec![S::zero(); n];
    let mut row = out.row_index;
    for j in 0..n {
        if j > 0 && row == out.row_index {
            return Err(Error::CorruptTransform(format!("LF cycle through I has length {j}, expected {n}")));
        }
        w[n - 1 - j] = l[row];
        row = lf[row];
    }
    if row != out.row_index {
        return Err(Error::CorruptTransform("LF orbit of I does not close after n steps".into()));
    }
    Ok(w)
}
