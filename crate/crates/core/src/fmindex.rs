//! Backward search over the alternating BWT.
//!
//! Rows of the alternating matrix prefixed by `p` form a contiguous range
//! `[b, e]`. Prepending `x` maps the `x`s of `L[b, e]` through LF; since LF
//! reverses the order of equal symbols, the last `x` in the range lands on
//! the new begin and the first on the new end.

use std::io::{Read, Write};

use crate::dcsort::{abwt_dc, alt_suffix_array_dc, DifferenceCover};
use crate::galois::alt_rotation_order;
use crate::lfmap::{invert_fast, Mode};
use crate::rankindex::RankIndex;
use crate::reference::{transform_from_starts, TransformOutput};
use crate::symbol::{is_sentinel_terminated, Symbol};
use crate::{Error, Result};

const MAGIC: &[u8; 8] = b"ABWTIDX1";

/// Inclusive range of matrix rows, never empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowRange {
    pub begin: usize,
    pub end: usize,
}

impl RowRange {
    pub fn width(&self) -> usize {
        self.end - self.begin + 1
    }
}

/// Count/locate index over `L = abwt(w)`.
#[derive(Debug, Clone)]
pub struct AbwtIndex<S> {
    rank: RankIndex<S>,
    row_index: usize,
    // rotation start of each row, when built with locate support
    positions: Option<Vec<u32>>,
}

impl<S: Symbol> AbwtIndex<S> {
    /// Indexes the circular word `w`. Sentinel-terminated input is suffix
    /// sorted directly, anything else goes through its Galois conjugate.
    pub fn build(w: &[S], locate: bool) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        let cover = DifferenceCover::default();
        let starts = if is_sentinel_terminated(w) {
            alt_suffix_array_dc(w, &cover)?
        } else {
            alt_rotation_order(w, &cover)?
        };
        let out = transform_from_starts(w, &starts);
        let positions = locate.then(|| starts.iter().map(|&p| p as u32).collect());
        Ok(AbwtIndex { rank: RankIndex::new(out.last_column), row_index: out.row_index, positions })
    }

    /// Wraps an existing transform, checking that it inverts.
    pub fn from_transform(out: TransformOutput<S>) -> Result<Self> {
        invert_fast(&out, Mode::Abwt)?;
        Ok(AbwtIndex { rank: RankIndex::new(out.last_column), row_index: out.row_index, positions: None })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank_index(&self) -> &RankIndex<S> {
        &self.rank
    }

    pub fn row_index(&self) -> usize {
        self.row_index
    }

    pub fn has_locate(&self) -> bool {
        self.positions.is_some()
    }

    pub fn transform(&self) -> TransformOutput<S> {
        TransformOutput::new(self.rank.text().to_vec(), self.row_index)
    }

    /// Rows starting with `c`: `[#{< c}, #{≤ c} - 1]`.
    pub fn init_range(&self, c: S) -> Option<RowRange> {
        let code = self.rank.code(c)?;
        let begin = self.rank.cum_code(code);
        let end = self.rank.cum_code(code + 1);
        (end > begin).then(|| RowRange { begin, end: end - 1 })
    }

    /// From the rows prefixed by `p` to the rows prefixed by `xp`:
    /// `b' = #{≤ x} - rank_x(L, e)`, `e' = #{≤ x} - rank_x(L, b - 1) - 1`.
    pub fn backward_extend(&self, range: RowRange, x: S) -> Result<Option<RowRange>> {
        if range.begin > range.end || range.end >= self.len() {
            return Err(Error::EmptyRange);
        }
        let Some(code) = self.rank.code(x) else { return Ok(None) };
        let upto_end = self.rank.rank_prefix(code, range.end + 1);
        let before_begin = self.rank.rank_prefix(code, range.begin);
        if upto_end == before_begin {
            return Ok(None);
        }
        let le = self.rank.cum_code(code + 1);
        Ok(Some(RowRange { begin: le - upto_end, end: le - before_begin - 1 }))
    }

    /// Rows whose rotation starts with `p`. The empty pattern matches every
    /// row; patterns longer than the text match none.
    pub fn find_range(&self, p: &[S]) -> Option<RowRange> {
        if p.len() > self.len() {
            return None;
        }
        let Some((&last, rest)) = p.split_last() else {
            return (!self.is_empty()).then(|| RowRange { begin: 0, end: self.len() - 1 });
        };
        let mut range = self.init_range(last)?;
        for &x in rest.iter().rev() {
            range = self.backward_extend(range, x).expect("ranges stay valid")?;
        }
        Some(range)
    }

    /// Circular occurrences of `p`.
    pub fn count(&self, p: &[S]) -> usize {
        self.find_range(p).map_or(0, |r| r.width())
    }

    /// Sorted start positions of the circular occurrences of `p`.
    pub fn locate(&self, p: &[S]) -> Result<Vec<usize>> {
        let positions = self.positions.as_ref().ok_or(Error::LocateUnsupported)?;
        let mut hits: Vec<usize> = match self.find_range(p) {
            Some(r) => positions[r.begin..=r.end].iter().map(|&x| x as usize).collect(),
            None => Vec::new(),
        };
        hits.sort_unstable();
        Ok(hits)
    }
}

impl AbwtIndex<u8> {
    /// Writes `ABWTIDX1`, `n` and `I` as little-endian u64, the raw `L`
    /// bytes, then a one-byte locate marker followed (if set) by `n`
    /// little-endian u32 positions.
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(MAGIC)?;
        out.write_all(&(self.len() as u64).to_le_bytes())?;
        out.write_all(&(self.row_index as u64).to_le_bytes())?;
        out.write_all(self.rank.text())?;
        match &self.positions {
            None => out.write_all(&[0])?,
            Some(pos) => {
                out.write_all(&[1])?;
                let mut buf = Vec::with_capacity(pos.len() * 4);
                for &p in pos {
                    buf.extend_from_slice(&p.to_le_bytes());
                }
                out.write_all(&buf)?;
            }
        }
        Ok(())
    }

    pub fn read_from<R: Read>(mut input: R) -> Result<Self> {
        let mut bytes = Vec::new();
        input.read_to_end(&mut bytes)?;
        let bad = |msg: &str| Error::InvalidIndexFile(msg.to_string());
        if bytes.len() < 25 || &bytes[..8] != MAGIC {
            return Err(bad("missing ABWTIDX1 header"));
        }
        let n = u64::from_le_bytes(bytes[8..16].try_into().unwrap()) as usize;
        let row_index = u64::from_le_bytes(bytes[16..24].try_into().unwrap()) as usize;
        let body = &bytes[24..];
        if body.len() < n + 1 {
            return Err(bad("truncated last column"));
        }
        let l = body[..n].to_vec();
        let marker = body[n];
        let rest = &body[n + 1..];
        let positions = match marker {
            0 if rest.is_empty() => None,
            1 if rest.len() == 4 * n => {
                Some(rest.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect::<Vec<u32>>())
            }
            0 | 1 => return Err(bad("trailing bytes or truncated position array")),
            _ => return Err(bad("unknown locate marker")),
        };
        let out = TransformOutput::new(l, row_index);
        invert_fast(&out, Mode::Abwt).map_err(|e| Error::InvalidIndexFile(e.to_string()))?;
        if let Some(pos) = &positions {
            let mut seen = vec![false; n];
            if pos.iter().any(|&p| p as usize >= n || std::mem::replace(&mut seen[p as usize], true)) {
                return Err(bad("position array is not a permutation"));
            }
        }
        Ok(AbwtIndex { rank: RankIndex::new(out.last_column), row_index, positions })
    }
}

/// Convenience: `abwt(w)` for sentinel-terminated words via the cover sort.
pub fn abwt_of_terminated<S: Symbol>(w: &[S]) -> Result<TransformOutput<S>> {
    abwt_dc(w, &DifferenceCover::default())
}
