//! Occurrence counting over a last column: Parikh vector, cumulative
//! counts and block-sampled rank.

use crate::symbol::{DenseAlphabet, Symbol};
use crate::{Error, Result};

pub const DEFAULT_BLOCK_SIZE: usize = 64;

/// Rank support over a word `L`.
///
/// `blocks` stores, for every multiple `b·B` of the block size and every
/// symbol, the occurrences of that symbol in `L[0, b·B)`; a query scans at
/// most `B - 1` symbols past the sample.
#[derive(Debug, Clone)]
pub struct RankIndex<S> {
    text: Vec<S>,
    alphabet: DenseAlphabet<S>,
    parikh: Vec<usize>,
    // cum[c] = occurrences of symbols with code < c; len sigma + 1
    cum: Vec<usize>,
    block_size: usize,
    blocks: Vec<u32>,
}

impl<S: Symbol> RankIndex<S> {
    pub fn new(text: Vec<S>) -> Self {
        Self::with_block_size(text, DEFAULT_BLOCK_SIZE)
    }

    pub fn with_block_size(text: Vec<S>, block_size: usize) -> Self {
        assert!(block_size > 0, "block size must be positive");
        assert!(text.len() <= u32::MAX as usize, "text too long for 32-bit counters");
        let alphabet = DenseAlphabet::of(&text);
        let sigma = alphabet.len();
        let codes = alphabet.encode(&text);
        let mut parikh = vec![0usize; sigma];
        let mut blocks = Vec::with_capacity((text.len() / block_size + 1) * sigma);
        let mut running = vec![0u32; sigma];
        for (i, &c) in codes.iter().enumerate() {
            if i % block_size == 0 {
                blocks.extend_from_slice(&running);
            }
            running[c as usize] += 1;
            parikh[c as usize] += 1;
        }
        if text.len().is_multiple_of(block_size) {
            blocks.extend_from_slice(&running);
        }
        let mut cum = vec![0usize; sigma + 1];
        for c in 0..sigma {
            cum[c + 1] = cum[c] + parikh[c];
        }
        RankIndex { text, alphabet, parikh, cum, block_size, blocks }
    }

    pub fn text(&self) -> &[S] {
        &self.text
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    /// Symbols occurring in the text, in base order.
    pub fn symbols(&self) -> &[S] {
        self.alphabet.symbols()
    }

    /// `|L|_c`.
    pub fn count(&self, c: S) -> usize {
        self.alphabet.code(c).map_or(0, |code| self.parikh[code])
    }

    /// Parikh vector over [`RankIndex::symbols`].
    pub fn parikh(&self) -> &[usize] {
        &self.parikh
    }

    pub(crate) fn code(&self, c: S) -> Option<usize> {
        self.alphabet.code(c)
    }

    /// Occurrences of the symbol with dense code `code` in `L[0, len)`.
    #[inline]
    pub(crate) fn rank_prefix(&self, code: usize, len: usize) -> usize {
        let block = len / self.block_size;
        let sigma = self.alphabet.len();
        let base = self.blocks[block * sigma + code] as usize;
        let sym = self.alphabet.symbols()[code];
        base + self.text[block * self.block_size..len].iter().filter(|&&x| x == sym).count()
    }

    /// Occurrences of `c` in `L[0, i]`; `i = -1` gives 0.
    pub fn rank(&self, c: S, i: isize) -> Result<usize> {
        if i < -1 || i >= self.text.len() as isize {
            return Err(Error::OutOfRange { index: i, len: self.text.len() });
        }
        Ok(self.alphabet.code(c).map_or(0, |code| self.rank_prefix(code, (i + 1) as usize)))
    }

    /// Occurrences in `L` of symbols `≤ c`.
    pub fn cum_le(&self, c: S) -> Result<usize> {
        let code = self.alphabet.code(c).ok_or(Error::UnknownSymbol)?;
        Ok(self.cum[code + 1])
    }

    /// Occurrences in `L` of symbols `< c`.
    pub fn cum_lt(&self, c: S) -> Result<usize> {
        let code = self.alphabet.code(c).ok_or(Error::UnknownSymbol)?;
        Ok(self.cum[code])
    }

    #[inline]
    pub(crate) fn cum_code(&self, code: usize) -> usize {
        self.cum[code]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let idx = RankIndex::new(b"racaab".to_vec());
        assert_eq!(idx.rank(b'a', 2).unwrap(), 1);
        assert_eq!(idx.rank(b'a', -1).unwrap(), 0);
        assert_eq!(idx.rank(b'a', 5).unwrap(), 3);
        assert_eq!(idx.count(b'a'), 3);
        assert_eq!(idx.cum_le(b'a').unwrap(), 3);
        assert_eq!(idx.cum_lt(b'a').unwrap(), 0);
        assert_eq!(RankIndex::new(b"caraab".to_vec()).cum_lt(b'c').unwrap(), 4);
        assert!(matches!(idx.rank(b'a', 6), Err(Error::OutOfRange { .. })));
        assert!(matches!(idx.rank(b'a', -2), Err(Error::OutOfRange { .. })));
        assert!(matches!(idx.cum_le(b'z'), Err(Error::UnknownSymbol)));
        assert_eq!(idx.rank(b'z', 3).unwrap(), 0);
    }

    #[test]
    fn invariants_on_fixed_text() {
        let idx = RankIndex::with_block_size(b"mississippi\0".to_vec(), 3);
        assert_eq!(idx.parikh().iter().sum::<usize>(), idx.len());
        for &c in idx.symbols() {
            assert_eq!(idx.rank(c, idx.len() as isize - 1).unwrap(), idx.count(c));
        }
        let cums: Vec<usize> = idx.symbols().iter().map(|&c| idx.cum_lt(c).unwrap()).collect();
        assert!(cums.windows(2).all(|p| p[0] <= p[1]));
        assert_eq!(cums[0], 0);
    }

    proptest! {
        #[test]
        fn blocked_rank_matches_scan(text in prop::collection::vec(0u8..6, 0..300), block in 1usize..80) {
            let idx = RankIndex::with_block_size(text.clone(), block);
            for c in 0u8..7 {
                let mut running = 0;
                prop_assert_eq!(idx.rank(c, -1).unwrap(), 0);
                for (i, &x) in text.iter().enumerate() {
                    let before = running;
                    if x == c {
                        running += 1;
                    }
                    let r = idx.rank(c, i as isize).unwrap();
                    prop_assert_eq!(r, running);
                    prop_assert_eq!(r - before, usize::from(x == c));
                }
            }
        }
    }
}
