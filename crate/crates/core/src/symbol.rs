//! Symbol types the transforms are generic over.
//!
//! Every unsigned primitive integer is a [`Symbol`]. The value zero plays
//! the role of the end-of-string sentinel (rendered `$`): it is the minimum
//! of the base order, so the reversed order places it last.

use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{PrimInt, Unsigned};

/// An alphabet symbol: an unsigned primitive integer ordered by value.
pub trait Symbol: PrimInt + Unsigned + Hash + Debug + Default + Send + Sync + 'static {
    /// The symbol as an array index.
    fn index(self) -> usize {
        self.to_usize().expect("symbol does not fit in usize")
    }

    /// Inverse of [`Symbol::index`]. Panics when `i` does not fit.
    fn from_index(i: usize) -> Self {
        Self::from(i).expect("index does not fit in the symbol type")
    }

    /// The end-of-string sentinel.
    fn sentinel() -> Self {
        Self::zero()
    }

    fn is_sentinel(self) -> bool {
        self == Self::zero()
    }
}

impl<T> Symbol for T where T: PrimInt + Unsigned + Hash + Debug + Default + Send + Sync + 'static {}

/// Order-preserving renaming of the symbols of a word onto `0..sigma`.
#[derive(Debug, Clone)]
pub(crate) struct DenseAlphabet<S> {
    symbols: Vec<S>,
    table: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl<S: Symbol> DenseAlphabet<S> {
    pub(crate) fn of(word: &[S]) -> Self {
        let max = word.iter().copied().max().map_or(0, Symbol::index);
        let mut seen = vec![false; max + 1];
        for &c in word {
            seen[c.index()] = true;
        }
        let mut symbols = Vec::new();
        let mut table = vec![ABSENT; max + 1];
        for (i, _) in seen.iter().enumerate().filter(|(_, &s)| s) {
            table[i] = symbols.len() as u32;
            symbols.push(S::from_index(i));
        }
        DenseAlphabet { symbols, table }
    }

    pub(crate) fn len(&self) -> usize {
        self.symbols.len()
    }

    pub(crate) fn symbols(&self) -> &[S] {
        &self.symbols
    }

    pub(crate) fn code(&self, c: S) -> Option<usize> {
        match self.table.get(c.index()) {
            Some(&code) if code != ABSENT => Some(code as usize),
            _ => None,
        }
    }

    pub(crate) fn encode(&self, word: &[S]) -> Vec<u32> {
        word.iter().map(|&c| self.table[c.index()]).collect()
    }
}

/// Checks that `w` is non-empty and contains the sentinel exactly once, as
/// its last symbol.
pub(crate) fn check_sentinel_terminated<S: Symbol>(w: &[S]) -> crate::Result<()> {
    let last = w.last().ok_or(crate::Error::EmptyWord)?;
    if !last.is_sentinel() {
        return Err(crate::Error::MissingSentinel);
    }
    if let Some(pos) = w[..w.len() - 1].iter().position(|c| c.is_sentinel()) {
        return Err(crate::Error::MisplacedSentinel(pos));
    }
    Ok(())
}

/// True when `w` ends with a sentinel that occurs nowhere else.
pub fn is_sentinel_terminated<S: Symbol>(w: &[S]) -> bool {
    check_sentinel_terminated(w).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_alphabet_preserves_order() {
        let d = DenseAlphabet::of(b"banana\0".as_slice());
        assert_eq!(d.symbols(), b"\0abn");
        assert_eq!(d.encode(b"ban"), vec![2, 1, 3]);
        assert_eq!(d.code(b'z'), None);
        assert_eq!(d.code(0xff), None);
    }

    #[test]
    fn sentinel_checks() {
        assert!(is_sentinel_terminated(b"ab\0".as_slice()));
        assert!(!is_sentinel_terminated(b"ab".as_slice()));
        assert!(!is_sentinel_terminated(b"a\0b\0".as_slice()));
        assert!(!is_sentinel_terminated::<u8>(&[]));
        assert!(is_sentinel_terminated(&[3u32, 0]));
    }
}
