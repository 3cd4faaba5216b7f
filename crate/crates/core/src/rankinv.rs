//! Rank-invertibility: whether `LF(i)` is determined by the Parikh vector of
//! `L`, the symbol `L[i]` and its occurrence rank alone. The checker looks
//! for two words disagreeing on some such key; the predictor says which
//! orders can never disagree.

use std::collections::HashMap;

use crate::galois::is_primitive;
use crate::orders::{Alphabet, Canonical, OrderSpec};
use crate::reference::{lf_from_starts, sorted_rotation_starts, transform_from_starts};
use crate::symbol::Symbol;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Consistent,
    Violated,
}

/// Two words with the same Parikh vector whose matrices send the same
/// `(symbol, occurrence)` of `L` to different rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<S> {
    pub first: Vec<S>,
    pub second: Vec<S>,
    pub parikh: Vec<usize>,
    pub symbol: S,
    /// Occurrence rank of `symbol` in `L`, counted from 1.
    pub occurrence: usize,
    /// Row of `L` holding that occurrence, in each word's matrix.
    pub rows: (usize, usize),
    /// LF targets, in each word's matrix.
    pub targets: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<S> {
    pub status: Status,
    pub witness: Option<Witness<S>>,
    pub words_checked: usize,
}

impl<S> Verdict<S> {
    pub fn is_consistent(&self) -> bool {
        self.status == Status::Consistent
    }
}

struct Checker<'a, S> {
    spec: &'a OrderSpec<S>,
    // key (Parikh vector of L, symbol, inclusive rank) -> (LF target, word index, row)
    seen: HashMap<(Vec<usize>, S, usize), (usize, usize, usize)>,
    words: Vec<Vec<S>>,
}

impl<'a, S: Symbol> Checker<'a, S> {
    fn new(spec: &'a OrderSpec<S>) -> Self {
        Checker { spec, seen: HashMap::new(), words: Vec::new() }
    }

    fn add(&mut self, w: Vec<S>, symbols: &[S]) -> Result<Option<Witness<S>>> {
        let starts = sorted_rotation_starts(&w, self.spec)?;
        let l = transform_from_starts(&w, &starts).last_column;
        let lf = lf_from_starts(&starts);
        let mut parikh = vec![0usize; symbols.len()];
        for &c in &l {
            let pos = symbols.binary_search(&c).map_err(|_| Error::AlphabetMismatch(format!("{c:?} outside alphabet")))?;
            parikh[pos] += 1;
        }
        let id = self.words.len();
        self.words.push(w);
        let mut occ: HashMap<S, usize> = HashMap::new();
        for (row, &c) in l.iter().enumerate() {
            let r = occ.entry(c).or_insert(0);
            *r += 1;
            let key = (parikh.clone(), c, *r);
            match self.seen.get(&key) {
                Some(&(target, other, other_row)) if target != lf[row] => {
                    return Ok(Some(Witness {
                        first: self.words[other].clone(),
                        second: self.words[id].clone(),
                        parikh,
                        symbol: c,
                        occurrence: *r,
                        rows: (other_row, row),
                        targets: (target, lf[row]),
                    }));
                }
                Some(_) => {}
                None => {
                    self.seen.insert(key, (lf[row], id, row));
                }
            }
        }
        Ok(None)
    }

    fn verdict(witness: Option<Witness<S>>, words_checked: usize) -> Verdict<S> {
        let status = if witness.is_some() { Status::Violated } else { Status::Consistent };
        Verdict { status, witness, words_checked }
    }
}

fn check_spec_covers<S: Symbol>(spec: &OrderSpec<S>, alphabet: &Alphabet<S>) -> Result<()> {
    match spec.permutations().iter().position(|p| !p.covers(alphabet)) {
        Some(i) => Err(Error::AlphabetMismatch(format!("permutation {i} does not order every symbol of the alphabet"))),
        None => Ok(()),
    }
}

/// Enumerates the primitive words over `alphabet` of length `1..=max_len`,
/// by length and then lexicographically, and reports the first collision.
/// A consistent verdict only means no violation exists up to the bound.
pub fn check_rank_invertible<S: Symbol>(spec: &OrderSpec<S>, alphabet: &Alphabet<S>, max_len: usize) -> Result<Verdict<S>> {
    if max_len < 2 {
        return Err(Error::BoundTooSmall(max_len));
    }
    check_spec_covers(spec, alphabet)?;
    let symbols = alphabet.all_symbols();
    if symbols.is_empty() {
        return Err(Error::AlphabetMismatch("empty alphabet".into()));
    }
    let sigma = symbols.len();
    let mut checker = Checker::new(spec);
    for len in 1..=max_len {
        let mut digits = vec![0usize; len];
        loop {
            let w: Vec<S> = digits.iter().map(|&d| symbols[d]).collect();
            if is_primitive(&w) {
                if let Some(witness) = checker.add(w, &symbols)? {
                    let n = checker.words.len();
                    return Ok(Checker::verdict(Some(witness), n));
                }
            }
            // odometer increment, last digit fastest
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < sigma {
                    break;
                }
                digits[pos] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    let n = checker.words.len();
    Ok(Checker::verdict(None, n))
}

/// Runs the checker on an explicit word list, in the given order.
pub fn check_words<S: Symbol>(spec: &OrderSpec<S>, words: &[Vec<S>]) -> Result<Verdict<S>> {
    let mut all: Vec<S> = words.concat();
    all.sort_unstable();
    all.dedup();
    let mut checker = Checker::new(spec);
    for w in words {
        if let Some(witness) = checker.add(w.clone(), &all)? {
            return Ok(Checker::verdict(Some(witness), checker.words.len()));
        }
    }
    Ok(Checker::verdict(None, checker.words.len()))
}

/// The closed form: rank-invertible exactly when every permutation acts as
/// the identity on `alphabet`, or `k` is even and they alternate identity,
/// reverse. Trailing repetitions of the period are harmless, so `(id, id)`
/// and `(id, rev, id, rev)` count as their shorter forms.
pub fn predict_rank_invertible<S: Symbol>(spec: &OrderSpec<S>, alphabet: &Alphabet<S>) -> bool {
    let canon: Vec<Canonical> = spec.permutations().iter().map(|p| p.canonical_on(alphabet)).collect();
    if canon.iter().all(|&c| c == Canonical::Identity) {
        return true;
    }
    canon.len().is_multiple_of(2)
        && canon.iter().enumerate().all(|(i, &c)| {
            c == if i % 2 == 0 { Canonical::Identity } else { Canonical::Reverse }
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet<u8> {
        Alphabet::new(b"abc".to_vec()).unwrap()
    }

    fn spec(s: &str) -> OrderSpec<u8> {
        s.parse().unwrap()
    }

    #[test]
    fn shortest_witness() {
        let v = check_words(&spec("id:cab"), &[b"aabcc".to_vec(), b"abacc".to_vec()]).unwrap();
        assert_eq!(v.status, Status::Violated);
        let w = v.witness.unwrap();
        assert_eq!((w.first.as_slice(), w.second.as_slice()), (&b"aabcc"[..], &b"abacc"[..]));
        assert_eq!(w.parikh, [2, 1, 2]);
        assert_eq!(w.symbol, b'a');
        assert_eq!(w.occurrence, 1);
        assert_eq!(w.targets, (0, 1));
    }

    #[test]
    fn binary_triplet_witnesses() {
        // a b^i a b^(i+1) b b against a b^(i+1) a b^(i+1) b
        let words = |i: usize| {
            let b = |m: usize| "b".repeat(m);
            vec![format!("a{}a{}bb", b(i), b(i + 1)).into_bytes(), format!("a{}a{}b", b(i + 1), b(i + 1)).into_bytes()]
        };
        for (s, i) in [("id:id:rev", 0), ("id:id:rev", 1), ("id:rev:rev", 0), ("id:rev:id:id", 1)] {
            let v = check_words(&spec(s), &words(i)).unwrap();
            assert_eq!(v.status, Status::Violated, "{s}, i = {i}");
        }
        assert!(check_words(&spec("id:rev"), &words(1)).unwrap().is_consistent());
    }

    #[test]
    fn alternating_and_plain_are_consistent() {
        for s in ["id", "id:rev", "id:id", "id:rev:id:rev"] {
            let v = check_rank_invertible(&spec(s), &abc(), 7).unwrap();
            assert!(v.is_consistent(), "{s}: {:?}", v.witness);
            assert!(predict_rank_invertible(&spec(s), &abc()));
        }
    }

    #[test]
    fn predictor_examples() {
        assert!(!predict_rank_invertible(&spec("id:cab"), &abc()));
        assert!(!predict_rank_invertible(&spec("id:rev:id"), &abc()));
        assert!(!predict_rank_invertible(&spec("id:id:rev"), &abc()));
        // on {a, b} the explicit order ba is the reverse
        let ab = Alphabet::new(b"ab".to_vec()).unwrap();
        assert!(predict_rank_invertible(&spec("id:ba"), &ab));
    }

    #[test]
    fn argument_errors() {
        assert!(matches!(check_rank_invertible(&spec("id"), &abc(), 1), Err(Error::BoundTooSmall(1))));
        assert!(matches!(check_rank_invertible(&spec("id:ba"), &abc(), 4), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn enumeration_order() {
        // the first collision for id:cab is found among short words
        let v = check_rank_invertible(&spec("id:cab"), &abc(), 5).unwrap();
        let w = v.witness.unwrap();
        assert_eq!(w.first.len(), w.second.len());
        assert!(w.first < w.second);
    }
}
