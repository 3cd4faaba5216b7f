//! Alphabets, symbol permutations and the comparators built from them:
//! standard lexicographic, alternating (`≺_alt`) and the positional
//! generalized orders `≺_K`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::symbol::Symbol;
use crate::{Error, Result};

/// A finite ordered alphabet, optionally extended with the sentinel.
///
/// `symbols` never contains the sentinel; it is tracked separately and is
/// always the minimum of the base order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet<S> {
    symbols: Vec<S>,
    sentinel: Option<S>,
}

impl<S: Symbol> Alphabet<S> {
    /// Builds an alphabet from strictly increasing, non-sentinel symbols.
    pub fn new(symbols: Vec<S>) -> Result<Self> {
        if symbols.iter().any(|c| c.is_sentinel()) {
            return Err(Error::AlphabetMismatch(
                "the sentinel is not an ordinary symbol; use with_sentinel".into(),
            ));
        }
        if symbols.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::AlphabetMismatch("symbols must be strictly increasing".into()));
        }
        Ok(Alphabet { symbols, sentinel: None })
    }

    /// The alphabet of the symbols occurring in `w`. A zero symbol is taken
    /// to be the sentinel.
    pub fn from_word(w: &[S]) -> Self {
        let mut symbols: Vec<S> = w.to_vec();
        symbols.sort_unstable();
        symbols.dedup();
        let sentinel = if symbols.first().is_some_and(|c| c.is_sentinel()) {
            symbols.remove(0);
            Some(S::sentinel())
        } else {
            None
        };
        Alphabet { symbols, sentinel }
    }

    pub fn with_sentinel(mut self) -> Self {
        self.sentinel = Some(S::sentinel());
        self
    }

    /// Ordinary symbols, in base order.
    pub fn symbols(&self) -> &[S] {
        &self.symbols
    }

    pub fn sentinel(&self) -> Option<S> {
        self.sentinel
    }

    /// Number of ordinary symbols (the sentinel is not counted).
    pub fn sigma(&self) -> usize {
        self.symbols.len()
    }

    pub fn contains(&self, c: S) -> bool {
        (c.is_sentinel() && self.sentinel.is_some()) || self.symbols.binary_search(&c).is_ok()
    }

    /// All symbols including the sentinel, in base order.
    pub fn all_symbols(&self) -> Vec<S> {
        self.sentinel.into_iter().chain(self.symbols.iter().copied()).collect()
    }
}

/// How a permutation acts on a concrete alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Canonical {
    Identity,
    Reverse,
    Other,
}

/// A total order on symbols given as a permutation of the base order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Permutation<S> {
    /// The base order (`Id`).
    Identity,
    /// The reversed base order (`Rev`); the sentinel compares last.
    Reverse,
    /// An explicit listing, smallest first.
    Explicit(ExplicitOrder<S>),
}

/// An explicit symbol ordering. When the listing omits the sentinel it is
/// prepended as the minimal rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitOrder<S> {
    listed: Vec<S>,
    // (symbol, rank), sorted by symbol
    ranks: Vec<(S, u32)>,
}

impl<S: Symbol> ExplicitOrder<S> {
    fn rank(&self, c: S) -> Option<u32> {
        self.ranks
            .binary_search_by(|(s, _)| s.cmp(&c))
            .ok()
            .map(|i| self.ranks[i].1)
    }

    /// The symbols as listed by the caller.
    pub fn listed(&self) -> &[S] {
        &self.listed
    }

    fn monotone(&self, increasing: bool) -> bool {
        // ranks are sorted by symbol, so check the rank sequence
        self.ranks.windows(2).all(|p| (p[0].1 < p[1].1) == increasing)
    }
}

impl<S: Symbol> Permutation<S> {
    /// An explicit permutation listing symbols from smallest to largest.
    pub fn explicit(order: Vec<S>) -> Result<Self> {
        if order.is_empty() {
            return Err(Error::InvalidPermutation("empty symbol list".into()));
        }
        let mut full: Vec<S> = Vec::with_capacity(order.len() + 1);
        if !order.iter().any(|c| c.is_sentinel()) {
            full.push(S::sentinel());
        }
        full.extend_from_slice(&order);
        let mut ranks: Vec<(S, u32)> = full.iter().enumerate().map(|(r, &c)| (c, r as u32)).collect();
        ranks.sort_unstable_by_key(|&(c, _)| c);
        if ranks.windows(2).any(|p| p[0].0 == p[1].0) {
            return Err(Error::InvalidPermutation("repeated symbol".into()));
        }
        Ok(Permutation::Explicit(ExplicitOrder { listed: order, ranks }))
    }

    /// Compares two symbols. Symbols unknown to an explicit permutation sort
    /// after every listed symbol, by value.
    pub fn cmp_symbols(&self, a: S, b: S) -> Ordering {
        match self {
            Permutation::Identity => a.cmp(&b),
            Permutation::Reverse => b.cmp(&a),
            Permutation::Explicit(e) => {
                let ra = e.rank(a).unwrap_or(u32::MAX);
                let rb = e.rank(b).unwrap_or(u32::MAX);
                ra.cmp(&rb).then(a.cmp(&b))
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Permutation::Identity => true,
            Permutation::Reverse => false,
            Permutation::Explicit(e) => e.monotone(true),
        }
    }

    pub fn is_reverse(&self) -> bool {
        match self {
            Permutation::Identity => false,
            Permutation::Reverse => true,
            Permutation::Explicit(e) => e.monotone(false),
        }
    }

    /// Whether the permutation orders every symbol of `alphabet` (built-in
    /// permutations always do).
    pub fn covers(&self, alphabet: &Alphabet<S>) -> bool {
        match self {
            Permutation::Explicit(e) => alphabet.all_symbols().iter().all(|&c| e.rank(c).is_some()),
            _ => true,
        }
    }

    /// Classifies the restriction of this permutation to `alphabet`.
    pub fn canonical_on(&self, alphabet: &Alphabet<S>) -> Canonical {
        let syms = alphabet.all_symbols();
        let mut sorted = syms.clone();
        sorted.sort_by(|&a, &b| self.cmp_symbols(a, b));
        if sorted == syms {
            Canonical::Identity
        } else if sorted.iter().rev().eq(syms.iter()) {
            Canonical::Reverse
        } else {
            Canonical::Other
        }
    }
}

impl FromStr for Permutation<u8> {
    type Err = Error;

    /// `id`, `rev`, or the symbols themselves from smallest to largest
    /// (`cab` means c < a < b).
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "id" => Ok(Permutation::Identity),
            "rev" => Ok(Permutation::Reverse),
            "" => Err(Error::InvalidPermutation("empty permutation".into())),
            _ => Permutation::explicit(s.as_bytes().to_vec()),
        }
    }
}

impl fmt::Display for Permutation<u8> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Permutation::Identity => f.write_str("id"),
            Permutation::Reverse => f.write_str("rev"),
            Permutation::Explicit(e) => f.write_str(&String::from_utf8_lossy(&e.listed)),
        }
    }
}

/// The built-in orders that have linear-time construction paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardOrder {
    Lex,
    Alternating,
}

/// A k-tuple of permutations `(π_0, …, π_{k-1})`; position `i` of a
/// comparison uses `π_{i mod k}`. `π_0` is always the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSpec<S> {
    perms: Vec<Permutation<S>>,
}

impl<S: Symbol> OrderSpec<S> {
    pub fn new(perms: Vec<Permutation<S>>) -> Result<Self> {
        match perms.first() {
            None => Err(Error::InvalidOrderSpec("no permutations".into())),
            Some(p) if !p.is_identity() => {
                Err(Error::InvalidOrderSpec("the first permutation must be the identity".into()))
            }
            Some(_) => Ok(OrderSpec { perms }),
        }
    }

    /// `(Id)`: the order of the classical BWT.
    pub fn lex() -> Self {
        OrderSpec { perms: vec![Permutation::Identity] }
    }

    /// `(Id, Rev)`: the alternating order.
    pub fn alternating() -> Self {
        OrderSpec { perms: vec![Permutation::Identity, Permutation::Reverse] }
    }

    pub fn k(&self) -> usize {
        self.perms.len()
    }

    pub fn permutations(&self) -> &[Permutation<S>] {
        &self.perms
    }

    /// The permutation used at position `pos`.
    pub fn at(&self, pos: usize) -> &Permutation<S> {
        &self.perms[pos % self.perms.len()]
    }

    #[inline]
    pub fn cmp_at(&self, pos: usize, a: S, b: S) -> Ordering {
        self.at(pos).cmp_symbols(a, b)
    }

    /// `≺_K` on equal-length words.
    pub fn cmp(&self, x: &[S], y: &[S]) -> Result<Ordering> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch(x.len(), y.len()));
        }
        Ok(x.iter()
            .zip(y)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map_or(Ordering::Equal, |(i, (&a, &b))| self.cmp_at(i, a, b)))
    }

    /// Recognises the built-in `(Id)` and `(Id, Rev)` patterns (and their
    /// periodic paddings). Explicit permutations are never recognised, since
    /// their treatment of the sentinel differs from the built-ins.
    pub fn standard(&self) -> Option<StandardOrder> {
        let kind = |p: &Permutation<S>| match p {
            Permutation::Identity => Some(false),
            Permutation::Reverse => Some(true),
            Permutation::Explicit(_) => None,
        };
        let flags: Option<Vec<bool>> = self.perms.iter().map(kind).collect();
        let flags = flags?;
        if flags.iter().all(|&r| !r) {
            Some(StandardOrder::Lex)
        } else if flags.len() % 2 == 0 && flags.iter().enumerate().all(|(i, &r)| r == (i % 2 == 1)) {
            Some(StandardOrder::Alternating)
        } else {
            None
        }
    }

    /// Every explicit permutation must order every symbol of `w`.
    pub fn check_word(&self, w: &[S]) -> Result<()> {
        let alphabet = Alphabet::from_word(w);
        if self.perms.iter().all(|p| p.covers(&alphabet)) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch("a permutation does not list every symbol of the word".into()))
        }
    }
}

impl FromStr for OrderSpec<u8> {
    type Err = Error;

    /// Permutations joined by `:`, e.g. `id:rev` or `id:cab`.
    fn from_str(s: &str) -> Result<Self> {
        let perms = s.split(':').map(str::parse).collect::<Result<Vec<_>>>()?;
        OrderSpec::new(perms)
    }
}

impl fmt::Display for OrderSpec<u8> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.perms.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// The alternating lexicographic order `≺_alt`, on words of any length.
///
/// The first mismatch at an even position compares in base order, at an odd
/// position in reverse order. A proper prefix `x` of `y` precedes `y` iff
/// `|x|` is even.
pub fn cmp_alt<S: Symbol>(x: &[S], y: &[S]) -> Ordering {
    match x.iter().zip(y).position(|(a, b)| a != b) {
        Some(i) if i % 2 == 0 => x[i].cmp(&y[i]),
        Some(i) => y[i].cmp(&x[i]),
        None => match x.len().cmp(&y.len()) {
            Ordering::Equal => Ordering::Equal,
            Ordering::Less if x.len().is_multiple_of(2) => Ordering::Less,
            Ordering::Less => Ordering::Greater,
            Ordering::Greater if y.len().is_multiple_of(2) => Ordering::Greater,
            Ordering::Greater => Ordering::Less,
        },
    }
}

/// `≺_K` on equal-length words; see [`OrderSpec::cmp`].
pub fn cmp_k<S: Symbol>(spec: &OrderSpec<S>, x: &[S], y: &[S]) -> Result<Ordering> {
    spec.cmp(x, y)
}

/// Compares the rotations of `w` starting at `i` and `j` under `spec`.
pub(crate) fn cmp_rotations<S: Symbol>(spec: &OrderSpec<S>, w: &[S], i: usize, j: usize) -> Ordering {
    let n = w.len();
    let (mut a, mut b) = (i, j);
    for pos in 0..n {
        if w[a] != w[b] {
            return spec.cmp_at(pos, w[a], w[b]);
        }
        a += 1;
        if a == n {
            a = 0;
        }
        b += 1;
        if b == n {
            b = 0;
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(s: &str) -> OrderSpec<u8> {
        s.parse().unwrap()
    }

    #[test]
    fn alt_examples() {
        assert_eq!(cmp_alt(b"acaabr", b"abraca"), Ordering::Less);
        assert_eq!(cmp_alt(b"abc", b"abc"), Ordering::Equal);
        assert_eq!(cmp_alt(b"ab", b"abz"), Ordering::Less);
        assert_eq!(cmp_alt(b"aba", b"abaz"), Ordering::Greater);
        assert_eq!(cmp_alt(b"abaz", b"aba"), Ordering::Less);
    }

    #[test]
    fn k_examples() {
        assert_eq!(spec("id").cmp(b"abraca", b"acaabr").unwrap(), Ordering::Less);
        assert_eq!(spec("id:rev").cmp(b"acaabr", b"abraca").unwrap(), Ordering::Less);
        // position 1 decided by c < a < b
        assert_eq!(spec("id:cab").cmp(b"aab", b"aba").unwrap(), Ordering::Less);
        assert_eq!(spec("id:cab").cmp(b"aca", b"aab").unwrap(), Ordering::Less);
        assert!(matches!(spec("id").cmp(b"ab", b"abc"), Err(Error::LengthMismatch(2, 3))));
    }

    #[test]
    fn parse_and_display() {
        for s in ["id", "id:rev", "id:cab:rev", "id:id:rev"] {
            assert_eq!(spec(s).to_string(), s);
        }
        assert!("rev".parse::<OrderSpec<u8>>().is_err());
        assert!("cab".parse::<OrderSpec<u8>>().is_err());
        assert!("id:aab".parse::<OrderSpec<u8>>().is_err());
        assert!("id::rev".parse::<OrderSpec<u8>>().is_err());
        // an explicit listing in base order is an identity
        assert!("abc:rev".parse::<OrderSpec<u8>>().is_ok());
    }

    #[test]
    fn explicit_sentinel_is_minimal() {
        let p: Permutation<u8> = "cab".parse().unwrap();
        assert_eq!(p.cmp_symbols(0, b'c'), Ordering::Less);
        assert_eq!(p.cmp_symbols(b'c', b'a'), Ordering::Less);
        assert_eq!(p.cmp_symbols(b'b', b'z'), Ordering::Less);
        assert_eq!(Permutation::<u8>::Reverse.cmp_symbols(0, b'a'), Ordering::Greater);
    }

    #[test]
    fn canonical_forms() {
        let abc = Alphabet::new(b"abc".to_vec()).unwrap();
        let ab = Alphabet::new(b"ab".to_vec()).unwrap();
        let cba: Permutation<u8> = "cba".parse().unwrap();
        let cab: Permutation<u8> = "cab".parse().unwrap();
        assert_eq!(cba.canonical_on(&abc), Canonical::Reverse);
        assert_eq!(cab.canonical_on(&abc), Canonical::Other);
        assert_eq!(cab.canonical_on(&ab), Canonical::Identity);
        assert_eq!(Permutation::<u8>::Reverse.canonical_on(&ab), Canonical::Reverse);
        assert!(!cab.covers(&Alphabet::new(b"abd".to_vec()).unwrap()));
        assert!(Permutation::<u8>::Identity.is_identity());
        assert!(Permutation::<u8>::Reverse.is_reverse());
    }

    #[test]
    fn alphabet_from_word() {
        let a = Alphabet::from_word(b"banana\0".as_slice());
        assert_eq!(a.symbols(), b"abn");
        assert_eq!(a.sentinel(), Some(0));
        assert_eq!(a.sigma(), 3);
        assert!(a.contains(0) && a.contains(b'n') && !a.contains(b'z'));
        assert!(Alphabet::new(b"ba".to_vec()).is_err());
    }

    #[test]
    fn standard_orders() {
        assert_eq!(spec("id").standard(), Some(StandardOrder::Lex));
        assert_eq!(spec("id:id").standard(), Some(StandardOrder::Lex));
        assert_eq!(spec("id:rev").standard(), Some(StandardOrder::Alternating));
        assert_eq!(spec("id:rev:id:rev").standard(), Some(StandardOrder::Alternating));
        assert_eq!(spec("id:rev:id").standard(), None);
        assert_eq!(spec("id:cba").standard(), None);
    }

    fn word() -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(b'a'..=b'd', 0..12)
    }

    proptest! {
        #[test]
        fn alt_matches_k_on_equal_lengths(x in prop::collection::vec(b'a'..=b'c', 8), y in prop::collection::vec(b'a'..=b'c', 8)) {
            prop_assert_eq!(cmp_alt(&x, &y), OrderSpec::alternating().cmp(&x, &y).unwrap());
            prop_assert_eq!(x.cmp(&y), OrderSpec::lex().cmp(&x, &y).unwrap());
        }

        #[test]
        fn alt_is_a_total_order(x in word(), y in word(), z in word()) {
            prop_assert_eq!(cmp_alt(&x, &y), cmp_alt(&y, &x).reverse());
            prop_assert_eq!(cmp_alt(&x, &y) == Ordering::Equal, x == y);
            if cmp_alt(&x, &y) != Ordering::Greater && cmp_alt(&y, &z) != Ordering::Greater {
                prop_assert_ne!(cmp_alt(&x, &z), Ordering::Greater);
            }
        }

        #[test]
        fn k_order_is_total(x in prop::collection::vec(b'a'..=b'c', 6), y in prop::collection::vec(b'a'..=b'c', 6), z in prop::collection::vec(b'a'..=b'c', 6)) {
            let s = spec("id:cab:rev");
            prop_assert_eq!(s.cmp(&x, &y).unwrap(), s.cmp(&y, &x).unwrap().reverse());
            if s.cmp(&x, &y).unwrap() != Ordering::Greater && s.cmp(&y, &z).unwrap() != Ordering::Greater {
                prop_assert_ne!(s.cmp(&x, &z).unwrap(), Ordering::Greater);
            }
        }

        #[test]
        fn common_first_symbol_flips_alt(c in b'a'..=b'c', x in prop::collection::vec(b'a'..=b'c', 5), y in prop::collection::vec(b'a'..=b'c', 5)) {
            let cx: Vec<u8> = std::iter::once(c).chain(x.iter().copied()).collect();
            let cy: Vec<u8> = std::iter::once(c).chain(y.iter().copied()).collect();
            prop_assert_eq!(cmp_alt(&cx, &cy), cmp_alt(&y, &x));
        }
    }
}
