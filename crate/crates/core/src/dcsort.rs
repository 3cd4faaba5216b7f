//! Difference-cover suffix sorting under the lexicographic and the
//! alternating order, and transform construction from a suffix array.
//!
//! Sampled suffixes (positions whose residue mod `v` lies in the cover) are
//! ranked through their length-`v` tuples and a recursive lexicographic
//! suffix sort of the tuple-rank string. Because `v` is even, the parity of
//! a mismatch offset survives the blocking, so the lexicographic order of the
//! rank string is the alternating order of the sampled suffixes. The other
//! suffixes are radix sorted per residue class on (prefix, sampled rank) and
//! the classes are merged with at most `v` direct comparisons per pair.

use std::cmp::Ordering;

use crate::reference::TransformOutput;
use crate::symbol::{check_sentinel_terminated, DenseAlphabet, Symbol};
use crate::{Error, Result};

/// Below this length suffixes are sorted by direct comparison.
const DIRECT_SORT_LIMIT: usize = 64;

/// Which suffix order to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuffixOrder {
    Lex,
    Alt,
}

/// A difference cover `D` modulo `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceCover {
    v: usize,
    members: Vec<usize>,
    // delta[a * v + b]: least k < v with (a + k) and (b + k) both in D
    delta: Vec<usize>,
    // next_sample[r]: least k with (r + k) mod v in D
    next_sample: Vec<usize>,
    in_cover: Vec<bool>,
}

/// True iff every residue mod `v` is a difference of two members of `d`.
pub fn verify_cover(v: usize, d: &[usize]) -> bool {
    if v == 0 || d.iter().any(|&x| x >= v) {
        return false;
    }
    let mut hit = vec![false; v];
    for &a in d {
        for &b in d {
            hit[(a + v - b) % v] = true;
        }
    }
    hit.into_iter().all(|h| h)
}

// minimal covers for the common moduli
const COVER_TABLE: &[(usize, &[usize])] = &[
    (2, &[0, 1]),
    (4, &[0, 1, 2]),
    (6, &[0, 1, 3]),
    (8, &[0, 1, 2, 4]),
    (12, &[0, 1, 3, 7]),
];

/// A minimal difference cover mod `v`: from a table for small moduli, by
/// exhaustive search (smallest size, then lexicographically first) up to 64.
pub fn gen_cover(v: usize) -> Result<Vec<usize>> {
    if v == 0 {
        return Err(Error::InvalidCover("modulus must be positive".into()));
    }
    if let Some((_, d)) = COVER_TABLE.iter().find(|(m, _)| *m == v) {
        return Ok(d.to_vec());
    }
    if v > 64 {
        return Err(Error::InvalidCover(format!("no cover table entry for v = {v} > 64")));
    }
    // any cover can be translated to contain 0
    for size in 1..=v {
        let mut set = vec![0usize];
        if search_cover(v, size, &mut set) {
            return Ok(set);
        }
    }
    unreachable!("[0, v) is always a cover")
}

fn search_cover(v: usize, size: usize, set: &mut Vec<usize>) -> bool {
    if set.len() == size {
        return verify_cover(v, set);
    }
    let from = set.last().map_or(0, |&x| x + 1);
    for x in from..v {
        // prune: remaining slots must fit
        if v - x < size - set.len() {
            break;
        }
        set.push(x);
        if search_cover(v, size, set) {
            return true;
        }
        set.pop();
    }
    false
}

impl DifferenceCover {
    pub fn new(v: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if !verify_cover(v, &members) {
            return Err(Error::InvalidCover(format!("{members:?} is not a difference cover mod {v}")));
        }
        let mut in_cover = vec![false; v];
        for &d in &members {
            in_cover[d] = true;
        }
        let next_sample = (0..v)
            .map(|r| (0..v).find(|&k| in_cover[(r + k) % v]).expect("cover is non-empty"))
            .collect();
        let mut delta = vec![0; v * v];
        for a in 0..v {
            for b in 0..v {
                delta[a * v + b] = (0..v)
                    .find(|&k| in_cover[(a + k) % v] && in_cover[(b + k) % v])
                    .expect("difference cover property");
            }
        }
        Ok(DifferenceCover { v, members, delta, next_sample, in_cover })
    }

    /// A generated minimal cover for `v`.
    pub fn with_modulus(v: usize) -> Result<Self> {
        Self::new(v, gen_cover(v)?)
    }

    pub fn modulus(&self) -> usize {
        self.v
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn is_sampled(&self, pos: usize) -> bool {
        self.in_cover[pos % self.v]
    }
}

impl Default for DifferenceCover {
    /// `v = 6`, `D = {0, 1, 3}`.
    fn default() -> Self {
        DifferenceCover::new(6, vec![0, 1, 3]).expect("valid cover")
    }
}

/// Sampled positions grouped by cover member, then ascending, and the dense
/// ranks of their length-`v` tuples under the alternating order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledTuples {
    pub positions: Vec<usize>,
    pub ranks: Vec<usize>,
}

/// The tuple-rank string of a sentinel-terminated word (ranks from 0).
pub fn sampled_tuple_ranks<S: Symbol>(w: &[S], cover: &DifferenceCover) -> Result<SampledTuples> {
    check_sentinel_terminated(w)?;
    if !cover.v.is_multiple_of(2) {
        return Err(Error::InvalidCover(format!("alternating sort needs an even modulus, got {}", cover.v)));
    }
    let (text, sigma) = dense(w);
    let positions = sample_positions(text.len(), cover);
    let (ranks, _) = rank_tuples(&text, sigma, cover, &positions, true);
    Ok(SampledTuples {
        positions: positions.into_iter().map(|p| p as usize).collect(),
        ranks: ranks.into_iter().map(|r| r as usize - 1).collect(),
    })
}

/// Suffix array of a sentinel-terminated word under the alternating order.
pub fn alt_suffix_array_dc<S: Symbol>(w: &[S], cover: &DifferenceCover) -> Result<Vec<usize>> {
    suffix_array(w, cover, SuffixOrder::Alt)
}

/// Suffix array of a sentinel-terminated word under `order`.
pub fn suffix_array<S: Symbol>(w: &[S], cover: &DifferenceCover, order: SuffixOrder) -> Result<Vec<usize>> {
    check_sentinel_terminated(w)?;
    if order == SuffixOrder::Alt && !cover.v.is_multiple_of(2) {
        return Err(Error::InvalidCover(format!("alternating sort needs an even modulus, got {}", cover.v)));
    }
    if w.len() > u32::MAX as usize - 1 {
        return Err(Error::InvalidCover("input too long for 32-bit positions".into()));
    }
    let (text, sigma) = dense(w);
    let sa = sort_suffixes(&text, sigma, cover, order == SuffixOrder::Alt, DIRECT_SORT_LIMIT);
    Ok(sa.into_iter().map(|p| p as usize).collect())
}

/// `(L, I)` of a sentinel-terminated word from its suffix array: rotation
/// order equals suffix order because the sentinel is unique and terminal.
pub fn transform_from_suffixes<S: Symbol>(w: &[S], sa: &[usize]) -> Result<TransformOutput<S>> {
    check_sentinel_terminated(w)?;
    if sa.len() != w.len() {
        return Err(Error::LengthMismatch(sa.len(), w.len()));
    }
    let mut seen = vec![false; w.len()];
    for &p in sa {
        if p >= w.len() || std::mem::replace(&mut seen[p], true) {
            return Err(Error::CorruptTransform("suffix array is not a permutation".into()));
        }
    }
    Ok(crate::reference::transform_from_starts(w, sa))
}

/// `abwt(w)` for a sentinel-terminated word from its alternating suffix array.
pub fn abwt_from_suffixes<S: Symbol>(w: &[S], sa: &[usize]) -> Result<TransformOutput<S>> {
    transform_from_suffixes(w, sa)
}

/// `abwt(w)` for a sentinel-terminated word, start to finish.
pub fn abwt_dc<S: Symbol>(w: &[S], cover: &DifferenceCover) -> Result<TransformOutput<S>> {
    let sa = alt_suffix_array_dc(w, cover)?;
    transform_from_suffixes(w, &sa)
}

fn dense<S: Symbol>(w: &[S]) -> (Vec<u32>, usize) {
    let alphabet = DenseAlphabet::of(w);
    (alphabet.encode(w), alphabet.len())
}

fn sample_positions(n: usize, cover: &DifferenceCover) -> Vec<u32> {
    let mut positions = Vec::with_capacity(n * cover.members.len() / cover.v + cover.members.len());
    for &d in &cover.members {
        positions.extend((d..n).step_by(cover.v).map(|p| p as u32));
    }
    positions
}

/// Symbol key at offset `q` of a tuple, with the alternating flip applied.
#[inline]
fn key_at(text: &[u32], pos: usize, q: usize, sigma: u32, alt: bool) -> u32 {
    let c = text.get(pos + q).copied().unwrap_or(0);
    if alt && q % 2 == 1 {
        sigma - 1 - c
    } else {
        c
    }
}

/// Stable counting sort of `items` by `key`, keys below `radix`.
fn counting_sort(items: &[u32], radix: usize, key: impl Fn(u32) -> u32, out: &mut Vec<u32>) {
    let mut count = vec![0usize; radix + 1];
    for &it in items {
        count[key(it) as usize + 1] += 1;
    }
    for c in 1..=radix {
        count[c] += count[c - 1];
    }
    out.clear();
    out.resize(items.len(), 0);
    for &it in items {
        let k = key(it) as usize;
        out[count[k]] = it;
        count[k] += 1;
    }
}

/// Bits needed to store keys below `radix`.
fn bits_for(radix: usize) -> u32 {
    usize::BITS - (radix.max(2) - 1).leading_zeros()
}

/// The first `len` keys of the suffix at `pos`, first key most significant.
#[inline]
fn packed_key(text: &[u32], pos: usize, len: usize, bits: u32, sigma: u32, alt: bool) -> u64 {
    (0..len).fold(0u64, |key, q| (key << bits) | key_at(text, pos, q, sigma, alt) as u64)
}

/// Stable LSD radix sort of `(key, item)` pairs on the low `bits` key bits.
fn radix_sort_pairs(items: &mut Vec<(u64, u32)>, bits: u32) {
    const DIGIT: u32 = 11;
    let mask = (1u64 << DIGIT) - 1;
    let mut scratch = vec![(0u64, 0u32); items.len()];
    let mut count = vec![0usize; (1 << DIGIT) + 1];
    let mut shift = 0;
    while shift < bits {
        count.fill(0);
        for &(k, _) in items.iter() {
            count[((k >> shift) & mask) as usize + 1] += 1;
        }
        if !count.contains(&items.len()) {
            for d in 1..count.len() {
                count[d] += count[d - 1];
            }
            for &it in items.iter() {
                let d = ((it.0 >> shift) & mask) as usize;
                scratch[count[d]] = it;
                count[d] += 1;
            }
            std::mem::swap(items, &mut scratch);
        }
        shift += DIGIT;
    }
}

/// Sorts `(key, item)` pairs by key (order among equal keys unspecified):
/// one scatter on the top 16 key bits, then each bucket sorted in place.
/// Wide keys over large inputs stay in cache this way, unlike several
/// full-width LSD passes.
fn sort_pairs_by_key(items: &mut Vec<(u64, u32)>, bits: u32) {
    const TOP: u32 = 16;
    if bits <= TOP || items.len() < 1 << TOP {
        radix_sort_pairs(items, bits);
        return;
    }
    let shift = bits - TOP;
    let mut start = vec![0usize; (1 << TOP) + 1];
    for &(k, _) in items.iter() {
        start[(k >> shift) as usize + 1] += 1;
    }
    for d in 1..start.len() {
        start[d] += start[d - 1];
    }
    let mut out = vec![(0u64, 0u32); items.len()];
    let mut next = start.clone();
    for &it in items.iter() {
        let d = (it.0 >> shift) as usize;
        out[next[d]] = it;
        next[d] += 1;
    }
    for d in 0..1 << TOP {
        let bucket = &mut out[start[d]..start[d + 1]];
        if bucket.len() > 1 {
            bucket.sort_unstable_by_key(|&(k, _)| k);
        }
    }
    *items = out;
}

/// Dense 1-based ranks of the sampled tuples, indexed like `positions`,
/// and the largest rank.
fn rank_tuples(text: &[u32], sigma: usize, cover: &DifferenceCover, positions: &[u32], alt: bool) -> (Vec<u32>, u32) {
    let (ranks, max_rank, _) = rank_and_order_tuples(text, sigma, cover, positions, alt);
    (ranks, max_rank)
}

/// [`rank_tuples`], plus the tuple indices in sorted order.
fn rank_and_order_tuples(
    text: &[u32],
    sigma: usize,
    cover: &DifferenceCover,
    positions: &[u32],
    alt: bool,
) -> (Vec<u32>, u32, Vec<u32>) {
    let v = cover.v;
    let sig = sigma as u32;
    let bits = bits_for(sigma);
    let mut ranks = vec![0u32; positions.len()];
    let mut rank = 0u32;
    if bits as usize * v <= 64 {
        // padding past the end never ties: the sentinel sits at a different
        // offset in every tuple that reaches it
        let mut pairs: Vec<(u64, u32)> = positions
            .iter()
            .enumerate()
            .map(|(t, &p)| (packed_key(text, p as usize, v, bits, sig, alt), t as u32))
            .collect();
        sort_pairs_by_key(&mut pairs, bits * v as u32);
        let order: Vec<u32> = pairs.iter().map(|&(_, t)| t).collect();
        let mut prev = None;
        for (chunk, ts) in pairs.chunks(MERGE_BATCH).zip(order.chunks(MERGE_BATCH)) {
            touch(&ranks, ts);
            for &(key, t) in chunk {
                if prev != Some(key) {
                    rank += 1;
                    prev = Some(key);
                }
                ranks[t as usize] = rank;
            }
        }
        return (ranks, rank, order);
    }
    let mut order: Vec<u32> = (0..positions.len() as u32).collect();
    let mut scratch = Vec::new();
    for q in (0..v).rev() {
        counting_sort(&order, sigma, |t| key_at(text, positions[t as usize] as usize, q, sig, alt), &mut scratch);
        std::mem::swap(&mut order, &mut scratch);
    }
    let mut prev: Option<usize> = None;
    for &t in &order {
        let p = positions[t as usize] as usize;
        let same = prev.is_some_and(|pp| (0..v).all(|q| text.get(pp + q) == text.get(p + q)));
        if !same {
            rank += 1;
        }
        ranks[t as usize] = rank;
        prev = Some(p);
    }
    (ranks, rank, order)
}

fn sort_suffixes(text: &[u32], sigma: usize, cover: &DifferenceCover, alt: bool, direct_limit: usize) -> Vec<u32> {
    let n = text.len();
    let v = cover.v;
    let positions = sample_positions(n, cover);
    let m = positions.len();
    // the recursion must shrink the problem
    if n <= direct_limit || m + 1 >= n {
        let mut sa: Vec<u32> = (0..n as u32).collect();
        sa.sort_by(|&i, &j| cmp_suffixes_direct(text, i as usize, j as usize, alt));
        return sa;
    }

    // sampled suffixes
    let (ranks, max_rank, tuple_order) = rank_and_order_tuples(text, sigma, cover, &positions, alt);
    let sampled_order: Vec<u32> = if max_rank as usize == m {
        tuple_order.iter().map(|&t| positions[t as usize]).collect()
    } else {
        // the rank string is sorted lexicographically whatever the outer order
        let mut reduced = ranks;
        reduced.push(0);
        let sub = sort_suffixes(&reduced, max_rank as usize + 1, cover, false, direct_limit);
        debug_assert_eq!(sub[0] as usize, m);
        sub[1..].iter().map(|&t| positions[t as usize]).collect()
    };
    let mut sample_rank = vec![0u32; n];
    for (c, chunk) in sampled_order.chunks(MERGE_BATCH).enumerate() {
        touch(&sample_rank, chunk);
        for (i, &p) in chunk.iter().enumerate() {
            sample_rank[p as usize] = (c * MERGE_BATCH + i) as u32;
        }
    }

    // Non-sampled suffixes, one residue class at a time: first by the rank
    // of the sample k steps ahead (read off the sorted samples directly,
    // backwards when k is odd under the alternating order), then stably by
    // their first k symbols.
    let sig = sigma as u32;
    let bits = bits_for(sigma);
    let classes: Vec<usize> = (0..v).filter(|&r| !cover.in_cover[r]).collect();
    let mut orders: Vec<Vec<u32>> = vec![Vec::with_capacity(n / v + 1); v];
    for &r in &classes {
        // suffixes too short to reach their sample hold the sentinel within
        // their first k symbols, so their place is settled by the symbol pass
        let k = cover.next_sample[r];
        orders[r].extend((r..n).step_by(v).filter(|&p| p + k >= n).map(|p| p as u32));
    }
    for backwards in [false, true] {
        // classes fed by a sample of each residue in this pass
        let wanted: Vec<Vec<(usize, usize)>> = (0..v)
            .map(|d| {
                classes
                    .iter()
                    .map(|&r| (r, cover.next_sample[r]))
                    .filter(|&(r, k)| (r + k) % v == d && (alt && k % 2 == 1) == backwards)
                    .collect()
            })
            .collect();
        let mut visit = |s: u32| {
            let s = s as usize;
            for &(r, k) in &wanted[(s as u32 % v as u32) as usize] {
                if s >= k {
                    orders[r].push((s - k) as u32);
                }
            }
        };
        if backwards {
            sampled_order.iter().rev().for_each(|&s| visit(s));
        } else {
            sampled_order.iter().for_each(|&s| visit(s));
        }
    }
    let mut lists: Vec<Vec<u32>> = vec![sampled_order];
    let mut scratch = Vec::new();
    for &r in &classes {
        let k = cover.next_sample[r];
        let mut order = std::mem::take(&mut orders[r]);
        if order.is_empty() {
            continue;
        }
        if bits as usize * k <= 64 {
            let mut pairs: Vec<(u64, u32)> = Vec::with_capacity(order.len());
            for batch in order.chunks(MERGE_BATCH) {
                touch(text, batch);
                pairs.extend(batch.iter().map(|&p| (packed_key(text, p as usize, k, bits, sig, alt), p)));
            }
            radix_sort_pairs(&mut pairs, bits * k as u32);
            order = pairs.into_iter().map(|(_, p)| p).collect();
        } else {
            for q in (0..k).rev() {
                counting_sort(&order, sigma, |p| key_at(text, p as usize, q, sig, alt), &mut scratch);
                std::mem::swap(&mut order, &mut scratch);
            }
        }
        lists.push(order);
    }

    merge(text, cover, &sample_rank, &lists, alt)
}

/// Reads `data` at each of `positions` in a tight loop so the cache misses
/// overlap; the loop that actually uses the values then hits cache.
fn touch(data: &[u32], positions: &[u32]) {
    let last = data.len() - 1;
    let sum = positions.iter().fold(0u32, |acc, &p| {
        let p = p as usize;
        acc ^ data[p] ^ data[(p + 8).min(last)]
    });
    std::hint::black_box(sum);
}

/// A sorted list being merged, with the comparison data of its next few
/// entries gathered into a small buffer so the random reads overlap.
struct Cursor<'a> {
    list: &'a [u32],
    fetched: usize,
    buf: Vec<u32>,
    at: usize,
}

const MERGE_BATCH: usize = 1024;

impl<'a> Cursor<'a> {
    // record: position, residue, v - 1 symbols, v sample ranks
    fn stride(v: usize) -> usize {
        2 * v + 1
    }

    fn refill(&mut self, text: &[u32], sample_rank: &[u32], v: usize) {
        self.buf.clear();
        self.at = 0;
        let end = (self.fetched + MERGE_BATCH).min(self.list.len());
        let batch = &self.list[self.fetched..end];
        touch(text, batch);
        touch(sample_rank, batch);
        for &p in batch {
            let p = p as usize;
            self.buf.push(p as u32);
            self.buf.push(p as u32 % v as u32);
            self.buf.extend((0..v - 1).map(|q| text.get(p + q).copied().unwrap_or(0)));
            self.buf.extend((0..v).map(|q| sample_rank.get(p + q).copied().unwrap_or(0)));
        }
        self.fetched = end;
    }
}

/// Merges the sorted class lists using the cover to bound comparisons.
fn merge(text: &[u32], cover: &DifferenceCover, sample_rank: &[u32], lists: &[Vec<u32>], alt: bool) -> Vec<u32> {
    let n = text.len();
    let v = cover.v;
    let stride = Cursor::stride(v);
    // records of suffixes i and j: compare up to the first offset where both
    // are sampled, then by sample rank
    let cmp = |a: &[u32], b: &[u32]| -> Ordering {
        let k = cover.delta[a[1] as usize * v + b[1] as usize];
        for q in 0..k {
            let (x, y) = (a[2 + q], b[2 + q]);
            if x != y {
                return if alt && q % 2 == 1 { y.cmp(&x) } else { x.cmp(&y) };
            }
        }
        let (ra, rb) = (a[v + 1 + k], b[v + 1 + k]);
        if alt && k % 2 == 1 {
            rb.cmp(&ra)
        } else {
            ra.cmp(&rb)
        }
    };
    let mut cursors: Vec<Cursor> = lists
        .iter()
        .map(|l| {
            let mut c = Cursor { list: l, fetched: 0, buf: Vec::with_capacity(MERGE_BATCH * stride), at: 0 };
            c.refill(text, sample_rank, v);
            c
        })
        .collect();
    let mut out = Vec::with_capacity(n);
    loop {
        let mut best: Option<usize> = None;
        for l in 0..cursors.len() {
            let c = &cursors[l];
            if c.at == c.buf.len() {
                continue;
            }
            best = match best {
                Some(b) if {
                    let cb = &cursors[b];
                    cmp(&cb.buf[cb.at..cb.at + stride], &c.buf[c.at..c.at + stride]) != Ordering::Greater
                } => Some(b),
                _ => Some(l),
            };
        }
        let Some(b) = best else { break };
        let c = &mut cursors[b];
        out.push(c.buf[c.at]);
        c.at += stride;
        if c.at == c.buf.len() && c.fetched < c.list.len() {
            c.refill(text, sample_rank, v);
        }
    }
    out
}

fn cmp_suffixes_direct(text: &[u32], i: usize, j: usize, alt: bool) -> Ordering {
    let (x, y) = (&text[i..], &text[j..]);
    match x.iter().zip(y).position(|(a, b)| a != b) {
        Some(q) if alt && q % 2 == 1 => y[q].cmp(&x[q]),
        Some(q) => x[q].cmp(&y[q]),
        // unreachable for distinct suffixes of a sentinel-terminated text
        None => x.len().cmp(&y.len()).reverse(),
    }
}
