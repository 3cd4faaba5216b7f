//! Burrows-Wheeler transforms under generalized lexicographic orders, with
//! the alternating order as the main fast path.
//!
//! Words are slices of unsigned integer symbols. The value `0` is reserved
//! as the end-of-string sentinel: it is the smallest symbol under the base
//! order and, at odd positions of the alternating order, the largest.

pub mod dcsort;
mod error;
pub mod fmindex;
pub mod galois;
pub mod lfmap;
pub mod orders;
pub mod rankindex;
pub mod rankinv;
pub mod reference;
pub mod stats;
mod symbol;
pub mod transform;

pub use dcsort::{DifferenceCover, SuffixOrder};
pub use error::{Error, Result};
pub use fmindex::{AbwtIndex, RowRange};
pub use galois::{find_galois_rotation, is_galois, is_primitive, GaloisRotation};
pub use lfmap::Mode;
pub use orders::{cmp_alt, cmp_k, Alphabet, Canonical, OrderSpec, Permutation, StandardOrder};
pub use rankindex::RankIndex;
pub use reference::TransformOutput;
pub use rankinv::{check_rank_invertible, predict_rank_invertible, Verdict};
pub use stats::{h0, hk, hk_circular, rle, RunLength};
pub use symbol::{is_sentinel_terminated, Symbol};
pub use transform::{invert, rotation_order, transform};

pub type ByteOrderSpec = OrderSpec<u8>;
pub type BytePermutation = Permutation<u8>;
pub type ByteAlphabet = Alphabet<u8>;
pub type ByteTransform = TransformOutput<u8>;
pub type ByteRankIndex = RankIndex<u8>;
pub type ByteAbwtIndex = AbwtIndex<u8>;
