//! Exact boolean convolution: the support of the product of two 0/1 polynomials.
//!
//! Large products go through a number-theoretic transform. Every coefficient of a
//! product of two 0/1 vectors is at most `min(|a|, |b|) <= 2^27 < p`, so a
//! coefficient is nonzero modulo `p` exactly when it is nonzero over the integers.
//! Results are re-binarized, so counts never accumulate across calls.
//!
//! Two-dimensional products are packed into one dimension: cell `(s, j)` lives at
//! index `j * stride + s`, and a stride larger than any sum the product can produce
//! keeps rows from bleeding into each other.

pub mod ntt;

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Largest transform length the backend will run.
pub const MAX_TRANSFORM_LEN: usize = 1 << ntt::MAX_LOG_LEN;

/// Products of support sizes at or below this use the quadratic loop.
pub const DEFAULT_NAIVE_CUTOFF: usize = 4096;

/// When the padded length overshoots a power of two by at most this many
/// coefficients, the overshoot is handled by shifted ORs instead of doubling the
/// transform.
const TAIL_SPLIT_MAX: usize = 64;

/// Characteristic polynomial of a set: bit `i` is the coefficient of `x^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct BoolVec {
    bits: Bits,
}

// Never empty: the length is at least 1.
#[allow(clippy::len_without_is_empty)]
impl BoolVec {
    /// Panics if `len == 0`.
    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1, "BoolVec length must be at least 1");
        BoolVec { bits: Bits::zeros(len) }
    }

    /// Panics if an index is out of range.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = BoolVec::zeros(len);
        for i in indices {
            v.bits.set(i);
        }
        v
    }

    pub fn from_bits(bits: Bits) -> Self {
        assert!(!bits.is_empty(), "BoolVec length must be at least 1");
        BoolVec { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    pub fn set(&mut self, i: usize) {
        self.bits.set(i)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn into_bits(self) -> Bits {
        self.bits
    }
}

impl std::fmt::Debug for BoolVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BoolVec[{}]", self.len())?;
        f.debug_set().entries(self.iter_ones()).finish()
    }
}

/// A 0/1 grid over `{0..=sum_extent} x {0..=card_extent}` packed with a fixed stride.
#[derive(Clone, PartialEq, Eq)]
pub struct PackedGrid {
    stride: usize,
    sum_extent: usize,
    card_extent: usize,
    cells: BoolVec,
}

impl PackedGrid {
    /// Empty grid; requires `sum_extent < stride`.
    pub fn new(stride: usize, sum_extent: usize, card_extent: usize) -> Result<Self> {
        if sum_extent >= stride {
            return Err(Error::StrideTooSmall {
                stride,
                required: sum_extent + 1,
            });
        }
        Ok(PackedGrid {
            stride,
            sum_extent,
            card_extent,
            cells: BoolVec::zeros(stride * (card_extent + 1)),
        })
    }

    /// Grid holding `cells`; cells outside the extents are dropped.
    pub fn from_cells<I>(stride: usize, sum_extent: usize, card_extent: usize, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut grid = PackedGrid::new(stride, sum_extent, card_extent)?;
        for (s, j) in cells {
            if s <= sum_extent && j <= card_extent {
                grid.set(s, j);
            }
        }
        Ok(grid)
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn sum_extent(&self) -> usize {
        self.sum_extent
    }

    pub fn card_extent(&self) -> usize {
        self.card_extent
    }

    pub fn cells(&self) -> &BoolVec {
        &self.cells
    }

    /// Panics if the cell is outside the extents.
    pub fn set(&mut self, s: usize, j: usize) {
        assert!(s <= self.sum_extent && j <= self.card_extent);
        self.cells.set(j * self.stride + s);
    }

    pub fn get(&self, s: usize, j: usize) -> bool {
        s <= self.sum_extent && j <= self.card_extent && self.cells.get(j * self.stride + s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.stride;
        self.cells.iter_ones().map(move |i| (i % w, i / w))
    }

    pub fn to_sorted_cells(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_unstable();
        v
    }
}

impl std::fmt::Debug for PackedGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PackedGrid[W={}, <={}, <={}]",
            self.stride, self.sum_extent, self.card_extent
        )?;
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Backend tuning shared by every convolution call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvConfig {
    pub naive_cutoff: usize,
}

impl Default for ConvConfig {
    fn default() -> Self {
        ConvConfig {
            naive_cutoff: DEFAULT_NAIVE_CUTOFF,
        }
    }
}

impl ConvConfig {
    pub fn with_naive_cutoff(naive_cutoff: usize) -> Self {
        ConvConfig { naive_cutoff }
    }

    /// Bit `i` of the result, for `i <= out_limit`, is set iff `i = i1 + i2` with
    /// `a[i1]` and `b[i2]` both set.
    pub fn conv_support(&self, a: &BoolVec, b: &BoolVec, out_limit: usize) -> Result<BoolVec> {
        let out_len = out_limit + 1;
        // Indices above the limit cannot contribute: sums only grow.
        let a = a.bits.truncated(out_len.min(a.len()));
        let b = b.bits.truncated(out_len.min(b.len()));
        let (Some(la), Some(lb)) = (a.last_one(), b.last_one()) else {
            return Ok(BoolVec::zeros(out_len));
        };

        let (ka, kb) = (a.count_ones(), b.count_ones());
        if ka.saturating_mul(kb) <= self.naive_cutoff {
            return Ok(BoolVec::from_bits(naive_support(&a, &b, out_len)));
        }
        transform_support(a, la, b, lb, out_len).map(BoolVec::from_bits)
    }

    /// Cell `(s, j)` of the result is set iff it is the componentwise sum of a set
    /// cell of `a` and a set cell of `b`, with `s <= sum_limit` and `j <= card_limit`.
    pub fn conv_support_2d(
        &self,
        a: &PackedGrid,
        b: &PackedGrid,
        sum_limit: usize,
        card_limit: usize,
    ) -> Result<PackedGrid> {
        let stride = a.stride;
        if b.stride != stride {
            return Err(Error::StrideMismatch {
                left: stride,
                right: b.stride,
            });
        }
        let required = a.sum_extent + b.sum_extent + 1;
        if stride < required {
            return Err(Error::StrideTooSmall { stride, required });
        }
        if sum_limit >= stride {
            return Err(Error::SumLimitExceedsStride {
                limit: sum_limit,
                stride,
            });
        }

        let out_limit = stride * (card_limit + 1) - 1;
        let packed = self.conv_support(&a.cells, &b.cells, out_limit)?;
        let mut cells = BoolVec::zeros(out_limit + 1);
        for i in packed.iter_ones() {
            if i % stride <= sum_limit {
                cells.set(i);
            }
        }
        Ok(PackedGrid {
            stride,
            sum_extent: sum_limit,
            card_extent: card_limit,
            cells,
        })
    }
}

/// [`ConvConfig::conv_support`] with the default configuration.
pub fn conv_support(a: &BoolVec, b: &BoolVec, out_limit: usize) -> Result<BoolVec> {
    ConvConfig::default().conv_support(a, b, out_limit)
}

/// [`ConvConfig::conv_support_2d`] with the default configuration.
pub fn conv_support_2d(a: &PackedGrid, b: &PackedGrid, sum_limit: usize, card_limit: usize) -> Result<PackedGrid> {
    ConvConfig::default().conv_support_2d(a, b, sum_limit, card_limit)
}

fn naive_support(a: &Bits, b: &Bits, out_len: usize) -> Bits {
    let mut out = Bits::zeros(out_len);
    for i in a.iter_ones() {
        for j in b.iter_ones() {
            if i + j >= out_len {
                break;
            }
            out.set(i + j);
        }
    }
    out
}

/// Length of the cyclic transform and how many high coefficients of the longer
/// operand are peeled off to fit it.
fn plan_transform(la: usize, lb: usize) -> (usize, usize) {
    let full = la + lb + 1;
    let n = full.next_power_of_two();
    let half = n / 2;
    let excess = full.saturating_sub(half);
    if half >= 2 * TAIL_SPLIT_MAX && excess > 0 && excess <= TAIL_SPLIT_MAX {
        (half, excess)
    } else {
        (n, 0)
    }
}

fn transform_support(a: Bits, la: usize, b: Bits, lb: usize, out_len: usize) -> Result<Bits> {
    // Peel from the operand with the higher degree.
    let (a, la, b, lb) = if la <= lb { (a, la, b, lb) } else { (b, lb, a, la) };
    let (n, peel) = plan_transform(la, lb);
    if n > MAX_TRANSFORM_LEN {
        return Err(Error::TransformTooLarge {
            required: n,
            limit: MAX_TRANSFORM_LEN,
        });
    }
    let body_len = lb + 1 - peel;

    let live = out_len.min(la + lb + 1).min(n);
    let words = ntt::support_product(a.words(), la + 1, b.words(), body_len, n, live);
    let mut out = Bits::from_words(live, words);
    out.resize(out_len);
    for j in b.iter_ones().skip_while(|&i| i < body_len) {
        out.or_shifted(&a, j);
    }
    Ok(out)
}
