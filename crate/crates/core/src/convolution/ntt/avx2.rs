//! AVX2 kernels: eight Montgomery lanes per vector.
//!
//! Stages with half-length at least 8 vectorize across the butterfly index. The
//! last three forward stages (first three inverse stages) run on 8x8 transposed
//! tiles, so the frequency-domain layout differs from the scalar kernels; callers
//! must pair a forward and inverse transform from the same kernel set.

#[cfg(target_arch = "x86")]
use std::arch::x86::*;
#[cfg(target_arch = "x86_64")]
use std::arch::x86_64::*;

use std::arch::asm;

use super::{MODULUS, NEG_INV};

/// Sub-transforms at or below this length run all their stages in cache.
pub(super) const CACHE_BLOCK: usize = 1 << 15;

/// Smallest length the vector kernels handle.
pub const MIN_LEN: usize = 64;

#[inline]
#[target_feature(enable = "avx2")]
unsafe fn load(src: &[u32]) -> __m256i {
    debug_assert!(src.len() >= 8);
    _mm256_loadu_si256(src.as_ptr() as *const __m256i)
}

#[inline]
#[target_feature(enable = "avx2")]
unsafe fn store(dst: &mut [u32], v: __m256i) {
    debug_assert!(dst.len() >= 8);
    _mm256_storeu_si256(dst.as_mut_ptr() as *mut __m256i, v)
}

#[inline]
#[target_feature(enable = "avx2")]
unsafe fn modulus() -> __m256i {
    _mm256_set1_epi32(MODULUS as i32)
}

#[inline]
#[target_feature(enable = "avx2")]
unsafe fn add(a: __m256i, b: __m256i) -> __m256i {
    let s = _mm256_add_epi32(a, b);
    _mm256_min_epu32(s, _mm256_sub_epi32(s, modulus()))
}

#[inline]
#[target_feature(enable = "avx2")]
unsafe fn sub(a: __m256i, b: __m256i) -> __m256i {
    let d = _mm256_sub_epi32(a, b);
    _mm256_min_epu32(d, _mm256_add_epi32(d, modulus()))
}

#[inline]
#[target_feature(enable = "avx2")]
unsafe fn mul(a: __m256i, b: __m256i) -> __m256i {
    let p = modulus();
    let neg_inv = _mm256_set1_epi32(NEG_INV as i32);
    let prod_even = _mm256_mul_epu32(a, b);
    let prod_odd = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), _mm256_srli_epi64(b, 32));
    let mut m_even = _mm256_mul_epu32(prod_even, neg_inv);
    let mut m_odd = _mm256_mul_epu32(prod_odd, neg_inv);
    // Opaque to the optimizer: once it sees that only the low halves of `m` are
    // used, it rewrites these products as emulated 64-bit multiplies.
    asm!("/* {0} {1} */", inout(ymm_reg) m_even, inout(ymm_reg) m_odd, options(pure, nomem, nostack));
    let t_even = _mm256_add_epi64(prod_even, _mm256_mul_epu32(m_even, p));
    let t_odd = _mm256_add_epi64(prod_odd, _mm256_mul_epu32(m_odd, p));
    let r = _mm256_blend_epi32(_mm256_srli_epi64(t_even, 32), t_odd, 0b1010_1010);
    _mm256_min_epu32(r, _mm256_sub_epi32(r, p))
}

#[inline]
#[target_feature(enable = "avx2")]
unsafe fn transpose(v: &mut [__m256i; 8]) {
    let t0 = _mm256_unpacklo_epi32(v[0], v[1]);
    let t1 = _mm256_unpackhi_epi32(v[0], v[1]);
    let t2 = _mm256_unpacklo_epi32(v[2], v[3]);
    let t3 = _mm256_unpackhi_epi32(v[2], v[3]);
    let t4 = _mm256_unpacklo_epi32(v[4], v[5]);
    let t5 = _mm256_unpackhi_epi32(v[4], v[5]);
    let t6 = _mm256_unpacklo_epi32(v[6], v[7]);
    let t7 = _mm256_unpackhi_epi32(v[6], v[7]);
    let s0 = _mm256_unpacklo_epi64(t0, t2);
    let s1 = _mm256_unpackhi_epi64(t0, t2);
    let s2 = _mm256_unpacklo_epi64(t1, t3);
    let s3 = _mm256_unpackhi_epi64(t1, t3);
    let s4 = _mm256_unpacklo_epi64(t4, t6);
    let s5 = _mm256_unpackhi_epi64(t4, t6);
    let s6 = _mm256_unpacklo_epi64(t5, t7);
    let s7 = _mm256_unpackhi_epi64(t5, t7);
    v[0] = _mm256_permute2x128_si256(s0, s4, 0x20);
    v[1] = _mm256_permute2x128_si256(s1, s5, 0x20);
    v[2] = _mm256_permute2x128_si256(s2, s6, 0x20);
    v[3] = _mm256_permute2x128_si256(s3, s7, 0x20);
    v[4] = _mm256_permute2x128_si256(s0, s4, 0x31);
    v[5] = _mm256_permute2x128_si256(s1, s5, 0x31);
    v[6] = _mm256_permute2x128_si256(s2, s6, 0x31);
    v[7] = _mm256_permute2x128_si256(s3, s7, 0x31);
}

#[inline]
#[target_feature(enable = "avx2")]
unsafe fn dif_stage(a: &mut [u32], len: usize, w: &[u32]) {
    for block in a.chunks_exact_mut(2 * len) {
        let (lo, hi) = block.split_at_mut(len);
        for j in (0..len).step_by(8) {
            let x = load(&lo[j..]);
            let y = load(&hi[j..]);
            store(&mut lo[j..], add(x, y));
            store(&mut hi[j..], mul(sub(x, y), load(&w[j..])));
        }
    }
}

#[inline]
#[target_feature(enable = "avx2")]
unsafe fn dit_stage(a: &mut [u32], len: usize, w: &[u32]) {
    for block in a.chunks_exact_mut(2 * len) {
        let (lo, hi) = block.split_at_mut(len);
        for j in (0..len).step_by(8) {
            let x = load(&lo[j..]);
            let y = mul(load(&hi[j..]), load(&w[j..]));
            store(&mut lo[j..], add(x, y));
            store(&mut hi[j..], sub(x, y));
        }
    }
}

#[inline]
#[target_feature(enable = "avx2")]
unsafe fn tail_twiddles(table: &[u32]) -> ([__m256i; 4], [__m256i; 2]) {
    let w4 = [
        _mm256_set1_epi32(table[4] as i32),
        _mm256_set1_epi32(table[5] as i32),
        _mm256_set1_epi32(table[6] as i32),
        _mm256_set1_epi32(table[7] as i32),
    ];
    let w2 = [_mm256_set1_epi32(table[2] as i32), _mm256_set1_epi32(table[3] as i32)];
    (w4, w2)
}

/// Two DIF stages at once: half-lengths `2h` then `h`.
#[inline]
#[target_feature(enable = "avx2")]
unsafe fn dif_stage4(a: &mut [u32], h: usize, table: &[u32]) {
    let outer = &table[2 * h..4 * h];
    let inner = &table[h..2 * h];
    for block in a.chunks_exact_mut(4 * h) {
        let (q01, q23) = block.split_at_mut(2 * h);
        let (q0, q1) = q01.split_at_mut(h);
        let (q2, q3) = q23.split_at_mut(h);
        for j in (0..h).step_by(8) {
            let (a0, a1, a2, a3) = (load(&q0[j..]), load(&q1[j..]), load(&q2[j..]), load(&q3[j..]));
            let b0 = add(a0, a2);
            let b2 = mul(sub(a0, a2), load(&outer[j..]));
            let b1 = add(a1, a3);
            let b3 = mul(sub(a1, a3), load(&outer[h + j..]));
            let w = load(&inner[j..]);
            store(&mut q0[j..], add(b0, b1));
            store(&mut q1[j..], mul(sub(b0, b1), w));
            store(&mut q2[j..], add(b2, b3));
            store(&mut q3[j..], mul(sub(b2, b3), w));
        }
    }
}

/// Two DIT stages at once: half-lengths `h` then `2h`.
#[inline]
#[target_feature(enable = "avx2")]
unsafe fn dit_stage4(a: &mut [u32], h: usize, table: &[u32]) {
    let inner = &table[h..2 * h];
    let outer = &table[2 * h..4 * h];
    for block in a.chunks_exact_mut(4 * h) {
        let (q01, q23) = block.split_at_mut(2 * h);
        let (q0, q1) = q01.split_at_mut(h);
        let (q2, q3) = q23.split_at_mut(h);
        for j in (0..h).step_by(8) {
            let w = load(&inner[j..]);
            let (a0, a2) = (load(&q0[j..]), load(&q2[j..]));
            let a1 = mul(load(&q1[j..]), w);
            let a3 = mul(load(&q3[j..]), w);
            let (b0, b1) = (add(a0, a1), sub(a0, a1));
            let (b2, b3) = (add(a2, a3), sub(a2, a3));
            let b2 = mul(b2, load(&outer[j..]));
            let b3 = mul(b3, load(&outer[h + j..]));
            store(&mut q0[j..], add(b0, b2));
            store(&mut q2[j..], sub(b0, b2));
            store(&mut q1[j..], add(b1, b3));
            store(&mut q3[j..], sub(b1, b3));
        }
    }
}

/// Stages of half-length 4, 2 and 1 over 64-element tiles; output stays transposed.
#[inline]
#[target_feature(enable = "avx2")]
unsafe fn dif_tail(a: &mut [u32], table: &[u32]) {
    let (w4, w2) = tail_twiddles(table);
    for tile in a.chunks_exact_mut(64) {
        let mut v = [_mm256_setzero_si256(); 8];
        for (r, x) in v.iter_mut().enumerate() {
            *x = load(&tile[8 * r..]);
        }
        transpose(&mut v);
        for c in 0..4 {
            let (x, y) = (v[c], v[c + 4]);
            v[c] = add(x, y);
            v[c + 4] = mul(sub(x, y), w4[c]);
        }
        for c in [0, 1, 4, 5] {
            let (x, y) = (v[c], v[c + 2]);
            v[c] = add(x, y);
            v[c + 2] = mul(sub(x, y), w2[c % 2]);
        }
        for c in [0, 2, 4, 6] {
            let (x, y) = (v[c], v[c + 1]);
            v[c] = add(x, y);
            v[c + 1] = sub(x, y);
        }
        for (r, &x) in v.iter().enumerate() {
            store(&mut tile[8 * r..], x);
        }
    }
}

/// Inverse of the tile layout produced by [`dif_tail`]; output in natural order.
#[inline]
#[target_feature(enable = "avx2")]
unsafe fn dit_head(a: &mut [u32], table: &[u32]) {
    let (w4, w2) = tail_twiddles(table);
    for tile in a.chunks_exact_mut(64) {
        let mut v = [_mm256_setzero_si256(); 8];
        for (r, x) in v.iter_mut().enumerate() {
            *x = load(&tile[8 * r..]);
        }
        for c in [0, 2, 4, 6] {
            let (x, y) = (v[c], v[c + 1]);
            v[c] = add(x, y);
            v[c + 1] = sub(x, y);
        }
        for c in [0, 1, 4, 5] {
            let (x, y) = (v[c], mul(v[c + 2], w2[c % 2]));
            v[c] = add(x, y);
            v[c + 2] = sub(x, y);
        }
        for c in 0..4 {
            let (x, y) = (v[c], mul(v[c + 4], w4[c]));
            v[c] = add(x, y);
            v[c + 4] = sub(x, y);
        }
        transpose(&mut v);
        for (r, &x) in v.iter().enumerate() {
            store(&mut tile[8 * r..], x);
        }
    }
}

#[target_feature(enable = "avx2")]
unsafe fn forward_rec(a: &mut [u32], table: &[u32]) {
    let n = a.len();
    if n <= CACHE_BLOCK {
        let mut len = n / 2;
        while len >= 16 {
            dif_stage4(a, len / 2, table);
            len /= 4;
        }
        if len == 8 {
            dif_stage(a, 8, &table[8..16]);
        }
        dif_tail(a, table);
        return;
    }
    dif_stage4(a, n / 4, table);
    for quarter in a.chunks_exact_mut(n / 4) {
        forward_rec(quarter, table);
    }
}

#[target_feature(enable = "avx2")]
unsafe fn inverse_rec(a: &mut [u32], table: &[u32]) {
    let n = a.len();
    if n <= CACHE_BLOCK {
        dit_head(a, table);
        let mut len = 8;
        while 4 * len <= n {
            dit_stage4(a, len, table);
            len *= 4;
        }
        if len < n {
            dit_stage(a, len, &table[len..2 * len]);
        }
        return;
    }
    for quarter in a.chunks_exact_mut(n / 4) {
        inverse_rec(quarter, table);
    }
    dit_stage4(a, n / 4, table);
}

#[target_feature(enable = "avx2")]
unsafe fn pointwise(a: &mut [u32], b: &[u32]) {
    for (x, y) in a.chunks_exact_mut(8).zip(b.chunks_exact(8)) {
        store(x, mul(load(x), load(y)));
    }
}

/// Safety: the CPU must support AVX2, `a.len()` must be a power of two of at
/// least [`MIN_LEN`], and `table` must hold the stage twiddles for that length.
pub unsafe fn forward(a: &mut [u32], table: &[u32]) {
    forward_rec(a, table)
}

/// Safety: as for [`forward`], with the inverse twiddle table.
pub unsafe fn inverse(a: &mut [u32], table: &[u32]) {
    inverse_rec(a, table)
}

/// Safety: the CPU must support AVX2 and both slices must have the same length,
/// a multiple of 8.
pub unsafe fn pointwise_mul(a: &mut [u32], b: &[u32]) {
    pointwise(a, b)
}

/// Writes `one` at every set bit position of `words` and zero elsewhere; `out`
/// holds exactly `64 * words.len()` entries.
///
/// Safety: the CPU must support AVX2.
#[target_feature(enable = "avx2")]
pub unsafe fn expand_bits(words: &[u64], out: &mut [u32], one: u32) {
    debug_assert_eq!(out.len(), 64 * words.len());
    let select = _mm256_setr_epi32(1, 2, 4, 8, 16, 32, 64, 128);
    let one = _mm256_set1_epi32(one as i32);
    for (&w, dst) in words.iter().zip(out.chunks_exact_mut(64)) {
        for (byte, lanes) in dst.chunks_exact_mut(8).enumerate() {
            let v = _mm256_set1_epi32(((w >> (8 * byte)) & 0xff) as i32);
            let hit = _mm256_cmpeq_epi32(_mm256_and_si256(v, select), select);
            store(lanes, _mm256_and_si256(hit, one));
        }
    }
}

/// One bit per coefficient, set where the coefficient is nonzero.
///
/// Safety: the CPU must support AVX2 and `coeffs.len()` must be a multiple of 64.
#[target_feature(enable = "avx2")]
pub unsafe fn nonzero_words(coeffs: &[u32], out: &mut Vec<u64>) {
    let zero = _mm256_setzero_si256();
    for chunk in coeffs.chunks_exact(64) {
        let mut word = 0u64;
        for (byte, lanes) in chunk.chunks_exact(8).enumerate() {
            let is_zero = _mm256_cmpeq_epi32(load(lanes), zero);
            let mask = !_mm256_movemask_ps(_mm256_castsi256_ps(is_zero)) as u64 & 0xff;
            word |= mask << (8 * byte);
        }
        out.push(word);
    }
}

/// First forward stage for an input whose upper half is zero, fused with bit
/// expansion: `lo[j] = one` and `hi[j] = w[j]` where bit `j` is set, zero elsewhere.
///
/// Safety: the CPU must support AVX2; `lo`, `hi` and `w` hold `64 * words.len()`
/// entries.
#[target_feature(enable = "avx2")]
pub unsafe fn expand_first_stage(words: &[u64], lo: &mut [u32], hi: &mut [u32], w: &[u32], one: u32) {
    debug_assert!(lo.len() == 64 * words.len() && hi.len() == lo.len() && w.len() >= lo.len());
    let select = _mm256_setr_epi32(1, 2, 4, 8, 16, 32, 64, 128);
    let one = _mm256_set1_epi32(one as i32);
    for (k, (l, h)) in lo.chunks_exact_mut(8).zip(hi.chunks_exact_mut(8)).enumerate() {
        let byte = (words[k / 8] >> (8 * (k % 8))) & 0xff;
        let v = _mm256_set1_epi32(byte as i32);
        let hit = _mm256_cmpeq_epi32(_mm256_and_si256(v, select), select);
        store(l, _mm256_and_si256(hit, one));
        store(h, _mm256_and_si256(hit, load(&w[8 * k..])));
    }
}
