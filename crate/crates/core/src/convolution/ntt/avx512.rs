//! AVX-512 kernels for the wide stages: sixteen Montgomery lanes per vector.
//!
//! The last four forward stages (first four inverse stages) run on 16x16
//! transposed tiles, so the frequency-domain layout differs from the other kernel
//! sets; callers must pair a forward and inverse transform from the same set.

#[cfg(target_arch = "x86")]
use std::arch::x86::*;
#[cfg(target_arch = "x86_64")]
use std::arch::x86_64::*;

use std::arch::asm;

use super::avx2::CACHE_BLOCK;

/// Smallest length these kernels handle: one transposed tile.
pub const MIN_LEN: usize = 256;
use super::{MODULUS, NEG_INV};

#[inline]
#[target_feature(enable = "avx512f")]
unsafe fn load(src: &[u32]) -> __m512i {
    debug_assert!(src.len() >= 16);
    _mm512_loadu_si512(src.as_ptr() as *const __m512i)
}

#[inline]
#[target_feature(enable = "avx512f")]
unsafe fn store(dst: &mut [u32], v: __m512i) {
    debug_assert!(dst.len() >= 16);
    _mm512_storeu_si512(dst.as_mut_ptr() as *mut __m512i, v)
}

#[inline]
#[target_feature(enable = "avx512f")]
unsafe fn modulus() -> __m512i {
    _mm512_set1_epi32(MODULUS as i32)
}

#[inline]
#[target_feature(enable = "avx512f")]
unsafe fn add(a: __m512i, b: __m512i) -> __m512i {
    let s = _mm512_add_epi32(a, b);
    _mm512_min_epu32(s, _mm512_sub_epi32(s, modulus()))
}

#[inline]
#[target_feature(enable = "avx512f")]
unsafe fn sub(a: __m512i, b: __m512i) -> __m512i {
    let d = _mm512_sub_epi32(a, b);
    _mm512_min_epu32(d, _mm512_add_epi32(d, modulus()))
}

/// Montgomery product `a * b / 2^32 mod p` for inputs below `p`.
#[inline]
#[target_feature(enable = "avx512f")]
unsafe fn mul(a: __m512i, b: __m512i) -> __m512i {
    let p = modulus();
    let neg_inv = _mm512_set1_epi32(NEG_INV as i32);
    let odd_high = _mm512_setr_epi32(1, 17, 3, 19, 5, 21, 7, 23, 9, 25, 11, 27, 13, 29, 15, 31);
    let ab_even = _mm512_mul_epu32(a, b);
    let ab_odd = _mm512_mul_epu32(_mm512_srli_epi64(a, 32), _mm512_srli_epi64(b, 32));
    let mut m_even = _mm512_mul_epu32(ab_even, neg_inv);
    let mut m_odd = _mm512_mul_epu32(ab_odd, neg_inv);
    // Opaque to the optimizer: once it sees that only the low halves of `m` are
    // used, it rewrites these products as emulated 64-bit multiplies.
    asm!("/* {0} {1} */", inout(zmm_reg) m_even, inout(zmm_reg) m_odd, options(pure, nomem, nostack));
    let t_even = _mm512_add_epi64(ab_even, _mm512_mul_epu32(m_even, p));
    let t_odd = _mm512_add_epi64(ab_odd, _mm512_mul_epu32(m_odd, p));
    let r = _mm512_permutex2var_epi32(t_even, odd_high, t_odd);
    _mm512_min_epu32(r, _mm512_sub_epi32(r, p))
}

#[inline]
#[target_feature(enable = "avx512f")]
unsafe fn transpose(v: &mut [__m512i; 16]) {
    let mut t = [_mm512_setzero_si512(); 16];
    for i in 0..8 {
        t[2 * i] = _mm512_unpacklo_epi32(v[2 * i], v[2 * i + 1]);
        t[2 * i + 1] = _mm512_unpackhi_epi32(v[2 * i], v[2 * i + 1]);
    }
    for i in 0..4 {
        let b = 4 * i;
        v[b] = _mm512_unpacklo_epi64(t[b], t[b + 2]);
        v[b + 1] = _mm512_unpackhi_epi64(t[b], t[b + 2]);
        v[b + 2] = _mm512_unpacklo_epi64(t[b + 1], t[b + 3]);
        v[b + 3] = _mm512_unpackhi_epi64(t[b + 1], t[b + 3]);
    }
    // Rows now hold 4x4 blocks; interleave the 128-bit lanes across row groups.
    for i in 0..4 {
        t[i] = _mm512_shuffle_i32x4::<0x88>(v[i], v[i + 4]);
        t[i + 4] = _mm512_shuffle_i32x4::<0xdd>(v[i], v[i + 4]);
        t[i + 8] = _mm512_shuffle_i32x4::<0x88>(v[i + 8], v[i + 12]);
        t[i + 12] = _mm512_shuffle_i32x4::<0xdd>(v[i + 8], v[i + 12]);
    }
    for i in 0..4 {
        v[i] = _mm512_shuffle_i32x4::<0x88>(t[i], t[i + 8]);
        v[i + 8] = _mm512_shuffle_i32x4::<0xdd>(t[i], t[i + 8]);
        v[i + 4] = _mm512_shuffle_i32x4::<0x88>(t[i + 4], t[i + 12]);
        v[i + 12] = _mm512_shuffle_i32x4::<0xdd>(t[i + 4], t[i + 12]);
    }
}

#[inline]
#[target_feature(enable = "avx512f")]
unsafe fn dif_stage(a: &mut [u32], len: usize, w: &[u32]) {
    for block in a.chunks_exact_mut(2 * len) {
        let (lo, hi) = block.split_at_mut(len);
        for j in (0..len).step_by(16) {
            let x = load(&lo[j..]);
            let y = load(&hi[j..]);
            store(&mut lo[j..], add(x, y));
            store(&mut hi[j..], mul(sub(x, y), load(&w[j..])));
        }
    }
}

#[inline]
#[target_feature(enable = "avx512f")]
unsafe fn dit_stage(a: &mut [u32], len: usize, w: &[u32]) {
    for block in a.chunks_exact_mut(2 * len) {
        let (lo, hi) = block.split_at_mut(len);
        for j in (0..len).step_by(16) {
            let x = load(&lo[j..]);
            let y = mul(load(&hi[j..]), load(&w[j..]));
            store(&mut lo[j..], add(x, y));
            store(&mut hi[j..], sub(x, y));
        }
    }
}

/// Two DIF stages at once: half-lengths `2h` then `h`.
#[inline]
#[target_feature(enable = "avx512f")]
unsafe fn dif_stage4(a: &mut [u32], h: usize, table: &[u32]) {
    let outer = &table[2 * h..4 * h];
    let inner = &table[h..2 * h];
    for block in a.chunks_exact_mut(4 * h) {
        let (q01, q23) = block.split_at_mut(2 * h);
        let (q0, q1) = q01.split_at_mut(h);
        let (q2, q3) = q23.split_at_mut(h);
        for j in (0..h).step_by(16) {
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
#[target_feature(enable = "avx512f")]
unsafe fn dit_stage4(a: &mut [u32], h: usize, table: &[u32]) {
    let inner = &table[h..2 * h];
    let outer = &table[2 * h..4 * h];
    for block in a.chunks_exact_mut(4 * h) {
        let (q01, q23) = block.split_at_mut(2 * h);
        let (q0, q1) = q01.split_at_mut(h);
        let (q2, q3) = q23.split_at_mut(h);
        for j in (0..h).step_by(16) {
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

#[inline]
#[target_feature(enable = "avx512f")]
unsafe fn splat(table: &[u32], i: usize) -> __m512i {
    _mm512_set1_epi32(table[i] as i32)
}

#[inline]
#[target_feature(enable = "avx512f")]
unsafe fn load_tile(tile: &[u32]) -> [__m512i; 16] {
    let mut v = [_mm512_setzero_si512(); 16];
    for (r, x) in v.iter_mut().enumerate() {
        *x = load(&tile[16 * r..]);
    }
    v
}

#[inline]
#[target_feature(enable = "avx512f")]
unsafe fn store_tile(tile: &mut [u32], v: &[__m512i; 16]) {
    for (r, &x) in v.iter().enumerate() {
        store(&mut tile[16 * r..], x);
    }
}

/// Stages of half-length 8, 4, 2 and 1 over 256-element tiles; output stays transposed.
#[inline]
#[target_feature(enable = "avx512f")]
unsafe fn dif_tail(a: &mut [u32], table: &[u32]) {
    // Fully unrolled so the tile stays in registers.
    macro_rules! dif {
        ($v:ident, $t:ident, $x:literal, $y:literal, $w:literal) => {{
            let (x, y) = ($v[$x], $v[$y]);
            $v[$x] = add(x, y);
            $v[$y] = mul(sub(x, y), splat($t, $w));
        }};
        ($v:ident, $x:literal, $y:literal) => {{
            let (x, y) = ($v[$x], $v[$y]);
            $v[$x] = add(x, y);
            $v[$y] = sub(x, y);
        }};
    }
    for tile in a.chunks_exact_mut(256) {
        let mut v = load_tile(tile);
        transpose(&mut v);
        dif!(v, table, 0, 8, 8);
        dif!(v, table, 1, 9, 9);
        dif!(v, table, 2, 10, 10);
        dif!(v, table, 3, 11, 11);
        dif!(v, table, 4, 12, 12);
        dif!(v, table, 5, 13, 13);
        dif!(v, table, 6, 14, 14);
        dif!(v, table, 7, 15, 15);
        dif!(v, table, 0, 4, 4);
        dif!(v, table, 1, 5, 5);
        dif!(v, table, 2, 6, 6);
        dif!(v, table, 3, 7, 7);
        dif!(v, table, 8, 12, 4);
        dif!(v, table, 9, 13, 5);
        dif!(v, table, 10, 14, 6);
        dif!(v, table, 11, 15, 7);
        dif!(v, table, 0, 2, 2);
        dif!(v, table, 1, 3, 3);
        dif!(v, table, 4, 6, 2);
        dif!(v, table, 5, 7, 3);
        dif!(v, table, 8, 10, 2);
        dif!(v, table, 9, 11, 3);
        dif!(v, table, 12, 14, 2);
        dif!(v, table, 13, 15, 3);
        dif!(v, 0, 1);
        dif!(v, 2, 3);
        dif!(v, 4, 5);
        dif!(v, 6, 7);
        dif!(v, 8, 9);
        dif!(v, 10, 11);
        dif!(v, 12, 13);
        dif!(v, 14, 15);
        store_tile(tile, &v);
    }
}

/// Inverse of the tile layout produced by [`dif_tail`]; output in natural order.
#[inline]
#[target_feature(enable = "avx512f")]
unsafe fn dit_head(a: &mut [u32], table: &[u32]) {
    macro_rules! dit {
        ($v:ident, $t:ident, $x:literal, $y:literal, $w:literal) => {{
            let (x, y) = ($v[$x], mul($v[$y], splat($t, $w)));
            $v[$x] = add(x, y);
            $v[$y] = sub(x, y);
        }};
        ($v:ident, $x:literal, $y:literal) => {{
            let (x, y) = ($v[$x], $v[$y]);
            $v[$x] = add(x, y);
            $v[$y] = sub(x, y);
        }};
    }
    for tile in a.chunks_exact_mut(256) {
        let mut v = load_tile(tile);
        dit!(v, 0, 1);
        dit!(v, 2, 3);
        dit!(v, 4, 5);
        dit!(v, 6, 7);
        dit!(v, 8, 9);
        dit!(v, 10, 11);
        dit!(v, 12, 13);
        dit!(v, 14, 15);
        dit!(v, table, 0, 2, 2);
        dit!(v, table, 1, 3, 3);
        dit!(v, table, 4, 6, 2);
        dit!(v, table, 5, 7, 3);
        dit!(v, table, 8, 10, 2);
        dit!(v, table, 9, 11, 3);
        dit!(v, table, 12, 14, 2);
        dit!(v, table, 13, 15, 3);
        dit!(v, table, 0, 4, 4);
        dit!(v, table, 1, 5, 5);
        dit!(v, table, 2, 6, 6);
        dit!(v, table, 3, 7, 7);
        dit!(v, table, 8, 12, 4);
        dit!(v, table, 9, 13, 5);
        dit!(v, table, 10, 14, 6);
        dit!(v, table, 11, 15, 7);
        dit!(v, table, 0, 8, 8);
        dit!(v, table, 1, 9, 9);
        dit!(v, table, 2, 10, 10);
        dit!(v, table, 3, 11, 11);
        dit!(v, table, 4, 12, 12);
        dit!(v, table, 5, 13, 13);
        dit!(v, table, 6, 14, 14);
        dit!(v, table, 7, 15, 15);
        transpose(&mut v);
        store_tile(tile, &v);
    }
}

#[target_feature(enable = "avx512f")]
unsafe fn forward_rec(a: &mut [u32], table: &[u32]) {
    let n = a.len();
    if n <= CACHE_BLOCK {
        let mut len = n / 2;
        while len >= 32 {
            dif_stage4(a, len / 2, table);
            len /= 4;
        }
        if len == 16 {
            dif_stage(a, 16, &table[16..32]);
        }
        dif_tail(a, table);
        return;
    }
    dif_stage4(a, n / 4, table);
    for quarter in a.chunks_exact_mut(n / 4) {
        forward_rec(quarter, table);
    }
}

#[target_feature(enable = "avx512f")]
unsafe fn inverse_rec(a: &mut [u32], table: &[u32]) {
    let n = a.len();
    if n <= CACHE_BLOCK {
        dit_head(a, table);
        let mut len = 16;
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

#[target_feature(enable = "avx512f")]
unsafe fn pointwise(a: &mut [u32], b: &[u32]) {
    for (x, y) in a.chunks_exact_mut(16).zip(b.chunks_exact(16)) {
        store(x, mul(load(x), load(y)));
    }
}

/// Safety: the CPU must support AVX-512F, `a.len()` must be a power of two of at
/// least [`MIN_LEN`], and `table` must hold the stage twiddles for that length.
pub unsafe fn forward(a: &mut [u32], table: &[u32]) {
    forward_rec(a, table)
}

/// Safety: as for [`forward`], with the inverse twiddle table.
pub unsafe fn inverse(a: &mut [u32], table: &[u32]) {
    inverse_rec(a, table)
}

/// Safety: the CPU must support AVX-512F and both slices must have the same
/// length, a multiple of 16.
pub unsafe fn pointwise_mul(a: &mut [u32], b: &[u32]) {
    pointwise(a, b)
}

/// First forward stage for an input whose upper half is zero, fused with bit
/// expansion: `lo[j] = one` and `hi[j] = w[j]` where bit `j` is set, zero elsewhere.
///
/// Safety: the CPU must support AVX-512F; `lo`, `hi` and `w` hold `64 * words.len()`
/// entries.
#[target_feature(enable = "avx512f")]
pub unsafe fn expand_first_stage(words: &[u64], lo: &mut [u32], hi: &mut [u32], w: &[u32], one: u32) {
    debug_assert!(lo.len() == 64 * words.len() && hi.len() == lo.len() && w.len() >= lo.len());
    let one = _mm512_set1_epi32(one as i32);
    for (k, (l, h)) in lo.chunks_exact_mut(16).zip(hi.chunks_exact_mut(16)).enumerate() {
        let mask = (words[k / 4] >> (16 * (k % 4))) as __mmask16;
        store(l, _mm512_maskz_mov_epi32(mask, one));
        store(h, _mm512_maskz_loadu_epi32(mask, w.as_ptr().add(16 * k) as *const i32));
    }
}
