//! Number-theoretic transform over the prime field `p = 15 * 2^27 + 1`.
//!
//! Values are kept in Montgomery form (`R = 2^32`). The forward transform is a
//! decimation-in-frequency pass that leaves its output in permuted (bit-reversed)
//! order; the inverse is a decimation-in-time pass that consumes that order. A
//! pointwise product in between therefore needs no permutation. The inverse is not
//! scaled by `1/N`: callers only test coefficients for zero.
//!
//! On x86 with AVX2 or AVX-512F the transforms dispatch to vector kernels at runtime.

#[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
mod avx2;
#[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
mod avx512;

use std::cell::RefCell;
use std::rc::Rc;

pub const MODULUS: u32 = 2_013_265_921;
/// `2^MAX_LOG_LEN` divides `MODULUS - 1`.
pub const MAX_LOG_LEN: u32 = 27;
const GENERATOR: u32 = 31;

const fn neg_inverse_mod_word(p: u32) -> u32 {
    // Newton iteration: each step doubles the number of correct low bits.
    let mut inv: u32 = p;
    let mut i = 0;
    while i < 5 {
        inv = inv.wrapping_mul(2u32.wrapping_sub(p.wrapping_mul(inv)));
        i += 1;
    }
    inv.wrapping_neg()
}

const NEG_INV: u32 = neg_inverse_mod_word(MODULUS);
const R2: u32 = ((1u128 << 64) % MODULUS as u128) as u32;

#[inline(always)]
fn reduce(t: u64) -> u32 {
    let m = (t as u32).wrapping_mul(NEG_INV);
    let r = ((t + m as u64 * MODULUS as u64) >> 32) as u32;
    if r >= MODULUS {
        r - MODULUS
    } else {
        r
    }
}

#[inline(always)]
pub fn mul(a: u32, b: u32) -> u32 {
    reduce(a as u64 * b as u64)
}

#[inline(always)]
fn add(a: u32, b: u32) -> u32 {
    let s = a + b;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

#[inline(always)]
fn sub(a: u32, b: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + MODULUS - b
    }
}

#[inline]
pub fn to_mont(x: u32) -> u32 {
    mul(x % MODULUS, R2)
}

#[inline]
pub fn from_mont(x: u32) -> u32 {
    reduce(x as u64)
}

pub fn pow(mut base: u32, mut exp: u64) -> u32 {
    let mut acc = to_mont(1);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

/// Twiddle factors for every stage of a length-`n` transform.
///
/// Entry `len + j` holds `w^j` for `j < len`, where `w` is a primitive `2 len`-th
/// root of unity (or its inverse).
pub struct Twiddles {
    len: usize,
    forward: Vec<u32>,
    inverse: Vec<u32>,
}

impl Twiddles {
    pub fn new(n: usize) -> Twiddles {
        assert!(n.is_power_of_two() && n.trailing_zeros() <= MAX_LOG_LEN);
        let root = pow(to_mont(GENERATOR), (MODULUS as u64 - 1) / n as u64);
        let root_inv = pow(root, MODULUS as u64 - 2);
        Twiddles {
            len: n,
            forward: stage_table(n, root),
            inverse: stage_table(n, root_inv),
        }
    }
}

fn stage_table(n: usize, root: u32) -> Vec<u32> {
    let mut table = vec![0u32; n.max(2)];
    let half = n / 2;
    if half == 0 {
        return table;
    }
    let mut w = to_mont(1);
    for j in 0..half {
        table[half + j] = w;
        w = mul(w, root);
    }
    let mut len = half / 2;
    while len >= 1 {
        for j in 0..len {
            table[len + j] = table[2 * len + 2 * j];
        }
        len /= 2;
    }
    table
}

/// Sub-transforms at or below this length run all their stages in cache.
const CACHE_BLOCK: usize = 1 << 15;

#[inline(always)]
fn dif_stage(a: &mut [u32], len: usize, w: &[u32]) {
    for block in a.chunks_exact_mut(2 * len) {
        let (lo, hi) = block.split_at_mut(len);
        for ((x, y), &t) in lo.iter_mut().zip(hi.iter_mut()).zip(w) {
            let (u, v) = (*x, *y);
            *x = add(u, v);
            *y = mul(sub(u, v), t);
        }
    }
}

#[inline(always)]
fn dit_stage(a: &mut [u32], len: usize, w: &[u32]) {
    for block in a.chunks_exact_mut(2 * len) {
        let (lo, hi) = block.split_at_mut(len);
        for ((x, y), &t) in lo.iter_mut().zip(hi.iter_mut()).zip(w) {
            let u = *x;
            let v = mul(*y, t);
            *x = add(u, v);
            *y = sub(u, v);
        }
    }
}

/// A forward/inverse pair from one kernel set; the sets use different
/// frequency-domain layouts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kernel {
    Scalar,
    #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
    Avx2,
    #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
    Avx512,
}

impl Kernel {
    /// Fastest kernel set available for length `n` on this CPU.
    fn select(n: usize) -> Kernel {
        #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
        {
            let avx2 = is_x86_feature_detected!("avx2");
            if n >= avx512::MIN_LEN && avx2 && is_x86_feature_detected!("avx512f") {
                return Kernel::Avx512;
            }
            if n >= avx2::MIN_LEN && avx2 {
                return Kernel::Avx2;
            }
        }
        let _ = n;
        Kernel::Scalar
    }

    fn forward(self, a: &mut [u32], tw: &Twiddles) {
        let n = a.len();
        assert!(n.is_power_of_two() && n <= tw.len);
        match self {
            Kernel::Scalar => forward_rec(a, &tw.forward),
            // SAFETY: `select` checked the CPU feature and the minimum length.
            #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
            Kernel::Avx2 => unsafe { avx2::forward(a, &tw.forward) },
            #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
            Kernel::Avx512 => unsafe { avx512::forward(a, &tw.forward) },
        }
    }

    fn inverse(self, a: &mut [u32], tw: &Twiddles) {
        let n = a.len();
        assert!(n.is_power_of_two() && n <= tw.len);
        match self {
            Kernel::Scalar => inverse_rec(a, &tw.inverse),
            // SAFETY: as in `forward`.
            #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
            Kernel::Avx2 => unsafe { avx2::inverse(a, &tw.inverse) },
            #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
            Kernel::Avx512 => unsafe { avx512::inverse(a, &tw.inverse) },
        }
    }

    fn pointwise_mul(self, a: &mut [u32], b: &[u32]) {
        assert_eq!(a.len(), b.len());
        match self {
            Kernel::Scalar => {
                for (x, &y) in a.iter_mut().zip(b) {
                    *x = mul(*x, y);
                }
            }
            // SAFETY: the feature is present and the length is a multiple of the vector width.
            #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
            Kernel::Avx2 => unsafe { avx2::pointwise_mul(a, b) },
            #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
            Kernel::Avx512 => unsafe { avx512::pointwise_mul(a, b) },
        }
    }

    /// Expands `words` (the low half of a length-`2 * lo.len()` input) and applies
    /// the first forward stage, whose upper inputs are all zero.
    fn expand_first_stage(self, words: &[u64], lo: &mut [u32], hi: &mut [u32], w: &[u32], one: u32) {
        match self {
            Kernel::Scalar => {
                for (j, (l, h)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                    let set = (words[j / 64] >> (j % 64)) & 1 == 1;
                    *l = if set { one } else { 0 };
                    *h = if set { w[j] } else { 0 };
                }
            }
            // SAFETY: the feature is present and all slices hold 64 entries per word.
            #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
            Kernel::Avx2 => unsafe { avx2::expand_first_stage(words, lo, hi, w, one) },
            #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
            Kernel::Avx512 => unsafe { avx512::expand_first_stage(words, lo, hi, w, one) },
        }
    }
}

fn forward_rec(a: &mut [u32], table: &[u32]) {
    let n = a.len();
    if n <= CACHE_BLOCK {
        let mut len = n / 2;
        while len >= 1 {
            dif_stage(a, len, &table[len..2 * len]);
            len /= 2;
        }
        return;
    }
    let half = n / 2;
    dif_stage(a, half, &table[half..n]);
    let (lo, hi) = a.split_at_mut(half);
    forward_rec(lo, table);
    forward_rec(hi, table);
}

fn inverse_rec(a: &mut [u32], table: &[u32]) {
    let n = a.len();
    if n <= CACHE_BLOCK {
        let mut len = 1;
        while len < n {
            dit_stage(a, len, &table[len..2 * len]);
            len *= 2;
        }
        return;
    }
    let half = n / 2;
    {
        let (lo, hi) = a.split_at_mut(half);
        inverse_rec(lo, table);
        inverse_rec(hi, table);
    }
    dit_stage(a, half, &table[half..n]);
}

thread_local! {
    static TWIDDLES: RefCell<Rc<Twiddles>> = RefCell::new(Rc::new(Twiddles::new(1)));
}

/// Twiddles covering length `n`. Stage tables do not depend on the overall
/// length, so one table per thread is grown on demand and shared by all sizes.
fn twiddles_for(n: usize) -> Rc<Twiddles> {
    TWIDDLES.with(|cell| {
        let mut current = cell.borrow_mut();
        if current.len < n {
            *current = Rc::new(Twiddles::new(n));
        }
        Rc::clone(&current)
    })
}

/// Cyclic convolution of two equal-length power-of-two vectors in Montgomery
/// form, scaled by `n`. The result overwrites `a`.
pub fn cyclic_convolve(a: &mut [u32], b: &mut [u32]) {
    convolve_with(Kernel::select(a.len()), a, b);
}

fn convolve_with(kernel: Kernel, a: &mut [u32], b: &mut [u32]) {
    assert_eq!(a.len(), b.len());
    let tw = twiddles_for(a.len());
    kernel.forward(a, &tw);
    kernel.forward(b, &tw);
    kernel.pointwise_mul(a, b);
    kernel.inverse(a, &tw);
}

thread_local! {
    static SCRATCH: RefCell<(Vec<u32>, Vec<u32>)> = const { RefCell::new((Vec::new(), Vec::new())) };
}

/// Low `bits` bits of `words`, zero-extended to `64 * count` bits.
fn masked_words(words: &[u64], bits: usize, count: usize) -> Vec<u64> {
    let mut out = vec![0u64; count];
    let full = (bits / 64).min(words.len()).min(count);
    out[..full].copy_from_slice(&words[..full]);
    if full < count && full < words.len() && !bits.is_multiple_of(64) {
        out[full] = words[full] & ((1u64 << (bits % 64)) - 1);
    }
    out
}

fn expand_bits(words: &[u64], out: &mut [u32], one: u32) {
    #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
    if out.len() >= avx2::MIN_LEN && is_x86_feature_detected!("avx2") {
        // SAFETY: AVX2 is present; `out` holds 64 entries per word.
        unsafe { avx2::expand_bits(words, out, one) };
        return;
    }
    for (k, x) in out.iter_mut().enumerate() {
        *x = if (words[k / 64] >> (k % 64)) & 1 == 1 { one } else { 0 };
    }
}

fn nonzero_words(coeffs: &[u32], out: &mut Vec<u64>) {
    #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
    if coeffs.len() >= avx2::MIN_LEN && is_x86_feature_detected!("avx2") {
        // SAFETY: AVX2 is present; the length is a power of two >= 64.
        unsafe { avx2::nonzero_words(coeffs, out) };
        return;
    }
    for chunk in coeffs.chunks(64) {
        let word = chunk
            .iter()
            .enumerate()
            .fold(0u64, |w, (bit, &c)| w | ((c != 0) as u64) << bit);
        out.push(word);
    }
}

/// Loads the low `bits` bits of `words` as a 0/1 vector of length `out.len()` and
/// transforms it forward.
fn load_forward(kernel: Kernel, words: &[u64], bits: usize, out: &mut [u32], tw: &Twiddles) {
    let n = out.len();
    let one = to_mont(1);
    let half = n / 2;
    if bits <= half && half.is_multiple_of(64) && (kernel == Kernel::Scalar || Kernel::select(half) == kernel) {
        let (lo, hi) = out.split_at_mut(half);
        kernel.expand_first_stage(&masked_words(words, bits, half / 64), lo, hi, &tw.forward[half..n], one);
        kernel.forward(lo, tw);
        kernel.forward(hi, tw);
    } else {
        expand_bits(&masked_words(words, bits, n.div_ceil(64)), out, one);
        kernel.forward(out, tw);
    }
}

/// Support of the length-`n` cyclic product of two 0/1 vectors given as packed
/// bits, where only the low `a_bits` and `b_bits` bits of the inputs are used.
/// Returns packed bits for the first `out_bits` positions.
pub fn support_product(a: &[u64], a_bits: usize, b: &[u64], b_bits: usize, n: usize, out_bits: usize) -> Vec<u64> {
    support_product_with(Kernel::select(n), a, a_bits, b, b_bits, n, out_bits)
}

fn support_product_with(
    kernel: Kernel,
    a: &[u64],
    a_bits: usize,
    b: &[u64],
    b_bits: usize,
    n: usize,
    out_bits: usize,
) -> Vec<u64> {
    assert!(n.is_power_of_two() && out_bits <= n);
    let tw = twiddles_for(n);
    let words = n.div_ceil(64);
    SCRATCH.with(|cell| {
        let mut scratch = cell.borrow_mut();
        let (fa, fb) = &mut *scratch;
        fa.resize(words * 64, 0);
        fb.resize(words * 64, 0);
        let (fa, fb) = (&mut fa[..n], &mut fb[..n]);
        load_forward(kernel, a, a_bits, fa, &tw);
        load_forward(kernel, b, b_bits, fb, &tw);
        kernel.pointwise_mul(fa, fb);
        kernel.inverse(fa, &tw);

        let mut out = Vec::with_capacity(words);
        nonzero_words(fa, &mut out);
        out.truncate(out_bits.div_ceil(64));
        if !out_bits.is_multiple_of(64) {
            if let Some(last) = out.last_mut() {
                *last &= (1u64 << (out_bits % 64)) - 1;
            }
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_constants() {
        assert_eq!((MODULUS - 1) % (1 << MAX_LOG_LEN), 0);
        assert_eq!(MODULUS.wrapping_mul(NEG_INV.wrapping_neg()), 1);
        assert_eq!(from_mont(to_mont(12345)), 12345);
        assert_eq!(from_mont(mul(to_mont(MODULUS - 1), to_mont(MODULUS - 1))), 1);
        // 31 generates the full multiplicative group: its (p-1)/2 power is -1.
        let half = pow(to_mont(GENERATOR), (MODULUS as u64 - 1) / 2);
        assert_eq!(from_mont(half), MODULUS - 1);
        for q in [3u64, 5] {
            assert_ne!(from_mont(pow(to_mont(GENERATOR), (MODULUS as u64 - 1) / q)), 1);
        }
    }

    fn naive_cyclic(a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = a.len();
        let mut out = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                out[(i + j) % n] = (out[(i + j) % n] + a[i] as u64 * b[j] as u64) % MODULUS as u64;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    #[test]
    fn convolution_matches_schoolbook() {
        for log in 0..8 {
            let n = 1usize << log;
            let a: Vec<u32> = (0..n).map(|i| (i as u32 * 7 + 3) % 11).collect();
            let b: Vec<u32> = (0..n).map(|i| (i as u32 * 5 + 1) % 13).collect();
            let expect: Vec<u32> = naive_cyclic(&a, &b)
                .into_iter()
                .map(|x| (x as u64 * n as u64 % MODULUS as u64) as u32)
                .collect();
            let mut am: Vec<u32> = a.iter().map(|&x| to_mont(x)).collect();
            let mut bm: Vec<u32> = b.iter().map(|&x| to_mont(x)).collect();
            cyclic_convolve(&mut am, &mut bm);
            let got: Vec<u32> = am.into_iter().map(from_mont).collect();
            assert_eq!(got, expect, "n = {n}");
        }
    }

    fn available_kernels(n: usize) -> Vec<Kernel> {
        let mut kernels = vec![Kernel::Scalar];
        #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
        {
            if n >= avx2::MIN_LEN && is_x86_feature_detected!("avx2") {
                kernels.push(Kernel::Avx2);
                if n >= avx512::MIN_LEN && is_x86_feature_detected!("avx512f") {
                    kernels.push(Kernel::Avx512);
                }
            }
        }
        kernels
    }

    /// Sparse inputs at lengths beyond the cache block, checked against a direct
    /// product over the nonzero positions.
    #[test]
    fn every_kernel_matches_sparse_oracle() {
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = move |bound: usize| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % bound as u64) as usize
        };
        for log in [6, 8, 9, 12, 15, 16, 17, 18] {
            let n = 1usize << log;
            let mut a = vec![0u32; n];
            let mut b = vec![0u32; n];
            for _ in 0..40 {
                a[next(n)] = next(1000) as u32 + 1;
                b[next(n)] = next(1000) as u32 + 1;
            }
            let mut expect = vec![0u64; n];
            for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
                for (j, &y) in b.iter().enumerate().filter(|(_, &y)| y != 0) {
                    let k = (i + j) % n;
                    expect[k] = (expect[k] + x as u64 * y as u64 * n as u64) % MODULUS as u64;
                }
            }
            for kernel in available_kernels(n) {
                let mut am: Vec<u32> = a.iter().map(|&x| to_mont(x)).collect();
                let mut bm: Vec<u32> = b.iter().map(|&x| to_mont(x)).collect();
                convolve_with(kernel, &mut am, &mut bm);
                let got: Vec<u64> = am.into_iter().map(|x| from_mont(x) as u64).collect();
                assert!(got == expect, "kernel {kernel:?}, n = {n}");
            }
        }
    }

    #[test]
    fn every_kernel_computes_supports() {
        let mut state = 0x2545_f491_4f6c_dd1du64;
        let mut word = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for log in [3, 6, 9, 10, 12, 14] {
            let n = 1usize << log;
            // Bit lengths on both sides of n / 2 cover the fused and plain load paths.
            for (a_bits, b_bits) in [(n / 2, n / 2), (n / 4, 3 * n / 4), (n / 2 + 1, n / 2 - 1)] {
                let a: Vec<u64> = (0..n.div_ceil(64)).map(|_| word() & word()).collect();
                let b: Vec<u64> = (0..n.div_ceil(64)).map(|_| word() & word() & word()).collect();
                let bit = |w: &[u64], i: usize| (w[i / 64] >> (i % 64)) & 1 == 1;
                let mut expect = vec![false; n];
                for i in (0..a_bits).filter(|&i| bit(&a, i)) {
                    for j in (0..b_bits).filter(|&j| bit(&b, j)) {
                        expect[(i + j) % n] = true;
                    }
                }
                for kernel in available_kernels(n) {
                    let got = support_product_with(kernel, &a, a_bits, &b, b_bits, n, n);
                    let got: Vec<bool> = (0..n).map(|i| bit(&got, i)).collect();
                    assert!(got == expect, "kernel {kernel:?}, n = {n}, bits = {a_bits}/{b_bits}");
                }
            }
        }
    }
}
