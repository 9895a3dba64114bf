//! Word-packed fixed-length bit vector used as the storage for every dense set.

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

impl Bits {
    /// All-zero vector of `len` bits.
    pub fn zeros(len: usize) -> Self {
        Bits {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// All-one vector of `len` bits.
    pub fn ones(len: usize) -> Self {
        let mut bits = Bits {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        bits.clear_tail();
        bits
    }

    /// Panics unless `words` holds exactly enough words for `len` bits.
    pub fn from_words(len: usize, words: Vec<u64>) -> Self {
        assert_eq!(words.len(), words_for(len));
        let mut bits = Bits { len, words };
        bits.clear_tail();
        bits
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut bits = Bits::zeros(len);
        for i in indices {
            bits.set(i);
        }
        bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len && (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    /// Panics if `i` is out of range.
    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn any(&self) -> bool {
        self.words.iter().any(|&w| w != 0)
    }

    /// Index of the highest set bit.
    pub fn last_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * WORD + (WORD - 1 - w.leading_zeros() as usize))
    }

    pub fn iter_ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Resize to `len` bits, dropping bits at positions `>= len`.
    pub fn resize(&mut self, len: usize) {
        self.words.resize(words_for(len), 0);
        self.len = len;
        self.clear_tail();
    }

    pub fn truncated(&self, len: usize) -> Self {
        let mut out = Bits {
            len,
            words: self.words[..words_for(len).min(self.words.len())].to_vec(),
        };
        out.resize(len);
        out
    }

    pub fn union_with(&mut self, other: &Bits) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
        self.clear_tail();
    }

    pub fn is_subset_of(&self, other: &Bits) -> bool {
        self.words.iter().enumerate().all(|(k, &w)| {
            let o = other.words.get(k).copied().unwrap_or(0);
            w & !o == 0
        })
    }

    /// `self |= src << shift`, keeping only bits below `self.len()`.
    pub fn or_shifted(&mut self, src: &Bits, shift: usize) {
        let q = shift / WORD;
        let r = shift % WORD;
        let n = self.words.len();
        for k in q..n {
            let lo = k - q;
            let mut w = src.words.get(lo).copied().unwrap_or(0) << r;
            if r != 0 && lo >= 1 {
                w |= src.words.get(lo - 1).copied().unwrap_or(0) >> (WORD - r);
            }
            self.words[k] |= w;
        }
        self.clear_tail();
    }

    /// `self |= self << shift` in place (the reachability step of the subset-sum DP).
    pub fn or_shift_self(&mut self, shift: usize) {
        if shift == 0 {
            return;
        }
        let q = shift / WORD;
        let r = shift % WORD;
        let n = self.words.len();
        // Descending order: words below `k` are still unmodified when `k` is written.
        for k in (q..n).rev() {
            let lo = k - q;
            let mut w = self.words[lo] << r;
            if r != 0 && lo >= 1 {
                w |= self.words[lo - 1] >> (WORD - r);
            }
            self.words[k] |= w;
        }
        self.clear_tail();
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter_ones()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
        let tz = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.index * WORD + tz)
    }
}
