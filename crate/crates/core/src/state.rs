use std::fmt;

/// Depolarization pattern over `n` qubits: bit `i` set means qubit `i` has
/// been replaced by the maximally mixed state.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ErrorState {
    words: Vec<u64>,
    n: usize,
}

impl ErrorState {
    pub fn clean(n: usize) -> Self {
        Self { words: vec![0; n.div_ceil(64)], n }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut s = Self::clean(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                s.set(i);
            }
        }
        s
    }

    /// Little-endian index: bit `i` of `mask` is qubit `i`. Only for `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        let mut s = Self::clean(n);
        if n > 0 {
            s.words[0] = if n == 64 { mask } else { mask & ((1u64 << n) - 1) };
        }
        s
    }

    /// Inverse of [`ErrorState::from_mask`].
    pub fn to_mask(&self) -> u64 {
        assert!(self.n <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.n);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.n);
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    pub fn fill(&mut self) {
        for w in &mut self.words {
            *w = u64::MAX;
        }
        let tail = self.n & 63;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last = (1u64 << tail) - 1;
            }
        }
    }

    /// Number of depolarized qubits.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.n).map(move |i| self.get(i))
    }

    /// True when every qubit set in `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &ErrorState) -> bool {
        self.n == other.n && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// True when no qubit in `subset` is depolarized.
    pub fn is_clean_on(&self, subset: &QubitMask) -> bool {
        debug_assert_eq!(self.words.len(), subset.words.len());
        self.words.iter().zip(&subset.words).all(|(a, m)| a & m == 0)
    }
}

impl fmt::Debug for ErrorState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ErrorState(")?;
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        write!(f, ")")
    }
}

/// Precomputed word mask for a qubit subset, used for clean-event checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitMask {
    words: Vec<u64>,
}

impl QubitMask {
    pub fn new(n: usize, qubits: &[usize]) -> Self {
        let mut s = ErrorState::clean(n);
        for &q in qubits {
            s.set(q);
        }
        Self { words: s.words }
    }
}
