//! Word-level helpers for neighborhoods stored as `u64` bitsets.

/// Mask with the low `n` bits set.
#[inline]
pub fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn is_strict_subset(a: u64, b: u64) -> bool {
    a & !b == 0 && a != b
}

/// Packs the bits of `word` selected by `keep` into the low positions,
/// preserving their relative order.
#[inline]
pub fn compress(word: u64, keep: u64) -> u64 {
    let mut out = 0u64;
    let mut k = keep;
    let mut pos = 0;
    while k != 0 {
        let bit = k.trailing_zeros();
        out |= ((word >> bit) & 1) << pos;
        pos += 1;
        k &= k - 1;
    }
    out
}

/// Iterator over the indices of set bits, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Ones(u64);

impl Iterator for Ones {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

#[inline]
pub fn ones(word: u64) -> Ones {
    Ones(word)
}

/// Builds a bitset from indices; indices must be below 64.
pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> u64 {
    indices.into_iter().fold(0, |acc, i| acc | (1u64 << i))
}

/// Reverses the low `width` bits, mapping bit `j` to bit `width - 1 - j`.
#[inline]
pub fn reverse_low(word: u64, width: usize) -> u64 {
    if width == 0 {
        0
    } else {
        word.reverse_bits() >> (64 - width)
    }
}
