use crate::gf::{FieldVector, Modulus, Permutation};

/// SplitMix64 generator shared by encoder and decoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyncRng {
    state: u64,
}

impl SyncRng {
    pub fn new(seed: u64) -> Self {
        SyncRng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `0..bound`, rejecting the low `2^64 mod bound`
    /// outputs so every residue is equally likely.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % bound;
            }
        }
    }

    /// Fisher-Yates: for `i = n-1 down to 1`, swap `i` with `below(i + 1)`.
    pub fn permutation(&mut self, n: usize) -> Permutation {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.below(i as u64 + 1) as usize;
            perm.swap(i, j);
        }
        Permutation::new(perm).expect("shuffled identity")
    }

    pub fn symbols(&mut self, q: Modulus, len: usize) -> FieldVector {
        let entries = (0..len).map(|_| self.below(q.order() as u64) as u8).collect();
        FieldVector::new(q, entries).expect("symbols below q")
    }

    /// The per-iteration draw: a permutation of `n` coordinates, then
    /// `redundancy` offset symbols.
    pub fn draw_common_randomness(&mut self, n: usize, redundancy: usize, q: Modulus) -> (Permutation, FieldVector) {
        let perm = self.permutation(n);
        let offset = self.symbols(q, redundancy);
        (perm, offset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_outputs() {
        // published SplitMix64 outputs for seed 0
        let mut r = SyncRng::new(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(r.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn frozen_first_draw() {
        let mut r = SyncRng::new(0);
        let (p, b) = r.draw_common_randomness(4, 2, Modulus::BINARY);
        assert_eq!(p.as_slice(), FROZEN_PERM);
        assert_eq!(b.entries(), FROZEN_OFFSET);
    }

    // computed once with an independent implementation of the same procedure
    const FROZEN_PERM: &[usize] = &[2, 1, 0, 3];
    const FROZEN_OFFSET: &[u8] = &[0, 1];

    #[test]
    fn degenerate_draws() {
        let mut r = SyncRng::new(9);
        assert!(r.permutation(1).is_identity());
        assert!(r.symbols(Modulus::BINARY, 0).is_empty());
        for _ in 0..1000 {
            assert!(r.below(3) < 3);
        }
    }
}
