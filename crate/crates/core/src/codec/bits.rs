use crate::error::{Error, Result};

/// MSB-first bit sink.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitWriter {
    bytes: Vec<u8>,
    len: usize,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            let last = self.bytes.last_mut().expect("pushed above");
            *last |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    /// Writes the low `width` bits of `value`, most significant first.
    pub fn push_bits(&mut self, value: u64, width: u32) {
        for i in (0..width).rev() {
            self.push((value >> i) & 1 == 1);
        }
    }

    pub fn extend(&mut self, other: &BitWriter) {
        for i in 0..other.len {
            self.push(other.bit(i));
        }
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bytes[i / 8] & (0x80 >> (i % 8)) != 0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.bit(i))
    }

    /// Zero-padded bytes; the last byte may carry up to 7 padding bits.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }
}

/// MSB-first bit source over a byte slice with an explicit bit length.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    len: usize,
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bytes: &'a [u8], len: usize) -> Self {
        assert!(len <= bytes.len() * 8);
        BitReader { bytes, len, pos: 0 }
    }

    pub fn read(&mut self) -> Result<bool> {
        if self.pos >= self.len {
            return Err(Error::Malformed("bitstream ended early".into()));
        }
        let bit = self.bytes[self.pos / 8] & (0x80 >> (self.pos % 8)) != 0;
        self.pos += 1;
        Ok(bit)
    }

    pub fn read_bits(&mut self, width: u32) -> Result<u64> {
        let mut v = 0u64;
        for _ in 0..width {
            v = (v << 1) | self.read()? as u64;
        }
        Ok(v)
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.len - self.pos
    }
}
