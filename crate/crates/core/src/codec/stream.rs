//! File formats: input data as consecutive `n`-symbol blocks, and message
//! files holding the concatenated bitstream plus a one-byte pad trailer.

use super::bits::{BitReader, BitWriter};
use super::codec::{Decoder, Encoder};
use super::prefix::LCoder;
use crate::error::{Error, Result};
use crate::gf::{FieldVector, Modulus};
use crate::planner::PlanSource;
use crate::scalar::Scalar;

/// Splits `data` into blocks of `n` symbols of `ceil(log2 q)` bits each,
/// MSB-first. A trailing partial block is zero-padded.
pub fn unpack_blocks(data: &[u8], n: usize, q: Modulus) -> Result<Vec<FieldVector>> {
    let width = q.symbol_bits();
    let total = data.len() * 8;
    let block_bits = n * width as usize;
    let blocks = total.div_ceil(block_bits);
    let mut reader = BitReader::new(data, total);
    let mut out = Vec::with_capacity(blocks);
    for _ in 0..blocks {
        let mut entries = Vec::with_capacity(n);
        for _ in 0..n {
            let take = (width as usize).min(reader.remaining());
            let sym = (reader.read_bits(take as u32)? << (width as usize - take)) as u32;
            entries.push(q.check(sym)?);
        }
        out.push(FieldVector::new(q, entries)?);
    }
    Ok(out)
}

/// Inverse of [`unpack_blocks`], zero-padded to a byte boundary.
pub fn pack_blocks(blocks: &[FieldVector]) -> Vec<u8> {
    let mut w = BitWriter::new();
    for b in blocks {
        let width = b.modulus().symbol_bits();
        for &e in b.entries() {
            w.push_bits(e as u64, width);
        }
    }
    w.into_bytes()
}

/// Bitstream bytes followed by the number of padding bits in the last byte.
pub fn to_message_file(bits: &BitWriter) -> Vec<u8> {
    let pad = (8 - bits.len() % 8) % 8;
    let mut out = bits.as_bytes().to_vec();
    out.push(pad as u8);
    out
}

/// Splits a message file into its bytes and exact bit length.
pub fn from_message_file(file: &[u8]) -> Result<(&[u8], usize)> {
    let (&pad, body) = file.split_last().ok_or_else(|| Error::Malformed("empty message file".into()))?;
    if pad > 7 || (pad > 0 && body.is_empty()) {
        return Err(Error::Malformed(format!("bad pad length {pad}")));
    }
    Ok((body, body.len() * 8 - pad as usize))
}

/// Encoded stream together with the simulated channel outputs.
#[derive(Debug, Clone)]
pub struct EncodedStream {
    pub file: Vec<u8>,
    pub outputs: Vec<FieldVector>,
    pub iterations: Vec<u64>,
}

pub fn encode_stream<T: Scalar, P: PlanSource<T> + ?Sized>(
    plan: &P,
    seed: u64,
    coder: LCoder,
    data: &[u8],
) -> Result<EncodedStream> {
    let code = plan.codes().first().ok_or_else(|| Error::PlanMismatch("plan has no codes".into()))?;
    let blocks = unpack_blocks(data, code.n(), code.q())?;
    let mut enc = Encoder::new(plan, seed, coder)?;
    let mut bits = BitWriter::new();
    let mut outputs = Vec::with_capacity(blocks.len());
    let mut iterations = Vec::with_capacity(blocks.len());
    for x in &blocks {
        let r = enc.encode(x)?;
        bits.extend(&r.message);
        outputs.push(r.y_hat);
        iterations.push(r.l);
    }
    Ok(EncodedStream { file: to_message_file(&bits), outputs, iterations })
}

/// Decodes every message in a message file.
pub fn decode_stream<T: Scalar, P: PlanSource<T> + ?Sized>(
    plan: &P,
    seed: u64,
    coder: LCoder,
    file: &[u8],
) -> Result<Vec<FieldVector>> {
    let (body, len) = from_message_file(file)?;
    let mut reader = BitReader::new(body, len);
    let mut dec = Decoder::new(plan, seed, coder)?;
    let mut out = Vec::new();
    while reader.remaining() > 0 {
        let before = reader.position();
        out.push(dec.decode(&mut reader)?);
        if reader.position() == before {
            return Err(Error::Malformed("zero-length messages cannot be delimited".into()));
        }
    }
    Ok(out)
}
