//! Runtime encoder and decoder.

pub mod bits;
mod codec;
pub mod prefix;
pub mod rng;
pub mod stream;

pub use codec::{decode, encode, Decoder, Encoder, SimulationResult};
