//! Prefix-free codes for the accepting iteration index `L >= 1`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::bits::{BitReader, BitWriter};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LCoder {
    Huffman,
    EliasGamma,
}

impl std::str::FromStr for LCoder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "huffman" => Ok(LCoder::Huffman),
            "elias-gamma" | "elias" => Ok(LCoder::EliasGamma),
            _ => Err(Error::InvalidParameter(format!("unknown L coder `{s}`"))),
        }
    }
}

impl std::fmt::Display for LCoder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LCoder::Huffman => "huffman",
            LCoder::EliasGamma => "elias-gamma",
        })
    }
}

pub fn elias_gamma_encode(l: u64, out: &mut BitWriter) -> Result<()> {
    if l == 0 {
        return Err(Error::InvalidParameter("Elias gamma needs L >= 1".into()));
    }
    let bits = 64 - l.leading_zeros();
    for _ in 1..bits {
        out.push(false);
    }
    out.push_bits(l, bits);
    Ok(())
}

pub fn elias_gamma_decode(input: &mut BitReader<'_>) -> Result<u64> {
    let mut zeros = 0u32;
    while !input.read()? {
        zeros += 1;
        if zeros >= 64 {
            return Err(Error::Malformed("Elias gamma prefix too long".into()));
        }
    }
    Ok((1u64 << zeros) | input.read_bits(zeros)?)
}

pub fn elias_gamma_length(l: u64) -> u32 {
    2 * (63 - l.leading_zeros()) + 1
}

#[derive(Debug, PartialEq)]
struct Node {
    prob: f64,
    max_index: usize,
    id: usize,
}

impl Eq for Node {}

impl Ord for Node {
    // reversed so that BinaryHeap pops the smallest (prob, max_index)
    fn cmp(&self, other: &Self) -> Ordering {
        other.prob.total_cmp(&self.prob).then(other.max_index.cmp(&self.max_index))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Huffman code over `L = 1..=len`. Symbols with zero probability are left
/// out of the codebook.
#[derive(Debug, Clone)]
pub struct HuffmanCode {
    /// Parent of every node and whether it is the `1` child; leaves are `0..len`.
    parent: Vec<Option<(usize, bool)>>,
    children: Vec<[usize; 2]>,
    root: Option<usize>,
    lengths: Vec<Option<u32>>,
}

impl HuffmanCode {
    /// Builds the code by repeatedly merging the two least probable nodes;
    /// ties go to the node whose largest symbol index is smaller.
    pub fn new(probs: &[f64]) -> Result<Self> {
        let leaves = probs.len();
        let mut heap: BinaryHeap<Node> = probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(i, &p)| Node { prob: p, max_index: i, id: i })
            .collect();
        if heap.is_empty() {
            return Err(Error::InvalidParameter("Huffman code needs a positive probability".into()));
        }
        let mut parent = vec![None; leaves];
        let mut children = vec![[usize::MAX; 2]; leaves];
        while heap.len() > 1 {
            let a = heap.pop().expect("len > 1");
            let b = heap.pop().expect("len > 1");
            let id = parent.len();
            parent.push(None);
            children.push([a.id, b.id]);
            parent[a.id] = Some((id, false));
            parent[b.id] = Some((id, true));
            heap.push(Node { prob: a.prob + b.prob, max_index: a.max_index.max(b.max_index), id });
        }
        let root = heap.pop().expect("nonempty").id;
        let mut lengths = vec![None; leaves];
        for (i, len) in lengths.iter_mut().enumerate() {
            if probs[i] > 0.0 {
                let mut depth = 0;
                let mut node = i;
                while let Some((p, _)) = parent[node] {
                    depth += 1;
                    node = p;
                }
                *len = Some(depth);
            }
        }
        Ok(HuffmanCode { parent, children, root: Some(root), lengths })
    }

    /// Codeword length of `L` (1-based); `None` outside the codebook.
    pub fn length(&self, l: u64) -> Option<u32> {
        self.lengths.get((l as usize).checked_sub(1)?).copied().flatten()
    }

    /// `sum_L p(L) |code(L)|`.
    pub fn expected_length(&self, probs: &[f64]) -> f64 {
        probs
            .iter()
            .zip(&self.lengths)
            .filter_map(|(p, l)| l.map(|l| p * l as f64))
            .sum()
    }

    pub fn encode(&self, l: u64, out: &mut BitWriter) -> Result<()> {
        if self.length(l).is_none() {
            return Err(Error::InvalidParameter(format!("L = {l} has no Huffman codeword")));
        }
        let mut path = Vec::new();
        let mut node = l as usize - 1;
        while let Some((p, bit)) = self.parent[node] {
            path.push(bit);
            node = p;
        }
        for &bit in path.iter().rev() {
            out.push(bit);
        }
        Ok(())
    }

    pub fn decode(&self, input: &mut BitReader<'_>) -> Result<u64> {
        let mut node = self.root.expect("built with a root");
        while node >= self.lengths.len() {
            node = self.children[node][input.read()? as usize];
        }
        Ok(node as u64 + 1)
    }
}
