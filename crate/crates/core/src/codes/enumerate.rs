//! Brute-force coset enumeration over a standard-form matrix `[H~ | I]`.

use std::collections::HashMap;

use num_bigint::BigUint;
use rand::Rng;

use super::typeset::{TypeSet, TypeSetDistribution};
use crate::gf::{EmpiricalType, FieldVector, Modulus, ParityCheckMatrix, TypeSpace};

pub(crate) struct PlainTables {
    /// Type-set id for every syndrome rank.
    pub table: Vec<u32>,
    pub distribution: TypeSetDistribution,
}

/// Calls `f` on every `w = [u | s - u H~^T]`, i.e. every word of the
/// standard-form coset with syndrome `s`.
pub(crate) fn for_each_coset_member(std: &ParityCheckMatrix, s: &FieldVector, mut f: impl FnMut(&[u8])) {
    let q = std.modulus();
    let (n, k) = (std.n(), std.k());
    let m = n - k;
    let info = std.info_block();
    let mut w = vec![0u8; n];
    w[k..].copy_from_slice(s.entries());
    loop {
        f(&w);
        // odometer step on u, updating the check part by the delta
        let mut j = 0;
        loop {
            if j == k {
                return;
            }
            let old = w[j];
            let new = if old + 1 == q.get() { 0 } else { old + 1 };
            w[j] = new;
            let delta = q.sub(new, old);
            for i in 0..m {
                let h = info[i][j];
                if h != 0 {
                    w[k + i] = q.sub(w[k + i], q.mul(delta, h));
                }
            }
            if new != 0 {
                break;
            }
            j += 1;
        }
    }
}

/// Uniform coset member of the given binary type via Gray-code enumeration.
/// `None` when the fast path does not apply.
pub(crate) fn sample_binary_coset<R: Rng + ?Sized>(
    std: &ParityCheckMatrix,
    s: &FieldVector,
    p: &EmpiricalType,
    rng: &mut R,
) -> Option<Option<Vec<u8>>> {
    let (n, k) = (std.n(), std.k());
    let m = n - k;
    if std.modulus() != Modulus::BINARY || n > 64 || k > 26 {
        return None;
    }
    let info = std.info_block();
    let cols: Vec<u64> = (0..k)
        .map(|j| (0..m).fold(0u64, |acc, i| acc | ((info[i][j] as u64) << i)))
        .collect();
    let s_mask = s.entries().iter().enumerate().fold(0u64, |acc, (i, &e)| acc | ((e as u64) << i));
    let weight = p.weight();
    let walk = |mut f: Box<dyn FnMut(u64, u64) -> bool + '_>| {
        let (mut u, mut c) = (0u64, s_mask);
        if f(u, c) {
            return;
        }
        for step in 1u64..(1u64 << k) {
            let j = step.trailing_zeros() as usize;
            u ^= 1 << j;
            c ^= cols[j];
            if f(u, c) {
                return;
            }
        }
    };
    let mut total = 0u64;
    walk(Box::new(|u, c| {
        total += ((u.count_ones() + c.count_ones()) == weight) as u64;
        false
    }));
    if total == 0 {
        return Some(None);
    }
    let mut target = rng.gen_range(0..total);
    let mut chosen = (0, 0);
    walk(Box::new(|u, c| {
        if u.count_ones() + c.count_ones() == weight {
            if target == 0 {
                chosen = (u, c);
                return true;
            }
            target -= 1;
        }
        false
    }));
    let (u, c) = chosen;
    let mut w = Vec::with_capacity(n);
    w.extend((0..k).map(|j| ((u >> j) & 1) as u8));
    w.extend((0..m).map(|i| ((c >> i) & 1) as u8));
    Some(Some(w))
}

pub(crate) fn plain_tables(std: &ParityCheckMatrix, space: &TypeSpace) -> PlainTables {
    if std.modulus() == Modulus::BINARY && std.n() <= 64 && std.redundancy() < 32 {
        binary_tables(std)
    } else {
        generic_tables(std, space)
    }
}

fn binary_tables(std: &ParityCheckMatrix) -> PlainTables {
    let (n, k) = (std.n(), std.k());
    let m = n - k;
    let info = std.info_block();
    // column j of H~ packed as a syndrome bitmask
    let cols: Vec<u64> = (0..k)
        .map(|j| (0..m).fold(0u64, |acc, i| acc | ((info[i][j] as u64) << i)))
        .collect();
    let size = 1usize << m;
    let mut masks = vec![0u128; size];
    // Gray-code walk over u keeps c = u H~^T in one xor per step
    let mut c = 0u64;
    let mut u = 0u64;
    let total_u = 1u64 << k;
    for step in 0..total_u {
        if step > 0 {
            let bit = step.trailing_zeros() as usize;
            u ^= 1 << bit;
            c ^= cols[bit];
        }
        let wu = u.count_ones();
        for v in 0..size as u64 {
            let s = (v ^ c) as usize;
            masks[s] |= 1u128 << (wu + v.count_ones());
        }
    }
    let mut by_mask: HashMap<u128, u64> = HashMap::new();
    for &mask in &masks {
        *by_mask.entry(mask).or_default() += 1;
    }
    let set_of = |mask: u128| {
        TypeSet::new((0..=n as u32).filter(|w| mask >> w & 1 == 1).map(|w| EmpiricalType::binary(n as u32, w)).collect())
    };
    let distribution = TypeSetDistribution::from_counts(
        n as u32,
        Modulus::BINARY,
        by_mask.iter().map(|(&mask, &c)| (set_of(mask), BigUint::from(c))),
    );
    let ids: HashMap<u128, u32> = by_mask
        .keys()
        .map(|&mask| (mask, distribution.position(&set_of(mask)).expect("present") as u32))
        .collect();
    let table = masks.iter().map(|m| ids[m]).collect();
    PlainTables { table, distribution }
}

fn generic_tables(std: &ParityCheckMatrix, space: &TypeSpace) -> PlainTables {
    let q = std.modulus();
    let (n, k) = (std.n(), std.k());
    let m = n - k;
    let qn = q.order() as u64;
    let num_syn = qn.pow(m as u32) as usize;
    let words = 64usize;
    let blocks = space.len().div_ceil(words);
    let mut bits = vec![0u64; num_syn * blocks];

    let info = std.info_block();
    let qs = q.get() as usize;
    let mut counts = vec![0u32; qs];
    for urank in 0..qn.pow(k as u32) {
        let u = FieldVector::from_rank(q, k, urank);
        let c: Vec<u8> = info
            .iter()
            .map(|row| row.iter().zip(u.entries()).fold(0u8, |acc, (&h, &x)| q.add(acc, q.mul(h, x))))
            .collect();
        let mut v = vec![0u8; m];
        for _ in 0..num_syn {
            counts.iter_mut().for_each(|x| *x = 0);
            for &e in u.entries().iter().chain(v.iter()) {
                counts[e as usize] += 1;
            }
            let t = space.index_of_counts(&counts);
            // syndrome of [u | v] is v + u H~^T
            let srank = v.iter().zip(&c).rev().fold(0u64, |acc, (&a, &b)| acc * qn + q.add(a, b) as u64) as usize;
            bits[srank * blocks + t / words] |= 1 << (t % words);
            for d in v.iter_mut() {
                *d = if *d + 1 == q.get() { 0 } else { *d + 1 };
                if *d != 0 {
                    break;
                }
            }
        }
    }
    let mut by_key: HashMap<&[u64], u64> = HashMap::new();
    for chunk in bits.chunks(blocks) {
        *by_key.entry(chunk).or_default() += 1;
    }
    let set_of = |key: &[u64]| {
        TypeSet::new(
            (0..space.len())
                .filter(|t| key[t / words] >> (t % words) & 1 == 1)
                .map(|t| space.get(t).clone())
                .collect(),
        )
    };
    let distribution =
        TypeSetDistribution::from_counts(n as u32, q, by_key.iter().map(|(key, &c)| (set_of(key), BigUint::from(c))));
    let ids: HashMap<&[u64], u32> = by_key
        .keys()
        .map(|&key| (key, distribution.position(&set_of(key)).expect("present") as u32))
        .collect();
    let table = bits.chunks(blocks).map(|chunk| ids[chunk]).collect();
    PlainTables { table, distribution }
}
