#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use grsse_core::codes::{LinearCode, TypeSet};
use grsse_core::gf::{type_class_size, EmpiricalType, FieldVector, ParityCheckMatrix};
use grsse_core::planner::KappaPlan;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

pub fn eta() -> f64 {
    (1.0 + (-1.0f64).exp()) * std::f64::consts::E.log2()
}

/// `[6, 3, 3]` code with generator `[I | P]`, `P` = all-ones minus identity.
pub fn code_633() -> LinearCode {
    let h = ParityCheckMatrix::new(
        grsse_core::gf::Modulus::BINARY,
        6,
        vec![vec![0, 1, 1, 1, 0, 0], vec![1, 0, 1, 0, 1, 0], vec![1, 1, 0, 0, 0, 1]],
    )
    .unwrap();
    LinearCode::from_matrix("633", h).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

struct Cosets {
    /// syndrome -> (type set, count of each type)
    by_syndrome: HashMap<Vec<u8>, (TypeSet, HashMap<EmpiricalType, u64>)>,
}

fn cosets(h: &ParityCheckMatrix) -> Cosets {
    let q = h.modulus();
    let mut raw: HashMap<Vec<u8>, HashMap<EmpiricalType, u64>> = HashMap::new();
    for r in 0..(q.order() as u64).pow(h.n() as u32) {
        let z = FieldVector::from_rank(q, h.n(), r);
        *raw.entry(h.syndrome(&z).unwrap().entries().to_vec()).or_default().entry(z.type_of()).or_default() += 1;
    }
    let by_syndrome = raw
        .into_iter()
        .map(|(s, counts)| {
            let set: BTreeSet<EmpiricalType> = counts.keys().cloned().collect();
            (s, (TypeSet::new(set.into_iter().collect()), counts))
        })
        .collect();
    Cosets { by_syndrome }
}

/// `P(Z^ = z)` for every word `z` (indexed by rank), straight from
/// `sum_i S_i E_{Pi, S}[kappa_i(z Pi | S)]` with
/// `kappa_i(v | s) = gamma_i[t(s), type(v)] / (p_t(t(s)) * #{coset members of type(v)})`.
/// Cosets are enumerated with the original parity-check matrix.
pub fn analytic_law(plan: &KappaPlan<BigRational>) -> Vec<BigRational> {
    let code0 = &plan.codes()[0];
    let (n, q) = (code0.n(), code0.q());
    let words = (q.order() as u64).pow(n as u32);
    let perms = permutations(n);
    let nfact = BigRational::from_integer(BigInt::from(perms.len()));
    let mut law = vec![BigRational::zero(); words as usize];
    for (it, survival) in plan.iterations().iter().zip(plan.survival()) {
        let code = &plan.codes()[it.code_index];
        let h = code.check_matrix();
        let cos = cosets(h);
        let tsd = code.type_set_distribution().unwrap();
        let gamma: HashMap<(usize, usize), BigRational> =
            it.gamma.iter().map(|(t, p, g)| ((*t, *p), g.clone())).collect();
        let syndromes = BigRational::from_integer(BigInt::from((q.order() as u64).pow(code.redundancy() as u32)));
        for (r, slot) in law.iter_mut().enumerate() {
            let z = FieldVector::from_rank(q, n, r as u64);
            let p = z.type_of();
            let pi = code.type_space().index_of(&p).unwrap();
            let mut acc = BigRational::zero();
            for perm in &perms {
                let zp = FieldVector::new(q, perm.iter().map(|&j| z.get(j)).collect()).unwrap();
                let s = h.syndrome(&zp).unwrap();
                let (set, counts) = &cos.by_syndrome[s.entries()];
                let id = tsd.position(set).expect("brute-force type set is known to the code");
                if let Some(g) = gamma.get(&(id, pi)) {
                    let pt = tsd.probability::<BigRational>(id);
                    acc += g.clone() / (pt * BigRational::from_integer(BigInt::from(counts[&p])));
                }
            }
            *slot += survival.clone() * acc / (nfact.clone() * syndromes.clone());
        }
    }
    law
}

/// `p_Z(z)` for every word: type mass spread evenly over its class.
pub fn channel_law(masses: &[BigRational], code: &LinearCode) -> Vec<BigRational> {
    let (n, q) = (code.n(), code.q());
    (0..(q.order() as u64).pow(n as u32))
        .map(|r| {
            let p = FieldVector::from_rank(q, n, r).type_of();
            let i = code.type_space().index_of(&p).unwrap();
            masses[i].clone() / big(&type_class_size(&p))
        })
        .collect()
}
