//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{analytic_law, channel_law, code_633};
use grsse_core::bounds::{eta, kl_divergence, rate_bounds, GreedyRejectionSampler};
use grsse_core::channel::{NoiseModel, TypeDistribution};
use grsse_core::codec::bits::{BitReader, BitWriter};
use grsse_core::codec::prefix::LCoder;
use grsse_core::codec::stream::to_message_file;
use grsse_core::codec::{Decoder, Encoder};
use grsse_core::codes::{juxtapose_type_set_distribution, CodeRegistry, LinearCode, TypeSet, TypeSetDistribution};
use grsse_core::gf::{FieldVector, Modulus};
use grsse_core::planner::{beta_mixture_bound, plan_grsse, CodeSchedule, KappaPlan};
use grsse_core::sweep::{emit_csv, run_sweep, SweepSpec};
use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const B: Modulus = Modulus::BINARY;
const SLACK: f64 = 1e-9;

type Outcome = Result<String, String>;

fn check(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn criterion1(reg: &CodeRegistry) -> Outcome {
    let cases: Vec<(&str, NoiseModel, Arc<LinearCode>, usize)> = vec![
        ("rep:3 ball w=1", NoiseModel::ball(3, B, 1).unwrap(), reg.get("rep:3", B).unwrap(), 64),
        ("[6,3,3] ball w=1", NoiseModel::ball(6, B, 1).unwrap(), Arc::new(code_633()), 12),
        ("trivial:4 bsc 1/4", NoiseModel::symmetric(4, B, "1/4".parse().unwrap()).unwrap(), reg.get("trivial:4", B).unwrap(), 12),
        ("complete:4 weight 2", NoiseModel::constant_weight(4, B, 2).unwrap(), reg.get("complete:4", B).unwrap(), 64),
    ];
    let mut notes = Vec::new();
    for (label, ch, code, cap) in cases {
        let plan: KappaPlan<BigRational> =
            plan_grsse(&ch, &CodeSchedule::new(vec![code.clone()], 1e-9, cap).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
        let masses = ch.type_distribution::<BigRational>().map_err(|e| e.to_string())?;
        let law = analytic_law(&plan);
        check(law == channel_law(masses.masses(), &code), format!("{label}: output law differs"))?;
        notes.push(format!("{label} ({} it)", plan.len()));
    }
    Ok(notes.join(", "))
}

/// Returns the message file of all round trips.
fn golay_round_trips(reg: &CodeRegistry, trials: usize, seed: u64) -> Result<Vec<u8>, String> {
    let ch = NoiseModel::ball(24, B, 3).unwrap();
    let golay = reg.get("golay", B).unwrap();
    let plan: KappaPlan<f64> = plan_grsse(&ch, &CodeSchedule::new(vec![golay], 1e-9, 20_000).unwrap()).map_err(|e| e.to_string())?;
    let mut enc = Encoder::new(&plan, seed, LCoder::Huffman).map_err(|e| e.to_string())?;
    let mut dec = Decoder::new(&plan, seed, LCoder::Huffman).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bits = BitWriter::new();
    for t in 0..trials {
        let x = FieldVector::new(B, (0..24).map(|_| rng.gen_range(0..2)).collect()).unwrap();
        let r = enc.encode(&x).map_err(|e| e.to_string())?;
        check(r.y_hat.sub(&x).unwrap().weight() <= 3, format!("trial {t}: distortion {}", r.distortion))?;
        let mut reader = BitReader::new(r.message.as_bytes(), r.message.len());
        check(dec.decode(&mut reader).map_err(|e| e.to_string())? == r.y_hat, format!("trial {t}: decode mismatch"))?;
        bits.extend(&r.message);
    }
    Ok(to_message_file(&bits))
}

fn criterion2(reg: &CodeRegistry) -> Outcome {
    let file = golay_round_trips(reg, 100_000, 2024)?;
    Ok(format!("100000 trials, {} message bytes", file.len()))
}

fn criterion3(reg: &CodeRegistry) -> Outcome {
    let golay = reg.get("golay", B).unwrap();
    let mut notes = Vec::new();
    for w in 0..=3 {
        let ch = NoiseModel::ball(24, B, w).unwrap();
        let plan: KappaPlan<f64> =
            plan_grsse(&ch, &CodeSchedule::new(vec![golay.clone()], 1e-9, 20_000).unwrap()).map_err(|e| e.to_string())?;
        let b = rate_bounds(&ch, &golay).map_err(|e| e.to_string())?;
        let elogl = plan.expected_log_l().map_err(|e| e.to_string())?;
        let comm = plan.expected_rate(LCoder::Huffman).map_err(|e| e.to_string())? * 24.0;
        check(elogl <= b.elogl_bound + SLACK, format!("w={w}: E[log2 L] {elogl} > {}", b.elogl_bound))?;
        check(comm <= b.comm_bound + SLACK, format!("w={w}: rate*n {comm} > {}", b.comm_bound))?;
        notes.push(format!("w={w}: {elogl:.3}<={:.3}, {comm:.3}<={:.3}", b.elogl_bound, b.comm_bound));
    }
    Ok(notes.join("; "))
}

fn criterion4(reg: &CodeRegistry) -> Outcome {
    let golay = reg.get("golay", B).unwrap();
    let sets = golay.type_set_distribution().map_err(|e| e.to_string())?.len();
    check(sets == 5, format!("{sets} type sets"))?;
    let d = golay.distance().and_then(|d| d.as_integer());
    check(d == Some(8), format!("distance {d:?}"))?;
    // brute force over all 2^24 words against the parity checks
    let rows: Vec<u32> = golay
        .check_matrix()
        .rows()
        .iter()
        .map(|r| r.iter().enumerate().fold(0u32, |m, (j, &b)| m | ((b as u32) << j)))
        .collect();
    let mut by_weight = [0u64; 25];
    for v in 0u32..(1 << 24) {
        if rows.iter().all(|r| (v & r).count_ones() % 2 == 0) {
            by_weight[v.count_ones() as usize] += 1;
        }
    }
    let min = (1..=24).find(|&w| by_weight[w] > 0);
    check(min == Some(8), format!("brute-force minimum weight {min:?}"))?;
    check(by_weight[8] == 759, format!("{} weight-8 codewords", by_weight[8]))?;
    Ok(format!("5 type sets, d=8, {} weight-8 codewords, {} codewords", by_weight[8], by_weight.iter().sum::<u64>()))
}

fn criterion5(reg: &CodeRegistry) -> Outcome {
    let rep = reg.get("rep:3", B).unwrap();
    let juxt = reg.get("2*rep:3", B).unwrap();
    let convolved = juxtapose_type_set_distribution(&rep.type_set_distribution().map_err(|e| e.to_string())?, 2);
    let h = juxt.check_matrix();
    let mut sets: HashMap<Vec<u8>, BTreeSet<_>> = HashMap::new();
    for r in 0..64u64 {
        let z = FieldVector::from_rank(B, 6, r);
        sets.entry(h.syndrome(&z).unwrap().entries().to_vec()).or_default().insert(z.type_of());
    }
    let brute = TypeSetDistribution::from_counts(
        6,
        B,
        sets.into_values().map(|s| (TypeSet::new(s.into_iter().collect()), BigUint::from(1u32))),
    );
    check(convolved == brute, "convolution differs from enumeration")?;
    check(juxt.type_set_distribution().map_err(|e| e.to_string())? == brute, "registry code differs from enumeration")?;
    Ok(format!("{} type sets over {} syndromes", brute.len(), brute.total()))
}

fn random_pmf<R: Rng>(rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..8).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / s).collect()
}

fn criterion6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let runs = 100_000;
    let mut worst = f64::NEG_INFINITY;
    for pair in 0..20 {
        let target = random_pmf(&mut rng);
        let proposal = random_pmf(&mut rng);
        let dkl = kl_divergence(&target, &proposal).map_err(|e| e.to_string())?;
        let mut s = GreedyRejectionSampler::new(&target, &proposal).map_err(|e| e.to_string())?;
        let (mut sum, mut sq) = (0.0, 0.0);
        for _ in 0..runs {
            let l = (s.sample(&mut rng).1 as f64).log2();
            sum += l;
            sq += l * l;
        }
        let mean = sum / runs as f64;
        let se = ((sq / runs as f64 - mean * mean).max(0.0) / runs as f64).sqrt();
        let slack = mean - (dkl + eta() + 3.0 * se);
        check(slack <= 0.0, format!("pair {pair}: mean log2 L {mean} > {dkl} + eta + 3*{se}"))?;
        worst = worst.max(slack);
    }
    Ok(format!("20 pairs, largest mean - bound {worst:.3} bits"))
}

fn criterion7(reg: &CodeRegistry) -> Outcome {
    let golay = reg.get("golay", B).unwrap();
    let ch = NoiseModel::ball(24, B, 3).unwrap();
    let plan: KappaPlan<f64> =
        plan_grsse(&ch, &CodeSchedule::new(vec![golay.clone()], 1e-9, 20_000).unwrap()).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for (i, it) in plan.iterations().iter().enumerate() {
        if plan.code(it.code_index).name() != "golay" {
            continue;
        }
        let r = TypeDistribution::from_masses(golay.type_space().clone(), it.residual.clone()).map_err(|e| e.to_string())?;
        let bound = beta_mixture_bound(&r, &golay, &0.5).map_err(|e| e.to_string())?;
        check(it.accept >= bound - 1e-12, format!("iteration {}: F {} < {bound}", i + 1, it.accept))?;
        checked += 1;
    }
    check(checked == plan.len(), "plan used a non-Golay iteration")?;
    Ok(format!("{checked} iterations"))
}

fn rate_sweep(reg: &CodeRegistry) -> Result<(Vec<grsse_core::sweep::SweepRow>, Vec<u8>), String> {
    let spec = SweepSpec::from_json(
        r#"{"channel": "bsc", "n": 24, "alpha": ["1/50", "1/20", "1/10", "1/5", "3/10", "1/2"],
            "codes": ["trivial:24", "3*rep:8", "golay", "complete:24"], "trials": 2000, "seed": 8}"#,
    )
    .map_err(|e| e.to_string())?;
    let rows = run_sweep(&spec, reg).map_err(|e| e.to_string())?;
    let mut csv = Vec::new();
    emit_csv(&rows, &mut csv).map_err(|e| e.to_string())?;
    Ok((rows, csv))
}

fn criterion8(reg: &CodeRegistry) -> Outcome {
    let (rows, _) = rate_sweep(reg)?;
    let mut worst: f64 = 0.0;
    for r in &rows {
        check(r.error.is_none(), format!("alpha {}: {}", r.param, r.error.clone().unwrap_or_default()))?;
        check(r.flags.is_empty(), format!("alpha {}: flags {}", r.param, r.flags.join(";")))?;
        let (rate, cap) = (r.analytic_rate.unwrap(), r.capacity.unwrap());
        check(cap <= rate + SLACK, format!("alpha {}: rate {rate} below capacity {cap}", r.param))?;
        check(rate - cap <= 0.35, format!("alpha {}: gap {}", r.param, rate - cap))?;
        worst = worst.max(rate - cap);
    }
    let half = rows.last().unwrap().analytic_rate.unwrap();
    check(half <= 1.25, format!("rate at alpha 1/2 is {half}"))?;
    Ok(format!("largest gap {worst:.4} bits/symbol, rate at 1/2 = {half}"))
}

fn criterion9(reg: &CodeRegistry) -> Outcome {
    let a = golay_round_trips(reg, 100_000, 2024)?;
    let b = golay_round_trips(reg, 100_000, 2024)?;
    check(a == b, "message files differ")?;
    let (_, x) = rate_sweep(reg)?;
    let (_, y) = rate_sweep(&CodeRegistry::new())?;
    check(x == y, "sweep CSV differs")?;
    Ok(format!("{} message bytes and {} CSV bytes identical", a.len(), x.len()))
}

fn main() -> ExitCode {
    let reg = CodeRegistry::new();
    type Criterion<'a> = (u32, &'a str, u64, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        (1, "exact simulation on small codes", 1, Box::new(|| criterion1(&reg))),
        (2, "Golay ball w=3 distortion and decoding", 120, Box::new(|| criterion2(&reg))),
        (3, "Golay ball rate bounds", 60, Box::new(|| criterion3(&reg))),
        (4, "Golay structure", 30, Box::new(|| criterion4(&reg))),
        (5, "juxtaposition type sets", 1, Box::new(|| criterion5(&reg))),
        (6, "greedy rejection sampling iteration bound", 60, Box::new(criterion6)),
        (7, "beta-mixture acceptance witness", 60, Box::new(|| criterion7(&reg))),
        (8, "BSC rate sandwich sweep", 600, Box::new(|| criterion8(&reg))),
        (9, "determinism", 720, Box::new(|| criterion9(&reg))),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(note) if took > Duration::from_secs(budget) => Err(format!("{note}; exceeded {budget} s budget")),
            other => other,
        };
        let (status, note) = match &outcome {
            Ok(note) => ("PASS", note),
            Err(why) => ("FAIL", why),
        };
        println!("criterion {id}: {status} {name} [{:.2} s] {note}", took.as_secs_f64());
        if outcome.is_err() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all criteria passed");
        ExitCode::SUCCESS
    }
}
