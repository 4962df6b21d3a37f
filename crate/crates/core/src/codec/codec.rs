use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bits::{BitReader, BitWriter};
use super::prefix::{elias_gamma_decode, elias_gamma_encode, HuffmanCode, LCoder};
use super::rng::SyncRng;
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf::{FieldVector, Modulus, Permutation};
use crate::planner::{IterationPlan, PlanSource};
use crate::scalar::Scalar;

const LOCAL_SALT: u64 = 0x6c6f_6361_6c5f_726e;

/// Outcome of encoding one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationResult {
    pub y_hat: FieldVector,
    /// Accepting iteration, 1-based.
    pub l: u64,
    pub message: BitWriter,
    /// `wt(y_hat - x)`.
    pub distortion: u32,
}

#[derive(Debug, Clone)]
enum IndexCoder {
    Huffman(HuffmanCode),
    EliasGamma,
}

impl IndexCoder {
    fn new<T: Scalar, P: PlanSource<T> + ?Sized>(plan: &P, coder: LCoder) -> Result<Self> {
        Ok(match coder {
            LCoder::EliasGamma => IndexCoder::EliasGamma,
            LCoder::Huffman => {
                let p = plan.p_l().ok_or_else(|| {
                    Error::InvalidParameter("Huffman coding of L needs a complete plan; use elias-gamma".into())
                })?;
                IndexCoder::Huffman(HuffmanCode::new(&p)?)
            }
        })
    }

    fn encode(&self, l: u64, out: &mut BitWriter) -> Result<()> {
        match self {
            IndexCoder::Huffman(h) => h.encode(l, out),
            IndexCoder::EliasGamma => elias_gamma_encode(l, out),
        }
    }

    fn decode(&self, input: &mut BitReader<'_>) -> Result<u64> {
        match self {
            IndexCoder::Huffman(h) => h.decode(input),
            IndexCoder::EliasGamma => elias_gamma_decode(input),
        }
    }
}

/// Per type set, the cumulative acceptance probability over types:
/// `gamma[t, p] / p_t(t)`, or normalized to one on a terminal iteration.
#[derive(Debug)]
struct AcceptTable {
    rows: Vec<Vec<(usize, f64)>>,
}

impl AcceptTable {
    fn new<T: Scalar>(it: &IterationPlan<T>, code: &LinearCode) -> Result<Self> {
        let tsd = code.type_set_distribution()?;
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); tsd.len()];
        for (t, p, g) in &it.gamma {
            rows.get_mut(*t).ok_or_else(|| Error::PlanMismatch("type set id out of range".into()))?.push((*p, g.to_f64()));
        }
        for (t, row) in rows.iter_mut().enumerate() {
            if it.terminal && row.is_empty() {
                // only reachable through float rounding: the set carries < 1e-12 mass
                let leader = code.type_space().index_of(tsd.type_set(t).min_type()).expect("type in space");
                row.push((leader, 1.0));
            }
            let scale = if it.terminal {
                row.iter().map(|(_, g)| g).sum::<f64>()
            } else {
                tsd.probability::<f64>(t)
            };
            let mut acc = 0.0;
            for (_, g) in row.iter_mut() {
                acc += *g / scale;
                *g = acc;
            }
        }
        Ok(AcceptTable { rows })
    }

    fn draw<R: Rng + ?Sized>(&self, t: usize, terminal: bool, rng: &mut R) -> Option<usize> {
        let row = &self.rows[t];
        let u: f64 = rng.gen();
        match row.iter().find(|(_, c)| u < *c) {
            Some((p, _)) => Some(*p),
            // rounding can leave the last cumulative value just under one
            None if terminal => row.last().map(|(p, _)| *p),
            None => None,
        }
    }
}

fn payload_width(q: Modulus) -> u32 {
    q.symbol_bits()
}

fn code_for<'p, T: Scalar, P: PlanSource<T> + ?Sized>(plan: &'p P, it: &IterationPlan<T>) -> Result<&'p Arc<LinearCode>> {
    plan.codes().get(it.code_index).ok_or_else(|| Error::PlanMismatch("code index out of range".into()))
}

/// `Pi` followed by the code's standard-form column order.
fn full_permutation(pi: &Permutation, code: &LinearCode) -> Permutation {
    pi.then(&code.standard_form().col_perm)
}

/// Stateful encoder. Successive blocks keep consuming the same shared and
/// local random streams.
pub struct Encoder<'a, T: Scalar, P: PlanSource<T> + ?Sized> {
    plan: &'a P,
    sync: SyncRng,
    local: ChaCha8Rng,
    coder: IndexCoder,
    tables: HashMap<usize, Arc<AcceptTable>>,
    _scalar: std::marker::PhantomData<T>,
}

impl<'a, T: Scalar, P: PlanSource<T> + ?Sized> Encoder<'a, T, P> {
    pub fn new(plan: &'a P, seed: u64, coder: LCoder) -> Result<Self> {
        Ok(Encoder {
            plan,
            sync: SyncRng::new(seed),
            local: ChaCha8Rng::seed_from_u64(seed ^ LOCAL_SALT),
            coder: IndexCoder::new(plan, coder)?,
            tables: HashMap::new(),
            _scalar: std::marker::PhantomData,
        })
    }

    fn table(&mut self, i: usize, it: &IterationPlan<T>) -> Result<Arc<AcceptTable>> {
        if let Some(t) = self.tables.get(&i) {
            return Ok(t.clone());
        }
        let table = Arc::new(AcceptTable::new(it, code_for(self.plan, it)?)?);
        self.tables.insert(i, table.clone());
        Ok(table)
    }

    pub fn encode(&mut self, x: &FieldVector) -> Result<SimulationResult> {
        let first = self.plan.codes().first().ok_or_else(|| Error::PlanMismatch("plan has no codes".into()))?;
        let (n, q) = (first.n(), first.q());
        if x.len() != n || x.modulus() != q {
            return Err(Error::DimensionMismatch { expected: n, got: x.len() });
        }
        for i in 0.. {
            let it = self.plan.iteration(i)?;
            let code = code_for(self.plan, &it)?.clone();
            let (pi, offset) = self.sync.draw_common_randomness(n, code.redundancy(), q);
            let perm = full_permutation(&pi, &code);
            let w = perm.apply(x);
            let std = &code.standard_form().matrix;
            let s = offset.sub(&std.syndrome_unchecked(w.entries()))?;
            let t = code.type_set_id_std(&s)?;
            let table = self.table(i, &it)?;
            let Some(p) = table.draw(t, it.terminal, &mut self.local) else {
                continue;
            };
            let v = code.sample_in_coset_std(&s, code.type_space().get(p), &mut self.local)?;
            let z = perm.apply_inverse(&v);
            let y_hat = x.add(&z)?;
            let l = i as u64 + 1;
            let mut message = BitWriter::new();
            self.coder.encode(l, &mut message)?;
            let width = payload_width(q);
            for &sym in &w.add(&v)?.entries()[..code.k()] {
                message.push_bits(sym as u64, width);
            }
            return Ok(SimulationResult { distortion: z.weight(), y_hat, l, message });
        }
        unreachable!("the loop only exits by returning")
    }
}

/// Stateful decoder mirroring [`Encoder`].
pub struct Decoder<'a, T: Scalar, P: PlanSource<T> + ?Sized> {
    plan: &'a P,
    sync: SyncRng,
    coder: IndexCoder,
    _scalar: std::marker::PhantomData<T>,
}

impl<'a, T: Scalar, P: PlanSource<T> + ?Sized> Decoder<'a, T, P> {
    pub fn new(plan: &'a P, seed: u64, coder: LCoder) -> Result<Self> {
        Ok(Decoder { plan, sync: SyncRng::new(seed), coder: IndexCoder::new(plan, coder)?, _scalar: std::marker::PhantomData })
    }

    /// Reads one message and reconstructs `y_hat`.
    pub fn decode(&mut self, input: &mut BitReader<'_>) -> Result<FieldVector> {
        let l = self.coder.decode(input)?;
        if l == 0 {
            return Err(Error::Malformed("iteration index 0".into()));
        }
        let first = self.plan.codes().first().ok_or_else(|| Error::PlanMismatch("plan has no codes".into()))?;
        let (n, q) = (first.n(), first.q());
        for i in 0..l as usize {
            let it = self.plan.iteration(i).map_err(|_| Error::Malformed(format!("L = {l} is beyond the plan")))?;
            let code = code_for(self.plan, &it)?.clone();
            let (pi, offset) = self.sync.draw_common_randomness(n, code.redundancy(), q);
            if i + 1 < l as usize {
                continue;
            }
            let width = payload_width(q);
            let mut m = Vec::with_capacity(n);
            for _ in 0..code.k() {
                let sym = input.read_bits(width)?;
                if sym >= q.order() as u64 {
                    return Err(Error::Malformed(format!("payload symbol {sym} is not below q = {q}")));
                }
                m.push(sym as u8);
            }
            m.resize(n, 0);
            let head = FieldVector::new(q, m)?;
            let check = offset.sub(&code.standard_form().matrix.syndrome_unchecked(head.entries()))?;
            let mut entries = head.into_entries();
            entries[code.k()..].copy_from_slice(check.entries());
            let y_std = FieldVector::new(q, entries)?;
            return Ok(full_permutation(&pi, &code).apply_inverse(&y_std));
        }
        unreachable!("l >= 1")
    }
}

/// Encodes one block with fresh random streams.
pub fn encode<T: Scalar, P: PlanSource<T> + ?Sized>(x: &FieldVector, plan: &P, seed: u64, coder: LCoder) -> Result<SimulationResult> {
    Encoder::new(plan, seed, coder)?.encode(x)
}

/// Decodes one message produced by [`encode`] with the same seed.
pub fn decode<T: Scalar, P: PlanSource<T> + ?Sized>(message: &BitWriter, plan: &P, seed: u64, coder: LCoder) -> Result<FieldVector> {
    let mut reader = BitReader::new(message.as_bytes(), message.len());
    Decoder::new(plan, seed, coder)?.decode(&mut reader)
}
