use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use super::enumerate::{self, PlainTables};
use super::typeset::{complete_distribution, juxtapose_type_set_distribution, TypeSet, TypeSetDistribution};
use super::Distance;
use crate::error::{Error, Result};
use crate::gf::{type_class_size, EmpiricalType, FieldVector, Modulus, ParityCheckMatrix, Permutation, StandardForm, TypeSpace};

/// Upper bound on elements visited by any brute-force coset enumeration.
pub const ENUMERATION_LIMIT: f64 = (1u64 << 26) as f64;
/// Coset sizes up to this are enumerated when sampling; larger cosets use
/// rejection sampling over the type class.
const SAMPLE_ENUM_LIMIT: f64 = (1u64 << 16) as f64;
const MAX_REJECTION_TRIES: usize = 50_000_000;

#[derive(Debug, Clone)]
pub enum CodeKind {
    /// `k = 0`, `H = I`: every syndrome is its own unique coset member.
    Trivial,
    /// `k = n`, no parity checks.
    Complete,
    /// Generic code handled by coset enumeration.
    Plain,
    /// `I_r (x) H_base`, handled block by block.
    Juxtaposition { base: Arc<LinearCode>, r: usize },
}

pub(crate) enum Lookup {
    Trivial,
    Complete,
    Table(Vec<u32>),
    Blocks(HashMap<Vec<u32>, u32>),
}

/// Per-code precomputation: the type-set distribution and a syndrome to
/// type-set lookup in standard-form coordinates.
pub struct CodeTables {
    pub(crate) distribution: TypeSetDistribution,
    pub(crate) lookup: Lookup,
}

/// A linear code given by its parity-check matrix, with cached coset
/// structure.
///
/// All sampling and lookup methods suffixed `_std` work in the coordinates
/// of the standard form `[H~ | I]`; the public operations without the
/// suffix take syndromes and return words in the original coordinates.
pub struct LinearCode {
    name: String,
    check: ParityCheckMatrix,
    std: StandardForm,
    distance: Option<Distance>,
    effective: Option<Distance>,
    kind: CodeKind,
    space: Arc<TypeSpace>,
    tables: OnceLock<Arc<CodeTables>>,
    leaders: OnceLock<Arc<Vec<BigUint>>>,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearCode")
            .field("name", &self.name)
            .field("n", &self.n())
            .field("k", &self.k())
            .field("q", &self.q().get())
            .field("distance", &self.distance)
            .finish()
    }
}

fn budget(what: &'static str, q: Modulus, exp: usize) -> Result<()> {
    let needed = (q.order() as f64).powi(exp as i32);
    if needed > ENUMERATION_LIMIT {
        return Err(Error::BudgetExceeded { what, needed, limit: ENUMERATION_LIMIT });
    }
    Ok(())
}

impl LinearCode {
    fn assemble(name: String, check: ParityCheckMatrix, std: StandardForm, distance: Option<Distance>, kind: CodeKind) -> Self {
        let space = Arc::new(TypeSpace::new(check.n() as u32, check.modulus()));
        LinearCode {
            name,
            check,
            std,
            distance,
            effective: distance,
            kind,
            space,
            tables: OnceLock::new(),
            leaders: OnceLock::new(),
        }
    }

    /// A code from an arbitrary full-rank parity-check matrix. The distance
    /// is computed when `q^k` is small enough to enumerate.
    pub fn from_matrix(name: impl Into<String>, check: ParityCheckMatrix) -> Result<Self> {
        let std = check.to_standard_form()?;
        let mut code = Self::assemble(name.into(), check, std, None, CodeKind::Plain);
        code.distance = code.code_distance().ok();
        code.effective = code.distance;
        Ok(code)
    }

    pub fn trivial(n: usize, q: Modulus) -> Self {
        let check = ParityCheckMatrix::identity(q, n);
        let std = check.to_standard_form().expect("identity has full rank");
        Self::assemble(format!("trivial:{n}"), check, std, Some(Distance::Infinite), CodeKind::Trivial)
    }

    pub fn complete(n: usize, q: Modulus) -> Self {
        let check = ParityCheckMatrix::empty(q, n);
        let std = check.to_standard_form().expect("empty matrix");
        Self::assemble(format!("complete:{n}"), check, std, Some(Distance::finite(1)), CodeKind::Complete)
    }

    /// `[n, 1, n]` repetition code, `H = [-1 | I_{n-1}]`.
    pub fn repetition(n: usize, q: Modulus) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter("repetition code needs n >= 2".into()));
        }
        let info = (0..n - 1).map(|_| vec![q.neg(1)]).collect();
        let check = ParityCheckMatrix::from_info_block(q, n, info)?;
        let std = check.to_standard_form()?;
        let name = if q == Modulus::BINARY { format!("rep:{n}") } else { format!("rep:{n}:q{q}") };
        Ok(Self::assemble(name, check, std, Some(Distance::finite(n as u64)), CodeKind::Plain))
    }

    /// The `r`-fold juxtaposition `I_r (x) H`. The true distance is the base
    /// distance; the effective distance used for code selection is `r d`.
    pub fn juxtapose(base: Arc<LinearCode>, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("juxtaposition needs r >= 1".into()));
        }
        let q = base.q();
        let (nb, kb, mb) = (base.n(), base.k(), base.redundancy());
        let check = base.check.block_diagonal(r);
        let bp = base.std.col_perm.as_slice();
        let mut perm = Vec::with_capacity(nb * r);
        for b in 0..r {
            perm.extend(bp[..kb].iter().map(|&c| b * nb + c));
        }
        for b in 0..r {
            perm.extend(bp[kb..].iter().map(|&c| b * nb + c));
        }
        let col_perm = Permutation::new(perm)?;
        let m = mb * r;
        let mut row_transform = vec![vec![0u8; m]; m];
        for b in 0..r {
            for (i, row) in base.std.row_transform.iter().enumerate() {
                row_transform[b * mb + i][b * mb..(b + 1) * mb].copy_from_slice(row);
            }
        }
        let matrix = ParityCheckMatrix::new(q, nb * r, {
            let mut rows = Vec::with_capacity(m);
            let permuted = check.permute_columns(&col_perm);
            for row in &row_transform {
                let mut acc = vec![0u8; nb * r];
                for (i, &f) in row.iter().enumerate() {
                    if f == 0 {
                        continue;
                    }
                    for (a, &h) in acc.iter_mut().zip(&permuted.rows()[i]) {
                        *a = q.add(*a, q.mul(f, h));
                    }
                }
                rows.push(acc);
            }
            rows
        })?;
        debug_assert!(matrix.is_standard_form());
        let std = StandardForm { matrix, col_perm, row_transform };
        let name = format!("{r}*{}", base.name);
        let distance = base.distance;
        let mut code = Self::assemble(name, check, std, distance, CodeKind::Juxtaposition { base: base.clone(), r });
        code.effective = base.effective.map(|d| d.times(r as u64));
        Ok(code)
    }

    pub fn with_effective_distance(mut self, d: Distance) -> Self {
        self.effective = Some(d);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.check.n()
    }

    pub fn k(&self) -> usize {
        self.check.k()
    }

    pub fn redundancy(&self) -> usize {
        self.check.redundancy()
    }

    pub fn q(&self) -> Modulus {
        self.check.modulus()
    }

    pub fn check_matrix(&self) -> &ParityCheckMatrix {
        &self.check
    }

    pub fn standard_form(&self) -> &StandardForm {
        &self.std
    }

    pub fn kind(&self) -> &CodeKind {
        &self.kind
    }

    pub fn type_space(&self) -> &Arc<TypeSpace> {
        &self.space
    }

    /// True minimum distance, if known.
    pub fn distance(&self) -> Option<Distance> {
        self.distance
    }

    /// Distance estimate used by the mixed code-selection rule.
    pub fn effective_distance(&self) -> Option<Distance> {
        self.effective
    }

    /// Minimum weight over nonzero codewords, by enumeration of `q^k` codewords.
    pub fn code_distance(&self) -> Result<Distance> {
        match &self.kind {
            CodeKind::Trivial => return Ok(Distance::Infinite),
            CodeKind::Complete => return Ok(Distance::finite(1)),
            CodeKind::Juxtaposition { base, .. } => return base.code_distance(),
            CodeKind::Plain => {}
        }
        if self.k() == 0 {
            return Ok(Distance::Infinite);
        }
        budget("codeword enumeration", self.q(), self.k())?;
        let zero = FieldVector::zeros(self.q(), self.redundancy());
        let mut best = u32::MAX;
        enumerate::for_each_coset_member(&self.std.matrix, &zero, |w| {
            let wt = w.iter().filter(|&&e| e != 0).count() as u32;
            if wt > 0 {
                best = best.min(wt);
            }
        });
        Ok(Distance::finite(best as u64))
    }

    /// Lazily computed type-set tables.
    pub fn tables(&self) -> Result<Arc<CodeTables>> {
        if let Some(t) = self.tables.get() {
            return Ok(t.clone());
        }
        let built = Arc::new(self.build_tables()?);
        let _ = self.tables.set(built);
        Ok(self.tables.get().expect("just set").clone())
    }

    fn build_tables(&self) -> Result<CodeTables> {
        match &self.kind {
            CodeKind::Trivial => {
                let counts = self
                    .space
                    .types()
                    .iter()
                    .map(|p| (TypeSet::new(vec![p.clone()]), type_class_size(p)));
                let distribution = TypeSetDistribution::from_counts(self.n() as u32, self.q(), counts);
                Ok(CodeTables { distribution, lookup: Lookup::Trivial })
            }
            CodeKind::Complete => Ok(CodeTables { distribution: complete_distribution(&self.space), lookup: Lookup::Complete }),
            CodeKind::Plain => {
                budget("coset enumeration", self.q(), self.n())?;
                let PlainTables { table, distribution } = enumerate::plain_tables(&self.std.matrix, &self.space);
                Ok(CodeTables { distribution, lookup: Lookup::Table(table) })
            }
            CodeKind::Juxtaposition { base, r } => {
                let bt = base.tables()?;
                let distribution = juxtapose_type_set_distribution(&bt.distribution, *r);
                let mut combos = HashMap::new();
                let mut current = Vec::with_capacity(*r);
                multisets(bt.distribution.len() as u32, *r, 0, &mut current, &mut |ids| {
                    let sum = ids
                        .iter()
                        .skip(1)
                        .fold(bt.distribution.type_set(ids[0] as usize).clone(), |acc, &i| {
                            acc.minkowski_sum(bt.distribution.type_set(i as usize))
                        });
                    let pos = distribution.position(&sum).expect("sum appears in convolution");
                    combos.insert(ids.to_vec(), pos as u32);
                });
                Ok(CodeTables { distribution, lookup: Lookup::Blocks(combos) })
            }
        }
    }

    pub fn type_set_distribution(&self) -> Result<TypeSetDistribution> {
        Ok(self.tables()?.distribution.clone())
    }

    /// Index into the type-set distribution of the type set of a
    /// standard-form syndrome.
    pub fn type_set_id_std(&self, s: &FieldVector) -> Result<usize> {
        if s.len() != self.redundancy() {
            return Err(Error::DimensionMismatch { expected: self.redundancy(), got: s.len() });
        }
        let tables = self.tables()?;
        Ok(match (&tables.lookup, &self.kind) {
            (Lookup::Trivial, _) => self.space.index_of(&s.type_of()).expect("type in space"),
            (Lookup::Complete, _) => 0,
            (Lookup::Table(t), _) => t[s.rank() as usize] as usize,
            (Lookup::Blocks(combos), CodeKind::Juxtaposition { base, r }) => {
                let mb = base.redundancy();
                let mut ids = (0..*r)
                    .map(|b| base.type_set_id_std(&s.slice(b * mb..(b + 1) * mb)).map(|i| i as u32))
                    .collect::<Result<Vec<_>>>()?;
                ids.sort_unstable();
                combos[&ids] as usize
            }
            (Lookup::Blocks(_), _) => unreachable!("block lookup only for juxtapositions"),
        })
    }

    /// Type set of the coset `{z : z H^T = s}`.
    pub fn type_set(&self, s: &FieldVector) -> Result<TypeSet> {
        let s_std = self.std.map_syndrome(s);
        let id = self.type_set_id_std(&s_std)?;
        Ok(self.tables()?.distribution.type_set(id).clone())
    }

    /// Minimum-weight word with syndrome `s`, ties broken by the
    /// lexicographically smallest word.
    pub fn coset_leader(&self, s: &FieldVector) -> Result<FieldVector> {
        if s.len() != self.redundancy() || s.modulus() != self.q() {
            return Err(Error::DimensionMismatch { expected: self.redundancy(), got: s.len() });
        }
        match &self.kind {
            CodeKind::Trivial => Ok(s.clone()),
            CodeKind::Complete => Ok(FieldVector::zeros(self.q(), self.n())),
            CodeKind::Juxtaposition { base, r } => {
                let mb = base.redundancy();
                let mut out = FieldVector::zeros(self.q(), 0);
                for b in 0..*r {
                    out = out.concat(&base.coset_leader(&s.slice(b * mb..(b + 1) * mb))?);
                }
                Ok(out)
            }
            CodeKind::Plain => {
                budget("coset enumeration", self.q(), self.k())?;
                let s_std = self.std.map_syndrome(s);
                let mut best: Option<(u32, Vec<u8>)> = None;
                enumerate::for_each_coset_member(&self.std.matrix, &s_std, |w| {
                    let z = self.std.col_perm.apply_inverse(&FieldVector::from_raw(self.q(), w.to_vec()));
                    let wt = z.weight();
                    let better = match &best {
                        None => true,
                        Some((bw, bz)) => wt < *bw || (wt == *bw && z.entries() < bz.as_slice()),
                    };
                    if better {
                        best = Some((wt, z.into_entries()));
                    }
                });
                let (_, z) = best.expect("cosets are nonempty");
                Ok(FieldVector::from_raw(self.q(), z))
            }
        }
    }

    /// Number of cosets whose leader has each type, indexed like
    /// [`LinearCode::type_space`]. Summed, this is `q^(n-k)`.
    pub fn leader_type_counts(&self) -> Result<Arc<Vec<BigUint>>> {
        if let Some(l) = self.leaders.get() {
            return Ok(l.clone());
        }
        let counts = Arc::new(self.build_leader_counts()?);
        let _ = self.leaders.set(counts);
        Ok(self.leaders.get().expect("just set").clone())
    }

    fn build_leader_counts(&self) -> Result<Vec<BigUint>> {
        let mut counts = vec![BigUint::zero(); self.space.len()];
        match &self.kind {
            CodeKind::Trivial => {
                for (i, p) in self.space.types().iter().enumerate() {
                    counts[i] = type_class_size(p);
                }
            }
            CodeKind::Complete => counts[0] = BigUint::from(1u32),
            _ if self.q() == Modulus::BINARY => {
                // one leader per coset, of the minimum weight present
                let tables = self.tables()?;
                for (t, c) in tables.distribution.entries() {
                    counts[self.space.index_of(t.min_type()).expect("in space")] += c;
                }
            }
            CodeKind::Juxtaposition { base, r } => {
                let base_counts = base.leader_type_counts()?;
                let base_space = base.type_space();
                let mut acc: HashMap<EmpiricalType, BigUint> =
                    [(EmpiricalType::zero(0, self.q()), BigUint::from(1u32))].into_iter().collect();
                for _ in 0..*r {
                    let mut next: HashMap<EmpiricalType, BigUint> = HashMap::new();
                    for (p, c) in &acc {
                        for (i, bc) in base_counts.iter().enumerate() {
                            if bc.is_zero() {
                                continue;
                            }
                            *next.entry(p.concat(base_space.get(i))).or_default() += c * bc;
                        }
                    }
                    acc = next;
                }
                for (p, c) in acc {
                    counts[self.space.index_of(&p).expect("in space")] += c;
                }
            }
            CodeKind::Plain => {
                budget("coset enumeration", self.q(), self.n())?;
                let m = self.redundancy();
                let total = (self.q().order() as u64).pow(m as u32);
                for rank in 0..total {
                    let s_std = FieldVector::from_rank(self.q(), m, rank);
                    let mut best: Option<(u32, Vec<u8>)> = None;
                    enumerate::for_each_coset_member(&self.std.matrix, &s_std, |w| {
                        let z = self.std.col_perm.apply_inverse(&FieldVector::from_raw(self.q(), w.to_vec()));
                        let wt = z.weight();
                        if best.as_ref().is_none_or(|(bw, bz)| wt < *bw || (wt == *bw && z.entries() < bz.as_slice())) {
                            best = Some((wt, z.into_entries()));
                        }
                    });
                    let (_, z) = best.expect("nonempty coset");
                    let p = FieldVector::from_raw(self.q(), z).type_of();
                    counts[self.space.index_of(&p).expect("in space")] += 1u32;
                }
            }
        }
        Ok(counts)
    }

    /// Number of members of each type in the standard-form coset of `s`.
    pub(crate) fn coset_type_counts_std(&self, s: &FieldVector) -> Result<Vec<(usize, u64)>> {
        let mut counts: HashMap<usize, u64> = HashMap::new();
        match &self.kind {
            CodeKind::Trivial => {
                counts.insert(self.space.index_of(&s.type_of()).expect("in space"), 1);
            }
            CodeKind::Plain => {
                budget("coset enumeration", self.q(), self.k())?;
                let q = self.q().get() as usize;
                let mut sym = vec![0u32; q];
                enumerate::for_each_coset_member(&self.std.matrix, s, |w| {
                    sym.iter_mut().for_each(|c| *c = 0);
                    for &e in w {
                        sym[e as usize] += 1;
                    }
                    *counts.entry(self.space.index_of_counts(&sym)).or_default() += 1;
                });
            }
            _ => return Err(Error::InvalidParameter("per-type coset counts need a plain or trivial code".into())),
        }
        let mut v: Vec<_> = counts.into_iter().collect();
        v.sort_unstable();
        Ok(v)
    }

    /// Samples `w` uniformly among words with `w H_std^T = s` and type `p`
    /// (standard-form coordinates).
    pub fn sample_in_coset_std<R: Rng + ?Sized>(&self, s: &FieldVector, p: &EmpiricalType, rng: &mut R) -> Result<FieldVector> {
        if s.len() != self.redundancy() {
            return Err(Error::DimensionMismatch { expected: self.redundancy(), got: s.len() });
        }
        let infeasible = || Error::Infeasible(format!("{p:?}"));
        match &self.kind {
            CodeKind::Trivial => {
                if &s.type_of() == p {
                    Ok(s.clone())
                } else {
                    Err(infeasible())
                }
            }
            CodeKind::Complete => Ok(random_arrangement(p, self.q(), rng)),
            CodeKind::Plain => {
                let coset_size = (self.q().order() as f64).powi(self.k() as i32);
                if let Some(w) = enumerate::sample_binary_coset(&self.std.matrix, s, p, rng) {
                    w.map(|bits| FieldVector::from_raw(self.q(), bits)).ok_or_else(infeasible)
                } else if coset_size <= SAMPLE_ENUM_LIMIT {
                    let q = self.q().get() as usize;
                    let matches = |w: &[u8], sym: &mut Vec<u32>| {
                        sym.iter_mut().for_each(|c| *c = 0);
                        for &e in w {
                            sym[e as usize] += 1;
                        }
                        sym.as_slice() == p.counts()
                    };
                    let mut sym = vec![0u32; q];
                    let mut total = 0u64;
                    enumerate::for_each_coset_member(&self.std.matrix, s, |w| {
                        if matches(w, &mut sym) {
                            total += 1;
                        }
                    });
                    if total == 0 {
                        return Err(infeasible());
                    }
                    let mut target = rng.gen_range(0..total);
                    let mut chosen = None;
                    enumerate::for_each_coset_member(&self.std.matrix, s, |w| {
                        if chosen.is_none() && matches(w, &mut sym) {
                            if target == 0 {
                                chosen = Some(w.to_vec());
                            } else {
                                target -= 1;
                            }
                        }
                    });
                    Ok(FieldVector::from_raw(self.q(), chosen.expect("counted above")))
                } else {
                    for _ in 0..MAX_REJECTION_TRIES {
                        let w = random_arrangement(p, self.q(), rng);
                        if self.std.matrix.syndrome_unchecked(w.entries()) == *s {
                            return Ok(w);
                        }
                    }
                    Err(infeasible())
                }
            }
            CodeKind::Juxtaposition { base, r } => self.sample_blocks(base, *r, s, p, rng),
        }
    }

    fn sample_blocks<R: Rng + ?Sized>(&self, base: &LinearCode, r: usize, s: &FieldVector, p: &EmpiricalType, rng: &mut R) -> Result<FieldVector> {
        let (kb, mb) = (base.k(), base.redundancy());
        let bspace = base.type_space();
        let blocks: Vec<FieldVector> = (0..r).map(|b| s.slice(b * mb..(b + 1) * mb)).collect();
        let per_block = blocks.iter().map(|sb| base.coset_type_counts_std(sb)).collect::<Result<Vec<_>>>()?;

        // ways[b][partial type] = number of words for blocks 0..b with that partial type
        let mut ways: Vec<HashMap<EmpiricalType, f64>> = Vec::with_capacity(r + 1);
        ways.push([(EmpiricalType::zero(0, self.q()), 1.0)].into_iter().collect());
        for counts in &per_block {
            let prev = ways.last().expect("seeded");
            let mut next: HashMap<EmpiricalType, f64> = HashMap::new();
            for (partial, w) in prev {
                for &(ti, c) in counts {
                    let t = partial.concat(bspace.get(ti));
                    if p.checked_sub(&t).is_some() {
                        *next.entry(t).or_default() += w * c as f64;
                    }
                }
            }
            ways.push(next);
        }
        if !ways[r].contains_key(p) {
            return Err(Error::Infeasible(format!("{p:?}")));
        }
        let mut out = vec![0u8; self.n()];
        let mut target = p.clone();
        for b in (0..r).rev() {
            let options: Vec<(EmpiricalType, f64)> = per_block[b]
                .iter()
                .filter_map(|&(ti, c)| {
                    let bt = bspace.get(ti);
                    let rest = target.checked_sub(bt)?;
                    let w = ways[b].get(&rest)?;
                    Some((bt.clone(), w * c as f64))
                })
                .collect();
            let total: f64 = options.iter().map(|(_, w)| w).sum();
            let mut u = rng.gen::<f64>() * total;
            let mut pick = options.len() - 1;
            for (i, (_, w)) in options.iter().enumerate() {
                if u < *w {
                    pick = i;
                    break;
                }
                u -= w;
            }
            let bt = options[pick].0.clone();
            let word = base.sample_in_coset_std(&blocks[b], &bt, rng)?;
            for (i, &e) in word.entries().iter().enumerate() {
                let j = if i < kb { b * kb + i } else { r * kb + b * mb + (i - kb) };
                out[j] = e;
            }
            target = target.checked_sub(&bt).expect("chosen consistently");
        }
        Ok(FieldVector::from_raw(self.q(), out))
    }

    /// Samples `z` with `z H^T = s` and type `p` in the original coordinates.
    pub fn sample_in_coset<R: Rng + ?Sized>(&self, s: &FieldVector, p: &EmpiricalType, rng: &mut R) -> Result<FieldVector> {
        let s_std = self.std.map_syndrome(s);
        let w = self.sample_in_coset_std(&s_std, p, rng)?;
        Ok(self.std.col_perm.apply_inverse(&w))
    }

    /// Number of codewords of each weight, by enumeration.
    pub fn weight_enumerator(&self) -> Result<Vec<u64>> {
        budget("codeword enumeration", self.q(), self.k())?;
        let mut counts = vec![0u64; self.n() + 1];
        let zero = FieldVector::zeros(self.q(), self.redundancy());
        match &self.kind {
            CodeKind::Trivial => counts[0] = 1,
            _ => enumerate::for_each_coset_member(&self.std.matrix, &zero, |w| {
                counts[w.iter().filter(|&&e| e != 0).count()] += 1;
            }),
        }
        Ok(counts)
    }

    /// Probability mass of each type under the coset-leader proposal,
    /// `q^-(n-k) * #(cosets whose leader has type p)`, as an exact fraction.
    pub fn leader_mass_fraction(&self) -> Result<(Arc<Vec<BigUint>>, BigUint)> {
        let counts = self.leader_type_counts()?;
        let total = BigUint::from(self.q().order()).pow(self.redundancy() as u32);
        Ok((counts, total))
    }
}

/// Uniformly random word of type `p`.
pub(crate) fn random_arrangement<R: Rng + ?Sized>(p: &EmpiricalType, q: Modulus, rng: &mut R) -> FieldVector {
    let mut entries = Vec::with_capacity(p.n() as usize);
    for (sym, &c) in p.counts().iter().enumerate() {
        entries.extend(std::iter::repeat_n(sym as u8, c as usize));
    }
    entries.shuffle(rng);
    FieldVector::from_raw(q, entries)
}

fn multisets(b: u32, r: usize, start: u32, current: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if current.len() == r {
        f(current);
        return;
    }
    for i in start..b {
        current.push(i);
        multisets(b, r, i, current, f);
        current.pop();
    }
}
