use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{FieldVector, Modulus, Permutation};
use crate::error::{Error, Result};

/// A full-row-rank `(n - k) x n` parity-check matrix over `GF(q)`.
///
/// `k = n` gives zero rows (the complete code) and `k = 0` with `H = I`
/// gives the trivial code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParityCheckMatrix {
    q: Modulus,
    n: usize,
    rows: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    q: u32,
    n: usize,
    k: usize,
    rows: Vec<Vec<u32>>,
}

/// `H_std = R * H * P = [H~ | I_{n-k}]`. For a word `z` with `z H^T = s`,
/// the permuted word `w = col_perm.apply(z)` satisfies `w H_std^T = s R^T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardForm {
    pub matrix: ParityCheckMatrix,
    pub col_perm: Permutation,
    pub row_transform: Vec<Vec<u8>>,
}

impl StandardForm {
    /// Maps a syndrome of the original matrix to the matching syndrome of `H_std`.
    pub fn map_syndrome(&self, s: &FieldVector) -> FieldVector {
        let q = s.modulus();
        let entries = self
            .row_transform
            .iter()
            .map(|row| row.iter().zip(s.entries()).fold(0u8, |acc, (&r, &x)| q.add(acc, q.mul(r, x))))
            .collect();
        FieldVector::from_raw(q, entries)
    }
}

impl ParityCheckMatrix {
    pub fn new(q: Modulus, n: usize, rows: Vec<Vec<u8>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("block length must be positive".into()));
        }
        if rows.len() > n {
            return Err(Error::RankDeficient);
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            for &e in row {
                q.check(e as u32)?;
            }
        }
        let h = ParityCheckMatrix { q, n, rows };
        h.reduce()?;
        Ok(h)
    }

    pub fn identity(q: Modulus, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        ParityCheckMatrix { q, n, rows }
    }

    /// The zero-row matrix of the complete code `GF(q)^n`.
    pub fn empty(q: Modulus, n: usize) -> Self {
        ParityCheckMatrix { q, n, rows: Vec::new() }
    }

    /// `[info | I]` from the `(n-k) x k` information block.
    pub fn from_info_block(q: Modulus, n: usize, info: Vec<Vec<u8>>) -> Result<Self> {
        let m = info.len();
        let k = n.checked_sub(m).ok_or(Error::RankDeficient)?;
        let rows = info
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                if row.len() != k {
                    return Err(Error::DimensionMismatch { expected: k, got: row.len() });
                }
                row.extend((0..m).map(|j| u8::from(i == j)));
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        ParityCheckMatrix::new(q, n, rows)
    }

    pub fn modulus(&self) -> Modulus {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.rows.len()
    }

    pub fn redundancy(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// `z H^T`.
    pub fn syndrome(&self, z: &FieldVector) -> Result<FieldVector> {
        if z.modulus() != self.q {
            return Err(Error::ModulusMismatch { left: z.modulus().get(), right: self.q.get() });
        }
        if z.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: z.len() });
        }
        Ok(self.syndrome_unchecked(z.entries()))
    }

    pub(crate) fn syndrome_unchecked(&self, z: &[u8]) -> FieldVector {
        let q = self.q;
        let entries = self
            .rows
            .iter()
            .map(|row| {
                let acc: u32 = row.iter().zip(z).map(|(&h, &x)| h as u32 * x as u32).sum();
                (acc % q.order()) as u8
            })
            .collect();
        FieldVector::from_raw(q, entries)
    }

    pub fn is_standard_form(&self) -> bool {
        let k = self.k();
        self.rows
            .iter()
            .enumerate()
            .all(|(i, row)| row[k..].iter().enumerate().all(|(j, &e)| e == u8::from(i == j)))
    }

    /// The `(n-k) x k` block `H~` of a matrix in standard form.
    pub fn info_block(&self) -> Vec<Vec<u8>> {
        let k = self.k();
        self.rows.iter().map(|r| r[..k].to_vec()).collect()
    }

    /// Gaussian elimination to `[H~ | I]`. Pivot for row `i` is column
    /// `k + i` when possible, otherwise the leftmost usable column is swapped
    /// into place.
    pub fn to_standard_form(&self) -> Result<StandardForm> {
        self.reduce()
    }

    fn reduce(&self) -> Result<StandardForm> {
        let q = self.q;
        let m = self.rows.len();
        let k = self.n - m;
        let mut a = self.rows.clone();
        let mut r: Vec<Vec<u8>> = (0..m).map(|i| (0..m).map(|j| u8::from(i == j)).collect()).collect();
        let mut perm: Vec<usize> = (0..self.n).collect();

        for i in 0..m {
            let c = k + i;
            let pivot = match (i..m).find(|&row| a[row][c] != 0) {
                Some(p) => p,
                None => {
                    let col = (0..self.n)
                        .filter(|&j| j != c && !(k..c).contains(&j))
                        .find(|&j| (i..m).any(|row| a[row][j] != 0))
                        .ok_or(Error::RankDeficient)?;
                    for row in a.iter_mut() {
                        row.swap(col, c);
                    }
                    perm.swap(col, c);
                    (i..m).find(|&row| a[row][c] != 0).expect("column has a nonzero entry")
                }
            };
            a.swap(i, pivot);
            r.swap(i, pivot);
            let inv = q.inv(a[i][c]).expect("pivot is nonzero");
            for e in a[i].iter_mut() {
                *e = q.mul(*e, inv);
            }
            for e in r[i].iter_mut() {
                *e = q.mul(*e, inv);
            }
            for row in 0..m {
                if row == i || a[row][c] == 0 {
                    continue;
                }
                let f = a[row][c];
                for j in 0..self.n {
                    let t = q.mul(f, a[i][j]);
                    a[row][j] = q.sub(a[row][j], t);
                }
                for j in 0..m {
                    let t = q.mul(f, r[i][j]);
                    r[row][j] = q.sub(r[row][j], t);
                }
            }
        }
        Ok(StandardForm {
            matrix: ParityCheckMatrix { q, n: self.n, rows: a },
            col_perm: Permutation::new(perm).expect("swaps preserve bijectivity"),
            row_transform: r,
        })
    }

    /// Block-diagonal `I_r (x) H`.
    pub fn block_diagonal(&self, r: usize) -> Self {
        let n = self.n * r;
        let mut rows = Vec::with_capacity(self.rows.len() * r);
        for b in 0..r {
            for row in &self.rows {
                let mut full = vec![0u8; n];
                full[b * self.n..(b + 1) * self.n].copy_from_slice(row);
                rows.push(full);
            }
        }
        ParityCheckMatrix { q: self.q, n, rows }
    }

    /// Applies a column permutation: column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &Permutation) -> Self {
        let rows = self.rows.iter().map(|row| perm.as_slice().iter().map(|&p| row[p]).collect()).collect();
        ParityCheckMatrix { q: self.q, n: self.n, rows }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatrixJson {
            q: self.q.order(),
            n: self.n,
            k: self.k(),
            rows: self.rows.iter().map(|r| r.iter().map(|&e| e as u32).collect()).collect(),
        })
        .expect("plain struct serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: MatrixJson = serde_json::from_value(v.clone())?;
        let q = Modulus::new(raw.q)?;
        if raw.k > raw.n || raw.rows.len() != raw.n - raw.k {
            return Err(Error::DimensionMismatch { expected: raw.n.saturating_sub(raw.k), got: raw.rows.len() });
        }
        let rows = raw
            .rows
            .into_iter()
            .map(|r| r.into_iter().map(|e| q.check(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        ParityCheckMatrix::new(q, raw.n, rows)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&serde_json::from_str(&text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin(rows: &[&str]) -> ParityCheckMatrix {
        let n = rows[0].len();
        let rows = rows.iter().map(|r| r.bytes().map(|b| b - b'0').collect()).collect();
        ParityCheckMatrix::new(Modulus::BINARY, n, rows).unwrap()
    }

    #[test]
    fn identity_syndrome() {
        let h = ParityCheckMatrix::identity(Modulus::BINARY, 3);
        let e1 = FieldVector::unit(Modulus::BINARY, 3, 0);
        assert_eq!(h.syndrome(&e1).unwrap(), e1);
    }

    #[test]
    fn standard_form_already() {
        let h = bin(&["110100", "011010", "101001"]);
        let sf = h.to_standard_form().unwrap();
        assert!(sf.col_perm.is_identity());
        assert_eq!(sf.matrix, h);
        let i = ParityCheckMatrix::identity(Modulus::BINARY, 4);
        let sf = i.to_standard_form().unwrap();
        assert!(sf.col_perm.is_identity());
        assert_eq!(sf.matrix, i);
    }

    #[test]
    fn rank_deficient_rejected() {
        let rows = vec![vec![1, 1, 0], vec![1, 1, 0]];
        assert!(matches!(
            ParityCheckMatrix::new(Modulus::BINARY, 3, rows),
            Err(Error::RankDeficient)
        ));
    }

    #[test]
    fn standard_form_preserves_codewords() {
        // pivots must move: the last three columns are singular
        let h = bin(&["101100", "010110", "110000"]);
        let sf = h.to_standard_form().unwrap();
        assert!(sf.matrix.is_standard_form());
        // brute force over all 2^6 words: codewords of H map to codewords of H_std
        for bits in 0..64u64 {
            let z = FieldVector::from_bits(bits, 6);
            let s = h.syndrome(&z).unwrap();
            let w = sf.col_perm.apply(&z);
            assert_eq!(sf.matrix.syndrome(&w).unwrap(), sf.map_syndrome(&s));
        }
    }

    #[test]
    fn json_round_trip() {
        let h = bin(&["1101", "0111"]);
        let back = ParityCheckMatrix::from_json(&h.to_json()).unwrap();
        assert_eq!(back, h);
        let bad = serde_json::json!({"q": 2, "n": 3, "k": 1, "rows": [[1, 0, 0]]});
        assert!(ParityCheckMatrix::from_json(&bad).is_err());
    }

    #[test]
    fn ternary_standard_form() {
        let q = Modulus::new(3).unwrap();
        let h = ParityCheckMatrix::new(q, 4, vec![vec![1, 2, 2, 0], vec![2, 1, 1, 1]]).unwrap();
        let sf = h.to_standard_form().unwrap();
        assert!(sf.matrix.is_standard_form());
        for r in 0..81 {
            let z = FieldVector::from_rank(q, 4, r);
            let s = h.syndrome(&z).unwrap();
            assert_eq!(sf.matrix.syndrome(&sf.col_perm.apply(&z)).unwrap(), sf.map_syndrome(&s));
        }
    }
}
