use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex};

use super::{Distance, LinearCode};
use crate::error::{Error, Result};
use crate::gf::{Modulus, ParityCheckMatrix};

const GOLAY_CIRCULANT: [usize; 6] = [0, 1, 3, 4, 5, 9];

/// The extended binary Golay code `[24, 12, 8]`, with parity-check matrix
/// `[A^T | I_12]` where `A` borders an 11x11 circulant with ones.
pub fn golay_code() -> Result<LinearCode> {
    let mut a = vec![vec![0u8; 12]; 12];
    for j in 1..12 {
        a[0][j] = 1;
        a[j][0] = 1;
    }
    for i in 0..11 {
        for &s in &GOLAY_CIRCULANT {
            a[i + 1][(i + s) % 11 + 1] = 1;
        }
    }
    let info: Vec<Vec<u8>> = (0..12).map(|i| (0..12).map(|j| a[j][i]).collect()).collect();
    let check = ParityCheckMatrix::from_info_block(Modulus::BINARY, 24, info)?;
    let code = LinearCode::from_matrix("golay", check)?;
    match code.distance() {
        Some(d) if d == Distance::finite(8) => Ok(code),
        other => Err(Error::SelfCheck(format!("golay distance {other:?}"))),
    }
}

/// Single parity check `[n, n-1, 2]`.
pub fn parity_code(n: usize, q: Modulus) -> Result<LinearCode> {
    if n < 2 {
        return Err(Error::InvalidParameter("parity code needs n >= 2".into()));
    }
    let check = ParityCheckMatrix::new(q, n, vec![vec![1; n]])?;
    Ok(LinearCode::from_matrix(format!("parity:{n}"), check)?.with_effective_distance(Distance::finite(2)))
}

/// Resolves code specifications such as `golay`, `rep:3`, `4*rep:6` or
/// `json:path/to/H.json`, caching each code so juxtapositions share the
/// tables of their base.
#[derive(Default)]
pub struct CodeRegistry {
    cache: Mutex<HashMap<(String, u8), Arc<LinearCode>>>,
}

/// Built-in code specifications, as shown by `codes list`.
pub const BUILTIN: &[&str] = &["golay", "rep:N", "parity:N", "trivial:N", "complete:N", "json:PATH", "R*SPEC"];

impl CodeRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, spec: &str, q: Modulus) -> Result<Arc<LinearCode>> {
        let spec = spec.trim();
        let key = (spec.to_string(), q.get());
        if let Some(code) = self.cache.lock().expect("registry lock").get(&key) {
            return Ok(code.clone());
        }
        let code = Arc::new(self.build(spec, q)?);
        Ok(self.cache.lock().expect("registry lock").entry(key).or_insert(code).clone())
    }

    fn build(&self, spec: &str, q: Modulus) -> Result<LinearCode> {
        let bad = || Error::CodeSpec(spec.to_string());
        let length = |s: &str| s.parse::<usize>().map_err(|_| bad());
        if let Some((r, base)) = spec.split_once('*') {
            let r = length(r.trim())?;
            let base = self.get(base, q)?;
            return LinearCode::juxtapose(base, r).map(|c| c.with_name(spec));
        }
        let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
        let code = match kind {
            "golay" if arg.is_empty() => {
                if q != Modulus::BINARY {
                    return Err(Error::CodeSpec("golay is binary".into()));
                }
                golay_code()?
            }
            "rep" => LinearCode::repetition(length(arg)?, q)?,
            "parity" => parity_code(length(arg)?, q)?,
            "trivial" => LinearCode::trivial(positive(length(arg)?)?, q),
            "complete" => LinearCode::complete(positive(length(arg)?)?, q),
            "json" => {
                let check = ParityCheckMatrix::load(Path::new(arg))?;
                if check.modulus() != q {
                    return Err(Error::ModulusMismatch { left: check.modulus().get(), right: q.get() });
                }
                LinearCode::from_matrix(spec, check)?
            }
            _ => return Err(bad()),
        };
        Ok(code.with_name(spec))
    }
}

fn positive(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidParameter("block length must be positive".into()));
    }
    Ok(n)
}
