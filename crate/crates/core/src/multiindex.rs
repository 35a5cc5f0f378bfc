//! Multi-index combinatorics: enumeration, dimension counts, and the
//! decrement operation behind the telescoping vector fields.
//!
//! A multi-index is dehomogenized: it has exactly `n` entries, entry `j`
//! being the exponent of `z_j`. The exponent of the chart variable `Z_0` is
//! implicit as `d - |alpha|`. All enumerations use one canonical order:
//! total degree ascending, and within a degree block the exponent vectors in
//! descending lexicographic order (so `z_1` monomials come before `z_2`).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::One;

use crate::error::{Error, Result};

/// An exponent vector of fixed length `n` with nonnegative entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    /// The zero index `(0,...,0)` of length `n`.
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit index with a single 1 in entry `j` (1-based).
    pub fn unit(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::VariableOutOfRange { j, n });
        }
        let mut e = vec![0; n];
        e[j - 1] = 1;
        Ok(MultiIndex(e))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of `z_j` (1-based).
    pub fn entry(&self, j: usize) -> u32 {
        self.0[j - 1]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Lowers entry `j` (1-based) by one. Fails with a distinct error when
    /// the entry is already zero.
    pub fn decrement(&self, j: usize) -> Result<MultiIndex> {
        if j == 0 || j > self.0.len() {
            return Err(Error::VariableOutOfRange {
                j,
                n: self.0.len(),
            });
        }
        if self.0[j - 1] == 0 {
            return Err(Error::DecrementZero { j });
        }
        let mut e = self.0.clone();
        e[j - 1] -= 1;
        Ok(MultiIndex(e))
    }

    /// Raises entry `j` (1-based) by one.
    pub fn increment(&self, j: usize) -> Result<MultiIndex> {
        if j == 0 || j > self.0.len() {
            return Err(Error::VariableOutOfRange {
                j,
                n: self.0.len(),
            });
        }
        let mut e = self.0.clone();
        e[j - 1] += 1;
        Ok(MultiIndex(e))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.0
                .iter()
                .map(|&e| serde_json::Value::from(e))
                .collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::Json("multi-index must be a JSON array".into()))?;
        let mut e = Vec::with_capacity(arr.len());
        for v in arr {
            let x = v
                .as_u64()
                .ok_or_else(|| Error::Json("multi-index entries must be nonnegative integers".into()))?;
            e.push(u32::try_from(x).map_err(|_| Error::Json("multi-index entry too large".into()))?);
        }
        Ok(MultiIndex(e))
    }
}

/// Canonical comparison: total degree first, then descending lexicographic
/// on the exponent vector, so that within one degree block the index with
/// more weight on earlier variables comes first.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// The projective dimension of the space of degree-`d` hypersurfaces in
/// `P^n`: `C(n+d, d) - 1`, in arbitrary precision.
pub fn dimension_count(n: usize, d: usize) -> Result<BigUint> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidDimension(format!(
            "dimension_count requires n >= 1 and d >= 1, got n={n}, d={d}"
        )));
    }
    let total = binomial(BigUint::from(n + d), BigUint::from(d));
    Ok(total - BigUint::one())
}

/// `dimension_count` narrowed to `usize` for in-chart bookkeeping.
pub fn dimension_count_usize(n: usize, d: usize) -> Result<usize> {
    use num_traits::ToPrimitive;
    dimension_count(n, d)?
        .to_usize()
        .ok_or_else(|| Error::InvalidDimension(format!("N_d overflows usize for n={n}, d={d}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumMode {
    ExactDegree,
    AtMostDegree,
}

/// All multi-indices of length `n` with total degree equal to (or at most)
/// `d`, in the canonical order. The order is the one every matrix and
/// serialization in the crate depends on.
pub fn enumerate_multiindices(n: usize, d: usize, mode: EnumMode) -> Result<Vec<MultiIndex>> {
    if n == 0 {
        return Err(Error::InvalidDimension(
            "enumerate_multiindices requires n >= 1".into(),
        ));
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    collect(&mut current, 0, d as u32, mode, &mut out);
    out.sort();
    Ok(out)
}

fn collect(current: &mut Vec<u32>, pos: usize, budget: u32, mode: EnumMode, out: &mut Vec<MultiIndex>) {
    if pos == current.len() {
        // budget is the degree still unspent; exact mode keeps full spends only
        let keep = match mode {
            EnumMode::ExactDegree => budget == 0,
            EnumMode::AtMostDegree => true,
        };
        if keep {
            out.push(MultiIndex(current.clone()));
        }
        return;
    }
    for e in 0..=budget {
        current[pos] = e;
        collect(current, pos + 1, budget - e, mode, out);
    }
    current[pos] = 0;
}
