//! Exact arithmetic over `Z_{2^m}` and over vectors of `Z_{2^m}`.
//!
//! Components are stored reduced; intermediate products are taken in 128-bit
//! integers before reduction, so Euclidean weights (up to `n * 2^(2m-2)`)
//! never overflow for the supported range of `m`.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Ring parameters: the exponent `m` of the modulus `2^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RingParams {
    m: u32,
}

impl RingParams {
    /// Cap on `m`; keeps `2^(2m)` comfortably inside native integer width.
    pub const MAX_M: u32 = 16;

    pub fn new(m: u32) -> Result<Self> {
        if m == 0 || m > Self::MAX_M {
            return Err(Error::ExponentOutOfRange {
                m,
                max: Self::MAX_M,
            });
        }
        Ok(RingParams { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// The modulus `2^m`.
    pub fn modulus(&self) -> u64 {
        1 << self.m
    }

    /// `2^(m-1)`, the unique element of order 2.
    pub fn half(&self) -> u64 {
        1 << (self.m - 1)
    }

    /// Reduces an integer to its mathematical residue in `[0, 2^m)`.
    pub fn reduce(&self, x: i128) -> u64 {
        x.rem_euclid(1 << self.m) as u64
    }
}

/// Mathematical remainder of `a` upon division by `r`, nonnegative even for
/// negative `a`.
pub fn residue(a: i64, r: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::Domain("residue modulus must be positive".into()));
    }
    Ok(a.rem_euclid(r as i64) as u64)
}

/// A tuple over `Z_{2^m}` with every component reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingVector {
    params: RingParams,
    components: Vec<u64>,
}

impl RingVector {
    /// Builds a vector, reducing each component modulo `2^m`.
    pub fn new(params: RingParams, components: impl IntoIterator<Item = i64>) -> Result<Self> {
        let components: Vec<u64> = components
            .into_iter()
            .map(|c| params.reduce(c as i128))
            .collect();
        if components.is_empty() {
            return Err(Error::Domain("vectors must have length >= 1".into()));
        }
        Ok(RingVector { params, components })
    }

    pub fn zero(params: RingParams, len: usize) -> Self {
        assert!(len >= 1, "vectors must have length >= 1");
        RingVector {
            params,
            components: vec![0; len],
        }
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn components(&self) -> &[u64] {
        &self.components
    }

    pub fn component(&self, j: usize) -> u64 {
        self.components[j]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|&c| c == 0)
    }

    fn check_compatible(&self, other: &Self, context: &'static str) -> Result<()> {
        if self.params != other.params || self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                context,
                left: format!("m={}, n={}", self.params.m(), self.len()),
                right: format!("m={}, n={}", other.params.m(), other.len()),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "vector addition")?;
        let modulus = self.params.modulus();
        Ok(RingVector {
            params: self.params,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(&a, &b)| (a + b) % modulus)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "vector subtraction")?;
        Ok(RingVector {
            params: self.params,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(&a, &b)| self.params.reduce(a as i128 - b as i128))
                .collect(),
        })
    }

    /// Scalar multiple `c * v` with `c` reduced modulo `2^m`.
    pub fn scale(&self, c: u64) -> Self {
        RingVector {
            params: self.params,
            components: self
                .components
                .iter()
                .map(|&a| self.params.reduce(a as i128 * c as i128))
                .collect(),
        }
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.params != other.params {
            return Err(Error::DimensionMismatch {
                context: "vector concatenation",
                left: format!("m={}", self.params.m()),
                right: format!("m={}", other.params.m()),
            });
        }
        let mut components = self.components.clone();
        components.extend_from_slice(&other.components);
        Ok(RingVector {
            params: self.params,
            components,
        })
    }

    /// Standard bilinear form, reduced modulo `2^m`.
    pub fn dot(&self, other: &Self) -> Result<u64> {
        self.check_compatible(other, "dot product")?;
        let mut acc: u128 = 0;
        for (&a, &b) in self.components.iter().zip(&other.components) {
            acc += a as u128 * b as u128;
        }
        Ok(self.params.reduce(acc as i128))
    }

    /// Euclidean weight: `sum_j min(v_j^2, (2^m - v_j)^2)`, an ordinary
    /// integer, not reduced.
    pub fn euclidean_weight(&self) -> u64 {
        let modulus = self.params.modulus();
        self.components
            .iter()
            .map(|&a| {
                let b = modulus - a;
                (a * a).min(b.wrapping_mul(b))
            })
            .sum()
    }

    /// Smallest `r >= 1` with `r * v = 0`; always a power of 2 dividing
    /// `2^m` (the zero vector has order 1).
    pub fn additive_order(&self) -> u64 {
        let m = self.params.m();
        self.components
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| 1u64 << (m - c.trailing_zeros().min(m)))
            .max()
            .unwrap_or(1)
    }

    /// Comma-separated decimal literal, e.g. `1,0,3`.
    pub fn to_literal(&self) -> String {
        self.components
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses a comma-separated decimal literal (negative entries allowed,
    /// reduced modulo `2^m`).
    pub fn from_literal(params: RingParams, s: &str) -> Result<Self> {
        let components = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Domain(format!("bad vector component {part:?}: {e}")))
            })
            .collect::<Result<Vec<i64>>>()?;
        RingVector::new(params, components)
    }
}

impl std::fmt::Display for RingVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.to_literal())
    }
}
