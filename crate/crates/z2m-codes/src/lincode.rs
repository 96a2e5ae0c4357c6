//! Linear codes over `Z_{2^m}`: canonical generator matrices, size,
//! membership, enumeration, duals, classification and span augmentation.
//!
//! # Canonical form
//!
//! Generators are kept in Howell normal form: pivot columns strictly
//! increase, each pivot entry is a power of two `2^d` (`0 <= d < m`),
//! entries above a pivot are reduced modulo that pivot, and the row list is
//! span-saturated (for each pivot row `r` with pivot `2^d`, the shifted row
//! `2^(m-d) * r` lies in the span of the later rows). Saturation is what
//! makes membership decidable by plain back-substitution over a chain ring,
//! and the form is unique for a given row span, so code equality is row
//! list equality. `|C| = prod_i 2^(m - d_i)`.

use crate::exec;
use crate::zring::{RingParams, RingVector};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Default cap on how many codewords an enumeration may produce.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 24;

/// Outcome of self-duality classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TypeVerdict {
    NotSelfDual,
    /// Self-dual; some codeword has Euclidean weight not divisible by `2^(m+1)`.
    TypeI,
    /// Self-dual; every Euclidean weight is divisible by `2^(m+1)`.
    TypeII,
}

impl std::fmt::Display for TypeVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TypeVerdict::NotSelfDual => write!(f, "NotSelfDual"),
            TypeVerdict::TypeI => write!(f, "TypeI"),
            TypeVerdict::TypeII => write!(f, "TypeII"),
        }
    }
}

/// A linear code of length `n` over `Z_{2^m}`, held in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    params: RingParams,
    length: usize,
    rows: Vec<RingVector>,
    /// `(pivot column, d)` per row; the pivot entry is `2^d`.
    pivots: Vec<(usize, u32)>,
}

fn valuation(x: u64, m: u32) -> u32 {
    debug_assert!(x != 0);
    x.trailing_zeros().min(m)
}

/// Inverse of an odd unit modulo `2^m` by Newton iteration.
fn inv_odd(u: u64, params: RingParams) -> u64 {
    debug_assert!(u % 2 == 1);
    let mut inv: u64 = 1;
    for _ in 0..6 {
        // x := x (2 - u x), doubling correct bits each round (2^64 covered).
        inv = inv.wrapping_mul(2u64.wrapping_sub(u.wrapping_mul(inv)));
    }
    params.reduce(inv as i128)
}

/// Row operations on raw component slices.
fn row_sub_scaled(target: &mut [u64], source: &[u64], q: u64, params: RingParams) {
    for (t, &s) in target.iter_mut().zip(source) {
        *t = params.reduce(*t as i128 - q as i128 * s as i128);
    }
}

fn row_scale(row: &mut [u64], c: u64, params: RingParams) {
    for t in row.iter_mut() {
        *t = params.reduce(*t as i128 * c as i128);
    }
}

/// Howell normal form of the span of `rows`.
fn howell(params: RingParams, length: usize, rows: &[RingVector]) -> Vec<(usize, u32, Vec<u64>)> {
    let m = params.m();
    let mut pool: Vec<Vec<u64>> = rows
        .iter()
        .filter(|r| !r.is_zero())
        .map(|r| r.components().to_vec())
        .collect();
    let mut placed: Vec<(usize, u32, Vec<u64>)> = Vec::new();

    for col in 0..length {
        // Pool rows are zero in every column before `col`.
        let best = pool
            .iter()
            .enumerate()
            .filter(|(_, r)| r[col] != 0)
            .min_by_key(|(_, r)| valuation(r[col], m))
            .map(|(i, _)| i);
        let Some(idx) = best else { continue };
        let mut pivot_row = pool.swap_remove(idx);

        let d = valuation(pivot_row[col], m);
        let unit = pivot_row[col] >> d;
        if unit != 1 {
            row_scale(&mut pivot_row, inv_odd(unit, params), params);
        }
        debug_assert_eq!(pivot_row[col], 1 << d);

        // The pivot has minimal valuation, so every other entry in this
        // column is an exact multiple of it.
        pool.retain_mut(|row| {
            if row[col] != 0 {
                let q = row[col] >> d;
                row_sub_scaled(row, &pivot_row, q, params);
            }
            row.iter().any(|&c| c != 0)
        });

        // Span saturation: 2^(m-d) * pivot_row vanishes at `col` but may be
        // nonzero later; it must be representable by later pivot rows.
        if d > 0 {
            let mut shifted = pivot_row.clone();
            row_scale(&mut shifted, 1 << (m - d), params);
            if shifted.iter().any(|&c| c != 0) {
                pool.push(shifted);
            }
        }

        placed.push((col, d, pivot_row));
    }
    debug_assert!(pool.iter().all(|r| r.iter().all(|&c| c == 0)));

    // Reduce entries above each pivot modulo the pivot.
    for j in 0..placed.len() {
        let (col_j, d_j, row_j) = placed[j].clone();
        for above in placed.iter_mut().take(j) {
            let q = above.2[col_j] >> d_j;
            if q != 0 {
                row_sub_scaled(&mut above.2, &row_j, q, params);
            }
        }
    }
    placed
}

/// Canonicalizes a raw generator list into the unique Howell form spanning
/// the same subgroup. An empty list yields the zero code.
pub fn canonicalize(
    params: RingParams,
    length: usize,
    raw_generators: &[RingVector],
) -> Result<LinearCode> {
    if length == 0 {
        return Err(Error::Domain("code length must be >= 1".into()));
    }
    for g in raw_generators {
        if g.params() != params || g.len() != length {
            return Err(Error::DimensionMismatch {
                context: "canonicalize",
                left: format!("m={}, n={length}", params.m()),
                right: format!("m={}, n={}", g.params().m(), g.len()),
            });
        }
    }
    let placed = howell(params, length, raw_generators);
    let mut rows = Vec::with_capacity(placed.len());
    let mut pivots = Vec::with_capacity(placed.len());
    for (col, d, comps) in placed {
        pivots.push((col, d));
        rows.push(RingVector::new(params, comps.iter().map(|&c| c as i64))?);
    }
    Ok(LinearCode {
        params,
        length,
        rows,
        pivots,
    })
}

impl LinearCode {
    pub fn zero(params: RingParams, length: usize) -> Self {
        LinearCode {
            params,
            length,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// The full ambient space `Z_{2^m}^n`.
    pub fn full(params: RingParams, length: usize) -> Self {
        let rows = (0..length)
            .map(|j| {
                let mut comps = vec![0i64; length];
                comps[j] = 1;
                RingVector::new(params, comps).unwrap()
            })
            .collect();
        LinearCode {
            params,
            length,
            rows,
            pivots: (0..length).map(|j| (j, 0)).collect(),
        }
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn generators(&self) -> &[RingVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }

    /// `e` with `|C| = 2^e`.
    pub fn size_exponent(&self) -> u32 {
        let m = self.params.m();
        self.pivots.iter().map(|&(_, d)| m - d).sum()
    }

    /// `|C|` as an exact integer.
    pub fn size(&self) -> u128 {
        1u128 << self.size_exponent()
    }

    fn check_vector(&self, v: &RingVector, context: &'static str) -> Result<()> {
        if v.params() != self.params || v.len() != self.length {
            return Err(Error::DimensionMismatch {
                context,
                left: format!("m={}, n={}", self.params.m(), self.length),
                right: format!("m={}, n={}", v.params().m(), v.len()),
            });
        }
        Ok(())
    }

    /// Membership by back-substitution against the canonical form.
    pub fn contains(&self, v: &RingVector) -> Result<bool> {
        self.check_vector(v, "membership")?;
        let mut w = v.components().to_vec();
        for (row, &(col, d)) in self.rows.iter().zip(&self.pivots) {
            let e = w[col];
            if e == 0 {
                continue;
            }
            if e & ((1 << d) - 1) != 0 {
                return Ok(false);
            }
            row_sub_scaled(&mut w, row.components(), e >> d, self.params);
        }
        Ok(w.iter().all(|&c| c == 0))
    }

    /// Deterministic codeword stream: a mixed-radix counter over the
    /// canonical generators, last generator cycling fastest.
    pub fn enumerate(&self, cap: u64) -> Result<CodewordIter> {
        if self.size_exponent() >= 64 || self.size() > cap as u128 {
            return Err(Error::EnumerationTooLarge {
                size: self.size(),
                cap,
            });
        }
        Ok(CodewordIter::new(self))
    }

    /// Collects the full codeword list (respecting `cap`).
    pub fn codewords(&self, cap: u64) -> Result<Vec<RingVector>> {
        Ok(self.enumerate(cap)?.collect())
    }

    /// The dual code, computed by solving the homogeneous system over
    /// `Z_{2^m}`: howellize `[G^T | I_n]` and keep the rows whose first
    /// block vanishes.
    pub fn dual(&self) -> LinearCode {
        let r = self.rows.len();
        let n = self.length;
        let aug: Vec<RingVector> = (0..n)
            .map(|c| {
                let mut comps = vec![0i64; r + n];
                for (i, row) in self.rows.iter().enumerate() {
                    comps[i] = row.component(c) as i64;
                }
                comps[r + c] = 1;
                RingVector::new(self.params, comps).unwrap()
            })
            .collect();
        let placed = howell(self.params, r + n, &aug);
        let kernel: Vec<RingVector> = placed
            .into_iter()
            .filter(|(col, _, _)| *col >= r)
            .map(|(_, _, comps)| {
                RingVector::new(self.params, comps[r..].iter().map(|&c| c as i64)).unwrap()
            })
            .collect();
        canonicalize(self.params, n, &kernel).expect("kernel rows are well-formed")
    }

    /// True iff every pair of generators is orthogonal, i.e. `C` is
    /// self-orthogonal.
    pub fn is_self_orthogonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, u)| {
            self.rows[i..]
                .iter()
                .all(|v| u.dot(v).expect("same code") == 0)
        })
    }

    /// Self-duality without computing the dual: self-orthogonality plus the
    /// size law `|C|^2 = 2^(mn)`.
    pub fn is_self_dual(&self) -> bool {
        2 * self.size_exponent() == self.params.m() * self.length as u32
            && self.is_self_orthogonal()
    }

    /// Type I / Type II classification. Self-dual codes of odd `mn` do not
    /// exist, so odd `mn` short-circuits to `NotSelfDual`.
    pub fn classify(&self, cap: u64) -> Result<TypeVerdict> {
        let mn = self.params.m() as u64 * self.length as u64;
        if mn % 2 == 1 || !self.is_self_dual() {
            return Ok(TypeVerdict::NotSelfDual);
        }
        let doubled = 2 * self.params.modulus();
        for c in self.enumerate(cap)? {
            if c.euclidean_weight() % doubled != 0 {
                return Ok(TypeVerdict::TypeI);
            }
        }
        Ok(TypeVerdict::TypeII)
    }

    /// Canonical code spanning `C` together with `extra`.
    pub fn augment(&self, extra: &[RingVector]) -> Result<LinearCode> {
        for v in extra {
            self.check_vector(v, "augment")?;
        }
        let mut rows = self.rows.clone();
        rows.extend_from_slice(extra);
        canonicalize(self.params, self.length, &rows)
    }

    /// Euclidean weight histogram over all codewords.
    pub fn weight_histogram(&self, cap: u64) -> Result<std::collections::BTreeMap<u64, u64>> {
        let words = self.codewords(cap)?;
        Ok(exec::fold_items(
            &words,
            std::collections::BTreeMap::new,
            |acc, w| *acc.entry(w.euclidean_weight()).or_insert(0) += 1,
            |acc, part| {
                for (k, v) in part {
                    *acc.entry(k).or_insert(0) += v;
                }
            },
        ))
    }
}

/// Iterator over all codewords in deterministic order.
pub struct CodewordIter {
    rows: Vec<RingVector>,
    radices: Vec<u64>,
    odometer: Vec<u64>,
    /// `partial[i]` = sum of the first `i` scaled generators.
    partial: Vec<RingVector>,
    exhausted: bool,
}

impl CodewordIter {
    fn new(code: &LinearCode) -> Self {
        let m = code.params.m();
        let radices: Vec<u64> = code.pivots.iter().map(|&(_, d)| 1 << (m - d)).collect();
        let zero = RingVector::zero(code.params, code.length);
        let partial = vec![zero; code.rows.len() + 1];
        CodewordIter {
            rows: code.rows.clone(),
            radices,
            odometer: vec![0; code.rows.len()],
            partial,
            exhausted: false,
        }
    }
}

impl Iterator for CodewordIter {
    type Item = RingVector;

    fn next(&mut self) -> Option<RingVector> {
        if self.exhausted {
            return None;
        }
        let r = self.rows.len();
        let out = self.partial[r].clone();

        // Advance the odometer, last digit fastest.
        let mut pos = r;
        loop {
            if pos == 0 {
                self.exhausted = true;
                return Some(out);
            }
            pos -= 1;
            if self.odometer[pos] + 1 < self.radices[pos] {
                self.odometer[pos] += 1;
                self.partial[pos + 1] = self.partial[pos + 1]
                    .add(&self.rows[pos])
                    .expect("same code");
                break;
            }
            self.odometer[pos] = 0;
        }
        for t in pos + 1..r {
            self.partial[t + 1] = self.partial[t].clone();
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(m: u32) -> RingParams {
        RingParams::new(m).unwrap()
    }

    fn rv(m: u32, comps: &[i64]) -> RingVector {
        RingVector::new(params(m), comps.iter().copied()).unwrap()
    }

    fn code(m: u32, rows: &[&[i64]]) -> LinearCode {
        let n = rows.first().map(|r| r.len()).unwrap_or(1);
        let rows: Vec<RingVector> = rows.iter().map(|r| rv(m, r)).collect();
        canonicalize(params(m), n, &rows).unwrap()
    }

    /// Independent oracle: the span as an explicit set, by repeated closure.
    fn span_set(m: u32, n: usize, rows: &[&[i64]]) -> std::collections::BTreeSet<RingVector> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(RingVector::zero(params(m), n));
        loop {
            let mut grew = false;
            let snapshot: Vec<RingVector> = set.iter().cloned().collect();
            for base in &snapshot {
                for row in rows {
                    let next = base.add(&rv(m, row)).unwrap();
                    if set.insert(next) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    }

    #[test]
    fn canonicalize_examples() {
        let c = code(2, &[&[2, 0], &[0, 2], &[2, 2]]);
        assert_eq!(c.generators(), &[rv(2, &[2, 0]), rv(2, &[0, 2])]);
        assert_eq!(c.size(), 4);

        let c = code(1, &[&[1, 1]]);
        assert_eq!(c.generators(), &[rv(1, &[1, 1])]);
        assert_eq!(c.size(), 2);

        let c = code(2, &[&[0, 0], &[0, 0]]);
        assert_eq!(c.generators().len(), 0);
        assert_eq!(c.size(), 1);
    }

    #[test]
    fn canonicalize_saturates_span() {
        // span{(2,1)} in Z_4^2 is cyclic of order 4; membership of 2*(2,1)
        // requires the saturation row.
        let c = code(2, &[&[2, 1]]);
        assert_eq!(c.size(), 4);
        assert!(c.contains(&rv(2, &[0, 2])).unwrap());
        assert!(c.contains(&rv(2, &[2, 3])).unwrap());
        assert!(!c.contains(&rv(2, &[1, 0])).unwrap());
    }

    #[test]
    fn canonicalize_idempotent() {
        let c = code(3, &[&[2, 4, 6], &[4, 0, 4], &[1, 3, 5]]);
        let again = canonicalize(c.params(), c.length(), c.generators()).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn enumerate_examples() {
        let c = code(1, &[&[1, 1]]);
        let words: Vec<_> = c.codewords(DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(words, vec![rv(1, &[0, 0]), rv(1, &[1, 1])]);

        let c = code(2, &[&[2, 0], &[0, 2]]);
        let words = c.codewords(DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(words.len(), 4);
        let set: std::collections::BTreeSet<_> = words.into_iter().collect();
        assert_eq!(set, span_set(2, 2, &[&[2, 0], &[0, 2]]));

        let z = LinearCode::zero(params(2), 3);
        assert_eq!(
            z.codewords(DEFAULT_ENUM_CAP).unwrap(),
            vec![rv(2, &[0, 0, 0])]
        );
    }

    #[test]
    fn enumerate_cap() {
        let c = LinearCode::full(params(2), 8); // 4^8 = 65536 codewords
        assert!(matches!(
            c.enumerate(1000),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    /// Brute-force dual over the whole ambient space.
    fn dual_brute(c: &LinearCode) -> Vec<RingVector> {
        let q = c.params().modulus();
        let n = c.length();
        let total = (q as u128).pow(n as u32);
        let mut out = Vec::new();
        for idx in 0..total {
            let mut comps = Vec::with_capacity(n);
            let mut rest = idx;
            for _ in 0..n {
                comps.push((rest % q as u128) as i64);
                rest /= q as u128;
            }
            let v = RingVector::new(c.params(), comps).unwrap();
            if c.generators().iter().all(|g| g.dot(&v).unwrap() == 0) {
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn dual_examples() {
        let c = code(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(c.dual(), c); // self-dual

        let z = LinearCode::zero(params(2), 2);
        assert_eq!(z.dual(), LinearCode::full(params(2), 2));

        let c = code(1, &[&[1, 1]]);
        assert_eq!(c.dual(), c);
    }

    #[test]
    fn dual_matches_brute_force() {
        let cases: Vec<LinearCode> = vec![
            code(2, &[&[2, 1]]),
            code(2, &[&[1, 2, 3]]),
            code(3, &[&[2, 4], &[4, 0]]),
            code(3, &[&[1, 3, 5, 7]]),
            code(1, &[&[1, 0, 1], &[0, 1, 1]]),
        ];
        for c in cases {
            let brute = canonicalize(c.params(), c.length(), &dual_brute(&c)).unwrap();
            assert_eq!(c.dual(), brute, "dual mismatch for {:?}", c.generators());
        }
    }

    #[test]
    fn contains_examples() {
        let c = code(2, &[&[2, 0], &[0, 2]]);
        assert!(c.contains(&rv(2, &[2, 2])).unwrap());
        assert!(!c.contains(&rv(2, &[1, 0])).unwrap());
        assert!(c.contains(&RingVector::zero(params(2), 2)).unwrap());
        assert!(c.contains(&rv(3, &[2, 2])).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            code(1, &[&[1, 1]]).classify(DEFAULT_ENUM_CAP).unwrap(),
            TypeVerdict::TypeI
        );
        assert_eq!(
            code(2, &[&[2]]).classify(DEFAULT_ENUM_CAP).unwrap(),
            TypeVerdict::TypeI
        );
        assert_eq!(
            code(1, &[&[1, 0]]).classify(DEFAULT_ENUM_CAP).unwrap(),
            TypeVerdict::NotSelfDual
        );
        // Extended-Hamming-style: doubly even, self-dual.
        let e8 = code(
            1,
            &[
                &[1, 1, 1, 1, 0, 0, 0, 0],
                &[0, 0, 1, 1, 1, 1, 0, 0],
                &[0, 0, 0, 0, 1, 1, 1, 1],
                &[0, 1, 0, 1, 0, 1, 0, 1],
            ],
        );
        assert_eq!(e8.classify(DEFAULT_ENUM_CAP).unwrap(), TypeVerdict::TypeII);
    }

    /// classify agrees with a from-scratch oracle on small codes.
    #[test]
    fn classify_matches_oracle() {
        let cases: Vec<LinearCode> = vec![
            code(1, &[&[1, 1]]),
            code(2, &[&[2]]),
            code(2, &[&[2, 0], &[0, 2]]),
            code(2, &[&[1, 1, 1, 1], &[0, 2, 0, 2], &[0, 0, 2, 2]]),
            code(3, &[&[2, 2], &[4, 0]]),
            code(2, &[&[2, 1]]),
        ];
        for c in cases {
            let words = c.codewords(DEFAULT_ENUM_CAP).unwrap();
            let dual_words: std::collections::BTreeSet<_> = dual_brute(&c).into_iter().collect();
            let words_set: std::collections::BTreeSet<_> = words.iter().cloned().collect();
            let expected = if words_set != dual_words {
                TypeVerdict::NotSelfDual
            } else if words
                .iter()
                .all(|w| w.euclidean_weight() % (2 * c.params().modulus()) == 0)
            {
                TypeVerdict::TypeII
            } else {
                TypeVerdict::TypeI
            };
            assert_eq!(c.classify(DEFAULT_ENUM_CAP).unwrap(), expected);
        }
    }

    #[test]
    fn augment_examples() {
        let z = LinearCode::zero(params(1), 2);
        let c = z.augment(&[rv(1, &[1, 1])]).unwrap();
        assert_eq!(c, code(1, &[&[1, 1]]));

        let c2 = c.augment(&[rv(1, &[1, 1])]).unwrap();
        assert_eq!(c2, c);

        let c3 = code(2, &[&[2, 0]]).augment(&[rv(2, &[0, 2])]).unwrap();
        assert_eq!(c3.size(), 4);
        assert_eq!(c3, code(2, &[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn size_law_exhaustive_small() {
        // size_exponent(C) + size_exponent(dual(C)) = m*n, exhaustively
        // over every single-generator code with m <= 3, n <= 4; and no
        // self-dual verdict ever occurs with mn odd.
        for m in 1..=3u32 {
            let p = params(m);
            let q = p.modulus();
            for n in 1..=4usize {
                let total = (q as u128).pow(n as u32);
                for g1 in 0..total {
                    let mut comps = Vec::with_capacity(n);
                    let mut rest = g1;
                    for _ in 0..n {
                        comps.push((rest % q as u128) as i64);
                        rest /= q as u128;
                    }
                    let c = canonicalize(p, n, &[RingVector::new(p, comps).unwrap()]).unwrap();
                    let d = c.dual();
                    assert_eq!(c.size_exponent() + d.size_exponent(), m * n as u32);
                    assert_eq!(d.dual(), c);
                    if (m as usize * n) % 2 == 1 {
                        assert_eq!(
                            c.classify(DEFAULT_ENUM_CAP).unwrap(),
                            TypeVerdict::NotSelfDual
                        );
                    }
                }
            }
        }
    }

    proptest! {
        // Canonical form is invariant under generator shuffles and under
        // appending random combinations of existing generators.
        #[test]
        fn canonical_form_is_span_invariant(
            m in 1u32..=3,
            n in 1usize..=5,
            seed_rows in proptest::collection::vec(proptest::collection::vec(0i64..8, 5), 1..4),
            coeffs in proptest::collection::vec(0u64..8, 2),
            order in 0usize..6,
        ) {
            let p = params(m);
            let rows: Vec<RingVector> = seed_rows
                .iter()
                .map(|r| RingVector::new(p, r[..n].iter().copied()).unwrap())
                .collect();
            let c = canonicalize(p, n, &rows).unwrap();

            let mut shuffled = rows.clone();
            let rot = order % shuffled.len().max(1);
            shuffled.rotate_left(rot);
            let mut combo = RingVector::zero(p, n);
            for (row, &k) in shuffled.iter().zip(&coeffs) {
                combo = combo.add(&row.scale(k)).unwrap();
            }
            shuffled.push(combo);
            let c2 = canonicalize(p, n, &shuffled).unwrap();
            prop_assert_eq!(c, c2);
        }

        #[test]
        fn dot_is_symmetric_bilinear(
            m in 1u32..=4,
            a in proptest::collection::vec(0i64..16, 4),
            b in proptest::collection::vec(0i64..16, 4),
            c in proptest::collection::vec(0i64..16, 4),
        ) {
            let p = params(m);
            let u = RingVector::new(p, a).unwrap();
            let v = RingVector::new(p, b).unwrap();
            let w = RingVector::new(p, c).unwrap();
            prop_assert_eq!(u.dot(&v).unwrap(), v.dot(&u).unwrap());
            let lhs = u.add(&w).unwrap().dot(&v).unwrap();
            let rhs = p.reduce(u.dot(&v).unwrap() as i128 + w.dot(&v).unwrap() as i128);
            prop_assert_eq!(lhs, rhs);
        }

        // Membership agrees with enumeration.
        #[test]
        fn contains_matches_enumeration(
            m in 1u32..=2,
            row1 in proptest::collection::vec(0i64..4, 3),
            row2 in proptest::collection::vec(0i64..4, 3),
            probe in proptest::collection::vec(0i64..4, 3),
        ) {
            let p = params(m);
            let c = canonicalize(p, 3, &[
                RingVector::new(p, row1).unwrap(),
                RingVector::new(p, row2).unwrap(),
            ]).unwrap();
            let v = RingVector::new(p, probe).unwrap();
            let words: std::collections::BTreeSet<_> =
                c.codewords(DEFAULT_ENUM_CAP).unwrap().into_iter().collect();
            prop_assert_eq!(c.contains(&v).unwrap(), words.contains(&v));
            prop_assert_eq!(words.len() as u128, c.size());
        }
    }
}
