//! Complete weight enumerators: direct enumeration and the closed-form
//! coset sums for the extension constructions, with exact term-by-term
//! comparison between the two routes.
//!
//! An enumerator is a sparse multivariate polynomial in `X_0..X_{2^m-1}`,
//! keyed by the dense exponent tuple `(N_0, ..., N_{2^m-1})`. Dense keys
//! make equality exact and the JSON output canonical.

use crate::builder::{eta, CaseId, ConstructionRecipe, RecipeMode, Variant};
use crate::exec;
use crate::shadow::CosetDecomposition;
use crate::zring::{RingParams, RingVector};
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

/// Sparse multivariate polynomial: exponent tuple -> count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumerator {
    params: RingParams,
    length: usize,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl WeightEnumerator {
    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, u64> {
        &self.terms
    }

    /// Substituting `X_mu := 1` everywhere: the number of enumerated
    /// vectors.
    pub fn evaluate_at_one(&self) -> u128 {
        self.terms.values().map(|&c| c as u128).sum()
    }

    /// Every exponent tuple sums to the code length.
    pub fn is_homogeneous(&self) -> bool {
        self.terms
            .keys()
            .all(|exp| exp.iter().map(|&e| e as usize).sum::<usize>() == self.length)
    }

    /// Invariance under `X_mu <-> X_{2^m - mu}` (negation of the code).
    pub fn is_negation_symmetric(&self) -> bool {
        let q = self.params.modulus() as usize;
        self.terms.iter().all(|(exp, &count)| {
            let mut flipped = vec![0u32; q];
            flipped[0] = exp[0];
            for mu in 1..q {
                flipped[mu] = exp[q - mu];
            }
            self.terms.get(&flipped) == Some(&count)
        })
    }

    /// Stable JSON form: `{"m":…, "n":…, "terms":[{"exp":[…], "count":…}]}`
    /// with terms sorted lexicographically by exponent tuple.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "m": self.params.m(),
            "n": self.length,
            "terms": self.terms.iter().map(|(exp, count)| {
                serde_json::json!({"exp": exp, "count": count})
            }).collect::<Vec<_>>(),
        })
    }
}

fn exponent_tuple(params: RingParams, v: &RingVector) -> Vec<u32> {
    let mut exp = vec![0u32; params.modulus() as usize];
    for &c in v.components() {
        exp[c as usize] += 1;
    }
    exp
}

/// Exact tally of component-value multiplicities over a set of vectors.
pub fn cwe_direct<'a, I>(params: RingParams, length: usize, vectors: I) -> Result<WeightEnumerator>
where
    I: IntoIterator<Item = &'a RingVector>,
{
    let vectors: Vec<&RingVector> = vectors.into_iter().collect();
    for v in &vectors {
        if v.params() != params || v.len() != length {
            return Err(Error::DimensionMismatch {
                context: "cwe_direct",
                left: format!("m={}, n={length}", params.m()),
                right: format!("m={}, n={}", v.params().m(), v.len()),
            });
        }
    }
    let terms = exec::fold_items(
        &vectors,
        BTreeMap::new,
        |acc: &mut BTreeMap<Vec<u32>, u64>, v| {
            *acc.entry(exponent_tuple(params, v)).or_insert(0) += 1;
        },
        |acc, part| {
            for (k, c) in part {
                *acc.entry(k).or_insert(0) += c;
            }
        },
    );
    Ok(WeightEnumerator {
        params,
        length,
        terms,
    })
}

/// Which monomial convention the coset-sum evaluator uses.
///
/// `Printed` follows the standard per-case monomial tables verbatim;
/// `Derived` reads the monomial subscripts off the actual appended-block
/// coordinates of `i v1 + j v2 + sum_p k_p w_p`. The two coincide for
/// every case except one (the flagged override below), which is exactly the
/// discrepancy the cross-validation is meant to surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormulaSource {
    Printed,
    Derived,
}

/// The single case where the standard monomial table disagrees with the
/// constructed vectors: generalized shadow with `s.s = 2^(m-1)`,
/// `n = 3 (mod 4)`, variant (a), even `m` (the only parity possible at odd
/// length). The printed subscripts scale the `k_2, k_3` contributions by
/// `2^(m/2-1)` where the vectors have `2^(m/2)`; the sibling (b) case
/// prints `2^(m/2)`. Returns the appended coordinates whose printed scale
/// is half the vector coordinate.
fn printed_override(case: CaseId, m: u32) -> Option<&'static [usize]> {
    if case.mode == RecipeMode::GenHalf
        && case.n_mod4 == 3
        && case.variant == Variant::A
        && m.is_multiple_of(2)
    {
        return Some(&[2, 3]);
    }
    None
}

/// Evaluates the closed-form coset sum for a construction: the sum over
/// index tuples `1 <= i <= o(v1)`, `1 <= j <= o(v2)`, `1 <= k_p <= o(w_p)`
/// of the appended-block monomial times `cwe` of the coset `C_eta(i,j)`.
pub fn cwe_formula(
    dec: &CosetDecomposition,
    recipe: &ConstructionRecipe,
    source: FormulaSource,
    cap: u64,
) -> Result<WeightEnumerator> {
    let params = dec.params();
    let n = dec.length();
    let k = recipe.appended;
    let q = params.modulus() as usize;

    // One reusable cwe per coset.
    let coset_cwes: Vec<WeightEnumerator> = (0..4)
        .map(|i| {
            let coset = dec.coset(i, cap)?;
            cwe_direct(params, n, coset.iter())
        })
        .collect::<Result<Vec<_>>>()?;

    // Index ranges: the printed sums run over exactly the additive orders.
    let o1 = recipe.v1.additive_order();
    let o2 = recipe.v2.additive_order();
    let w_orders: Vec<u64> = recipe.ws.iter().map(|w| w.additive_order()).collect();

    let tuple_count: u128 = w_orders
        .iter()
        .fold(o1 as u128 * o2 as u128, |acc, &o| acc * o as u128);
    if tuple_count > cap as u128 {
        return Err(Error::EnumerationTooLarge {
            size: tuple_count,
            cap,
        });
    }

    // w vectors restricted to the appended block, with the printed scale
    // override applied where the printed table deviates.
    let halved: &[usize] = match source {
        FormulaSource::Printed => printed_override(recipe.case, params.m()).unwrap_or(&[]),
        FormulaSource::Derived => &[],
    };
    let w_heads: Vec<RingVector> = recipe
        .ws
        .iter()
        .map(|w| {
            let comps: Vec<i64> = w.components()[..k]
                .iter()
                .enumerate()
                .map(|(c, &x)| {
                    if halved.contains(&c) {
                        (x / 2) as i64
                    } else {
                        x as i64
                    }
                })
                .collect();
            RingVector::new(params, comps)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut terms: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    let radices: Vec<u64> = [o1, o2].into_iter().chain(w_orders).collect();
    let mut odometer = vec![1u64; radices.len()];
    loop {
        let (i, j) = (odometer[0], odometer[1]);

        // Appended-block coordinates of i v1 + j v2 + sum k_p w_p.
        let mut head = recipe.v1.scale(i).add(&recipe.v2.scale(j))?;
        for (p, w_head) in w_heads.iter().enumerate() {
            head = head.add(&w_head.scale(odometer[2 + p]))?;
        }

        let mut monomial = vec![0u32; q];
        for &c in head.components() {
            monomial[c as usize] += 1;
        }

        let coset_idx = eta(i, j, dec.glue()) as usize;
        for (exp, &count) in coset_cwes[coset_idx].terms() {
            let mut combined = monomial.clone();
            for (slot, &e) in combined.iter_mut().zip(exp) {
                *slot += e;
            }
            *terms.entry(combined).or_insert(0) += count;
        }

        // Advance the mixed-radix odometer (digits run 1..=radix).
        let mut pos = odometer.len();
        loop {
            if pos == 0 {
                return Ok(WeightEnumerator {
                    params,
                    length: n + k,
                    terms,
                });
            }
            pos -= 1;
            if odometer[pos] < radices[pos] {
                odometer[pos] += 1;
                break;
            }
            odometer[pos] = 1;
        }
    }
}

/// Outcome of comparing two enumerators term by term.
#[derive(Clone, Debug, Serialize)]
pub struct CweComparison {
    pub equal: bool,
    /// Mismatched terms as (exponent tuple, left count, right count),
    /// zero standing for an absent term.
    pub differences: Vec<(Vec<u32>, u64, u64)>,
}

/// Term-by-term equality with a symmetric difference on mismatch.
pub fn cwe_equal(a: &WeightEnumerator, b: &WeightEnumerator) -> Result<CweComparison> {
    if a.params != b.params || a.length != b.length {
        return Err(Error::DimensionMismatch {
            context: "cwe_equal",
            left: format!("m={}, n={}", a.params.m(), a.length),
            right: format!("m={}, n={}", b.params.m(), b.length),
        });
    }
    let mut differences = Vec::new();
    for (exp, &ca) in &a.terms {
        let cb = b.terms.get(exp).copied().unwrap_or(0);
        if ca != cb {
            differences.push((exp.clone(), ca, cb));
        }
    }
    for (exp, &cb) in &b.terms {
        if !a.terms.contains_key(exp) {
            differences.push((exp.clone(), 0, cb));
        }
    }
    differences.sort();
    Ok(CweComparison {
        equal: differences.is_empty(),
        differences,
    })
}
