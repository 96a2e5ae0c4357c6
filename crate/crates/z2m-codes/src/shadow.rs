//! Shadows of Type I codes and generalized shadows of self-dual codes.
//!
//! Both constructions produce the same shape of data: an index-2 subcode
//! `C0` of `C`, the dual `C0^perp` in which `C0` has index 4, coset
//! representatives `t` (in `C \ C0`) and `s` (in `C0^perp \ C`), and the
//! glue group `C0^perp / C0`, which is either the Klein four-group or
//! cyclic of order 4. The shadow is `C1 ∪ C3 = C0^perp \ C`.

use crate::exec;
use crate::lincode::{canonicalize, LinearCode, TypeVerdict};
use crate::zring::{RingParams, RingVector};
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GlueKind {
    Klein4,
    Cyclic4,
}

impl std::fmt::Display for GlueKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GlueKind::Klein4 => write!(f, "Klein4"),
            GlueKind::Cyclic4 => write!(f, "Cyclic4"),
        }
    }
}

/// Which subcode `C0` to use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShadowMode {
    /// `C0` = codewords of Euclidean weight divisible by `2^(m+1)`;
    /// requires a Type I code.
    TypeIShadow,
    /// `C0 = ker(psi_s)` for the given non-codeword `s`; requires a
    /// self-dual code and `Im(psi_s) = {0, 2^(m-1)}`.
    Generalized(RingVector),
}

/// `C0` plus representatives and the four cosets of `C0` in `C0^perp`.
#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    code: LinearCode,
    subcode: LinearCode,
    dual0: LinearCode,
    t: RingVector,
    s: RingVector,
    glue: GlueKind,
    generalized: bool,
}

/// Builds the kernel of an index-2 character `phi` on the code from
/// generator values: generators with `phi = 1` get paired off against the
/// first such generator.
fn index2_kernel(code: &LinearCode, phi: impl Fn(&RingVector) -> bool) -> Result<LinearCode> {
    let odd: Vec<usize> = (0..code.generators().len())
        .filter(|&i| phi(&code.generators()[i]))
        .collect();
    let Some(&first) = odd.first() else {
        return Ok(code.clone()); // phi vanishes on C
    };
    let g0 = &code.generators()[first];
    let mut rows: Vec<RingVector> = Vec::with_capacity(code.generators().len() + 1);
    for (i, g) in code.generators().iter().enumerate() {
        if i == first {
            continue;
        }
        if phi(g) {
            rows.push(g.add(g0)?);
        } else {
            rows.push(g.clone());
        }
    }
    rows.push(g0.scale(2));
    canonicalize(code.params(), code.length(), &rows)
}

/// The Euclidean kernel `C0 = {c in C : wt_E(c) = 0 mod 2^(m+1)}` of a
/// Type I code. For self-orthogonal codes the indicator
/// `wt_E(c)/2^m mod 2` is additive, so the kernel comes straight from the
/// generators.
pub fn euclidean_kernel(code: &LinearCode, cap: u64) -> Result<LinearCode> {
    let verdict = code.classify(cap)?;
    if verdict != TypeVerdict::TypeI {
        return Err(Error::NotTypeI {
            verdict: verdict.to_string(),
        });
    }
    let doubled = 2 * code.params().modulus();
    let subcode = index2_kernel(code, |g| g.euclidean_weight() % doubled != 0)?;
    debug_assert_eq!(subcode.size_exponent() + 1, code.size_exponent());
    Ok(subcode)
}

/// `ker(psi_s)` for `psi_s(u) = u . s`, requiring `Im(psi_s)` to be exactly
/// `{0, 2^(m-1)}`.
pub fn psi_kernel(code: &LinearCode, s: &RingVector) -> Result<LinearCode> {
    if code.contains(s)? {
        return Err(Error::InvalidShadowVector(format!(
            "s = {s} is a codeword; the generalized shadow needs s outside the code"
        )));
    }
    let params = code.params();
    let half = params.half();
    // The image is the subgroup generated by the values on the generators.
    let min_val = code
        .generators()
        .iter()
        .map(|g| g.dot(s).expect("checked dims"))
        .filter(|&v| v != 0)
        .map(|v| v.trailing_zeros().min(params.m()))
        .min();
    let image_ok = min_val == Some(params.m() - 1);
    if !image_ok {
        let image: Vec<u64> = match min_val {
            None => vec![0],
            Some(v) => (0..params.modulus()).step_by(1usize << v).collect(),
        };
        return Err(Error::ImageShape {
            actual: image,
            half,
        });
    }
    index2_kernel(code, |g| g.dot(s).expect("checked dims") == half)
}

/// Computes the full coset decomposition for either mode. Representatives
/// are the minimal elements (in deterministic enumeration order) of
/// `C \ C0` and, for the Type I shadow, of `C0^perp \ C`.
pub fn decompose(code: &LinearCode, mode: ShadowMode, cap: u64) -> Result<CosetDecomposition> {
    let (subcode, s_given) = match &mode {
        ShadowMode::TypeIShadow => (euclidean_kernel(code, cap)?, None),
        ShadowMode::Generalized(s) => {
            if !code.is_self_dual() {
                return Err(Error::Domain(
                    "generalized shadows require a self-dual code".into(),
                ));
            }
            (psi_kernel(code, s)?, Some(s.clone()))
        }
    };

    let dual0 = subcode.dual();
    if dual0.size_exponent() != subcode.size_exponent() + 2 {
        return Err(Error::Domain(format!(
            "[C0^perp : C0] = 2^{} != 4",
            dual0.size_exponent() - subcode.size_exponent()
        )));
    }

    let t = code
        .enumerate(cap)?
        .find(|w| !subcode.contains(w).expect("same ambient"))
        .ok_or_else(|| Error::Domain("C == C0, no coset representative t".into()))?;
    let s = match s_given {
        Some(s) => s,
        None => dual0
            .enumerate(cap)?
            .find(|w| !code.contains(w).expect("same ambient"))
            .ok_or_else(|| Error::Domain("C0^perp == C, shadow is empty".into()))?,
    };

    // Glue kind, structurally: C1 has order 2 in C0^perp/C0 iff 2s lands
    // in C0; otherwise 2s must land in C2 and the glue group is cyclic.
    let twice_s = s.scale(2);
    let glue = if subcode.contains(&twice_s)? {
        GlueKind::Klein4
    } else if code.contains(&twice_s)? {
        GlueKind::Cyclic4
    } else {
        return Err(Error::Domain(
            "2s lies outside C; the decomposition is not a shadow".into(),
        ));
    };

    Ok(CosetDecomposition {
        code: code.clone(),
        subcode,
        dual0,
        t,
        s,
        glue,
        generalized: matches!(mode, ShadowMode::Generalized(_)),
    })
}

impl CosetDecomposition {
    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn subcode(&self) -> &LinearCode {
        &self.subcode
    }

    pub fn dual0(&self) -> &LinearCode {
        &self.dual0
    }

    pub fn glue(&self) -> GlueKind {
        self.glue
    }

    pub fn is_generalized(&self) -> bool {
        self.generalized
    }

    pub fn params(&self) -> RingParams {
        self.code.params()
    }

    pub fn length(&self) -> usize {
        self.code.length()
    }

    pub fn s(&self) -> &RingVector {
        &self.s
    }

    pub fn t(&self) -> &RingVector {
        &self.t
    }

    /// Representative of coset `i`: `0, s, t, s + t` for `i = 0..4`.
    pub fn representative(&self, i: usize) -> RingVector {
        let zero = RingVector::zero(self.params(), self.length());
        match i {
            0 => zero,
            1 => self.s.clone(),
            2 => self.t.clone(),
            3 => self.s.add(&self.t).expect("same ambient"),
            _ => panic!("coset index out of range"),
        }
    }

    /// All elements of coset `i`, in `C0` enumeration order.
    pub fn coset(&self, i: usize, cap: u64) -> Result<Vec<RingVector>> {
        let rep = self.representative(i);
        Ok(self
            .subcode
            .enumerate(cap)?
            .map(|c| rep.add(&c).expect("same ambient"))
            .collect())
    }

    /// The shadow `C1 ∪ C3`.
    pub fn shadow(&self, cap: u64) -> Result<Vec<RingVector>> {
        let mut out = self.coset(1, cap)?;
        out.extend(self.coset(3, cap)?);
        Ok(out)
    }

    /// Constant dot products between coset representatives, used by the
    /// extension engine: `(s.s, t.s, t.t)` reduced mod `2^m`.
    pub fn rep_dots(&self) -> (u64, u64, u64) {
        (
            self.s.dot(&self.s).expect("same ambient"),
            self.t.dot(&self.s).expect("same ambient"),
            self.t.dot(&self.t).expect("same ambient"),
        )
    }
}

/// One cell of the pairwise coset dot-product table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CellValue {
    Constant(u64),
    Mixed(Vec<u64>),
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityTable {
    /// Computed value of `x . y mod 2^m` per coset pair.
    pub cells: [[CellValue; 4]; 4],
    /// The expected constant per cell.
    pub expected: [[u64; 4]; 4],
    /// Whether the match required the sanctioned `C1 <-> C3` relabel
    /// (replacing `s` by `s + t`).
    pub relabeled: bool,
    pub matches: bool,
}

fn expected_table(dec: &CosetDecomposition) -> Result<[[u64; 4]; 4]> {
    let params = dec.params();
    let h = params.half();
    let n = dec.length();

    // Two patterns cover every even case; the odd case has its own values.
    let pattern_a = [[0, 0, 0, 0], [0, h, h, 0], [0, h, 0, h], [0, 0, h, h]];
    let pattern_b = [[0, 0, 0, 0], [0, 0, h, h], [0, h, 0, h], [0, h, h, 0]];

    if dec.is_generalized() {
        let (ss, _, _) = dec.rep_dots();
        return match ss {
            0 => Ok(pattern_b),
            x if x == h => Ok(pattern_a),
            other => Err(Error::Domain(format!(
                "no orthogonality table for generalized shadow with s.s = {other} (mod 2^m)"
            ))),
        };
    }

    match n % 4 {
        2 => Ok(pattern_a),
        0 => Ok(pattern_b),
        a => {
            // odd n: only possible for even m, so 2^(m-2) is integral
            let quarter = 1i128 << (params.m() - 2);
            let diag = params.reduce(h as i128 - quarter * a as i128);
            let off = params.reduce(-quarter * a as i128);
            Ok([
                [0, 0, 0, 0],
                [0, diag, h, off],
                [0, h, 0, h],
                [0, off, h, diag],
            ])
        }
    }
}

fn swap13<T: Clone>(table: &[[T; 4]; 4]) -> [[T; 4]; 4] {
    let perm = [0usize, 3, 2, 1];
    std::array::from_fn(|i| std::array::from_fn(|j| table[perm[i]][perm[j]].clone()))
}

/// Computes the 4x4 table of pairwise coset dot products and compares it to
/// the expected table for the decomposition's case. A mismatch that
/// disappears under the `C1 <-> C3` relabel is accepted and flagged.
pub fn verify_orthogonality(dec: &CosetDecomposition, cap: u64) -> Result<OrthogonalityTable> {
    let cosets: Vec<Vec<RingVector>> = (0..4)
        .map(|i| dec.coset(i, cap))
        .collect::<Result<Vec<_>>>()?;

    let cells: [[CellValue; 4]; 4] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (x, y) = (&cosets[i], &cosets[j]);
            let values = exec::fold_range(
                x.len() * y.len(),
                BTreeSet::new,
                |set: &mut BTreeSet<u64>, idx| {
                    let a = &x[idx / y.len()];
                    let b = &y[idx % y.len()];
                    set.insert(a.dot(b).expect("same ambient"));
                },
                |set, part| set.extend(part),
            );
            if values.len() == 1 {
                CellValue::Constant(*values.iter().next().unwrap())
            } else {
                CellValue::Mixed(values.into_iter().collect())
            }
        })
    });

    let expected = expected_table(dec)?;
    let matches_exactly = |cells: &[[CellValue; 4]; 4], expected: &[[u64; 4]; 4]| {
        (0..4).all(|i| (0..4).all(|j| cells[i][j] == CellValue::Constant(expected[i][j])))
    };

    if matches_exactly(&cells, &expected) {
        return Ok(OrthogonalityTable {
            cells,
            expected,
            relabeled: false,
            matches: true,
        });
    }
    let swapped = swap13(&cells);
    if matches_exactly(&swapped, &expected) {
        return Ok(OrthogonalityTable {
            cells: swapped,
            expected,
            relabeled: true,
            matches: true,
        });
    }
    Err(Error::TableViolation(format!(
        "computed {cells:?}, expected {expected:?}"
    )))
}

/// Result of the shadow weight congruence check: every shadow vector has
/// `wt_E = 2^(m-2) n (mod 2^(m+1))`. For `m = 1` the statement is read in
/// doubled form, `2 wt_E = n (mod 2^(m+2))`, so that it stays integral.
#[derive(Clone, Debug, Serialize)]
pub struct ShadowWeightReport {
    /// Common residue of (possibly doubled) shadow weights.
    pub residue: u64,
    pub modulus: u64,
    /// True when the `m = 1` doubled interpretation was applied.
    pub doubled: bool,
    pub vectors_checked: u64,
}

pub fn shadow_weight_check(dec: &CosetDecomposition, cap: u64) -> Result<ShadowWeightReport> {
    let params = dec.params();
    let m = params.m();
    let n = dec.length() as u64;
    let (scale, modulus) = if m == 1 {
        (2u64, 1u64 << (m + 2))
    } else {
        (1u64, 1u64 << (m + 1))
    };
    let expected = if m == 1 {
        n % modulus
    } else {
        ((1u64 << (m - 2)) * n) % modulus
    };

    let mut checked = 0;
    for v in dec.shadow(cap)? {
        let got = (scale * v.euclidean_weight()) % modulus;
        if got != expected {
            return Err(Error::LemmaViolation {
                vector: v.to_string(),
                weight: v.euclidean_weight(),
                expected,
                modulus,
            });
        }
        checked += 1;
    }
    Ok(ShadowWeightReport {
        residue: expected,
        modulus,
        doubled: m == 1,
        vectors_checked: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincode::DEFAULT_ENUM_CAP;

    const CAP: u64 = DEFAULT_ENUM_CAP;

    fn params(m: u32) -> RingParams {
        RingParams::new(m).unwrap()
    }

    fn rv(m: u32, comps: &[i64]) -> RingVector {
        RingVector::new(params(m), comps.iter().copied()).unwrap()
    }

    fn code(m: u32, rows: &[&[i64]]) -> LinearCode {
        let n = rows[0].len();
        let rows: Vec<RingVector> = rows.iter().map(|r| rv(m, r)).collect();
        canonicalize(params(m), n, &rows).unwrap()
    }

    #[test]
    fn euclidean_kernel_examples() {
        let c = code(1, &[&[1, 1]]);
        assert_eq!(euclidean_kernel(&c, CAP).unwrap().size(), 1);

        let c = code(2, &[&[2]]);
        assert_eq!(euclidean_kernel(&c, CAP).unwrap().size(), 1);

        let c = code(1, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        let k = euclidean_kernel(&c, CAP).unwrap();
        assert_eq!(k, code(1, &[&[1, 1, 1, 1]]));
    }

    #[test]
    fn euclidean_kernel_matches_enumeration() {
        for c in [
            code(1, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]),
            code(2, &[&[1, 1, 1, 1], &[0, 2, 0, 2], &[0, 0, 2, 2]]),
            code(3, &[&[2, 2], &[4, 0]]),
        ] {
            let k = euclidean_kernel(&c, CAP).unwrap();
            let doubled = 2 * c.params().modulus();
            let brute: Vec<RingVector> = c
                .codewords(CAP)
                .unwrap()
                .into_iter()
                .filter(|w| w.euclidean_weight() % doubled == 0)
                .collect();
            assert_eq!(k, canonicalize(c.params(), c.length(), &brute).unwrap());
        }
    }

    #[test]
    fn euclidean_kernel_rejects_non_type_i() {
        let e8 = code(
            1,
            &[
                &[1, 1, 1, 1, 0, 0, 0, 0],
                &[0, 0, 1, 1, 1, 1, 0, 0],
                &[0, 0, 0, 0, 1, 1, 1, 1],
                &[0, 1, 0, 1, 0, 1, 0, 1],
            ],
        );
        assert!(matches!(
            euclidean_kernel(&e8, CAP),
            Err(Error::NotTypeI { .. })
        ));
        assert!(matches!(
            decompose(&e8, ShadowMode::TypeIShadow, CAP),
            Err(Error::NotTypeI { .. })
        ));
    }

    #[test]
    fn psi_kernel_examples() {
        let c = code(2, &[&[2, 0], &[0, 2]]);

        let k = psi_kernel(&c, &rv(2, &[1, 1])).unwrap();
        assert_eq!(k, code(2, &[&[2, 2]]));

        let k = psi_kernel(&c, &rv(2, &[1, 0])).unwrap();
        assert_eq!(k, code(2, &[&[0, 2]]));

        assert!(matches!(
            psi_kernel(&c, &rv(2, &[2, 0])),
            Err(Error::InvalidShadowVector(_))
        ));
    }

    #[test]
    fn psi_kernel_image_shape() {
        // Over Z_8 with C = <(2,2),(4,0)>, s = (1,0) has psi values
        // {2, 4, ...} generating {0,2,4,6}: wrong image shape.
        let c = code(3, &[&[2, 2], &[4, 0]]);
        match psi_kernel(&c, &rv(3, &[1, 0])) {
            Err(Error::ImageShape { actual, half }) => {
                assert_eq!(half, 4);
                assert_eq!(actual, vec![0, 2, 4, 6]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn decompose_binary_repetition() {
        let c = code(1, &[&[1, 1]]);
        let dec = decompose(&c, ShadowMode::TypeIShadow, CAP).unwrap();
        assert_eq!(dec.subcode().size(), 1);
        assert_eq!(dec.dual0().size(), 4);
        assert_eq!(dec.t(), &rv(1, &[1, 1]));
        assert_eq!(dec.s(), &rv(1, &[0, 1]));
        assert_eq!(dec.glue(), GlueKind::Klein4);
        let mut shadow = dec.shadow(CAP).unwrap();
        shadow.sort();
        assert_eq!(shadow, vec![rv(1, &[0, 1]), rv(1, &[1, 0])]);
    }

    #[test]
    fn decompose_z4_length1() {
        let c = code(2, &[&[2]]);
        let dec = decompose(&c, ShadowMode::TypeIShadow, CAP).unwrap();
        assert_eq!(dec.subcode().size(), 1);
        assert_eq!(dec.t(), &rv(2, &[2]));
        assert_eq!(dec.s(), &rv(2, &[1]));
        assert_eq!(dec.glue(), GlueKind::Cyclic4);
        let mut shadow = dec.shadow(CAP).unwrap();
        shadow.sort();
        assert_eq!(shadow, vec![rv(2, &[1]), rv(2, &[3])]);
    }

    #[test]
    fn coset_partition() {
        for (c, mode) in [
            (code(1, &[&[1, 1]]), ShadowMode::TypeIShadow),
            (code(2, &[&[2, 0], &[0, 2]]), ShadowMode::TypeIShadow),
            (
                code(2, &[&[2, 0], &[0, 2]]),
                ShadowMode::Generalized(rv(2, &[1, 1])),
            ),
            (code(3, &[&[2, 2], &[4, 0]]), ShadowMode::TypeIShadow),
        ] {
            let dec = decompose(&c, mode, CAP).unwrap();
            let mut union = BTreeSet::new();
            for i in 0..4 {
                let coset = dec.coset(i, CAP).unwrap();
                assert_eq!(coset.len() as u128, dec.subcode().size());
                for v in coset {
                    assert!(union.insert(v), "cosets are not disjoint");
                }
            }
            let full: BTreeSet<RingVector> =
                dec.dual0().codewords(CAP).unwrap().into_iter().collect();
            assert_eq!(union, full);
        }
    }

    #[test]
    fn glue_kind_matches_length_parity_for_type_i() {
        for c in [
            code(1, &[&[1, 1]]),
            code(1, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]),
            code(2, &[&[2, 0], &[0, 2]]),
            code(2, &[&[2]]),
            code(2, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]),
            code(3, &[&[2, 2], &[4, 0]]),
        ] {
            let n = c.length();
            let dec = decompose(&c, ShadowMode::TypeIShadow, CAP).unwrap();
            let expected = if n % 2 == 0 {
                GlueKind::Klein4
            } else {
                GlueKind::Cyclic4
            };
            assert_eq!(dec.glue(), expected, "n = {n}");
        }
    }

    #[test]
    fn representative_independence() {
        let c = code(2, &[&[2, 0], &[0, 2]]);
        let dec = decompose(&c, ShadowMode::TypeIShadow, CAP).unwrap();

        // Any other valid s' in C1 and t' in C2 yields the same coset sets.
        let c1: BTreeSet<_> = dec.coset(1, CAP).unwrap().into_iter().collect();
        let c2: BTreeSet<_> = dec.coset(2, CAP).unwrap().into_iter().collect();
        let c3: BTreeSet<_> = dec.coset(3, CAP).unwrap().into_iter().collect();
        for s_alt in &c1 {
            for t_alt in &c2 {
                let c0 = dec.subcode().codewords(CAP).unwrap();
                let coset = |rep: &RingVector| -> BTreeSet<RingVector> {
                    c0.iter().map(|w| rep.add(w).unwrap()).collect()
                };
                assert_eq!(coset(s_alt), c1);
                assert_eq!(coset(t_alt), c2);
                assert_eq!(coset(&s_alt.add(t_alt).unwrap()), c3);
            }
        }
    }

    #[test]
    fn orthogonality_tables() {
        // n = 2 (mod 4)
        let dec = decompose(&code(1, &[&[1, 1]]), ShadowMode::TypeIShadow, CAP).unwrap();
        let table = verify_orthogonality(&dec, CAP).unwrap();
        assert!(table.matches);
        assert_eq!(table.cells[1][1], CellValue::Constant(1));

        // odd n: a = 1, diag = 2^(m-1) - 2^(m-2), off = -2^(m-2)
        let dec = decompose(&code(2, &[&[2]]), ShadowMode::TypeIShadow, CAP).unwrap();
        let table = verify_orthogonality(&dec, CAP).unwrap();
        assert!(table.matches);
        assert_eq!(table.cells[1][1], CellValue::Constant(1));
        assert_eq!(table.cells[3][1], CellValue::Constant(3));
        assert_eq!(table.cells[1][2], CellValue::Constant(2));

        // C0 row and column are identically zero.
        for j in 0..4 {
            assert_eq!(table.cells[0][j], CellValue::Constant(0));
            assert_eq!(table.cells[j][0], CellValue::Constant(0));
        }
    }

    #[test]
    fn orthogonality_generalized() {
        let c = code(2, &[&[2, 0], &[0, 2]]);
        let dec = decompose(&c, ShadowMode::Generalized(rv(2, &[1, 1])), CAP).unwrap();
        let (ss, _, _) = dec.rep_dots();
        assert_eq!(ss, 2); // s.s = 2^(m-1)
        let table = verify_orthogonality(&dec, CAP).unwrap();
        assert!(table.matches);
        assert_eq!(table.cells[1][1], CellValue::Constant(2));
        assert_eq!(table.cells[1][3], CellValue::Constant(0));
    }

    #[test]
    fn shadow_weight_examples() {
        let dec = decompose(&code(2, &[&[2]]), ShadowMode::TypeIShadow, CAP).unwrap();
        let report = shadow_weight_check(&dec, CAP).unwrap();
        assert_eq!(report.residue, 1);
        assert_eq!(report.modulus, 8);

        let dec = decompose(&code(2, &[&[2, 0], &[0, 2]]), ShadowMode::TypeIShadow, CAP).unwrap();
        let report = shadow_weight_check(&dec, CAP).unwrap();
        assert_eq!(report.residue, 2);

        let dec = decompose(&code(3, &[&[2, 2], &[4, 0]]), ShadowMode::TypeIShadow, CAP).unwrap();
        let report = shadow_weight_check(&dec, CAP).unwrap();
        assert_eq!(report.residue, 4); // 2^(m-2) * n = 4 (mod 16)
        assert_eq!(report.modulus, 16);

        // m = 1: doubled interpretation, 2 wt = n (mod 8).
        let dec = decompose(&code(1, &[&[1, 1]]), ShadowMode::TypeIShadow, CAP).unwrap();
        let report = shadow_weight_check(&dec, CAP).unwrap();
        assert!(report.doubled);
        assert_eq!(report.residue, 2);
    }
}
