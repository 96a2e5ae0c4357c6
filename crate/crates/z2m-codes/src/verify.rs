//! End-to-end corpus verification: for every seed, run the decomposition,
//! the orthogonality and weight-congruence checks, every applicable
//! construction with its certificate, the two-route weight-enumerator
//! comparison, and (for Type II results) the Jacobi transformation-law
//! check.
//!
//! The manifest may carry an `expected_failures` baseline per seed: a
//! construction case listed there is a documented defect of the source
//! tables, so the run stays green when (and only when) it fails exactly
//! as recorded. Unexpected failures, or a listed case suddenly passing,
//! flip the overall verdict.

use crate::builder::{extend, recipe_for, Variant};
use crate::cwe::{cwe_direct, cwe_equal, cwe_formula, FormulaSource};
use crate::jacobi::{modularity_check, structure_check, JacobiCheckSpec};
use crate::lincode::{LinearCode, TypeVerdict, DEFAULT_ENUM_CAP};
use crate::shadow::{decompose, shadow_weight_check, verify_orthogonality, ShadowMode};
use crate::zring::RingVector;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// One corpus seed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeedEntry {
    pub file: String,
    pub m: u32,
    pub n: usize,
    pub classification: String,
    /// Construction cases documented to fail on this seed (defects of the
    /// standard glue tables), e.g. `"shadow-n0mod4-a"`.
    #[serde(default)]
    pub expected_failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub seeds: Vec<SeedEntry>,
}

impl CorpusManifest {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Knobs for a verification run.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub cap: u64,
    /// Constructions larger than this skip the two-route cwe comparison.
    pub cwe_size_limit: u32,
    pub jacobi: JacobiCheckSpec,
    /// Seed for the generalized-shadow vector search order (0 = plain
    /// lexicographic scan).
    pub search_seed: u64,
    /// Max candidates scanned per search.
    pub search_limit: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cap: DEFAULT_ENUM_CAP,
            cwe_size_limit: 16,
            jacobi: JacobiCheckSpec {
                weight: 0,
                index: 0,
                samples: crate::jacobi::default_sample_points(),
                tolerance: crate::jacobi::DEFAULT_TOL,
                radius: crate::jacobi::DEFAULT_RADIUS,
            },
            search_seed: 0,
            search_limit: 1 << 16,
        }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Deterministic search for a generalized-shadow vector: the first
/// `s` outside the code with `Im(psi_s) = {0, 2^(m-1)}` and the requested
/// self dot. Scan order is lexicographic, or a splitmix64 shuffle of the
/// first `search_limit` candidates when `seed != 0`.
pub fn find_generalized_s(
    code: &LinearCode,
    target_self_dot: u64,
    seed: u64,
    search_limit: u64,
) -> Result<Option<RingVector>> {
    let params = code.params();
    let q = params.modulus() as u128;
    let n = code.length();
    let total: u128 = q.pow(n as u32);
    let limit = (search_limit as u128).min(total);

    let mut order: Vec<u128> = (0..limit).collect();
    if seed != 0 {
        let mut state = seed;
        for i in (1..order.len()).rev() {
            let j = (splitmix64(&mut state) % (i as u64 + 1)) as usize;
            order.swap(i, j);
        }
    }

    for idx in order {
        let mut comps = Vec::with_capacity(n);
        let mut rest = idx;
        for _ in 0..n {
            comps.push((rest % q) as i64);
            rest /= q;
        }
        let s = RingVector::new(params, comps)?;
        if s.dot(&s)? != target_self_dot || code.contains(&s)? {
            continue;
        }
        let half = params.half();
        let values: Vec<u64> = code
            .generators()
            .iter()
            .map(|g| g.dot(&s))
            .collect::<Result<Vec<_>>>()?;
        let image_ok = values.iter().all(|&v| v == 0 || v == half) && values.contains(&half);
        if image_ok {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Outcome of the two-route weight-enumerator comparison.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub enum CweOutcome {
    /// Printed formula matches direct enumeration.
    PrintedMatches,
    /// Printed formula mismatched; the order-range variant derived from
    /// the recipe vectors matches (documented finding).
    DerivedMatches { printed_diff_terms: usize },
    /// Both routes mismatch the enumeration.
    Mismatch {
        printed_diff_terms: usize,
        derived_diff_terms: usize,
    },
    /// Skipped (code larger than the comparison limit, or the certificate
    /// failed so the closed form does not describe the code).
    Skipped { reason: String },
}

/// Report for one construction case on one seed.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub case: String,
    pub certificate_passed: bool,
    pub verdict: TypeVerdict,
    pub claim: String,
    pub result_length: usize,
    pub failed_checks: Vec<String>,
    pub cwe: CweOutcome,
    /// Max Jacobi residual for Type II results.
    pub jacobi_residual: Option<f64>,
    pub jacobi_passed: Option<bool>,
    /// Fourier-support structure (integral q-exponents and the
    /// xi-exponent inequality) for Type II results.
    pub structure_ok: Option<bool>,
    /// Whether this failure (if any) is in the documented baseline.
    pub known_defect: bool,
    /// Green iff the certificate passed (and downstream checks did), or
    /// the failure matches the documented baseline.
    pub acceptable: bool,
}

/// Report for one decomposition mode on one seed.
#[derive(Clone, Debug, Serialize)]
pub struct ModeReport {
    pub mode: String,
    /// `None` with a reason when no valid `s` exists for the mode.
    pub skipped: Option<String>,
    pub orthogonality_ok: bool,
    pub relabeled: bool,
    pub weight_congruence_ok: Option<bool>,
    pub constructions: Vec<ConstructionReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeedReport {
    pub file: String,
    pub m: u32,
    pub n: usize,
    pub classification_ok: bool,
    pub classified: TypeVerdict,
    pub modes: Vec<ModeReport>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub seeds: Vec<SeedReport>,
    pub total_constructions: usize,
    pub certificates_passed: usize,
    pub known_defects: usize,
    pub unexpected_failures: usize,
    pub passed: bool,
}

fn run_constructions(
    dec: &crate::shadow::CosetDecomposition,
    options: &VerifyOptions,
    expected_failures: &[String],
) -> Result<Vec<ConstructionReport>> {
    let mut out = Vec::new();
    for variant in [Variant::A, Variant::B] {
        let recipe = match recipe_for(dec, variant) {
            Ok(r) => r,
            Err(Error::UnknownCase(_)) | Err(Error::ImpossibleCase { .. }) => continue,
            Err(e) => return Err(e),
        };
        let case_name = recipe.case.to_string();
        let cert = extend(dec, &recipe, options.cap)?;

        let cwe = if !cert.passed {
            CweOutcome::Skipped {
                reason: "certificate failed; the closed form does not describe the code".into(),
            }
        } else if cert.code.size_exponent() > options.cwe_size_limit {
            CweOutcome::Skipped {
                reason: format!(
                    "|C'| = 2^{} above comparison limit 2^{}",
                    cert.code.size_exponent(),
                    options.cwe_size_limit
                ),
            }
        } else {
            let words = cert.code.codewords(options.cap)?;
            let direct = cwe_direct(dec.params(), cert.code.length(), words.iter())?;
            let printed = cwe_formula(dec, &recipe, FormulaSource::Printed, options.cap)?;
            let printed_cmp = cwe_equal(&printed, &direct)?;
            if printed_cmp.equal {
                CweOutcome::PrintedMatches
            } else {
                let derived = cwe_formula(dec, &recipe, FormulaSource::Derived, options.cap)?;
                let derived_cmp = cwe_equal(&derived, &direct)?;
                if derived_cmp.equal {
                    CweOutcome::DerivedMatches {
                        printed_diff_terms: printed_cmp.differences.len(),
                    }
                } else {
                    CweOutcome::Mismatch {
                        printed_diff_terms: printed_cmp.differences.len(),
                        derived_diff_terms: derived_cmp.differences.len(),
                    }
                }
            }
        };

        let (jacobi_residual, jacobi_passed, structure_ok) = if cert.passed
            && cert.verdict == TypeVerdict::TypeII
            && cert.code.length() % 8 == 0
            && cert.code.size_exponent() <= options.cwe_size_limit
        {
            let words = cert.code.codewords(options.cap)?;
            let we = cwe_direct(dec.params(), cert.code.length(), words.iter())?;
            let spec = JacobiCheckSpec {
                weight: (cert.code.length() / 2) as u32,
                index: cert.code.length() as u64 * dec.params().half(),
                samples: options.jacobi.samples.clone(),
                tolerance: options.jacobi.tolerance,
                radius: options.jacobi.radius,
            };
            let report = modularity_check(&we, &spec)?;
            let structure = structure_check(&we, spec.index, 1 << 16);
            (
                Some(report.max_residual),
                Some(report.passed),
                Some(structure.q_exponents_integral && structure.support_violations == 0),
            )
        } else {
            (None, None, None)
        };

        let cwe_ok = matches!(
            cwe,
            CweOutcome::PrintedMatches
                | CweOutcome::DerivedMatches { .. }
                | CweOutcome::Skipped { .. }
        );
        let all_ok =
            cert.passed && cwe_ok && jacobi_passed.unwrap_or(true) && structure_ok.unwrap_or(true);
        let known_defect = !all_ok && expected_failures.iter().any(|c| c == &case_name);
        let unexpected_pass = all_ok && expected_failures.iter().any(|c| c == &case_name);

        out.push(ConstructionReport {
            case: case_name,
            certificate_passed: cert.passed,
            verdict: cert.verdict,
            claim: format!("{:?}", cert.claim),
            result_length: cert.code.length(),
            failed_checks: cert
                .failures()
                .iter()
                .map(|c| format!("{}: {}", c.name, c.detail))
                .collect(),
            cwe,
            jacobi_residual,
            jacobi_passed,
            structure_ok,
            known_defect,
            acceptable: (all_ok && !unexpected_pass) || known_defect,
        });
    }
    Ok(out)
}

fn run_mode(
    code: &LinearCode,
    mode: ShadowMode,
    mode_name: &str,
    options: &VerifyOptions,
    expected_failures: &[String],
) -> Result<ModeReport> {
    let dec = decompose(code, mode, options.cap)?;
    let (orthogonality_ok, relabeled) = match verify_orthogonality(&dec, options.cap) {
        Ok(table) => (table.matches, table.relabeled),
        Err(Error::TableViolation(_)) => (false, false),
        Err(e) => return Err(e),
    };
    let weight_congruence_ok = if dec.is_generalized() {
        None
    } else {
        Some(shadow_weight_check(&dec, options.cap).is_ok())
    };
    let constructions = run_constructions(&dec, options, expected_failures)?;
    Ok(ModeReport {
        mode: mode_name.to_string(),
        skipped: None,
        orthogonality_ok,
        relabeled,
        weight_congruence_ok,
        constructions,
    })
}

/// Runs the full pipeline for one seed code.
pub fn verify_seed(
    entry: &SeedEntry,
    code: &LinearCode,
    options: &VerifyOptions,
) -> Result<SeedReport> {
    let classified = code.classify(options.cap)?;
    let classification_ok = format!("{classified}") == entry.classification
        && code.params().m() == entry.m
        && code.length() == entry.n;

    let mut modes = Vec::new();

    if classified == TypeVerdict::TypeI {
        modes.push(run_mode(
            code,
            ShadowMode::TypeIShadow,
            "shadow",
            options,
            &entry.expected_failures,
        )?);
    }

    if classified != TypeVerdict::NotSelfDual {
        let params = code.params();
        for (mode_name, target) in [("gen-zero", 0), ("gen-half", params.half())] {
            match find_generalized_s(code, target, options.search_seed, options.search_limit)? {
                Some(s) => {
                    modes.push(run_mode(
                        code,
                        ShadowMode::Generalized(s),
                        mode_name,
                        options,
                        &entry.expected_failures,
                    )?);
                }
                None => modes.push(ModeReport {
                    mode: mode_name.to_string(),
                    skipped: Some(format!(
                        "no vector s with image {{0, {}}} and s.s = {target} exists",
                        params.half()
                    )),
                    orthogonality_ok: true,
                    relabeled: false,
                    weight_congruence_ok: None,
                    constructions: Vec::new(),
                }),
            }
        }
    }

    let passed = classification_ok
        && modes.iter().all(|m| {
            m.skipped.is_some()
                || (m.orthogonality_ok
                    && m.weight_congruence_ok.unwrap_or(true)
                    && m.constructions.iter().all(|c| c.acceptable))
        });

    Ok(SeedReport {
        file: entry.file.clone(),
        m: code.params().m(),
        n: code.length(),
        classification_ok,
        classified,
        modes,
        passed,
    })
}

/// Runs the pipeline over a whole manifest. Seeds are processed
/// independently; output order follows the manifest.
pub fn verify_corpus(
    manifest: &CorpusManifest,
    base_dir: &Path,
    options: &VerifyOptions,
) -> Result<CorpusReport> {
    let codes: Vec<(SeedEntry, LinearCode)> = manifest
        .seeds
        .iter()
        .map(|entry| {
            let path: PathBuf = base_dir.join(&entry.file);
            Ok((entry.clone(), crate::format::parse_code_file(&path)?))
        })
        .collect::<Result<Vec<_>>>()?;

    let seeds: Vec<SeedReport> = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            let results: Vec<Result<SeedReport>> = codes
                .par_iter()
                .map(|(entry, code)| verify_seed(entry, code, options))
                .collect();
            results.into_iter().collect::<Result<Vec<_>>>()?
        }
        #[cfg(not(feature = "parallel"))]
        {
            codes
                .iter()
                .map(|(entry, code)| verify_seed(entry, code, options))
                .collect::<Result<Vec<_>>>()?
        }
    };

    let mut total = 0;
    let mut passed_count = 0;
    let mut known = 0;
    let mut unexpected = 0;
    for seed in &seeds {
        for mode in &seed.modes {
            for c in &mode.constructions {
                total += 1;
                if c.certificate_passed {
                    passed_count += 1;
                }
                if c.known_defect {
                    known += 1;
                } else if !c.acceptable {
                    unexpected += 1;
                }
            }
        }
    }
    let passed = seeds.iter().all(|s| s.passed);
    Ok(CorpusReport {
        seeds,
        total_constructions: total,
        certificates_passed: passed_count,
        known_defects: known,
        unexpected_failures: unexpected,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincode::canonicalize;
    use crate::zring::RingParams;

    fn code(m: u32, rows: &[&[i64]]) -> LinearCode {
        let p = RingParams::new(m).unwrap();
        let n = rows[0].len();
        let rows: Vec<RingVector> = rows
            .iter()
            .map(|r| RingVector::new(p, r.iter().copied()).unwrap())
            .collect();
        canonicalize(p, n, &rows).unwrap()
    }

    #[test]
    fn s_search_is_deterministic() {
        let c = code(2, &[&[2, 0], &[0, 2]]);
        let s1 = find_generalized_s(&c, 2, 0, 1 << 12).unwrap().unwrap();
        let s2 = find_generalized_s(&c, 2, 0, 1 << 12).unwrap().unwrap();
        assert_eq!(s1, s2);
        // No s with s.s = 0 exists for this code.
        assert!(find_generalized_s(&c, 0, 0, 1 << 12).unwrap().is_none());
        // Seeded searches still find a valid vector.
        let s3 = find_generalized_s(&c, 2, 7, 1 << 12).unwrap().unwrap();
        assert_eq!(s3.dot(&s3).unwrap(), 2);
        assert!(!c.contains(&s3).unwrap());
    }

    #[test]
    fn verify_seed_binary_repetition() {
        let c = code(1, &[&[1, 1]]);
        let entry = SeedEntry {
            file: "test".into(),
            m: 1,
            n: 2,
            classification: "TypeI".into(),
            expected_failures: vec![],
        };
        let report = verify_seed(&entry, &c, &VerifyOptions::default()).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.modes.iter().any(|m| m.mode == "shadow"));
        // gen-zero cannot exist for this code, gen-half can.
        let gen_zero = report.modes.iter().find(|m| m.mode == "gen-zero").unwrap();
        assert!(gen_zero.skipped.is_some());
        let gen_half = report.modes.iter().find(|m| m.mode == "gen-half").unwrap();
        assert!(gen_half.skipped.is_none());
        assert!(gen_half.constructions.iter().all(|c| c.certificate_passed));
    }

    #[test]
    fn expected_failures_baseline() {
        // m=2, n=4: the shadow constructions are defective as printed;
        // with a baseline they are acceptable, without they are not.
        let c = code(
            2,
            &[&[2, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]],
        );
        let mut entry = SeedEntry {
            file: "test".into(),
            m: 2,
            n: 4,
            classification: "TypeI".into(),
            expected_failures: vec![],
        };
        let report = verify_seed(&entry, &c, &VerifyOptions::default()).unwrap();
        assert!(!report.passed);

        entry.expected_failures = report
            .modes
            .iter()
            .flat_map(|m| m.constructions.iter())
            .filter(|c| !c.acceptable)
            .map(|c| c.case.clone())
            .collect();
        assert!(!entry.expected_failures.is_empty());
        let report = verify_seed(&entry, &c, &VerifyOptions::default()).unwrap();
        assert!(report.passed, "{report:?}");
    }
}
