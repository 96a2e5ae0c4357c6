//! Numeric theta series and Jacobi transformation-law checks.
//!
//! For each residue `mu` in `Z_{2^m}` the theta series is the sum over
//! integers `r = mu (mod 2^m)` of `q^(r^2 / 2^(m+1)) xi^r` with
//! `q = exp(2 pi i tau)`, `xi = exp(2 pi i z)`. Substituting these for the
//! `X_mu` of a Type II code's complete weight enumerator is expected to
//! produce a Jacobi form of weight `l/2` and index `l 2^(m-1)` (`l` the
//! code length); the checks here verify the modular transformation law on
//! the generators `T: tau -> tau + 1`, `S: tau -> -1/tau` and the elliptic
//! law on the shifts `(lambda, eps) in {(1,0), (0,1)}`, numerically at a
//! fixed set of sample points.

use crate::cwe::WeightEnumerator;
use crate::exec;
use crate::zring::RingParams;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Default truncation radius: `|r| <= 40` gives far more than the target
/// accuracy for `Im tau >= 1` and `m <= 4`.
pub const DEFAULT_RADIUS: i64 = 40;

/// Default relative tolerance for the transformation-law residuals.
pub const DEFAULT_TOL: f64 = 1e-6;

/// Fixed generic sample points `(tau, z)` inside the upper half-plane.
pub fn default_sample_points() -> Vec<(Complex64, Complex64)> {
    vec![
        (Complex64::new(0.0, 2.0), Complex64::new(0.1, 0.2)),
        (Complex64::new(1.0, 1.0), Complex64::new(-0.3, 0.4)),
        (Complex64::new(0.5, 1.5), Complex64::new(0.0, 0.25)),
    ]
}

/// A truncated theta value together with a bound on the discarded tail.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ThetaValue {
    pub re: f64,
    pub im: f64,
    pub tail_bound: f64,
}

impl ThetaValue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

fn check_domain(params: RingParams, tau: Complex64, radius: i64) -> Result<()> {
    if tau.im <= 0.0 {
        return Err(Error::Domain(format!(
            "tau = {tau} must lie in the upper half-plane"
        )));
    }
    if radius < params.modulus() as i64 {
        return Err(Error::Domain(format!(
            "truncation radius {radius} below the modulus {}",
            params.modulus()
        )));
    }
    Ok(())
}

/// Truncated theta series for residue `mu`: the sum over
/// `r = mu (mod 2^m)`, `|r| <= radius`, of
/// `exp(2 pi i (tau r^2 / 2^(m+1) + z r))`.
pub fn theta(
    params: RingParams,
    mu: u64,
    tau: Complex64,
    z: Complex64,
    radius: i64,
) -> Result<ThetaValue> {
    check_domain(params, tau, radius)?;
    let q_exp_scale = 1.0 / (2.0 * params.modulus() as f64);
    let modulus = params.modulus() as i64;
    let mu = (mu % params.modulus()) as i64;

    let rs: Vec<i64> = {
        let mut rs = Vec::new();
        let mut r = mu - ((radius + mu.abs()) / modulus + 1) * modulus;
        while r < -radius {
            r += modulus;
        }
        while r <= radius {
            rs.push(r);
            r += modulus;
        }
        rs
    };

    // Each term is one complex exponential, so huge-magnitude factors are
    // never formed separately and nothing overflows near the window edge.
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let sum = exec::fold_items(
        &rs,
        || Complex64::new(0.0, 0.0),
        |acc, &r| {
            let rf = r as f64;
            *acc += (two_pi_i * (tau * rf * rf * q_exp_scale + z * rf)).exp();
        },
        |acc, part| *acc += part,
    );

    // Term magnitudes are e^(f(|r|)) with
    // f(r) = -2 pi (Im tau r^2 / 2^(m+1) - |Im z| r). Past the radius the
    // consecutive-term ratio is at most
    // rho = exp(-2 pi (Im tau (2R+1) / 2^(m+1) - |Im z|)); a geometric
    // series then bounds both tails.
    let f = |r: f64| -2.0 * PI * (tau.im * r * r * q_exp_scale - z.im.abs() * r);
    let rho = (-2.0 * PI * (tau.im * (2.0 * radius as f64 + 1.0) * q_exp_scale - z.im.abs())).exp();
    let tail_bound = if rho < 1.0 {
        2.0 * f((radius + 1) as f64).exp() / (1.0 - rho)
    } else {
        f64::INFINITY
    };

    Ok(ThetaValue {
        re: sum.re,
        im: sum.im,
        tail_bound,
    })
}

/// All `2^m` theta values at one point.
pub fn theta_table(
    params: RingParams,
    tau: Complex64,
    z: Complex64,
    radius: i64,
) -> Result<Vec<ThetaValue>> {
    (0..params.modulus())
        .map(|mu| theta(params, mu, tau, z, radius))
        .collect()
}

/// Substitutes `X_mu := theta_mu(tau, z)` into the enumerator and
/// evaluates it exactly as a polynomial.
pub fn evaluate_enumerator(
    we: &WeightEnumerator,
    tau: Complex64,
    z: Complex64,
    radius: i64,
) -> Result<Complex64> {
    let table = theta_table(we.params(), tau, z, radius)?;
    let values: Vec<Complex64> = table.iter().map(|t| t.value()).collect();
    let terms: Vec<(&Vec<u32>, &u64)> = we.terms().iter().collect();
    let sum = exec::fold_items(
        &terms,
        || Complex64::new(0.0, 0.0),
        |acc, (exp, &count)| {
            let mut prod = Complex64::new(count as f64, 0.0);
            for (mu, &e) in exp.iter().enumerate() {
                for _ in 0..e {
                    prod *= values[mu];
                }
            }
            *acc += prod;
        },
        |acc, part| *acc += part,
    );
    Ok(sum)
}

/// Check parameters for the transformation laws of one enumerator.
#[derive(Clone, Debug, Serialize)]
pub struct JacobiCheckSpec {
    /// Modular weight `l/2`.
    pub weight: u32,
    /// Index `l * 2^(m-1)`.
    pub index: u64,
    #[serde(skip)]
    pub samples: Vec<(Complex64, Complex64)>,
    pub tolerance: f64,
    pub radius: i64,
}

impl JacobiCheckSpec {
    /// Standard spec for a length-`l` code over `Z_{2^m}`; every Type II
    /// code in scope has `l` divisible by 8, making the weight integral.
    pub fn for_code(params: RingParams, length: usize) -> Self {
        JacobiCheckSpec {
            weight: (length / 2) as u32,
            index: length as u64 * params.half(),
            samples: default_sample_points(),
            tolerance: DEFAULT_TOL,
            radius: DEFAULT_RADIUS,
        }
    }
}

/// Residuals for the four checked transformations at one sample point.
#[derive(Clone, Debug, Serialize)]
pub struct SampleResiduals {
    pub tau: (f64, f64),
    pub z: (f64, f64),
    /// `tau -> tau + 1`.
    pub t_shift: f64,
    /// `tau -> -1/tau`, `z -> z/tau` with the automorphy factor.
    pub s_inversion: f64,
    /// Elliptic shift `z -> z + tau` (lambda = 1).
    pub lambda_shift: f64,
    /// Elliptic shift `z -> z + 1` (eps = 1).
    pub eps_shift: f64,
}

impl SampleResiduals {
    pub fn max(&self) -> f64 {
        self.t_shift
            .max(self.s_inversion)
            .max(self.lambda_shift)
            .max(self.eps_shift)
    }
}

/// Outcome of the modularity check over all sample points.
#[derive(Clone, Debug, Serialize)]
pub struct ModularityReport {
    pub weight: u32,
    pub index: u64,
    pub tolerance: f64,
    pub radius: i64,
    pub samples: Vec<SampleResiduals>,
    pub max_residual: f64,
    pub passed: bool,
}

/// Verifies the modular law under the group generators `T`, `S` and the
/// elliptic law under the shifts `(1,0)` and `(0,1)`; these generate the
/// full transformation group, so invariance under them carries the
/// identities being tested. Residuals are `|lhs - rhs| / max(1, |rhs|)`.
pub fn modularity_check(we: &WeightEnumerator, spec: &JacobiCheckSpec) -> Result<ModularityReport> {
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let u = spec.index as f64;
    let mut samples = Vec::with_capacity(spec.samples.len());

    for &(tau, z) in &spec.samples {
        if tau.im <= 0.0 {
            return Err(Error::Domain(format!(
                "sample tau = {tau} must lie in the upper half-plane"
            )));
        }
        let value = evaluate_enumerator(we, tau, z, spec.radius)?;
        let residual = |lhs: Complex64| (lhs - value).norm() / value.norm().max(1.0);

        // T: tau -> tau + 1.
        let t_shift = residual(evaluate_enumerator(
            we,
            tau + Complex64::new(1.0, 0.0),
            z,
            spec.radius,
        )?);

        // S: phi(tau, z) = tau^(-w) exp(-2 pi i u z^2 / tau) phi(-1/tau, z/tau).
        let inv = evaluate_enumerator(we, -1.0 / tau, z / tau, spec.radius)?;
        let s_lhs = tau.powi(-(spec.weight as i32)) * (-two_pi_i * u * z * z / tau).exp() * inv;
        let s_inversion = residual(s_lhs);

        // lambda = 1: exp(2 pi i u (tau + 2z)) phi(tau, z + tau) = phi(tau, z).
        let shifted = evaluate_enumerator(we, tau, z + tau, spec.radius)?;
        let lambda_lhs = (two_pi_i * u * (tau + 2.0 * z)).exp() * shifted;
        let lambda_shift = residual(lambda_lhs);

        // eps = 1: phi(tau, z + 1) = phi(tau, z), exact for integral
        // xi-exponents.
        let eps_shift = residual(evaluate_enumerator(
            we,
            tau,
            z + Complex64::new(1.0, 0.0),
            spec.radius,
        )?);

        samples.push(SampleResiduals {
            tau: (tau.re, tau.im),
            z: (z.re, z.im),
            t_shift,
            s_inversion,
            lambda_shift,
            eps_shift,
        });
    }

    let max_residual = samples.iter().map(|s| s.max()).fold(0.0, f64::max);
    Ok(ModularityReport {
        weight: spec.weight,
        index: spec.index,
        tolerance: spec.tolerance,
        radius: spec.radius,
        samples,
        max_residual,
        passed: max_residual < spec.tolerance,
    })
}

/// Structural checks on the Fourier expansion of the substituted series.
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    /// True when every enumerator term has
    /// `sum_mu e_mu mu^2 = 0 (mod 2^(m+1))`, which makes every q-exponent
    /// of the substituted series a nonnegative integer (representatives
    /// shift `r^2` by multiples of `2^(m+1)` only, so this is exact and
    /// covers the whole expansion, not just a window).
    pub q_exponents_integral: bool,
    pub offending_terms: Vec<Vec<u32>>,
    /// Monomials of the truncated expansion checked against
    /// `r^2 <= 4 u v`.
    pub support_checked: u64,
    pub support_violations: u64,
}

/// Checks the Fourier-support structure: integral q-exponents (exact, all
/// terms), and the inequality `r^2 <= 4uv` between the xi-exponent `r` and
/// q-exponent `v` on an enumerated window of the truncated expansion (each
/// coordinate tries its two nearest representatives), up to `budget`
/// monomials.
pub fn structure_check(we: &WeightEnumerator, index: u64, budget: u64) -> StructureReport {
    let params = we.params();
    let q = params.modulus() as i64;
    let doubled = 2 * params.modulus();

    let mut offending = Vec::new();
    for exp in we.terms().keys() {
        let wt: u64 = exp
            .iter()
            .enumerate()
            .map(|(mu, &e)| (e as u64) * ((mu as u64) * (mu as u64) % doubled) % doubled)
            .sum::<u64>()
            % doubled;
        if wt != 0 {
            offending.push(exp.clone());
        }
    }

    // Window: per coordinate try the residue mu and its negative
    // representative mu - 2^m. With u = l 2^(m-1) and v = sum r^2 / 2^(m+1),
    // the inequality r^2 <= 4uv reads (sum r)^2 2^(m-1) <= u sum r^2.
    let mut checked = 0u64;
    let mut violations = 0u64;
    'terms: for exp in we.terms().keys() {
        let mut residues = Vec::new();
        for (mu, &e) in exp.iter().enumerate() {
            for _ in 0..e {
                residues.push(mu as i64);
            }
        }
        let bits = residues.len().min(20);
        for mask in 0u64..(1u64 << bits) {
            if checked >= budget {
                break 'terms;
            }
            let mut sum_r: i128 = 0;
            let mut sum_r2: i128 = 0;
            for (pos, &mu) in residues.iter().enumerate() {
                let r = if pos < bits && mask >> pos & 1 == 1 {
                    mu - q
                } else {
                    mu
                };
                sum_r += r as i128;
                sum_r2 += (r * r) as i128;
            }
            checked += 1;
            if sum_r * sum_r * params.half() as i128 > index as i128 * sum_r2 {
                violations += 1;
            }
        }
    }

    StructureReport {
        q_exponents_integral: offending.is_empty(),
        offending_terms: offending,
        support_checked: checked,
        support_violations: violations,
    }
}
