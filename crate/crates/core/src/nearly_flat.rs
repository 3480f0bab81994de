//! The nearly-flat model: `2N + 1` action levels `nΔ𝒜`, `n = -N..=N`,
//! with degeneracy proportional to `C^n`.

use thiserror::Error;

use crate::exec::Execution;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NearlyFlatError {
    #[error("degeneracy ratio must lie in (0, 1), got {0}")]
    InvalidC(f64),
    #[error("ratio must lie in [0, 1), got {0}")]
    InvalidRatio(f64),
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("level count must be at least 1")]
    NoLevels,
    #[error("result is not finite")]
    NotFinite,
}

impl NearlyFlatError {
    pub fn name(&self) -> &'static str {
        match self {
            NearlyFlatError::InvalidC(_) => "InvalidC",
            NearlyFlatError::InvalidRatio(_) => "InvalidRatio",
            NearlyFlatError::NonPositive { .. } => "NonPositive",
            NearlyFlatError::NoLevels => "NoLevels",
            NearlyFlatError::NotFinite => "NotFinite",
        }
    }
}

fn positive(name: &'static str, value: f64) -> Result<f64, NearlyFlatError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(NearlyFlatError::NonPositive { name, value })
    }
}

fn check_c(c: f64) -> Result<f64, NearlyFlatError> {
    if c > 0.0 && c < 1.0 {
        Ok(c)
    } else {
        Err(NearlyFlatError::InvalidC(c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NearlyFlatConfig {
    /// Cubic meters.
    pub volume: f64,
    /// Meters.
    pub planck_length: f64,
    pub c: Option<f64>,
}

impl NearlyFlatConfig {
    pub fn validate(&self) -> Result<(), NearlyFlatError> {
        positive("volume", self.volume)?;
        positive("planck length", self.planck_length)?;
        if let Some(c) = self.c {
            check_c(c)?;
        }
        Ok(())
    }

    pub fn volume_natural(&self) -> f64 {
        self.volume / self.planck_length.powi(3)
    }
}

/// `N = 𝒱^{1/3}` for a volume in natural units.
pub fn state_count(volume_natural: f64) -> Result<f64, NearlyFlatError> {
    Ok(positive("volume", volume_natural)?.cbrt())
}

/// `r^N Σ_{n=-N}^{N} n r^n`, summed term by term as `Σ_{m=0}^{2N} (m - N) r^m`.
pub fn geometric_lemma_lhs(r: f64, n: u64) -> Result<f64, NearlyFlatError> {
    if !(0.0..1.0).contains(&r) {
        return Err(NearlyFlatError::InvalidRatio(r));
    }
    if n == 0 {
        return Err(NearlyFlatError::NoLevels);
    }
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut power = 1.0f64;
    for m in 0..=2 * n {
        let term = (m as f64 - n as f64) * power;
        // Neumaier summation
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        power *= r;
        if power == 0.0 {
            break;
        }
    }
    Ok(sum + comp)
}

/// `½ coth(y/2) - 1/y`, accurate near zero.
fn coth_excess(y: f64) -> f64 {
    if y < 1.0 {
        // Σ B_{2k} y^{2k-1} / (2k)!
        const COEFFS: [f64; 10] = [
            1.0 / 12.0,
            -1.0 / 720.0,
            1.0 / 30240.0,
            -1.0 / 1209600.0,
            1.0 / 47900160.0,
            -691.0 / 1307674368000.0,
            1.0 / 74724249600.0,
            -3617.0 / 10670622842880000.0,
            43867.0 / 5109094217170944000.0,
            -174611.0 / 802857662698291200000.0,
        ];
        let y2 = y * y;
        COEFFS.iter().rev().fold(0.0, |acc, &c| acc * y2 + c) * y
    } else {
        1.0 / y.exp_m1() + 0.5 - 1.0 / y
    }
}

/// Mean level index `Σ n Cⁿ / Σ Cⁿ` over `n = -N..=N`; `n_levels` may be
/// any real `N ≥ 1`.
pub fn mean_level(n_levels: f64, c: f64) -> Result<f64, NearlyFlatError> {
    check_c(c)?;
    if !(n_levels >= 1.0) || !n_levels.is_finite() {
        return Err(NearlyFlatError::NoLevels);
    }
    let a = -(c - 1.0).ln_1p();
    let width = 2.0 * n_levels + 1.0;
    Ok(coth_excess(a) - width * coth_excess(width * a))
}

/// `⟨𝒜⟩ = Δ𝒜 Σ n Cⁿ / Σ Cⁿ` in closed form.
pub fn expected_action_exact(n: u64, delta_a: f64, c: f64) -> Result<f64, NearlyFlatError> {
    if n == 0 {
        return Err(NearlyFlatError::NoLevels);
    }
    Ok(delta_a * mean_level(n as f64, c)?)
}

/// `⟨𝒜⟩ ≈ -N Δ𝒜`.
pub fn expected_action_asymptotic(n: f64, delta_a: f64) -> f64 {
    -n * delta_a
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    Asymptotic,
    Exact,
}

impl Model {
    pub fn as_str(&self) -> &'static str {
        match self {
            Model::Asymptotic => "asymptotic",
            Model::Exact => "exact",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CosmologyResult {
    pub planck_length_m: f64,
    pub volume_m3: f64,
    pub volume_natural: f64,
    pub volume_natural_log10: f64,
    pub n: f64,
    pub delta_a: f64,
    pub expected_action: f64,
    pub lambda: f64,
    pub lambda_log10: f64,
    pub alpha_g: f64,
    pub model: Model,
    pub c: Option<f64>,
}

/// Splits a base-10 logarithm into `(mantissa, exponent)` with the
/// mantissa in `[1, 10)`.
pub fn mantissa_exponent(log10: f64) -> (f64, i32) {
    let e = log10.floor();
    (10f64.powf(log10 - e), e as i32)
}

/// The asymptotic pipeline: `Δ𝒜 = 1/(8𝒱)`, `N = 𝒱^{1/3}`, `⟨𝒜⟩ = -NΔ𝒜`,
/// `Λ = -⟨𝒜⟩/2`, with `𝒱` in natural units.
pub fn cosmological_constant(planck_length: f64, volume: f64) -> Result<CosmologyResult, NearlyFlatError> {
    pipeline(planck_length, volume, None)
}

/// As [`cosmological_constant`] but with the exact expectation at ratio `c`.
/// `n_override` replaces the state count when given.
pub fn cosmological_constant_exact(
    planck_length: f64,
    volume: f64,
    c: f64,
    n_override: Option<f64>,
) -> Result<CosmologyResult, NearlyFlatError> {
    check_c(c)?;
    pipeline(planck_length, volume, Some((c, n_override)))
}

fn pipeline(planck_length: f64, volume: f64, exact: Option<(f64, Option<f64>)>) -> Result<CosmologyResult, NearlyFlatError> {
    positive("planck length", planck_length)?;
    positive("volume", volume)?;
    let v_nat = volume / planck_length.powi(3);
    let log_v = v_nat.log10();
    let mut n = volume.cbrt() / planck_length;
    let delta_a = 1.0 / (8.0 * v_nat);
    let (expected, model, c) = match exact {
        None => (expected_action_asymptotic(n, delta_a), Model::Asymptotic, None),
        Some((c, n_override)) => {
            if let Some(m) = n_override {
                n = m;
            }
            (delta_a * mean_level(n, c)?, Model::Exact, Some(c))
        }
    };
    let lambda = -expected / 2.0;
    let alpha_g = v_nat.powf(2.0 / 3.0) * lambda;
    let result = CosmologyResult {
        planck_length_m: planck_length,
        volume_m3: volume,
        volume_natural: v_nat,
        volume_natural_log10: log_v,
        n,
        delta_a,
        expected_action: expected,
        lambda,
        lambda_log10: lambda.log10(),
        alpha_g,
        model,
        c,
    };
    if [v_nat, n, delta_a, expected, lambda, alpha_g].iter().all(|v| v.is_finite()) && delta_a > 0.0 {
        Ok(result)
    } else {
        Err(NearlyFlatError::NotFinite)
    }
}

/// `Λ` for each volume (SI) at a fixed Planck length.
pub fn lambda_history(planck_length: f64, volumes: &[f64], exec: Execution) -> Result<Vec<f64>, NearlyFlatError> {
    exec.map(volumes, |&v| cosmological_constant(planck_length, v).map(|r| r.lambda))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_mean(n: i64, c: f64) -> f64 {
        let (mut num, mut den) = (0.0, 0.0);
        for k in -n..=n {
            let w = c.powi(k as i32);
            num += k as f64 * w;
            den += w;
        }
        num / den
    }

    #[test]
    fn state_count_examples() {
        assert!((state_count(1000.0).unwrap() - 10.0).abs() < 1e-12);
        assert_eq!(state_count(1.0).unwrap(), 1.0);
        let n = 3.5e80f64.cbrt() / 1.6e-35;
        assert!((n / 4.40e61 - 1.0).abs() < 0.01);
    }

    #[test]
    fn lemma_lhs_examples() {
        assert!((geometric_lemma_lhs(0.5, 1).unwrap() + 0.75).abs() < 1e-15);
        let v = geometric_lemma_lhs(0.9, 200).unwrap();
        assert!((v / -2000.0 - 1.0).abs() < 0.1);
        assert!((geometric_lemma_lhs(1e-300, 7).unwrap() + 7.0).abs() < 1e-12);
        assert!(geometric_lemma_lhs(1.0, 3).is_err());
    }

    #[test]
    fn closed_form_matches_brute_force() {
        for n in [1i64, 2, 5, 17, 60] {
            for c in [0.05, 0.3, 0.5, 0.9, 0.97, 0.999] {
                let exact = mean_level(n as f64, c).unwrap();
                let brute = brute_mean(n, c);
                assert!((exact - brute).abs() <= 1e-12 * brute.abs().max(1e-300), "{n} {c} {exact} {brute}");
            }
        }
    }

    #[test]
    fn expected_action_examples() {
        let v = expected_action_exact(2, 1.0, 0.5).unwrap();
        assert!((v + 9.0 / 7.75).abs() < 1e-12);
        assert!(expected_action_exact(10, 1.0, 1.0 - 1e-12).unwrap().abs() < 1e-6);
        let big = expected_action_exact(500, 1.0, 0.9).unwrap();
        assert!((big / -500.0 - 1.0).abs() < 0.05);
        assert!(matches!(expected_action_exact(3, 1.0, 1.0), Err(NearlyFlatError::InvalidC(_))));
        assert!((expected_action_asymptotic(10.0, 0.01) + 0.1).abs() < 1e-15);
    }

    #[test]
    fn cosmology_at_reference_inputs() {
        let r = cosmological_constant(1.6e-35, 3.5e80).unwrap();
        assert!((r.volume_natural / 8.545e184 - 1.0).abs() < 1e-3);
        assert!((r.lambda_log10 + 124.49).abs() < 0.01);
        assert_eq!(r.lambda, -r.expected_action / 2.0);
        assert!((r.alpha_g * 16.0 - 1.0).abs() < 1e-12);
        let expect = r.volume_natural.powf(-2.0 / 3.0) / 16.0;
        assert!((r.lambda / expect - 1.0).abs() < 1e-12);
    }

    #[test]
    fn alpha_g_is_unit_invariant() {
        let a = cosmological_constant(1.6e-35, 3.5e80).unwrap().alpha_g;
        let b = cosmological_constant(3.2e-35, 8.0 * 3.5e80).unwrap().alpha_g;
        assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn history_follows_power_law() {
        let l = lambda_history(1.0, &[1e6, 2e6], Execution::Sequential).unwrap();
        assert!((l[1] / l[0] - 2f64.powf(-2.0 / 3.0)).abs() < 1e-12);
    }
}
