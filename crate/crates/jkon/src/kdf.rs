//! Generic evaluators for two families of double hypergeometric series: the
//! Kampe de Feriet F-series built from Pochhammer groups, and the S-type
//! series built from gamma factors with per-index shift steps.
//!
//! Both evaluators sum over diagonal blocks s + r = d and stop once a run of
//! `tail_window` consecutive blocks stays below the absolute tolerance.
//! Terminating specs are detected up front and summed exactly over their
//! finite support with plain products, so negative-integer upper parameters
//! annihilate tails exactly.

use crate::error::{Error, Result};
use crate::params::{Accumulator, SeriesResult, TruncationPolicy};
use crate::special::{
    is_nonpositive_integer, ln_abs_gamma_sign, ln_abs_pochhammer_sign, pochhammer,
    TERMINATION_TOL,
};

/// Parameter groups of a Kampe de Feriet double series
///
/// F = sum_{i,j} prod (a)_{i+j} prod (b)_i prod (c)_j
///     / [ prod (d)_{i+j} prod (f)_i prod (g)_j ] x^i y^j / (i! j!)
///
/// with `upper_joint` = (a), `upper_x` = (b), `upper_y` = (c),
/// `lower_joint` = (d), `lower_x` = (f), `lower_y` = (g).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KdfSpec {
    pub upper_joint: Vec<f64>,
    pub upper_x: Vec<f64>,
    pub upper_y: Vec<f64>,
    pub lower_joint: Vec<f64>,
    pub lower_x: Vec<f64>,
    pub lower_y: Vec<f64>,
}

fn terminating_order(params: &[f64]) -> Option<usize> {
    params
        .iter()
        .filter_map(|&p| {
            if p <= TERMINATION_TOL && (p - p.round()).abs() <= TERMINATION_TOL {
                Some((-p.round()) as usize)
            } else {
                None
            }
        })
        .min()
}

impl KdfSpec {
    /// Smallest joint truncation order, if any upper joint parameter is a
    /// nonpositive integer.
    pub fn joint_termination(&self) -> Option<usize> {
        terminating_order(&self.upper_joint)
    }

    /// Per-axis truncation orders from the x/y upper groups.
    pub fn axis_termination(&self) -> (Option<usize>, Option<usize>) {
        (
            terminating_order(&self.upper_x),
            terminating_order(&self.upper_y),
        )
    }

    /// Support is finite when the joint group terminates or both axes do.
    pub fn is_terminating(&self) -> bool {
        self.joint_termination().is_some() || {
            let (nx, ny) = self.axis_termination();
            nx.is_some() && ny.is_some()
        }
    }

    /// Reject lower parameters that hit a nonpositive integer inside the
    /// reachable support.
    fn validate(&self, policy: &TruncationPolicy) -> Result<()> {
        let joint = self.joint_termination();
        let (nx, ny) = self.axis_termination();
        let i_max = joint.or(nx).unwrap_or(policy.max_s).min(policy.max_s);
        let j_max = joint.or(ny).unwrap_or(policy.max_r).min(policy.max_r);
        let d_max = joint.unwrap_or(i_max + j_max).min(i_max + j_max);
        let check = |params: &[f64], reach: usize, what: &str| -> Result<()> {
            for &p in params {
                if p <= TERMINATION_TOL && (p - p.round()).abs() <= TERMINATION_TOL {
                    let pole_depth = (-p.round()) as usize;
                    if pole_depth <= reach {
                        return Err(Error::Domain(format!(
                            "lower {what} parameter {p} is a nonpositive integer inside the support"
                        )));
                    }
                }
            }
            Ok(())
        };
        check(&self.lower_joint, d_max, "joint")?;
        check(&self.lower_x, i_max, "x")?;
        check(&self.lower_y, j_max, "y")
    }
}

fn poch_group(params: &[f64], n: usize) -> f64 {
    params.iter().map(|&p| pochhammer(p, n)).product()
}

/// One term of the F-series by plain products. Shared by the exact
/// terminating path and the termination-exactness tests.
pub fn kdf_f_term(spec: &KdfSpec, i: usize, j: usize, x: f64, y: f64) -> f64 {
    let num = poch_group(&spec.upper_joint, i + j)
        * poch_group(&spec.upper_x, i)
        * poch_group(&spec.upper_y, j);
    let den = poch_group(&spec.lower_joint, i + j)
        * poch_group(&spec.lower_x, i)
        * poch_group(&spec.lower_y, j)
        * crate::special::factorial(i)
        * crate::special::factorial(j);
    num / den * x.powi(i as i32) * y.powi(j as i32)
}

fn ln_poch_group_sign(params: &[f64], n: usize) -> (f64, f64) {
    let mut ln = 0.0;
    let mut sign = 1.0;
    for &p in params {
        let (l, s) = ln_abs_pochhammer_sign(p, n);
        ln += l;
        sign *= s;
    }
    (ln, sign)
}

/// Evaluate a Kampe de Feriet F-series under the given truncation policy.
///
/// Terminating specs are summed exactly (converged, zero error estimate).
/// Otherwise diagonal blocks are accumulated until `tail_window` consecutive
/// blocks fall below `abs_tol`; running out of budget reports
/// `converged = false` rather than a silent value.
pub fn kdf_f_eval(spec: &KdfSpec, x: f64, y: f64, policy: &TruncationPolicy) -> Result<SeriesResult> {
    policy.validate()?;
    spec.validate(policy)?;

    if spec.is_terminating() {
        let joint = spec.joint_termination();
        let (nx, ny) = spec.axis_termination();
        let i_cap = nx.unwrap_or(usize::MAX).min(joint.unwrap_or(usize::MAX));
        let j_cap = ny.unwrap_or(usize::MAX).min(joint.unwrap_or(usize::MAX));
        let d_cap = joint.unwrap_or(i_cap.saturating_add(j_cap));
        let mut acc = Accumulator::new();
        let mut terms = 0usize;
        for d in 0..=d_cap {
            for i in 0..=d {
                let j = d - i;
                if i > i_cap || j > j_cap {
                    continue;
                }
                acc.add(kdf_f_term(spec, i, j, x, y));
                terms += 1;
            }
        }
        return Ok(SeriesResult::exact(acc.value(), terms));
    }

    // General path: log-magnitude tables grown per index, diagonal stopping.
    let mut acc = Accumulator::new();
    let mut terms = 0usize;
    let mut quiet = 0usize;
    let mut window_max = 0.0f64;
    let lnx = x.abs().ln();
    let lny = y.abs().ln();
    let sx: f64 = if x < 0.0 { -1.0 } else { 1.0 };
    let sy: f64 = if y < 0.0 { -1.0 } else { 1.0 };
    let mut ln_fact: Vec<f64> = vec![0.0];

    let mut last_block = f64::INFINITY;
    for d in 0..=(policy.max_s + policy.max_r) {
        while ln_fact.len() <= d {
            let i = ln_fact.len();
            ln_fact.push(ln_fact[i - 1] + (i as f64).ln());
        }
        let (ln_uj, s_uj) = ln_poch_group_sign(&spec.upper_joint, d);
        let (ln_lj, s_lj) = ln_poch_group_sign(&spec.lower_joint, d);
        let mut block_abs = 0.0f64;
        let i_lo = d.saturating_sub(policy.max_r);
        let i_hi = d.min(policy.max_s);
        for i in i_lo..=i_hi {
            let j = d - i;
            if x == 0.0 && i > 0 || y == 0.0 && j > 0 {
                continue;
            }
            let (ln_ux, s_ux) = ln_poch_group_sign(&spec.upper_x, i);
            let (ln_uy, s_uy) = ln_poch_group_sign(&spec.upper_y, j);
            let (ln_lx, s_lx) = ln_poch_group_sign(&spec.lower_x, i);
            let (ln_ly, s_ly) = ln_poch_group_sign(&spec.lower_y, j);
            let xi = if x == 0.0 { 0.0 } else { i as f64 * lnx };
            let yj = if y == 0.0 { 0.0 } else { j as f64 * lny };
            let ln_t =
                ln_uj + ln_ux + ln_uy - ln_lj - ln_lx - ln_ly + xi + yj - ln_fact[i] - ln_fact[j];
            let sign = s_uj * s_ux * s_uy * s_lj * s_lx * s_ly
                * sx.powi(i as i32)
                * sy.powi(j as i32);
            let t = sign * ln_t.exp();
            if !t.is_finite() {
                return Err(Error::Overflow {
                    what: "kdf term",
                    value: ln_t,
                });
            }
            acc.add(t);
            block_abs += t.abs();
            terms += 1;
        }
        last_block = block_abs;
        if block_abs < policy.abs_tol {
            quiet += 1;
            window_max = window_max.max(block_abs);
            if quiet >= policy.tail_window {
                return Ok(SeriesResult {
                    value: acc.value(),
                    abs_error_estimate: window_max,
                    terms_used: terms,
                    converged: true,
                });
            }
        } else {
            quiet = 0;
            window_max = 0.0;
        }
    }
    Ok(SeriesResult {
        value: acc.value(),
        abs_error_estimate: last_block.max(policy.abs_tol),
        terms_used: terms,
        converged: false,
    })
}

/// One gamma factor Gamma(base + s*step_s + r*step_r) of an S-type series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaFactor {
    pub base: f64,
    pub step_s: f64,
    pub step_r: f64,
}

impl GammaFactor {
    pub fn joint(base: f64, step_s: f64, step_r: f64) -> Self {
        Self {
            base,
            step_s,
            step_r,
        }
    }

    pub fn on_x(base: f64, step: f64) -> Self {
        Self {
            base,
            step_s: step,
            step_r: 0.0,
        }
    }

    pub fn on_y(base: f64, step: f64) -> Self {
        Self {
            base,
            step_s: 0.0,
            step_r: step,
        }
    }
}

/// S-type double hypergeometric series
///
/// S = sum_{s,r} prod_j Gamma(a_j + s th_j + r ph_j)
///     / prod_j Gamma(c_j + s de_j + r ep_j) x^s y^r / (s! r!)
///
/// with every group (joint, x-only, y-only; numerator or denominator)
/// expressed uniformly as a [`GammaFactor`] list.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SSeriesSpec {
    pub numerator: Vec<GammaFactor>,
    pub denominator: Vec<GammaFactor>,
}

/// Evaluate an S-type series. Gamma ratios are computed in log space with
/// explicit sign bookkeeping; any gamma pole inside the explored support is
/// an error.
pub fn kdf_s_eval(
    spec: &SSeriesSpec,
    x: f64,
    y: f64,
    policy: &TruncationPolicy,
) -> Result<SeriesResult> {
    policy.validate()?;
    let mut acc = Accumulator::new();
    let mut terms = 0usize;
    let mut quiet = 0usize;
    let mut window_max = 0.0f64;
    let lnx = x.abs().ln();
    let lny = y.abs().ln();
    let sx: f64 = if x < 0.0 { -1.0 } else { 1.0 };
    let sy: f64 = if y < 0.0 { -1.0 } else { 1.0 };
    let mut ln_fact: Vec<f64> = vec![0.0];

    let mut last_block = f64::INFINITY;
    for d in 0..=(policy.max_s + policy.max_r) {
        while ln_fact.len() <= d {
            let i = ln_fact.len();
            ln_fact.push(ln_fact[i - 1] + (i as f64).ln());
        }
        let mut block_abs = 0.0f64;
        let i_lo = d.saturating_sub(policy.max_r);
        let i_hi = d.min(policy.max_s);
        for s in i_lo..=i_hi {
            let r = d - s;
            if x == 0.0 && s > 0 || y == 0.0 && r > 0 {
                continue;
            }
            let mut ln_t = 0.0f64;
            let mut sign = 1.0f64;
            for f in &spec.numerator {
                let arg = f.base + s as f64 * f.step_s + r as f64 * f.step_r;
                let (l, sg) = ln_abs_gamma_sign(arg)?;
                ln_t += l;
                sign *= sg;
            }
            for f in &spec.denominator {
                let arg = f.base + s as f64 * f.step_s + r as f64 * f.step_r;
                if is_nonpositive_integer(arg, crate::special::POLE_TOL) {
                    return Err(Error::GammaPole(arg));
                }
                let (l, sg) = ln_abs_gamma_sign(arg)?;
                ln_t -= l;
                sign *= sg;
            }
            let xi = if x == 0.0 { 0.0 } else { s as f64 * lnx };
            let yj = if y == 0.0 { 0.0 } else { r as f64 * lny };
            ln_t += xi + yj - ln_fact[s] - ln_fact[r];
            let t = sign * sx.powi(s as i32) * sy.powi(r as i32) * ln_t.exp();
            if !t.is_finite() {
                return Err(Error::Overflow {
                    what: "s-series term",
                    value: ln_t,
                });
            }
            acc.add(t);
            block_abs += t.abs();
            terms += 1;
        }
        last_block = block_abs;
        if block_abs < policy.abs_tol {
            quiet += 1;
            window_max = window_max.max(block_abs);
            if quiet >= policy.tail_window {
                return Ok(SeriesResult {
                    value: acc.value(),
                    abs_error_estimate: window_max,
                    terms_used: terms,
                    converged: true,
                });
            }
        } else {
            quiet = 0;
            window_max = 0.0;
        }
    }
    Ok(SeriesResult {
        value: acc.value(),
        abs_error_estimate: last_block.max(policy.abs_tol),
        terms_used: terms,
        converged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{factorial, gamma_fn};
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    fn policy() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn empty_spec_is_double_exponential() {
        let spec = KdfSpec::default();
        let r = kdf_f_eval(&spec, 0.3, 0.2, &policy()).unwrap();
        assert!(r.converged);
        // exp(0.5), 50-digit reference
        assert_relative_eq!(r.value, 1.6487212707001281468, max_relative = 1e-13);
        assert!(r.abs_error_estimate <= policy().abs_tol);
    }

    #[test]
    fn any_spec_at_origin_is_one() {
        let spec = KdfSpec {
            upper_joint: vec![2.3],
            upper_x: vec![0.7],
            lower_x: vec![1.9],
            ..Default::default()
        };
        let r = kdf_f_eval(&spec, 0.0, 0.0, &policy()).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.converged);
    }

    #[test]
    fn kdf_representation_matches_explicit_double_sum() {
        // F-series encoding of the polynomial's KdF representation at
        // n = 2, alpha = beta = 0.5, kappa = 2, (x, y) = (0.4, 0.7).
        let (n, al, be, ka) = (2usize, 0.5f64, 0.5f64, 2u32);
        let (x, y) = (0.4f64, 0.7f64);
        let spec = KdfSpec {
            upper_joint: vec![-(n as f64)],
            upper_x: vec![1.0 + al + be + n as f64],
            lower_x: vec![1.0 + al],
            lower_y: (0..ka).map(|m| (be + 1.0 + m as f64) / ka as f64).collect(),
            ..Default::default()
        };
        let xf = (1.0 - x) / 2.0;
        let yf = (y / ka as f64).powi(ka as i32);
        let f = kdf_f_eval(&spec, xf, yf, &policy()).unwrap();
        assert!(f.converged);
        assert_eq!(f.abs_error_estimate, 0.0);

        // Oracle: brute-force explicit double sum of the defining formula.
        let mut jk = 0.0;
        for s in 0..=n {
            for r in 0..=(n - s) {
                jk += crate::special::pochhammer(-(n as f64), s + r)
                    * crate::special::pochhammer(1.0 + al + be + n as f64, s)
                    / (factorial(s)
                        * factorial(r)
                        * gamma_fn(1.0 + al + s as f64).unwrap()
                        * gamma_fn(be + 1.0 + (ka as usize * r) as f64).unwrap())
                    * xf.powi(s as i32)
                    * y.powi((ka as usize * r) as i32);
            }
        }
        jk *= gamma_fn(1.0 + al + n as f64).unwrap() / factorial(n);
        let scale = factorial(n) * gamma_fn(1.0 + be).unwrap()
            / crate::special::pochhammer(1.0 + al, n);
        assert_relative_eq!(f.value, jk * scale, max_relative = 1e-13);
    }

    #[test]
    fn termination_is_bit_exact_against_direct_sum() {
        let spec = KdfSpec {
            upper_joint: vec![-4.0],
            upper_x: vec![1.7],
            lower_x: vec![2.3],
            lower_y: vec![0.9],
            ..Default::default()
        };
        let (x, y) = (0.83, -1.4);
        let r = kdf_f_eval(&spec, x, y, &policy()).unwrap();
        let mut direct = Accumulator::new();
        for d in 0..=4usize {
            for i in 0..=d {
                direct.add(kdf_f_term(&spec, i, d - i, x, y));
            }
        }
        assert_eq!(r.value, direct.value());
        assert_eq!(r.abs_error_estimate, 0.0);
    }

    #[test]
    fn decoupled_specs_factorize() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let b = rng.gen_range(0.2..2.0);
            let c = rng.gen_range(0.2..2.0);
            let f = rng.gen_range(1.2..3.0);
            let g = rng.gen_range(1.2..3.0);
            let x = rng.gen_range(-0.4..0.4);
            let y = rng.gen_range(-0.4..0.4);
            let spec = KdfSpec {
                upper_x: vec![b],
                upper_y: vec![c],
                lower_x: vec![f],
                lower_y: vec![g],
                ..Default::default()
            };
            let v = kdf_f_eval(&spec, x, y, &policy()).unwrap();
            assert!(v.converged);
            // 1-D factors summed directly
            let one_d = |a: f64, l: f64, z: f64| {
                let mut acc = 0.0;
                let mut term = 1.0;
                for k in 0..200 {
                    acc += term;
                    term *= (a + k as f64) * z / ((l + k as f64) * (k as f64 + 1.0));
                    if term.abs() < 1e-18 {
                        break;
                    }
                }
                acc
            };
            let expect = one_d(b, f, x) * one_d(c, g, y);
            assert_relative_eq!(v.value, expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn swap_symmetry() {
        let spec = KdfSpec {
            upper_joint: vec![0.8],
            upper_x: vec![1.3],
            upper_y: vec![0.4],
            lower_joint: vec![2.2],
            lower_x: vec![1.6],
            lower_y: vec![2.8],
            ..Default::default()
        };
        let swapped = KdfSpec {
            upper_joint: spec.upper_joint.clone(),
            upper_x: spec.upper_y.clone(),
            upper_y: spec.upper_x.clone(),
            lower_joint: spec.lower_joint.clone(),
            lower_x: spec.lower_y.clone(),
            lower_y: spec.lower_x.clone(),
        };
        let a = kdf_f_eval(&spec, 0.3, -0.2, &policy()).unwrap().value;
        let b = kdf_f_eval(&swapped, -0.2, 0.3, &policy()).unwrap().value;
        assert_relative_eq!(a, b, max_relative = 1e-13);
    }

    #[test]
    fn lower_pole_inside_support_rejected() {
        let spec = KdfSpec {
            lower_x: vec![-3.0],
            ..Default::default()
        };
        assert!(kdf_f_eval(&spec, 0.1, 0.1, &policy()).is_err());
        // but fine when an upper x parameter truncates first
        let spec = KdfSpec {
            upper_x: vec![-2.0],
            upper_y: vec![-2.0],
            lower_x: vec![-3.0],
            ..Default::default()
        };
        assert!(kdf_f_eval(&spec, 0.1, 0.1, &policy()).is_ok());
    }

    #[test]
    fn non_convergence_is_flagged() {
        // Strongly growing series: ratio > 1 in x, tiny budget.
        let spec = KdfSpec {
            upper_joint: vec![3.0],
            upper_x: vec![2.0],
            ..Default::default()
        };
        let p = TruncationPolicy {
            max_s: 10,
            max_r: 10,
            ..Default::default()
        };
        let r = kdf_f_eval(&spec, 0.9, 0.9, &p).unwrap();
        assert!(!r.converged);
    }

    #[test]
    fn s_series_empty_and_origin() {
        let spec = SSeriesSpec::default();
        let r = kdf_s_eval(&spec, 0.0, 0.0, &policy()).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn s_series_decoupled_closed_form() {
        // One numerator factor Gamma(1 + s): sum_s s! x^s / s! = 1/(1-x),
        // times sum_r y^r / r! = e^y. Oracle value at x=0.2, y=0.1:
        // (1/0.8) e^{0.1} = 1.3814636475945596; the factorization is the
        // independent check.
        let spec = SSeriesSpec {
            numerator: vec![GammaFactor::on_x(1.0, 1.0)],
            denominator: vec![],
        };
        let r = kdf_s_eval(&spec, 0.2, 0.1, &policy()).unwrap();
        assert!(r.converged);
        assert_relative_eq!(r.value, 1.3814636475945596, max_relative = 1e-13);
    }

    #[test]
    fn s_series_denominator_pole_rejected() {
        let spec = SSeriesSpec {
            numerator: vec![],
            denominator: vec![GammaFactor::on_x(-2.0, 1.0)],
        };
        assert!(kdf_s_eval(&spec, 0.1, 0.1, &policy()).is_err());
    }
}
