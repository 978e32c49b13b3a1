//! The bivariate Jacobi-Konhauser Mittag-Leffler (JKML) double series
//!
//! E_{a,b,k}^{(g1;g2)}(x, y) = sum_{s,r>=0} (g1)_{r+s} (g2)_s x^s y^{k r}
//!                             / ( r! s! Gamma(a+s) Gamma(b+k r) )
//!
//! with a, b > 0 and integer k >= 1. When g1 is a nonpositive integer -n the
//! coupled Pochhammer kills everything beyond s + r <= n and the sum is a
//! polynomial, evaluated exactly by plain products. Otherwise terms are
//! formed in log space with sign tracking (the coupled Pochhammer alternates
//! sign for negative g1) and accumulated over diagonal blocks with
//! compensated summation.

use crate::error::{Error, Result};
use crate::params::{Accumulator, SeriesResult, TruncationPolicy};
use crate::special::{factorial, gamma_fn, ln_gamma, pochhammer, TERMINATION_TOL};

/// Arguments of one JKML evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JkmlArgs {
    pub alpha: f64,
    pub beta: f64,
    pub kappa: u32,
    pub gamma1: f64,
    pub gamma2: f64,
    pub x: f64,
    pub y: f64,
}

impl JkmlArgs {
    pub fn new(alpha: f64, beta: f64, kappa: u32, gamma1: f64, gamma2: f64, x: f64, y: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                constraint: "must be positive",
            });
        }
        if !(beta > 0.0) {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: beta,
                constraint: "must be positive",
            });
        }
        if kappa == 0 {
            return Err(Error::InvalidParameter {
                name: "kappa",
                value: 0.0,
                constraint: "must be a positive integer",
            });
        }
        Ok(Self {
            alpha,
            beta,
            kappa,
            gamma1,
            gamma2,
            x,
            y,
        })
    }

    /// Truncation order when gamma1 sits within integer tolerance of a
    /// nonpositive integer.
    pub fn terminating_order(&self) -> Option<usize> {
        let g = self.gamma1;
        if g <= TERMINATION_TOL && (g - g.round()).abs() <= TERMINATION_TOL {
            Some((-g.round()) as usize)
        } else {
            None
        }
    }
}

/// Exact finite sum over the triangle s + r <= n, plain products throughout.
fn terminating_sum(args: &JkmlArgs, n: usize) -> Result<f64> {
    let k = args.kappa as usize;
    let g1 = -(n as f64);
    let mut acc = Accumulator::new();
    let mut terms = 0usize;
    for s in 0..=n {
        for r in 0..=(n - s) {
            let term = pochhammer(g1, s + r) * pochhammer(args.gamma2, s)
                / (factorial(r)
                    * factorial(s)
                    * gamma_fn(args.alpha + s as f64)?
                    * gamma_fn(args.beta + (k * r) as f64)?)
                * args.x.powi(s as i32)
                * args.y.powi((k * r) as i32);
            acc.add(term);
            terms += 1;
        }
    }
    let _ = terms;
    Ok(acc.value())
}

/// Evaluate the JKML double series under a truncation policy.
pub fn jkml_eval(args: &JkmlArgs, policy: &TruncationPolicy) -> Result<SeriesResult> {
    policy.validate()?;
    if let Some(n) = args.terminating_order() {
        if n <= 64 {
            let v = terminating_sum(args, n)?;
            return Ok(SeriesResult::exact(v, (n + 1) * (n + 2) / 2));
        }
        // high-order terminating sums fall through to the log-space path,
        // which handles the magnitudes; the support is still finite
    }

    let k = args.kappa as usize;
    let lnx = args.x.abs().ln();
    let lny = args.y.abs().ln();
    let sx: f64 = if args.x < 0.0 { -1.0 } else { 1.0 };
    let sy: f64 = if args.y < 0.0 { -1.0 } else { 1.0 };

    // Incrementally grown log-magnitude tables.
    let mut ln_g1: Vec<(f64, f64)> = vec![(0.0, 1.0)]; // (ln |(g1)_d|, sign)
    let mut ln_g2: Vec<(f64, f64)> = vec![(0.0, 1.0)];
    let mut ln_fact: Vec<f64> = vec![0.0];
    let mut ln_ga: Vec<f64> = vec![ln_gamma(args.alpha)?]; // ln Gamma(a + s)
    let mut ln_gb: Vec<f64> = vec![ln_gamma(args.beta)?]; // ln Gamma(b + k r)

    let grow = |tbl: &mut Vec<(f64, f64)>, base: f64, upto: usize| {
        while tbl.len() <= upto {
            let i = tbl.len() - 1;
            let f = base + i as f64;
            let (ln, sg) = *tbl.last().unwrap();
            if f == 0.0 || sg == 0.0 {
                tbl.push((f64::NEG_INFINITY, 0.0));
            } else {
                tbl.push((ln + f.abs().ln(), sg * f.signum()));
            }
        }
    };

    let mut acc = Accumulator::new();
    let mut terms = 0usize;
    let mut quiet = 0usize;
    let mut window_max = 0.0f64;
    let mut last_block = f64::INFINITY;
    let max_d = policy.max_s + policy.max_r;
    for d in 0..=max_d {
        grow(&mut ln_g1, args.gamma1, d);
        let mut block_abs = 0.0f64;
        let s_lo = d.saturating_sub(policy.max_r);
        let s_hi = d.min(policy.max_s);
        for s in s_lo..=s_hi {
            let r = d - s;
            if args.x == 0.0 && s > 0 || args.y == 0.0 && r > 0 {
                continue;
            }
            grow(&mut ln_g2, args.gamma2, s);
            while ln_fact.len() <= d {
                let i = ln_fact.len();
                ln_fact.push(ln_fact[i - 1] + (i as f64).ln());
            }
            while ln_ga.len() <= s {
                let i = ln_ga.len();
                ln_ga.push(ln_ga[i - 1] + (args.alpha + (i - 1) as f64).ln());
            }
            while ln_gb.len() <= r {
                let i = ln_gb.len();
                let base = args.beta + (k * (i - 1)) as f64;
                let mut step = 0.0;
                for j in 0..k {
                    step += (base + j as f64).ln();
                }
                ln_gb.push(ln_gb[i - 1] + step);
            }
            let (l1, s1) = ln_g1[d];
            let (l2, s2) = ln_g2[s];
            if s1 == 0.0 || s2 == 0.0 {
                continue;
            }
            let xi = if args.x == 0.0 { 0.0 } else { s as f64 * lnx };
            let yj = if args.y == 0.0 { 0.0 } else { (k * r) as f64 * lny };
            let ln_t = l1 + l2 + xi + yj - ln_fact[r] - ln_fact[s] - ln_ga[s] - ln_gb[r];
            let t = s1 * s2 * sx.powi(s as i32) * sy.powi((k * r) as i32) * ln_t.exp();
            if !t.is_finite() {
                return Err(Error::Overflow {
                    what: "jkml term",
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

/// ln of one majorant term M(s, r): the JKML term with g1, g2, x, y replaced
/// by absolute values, so M(s, r) >= |T(s, r)| termwise.
struct Majorant {
    g1: f64,
    g2: f64,
    alpha: f64,
    beta: f64,
    k: usize,
    lnx: f64,
    lny: f64,
}

impl Majorant {
    fn ln_term(&self, s: usize, r: usize) -> Result<f64> {
        let (l1, _) = crate::special::ln_abs_pochhammer_sign(self.g1, s + r);
        let (l2, _) = crate::special::ln_abs_pochhammer_sign(self.g2, s);
        Ok(l1 + l2 + s as f64 * self.lnx + (self.k * r) as f64 * self.lny
            - ln_gamma(s as f64 + 1.0)?
            - ln_gamma(r as f64 + 1.0)?
            - ln_gamma(self.alpha + s as f64)?
            - ln_gamma(self.beta + (self.k * r) as f64)?)
    }

    /// Upper bound on M(s', r)/M(s'-1, r) valid for every s' > s.
    fn ratio_sup_x(&self, s: usize, r: usize) -> f64 {
        let sf = s as f64;
        let a = ((self.g1 + r as f64 + sf) / (sf + 1.0)).max(1.0);
        let b = ((self.g2 + sf) / (self.alpha + sf)).max(1.0);
        self.lnx.exp() * a * b
    }

    /// Upper bound on M(s, r')/M(s, r'-1) valid for every r' > r.
    fn ratio_sup_y(&self, s: usize, r: usize) -> f64 {
        let rf = r as f64;
        let a = ((self.g1 + s as f64 + rf) / (rf + 1.0)).max(1.0);
        let den = pochhammer(self.beta + (self.k * r) as f64, self.k);
        ((self.k as f64) * self.lny).exp() * a / den
    }

    /// Rigorous bound on sum_{s > s0} M(s, r): explicit terms are added until
    /// the forward ratio bound drops under `q_star`, then a geometric cap.
    fn row_tail(&self, s0: usize, r: usize, q_star: f64) -> Result<f64> {
        let mut s = s0 + 1;
        let mut total = 0.0f64;
        loop {
            let m = self.ln_term(s, r)?.exp();
            let q = self.ratio_sup_x(s, r);
            if q <= q_star {
                return Ok(total + m / (1.0 - q));
            }
            total += m;
            s += 1;
            if s > s0 + 200_000 {
                return Ok(f64::INFINITY);
            }
        }
    }

    /// Rigorous bound on sum_{r > r0} M(s, r), same scheme along r.
    fn col_tail(&self, s: usize, r0: usize, q_star: f64) -> Result<f64> {
        let mut r = r0 + 1;
        let mut total = 0.0f64;
        loop {
            let m = self.ln_term(s, r)?.exp();
            let q = self.ratio_sup_y(s, r);
            if q <= q_star {
                return Ok(total + m / (1.0 - q));
            }
            total += m;
            r += 1;
            if r > r0 + 200_000 {
                return Ok(f64::INFINITY);
            }
        }
    }
}

/// Rigorous upper bound on the absolute tail of the JKML series beyond the
/// partial-sum rectangle 0 <= s <= S, 0 <= r <= R.
///
/// The bound majorizes every term by its absolute-parameter counterpart and
/// covers the complement of the rectangle in three pieces: row tails at
/// r <= R, column tails at s <= S, and the remaining corner summed row by
/// row until the row bounds underflow. Each piece closes with a certified
/// geometric cap, so bound >= true tail. Returns infinity when |x| >= 1 and
/// the series is not terminating (no finite majorant exists there).
pub fn jkml_tail_bound(args: &JkmlArgs, s_cap: usize, r_cap: usize) -> Result<f64> {
    if args.x == 0.0 && args.y == 0.0 {
        return Ok(0.0);
    }
    if let Some(n) = args.terminating_order() {
        // remaining triangle terms outside the rectangle, summed exactly
        let mut rest = 0.0;
        for s in 0..=n {
            for r in 0..=(n - s) {
                if s <= s_cap && r <= r_cap {
                    continue;
                }
                let k = args.kappa as usize;
                rest += (pochhammer(-(n as f64), s + r) * pochhammer(args.gamma2, s)
                    / (factorial(r)
                        * factorial(s)
                        * gamma_fn(args.alpha + s as f64)?
                        * gamma_fn(args.beta + (k * r) as f64)?)
                    * args.x.powi(s as i32)
                    * args.y.powi((k * r) as i32))
                .abs();
            }
        }
        return Ok(rest);
    }
    if args.x.abs() >= 1.0 {
        return Ok(f64::INFINITY);
    }

    let m = Majorant {
        g1: args.gamma1.abs(),
        g2: args.gamma2.abs(),
        alpha: args.alpha,
        beta: args.beta,
        k: args.kappa as usize,
        lnx: args.x.abs().ln(),
        lny: args.y.abs().ln(),
    };
    let q_star = 0.5f64.max((1.0 + args.x.abs()) / 2.0);

    let mut bound = 0.0f64;
    // rows r = 0..=R beyond s = S
    if args.x != 0.0 {
        for r in 0..=r_cap {
            if args.y == 0.0 && r > 0 {
                break;
            }
            bound += m.row_tail(s_cap, r, q_star)?;
        }
    }
    // columns s = 0..=S beyond r = R
    if args.y != 0.0 {
        for s in 0..=s_cap {
            if args.x == 0.0 && s > 0 {
                break;
            }
            bound += m.col_tail(s, r_cap, 0.5)?;
        }
    }
    // corner s > S and r > R, bounded row by row until rows underflow
    if args.x != 0.0 && args.y != 0.0 {
        let mut r = r_cap + 1;
        loop {
            let row = m.row_tail(s_cap, r, q_star)?;
            bound += row;
            if row == 0.0 {
                break;
            }
            r += 1;
            if r > r_cap + 500_000 {
                return Ok(f64::INFINITY);
            }
        }
    }
    Ok(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn policy() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn origin_value() {
        let a = JkmlArgs::new(1.3, 0.7, 2, 1.5, 2.5, 0.0, 0.0).unwrap();
        let r = jkml_eval(&a, &policy()).unwrap();
        let expect = 1.0 / (gamma_fn(1.3).unwrap() * gamma_fn(0.7).unwrap());
        assert_relative_eq!(r.value, expect, max_relative = 1e-14);
        assert!(r.converged);
    }

    #[test]
    fn gamma1_zero_collapses_to_constant() {
        let a = JkmlArgs::new(1.3, 0.7, 2, 0.0, 2.5, 0.4, 1.7).unwrap();
        let r = jkml_eval(&a, &policy()).unwrap();
        let expect = 1.0 / (gamma_fn(1.3).unwrap() * gamma_fn(0.7).unwrap());
        assert_relative_eq!(r.value, expect, max_relative = 1e-14);
        assert_eq!(r.abs_error_estimate, 0.0);
    }

    #[test]
    fn frozen_nonterminating_value() {
        // 40-digit brute force over a 200x200 window:
        // E_{1.5,0.75,2}^{(0.8;1.2)}(0.3, 0.7) = 1.6420274775597731791
        let a = JkmlArgs::new(1.5, 0.75, 2, 0.8, 1.2, 0.3, 0.7).unwrap();
        let r = jkml_eval(&a, &policy()).unwrap();
        assert!(r.converged);
        assert_relative_eq!(r.value, 1.6420274775597731791, max_relative = 1e-13);
    }

    #[test]
    fn frozen_benchmark_point() {
        // E_{1,1,1}^{(1;1)}(0.5, 0.5) = 5.4365636569180904707 (40-digit oracle)
        let a = JkmlArgs::new(1.0, 1.0, 1, 1.0, 1.0, 0.5, 0.5).unwrap();
        let r = jkml_eval(&a, &policy()).unwrap();
        assert!(r.converged);
        assert_relative_eq!(r.value, 5.4365636569180904707, max_relative = 1e-12);
    }

    #[test]
    fn general_path_matches_ratio_oracle() {
        // negative non-integer gamma1 exercises the sign bookkeeping
        let a = JkmlArgs::new(1.5, 1.25, 2, -3.2, 4.5, 0.4, 1.3).unwrap();
        let r = jkml_eval(&a, &policy()).unwrap();
        assert!(r.converged);
        // independent brute force built from term-ratio recurrences
        let (g1, g2, al, be, k, x, y) = (-3.2f64, 4.5f64, 1.5f64, 1.25f64, 2usize, 0.4f64, 1.3f64);
        let mut total = 0.0f64;
        let mut row_head = 1.0 / (gamma_fn(al).unwrap() * gamma_fn(be).unwrap());
        for s in 0..120usize {
            let mut t = row_head;
            let mut inner = 0.0f64;
            for rr in 0..120usize {
                inner += t;
                let base = be + (k * rr) as f64;
                t *= (g1 + (s + rr) as f64) * y.powi(k as i32)
                    / ((rr as f64 + 1.0) * pochhammer(base, k));
            }
            total += inner;
            let sf = s as f64;
            row_head *= (g1 + sf) * (g2 + sf) * x / ((sf + 1.0) * (al + sf));
        }
        assert_relative_eq!(r.value, total, max_relative = 1e-12);
    }

    #[test]
    fn scaled_arguments_match_termwise_construction() {
        // evaluating at (w1 (x-a), w2 (y-b)) is the same series whose terms
        // carry w1^s w2^{kr} (x-a)^s (y-b)^{kr}
        let (al, be, ka, g1, g2) = (1.3f64, 0.8f64, 2u32, 1.1f64, 0.9f64);
        let (w1, w2, xa, yb) = (0.7f64, 0.5f64, 0.6f64, 0.9f64);
        let args = JkmlArgs::new(al, be, ka, g1, g2, w1 * xa, w2 * yb).unwrap();
        let direct = jkml_eval(&args, &policy()).unwrap().value;
        let k = ka as usize;
        let mut termwise = Accumulator::new();
        for s in 0..80usize {
            for r in 0..80usize {
                let (l1, _) = crate::special::ln_abs_pochhammer_sign(g1, r + s);
                let (l2, _) = crate::special::ln_abs_pochhammer_sign(g2, s);
                let ln_t = l1 + l2
                    + s as f64 * (w1 * xa).ln()
                    + (k * r) as f64 * (w2 * yb).ln()
                    - ln_gamma(r as f64 + 1.0).unwrap()
                    - ln_gamma(s as f64 + 1.0).unwrap()
                    - ln_gamma(al + s as f64).unwrap()
                    - ln_gamma(be + (k * r) as f64).unwrap();
                termwise.add(ln_t.exp());
            }
        }
        assert_relative_eq!(direct, termwise.value(), max_relative = 1e-13);
    }

    #[test]
    fn tail_bound_zero_cases() {
        let a = JkmlArgs::new(1.0, 1.0, 1, -4.0, 2.0, 0.9, 1.4).unwrap();
        assert_eq!(jkml_tail_bound(&a, 4, 4).unwrap(), 0.0);
        let b = JkmlArgs::new(1.0, 1.0, 1, 1.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(jkml_tail_bound(&b, 1, 1).unwrap(), 0.0);
    }

    #[test]
    fn tail_bound_dominates_oracle_tail() {
        // Oracle (40-digit, 400x400 window): full sum 5.4365636569180904707,
        // tail beyond 40x40 = 1.59321e-9, beyond 60x60 = 9.74165e-15,
        // beyond 80x80 = 4.56436e-20.
        let a = JkmlArgs::new(1.0, 1.0, 1, 1.0, 1.0, 0.5, 0.5).unwrap();
        let b40 = jkml_tail_bound(&a, 40, 40).unwrap();
        assert!(b40 >= 1.59321e-9 * (1.0 - 1e-5), "bound {b40} below true tail");
        let b60 = jkml_tail_bound(&a, 60, 60).unwrap();
        assert!(b60 >= 9.74165e-15 * (1.0 - 1e-5));
        let b80 = jkml_tail_bound(&a, 80, 80).unwrap();
        assert!(b80 >= 4.56436e-20 * (1.0 - 1e-5));
        // tightness: within two orders of magnitude of the true tails, and
        // below the 1e-12 target once the rectangle reaches 80x80
        assert!(b40 <= 1.6e-7, "bound too loose: {b40}");
        assert!(b80 <= 1e-12, "bound too loose: {b80}");
    }

    #[test]
    fn monotone_refinement_against_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let a = JkmlArgs::new(
                rng.gen_range(0.5..2.0),
                rng.gen_range(0.5..2.0),
                rng.gen_range(1..=3),
                rng.gen_range(0.2..2.0),
                rng.gen_range(0.2..2.0),
                rng.gen_range(0.05..0.6),
                rng.gen_range(0.05..1.5),
            )
            .unwrap();
            // brute-force oracle over a large window
            let big = TruncationPolicy {
                max_s: 400,
                max_r: 400,
                abs_tol: 1e-300,
                tail_window: 10,
            };
            let full = jkml_eval(&a, &big).unwrap().value;
            let mut prev_err = f64::INFINITY;
            for cap in [5usize, 10, 20, 40] {
                let p = TruncationPolicy {
                    max_s: cap,
                    max_r: cap,
                    abs_tol: 1e-300,
                    tail_window: 1000,
                };
                let part = jkml_eval(&a, &p).unwrap().value;
                let err = (part - full).abs();
                assert!(
                    err <= prev_err * (1.0 + 1e-12) + 1e-18,
                    "refinement not monotone: {err} after {prev_err}"
                );
                prev_err = err;
                // and the rigorous bound dominates the observed truncation error
                let bound = jkml_tail_bound(&a, cap, cap).unwrap();
                assert!(bound * (1.0 + 1e-9) + 1e-18 >= err, "bound {bound} < err {err}");
            }
        }
    }
}
