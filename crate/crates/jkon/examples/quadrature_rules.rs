//! Gauss-Jacobi and generalized Gauss-Laguerre rules, their moment
//! exactness, and singular-kernel quadrature of Riemann-Liouville integrals.
//!
//!     cargo run --example quadrature_rules

use jkon::quadrature::{gauss_jacobi_rule, gauss_laguerre_rule, rl_kernel_quad};
use jkon::special::gamma_fn;

fn main() -> jkon::Result<()> {
    let rule = gauss_jacobi_rule(5, 0.5, -0.25)?;
    println!("5-point Gauss-Jacobi, weight (1-x)^0.5 (1+x)^-0.25:");
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        println!("  node {x:+.15}   weight {w:.15}");
    }
    let mass: f64 = rule.weights.iter().sum();
    let expect = 2.0f64.powf(1.25) * gamma_fn(1.5)? * gamma_fn(0.75)? / gamma_fn(2.25)?;
    println!("  weight sum {mass:.15e} vs Beta moment {expect:.15e}");

    let rule = gauss_laguerre_rule(6, 0.5)?;
    println!("\n6-point generalized Gauss-Laguerre, weight e^-y y^0.5:");
    println!("  exact through degree {}", rule.exact_degree);
    for k in [0usize, 3, 7, 11] {
        let got = rule.integrate(|y| y.powi(k as i32));
        let expect = gamma_fn(0.5 + k as f64 + 1.0)?;
        println!(
            "  moment {k:>2}: {got:.15e}  (Gamma = {expect:.15e}, rel {:.1e})",
            (got - expect).abs() / expect
        );
    }

    println!("\nRiemann-Liouville integral with the kernel folded into the rule:");
    let v = rl_kernel_quad(|_| 1.0, 0.0, 1.0, 0.5, 8)?;
    println!("  I^0.5[1](1) = {v:.15e}  (1/Gamma(1.5) = {:.15e})", 1.0 / gamma_fn(1.5)?);
    let (a, x, zeta, p) = (0.5, 2.25, 0.75, 4);
    let v = rl_kernel_quad(|t| (t - a).powi(p), a, x, zeta, 8)?;
    let expect =
        gamma_fn(p as f64 + 1.0)? / gamma_fn(p as f64 + zeta + 1.0)? * (x - a).powf(p as f64 + zeta);
    println!("  power rule, degree {p}: {v:.15e} vs {expect:.15e}");
    Ok(())
}
