//! Evaluate the bivariate Jacobi-Konhauser Mittag-Leffler double series with
//! its convergence metadata and certify the truncation error with the
//! rigorous tail bound.
//!
//!     cargo run --example jkml_function

use jkon::jkml::{jkml_eval, jkml_tail_bound, JkmlArgs};
use jkon::params::TruncationPolicy;

fn main() -> jkon::Result<()> {
    let policy = TruncationPolicy::default();

    println!("non-terminating case E_(1.5,0.75,2)^(0.8;1.2):");
    for (x, y) in [(0.0, 0.0), (0.3, 0.7), (0.6, 1.4), (0.9, 2.5)] {
        let args = JkmlArgs::new(1.5, 0.75, 2, 0.8, 1.2, x, y)?;
        let r = jkml_eval(&args, &policy)?;
        println!(
            "  E({x:.1}, {y:.1}) = {:.15e}   terms {:>4}  est {:.1e}  converged {}",
            r.value, r.terms_used, r.abs_error_estimate, r.converged
        );
    }

    println!("\nterminating case gamma1 = -4 (exact finite sum):");
    let args = JkmlArgs::new(1.5, 1.25, 2, -4.0, 4.5, 0.8, 1.3)?;
    let r = jkml_eval(&args, &policy)?;
    println!(
        "  value {:.15e}   terms {}  error estimate {}",
        r.value, r.terms_used, r.abs_error_estimate
    );

    println!("\nrigorous tail bounds vs observed truncation error at x = y = 0.5,");
    println!("alpha = beta = kappa = gamma1 = gamma2 = 1:");
    let args = JkmlArgs::new(1.0, 1.0, 1, 1.0, 1.0, 0.5, 0.5)?;
    let big = TruncationPolicy {
        max_s: 400,
        max_r: 400,
        abs_tol: 1e-300,
        tail_window: 10,
    };
    let full = jkml_eval(&args, &big)?.value;
    for cap in [20usize, 40, 60, 80] {
        let p = TruncationPolicy {
            max_s: cap,
            max_r: cap,
            abs_tol: 1e-300,
            tail_window: 1000,
        };
        let part = jkml_eval(&args, &p)?.value;
        let bound = jkml_tail_bound(&args, cap, cap)?;
        println!(
            "  {cap:>3}x{cap:<3}  |tail| = {:.3e}   bound = {:.3e}",
            (full - part).abs(),
            bound
        );
    }
    Ok(())
}
