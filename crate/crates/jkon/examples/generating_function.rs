//! The generating-function diagnostic: both sides are computed and reported.
//! The closed reductions at t = 0 and (x, y) = (1, 0) hold; for the full
//! identity the S-series argument t y^k/(t-1) (without the kappa^kappa
//! factor of the printed statement) reproduces the series, and the two
//! variants coincide at kappa = 1.
//!
//!     cargo run --example generating_function

use jkon::jkpoly::generating_function_check;
use jkon::params::ParamSet;

fn main() -> jkon::Result<()> {
    for kappa in [1u32, 2, 3] {
        let p = ParamSet::new(0.5, 0.25, kappa, 0.0, 0.0)?;
        println!("kappa = {kappa}:");
        let c = generating_function_check(&p, 0.2, 0.5, 0.0, 5)?;
        println!("  t=0 reduction: lhs {:.12}  rhs {:.12}", c.lhs, c.rhs_statement);
        let c = generating_function_check(&p, 1.0, 0.0, 0.05, 40)?;
        println!(
            "  (x,y)=(1,0): lhs {:.15e}  closed (1-t)^-(1+a+b) {:.15e}",
            c.lhs,
            (1.0f64 - 0.05).powf(-1.75)
        );
        let c = generating_function_check(&p, 0.2, 0.5, 0.05, 40)?;
        println!("  full identity at (x,y,t) = (0.2, 0.5, 0.05):");
        println!("    lhs                      {:.15e}", c.lhs);
        println!(
            "    rhs, statement variant   {:.15e}  (rel dev {:.1e})",
            c.rhs_statement,
            (c.rhs_statement - c.lhs).abs() / c.lhs.abs()
        );
        println!(
            "    rhs, t y^k/(t-1) variant {:.15e}  (rel dev {:.1e})",
            c.rhs_reconstruction,
            (c.rhs_reconstruction - c.lhs).abs() / c.lhs.abs()
        );
    }
    Ok(())
}
