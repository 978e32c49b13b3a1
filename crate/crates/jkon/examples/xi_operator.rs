//! The kernel integral operator: series vs kernel application, closed power
//! and exponential images, the L1 boundedness constant and the composition
//! identities.
//!
//!     cargo run --example xi_operator

use jkon::fractional::FracOrderPair;
use jkon::params::{ParamSet, TruncationPolicy};
use jkon::xi::{
    xi_apply_kernel, xi_apply_series, xi_bound_constant, xi_composition_check, xi_exp_image,
    xi_exp_image_series_oracle, xi_power_image, BoxDomain, XiSpec,
};

fn main() -> jkon::Result<()> {
    let policy = TruncationPolicy::default();
    let params = ParamSet::new(0.8, 1.1, 2, -2.0, 2.2)?;
    let spec = XiSpec::new(params, 0.4, 0.6, 0.0, 0.0)?;
    let (x, y) = (0.9, 0.7);

    let f = |t: f64, u: f64| 1.0 + t * u;
    let series = xi_apply_series(&spec, f, x, y, &policy, 16)?;
    let kernel = xi_apply_kernel(&spec, f, x, y, 24)?;
    println!("apply to f = 1 + t u at ({x}, {y}):");
    println!("  series form  {:+.15e}  ({} RL terms, exact)", series.value, series.terms_used);
    println!("  kernel form  {kernel:+.15e}");

    let closed = xi_power_image(&spec, 1.0, 2.0, x, y, &policy)?;
    let direct = xi_apply_series(&spec, |t, u| t * u * u, x, y, &policy, 16)?;
    println!("\npower image of t u^2:");
    println!("  closed JKML form {closed:+.15e}");
    println!("  series form      {:+.15e}", direct.value);

    let sp_exp = XiSpec::new(ParamSet::new(0.7, 1.3, 2, -2.0, 2.5)?, 0.5, 0.55, 0.0, 0.0)?;
    let closed = xi_exp_image(&sp_exp, 1.0, 1.1, 0.5, 0.25)?;
    let oracle = xi_exp_image_series_oracle(&sp_exp, 1.0, 1.1, 0.5, 0.25)?;
    println!("\nexponential image (left limits at -infinity), gamma1 = -2:");
    println!("  closed 2F0 form  {closed:+.15e}");
    println!("  termwise series  {oracle:+.15e}");

    let dom = BoxDomain::new(1.0, 0.0, 1.0, 0.0)?;
    let k = xi_bound_constant(&spec, &dom, &policy)?;
    println!("\nL1 bound constant on the unit box: K = {k:.12e}");

    let orders = FracOrderPair::new(0.5, 0.5, 0.0, 0.0)?;
    let (l, m, r) = xi_composition_check(&spec, &orders, (1.0, 1.0), 0.8, 0.7, false)?;
    println!("\ncomposition on the monomial (x-b)(y-d), integral orders (0.5, 0.5):");
    println!("  RL after operator   {l:+.15e}");
    println!("  shifted operator    {m:+.15e}");
    println!("  operator after RL   {r:+.15e}");
    Ok(())
}
