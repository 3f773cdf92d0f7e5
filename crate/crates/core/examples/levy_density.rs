//! Staircase θ and the Lévy density of log V_α, with a complete monotonicity
//! check of that density.

use stable_lab::checks::{check_cm, CheckConfig, Target};
use stable_lab::levy::{levy_density_w, reconstruct_w_laplace, theta, w_laplace_identity};
use stable_lab::numerics::QuadConfig;
use stable_lab::stable::AlphaParam;

fn main() -> stable_lab::Result<()> {
    let alpha = AlphaParam::new(0.3)?;
    let ts: Vec<String> = (0..12).map(|i| format!("{:.3}", theta(alpha, 0.5 * i as f64))).collect();
    println!("θ on 0, 0.5, ..: {}", ts.join(" "));
    for x in [0.1, 1.0, 10.0] {
        println!("w({x}) = {:.12e}", levy_density_w(alpha, x)?);
    }
    let q = QuadConfig::new(1e-300, 1e-11, 4000)?;
    for l in [0.5, 1.0, 2.0] {
        println!(
            "λ={l}: Gamma-ratio {:.12}, from w {:.12}",
            w_laplace_identity(alpha, l),
            reconstruct_w_laplace(alpha, l, &q)?
        );
    }
    let cfg = CheckConfig { max_order: 6, ..CheckConfig::default() };
    let r = check_cm(&Target::levy_w(alpha)?, &cfg)?;
    println!("CM up to order 6: {} (worst margin {:.3e})", r.passed, r.worst_margin);
    Ok(())
}
