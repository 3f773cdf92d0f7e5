//! Density of Z_{1/2} from Kanter's representation against its closed form,
//! and a few fractional moments.

use stable_lab::stable::density::density_quad;
use stable_lab::stable::{fractional_moment, kanter_b, stable_density, AlphaParam};

fn main() -> stable_lab::Result<()> {
    let half = AlphaParam::new(0.5)?;
    let cfg = density_quad();
    println!("{:>8} {:>22} {:>22}", "x", "kanter", "closed form");
    for x in [0.05, 0.1, 0.5, 1.0, 5.0, 50.0] {
        let f = stable_density(half, x, &cfg)?;
        let exact = (-1.0 / (4.0 * x)).exp() / (2.0 * std::f64::consts::PI.sqrt() * x.powf(1.5));
        println!("{x:>8} {f:>22.15e} {exact:>22.15e}");
    }

    let a = AlphaParam::new(0.7)?;
    let k = kanter_b(a, 1.0)?;
    println!("\nb_0.7(1) = {:?}", k);
    for s in [-1.0, -0.5, 0.3, 0.6] {
        println!("E[Z_0.7^{s}] = {:.12}", fractional_moment(a, s)?);
    }
    Ok(())
}
