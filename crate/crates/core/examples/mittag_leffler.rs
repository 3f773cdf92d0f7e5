//! The Mittag-Leffler function on the negative axis, its regimes, and the
//! density of M_α^s.

use stable_lab::numerics::mittag_leffler::{mittag_leffler, regime};
use stable_lab::stable::{derived_density, AlphaParam, Family, VariableDescriptor};

fn main() -> stable_lab::Result<()> {
    for x in [0.0, 0.5, 2.0, 10.0, 100.0] {
        println!(
            "E_0.7(-{x}) = {:.15e}  ({:?})",
            mittag_leffler(0.7, -x)?,
            regime(0.7, -x, 0)
        );
    }
    let alpha = AlphaParam::new(0.8)?;
    for s in [1.0, -0.8, -1.0] {
        let d = VariableDescriptor::with_alpha(Family::MittagLefflerPower { s }, alpha)?;
        let row: Vec<String> = [1e-6, 0.1, 0.5, 1.0, 3.0]
            .iter()
            .map(|&x| format!("{:.5}", derived_density(&d, x).unwrap_or(f64::NAN)))
            .collect();
        println!("density of M_0.8^{s}: {}", row.join(" "));
    }
    Ok(())
}
