//! Class P membership of the quotient T_α and the scale threshold beyond
//! which cT_α leaves the class.

use stable_lab::checks::{check_class_p, estimate_c_alpha, CheckConfig, Target};
use stable_lab::stable::AlphaParam;

fn main() -> stable_lab::Result<()> {
    let cfg = CheckConfig::default();
    for a in [0.3, 0.5, 0.7] {
        let t = Target::QuotientT { alpha: a };
        let r = check_class_p(&t, &cfg)?;
        let b = estimate_c_alpha(AlphaParam::new(a)?, &cfg)?;
        println!(
            "α={a}: class P {}, scale bracket [{:.4e}, {:.4e}]{}",
            r.passed,
            b.lower,
            b.upper,
            if b.open_ended { " (open)" } else { "" }
        );
    }
    Ok(())
}
