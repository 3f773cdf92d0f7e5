//! Boundary truth tables for the HM and HCM checks.

use stable_lab::checks::{check_hcm, check_hm, CheckConfig, Target};

fn main() -> stable_lab::Result<()> {
    let cfg = CheckConfig::default();
    for a in [0.3, 0.5, 0.7] {
        let r = check_hm(&Target::QuotientY { alpha: a }, &cfg)?;
        println!("HM  quotient Y, α={a}: {}", r.passed);
    }
    for a in [0.25, 0.5, 0.75] {
        let r = check_hcm(&Target::Prop41M { alpha: a }, &cfg)?;
        println!("HCM m_α, α={a}: {}", r.passed);
    }
    for t in [0.5, 1.0, 1.5, 2.0, 2.5] {
        let r = check_hcm(&Target::FT { t }, &cfg)?;
        println!(
            "HCM f_t, t={t}: {} (first failing order {:?})",
            r.passed,
            r.first_failing_order(cfg.rel_tol)
        );
    }
    let r = check_hcm(&Target::VHalf, &cfg)?;
    println!("HCM V_1/2: {} at {:?}", r.passed, r.worst_location);
    Ok(())
}
