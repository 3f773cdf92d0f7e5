//! Pick (Nevanlinna) positivity on a rectangle of the upper half-plane.

use stable_lab::checks::{check_pick, g_t_log_derivative, pick_h, CheckConfig, PickRegion};

fn main() -> stable_lab::Result<()> {
    let cfg = CheckConfig::default();
    let region = PickRegion::default();
    for u in [0.25, 0.5, 0.75, 1.5] {
        let r = check_pick(|z| pick_h(u, z), &region, &cfg)?;
        println!("h_{u}: {} (worst {:.3e})", r.passed, r.worst_margin);
    }
    for t in [0.5, 1.0, 2.0, 2.5] {
        let r = check_pick(|z| g_t_log_derivative(t, z), &region, &cfg)?;
        println!("log-derivative, t={t}: {}", r.passed);
    }
    Ok(())
}
