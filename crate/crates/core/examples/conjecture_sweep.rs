//! Evidence table for powers of Z_α around the threshold |γ| = α/(1−α).

use stable_lab::sweep::{run_sweep, write_sweep_csv, Conjecture, SweepConfig};

fn main() -> stable_lab::Result<()> {
    let mut cfg = SweepConfig::new(Conjecture::StablePower, vec![1.0 / 3.0, 0.5], vec![-2.0, -1.0, 0.25, 1.0, 2.0]);
    cfg.budget_seconds = Some(60.0);
    let res = run_sweep(&cfg)?;
    write_sweep_csv(&res, std::io::stdout().lock())?;
    if res.partial {
        eprintln!("budget ran out");
    }
    Ok(())
}
