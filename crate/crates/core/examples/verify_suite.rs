//! Runs the registered checks and prints one line per outcome.

use std::collections::BTreeMap;

use stable_lab::verify::{run_suite, suite_ok, CHECK_IDS};

fn main() -> stable_lab::Result<()> {
    let outcomes = run_suite(&CHECK_IDS, &BTreeMap::new())?;
    for o in &outcomes {
        println!(
            "{:<22} passed={:<5} expected={:<5} worst={:+.3e}",
            o.id, o.passed, o.expected, o.worst_margin
        );
    }
    println!("suite ok: {}", suite_ok(&outcomes));
    Ok(())
}
