//! Bell-state fidelity for each error group, direct and from parity.

use rydberg_cz::bell::{run_bell, PipelineMode, PipelineOptions};
use rydberg_cz::budget::{assemble_budget, PhysicalParams};

fn main() -> rydberg_cz::Result<()> {
    let budget = assemble_budget(&PhysicalParams::default())?;
    println!("{:<8} {:>9} {:>11} {:>9} {:>9}", "mode", "F_direct", "population", "C", "F_exp");
    for mode in PipelineMode::ALL {
        let r = run_bell(&budget, &PipelineOptions::default().with_mode(mode))?;
        println!(
            "{:<8} {:>9.4} {:>11.4} {:>9.4} {:>9.4}",
            mode.to_string(),
            r.f_direct,
            r.population,
            r.coherence,
            r.f_experimental
        );
    }
    Ok(())
}
