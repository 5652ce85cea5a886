//! Bell fidelity against array filling through the crosstalk scaler.

use rydberg_cz::bell::{run_bell, PipelineOptions};
use rydberg_cz::budget::{assemble_budget, PhysicalParams};

fn main() -> rydberg_cz::Result<()> {
    let mut reference = None;
    for fill in [0.55, 0.7, 0.85, 1.0] {
        let params = PhysicalParams {
            fill_fraction: Some(fill),
            ..PhysicalParams::default()
        };
        let f = run_bell(&assemble_budget(&params)?, &PipelineOptions::default())?.f_direct;
        let f0 = *reference.get_or_insert(f);
        println!("fill {fill:4.2}: F = {f:.5} (change {:+.5})", f - f0);
    }
    Ok(())
}
