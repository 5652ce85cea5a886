//! Target fringe with and without a blockading control atom.

use rydberg_cz::bell::{parity_grid, simulate_eye_diagram, PipelineOptions};
use rydberg_cz::budget::{assemble_budget, PhysicalParams};

fn main() -> rydberg_cz::Result<()> {
    let budget = assemble_budget(&PhysicalParams::default())?;
    let grid = parity_grid(32);
    let opts = PipelineOptions::default();
    let on = simulate_eye_diagram(&budget, &opts, true, &grid)?;
    let off = simulate_eye_diagram(&budget, &opts, false, &grid)?;
    println!("theta_rad  p1_control_loaded  p1_control_empty");
    for ((theta, a), b) in grid.iter().zip(&on.p1).zip(&off.p1) {
        println!("{theta:9.4}  {a:17.4}  {b:16.4}");
    }
    println!("contrast loaded {:.3}, empty {:.3}", on.contrast, off.contrast);
    println!("phase difference {:.3} rad", (on.fit.phase - off.fit.phase).rem_euclid(std::f64::consts::TAU));
    Ok(())
}
