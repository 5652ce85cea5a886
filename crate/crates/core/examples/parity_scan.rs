//! Parity oscillation of the prepared Bell state and its sinusoid fit.

use rydberg_cz::bell::{run_bell, PipelineOptions};
use rydberg_cz::budget::{assemble_budget, PhysicalParams};

fn main() -> rydberg_cz::Result<()> {
    let budget = assemble_budget(&PhysicalParams::default())?;
    let r = run_bell(&budget, &PipelineOptions::default())?;
    for (phi, p) in r.parity.phi.iter().zip(&r.parity.parity).step_by(4) {
        let bar = ((p + 1.0) * 30.0).round() as usize;
        println!("{phi:6.3} {p:+.4} {}", "#".repeat(bar));
    }
    println!(
        "fit amplitude {:.4}, phase {:.4} rad, offset {:+.4}",
        r.fit.amplitude, r.fit.phase, r.fit.offset
    );
    println!("C = {:.4}, (P00+P11)/2 = {:.4}", r.coherence, r.population);
    Ok(())
}
