//! Lists the channel sequence of the Bell protocol and the budget it consumes.

use rydberg_cz::bell::{build_sequence, PipelineMode, PipelineOptions, StepKind};
use rydberg_cz::budget::{assemble_budget, PhysicalParams};

fn main() -> rydberg_cz::Result<()> {
    let budget = assemble_budget(&PhysicalParams::default())?;
    let mode: PipelineMode = std::env::args().nth(1).as_deref().unwrap_or("full").parse()?;
    let seq = build_sequence(&budget, &PipelineOptions::default().with_mode(mode))?;
    for s in &seq.steps {
        let what = match &s.kind {
            StepKind::Channel(c) => format!("{} {:?} eps={:.4}", c.kind, c.assignment, c.epsilon),
            StepKind::IdealCz => "C_Z".to_string(),
            StepKind::IdealStarkRotation => "Rz(pi/2) target".to_string(),
            StepKind::Confusion(c) => format!("confusion {c:.1e}"),
        };
        println!("{:<15} {:<45} {}", s.stage.to_string(), what, s.label);
    }
    println!();
    for (row, units) in seq.consumption() {
        println!("{:<28} x{units}", row.name());
    }
    Ok(())
}
