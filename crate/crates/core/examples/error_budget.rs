//! Prints the error budget with calculated and measured rows.

use rydberg_cz::budget::{assemble_budget, PhysicalParams, Provenance};

fn main() -> rydberg_cz::Result<()> {
    let params = PhysicalParams::default();
    let budget = assemble_budget(&params)?;
    for e in budget.entries() {
        let tag = match e.provenance {
            Provenance::Calculated => "calc",
            Provenance::Measured => "meas",
        };
        println!("{:<28} {:>10.3e}  {tag}", e.row.name(), e.epsilon);
    }
    let d = budget.diagnostics.as_ref().expect("assembled budgets carry diagnostics");
    println!("T2 Doppler {:.2} us, T2 magnetic {:.3} ms", d.t2_doppler * 1e6, d.t2_magnetic * 1e3);
    Ok(())
}
