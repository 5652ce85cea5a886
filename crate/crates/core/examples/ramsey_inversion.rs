//! Recovers a microwave pulse error from a simulated Ramsey fringe.

use rydberg_cz::bell::{extract_epsilon, parity_grid, simulate_ramsey, RamseyModel};

fn main() -> rydberg_cz::Result<()> {
    let spam = RamseyModel {
        readout_loss: 0.0025,
        optical_pumping: 0.005,
        state_measurement: 1.5e-4,
        ..RamseyModel::default()
    };
    let theta = parity_grid(24);
    let measured = simulate_ramsey(&spam.with_microwave(0.0028), &theta)?;
    println!("fringe half-amplitude {:.6}", measured.amplitude);
    let eps = extract_epsilon(measured.amplitude, |e| {
        simulate_ramsey(&spam.with_microwave(e), &theta).map(|c| c.amplitude)
    })?;
    println!("recovered microwave error {eps:.6}");

    // Stark-pulse dephasing with the microwave error held fixed.
    let base = spam.with_microwave(0.0028);
    let local = simulate_ramsey(&RamseyModel { dephasing: 0.006, ..base }, &theta)?;
    let stark = extract_epsilon(local.amplitude, |e| {
        simulate_ramsey(&RamseyModel { dephasing: e, ..base }, &theta).map(|c| c.amplitude)
    })?;
    println!("recovered Stark dephasing {stark:.6}");
    Ok(())
}
