//! Rydberg pulse errors from thermal position spread in focused beams.

use rydberg_cz::beam::{
    pulse_error, scaling_exponent_check, AveragingOptions, BeamGeometry, PulseKind, PulseTiming,
    TrapDistribution,
};

fn main() -> rydberg_cz::Result<()> {
    let geom = BeamGeometry::reference();
    let opts = AveragingOptions::default();
    for sigma_um in [0.05, 0.1, 0.16, 0.2, 0.27] {
        let dist = TrapDistribution::new(sigma_um * 1e-6, 1.47e-6)?;
        let two_pi = pulse_error(&geom, &dist, PulseKind::TwoPi, PulseTiming::Nominal, &opts)?;
        let pi = pulse_error(&geom, &dist, PulseKind::Pi, PulseTiming::Nominal, &opts)?;
        println!(
            "sigma {sigma_um:4.2} um  2pi error {:.5} (std {:.5})  pi error {:.5}  2pi phase std {:.5} rad",
            two_pi.population.error, two_pi.population.std, pi.population.error, two_pi.phase.std
        );
    }
    let small: Vec<f64> = [0.01, 0.02, 0.04].iter().map(|s| s * 1e-6).collect();
    let fit = scaling_exponent_check(&geom, &small, PulseKind::TwoPi, &opts)?;
    println!("small-width slope of the population spread: {:.3}", fit.std_slope);
    Ok(())
}
