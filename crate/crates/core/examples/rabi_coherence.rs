//! Driven versus static coherence of a trapped-atom qubit.

use rydberg_cz::coherence::{
    exact_am, semiclassical_a0, semiclassical_am, t2_rabi, t2_ramsey_static, RamseyAnchor, ThermalDriveParams,
    ThermalSpectrum,
};
use rydberg_cz::constants::TWO_PI;

fn main() -> rydberg_cz::Result<()> {
    // Trap frequencies are illustrative; they set the absolute time scale only.
    let trap = [TWO_PI * 20e3, TWO_PI * 20e3, TWO_PI * 4e3];
    let anchor = RamseyAnchor::default();
    println!("T_uK  T2_ramsey_ms  T2_rabi_closed_ms  T2_rabi_integral_ms");
    for t_uk in [5.0, 10.0, 15.0, 20.0, 30.0] {
        let p = ThermalDriveParams::new(TWO_PI * 10e3, 2.5e-4, trap, t_uk * 1e-6)?;
        let t2 = t2_rabi(&p)?;
        println!(
            "{t_uk:4.0}  {:12.3}  {:17.2}  {:19.2}",
            t2_ramsey_static(p.temperature, &anchor)? * 1e3,
            t2.closed_form * 1e3,
            t2.integral_root * 1e3
        );
    }
    let p = ThermalDriveParams::new(TWO_PI * 10e3, 2.5e-4, trap, 15e-6)?;
    let spectrum = ThermalSpectrum::new(&p)?;
    let a0 = semiclassical_a0(&p);
    let exact0 = exact_am(&p, &spectrum, 0.0).a_m;
    for m in [0.0, 50.0, 100.0, 200.0] {
        let c = semiclassical_am(&p, m)?;
        let exact = exact_am(&p, &spectrum, m).a_m;
        println!(
            "m {m:5.0}: a_m/a0 integral {:.4}, expansion {:.4}, discrete sum {:.4}",
            c.integral.a_m / a0,
            c.expansion.a_m / a0,
            exact / exact0
        );
    }
    Ok(())
}
