//! Thermal escape during the trap-off window: closed form and Monte Carlo.

use rydberg_cz::beam::monte_carlo_escape;
use rydberg_cz::budget::{escape_log_probability, escape_probability_closed, PhysicalParams};
use rydberg_cz::constants::K_B;

fn main() -> rydberg_cz::Result<()> {
    let p = PhysicalParams::default();
    let v = p.escape_distance / p.drop_time;
    println!(
        "trap-off escape at {:.0} uK: ln P = {:.1}",
        p.temperature * 1e6,
        escape_log_probability(v, p.temperature, p.mass)
    );
    // Temperature at which half the atoms would escape.
    let t_half = p.mass * v * v / (2.0 * K_B * std::f64::consts::LN_2);
    let closed = escape_probability_closed(v, t_half, p.mass);
    let mc = monte_carlo_escape(p.escape_distance, p.drop_time, t_half, p.mass, 200_000, 7)?;
    println!(
        "T = {:.3} mK: closed form {closed:.4}, Monte Carlo {:.4} +/- {:.4}",
        t_half * 1e3,
        mc.probability,
        mc.stderr
    );
    Ok(())
}
