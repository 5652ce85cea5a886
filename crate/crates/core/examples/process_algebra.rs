//! Building and composing two-qubit error processes by hand.

use rydberg_cz::channels::{chi_anticontrolled_dephasing, chi_dephasing, chi_microwave_half_pi};
use rydberg_cz::process::{compose, uhlmann_fidelity, Operation, Qubit, TwoQubitState};

fn main() -> rydberg_cz::Result<()> {
    let bell = TwoQubitState::phi_plus();
    let ops = vec![
        Operation::Single { process: chi_dephasing(0.02)?, qubit: Qubit::Control },
        Operation::Joint(chi_anticontrolled_dephasing(0.01)?),
    ];
    let out = compose(&ops, &bell);
    println!("fidelity after dephasing: {:.6}", uhlmann_fidelity(&out, &bell)?);

    // Pauli-sum and Kraus application agree.
    let joint = chi_anticontrolled_dephasing(0.3)?;
    let a = joint.apply(&bell);
    let b = joint.apply_kraus(&bell);
    println!("Pauli sum vs Kraus difference: {:.2e}", a.max_abs_diff(&b));

    // A microwave pulse about a rotated axis.
    let framed = chi_microwave_half_pi(0.0028)?.in_frame(std::f64::consts::FRAC_PI_2);
    let ground = TwoQubitState::basis(0);
    let rotated = framed.apply(&ground, Qubit::Target);
    println!("target populations after the pulse: {:?}", rotated.populations());
    println!("process eigenvalues: {:?}", framed.effective().eigenvalues());
    Ok(())
}
