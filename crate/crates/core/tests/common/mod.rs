#![allow(dead_code)]

use nalgebra::Matrix4;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rydberg_cz::channels::{Assignment, ChannelKind, ChannelSpec};
use rydberg_cz::process::{Operation, TwoQubitState};

/// Random density matrix G G† / tr from a Gaussian-ish G.
pub fn random_state(rng: &mut ChaCha8Rng) -> TwoQubitState {
    let g = Matrix4::from_fn(|_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let rho = g * g.adjoint();
    let tr = rho.trace().re;
    TwoQubitState::new(rho / Complex64::new(tr, 0.0)).expect("valid random state")
}

pub fn random_states(n: usize, seed: u64) -> Vec<TwoQubitState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_state(&mut rng)).collect()
}

/// Every library channel at strength `eps`, single-qubit kinds on each qubit
/// and the microwave pulse also about a rotated axis.
pub fn all_channels(eps: f64) -> Vec<(String, Operation)> {
    let mut out = Vec::new();
    for kind in ChannelKind::ALL {
        let specs: Vec<ChannelSpec> = if kind.is_joint() {
            vec![ChannelSpec::new(kind, eps, Assignment::Joint).unwrap()]
        } else {
            let mut v = vec![
                ChannelSpec::new(kind, eps, Assignment::Control).unwrap(),
                ChannelSpec::new(kind, eps, Assignment::Target).unwrap(),
            ];
            if kind == ChannelKind::MicrowaveHalfPi {
                v.push(ChannelSpec::with_axis(kind, eps, 0.7, Assignment::Target).unwrap());
            }
            v
        };
        for s in specs {
            for op in s.to_operations() {
                out.push((format!("{} {:?} {}", kind, s.assignment, s.axis_angle), op));
            }
        }
    }
    out
}
