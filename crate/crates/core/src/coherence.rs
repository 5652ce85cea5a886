//! Decoherence of a driven qubit in a thermal trap.
//!
//! A trapped atom in vibrational state n = (n_x, n_y, n_z) sees a qubit
//! detuning Δ₁(n) = (Δ̄/2)·E with E = n·ω, where Δ̄ is the fractional
//! differential light shift. Rabi oscillations of a thermal ensemble dephase
//! as the generalised Rabi frequencies spread. The semiclassical path uses the
//! continuum weight ω_xω_yω_zβ³e^{−βE}; the discrete path sums exact
//! Boltzmann factors.

use serde::Serialize;

use crate::constants::{HBAR, K_B};
use crate::quadrature::{composite_legendre, gauss_laguerre};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThermalDriveParams {
    /// Drive Rabi frequency (rad/s).
    pub rabi_frequency: f64,
    /// Fractional differential light shift.
    pub light_shift: f64,
    /// Trap vibrational frequencies (rad/s).
    pub trap_frequencies: [f64; 3],
    /// Temperature (K).
    pub temperature: f64,
}

impl ThermalDriveParams {
    pub fn new(rabi_frequency: f64, light_shift: f64, trap_frequencies: [f64; 3], temperature: f64) -> Result<Self> {
        let p = ThermalDriveParams {
            rabi_frequency,
            light_shift,
            trap_frequencies,
            temperature,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.rabi_frequency,
            self.light_shift,
            self.trap_frequencies[0],
            self.trap_frequencies[1],
            self.trap_frequencies[2],
            self.temperature,
        ];
        if all.iter().all(|v| *v > 0.0 && v.is_finite()) {
            Ok(())
        } else {
            Err(Error::Validation(
                "drive, light shift, trap frequencies and temperature must be positive".into(),
            ))
        }
    }

    /// β = ħ/(k_B T) in seconds.
    pub fn beta(&self) -> f64 {
        HBAR / (K_B * self.temperature)
    }

    /// β·max(ω); the semiclassical results assume this is small.
    pub fn thermal_ratio(&self) -> f64 {
        self.beta() * self.trap_frequencies.iter().cloned().fold(0.0, f64::max)
    }

    pub fn is_thermal(&self) -> bool {
        self.thermal_ratio() <= 1.0
    }

    /// Dimensionless phase rate κ = mπΔ̄²/(4Ω²β²) multiplying u² = (βE)² at
    /// t = 2mπ/Ω.
    pub fn kappa(&self, m: f64) -> f64 {
        m * std::f64::consts::PI * self.light_shift.powi(2) / (4.0 * (self.rabi_frequency * self.beta()).powi(2))
    }

    /// Inverse of [`kappa`](Self::kappa).
    pub fn m_for_kappa(&self, kappa: f64) -> f64 {
        kappa / self.kappa(1.0)
    }

    /// t = 2mπ/Ω.
    pub fn time_for_m(&self, m: f64) -> f64 {
        2.0 * m * std::f64::consts::PI / self.rabi_frequency
    }

    fn detuning(&self, energy: f64) -> f64 {
        0.5 * self.light_shift * energy
    }
}

/// a₀ = 3Δ̄²/(2Ω²β²).
pub fn semiclassical_a0(p: &ThermalDriveParams) -> f64 {
    1.5 * p.light_shift.powi(2) / (p.rabi_frequency * p.beta()).powi(2)
}

/// a₀ from a 3D Gauss–Laguerre evaluation of its defining integral
/// (Δ̄²β³ω_xω_yω_z/8Ω²)∭ e^{−βn·ω}(n·ω)² d³n.
pub fn a0_quadrature(p: &ThermalDriveParams, order: usize) -> Result<f64> {
    let rule = gauss_laguerre(order, 0)?;
    let beta = p.beta();
    let [wx, wy, wz] = p.trap_frequencies;
    // n_i = x_i/(βω_i) maps each axis onto the Laguerre weight e^{−x}.
    let mut sum = 0.0;
    for (x, a) in rule.nodes.iter().zip(&rule.weights) {
        for (y, b) in rule.nodes.iter().zip(&rule.weights) {
            for (z, c) in rule.nodes.iter().zip(&rule.weights) {
                let e = (x + y + z) / beta;
                sum += a * b * c * e * e;
            }
        }
    }
    let jacobian = 1.0 / (beta.powi(3) * wx * wy * wz);
    let pref = p.light_shift.powi(2) * beta.powi(3) * wx * wy * wz / (8.0 * p.rabi_frequency.powi(2));
    Ok(pref * jacobian * sum)
}

/// ⟨cos(κu²)⟩ and ⟨sin(κu²)⟩ under the weight u⁴e^{−u}/24, i.e. a_m/a₀ and
/// a_m′/a₀ after reducing the 3D integrals to the single variable u = βE.
pub fn envelope_moments(kappa: f64) -> Result<(f64, f64)> {
    let upper = 90.0;
    let panels = (64.0 + kappa * upper * upper / 2.0).ceil() as usize;
    let weight = |u: f64| u.powi(4) * (-u).exp() / 24.0;
    let c = composite_legendre(|u| weight(u) * (kappa * u * u).cos(), 0.0, upper, 12, panels)?;
    let s = composite_legendre(|u| weight(u) * (kappa * u * u).sin(), 0.0, upper, 12, panels)?;
    Ok((c, s))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Moments {
    pub a_m: f64,
    pub a_m_prime: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentComparison {
    pub m: f64,
    /// Numerical evaluation of the defining integrals.
    pub integral: Moments,
    /// Second-order (a_m) and first-order (a_m′) small-time expansions.
    pub expansion: Moments,
}

/// a_m and a_m′ at t = 2mπ/Ω by integral and by expansion.
pub fn semiclassical_am(p: &ThermalDriveParams, m: f64) -> Result<MomentComparison> {
    if !(m >= 0.0) {
        return Err(Error::Usage(format!("m = {m} must be non-negative")));
    }
    let a0 = semiclassical_a0(p);
    let (c, s) = envelope_moments(p.kappa(m))?;
    let x = p.light_shift / (p.rabi_frequency * p.beta());
    let t = p.time_for_m(m);
    let expansion = Moments {
        a_m: a0 - 315.0 * std::f64::consts::PI.powi(2) * m * m / 4.0 * x.powi(6),
        a_m_prime: 45.0 / 8.0 * (p.light_shift / (p.rabi_frequency.powf(0.75) * p.beta())).powi(4) * t,
    };
    Ok(MomentComparison {
        m,
        integral: Moments {
            a_m: a0 * c,
            a_m_prime: a0 * s,
        },
        expansion,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct T2Rabi {
    /// √(8(1−1/e)/105)·Ωβ²/Δ̄².
    pub closed_form: f64,
    /// Time at which the integral envelope a_m/a₀ falls to 1/e.
    pub integral_root: f64,
    /// Fractional number of Rabi cycles at the root.
    pub root_m: f64,
}

pub fn t2_rabi_closed(p: &ThermalDriveParams) -> f64 {
    let c = (8.0 * (1.0 - (-1f64).exp()) / 105.0).sqrt();
    c * p.rabi_frequency * p.beta().powi(2) / p.light_shift.powi(2)
}

/// Closed form and integral-envelope 1/e time. The envelope is evaluated at
/// the integer m bracketing the crossing and interpolated linearly.
pub fn t2_rabi(p: &ThermalDriveParams) -> Result<T2Rabi> {
    let target = (-1f64).exp();
    let ratio = |k: f64| envelope_moments(k).map(|(c, _)| c);
    // Bracket the crossing in κ.
    let mut hi = 0.01;
    while ratio(hi)? > target {
        hi *= 2.0;
        if hi > 10.0 {
            return Err(Error::Numerical("Rabi envelope never falls to 1/e".into()));
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ratio(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    let m_star = p.m_for_kappa(0.5 * (lo + hi));
    let m0 = m_star.floor();
    let m1 = m0 + 1.0;
    let r0 = ratio(p.kappa(m0))?;
    let r1 = ratio(p.kappa(m1))?;
    let m = if r0 == r1 { m_star } else { m0 + (r0 - target) / (r0 - r1) };
    Ok(T2Rabi {
        closed_form: t2_rabi_closed(p),
        integral_root: p.time_for_m(m),
        root_m: m,
    })
}

/// Reference point for the static (Ramsey) coherence time, which scales as 1/T.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RamseyAnchor {
    pub t2: f64,
    pub temperature: f64,
}

impl Default for RamseyAnchor {
    /// 1.6 ms at 15 µK.
    fn default() -> Self {
        RamseyAnchor {
            t2: 1.6e-3,
            temperature: 15e-6,
        }
    }
}

pub fn t2_ramsey_static(temperature: f64, anchor: &RamseyAnchor) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(Error::Validation(format!("temperature {temperature} must be positive")));
    }
    Ok(anchor.t2 * anchor.temperature / temperature)
}

/// Discrete thermal distribution of the vibrational energy E = n·ω.
#[derive(Clone, Debug, PartialEq)]
pub struct ThermalSpectrum {
    /// (energy in rad/s, probability), probabilities summing to one.
    pub levels: Vec<(f64, f64)>,
    /// Boltzmann weight dropped by truncating each axis, before renormalising.
    pub truncated_weight: f64,
}

const AXIS_TAIL: f64 = 3e-9;
const MAX_DIRECT_LEVELS: usize = 20_000_000;

fn axis_weights(beta_omega: f64) -> Vec<f64> {
    let q = (-beta_omega).exp();
    // Keep n ≤ N with q^{N+1} ≤ AXIS_TAIL.
    let n_max = (AXIS_TAIL.ln() / q.ln()).ceil().max(0.0) as usize;
    let mut w = Vec::with_capacity(n_max + 1);
    let mut p = 1.0 - q;
    for _ in 0..=n_max {
        w.push(p);
        p *= q;
    }
    w
}

fn common_base(freqs: &[f64; 3]) -> Option<(f64, [usize; 3])> {
    let min = freqs.iter().cloned().fold(f64::INFINITY, f64::min);
    for k in 1..=64 {
        let base = min / k as f64;
        let mut mult = [0usize; 3];
        let mut ok = true;
        for (i, f) in freqs.iter().enumerate() {
            let r = f / base;
            let n = r.round();
            if (r - n).abs() > 1e-9 * r {
                ok = false;
                break;
            }
            mult[i] = n as usize;
        }
        if ok {
            return Some((base, mult));
        }
    }
    None
}

impl ThermalSpectrum {
    pub fn new(p: &ThermalDriveParams) -> Result<Self> {
        p.validate()?;
        let beta = p.beta();
        let axes: Vec<Vec<f64>> = p.trap_frequencies.iter().map(|w| axis_weights(beta * w)).collect();
        let kept: f64 = axes.iter().map(|a| a.iter().sum::<f64>()).product();
        let truncated_weight = 1.0 - kept;
        let levels = if let Some((base, mult)) = common_base(&p.trap_frequencies) {
            // Convolve on an integer grid of energy quanta.
            let mut grid = vec![1.0];
            for (axis, &r) in axes.iter().zip(&mult) {
                let len = grid.len() + (axis.len() - 1) * r;
                let mut next = vec![0.0; len];
                for (j, &g) in grid.iter().enumerate() {
                    if g == 0.0 {
                        continue;
                    }
                    for (n, &w) in axis.iter().enumerate() {
                        next[j + n * r] += g * w;
                    }
                }
                grid = next;
            }
            grid.iter()
                .enumerate()
                .filter(|(_, &w)| w > 0.0)
                .map(|(k, &w)| (k as f64 * base, w / kept))
                .collect()
        } else {
            let size = axes.iter().map(|a| a.len()).product::<usize>();
            if size > MAX_DIRECT_LEVELS {
                return Err(Error::Numerical(format!(
                    "incommensurate trap frequencies need {size} levels; limit is {MAX_DIRECT_LEVELS}"
                )));
            }
            let w = p.trap_frequencies;
            let mut out = Vec::with_capacity(size);
            for (i, a) in axes[0].iter().enumerate() {
                for (j, b) in axes[1].iter().enumerate() {
                    for (k, c) in axes[2].iter().enumerate() {
                        let e = i as f64 * w[0] + j as f64 * w[1] + k as f64 * w[2];
                        out.push((e, a * b * c / kept));
                    }
                }
            }
            out
        };
        Ok(ThermalSpectrum {
            levels,
            truncated_weight,
        })
    }

    pub fn expectation<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.levels.iter().map(|&(e, w)| w * f(e)).sum()
    }
}

/// |⟨1|R|0⟩|² = (Ω²/G²) sin²(Gt/2) for a level of vibrational energy E.
fn excitation(p: &ThermalDriveParams, energy: f64, t: f64) -> f64 {
    let d = p.detuning(energy);
    let g2 = p.rabi_frequency.powi(2) + d * d;
    p.rabi_frequency.powi(2) / g2 * (0.5 * g2.sqrt() * t).sin().powi(2)
}

/// Excited population after a drive of duration t, summed over vibrational
/// states with exact Boltzmann weights.
pub fn rabi_population_exact(p: &ThermalDriveParams, t: f64) -> Result<f64> {
    let spec = ThermalSpectrum::new(p)?;
    Ok(spec.expectation(|e| excitation(p, e, t)))
}

/// Same population with the continuum thermal weight, reduced to one
/// dimension: ⟨·⟩ over u = βE with density u²e^{−u}/2.
pub fn rabi_population_semiclassical(p: &ThermalDriveParams, t: f64) -> Result<f64> {
    let beta = p.beta();
    let upper = 80.0;
    let spread = p.detuning(upper / beta).powi(2) / p.rabi_frequency * t;
    let panels = (64.0 + spread).ceil() as usize;
    composite_legendre(
        |u| u * u * (-u).exp() / 2.0 * excitation(p, u / beta, t),
        0.0,
        upper,
        12,
        panels,
    )
}

/// a_m evaluated with exact discrete Boltzmann weights in place of the
/// continuum weight: (Δ̄²/8Ω²) Σ_n P_n E² cos(mπΔ̄²E²/(4Ω²)).
pub fn exact_am(p: &ThermalDriveParams, spectrum: &ThermalSpectrum, m: f64) -> Moments {
    let pref = p.light_shift.powi(2) / (8.0 * p.rabi_frequency.powi(2));
    let k = m * std::f64::consts::PI * p.light_shift.powi(2) / (4.0 * p.rabi_frequency.powi(2));
    let mut c = 0.0;
    let mut s = 0.0;
    for &(e, w) in &spectrum.levels {
        let phase = k * e * e;
        c += w * e * e * phase.cos();
        s += w * e * e * phase.sin();
    }
    Moments {
        a_m: pref * c,
        a_m_prime: pref * s,
    }
}
