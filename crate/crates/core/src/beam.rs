//! Thermal position averaging of Rydberg pulses in Gaussian beams, and the
//! trap-drop escape check.
//!
//! An atom at position r sees the two-photon Rabi frequency Ω(r) = Ω_R f₁f₂
//! and detuning Δ(r) = Δ₀ + Δ₁f₁² + Δ₂f₂², where f_j is the field envelope of
//! beam j relative to its centre value.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use crate::constants::{mhz_to_rad, K_B};
use crate::quadrature::gauss_hermite;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BeamGeometry {
    pub waist1: f64,
    pub waist2: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    /// Peak two-photon Rabi frequency (rad/s).
    pub rabi_frequency: f64,
    pub delta0: f64,
    /// Stark-shift coefficients of the two beams (rad/s).
    pub delta1: f64,
    pub delta2: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Envelope {
    pub f1: f64,
    pub f2: f64,
    pub omega_local: f64,
    pub delta_local: f64,
}

impl BeamGeometry {
    /// Geometry with Δ₀ = −(Δ₁+Δ₂), so an atom at the beam centre is resonant.
    pub fn resonant(
        waist1: f64,
        waist2: f64,
        lambda1: f64,
        lambda2: f64,
        rabi_frequency: f64,
        delta1: f64,
        delta2: f64,
    ) -> Result<Self> {
        let g = BeamGeometry {
            waist1,
            waist2,
            lambda1,
            lambda2,
            rabi_frequency,
            delta0: -(delta1 + delta2),
            delta1,
            delta2,
        };
        g.validate()?;
        Ok(g)
    }

    /// 2.25 µm and 2.5 µm waists at 459 nm and 1038 nm, Ω_R/2π = 4.5 MHz,
    /// Stark coefficients −2.7 MHz and 6.4 MHz, resonant at the centre.
    pub fn reference() -> Self {
        Self::resonant(
            2.25e-6,
            2.5e-6,
            459e-9,
            1038e-9,
            mhz_to_rad(4.5),
            mhz_to_rad(-2.7),
            mhz_to_rad(6.4),
        )
        .expect("valid reference geometry")
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("waist1", self.waist1),
            ("waist2", self.waist2),
            ("lambda1", self.lambda1),
            ("lambda2", self.lambda2),
            ("rabi_frequency", self.rabi_frequency),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Validation(format!("beam {name} = {v} must be positive")));
            }
        }
        for (name, v) in [("delta0", self.delta0), ("delta1", self.delta1), ("delta2", self.delta2)] {
            if !v.is_finite() {
                return Err(Error::Validation(format!("beam {name} = {v} must be finite")));
            }
        }
        Ok(())
    }

    /// Rayleigh lengths πw²/λ of the two beams.
    pub fn rayleigh_lengths(&self) -> (f64, f64) {
        let pi = std::f64::consts::PI;
        (
            pi * self.waist1 * self.waist1 / self.lambda1,
            pi * self.waist2 * self.waist2 / self.lambda2,
        )
    }

    pub fn envelope(&self, r: [f64; 3]) -> Envelope {
        let (l1, l2) = self.rayleigh_lengths();
        let rho2 = r[0] * r[0] + r[1] * r[1];
        let field = |w: f64, l: f64| {
            let grow = 1.0 + r[2] * r[2] / (l * l);
            (-rho2 / (w * w * grow)).exp() / grow.sqrt()
        };
        let f1 = field(self.waist1, l1);
        let f2 = field(self.waist2, l2);
        Envelope {
            f1,
            f2,
            omega_local: self.rabi_frequency * f1 * f2,
            delta_local: self.delta0 + self.delta1 * f1 * f1 + self.delta2 * f2 * f2,
        }
    }

    /// π/Ω_R or 2π/Ω_R.
    pub fn nominal_time(&self, pulse: PulseKind) -> f64 {
        pulse.area() / self.rabi_frequency
    }
}

/// Gaussian position distribution of a trapped atom.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrapDistribution {
    /// Transverse rms width (m).
    pub sigma: f64,
    /// Axial rms width (m); zero for the planar reduction.
    pub sigma_z: f64,
}

impl TrapDistribution {
    pub fn new(sigma: f64, sigma_z: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma_z > 0.0 && sigma.is_finite() && sigma_z.is_finite()) {
            return Err(Error::Validation(format!(
                "trap widths must be positive (sigma = {sigma}, sigma_z = {sigma_z})"
            )));
        }
        Ok(TrapDistribution { sigma, sigma_z })
    }

    /// Atom confined to the focal plane z = 0.
    pub fn planar(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::Validation(format!("trap width sigma = {sigma} must be positive")));
        }
        Ok(TrapDistribution { sigma, sigma_z: 0.0 })
    }

    pub fn is_planar(&self) -> bool {
        self.sigma_z == 0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PulseKind {
    /// Ground to Rydberg transfer; target population is the Rydberg level.
    Pi,
    /// Full cycle back to the ground level.
    #[serde(rename = "2pi")]
    TwoPi,
}

impl PulseKind {
    pub fn area(self) -> f64 {
        match self {
            PulseKind::Pi => std::f64::consts::PI,
            PulseKind::TwoPi => 2.0 * std::f64::consts::PI,
        }
    }
}

impl FromStr for PulseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pi" => Ok(PulseKind::Pi),
            "2pi" => Ok(PulseKind::TwoPi),
            other => Err(Error::Usage(format!("unknown pulse '{other}', expected pi or 2pi"))),
        }
    }
}

impl fmt::Display for PulseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PulseKind::Pi => "pi",
            PulseKind::TwoPi => "2pi",
        })
    }
}

/// How the oscillation argument is formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RabiForm {
    /// Generalised Rabi frequency √(Ω²+Δ²) in the sine.
    Generalized,
    /// Local resonant Rabi frequency Ω(r) in the sine, detuning only in the
    /// prefactor.
    Printed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PulseTiming {
    /// π/Ω_R or 2π/Ω_R.
    Nominal,
    /// Time minimising |⟨P⟩ − P_target|.
    Optimized,
}

impl FromStr for PulseTiming {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nominal" => Ok(PulseTiming::Nominal),
            "optimized" => Ok(PulseTiming::Optimized),
            other => Err(Error::Usage(format!("unknown timing '{other}', expected nominal or optimized"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AveragingOptions {
    /// Starting Gauss–Hermite order per axis.
    pub order: usize,
    /// Largest order tried before reporting non-convergence.
    pub max_order: usize,
    /// Relative agreement required between successive orders.
    pub rel_tol: f64,
    pub form: RabiForm,
}

impl Default for AveragingOptions {
    fn default() -> Self {
        AveragingOptions {
            order: 24,
            max_order: 96,
            rel_tol: 1e-6,
            form: RabiForm::Generalized,
        }
    }
}

/// Quadrature nodes with Ω, Δ and √(Ω²+Δ²) cached.
#[derive(Clone, Debug)]
pub struct PositionEnsemble {
    pub order: usize,
    weights: Vec<f64>,
    omega: Vec<f64>,
    delta: Vec<f64>,
    general: Vec<f64>,
    peak_omega: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PopulationStats {
    /// ⟨P⟩ of the target level (|1⟩ after 2π, Rydberg after π).
    pub mean: f64,
    /// ⟨(P − P_target)²⟩ with P_target = 1.
    pub variance: f64,
    /// 1 − ⟨P⟩.
    pub error: f64,
    /// Spread √(⟨P²⟩ − ⟨P⟩²).
    pub std: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseStats {
    pub mean_phi: f64,
    pub one_minus_cos: f64,
    pub std: f64,
}

impl PositionEnsemble {
    pub fn new(geom: &BeamGeometry, dist: &TrapDistribution, order: usize) -> Result<Self> {
        geom.validate()?;
        let rule = gauss_hermite(order)?;
        let (zs, zw): (Vec<f64>, Vec<f64>) = if dist.is_planar() {
            (vec![0.0], vec![1.0])
        } else {
            (
                rule.nodes.iter().map(|x| x * dist.sigma_z).collect(),
                rule.weights.clone(),
            )
        };
        let n = order * order * zs.len();
        let mut ens = PositionEnsemble {
            order,
            weights: Vec::with_capacity(n),
            omega: Vec::with_capacity(n),
            delta: Vec::with_capacity(n),
            general: Vec::with_capacity(n),
            peak_omega: geom.rabi_frequency,
        };
        for (i, &xi) in rule.nodes.iter().enumerate() {
            for (j, &yj) in rule.nodes.iter().enumerate() {
                for (k, &zk) in zs.iter().enumerate() {
                    let env = geom.envelope([xi * dist.sigma, yj * dist.sigma, zk]);
                    ens.weights.push(rule.weights[i] * rule.weights[j] * zw[k]);
                    ens.omega.push(env.omega_local);
                    ens.delta.push(env.delta_local);
                    ens.general.push(env.omega_local.hypot(env.delta_local));
                }
            }
        }
        Ok(ens)
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Error of a single atom, 1 − P_target(r).
    fn node_error(&self, i: usize, t: f64, pulse: PulseKind, form: RabiForm) -> f64 {
        let (om, de, g) = (self.omega[i], self.delta[i], self.general[i]);
        if g == 0.0 {
            return match pulse {
                PulseKind::TwoPi => 0.0,
                PulseKind::Pi => 1.0,
            };
        }
        let frac = (om / g).powi(2);
        let arg = match form {
            RabiForm::Generalized => 0.5 * g * t,
            RabiForm::Printed => 0.5 * om * t,
        };
        match pulse {
            PulseKind::TwoPi => frac * arg.sin().powi(2),
            PulseKind::Pi => (de / g).powi(2) + frac * arg.cos().powi(2),
        }
    }

    pub fn population(&self, t: f64, pulse: PulseKind, form: RabiForm) -> PopulationStats {
        let mut e1 = 0.0;
        let mut e2 = 0.0;
        for i in 0..self.weights.len() {
            let e = self.node_error(i, t, pulse, form);
            e1 += self.weights[i] * e;
            e2 += self.weights[i] * e * e;
        }
        PopulationStats {
            mean: 1.0 - e1,
            variance: e2,
            error: e1,
            std: (e2 - e1 * e1).max(0.0).sqrt(),
        }
    }

    /// Statistics of the phase φ = −atan((Δ/G) tan(Gt/2)), taken in (−π/2, π/2].
    pub fn phase(&self, t: f64) -> PhaseStats {
        let mut m1 = 0.0;
        let mut m2 = 0.0;
        let mut c = 0.0;
        for i in 0..self.weights.len() {
            let phi = node_phase(self.delta[i], self.general[i], t);
            let w = self.weights[i];
            m1 += w * phi;
            m2 += w * phi * phi;
            c += w * (1.0 - phi.cos());
        }
        PhaseStats {
            mean_phi: m1,
            one_minus_cos: c,
            std: (m2 - m1 * m1).max(0.0).sqrt(),
        }
    }

    /// Time minimising the mean error over [0.8, 1.3] × nominal by
    /// golden-section search to relative tolerance 1e-6.
    pub fn optimize(&self, pulse: PulseKind, form: RabiForm) -> f64 {
        let t0 = pulse.area() / self.peak_omega;
        golden_section(|t| self.population(t, pulse, form).error, 0.8 * t0, 1.3 * t0, 1e-6 * t0)
    }
}

fn node_phase(delta: f64, general: f64, t: f64) -> f64 {
    use std::f64::consts::{FRAC_PI_2, PI};
    if general == 0.0 {
        return 0.0;
    }
    let half = 0.5 * general * t;
    let mut a = (delta * half.sin()).atan2(general * half.cos());
    if a > FRAC_PI_2 {
        a -= PI;
    } else if a <= -FRAC_PI_2 {
        a += PI;
    }
    let phi = -a;
    if phi <= -FRAC_PI_2 {
        phi + PI
    } else {
        phi
    }
}

/// Minimises a unimodal function on [a, b].
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()) + 1e-15
}

/// Ensemble whose population statistics at time `t` agree with the next
/// doubled order to `rel_tol`.
pub fn converged_ensemble(
    geom: &BeamGeometry,
    dist: &TrapDistribution,
    t: f64,
    pulse: PulseKind,
    opts: &AveragingOptions,
) -> Result<PositionEnsemble> {
    let mut order = opts.order;
    let mut current = PositionEnsemble::new(geom, dist, order)?;
    let mut stats = current.population(t, pulse, opts.form);
    while order * 2 <= opts.max_order {
        order *= 2;
        let next = PositionEnsemble::new(geom, dist, order)?;
        let s = next.population(t, pulse, opts.form);
        let ok = close(s.error, stats.error, opts.rel_tol) && close(s.variance, stats.variance, opts.rel_tol);
        current = next;
        stats = s;
        if ok {
            return Ok(current);
        }
    }
    Err(Error::Numerical(format!(
        "position average did not converge to {:.1e} by order {} (sigma = {:.3e} m, t = {:.3e} s)",
        opts.rel_tol, opts.max_order, dist.sigma, t
    )))
}

pub fn avg_population_after_pulse(
    geom: &BeamGeometry,
    dist: &TrapDistribution,
    t: f64,
    pulse: PulseKind,
    opts: &AveragingOptions,
) -> Result<PopulationStats> {
    if !(t >= 0.0) {
        return Err(Error::Validation(format!("pulse time {t} must be non-negative")));
    }
    Ok(converged_ensemble(geom, dist, t, pulse, opts)?.population(t, pulse, opts.form))
}

pub fn optimize_pulse_time(
    geom: &BeamGeometry,
    dist: &TrapDistribution,
    pulse: PulseKind,
    opts: &AveragingOptions,
) -> Result<f64> {
    let ens = converged_ensemble(geom, dist, geom.nominal_time(pulse), pulse, opts)?;
    Ok(ens.optimize(pulse, opts.form))
}

pub fn avg_phase_after_pulse(
    geom: &BeamGeometry,
    dist: &TrapDistribution,
    t: f64,
    opts: &AveragingOptions,
) -> Result<PhaseStats> {
    Ok(converged_ensemble(geom, dist, t, PulseKind::TwoPi, opts)?.phase(t))
}

/// Mean Rydberg population after a π pulse of duration t.
pub fn pi_pulse_rydberg_population(
    geom: &BeamGeometry,
    dist: &TrapDistribution,
    t: f64,
    opts: &AveragingOptions,
) -> Result<f64> {
    Ok(avg_population_after_pulse(geom, dist, t, PulseKind::Pi, opts)?.mean)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PulseErrorReport {
    pub sigma: f64,
    pub pulse_time: f64,
    pub population: PopulationStats,
    pub phase: PhaseStats,
}

/// Population and phase errors of one pulse at the chosen timing.
pub fn pulse_error(
    geom: &BeamGeometry,
    dist: &TrapDistribution,
    pulse: PulseKind,
    timing: PulseTiming,
    opts: &AveragingOptions,
) -> Result<PulseErrorReport> {
    let ens = converged_ensemble(geom, dist, geom.nominal_time(pulse), pulse, opts)?;
    let t = match timing {
        PulseTiming::Nominal => geom.nominal_time(pulse),
        PulseTiming::Optimized => ens.optimize(pulse, opts.form),
    };
    Ok(PulseErrorReport {
        sigma: dist.sigma,
        pulse_time: t,
        population: ens.population(t, pulse, opts.form),
        phase: ens.phase(t),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingFit {
    /// Slope of log(population std) against log(σ/w).
    pub std_slope: f64,
    /// Slope of log(variance) against log(σ/w).
    pub variance_slope: f64,
    pub sigmas: Vec<f64>,
    pub stds: Vec<f64>,
}

/// Log-log fit of the population spread against σ in the planar reduction at
/// the nominal pulse time.
pub fn scaling_exponent_check(
    geom: &BeamGeometry,
    sigmas: &[f64],
    pulse: PulseKind,
    opts: &AveragingOptions,
) -> Result<ScalingFit> {
    if sigmas.len() < 2 {
        return Err(Error::Usage("scaling fit needs at least two widths".into()));
    }
    let t = geom.nominal_time(pulse);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut vs = Vec::new();
    let mut stds = Vec::new();
    for &s in sigmas {
        let dist = TrapDistribution::planar(s)?;
        let stats = avg_population_after_pulse(geom, &dist, t, pulse, opts)?;
        xs.push((s / geom.waist1).ln());
        ys.push(stats.std.ln());
        vs.push(stats.variance.ln());
        stds.push(stats.std);
    }
    Ok(ScalingFit {
        std_slope: line_slope(&xs, &ys),
        variance_slope: line_slope(&xs, &vs),
        sigmas: sigmas.to_vec(),
        stds,
    })
}

fn line_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EscapeEstimate {
    pub probability: f64,
    pub stderr: f64,
    pub escapes: u64,
    pub samples: u64,
}

/// Fraction of thermal atoms whose transverse speed carries them further than
/// `distance` during a trap-off time `drop_time`. Velocities are drawn from the
/// 2D Maxwell-Boltzmann distribution with a ChaCha8 stream seeded by `seed`.
pub fn monte_carlo_escape(
    distance: f64,
    drop_time: f64,
    temperature: f64,
    mass: f64,
    samples: u64,
    seed: u64,
) -> Result<EscapeEstimate> {
    if samples == 0 {
        return Err(Error::Usage("escape Monte Carlo needs at least one sample".into()));
    }
    if !(temperature > 0.0 && mass > 0.0 && drop_time > 0.0 && distance >= 0.0) {
        return Err(Error::Validation("escape parameters must be positive".into()));
    }
    let v_escape = distance / drop_time;
    let sd = (K_B * temperature / mass).sqrt();
    let normal = Normal::new(0.0, sd).map_err(|e| Error::Validation(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v2 = v_escape * v_escape;
    let mut escapes = 0u64;
    for _ in 0..samples {
        let vx: f64 = normal.sample(&mut rng);
        let vy: f64 = normal.sample(&mut rng);
        if vx * vx + vy * vy > v2 {
            escapes += 1;
        }
    }
    let p = escapes as f64 / samples as f64;
    Ok(EscapeEstimate {
        probability: p,
        stderr: (p * (1.0 - p) / samples as f64).sqrt(),
        escapes,
        samples,
    })
}
