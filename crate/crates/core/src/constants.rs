//! Physical constants (CODATA 2018 exact or recommended values), SI units.

pub const HBAR: f64 = 1.054_571_817e-34;
pub const K_B: f64 = 1.380_649e-23;
pub const MU_B: f64 = 9.274_010_078_3e-24;
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;

pub const CS133_MASS_AMU: f64 = 132.905_451_961;

/// Mass of a ¹³³Cs atom.
pub const CS133_MASS: f64 = CS133_MASS_AMU * ATOMIC_MASS_UNIT;

pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Converts a frequency in MHz (ν = ω/2π) to angular frequency in rad/s.
pub fn mhz_to_rad(mhz: f64) -> f64 {
    TWO_PI * mhz * 1e6
}
