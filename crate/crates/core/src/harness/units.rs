//! Conversion between SI quantities and the dimensionless model.
//!
//! Lengths are scaled by the largest sample extent `L`, fields by `mu0 Ms`
//! and time by `tau0 = 1 / (mu0 gamma Ms)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalUnits {
    /// Saturation magnetization, A/m.
    pub ms: f64,
    /// Exchange constant, J/m.
    pub cex: f64,
    /// Uniaxial anisotropy, J/m^3.
    pub ku: f64,
    /// Vacuum permeability, T m/A.
    pub mu0: f64,
    /// Gyromagnetic ratio, rad/(s T).
    pub gamma: f64,
}

impl Default for PhysicalUnits {
    fn default() -> Self {
        Self::permalloy()
    }
}

/// Dimensionless counterparts of one physical setup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dimensionless {
    pub k: f64,
    pub h_e: f64,
    pub epsilon: f64,
    pub q: f64,
}

impl PhysicalUnits {
    pub fn permalloy() -> Self {
        Self { ms: 8.0e5, cex: 1.3e-11, ku: 100.0, mu0: 4.0 * PI * 1e-7, gamma: 1.76086e11 }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.ms, self.cex, self.ku, self.mu0, self.gamma];
        if all.iter().any(|v| !v.is_finite()) || self.ms <= 0.0 || self.cex <= 0.0 || self.mu0 <= 0.0 || self.gamma <= 0.0 || self.ku < 0.0 {
            return Err(Error::config("material constants must be positive and finite"));
        }
        Ok(())
    }

    /// `mu0 Ms` in tesla.
    pub fn saturation_tesla(&self) -> f64 {
        self.mu0 * self.ms
    }

    /// Time unit in seconds.
    pub fn tau0(&self) -> f64 {
        1.0 / (self.mu0 * self.gamma * self.ms)
    }

    /// `eps = Cex / (mu0 Ms^2 L^2)` for the length scale `L` in metres.
    pub fn epsilon(&self, length_m: f64) -> f64 {
        self.cex / (self.mu0 * self.ms * self.ms * length_m * length_m)
    }

    /// `q = Ku / (mu0 Ms^2)`.
    pub fn q(&self) -> f64 {
        self.ku / (self.mu0 * self.ms * self.ms)
    }

    /// Exchange length `sqrt(2 Cex / (mu0 Ms^2))` in metres.
    pub fn exchange_length(&self) -> f64 {
        (2.0 * self.cex / (self.mu0 * self.ms * self.ms)).sqrt()
    }

    pub fn field_from_millitesla(&self, b_mt: f64) -> f64 {
        b_mt * 1e-3 / self.saturation_tesla()
    }

    pub fn time_from_ps(&self, ps: f64) -> f64 {
        ps * 1e-12 / self.tau0()
    }

    pub fn time_to_ns(&self, t: f64) -> f64 {
        t * self.tau0() * 1e9
    }

    /// Velocity in m/s of a displacement `dx` (dimensionless, in units of
    /// `length_m`) per dimensionless time.
    pub fn velocity(&self, dx_per_t: f64, length_m: f64) -> f64 {
        dx_per_t * length_m / self.tau0()
    }
}

/// Converts a step in picoseconds and a field in millitesla for a sample
/// whose largest extent is `length_nm`.
pub fn convert_units(phys: &PhysicalUnits, length_nm: f64, k_ps: f64, field_mt: f64) -> Result<Dimensionless> {
    phys.validate()?;
    if !(length_nm > 0.0) || !(k_ps > 0.0) || !(field_mt >= 0.0) {
        return Err(Error::config("length and step must be positive, field nonnegative"));
    }
    Ok(Dimensionless {
        k: phys.time_from_ps(k_ps),
        h_e: phys.field_from_millitesla(field_mt),
        epsilon: phys.epsilon(length_nm * 1e-9),
        q: phys.q(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn permalloy_scales() {
        let p = PhysicalUnits::permalloy();
        // 4 pi 1e-7 * 8e5 = 0.32 pi
        assert!(rel(p.saturation_tesla(), 0.32 * PI) < 1e-14);
        assert!(rel(p.saturation_tesla(), 1.0053) < 1e-4);
        let d = convert_units(&p, 480.0, 1.0, 5.0).unwrap();
        assert!(rel(d.h_e, 5e-3 / (0.32 * PI)) < 1e-14);
        assert!(rel(d.h_e, 4.97e-3) < 2e-3);
        assert!(rel(d.q, 100.0 / (0.32 * PI * 8e5)) < 1e-14);
        assert!(rel(d.q, 1.24e-4) < 3e-3);
        let tau = 1.0 / (0.32 * PI * 1.76086e11);
        assert!(rel(p.tau0(), tau) < 1e-14);
        assert!((p.tau0() * 1e12 - 5.7).abs() < 0.1);
        assert!(rel(d.k, 1e-12 / tau) < 1e-14);
        assert!((d.k - 0.176).abs() < 2e-3);
        assert!(rel(d.epsilon, 1.3e-11 / (0.32 * PI * 8e5 * (480e-9f64).powi(2))) < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        let p = PhysicalUnits::permalloy();
        assert!(convert_units(&p, 480.0, 0.0, 5.0).is_err());
        assert!(convert_units(&p, -1.0, 1.0, 5.0).is_err());
        let bad = PhysicalUnits { ms: 0.0, ..p };
        assert!(convert_units(&bad, 480.0, 1.0, 5.0).is_err());
    }

    #[test]
    fn time_round_trip() {
        let p = PhysicalUnits::permalloy();
        let t = p.time_from_ps(2000.0);
        assert!(rel(p.time_to_ns(t), 2.0) < 1e-14);
    }
}
