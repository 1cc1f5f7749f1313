//! Physical constants and the unit conversions used at the API boundary.
//!
//! Everything inside the crate works in SI. The constant values are the
//! truncated ones the reference tables were computed with, not CODATA.

/// Electron mass, reduced Planck constant, and the size of one electronvolt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// kg
    pub electron_mass: f64,
    /// J·s
    pub hbar: f64,
    /// J per eV
    pub ev_to_joule: f64,
}

pub const CONSTANTS: PhysicalConstants = PhysicalConstants {
    electron_mass: 9.1095e-31,
    hbar: 1.055e-34,
    ev_to_joule: 1.6022e-19,
};

/// Electron mass in kg.
pub const ELECTRON_MASS: f64 = CONSTANTS.electron_mass;
/// Reduced Planck constant in J·s.
pub const HBAR: f64 = CONSTANTS.hbar;
/// Joules per electronvolt.
pub const EV: f64 = CONSTANTS.ev_to_joule;

/// Speed of light in vacuum, m/s. Only used as an upper bound in checks.
pub const SPEED_OF_LIGHT: f64 = 2.9979e8;

const NM: f64 = 1e-9;

pub fn energy_ev_to_si(e_ev: f64) -> f64 {
    e_ev * EV
}

pub fn energy_si_to_ev(e_j: f64) -> f64 {
    e_j / EV
}

pub fn length_nm_to_si(l_nm: f64) -> f64 {
    l_nm * NM
}

pub fn length_si_to_nm(l_m: f64) -> f64 {
    l_m / NM
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constants_are_the_tabulated_values() {
        assert_eq!(CONSTANTS.electron_mass, 9.1095e-31);
        assert_eq!(CONSTANTS.hbar, 1.055e-34);
        assert_eq!(CONSTANTS.ev_to_joule, 1.6022e-19);
        const { assert!(ELECTRON_MASS > 0.0 && HBAR > 0.0 && EV > 0.0) };
    }

    #[test]
    fn energy_conversion() {
        assert_eq!(energy_ev_to_si(0.0), 0.0);
        assert_eq!(energy_ev_to_si(1.0), 1.6022e-19);
        assert!((energy_ev_to_si(10.0) - 1.6022e-18).abs() <= 1e-33);
    }

    #[test]
    fn length_conversion() {
        assert_eq!(length_nm_to_si(0.0), 0.0);
        assert_eq!(length_nm_to_si(1.0), 1e-9);
        assert!((length_nm_to_si(0.5) - 5e-10).abs() <= 1e-25);
    }

    fn ulps_apart(a: f64, b: f64) -> u64 {
        (a.to_bits() as i64 - b.to_bits() as i64).unsigned_abs()
    }

    proptest! {
        #[test]
        fn ev_round_trip_within_one_ulp(x in -1e6f64..1e6) {
            prop_assert!(ulps_apart(energy_si_to_ev(energy_ev_to_si(x)), x) <= 1);
        }

        #[test]
        fn nm_round_trip_within_one_ulp(x in -1e6f64..1e6) {
            prop_assert!(ulps_apart(length_si_to_nm(length_nm_to_si(x)), x) <= 1);
        }
    }
}
