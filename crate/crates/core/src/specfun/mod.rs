//! Special functions: the Airy pair, Hermite functions and the constant c_φ.

pub mod airy;
pub mod hermite;

use std::f64::consts::PI;

pub use airy::{airy, AiryPair};
pub use hermite::{hermite_phi, hermite_phi_all, hermite_phi_checked, hermite_phi_triple, HermiteValue};

use crate::error::{Error, Result};

pub const MAX_CPHI_N: usize = 2000;

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// c_φ = (πn)^{1/4} 2^{−3/4−n/2} (n!)^{1/2} / (n/2)! for even n.
pub fn c_phi(n: usize) -> Result<f64> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::Domain(format!("c_phi requires a positive even n, got {n}")));
    }
    if n > MAX_CPHI_N {
        return Err(Error::Range {
            what: "c_phi",
            value: n as f64,
            min: 2.0,
            max: MAX_CPHI_N as f64,
        });
    }
    let nf = n as f64;
    let log = 0.25 * (PI * nf).ln() + (-0.75 - 0.5 * nf) * std::f64::consts::LN_2
        + 0.5 * ln_gamma(nf + 1.0)
        - ln_gamma(0.5 * nf + 1.0);
    Ok(log.exp())
}

/// ∫ φ_k over the real line for the unscaled φ_k: zero for odd k, otherwise
/// obtained from I_0 = √2 π^{1/4} and I_k = √((k−1)/k) I_{k−2}.
pub fn hermite_phi_total_integral(k: usize) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    let mut v = 2f64.sqrt() * PI.powf(0.25);
    let mut j = 2;
    while j <= k {
        v *= ((j - 1) as f64 / j as f64).sqrt();
        j += 2;
    }
    v
}
