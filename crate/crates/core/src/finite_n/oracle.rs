//! Brute-force n = 2 references built from the joint eigenvalue densities.

use crate::error::Result;
use crate::quad::adaptive;

const LOWER: f64 = -12.0;

/// ∫_{−12}^t x^k e^{−x²} dx.
fn gauss_moment(k: i32, t: f64) -> Result<f64> {
    adaptive(|x| x.powi(k) * (-x * x).exp(), LOWER, t.min(-LOWER), 1e-15)
}

/// GUE n = 2 with density ∝ (x − y)² e^{−x² − y²}: P(max ≤ t).
/// Expanding the square reduces the double integral to products of
/// one-dimensional moments; the normalization is π.
pub fn gue_n2_oracle(t: f64) -> Result<f64> {
    let i0 = gauss_moment(0, t)?;
    let i1 = gauss_moment(1, t)?;
    let i2 = gauss_moment(2, t)?;
    Ok((2.0 * i0 * i2 - 2.0 * i1 * i1) / std::f64::consts::PI)
}

/// ∫∫_{[−12, t]²} |x − y| e^{−(x² + y²)/2}, nested, the inner integral split
/// at the kink y = x.
fn goe_n2_mass(t: f64) -> Result<f64> {
    let t = t.min(-LOWER);
    let mut failure = None;
    let outer = adaptive(
        |x| {
            let inner = adaptive(|y| (x - y) * (-0.5 * y * y).exp(), LOWER, x, 1e-15);
            match inner {
                Ok(v) => 2.0 * v * (-0.5 * x * x).exp(),
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        },
        LOWER,
        t,
        1e-13,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(outer),
    }
}

/// GOE n = 2 with density ∝ |x − y| e^{−(x² + y²)/2}: P(max ≤ t)², with the
/// normalization computed by the same quadrature.
pub fn goe_n2_oracle(t: f64) -> Result<f64> {
    let f = goe_n2_mass(t)? / goe_n2_normalization()?;
    Ok(f * f)
}

/// Should equal 4√π.
pub fn goe_n2_normalization() -> Result<f64> {
    goe_n2_mass(-LOWER)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizations() {
        let z = goe_n2_normalization().unwrap();
        assert!((z - 4.0 * std::f64::consts::PI.sqrt()).abs() < 1e-12, "{z}");
        assert!((gue_n2_oracle(12.0).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn goe_at_zero_is_closed_form() {
        // P(max ≤ 0) = (2 − √2)/4
        let f = (2.0 - 2f64.sqrt()) / 4.0;
        assert!((goe_n2_oracle(0.0).unwrap() - f * f).abs() < 1e-13);
    }

    #[test]
    fn gue_at_zero_is_closed_form() {
        // i0 = √π/2, i1 = −1/2, i2 = √π/4  ⇒  (π/4 − 1/2)/π
        let pi = std::f64::consts::PI;
        assert!((gue_n2_oracle(0.0).unwrap() - (0.25 - 0.5 / pi)).abs() < 1e-13);
    }
}
