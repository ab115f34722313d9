//! Airy function Ai and its derivative on the real line.
//!
//! For |x| ≥ 10 the classical asymptotic expansions are summed to their
//! smallest term. Inside (−10, 10) values come from Taylor expansion of the
//! Airy ODE about anchors spaced 1/4 apart. The anchors are propagated once,
//! in double-double arithmetic: leftward from the asymptotic value at x = 10
//! (the stable direction for the recessive solution) and leftward from the
//! exact values at the origin. [`airy_dd`] continues the same Taylor steps
//! in double-double for kernel refinement.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Ai(x) together with Ai′(x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryPair {
    pub ai: f64,
    pub aip: f64,
}

pub const AIRY_DOMAIN: (f64, f64) = (-40.0, 40.0);

/// Ai(0) = 1 / (3^{2/3} Γ(2/3)).
pub const AI_ZERO: f64 = 0.355_028_053_887_817_239_26;
/// Ai′(0) = −1 / (3^{1/3} Γ(1/3)).
pub const AIP_ZERO: f64 = -0.258_819_403_792_806_798_41;
/// Low words of the double-double splits of Ai(0) and Ai′(0).
const AI_ZERO_LO: f64 = 2.052_336_324_362_12e-17;
const AIP_ZERO_LO: f64 = 2.522_243_111_610_832e-17;

const EDGE: f64 = 10.0;
const STEP: f64 = 0.25;
const ANCHORS: usize = 81;

/// Evaluates the Airy pair for x in [−40, 40].
pub fn airy(x: f64) -> Result<AiryPair> {
    if !(AIRY_DOMAIN.0..=AIRY_DOMAIN.1).contains(&x) {
        return Err(Error::Range {
            what: "airy",
            value: x,
            min: AIRY_DOMAIN.0,
            max: AIRY_DOMAIN.1,
        });
    }
    Ok(airy_unbounded(x))
}

/// Same as [`airy`] but accepts any x ≥ −40; the pair underflows to zero far
/// to the right. Used on quadrature grids that extend to large x.
pub(crate) fn airy_unbounded(x: f64) -> AiryPair {
    debug_assert!(x >= AIRY_DOMAIN.0 && !x.is_nan());
    if x >= EDGE {
        asymptotic_positive(x)
    } else if x <= -EDGE {
        asymptotic_negative(-x)
    } else {
        let table = anchors();
        let k = ((x + EDGE) / STEP).round() as usize;
        let x0 = -EDGE + k as f64 * STEP;
        taylor(x0, table[k], x - x0)
    }
}

fn anchors() -> &'static [AiryPair; ANCHORS] {
    static TABLE: OnceLock<[AiryPair; ANCHORS]> = OnceLock::new();
    TABLE.get_or_init(|| anchors_dd().map(|(a, d)| AiryPair { ai: a.value(), aip: d.value() }))
}

fn anchors_dd() -> &'static [(Dd, Dd); ANCHORS] {
    static TABLE: OnceLock<[(Dd, Dd); ANCHORS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let origin = ANCHORS / 2;
        let mut table = [(Dd::ZERO, Dd::ZERO); ANCHORS];
        table[origin] = (Dd::new(AI_ZERO, AI_ZERO_LO), Dd::new(AIP_ZERO, AIP_ZERO_LO));
        for k in (0..origin).rev() {
            let x0 = -EDGE + (k + 1) as f64 * STEP;
            table[k] = taylor_dd(x0, table[k + 1], -STEP);
        }
        let edge = asymptotic_positive(EDGE);
        table[ANCHORS - 1] = (Dd::new(edge.ai, 0.0), Dd::new(edge.aip, 0.0));
        for k in (origin + 1..ANCHORS - 1).rev() {
            let x0 = -EDGE + (k + 1) as f64 * STEP;
            table[k] = taylor_dd(x0, table[k + 1], -STEP);
        }
        table
    })
}

/// (Ai, Ai′) in double-double inside (−10, 10); outside, the double values
/// widened. Right of 10 the pair is below 1e−9, and left of −10 no grid
/// reaches.
pub(crate) fn airy_dd(x: f64) -> (Dd, Dd) {
    if x.abs() >= EDGE {
        let a = airy_unbounded(x);
        return (Dd::from_f64(a.ai), Dd::from_f64(a.aip));
    }
    let k = ((x + EDGE) / STEP).round() as usize;
    let x0 = -EDGE + k as f64 * STEP;
    let h = Dd::diff(x, x0);
    debug_assert_eq!(h.lo, 0.0);
    taylor_dd(x0, anchors_dd()[k], h.hi)
}

/// Taylor step of the Airy ODE in double-double; x0 and h are exact.
fn taylor_dd(x0: f64, at: (Dd, Dd), h: f64) -> (Dd, Dd) {
    let mut a_km1 = Dd::ZERO;
    let mut a_k = at.0;
    let mut a_kp1 = at.1;
    let mut value = at.0 + at.1.mul_f64(h);
    let mut deriv = at.1;
    let mut hk = h;
    let mut quiet = 0;
    for k in 0..120usize {
        let kf = k as f64;
        let a_next = (a_k.mul_f64(x0) + a_km1).div_f64((kf + 2.0) * (kf + 1.0));
        let dterm = a_next.mul_f64((kf + 2.0) * hk);
        hk *= h;
        let term = a_next.mul_f64(hk);
        value = value + term;
        deriv = deriv + dterm;
        a_km1 = a_k;
        a_k = a_kp1;
        a_kp1 = a_next;
        if term.magnitude() <= 1e-34 * value.magnitude() && dterm.magnitude() <= 1e-34 * deriv.magnitude() {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    (value, deriv)
}

fn taylor(x0: f64, at: AiryPair, h: f64) -> AiryPair {
    // Coefficients of Ai(x0 + h) = Σ a_k h^k satisfy
    // (k+2)(k+1) a_{k+2} = x0 a_k + a_{k−1}.
    let mut a_km1 = 0.0;
    let mut a_k = at.ai;
    let mut a_kp1 = at.aip;
    let mut value = at.ai + at.aip * h;
    let mut deriv = at.aip;
    let mut hk = h;
    let mut quiet = 0;
    for k in 0..80usize {
        let kf = k as f64;
        let a_next = (x0 * a_k + a_km1) / ((kf + 2.0) * (kf + 1.0));
        let dterm = (kf + 2.0) * a_next * hk;
        hk *= h;
        let term = a_next * hk;
        value += term;
        deriv += dterm;
        a_km1 = a_k;
        a_k = a_kp1;
        a_kp1 = a_next;
        // coefficients vanish in a period-3 pattern at x0 = 0
        if term.abs() <= 1e-18 * value.abs() && dterm.abs() <= 1e-18 * deriv.abs() {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    AiryPair {
        ai: value,
        aip: deriv,
    }
}

/// Sums Σ (sign)^k c_k / ζ^k until the terms stop decreasing or fall below
/// double precision. `coef(k)` yields c_k.
fn asymptotic_sum(zeta: f64, alternate: bool, coef: impl Fn(usize) -> f64, start: usize, stride: usize) -> f64 {
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    let mut k = start;
    let mut sign = 1.0;
    loop {
        let term = coef(k) / zeta.powi(k as i32);
        if term.abs() >= prev || k > 200 {
            break;
        }
        sum += sign * term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
        prev = term.abs();
        if alternate {
            sign = -sign;
        }
        k += stride;
    }
    sum
}

fn u_coef(k: usize) -> f64 {
    let mut u = 1.0;
    for j in 1..=k {
        let jf = j as f64;
        u *= (6.0 * jf - 5.0) * (6.0 * jf - 3.0) * (6.0 * jf - 1.0) / ((2.0 * jf - 1.0) * 216.0 * jf);
    }
    u
}

fn v_coef(k: usize) -> f64 {
    let kf = k as f64;
    -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u_coef(k)
}

fn asymptotic_positive(x: f64) -> AiryPair {
    let root = x.sqrt();
    let zeta = 2.0 / 3.0 * x * root;
    let e = (-zeta).exp();
    if e == 0.0 {
        return AiryPair { ai: 0.0, aip: 0.0 };
    }
    let quarter = root.sqrt();
    let norm = e / (2.0 * PI.sqrt());
    let s_ai = asymptotic_sum(zeta, true, u_coef, 0, 1);
    let s_aip = asymptotic_sum(zeta, true, v_coef, 0, 1);
    AiryPair {
        ai: norm / quarter * s_ai,
        aip: -norm * quarter * s_aip,
    }
}

fn asymptotic_negative(y: f64) -> AiryPair {
    let root = y.sqrt();
    let zeta = 2.0 / 3.0 * y * root;
    let quarter = root.sqrt();
    let phase = zeta - PI / 4.0;
    let (sn, cs) = phase.sin_cos();
    let p = asymptotic_sum(zeta, true, u_coef, 0, 2);
    let q = asymptotic_sum(zeta, true, u_coef, 1, 2);
    let r = asymptotic_sum(zeta, true, v_coef, 0, 2);
    let s = asymptotic_sum(zeta, true, v_coef, 1, 2);
    let rp = PI.sqrt();
    AiryPair {
        ai: (cs * p + sn * q) / (quarter * rp),
        aip: quarter * (sn * r - cs * s) / rp,
    }
}

/// Leading-order asymptotic form e^{−ζ}/(2√π x^{1/4}), ζ = (2/3)x^{3/2}.
pub fn airy_leading_asymptotic(x: f64) -> f64 {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    (-zeta).exp() / (2.0 * PI.sqrt() * x.powf(0.25))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::{integrate, Tolerance};

    // Reference values from 30-digit arbitrary-precision evaluation.
    const REFERENCE: [(f64, f64, f64); 8] = [
        (-37.5, 0.013668155455244661, 1.3937345616095672),
        (-12.0, -0.066555175054373129, 1.0231104533679707),
        (-5.3, 0.1825679310683395, 0.75457541994701104),
        (-1.0, 0.53556088329235212, -0.010160567116645209),
        (0.7, 0.18916240039815007, -0.19985119158228048),
        (3.9, 0.0011676548729914495, -0.0023756347375622522),
        (9.99, 1.1405176956374923e-10, -3.6328314494855775e-10),
        (25.0, 8.1160268246913867e-38, -4.066089337243281e-37),
    ];

    #[test]
    fn origin_values() {
        let a = airy(0.0).unwrap();
        assert!((a.ai - AI_ZERO).abs() < 1e-15);
        assert!((a.aip - AIP_ZERO).abs() < 1e-15);
    }

    #[test]
    fn matches_reference_values() {
        for (x, ai, aip) in REFERENCE {
            let a = airy(x).unwrap();
            assert!((a.ai - ai).abs() <= 1e-13 * ai.abs().max(1.0), "Ai({x}) = {} vs {ai}", a.ai);
            assert!((a.aip - aip).abs() <= 1e-13 * aip.abs().max(1.0), "Ai'({x}) = {} vs {aip}", a.aip);
            if x > 0.0 {
                assert!((a.ai / ai - 1.0).abs() < 1e-13, "relative Ai({x})");
                assert!((a.aip / aip - 1.0).abs() < 1e-13, "relative Ai'({x})");
            }
        }
    }

    #[test]
    fn large_positive_against_leading_asymptotic() {
        let a = airy(10.0).unwrap();
        assert!(a.ai > 0.0 && a.ai < 1e-9);
        let lead = airy_leading_asymptotic(10.0);
        let zeta = 2.0 / 3.0 * 10f64.powf(1.5);
        // first correction is −(5/72)/ζ, the next is O(ζ^{-2})
        assert!((a.ai / lead - (1.0 - 5.0 / 72.0 / zeta)).abs() < 0.05 / (zeta * zeta));
    }

    #[test]
    fn ode_oracle_at_minus_two() {
        let start = airy(8.0).unwrap();
        let rhs = |x: f64, y: &[f64; 2]| Ok([y[1], x * y[0]]);
        let y = integrate(rhs, 8.0, [start.ai, start.aip], -2.0, Tolerance::new(1e-14, 1e-18)).unwrap();
        let a = airy(-2.0).unwrap();
        assert!((a.ai - y[0]).abs() < 1e-11, "{} vs {}", a.ai, y[0]);
        assert!((a.aip - y[1]).abs() < 1e-11, "{} vs {}", a.aip, y[1]);
    }

    #[test]
    fn double_double_agrees_with_double() {
        for k in 0..2000 {
            let x = -9.99 + k as f64 * 0.009_97;
            let (a, d) = airy_dd(x);
            let p = airy_unbounded(x);
            assert!((a.value() - p.ai).abs() < 1e-15, "x = {x}");
            assert!((d.value() - p.aip).abs() < 1e-15, "x = {x}");
        }
        let (a, d) = airy_dd(0.0);
        assert_eq!((a.hi, a.lo, d.hi, d.lo), (AI_ZERO, AI_ZERO_LO, AIP_ZERO, AIP_ZERO_LO));
    }

    #[test]
    fn continuity_across_region_boundaries() {
        for x in [-EDGE, EDGE] {
            let inner = taylor(
                x - x.signum() * STEP,
                anchors()[if x > 0.0 { ANCHORS - 2 } else { 1 }],
                x.signum() * STEP,
            );
            let outer = if x > 0.0 {
                asymptotic_positive(x)
            } else {
                asymptotic_negative(-x)
            };
            let scale = outer.ai.abs().max(if x > 0.0 { 0.0 } else { 1.0 });
            assert!((inner.ai - outer.ai).abs() <= 1e-13 * scale.max(outer.ai.abs()), "{x}");
        }
    }

    #[test]
    fn out_of_range_is_an_error() {
        assert!(matches!(airy(40.5), Err(Error::Range { .. })));
        assert!(matches!(airy(-41.0), Err(Error::Range { .. })));
    }
}
