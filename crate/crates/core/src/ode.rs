//! Adaptive Dormand–Prince 5(4) integration for small fixed-size systems.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_steps: usize,
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Self {
        Self {
            rel,
            abs,
            max_steps: 200_000,
        }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..N {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// Integrates `y' = f(t, y)` from `t0` to every point of `outputs` in order,
/// landing on each exactly. Outputs must be monotone in the direction of
/// integration. Integration may run in either direction.
pub fn integrate_to<const N: usize, F>(
    mut f: F,
    t0: f64,
    y0: [f64; N],
    outputs: &[f64],
    tol: Tolerance,
) -> Result<Vec<[f64; N]>>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
{
    let mut results = Vec::with_capacity(outputs.len());
    let Some(&last) = outputs.last() else {
        return Ok(results);
    };
    let dir = if last >= t0 { 1.0 } else { -1.0 };
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y)?;
    let span = (last - t0).abs().max(1e-300);
    let mut h = dir * (span / 100.0).min(0.1);
    let mut steps = 0usize;
    for &target in outputs {
        if (target - t) * dir < 0.0 {
            return Err(Error::Parameter(
                "output points must be monotone along the integration direction".into(),
            ));
        }
        while (target - t) * dir > 0.0 {
            steps += 1;
            if steps > tol.max_steps {
                return Err(Error::Convergence {
                    what: "ODE integration (step budget)",
                    estimate: (target - t).abs(),
                    tolerance: 0.0,
                });
            }
            let mut last_step = false;
            if (t + h - target) * dir >= 0.0 {
                h = target - t;
                last_step = true;
            }
            let k2 = f(t + C2 * h, &axpy(&y, h, &[(A21, &k1)]))?;
            let k3 = f(t + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]))?;
            let k4 = f(
                t + C4 * h,
                &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
            )?;
            let k5 = f(
                t + C5 * h,
                &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            )?;
            let k6 = f(
                t + h,
                &axpy(
                    &y,
                    h,
                    &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
                ),
            )?;
            let y_new = axpy(
                &y,
                h,
                &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
            );
            let k7 = f(t + h, &y_new)?;
            let mut err = 0.0f64;
            for i in 0..N {
                let e = h
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i]
                        + E7 * k7[i]);
                let sc = tol.abs + tol.rel * y[i].abs().max(y_new[i].abs());
                err = err.max((e / sc).abs());
            }
            if !err.is_finite() {
                return Err(Error::NonFinite {
                    what: "ODE step",
                    at: t,
                });
            }
            if err <= 1.0 {
                t = if last_step { target } else { t + h };
                y = y_new;
                k1 = k7;
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if !(last_step && err <= 1.0) {
                h *= factor;
            }
            if h.abs() < 1e-14 * t.abs().max(1.0) {
                return Err(Error::Convergence {
                    what: "ODE integration (step size underflow)",
                    estimate: err,
                    tolerance: 1.0,
                });
            }
        }
        results.push(y);
    }
    Ok(results)
}

/// Single-endpoint convenience wrapper.
pub fn integrate<const N: usize, F>(
    f: F,
    t0: f64,
    y0: [f64; N],
    t1: f64,
    tol: Tolerance,
) -> Result<[f64; N]>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
{
    Ok(integrate_to(f, t0, y0, &[t1], tol)?[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_both_directions() {
        let rhs = |_t: f64, y: &[f64; 2]| Ok([y[1], -y[0]]);
        let tol = Tolerance::new(1e-12, 1e-14);
        let y = integrate(rhs, 0.0, [0.0, 1.0], 10.0, tol).unwrap();
        assert!((y[0] - 10f64.sin()).abs() < 1e-10);
        let back = integrate(rhs, 10.0, y, 0.0, tol).unwrap();
        assert!(back[0].abs() < 1e-9 && (back[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn lands_on_every_output() {
        let rhs = |_t: f64, y: &[f64; 1]| Ok([y[0]]);
        let pts = [0.5, 1.0, 2.0];
        let ys = integrate_to(rhs, 0.0, [1.0], &pts, Tolerance::new(1e-12, 1e-14)).unwrap();
        for (p, y) in pts.iter().zip(&ys) {
            assert!((y[0] - p.exp()).abs() < 1e-10 * p.exp());
        }
    }
}
