//! Orthonormal Hermite functions φ_k(x) = H_k(x) e^{−x²/2} / (2^k k! √π)^{1/2}.

use std::f64::consts::PI;

pub const MAX_DEGREE: usize = 2000;

/// Below this |φ_k| is reported as underflowed.
pub const UNDERFLOW: f64 = 1e-300;

const RESCALE_ABOVE: f64 = 1e150;
const RESCALE_BY: f64 = 1e-150;
const LN_RESCALE_BY: f64 = -345.387_763_949_107_1;
/// Beyond this |x| the starting value e^{−x²/2} leaves the normal range.
const DIRECT_LIMIT: f64 = 36.0;

/// φ_k evaluation with an underflow flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteValue {
    pub value: f64,
    pub underflow: bool,
}

/// Evaluates φ_k(x); values below 1e−300 in magnitude come back as zero.
pub fn hermite_phi(k: usize, x: f64) -> f64 {
    hermite_phi_checked(k, x).value
}

pub fn hermite_phi_checked(k: usize, x: f64) -> HermiteValue {
    let mut out = [0.0; 1];
    let underflow = fill(k, x, &mut out, k);
    HermiteValue {
        value: out[0],
        underflow,
    }
}

/// Writes φ_0(x), …, φ_{len−1}(x) into `out`.
pub fn hermite_phi_all(x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    let top = out.len() - 1;
    fill(top, x, out, 0);
}

/// Returns (φ_k, φ_{k−1}, φ_{k−2}) with missing lower orders set to zero.
pub fn hermite_phi_triple(k: usize, x: f64) -> [f64; 3] {
    let lo = k.saturating_sub(2);
    let mut buf = [0.0; 3];
    let len = k - lo + 1;
    fill(k, x, &mut buf[..len], lo);
    let mut out = [0.0; 3];
    for (j, v) in buf[..len].iter().enumerate() {
        out[k - (lo + j)] = *v;
    }
    out
}

/// Runs the normalized three-term recurrence up to degree `top`, storing
/// degrees `first..=top` into `out`. Returns true if any stored value
/// underflowed.
fn fill(top: usize, x: f64, out: &mut [f64], first: usize) -> bool {
    debug_assert_eq!(out.len(), top + 1 - first);
    if x.abs() < DIRECT_LIMIT {
        fill_direct(top, x, out, first)
    } else {
        fill_scaled(top, x, out, first)
    }
}

fn store(out: &mut [f64], idx: usize, v: f64, underflow: &mut bool) {
    out[idx] = if v.abs() < UNDERFLOW {
        *underflow = true;
        0.0
    } else {
        v
    };
}

fn fill_direct(top: usize, x: f64, out: &mut [f64], first: usize) -> bool {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    let mut underflow = false;
    for k in 0..=top {
        if k >= first {
            store(out, k - first, cur, &mut underflow);
        }
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    underflow
}

/// Same recurrence with the exponent carried separately.
fn fill_scaled(top: usize, x: f64, out: &mut [f64], first: usize) -> bool {
    let mut log_scale = -0.5 * x * x - 0.25 * PI.ln();
    let mut prev = 0.0f64;
    let mut cur = 1.0f64;
    let mut underflow = false;
    for k in 0..=top {
        if k >= first {
            let v = if cur == 0.0 {
                0.0
            } else {
                cur.signum() * (cur.abs().ln() + log_scale).exp()
            };
            store(out, k - first, v, &mut underflow);
        }
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            prev *= RESCALE_BY;
            log_scale -= LN_RESCALE_BY;
        }
    }
    underflow
}
