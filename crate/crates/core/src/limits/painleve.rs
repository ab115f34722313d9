//! Hastings–McLeod solution of q″ = sq + 2q³, q ~ Ai(s) as s → +∞.
//!
//! Direct integration from the right is unstable, so the boundary-value
//! problem is solved by multiple shooting: Dirichlet data Ai at the right end
//! and the large-negative-s asymptotic series at the left end, with Newton
//! iteration on the node states.

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::ode::{integrate, Tolerance};
use crate::specfun::airy::airy_unbounded;

pub const HM_RIGHT: f64 = 8.0;
pub const HM_LEFT: f64 = -14.0;
const SEGMENT: f64 = 0.5;
const NEWTON_TOL: f64 = 1e-13;

fn tight() -> Tolerance {
    Tolerance::new(1e-13, 1e-15)
}

/// √(−s/2)(1 + s^{-3}/8 − 73 s^{-6}/128 + 10657 s^{-9}/1024) for s ≪ 0.
pub fn left_asymptotic(s: f64) -> f64 {
    let r3 = s.powi(-3);
    (-s / 2.0).sqrt() * (1.0 + r3 / 8.0 - 73.0 / 128.0 * r3 * r3 + 10657.0 / 1024.0 * r3 * r3 * r3)
}

fn rhs(s: f64, y: &[f64; 2]) -> [f64; 2] {
    [y[1], s * y[0] + 2.0 * y[0].powi(3)]
}

fn rhs_variational(s: f64, y: &[f64; 6]) -> [f64; 6] {
    let q = y[0];
    let j = s + 6.0 * q * q;
    // Y = [[y2, y3], [y4, y5]] with Y′ = [[0, 1], [j, 0]] Y
    [y[1], s * q + 2.0 * q.powi(3), y[4], y[5], j * y[2], j * y[3]]
}

/// Multiple-shooting solution stored as (q, q′) at nodes from right to left.
#[derive(Debug, Clone)]
pub struct HastingsMcLeod {
    nodes: Vec<f64>,
    states: Vec<[f64; 2]>,
    step: f64,
    pub newton_iterations: usize,
}

impl HastingsMcLeod {
    pub fn solve() -> Result<Self> {
        Self::solve_on(HM_LEFT, HM_RIGHT, SEGMENT)
    }

    /// Shooting on [left, right] with nodes every `segment`.
    pub fn solve_on(left: f64, right: f64, segment: f64) -> Result<Self> {
        if !(left < -6.0 && right > 4.0 && segment > 0.0) {
            return Err(Error::Parameter(format!(
                "shooting interval [{left}, {right}] with segment {segment} is not usable"
            )));
        }
        let segments = ((right - left) / segment).round() as usize;
        let nodes: Vec<f64> = (0..=segments)
            .map(|j| right - (right - left) * j as f64 / segments as f64)
            .collect();
        let mut states: Vec<[f64; 2]> = nodes.iter().map(|&s| initial_guess(s)).collect();
        let step = (right - left) / segments as f64;
        let right = airy_unbounded(right).ai;
        let left = left_asymptotic(left);
        let size = 2 * nodes.len();
        let residual_of = |states: &[[f64; 2]]| -> Result<(DVector<f64>, Vec<[f64; 6]>)> {
            let mut r = DVector::zeros(size);
            let mut flows = Vec::with_capacity(segments);
            r[0] = states[0][0] - right;
            for j in 0..segments {
                let y0 = [states[j][0], states[j][1], 1.0, 0.0, 0.0, 1.0];
                let y1 = integrate(
                    |s, y: &[f64; 6]| Ok(rhs_variational(s, y)),
                    nodes[j],
                    y0,
                    nodes[j + 1],
                    tight(),
                )?;
                r[1 + 2 * j] = y1[0] - states[j + 1][0];
                r[2 + 2 * j] = y1[1] - states[j + 1][1];
                flows.push(y1);
            }
            r[size - 1] = states[segments][0] - left;
            Ok((r, flows))
        };
        let (mut r, mut flows) = residual_of(&states)?;
        let mut iterations = 0;
        while r.amax() > NEWTON_TOL {
            iterations += 1;
            if iterations > 50 {
                return Err(Error::Convergence {
                    what: "Hastings–McLeod shooting",
                    estimate: r.amax(),
                    tolerance: NEWTON_TOL,
                });
            }
            let mut jac = DMatrix::zeros(size, size);
            jac[(0, 0)] = 1.0;
            for (j, f) in flows.iter().enumerate() {
                let row = 1 + 2 * j;
                let col = 2 * j;
                jac[(row, col)] = f[2];
                jac[(row, col + 1)] = f[3];
                jac[(row + 1, col)] = f[4];
                jac[(row + 1, col + 1)] = f[5];
                jac[(row, col + 2)] = -1.0;
                jac[(row + 1, col + 3)] = -1.0;
            }
            jac[(size - 1, size - 2)] = 1.0;
            let step = jac
                .lu()
                .solve(&(-&r))
                .ok_or_else(|| Error::Internal("singular shooting Jacobian".into()))?;
            let norm = r.amax();
            let mut lambda = 1.0;
            loop {
                let trial: Vec<[f64; 2]> = states
                    .iter()
                    .enumerate()
                    .map(|(j, y)| [y[0] + lambda * step[2 * j], y[1] + lambda * step[2 * j + 1]])
                    .collect();
                match residual_of(&trial) {
                    Ok((r_new, f_new)) if r_new.amax() < norm || lambda < 1e-3 => {
                        states = trial;
                        r = r_new;
                        flows = f_new;
                        break;
                    }
                    _ => lambda *= 0.5,
                }
                if lambda < 1e-4 {
                    return Err(Error::Convergence {
                        what: "Hastings–McLeod damped Newton",
                        estimate: norm,
                        tolerance: NEWTON_TOL,
                    });
                }
            }
        }
        Ok(Self {
            nodes,
            states,
            step,
            newton_iterations: iterations,
        })
    }

    /// Shared solution, computed on first use.
    pub fn global() -> Result<&'static Self> {
        static SOLUTION: OnceLock<Result<HastingsMcLeod>> = OnceLock::new();
        SOLUTION
            .get_or_init(HastingsMcLeod::solve)
            .as_ref()
            .map_err(Clone::clone)
    }

    /// (q(s), q′(s)). Beyond the right end q is Ai to within O(Ai³).
    pub fn eval(&self, s: f64) -> Result<[f64; 2]> {
        let (right, left) = (self.nodes[0], self.nodes[self.nodes.len() - 1]);
        if s > right {
            let a = airy_unbounded(s);
            return Ok([a.ai, a.aip]);
        }
        if s < left {
            return Err(Error::Range {
                what: "Hastings–McLeod evaluation",
                value: s,
                min: left,
                max: f64::INFINITY,
            });
        }
        let k = ((right - s) / self.step).round() as usize;
        let k = k.min(self.nodes.len() - 1);
        if self.nodes[k] == s {
            return Ok(self.states[k]);
        }
        integrate(|x, y: &[f64; 2]| Ok(rhs(x, y)), self.nodes[k], self.states[k], s, tight())
    }

    pub fn q(&self, s: f64) -> Result<f64> {
        Ok(self.eval(s)?[0])
    }

    /// F₂(s) = exp(−∫_s^∞ (x − s) q(x)² dx).
    pub fn f2(&self, s: f64) -> Result<f64> {
        let (inner, _) = crate::quad::panel_integrate(
            |x| {
                let q = self.q(x)?;
                Ok([(x - s) * q * q])
            },
            s,
            HM_RIGHT,
            0.5,
            16,
        )?;
        let (tail, _) = crate::quad::panel_integrate(
            |x| {
                let a = airy_unbounded(x).ai;
                Ok([(x - s) * a * a])
            },
            HM_RIGHT,
            HM_RIGHT + 10.0,
            1.0,
            16,
        )?;
        Ok((-(inner[0] + tail[0])).exp())
    }
}

fn initial_guess(s: f64) -> [f64; 2] {
    let a = airy_unbounded(s);
    if s >= 0.0 {
        return [a.ai, a.aip];
    }
    let lead = (-s / 2.0).sqrt();
    if lead > a.ai {
        [lead, -1.0 / (4.0 * lead)]
    } else {
        [a.ai, a.aip]
    }
}
