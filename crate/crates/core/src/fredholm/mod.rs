//! Nyström discretization of trace-class kernels on (s, ∞): determinants,
//! resolvent solves and the inner products built from them.

mod grid;
mod kernel;
mod refine;

use nalgebra::{DMatrix, LU};
use serde::Serialize;

pub use grid::{
    build_grid, build_panel_grid, MapKind, QuadratureGrid, DEFAULT_NODES, MAX_NODES, MIN_NODES,
    TANGENT_SCALE,
};
pub use kernel::{KernelPoint, KernelSpec};

use crate::dd::Dd;
use crate::error::{check_finite, Error, Result};
use crate::quad::GaussLegendre;
use crate::specfun::{c_phi, hermite_phi};

/// Soft-edge window for Airy-kernel bundles.
pub const AIRY_BUNDLE_RANGE: (f64, f64) = (-10.0, 10.0);
/// Largest n handled by dense Hermite-kernel discretizations.
pub const MAX_HERMITE_N: usize = 400;
/// Residual corrections applied to Airy-kernel solves.
const REFINEMENT_PASSES: usize = 2;
/// Hermite functions are treated as zero once both fall below this.
const HERMITE_TAIL: f64 = 1e-18;

/// Factorized symmetric Nyström matrix I − W^{1/2} K W^{1/2}.
pub struct Nystrom {
    spec: KernelSpec,
    grid: QuadratureGrid,
    points: Vec<KernelPoint>,
    sqrt_w: Vec<f64>,
    lu: LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    det: f64,
}

impl Nystrom {
    pub fn new(spec: KernelSpec, grid: QuadratureGrid) -> Result<Self> {
        let points = spec.points(&grid.nodes);
        for p in &points {
            check_finite("kernel evaluation", p.x, p.f)?;
            check_finite("kernel evaluation", p.x, p.g)?;
            check_finite("kernel evaluation", p.x, p.diag)?;
        }
        let sqrt_w: Vec<f64> = grid.weights.iter().map(|w| w.sqrt()).collect();
        let m = grid.m;
        let mat = DMatrix::from_fn(m, m, |i, j| {
            let k = spec.eval(&points[i], &points[j]);
            let delta = if i == j { 1.0 } else { 0.0 };
            delta - sqrt_w[i] * k * sqrt_w[j]
        });
        let lu = mat.lu();
        let det = lu.determinant();
        check_finite("Fredholm determinant", grid.s, det)?;
        if det.abs() < 1e-300 {
            return Err(Error::Internal(format!(
                "near-singular I − K at s = {}",
                grid.s
            )));
        }
        Ok(Self {
            spec,
            grid,
            points,
            sqrt_w,
            lu,
            det,
        })
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    pub fn grid(&self) -> &QuadratureGrid {
        &self.grid
    }

    pub fn points(&self) -> &[KernelPoint] {
        &self.points
    }

    /// Solves (I − K)f = r for several right-hand sides given by their node
    /// values; returns node values of each f.
    pub fn solve(&self, rhs: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        let m = self.grid.m;
        let b = DMatrix::from_fn(m, rhs.len(), |i, k| self.sqrt_w[i] * rhs[k][i]);
        let z = self
            .lu
            .solve(&b)
            .ok_or_else(|| Error::Internal("singular Nyström matrix".into()))?;
        Ok((0..rhs.len())
            .map(|k| (0..m).map(|i| z[(i, k)] / self.sqrt_w[i]).collect())
            .collect())
    }

    /// Nyström extension f(x) = r(x) + Σ_j w_j K(x, x_j) f_j at an arbitrary point.
    pub fn extend(&self, at: &KernelPoint, r_at: f64, f_nodes: &[f64]) -> f64 {
        r_at + self
            .points
            .iter()
            .zip(&self.grid.weights)
            .zip(f_nodes)
            .map(|((p, w), f)| w * self.spec.eval(at, p) * f)
            .sum::<f64>()
    }

    /// Quadrature of the product of two node-value vectors.
    pub fn inner(&self, a: &[f64], b: &[f64]) -> f64 {
        self.grid
            .weights
            .iter()
            .zip(a)
            .zip(b)
            .map(|((w, x), y)| w * x * y)
            .sum()
    }

    /// Symmetrized resolvent matrix W^{1/2}[(I − K)^{-1} − I]W^{-1/2}, i.e. the
    /// discretized (I − K)^{-1}K in the symmetric basis.
    pub fn resolvent_matrix(&self) -> Result<DMatrix<f64>> {
        let m = self.grid.m;
        let inv = self
            .lu
            .try_inverse()
            .ok_or_else(|| Error::Internal("singular Nyström matrix".into()))?;
        Ok(inv - DMatrix::identity(m, m))
    }
}

/// det(I − K) on the grid.
pub fn fredholm_det(spec: KernelSpec, grid: &QuadratureGrid) -> Result<f64> {
    Ok(Nystrom::new(spec, grid.clone())?.det())
}

/// All Airy-limit scalars at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResolventBundle {
    pub s: f64,
    pub f2: f64,
    pub q: [f64; 3],
    pub p: [f64; 3],
    pub u: [f64; 3],
    pub v: [f64; 3],
    pub vtilde: [f64; 3],
    pub w: [f64; 3],
}

/// Solves (I − K_Ai)Q_i = x^i Ai, (I − K_Ai)P_i = x^i Ai′ and forms
/// q_i = Q_i(s), p_i = P_i(s), u_i = (Q_i, Ai), ṽ_i = (Q_i, Ai′),
/// v_i = (P_i, Ai), w_i = (P_i, Ai′).
pub fn resolvent_bundle_airy(s: f64, m: usize) -> Result<ResolventBundle> {
    let (lo, hi) = AIRY_BUNDLE_RANGE;
    if !(lo..=hi).contains(&s) {
        return Err(Error::Range {
            what: "resolvent_bundle_airy",
            value: s,
            min: lo,
            max: hi,
        });
    }
    let sys = Nystrom::new(KernelSpec::Airy, build_grid(s, m)?)?;
    let fine = refine::AiryRefiner::new(sys.grid());
    let (ai, aip) = (fine.ai(), fine.aip());
    let mut rhs = Vec::with_capacity(6);
    for base in [ai, aip] {
        for i in 0..3 {
            rhs.push(
                fine.nodes()
                    .iter()
                    .zip(base)
                    .map(|(&x, a)| (0..i).fold(*a, |v, _| v.mul_f64(x)))
                    .collect::<Vec<Dd>>(),
            );
        }
    }
    let sol = fine.solve(&sys, &rhs, REFINEMENT_PASSES)?;
    let (at_ai, at_aip) = crate::specfun::airy::airy_dd(s);
    let mut b = ResolventBundle {
        s,
        f2: sys.det(),
        q: [0.0; 3],
        p: [0.0; 3],
        u: [0.0; 3],
        v: [0.0; 3],
        vtilde: [0.0; 3],
        w: [0.0; 3],
    };
    for i in 0..3 {
        let power = |a: Dd| (0..i).fold(a, |v, _| v.mul_f64(s));
        let big_q = &sol[i];
        let big_p = &sol[i + 3];
        b.q[i] = fine.extend(s, power(at_ai), big_q).value();
        b.p[i] = fine.extend(s, power(at_aip), big_p).value();
        b.u[i] = fine.inner(big_q, ai).value();
        b.vtilde[i] = fine.inner(big_q, aip).value();
        b.v[i] = fine.inner(big_p, ai).value();
        b.w[i] = fine.inner(big_p, aip).value();
    }
    for x in [b.q, b.p, b.u, b.v, b.vtilde, b.w].iter().flatten() {
        check_finite("resolvent bundle", s, *x)?;
    }
    Ok(b)
}

/// Boundary values of the Hermite-kernel resolvent at the left endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HermiteBoundary {
    pub t: f64,
    pub q_n: f64,
    pub p_n: f64,
}

pub(crate) fn require_even(n: usize, what: &str) -> Result<()> {
    if n == 0 || n % 2 == 1 {
        Err(Error::Domain(format!("{what} requires a positive even n, got {n}")))
    } else {
        Ok(())
    }
}

pub(crate) fn require_hermite_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_HERMITE_N {
        Err(Error::Range {
            what: "Hermite kernel size n",
            value: n as f64,
            min: 1.0,
            max: MAX_HERMITE_N as f64,
        })
    } else {
        Ok(())
    }
}

/// Point past which φ_n and φ_{n−1} are both below 1e−18.
pub fn hermite_support_end(n: usize) -> f64 {
    let mut x = (2.0 * n as f64 + 1.0).sqrt();
    loop {
        let a = hermite_phi(n, x).abs();
        let b = if n > 0 { hermite_phi(n - 1, x).abs() } else { 0.0 };
        if a < HERMITE_TAIL && b < HERMITE_TAIL {
            return x;
        }
        x += 0.25;
    }
}

/// Finite panel (t, end) carrying the Hermite kernel mass.
pub fn hermite_grid(n: usize, t: f64, m: usize) -> Result<QuadratureGrid> {
    let end = hermite_support_end(n);
    build_panel_grid(t, (end - t).max(1.0), m)
}

fn hermite_scale(n: usize) -> f64 {
    (n as f64 / 2.0).powf(0.25)
}

/// q_n(t) = ((I − K_n)^{-1}φ)(t), p_n(t) = ((I − K_n)^{-1}ψ)(t) with the scaled
/// φ = (n/2)^{1/4}φ_n, ψ = (n/2)^{1/4}φ_{n−1}.
pub fn resolvent_bundle_hermite(n: usize, t: f64, m: usize) -> Result<HermiteBoundary> {
    require_even(n, "resolvent_bundle_hermite")?;
    require_hermite_n(n)?;
    let spec = KernelSpec::hermite(n);
    let sys = Nystrom::new(spec, hermite_grid(n, t, m)?)?;
    let sc = hermite_scale(n);
    let phi: Vec<f64> = sys.points().iter().map(|p| sc * p.f).collect();
    let psi: Vec<f64> = sys.points().iter().map(|p| sc * p.g).collect();
    let sol = sys.solve(&[phi, psi])?;
    let at = spec.point(t);
    Ok(HermiteBoundary {
        t,
        q_n: check_finite("q_n", t, sys.extend(&at, sc * at.f, &sol[0]))?,
        p_n: check_finite("p_n", t, sys.extend(&at, sc * at.g, &sol[1]))?,
    })
}

/// ∫_x^∞ φ with the scaled φ, for x ≥ 0.
fn scaled_phi_tail(n: usize, x: f64, end: f64) -> f64 {
    if x >= end {
        return 0.0;
    }
    let rule = GaussLegendre::get(24);
    let panels = (end - x).ceil().max(1.0) as usize;
    let h = (end - x) / panels as f64;
    let sc = hermite_scale(n);
    (0..panels)
        .map(|j| {
            let lo = x + j as f64 * h;
            rule.mapped(lo, lo + h).map(|(y, w)| w * hermite_phi(n, y)).sum::<f64>()
        })
        .sum::<f64>()
        * sc
}

/// (εφ)(x) = ∫_{−∞}^x φ − c_φ for the scaled φ. Odd in x for even n.
pub fn eps_phi(n: usize, x: f64) -> Result<f64> {
    require_even(n, "eps_phi")?;
    let cp = c_phi(n)?;
    if x.is_infinite() {
        return Ok(x.signum() * cp);
    }
    let end = hermite_support_end(n);
    let v = cp - scaled_phi_tail(n, x.abs(), end);
    Ok(if x < 0.0 { -v } else { v })
}

/// The ε quantities computed directly from the resolvent: q_ε = (I − K)^{-1}εφ
/// at t, u_ε = (Q_ε, φ), ṽ_ε = (Q_ε, ψ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpsilonDirect {
    pub t: f64,
    pub q_eps: f64,
    pub u_eps: f64,
    pub vtilde_eps: f64,
}

pub fn epsilon_direct(n: usize, t: f64, m: usize) -> Result<EpsilonDirect> {
    require_even(n, "epsilon_direct")?;
    require_hermite_n(n)?;
    let spec = KernelSpec::hermite(n);
    let sys = Nystrom::new(spec, hermite_grid(n, t, m)?)?;
    let cp = c_phi(n)?;
    let sc = hermite_scale(n);
    let end = hermite_support_end(n);
    let nodes = &sys.grid().nodes;
    // εφ at t and at every node, by accumulating ∫φ between consecutive points
    // from the right.
    let mut xs = Vec::with_capacity(nodes.len() + 1);
    xs.push(t);
    xs.extend_from_slice(nodes);
    let rule = GaussLegendre::get(10);
    let mut tails = vec![0.0; xs.len()];
    let last = *xs.last().expect("nonempty");
    let mut acc = if last >= 0.0 {
        scaled_phi_tail(n, last, end)
    } else {
        2.0 * cp - scaled_phi_tail(n, -last, end)
    };
    tails[xs.len() - 1] = acc;
    for k in (0..xs.len() - 1).rev() {
        acc += sc * rule.mapped(xs[k], xs[k + 1]).map(|(y, w)| w * hermite_phi(n, y)).sum::<f64>();
        tails[k] = acc;
    }
    let eps: Vec<f64> = tails.iter().map(|tl| cp - tl).collect();
    let sol = sys.solve(&[eps[1..].to_vec()])?;
    let q_big = &sol[0];
    let phi: Vec<f64> = sys.points().iter().map(|p| sc * p.f).collect();
    let psi: Vec<f64> = sys.points().iter().map(|p| sc * p.g).collect();
    let at = spec.point(t);
    Ok(EpsilonDirect {
        t,
        q_eps: sys.extend(&at, eps[0], q_big),
        u_eps: sys.inner(q_big, &phi),
        vtilde_eps: sys.inner(q_big, &psi),
    })
}

/// Resolvent kernel R(s, x_j) = ((I − K)^{-1}K)(s, x_j) on the nodes, obtained
/// from the symmetric system by one extra solve.
pub fn resolvent_row(sys: &Nystrom, at: &KernelPoint) -> Result<Vec<f64>> {
    let row: Vec<f64> = sys.points().iter().map(|p| sys.spec.eval(at, p)).collect();
    // R(s, ·) solves (I − K^T)R = K(s, ·); K is symmetric.
    let sol = sys.solve(&[row])?;
    Ok(sol.into_iter().next().expect("one column"))
}

#[cfg(test)]
fn airy_pair_values(x: f64) -> (f64, f64) {
    let a = crate::specfun::airy::airy_unbounded(x);
    (a.ai, a.aip)
}
