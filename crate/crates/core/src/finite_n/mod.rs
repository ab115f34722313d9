//! Exact finite-n pipeline for the GOE: F_{n,1}² = F_{n,2} × factor, where
//! the factor comes from the two 3×3 linear systems driven by q_n, p_n.

pub mod expm;
pub mod oracle;

use serde::Serialize;

pub use expm::{expm_closed, expm_scaling_squaring, expm_series, generator, Mat3, Variant};
pub use oracle::{goe_n2_normalization, goe_n2_oracle, gue_n2_oracle};

use crate::edgeworth::tau;
use crate::error::{Error, Result};
use crate::fredholm::{
    fredholm_det, hermite_grid, hermite_support_end, require_even, require_hermite_n,
    resolvent_bundle_hermite, KernelSpec,
};
use crate::ode::{integrate, Tolerance};
use crate::output::{format_real, CsvRecord};
use crate::quad::panel_integrate;
use crate::specfun::c_phi;

/// Soft-edge s at which the system ODEs start.
pub const ODE_START_S: f64 = 8.0;
/// Closed-form and ODE routes are expected to agree to this.
pub const ROUTE_TOLERANCE: f64 = 1e-6;

fn s_unit(n: usize) -> f64 {
    1.0 / (2f64.sqrt() * (n as f64).powf(1.0 / 6.0))
}

/// (a, b) = (∫_t^∞ q_n, ∫_t^∞ p_n).
pub fn ab_integrals(n: usize, t: f64, m: usize) -> Result<(f64, f64)> {
    require_even(n, "ab_integrals")?;
    require_hermite_n(n)?;
    let end = hermite_support_end(n);
    if t >= end {
        return Ok((0.0, 0.0));
    }
    let width = 0.5 * s_unit(n);
    let (v, err) = panel_integrate(
        |x| {
            let h = resolvent_bundle_hermite(n, x, m)?;
            Ok([h.q_n, h.p_n])
        },
        t,
        end,
        width,
        12,
    )?;
    let scale = v[0].abs().max(v[1].abs()).max(1.0);
    if err > 1e-6 * scale {
        return Err(Error::Convergence {
            what: "a/b integrals",
            estimate: err,
            tolerance: 1e-6 * scale,
        });
    }
    Ok((v[0], v[1]))
}

/// Finite-n quantities at one t. `x` = (u_ε, V_ε, q_ε) and `y` = (𝒬, 𝒫, R̃)
/// come from integrating the systems; `x_closed`, `y_closed` from the
/// matrix-exponential closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiniteNBundle {
    pub n: usize,
    pub c: f64,
    pub t: f64,
    pub q_n: f64,
    pub p_n: f64,
    pub a: f64,
    pub b: f64,
    pub c_phi: f64,
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub x_closed: [f64; 3],
    pub y_closed: [f64; 3],
    /// max component gap between the two routes.
    pub discrepancy: f64,
}

impl FiniteNBundle {
    /// Inconsistency error when the two routes differ by more than `tol`.
    pub fn check_routes(&self, tol: f64) -> Result<()> {
        if self.discrepancy > tol {
            Err(Error::Inconsistent {
                what: "closed-form vs ODE system solution",
                discrepancy: self.discrepancy,
                tolerance: tol,
            })
        } else {
            Ok(())
        }
    }

    pub fn u_eps(&self) -> f64 {
        self.x[0]
    }
    pub fn vtilde_eps(&self) -> f64 {
        1.0 - self.x[1]
    }
    pub fn q_eps(&self) -> f64 {
        self.x[2]
    }
}

fn closed_route(a: f64, b: f64, cp: f64) -> ([f64; 3], [f64; 3]) {
    let x = expm_closed(a, b, Variant::System1) * nalgebra::Vector3::new(0.0, 1.0, cp);
    let y = expm_closed(a, b, Variant::System2) * nalgebra::Vector3::new(2.0 * cp, 0.0, 1.0);
    ([x[0], x[1], x[2]], [y[0], y[1], y[2]])
}

/// State (X, Y, a, b) with X′ = A X, Y′ = B Y, a′ = −q_n, b′ = −p_n, where
/// A = [[0,0,−q],[0,0,p],[−p,q,0]] and B = [[0,0,q],[0,0,p],[p,q,0]].
fn system_rhs(n: usize, m: usize) -> impl FnMut(f64, &[f64; 8]) -> Result<[f64; 8]> {
    move |t, z| {
        let h = resolvent_bundle_hermite(n, t, m)?;
        let (q, p) = (h.q_n, h.p_n);
        Ok([
            -q * z[2],
            p * z[2],
            -p * z[0] + q * z[1],
            q * z[5],
            p * z[5],
            p * z[3] + q * z[4],
            -q,
            -p,
        ])
    }
}

/// Solves both systems at t: by the closed form from (a, b), and by
/// integrating the ODEs down from τ(n, c, 8), where the state is seeded by
/// the closed form (exact to O(ab) ≈ 1e−14 there).
pub fn solve_systems(n: usize, c: f64, t: f64, m: usize) -> Result<FiniteNBundle> {
    require_even(n, "solve_systems")?;
    require_hermite_n(n)?;
    let cp = c_phi(n)?;
    let boundary = resolvent_bundle_hermite(n, t, m)?;
    let (a, b) = ab_integrals(n, t, m)?;
    let (x_closed, y_closed) = closed_route(a, b, cp);
    let t0 = tau(n, c, ODE_START_S)?;
    let (x, y) = if t >= t0 {
        (x_closed, y_closed)
    } else {
        let (a0, b0) = ab_integrals(n, t0, m)?;
        let (x0, y0) = closed_route(a0, b0, cp);
        let z0 = [x0[0], x0[1], x0[2], y0[0], y0[1], y0[2], a0, b0];
        let z = integrate(system_rhs(n, m), t0, z0, t, Tolerance::new(1e-11, 1e-13))?;
        ([z[0], z[1], z[2]], [z[3], z[4], z[5]])
    };
    let discrepancy = x
        .iter()
        .chain(&y)
        .zip(x_closed.iter().chain(&y_closed))
        .map(|(u, v)| (u - v).abs())
        .fold(0.0, f64::max);
    Ok(FiniteNBundle {
        n,
        c,
        t,
        q_n: boundary.q_n,
        p_n: boundary.p_n,
        a,
        b,
        c_phi: cp,
        x,
        y,
        x_closed,
        y_closed,
        discrepancy,
    })
}

/// The two algebraically equal assemblies of the determinant factor.
pub fn factor_assemblies(x: &[f64; 3], y: &[f64; 3], cp: f64) -> (f64, f64) {
    let (v, q_eps) = (x[1], x[2]);
    let (pp, rt) = (y[1], y[2]);
    let r = 1.0 - rt;
    let first = v * (1.0 - 0.5 * r) - 0.5 * (q_eps - cp) * pp;
    let second = 0.5 * (v * (1.0 + rt) - pp * (q_eps - cp));
    (first, second)
}

/// The GOE factor from a solved bundle; both assemblies must agree.
pub fn factor_of(bundle: &FiniteNBundle) -> Result<f64> {
    let (first, second) = factor_assemblies(&bundle.x, &bundle.y, bundle.c_phi);
    let gap = (first - second).abs();
    if gap > 1e-12 {
        return Err(Error::Internal(format!(
            "factor assemblies differ by {gap:e} at t = {}",
            bundle.t
        )));
    }
    Ok(first)
}

/// The same factor built from the closed-form route.
pub fn factor_closed_of(bundle: &FiniteNBundle) -> f64 {
    factor_assemblies(&bundle.x_closed, &bundle.y_closed, bundle.c_phi).0
}

/// (1 − ṽ_ε)(1 − ½ℛ) − ½(q_ε − c_φ)𝒫 at t.
pub fn goe_factor(n: usize, c: f64, t: f64, m: usize) -> Result<f64> {
    factor_of(&solve_systems(n, c, t, m)?)
}

/// det(I − K_n) on (t, ∞) for the Hermite kernel.
pub fn f_n2_exact(n: usize, t: f64, m: usize) -> Result<f64> {
    require_hermite_n(n)?;
    if t >= hermite_support_end(n) {
        return Ok(1.0);
    }
    fredholm_det(KernelSpec::hermite(n), &hermite_grid(n, t, m)?)
}

/// One row of the exact pipeline at t = τ(n, c, s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiniteNRow {
    pub n: usize,
    pub c: f64,
    pub s: f64,
    pub t: f64,
    pub f_n2: f64,
    pub goe_factor: f64,
    pub f_n1_sq: f64,
    /// The factor from the closed-form route, for comparison.
    pub goe_factor_closed: f64,
    pub route_discrepancy: f64,
}

impl CsvRecord for FiniteNRow {
    fn header() -> &'static [&'static str] {
        &["n", "c", "s", "t", "F_n2_exact", "goe_factor", "F_n1_sq_exact"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            format_real(self.c),
            format_real(self.s),
            format_real(self.t),
            format_real(self.f_n2),
            format_real(self.goe_factor),
            format_real(self.f_n1_sq),
        ]
    }
}

pub fn finite_n_row(n: usize, c: f64, s: f64, m: usize) -> Result<FiniteNRow> {
    require_even(n, "finite_n_row")?;
    let t = tau(n, c, s)?;
    let bundle = solve_systems(n, c, t, m)?;
    let factor = factor_of(&bundle)?;
    let f_n2 = f_n2_exact(n, t, m)?;
    Ok(FiniteNRow {
        n,
        c,
        s,
        t,
        f_n2,
        goe_factor: factor,
        f_n1_sq: f_n2 * factor,
        goe_factor_closed: factor_closed_of(&bundle),
        route_discrepancy: bundle.discrepancy,
    })
}

/// F_{n,1}²(τ(n, c, s)) = F_{n,2} × factor.
pub fn f_n1_sq_exact(n: usize, c: f64, s: f64, m: usize) -> Result<f64> {
    Ok(finite_n_row(n, c, s, m)?.f_n1_sq)
}

/// F_{n,1}²(t) at a raw t.
pub fn f_n1_sq_exact_at(n: usize, t: f64, m: usize) -> Result<f64> {
    Ok(f_n2_exact(n, t, m)? * goe_factor(n, 0.0, t, m)?)
}
