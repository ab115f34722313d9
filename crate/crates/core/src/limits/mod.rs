//! Limit-law scalars on an s-grid: the tail integrals μ, ν, α, the η
//! functional, and the correction coefficients E_{c,2}, E_{c,1}.

pub mod painleve;

use std::f64::consts::SQRT_2;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fredholm::{resolvent_bundle_airy, ResolventBundle, AIRY_BUNDLE_RANGE, DEFAULT_NODES};
use crate::output::{format_real, CsvRecord};
use crate::quad::{panel_integrate, GaussLegendre};
use crate::specfun::airy::airy_unbounded;

pub use painleve::HastingsMcLeod;

/// Range covered by [`LimitTables`].
pub const TABLE_RANGE: (f64, f64) = (-8.0, 6.0);
pub const TABLE_STEP: f64 = 0.05;
/// Past this point q < 1e−20 and the integrands are dropped.
const TAIL_END: f64 = 16.0;
/// Below this value of μ, E_{c,1} is summed from its Laurent expansion.
pub const SMALL_MU: f64 = 1e-3;

const INTERVAL_ORDER: usize = 6;

/// Integrands of μ, ν, α and the η integral at one point.
fn integrands(b: &ResolventBundle) -> [f64; 4] {
    let (q, p, u, v) = (b.q[0], b.p[0], b.u[0], b.v[0]);
    let eta = 6.0 * q * v + 3.0 * p * u + 2.0 * b.p[2] + 2.0 * b.p[1] * v + 2.0 * p * b.v[1]
        - 2.0 * b.q[2] * u
        - 2.0 * b.q[1] * b.u[1]
        - 2.0 * q * b.u[2];
    [q, p, q * u, eta]
}

/// Bundle past the Fredholm range: the resolvent is the identity to O(Ai²),
/// so q_i = x^i Ai, p_i = x^i Ai′ and the inner products vanish.
fn far_bundle(x: f64) -> ResolventBundle {
    let a = airy_unbounded(x);
    ResolventBundle {
        s: x,
        f2: 1.0,
        q: [a.ai, x * a.ai, x * x * a.ai],
        p: [a.aip, x * a.aip, x * x * a.aip],
        u: [0.0; 3],
        v: [0.0; 3],
        vtilde: [0.0; 3],
        w: [0.0; 3],
    }
}

fn bundle_at(x: f64, m: usize) -> Result<ResolventBundle> {
    if x > AIRY_BUNDLE_RANGE.1 {
        Ok(far_bundle(x))
    } else {
        resolvent_bundle_airy(x, m)
    }
}

fn check_table_range(what: &'static str, s: f64) -> Result<()> {
    let (lo, hi) = TABLE_RANGE;
    if (lo..=hi).contains(&s) {
        Ok(())
    } else {
        Err(Error::Range {
            what,
            value: s,
            min: lo,
            max: hi,
        })
    }
}

/// ∫_s^∞ of the four integrands, from s ≥ 6 onward, by fixed panels.
fn right_tail(s: f64, m: usize) -> Result<[f64; 4]> {
    let split = AIRY_BUNDLE_RANGE.1;
    let (near, err) = panel_integrate(|x| Ok(integrands(&bundle_at(x, m)?)), s, split.max(s), 0.5, 16)?;
    let (far, _) = panel_integrate(|x| Ok(integrands(&far_bundle(x))), split.max(s), TAIL_END, 1.0, 16)?;
    // err measures the half-order rule, a loose bound on the full-order one
    let scale = near.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    if err > 1e-6 * scale {
        return Err(Error::Convergence {
            what: "tail integrals",
            estimate: err,
            tolerance: 1e-6 * scale,
        });
    }
    Ok([near[0] + far[0], near[1] + far[1], near[2] + far[2], near[3] + far[3]])
}

/// (μ, ν, α) = (∫_s^∞ q, ∫_s^∞ p, ∫_s^∞ q u).
pub fn tail_integrals(s: f64, m: usize) -> Result<(f64, f64, f64)> {
    check_table_range("tail_integrals", s)?;
    let t = right_tail(s, m)?;
    Ok((t[0], t[1], t[2]))
}

/// Everything the expansions need at one point s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitPoint {
    pub s: f64,
    pub bundle: ResolventBundle,
    pub mu: f64,
    pub nu: f64,
    pub alpha: f64,
    /// (1/(20√2))∫_s^∞ (6qv + 3pu + 2p₂ + 2p₁v + 2pv₁ − 2q₂u − 2q₁u₁ − 2qu₂).
    pub eta_integral: f64,
}

const FIELDS: usize = 25;

impl LimitPoint {
    /// Direct evaluation, independent of any table.
    pub fn compute(s: f64, m: usize) -> Result<Self> {
        check_table_range("LimitPoint::compute", s)?;
        let bundle = resolvent_bundle_airy(s, m)?;
        let t = right_tail(s, m)?;
        Ok(Self::from_parts(bundle, t))
    }

    fn from_parts(bundle: ResolventBundle, t: [f64; 4]) -> Self {
        Self {
            s: bundle.s,
            bundle,
            mu: t[0],
            nu: t[1],
            alpha: t[2],
            eta_integral: t[3] / (20.0 * SQRT_2),
        }
    }

    pub fn f2(&self) -> f64 {
        self.bundle.f2
    }
    pub fn q(&self) -> f64 {
        self.bundle.q[0]
    }
    pub fn p(&self) -> f64 {
        self.bundle.p[0]
    }
    pub fn u(&self) -> f64 {
        self.bundle.u[0]
    }

    /// q′ = p − qu.
    pub fn q_prime(&self) -> f64 {
        self.p() - self.q() * self.u()
    }

    /// η(c) = η-integral − (20c²q′(s) + 3p(s))/(20√2).
    pub fn eta(&self, c: f64) -> f64 {
        self.eta_integral - (20.0 * c * c * self.q_prime() + 3.0 * self.p()) / (20.0 * SQRT_2)
    }

    /// E_{c,2} = 2w₁ − 3u₂ + (−20c² + 3)v₀ + u₁v₀ − u₀v₁ + u₀v₀² − u₀²w₀.
    pub fn e_c2(&self, c: f64) -> f64 {
        let b = &self.bundle;
        let (u0, v0, w0) = (b.u[0], b.v[0], b.w[0]);
        let c_free = 2.0 * b.w[1] - 3.0 * b.u[2] + 3.0 * v0 + b.u[1] * v0 - u0 * b.v[1] + u0 * v0 * v0
            - u0 * u0 * w0;
        c_free - 20.0 * c * c * v0
    }

    /// E_{c,1}; zero when μ underflows.
    pub fn e_c1(&self, c: f64) -> f64 {
        self.e_c1_checked(c).0
    }

    /// E_{c,1} and whether μ underflowed to zero (in which case the s → ∞
    /// limit 0 is returned).
    pub fn e_c1_checked(&self, c: f64) -> (f64, bool) {
        let mu = self.mu;
        if mu <= 0.0 {
            return (0.0, true);
        }
        let v = if mu < SMALL_MU {
            self.e_c1_series(c)
        } else {
            self.e_c1_direct(c)
        };
        (v, false)
    }

    fn e_c1_direct(&self, c: f64) -> f64 {
        let (mu, nu, al) = (self.mu, self.nu, self.alpha);
        let (q, p, u) = (self.q(), self.p(), self.u());
        let e = self.e_c2(c);
        let eta = self.eta(c);
        let c2 = c * c;
        let mu2 = mu * mu;
        let em = (-mu).exp();
        let e2m = (-2.0 * mu).exp();
        let one_m_em = -(-mu).exp_m1();
        -e / 20.0 * em - c * al / (2.0 * mu2) + c * p / (2.0 * mu) + (2.0 * c - 1.0) * nu * nu / (4.0 * mu2)
            + c * u * (c * q * em - nu / (2.0 * mu) * one_m_em)
            + e2m * (nu * (nu + 8.0 * c * q) / (32.0 * mu) - eta / (4.0 * SQRT_2))
            + em * ((2.0 * SQRT_2 * c2 * q * q - 3.0 * eta) / (4.0 * SQRT_2)
                + (nu * nu - 8.0 * (2.0 * c * p + c2 * q * q) - 4.0 * c2 * al * al) / (32.0 * mu)
                - c2 * q * q / (8.0 * mu2)
                + (2.0 - mu) / (2.0 * mu2) * (c * q * al + nu * nu / 4.0 + (c2 - c) * q * q))
            - (4.0 * c2 * al * al + 3.0 * c2 * q * q - nu * nu) * mu.cosh() / (8.0 * mu2)
    }

    /// The same expression regrouped per monomial, each coefficient summed
    /// from μ^{−2} to μ⁴.
    fn e_c1_series(&self, c: f64) -> f64 {
        let (mu, nu, al) = (self.mu, self.nu, self.alpha);
        let (q, p, u) = (self.q(), self.p(), self.u());
        let e = self.e_c2(c);
        let eta = self.eta(c);
        let c2 = c * c;
        let rows: [(f64, [f64; 7]); 11] = [
            (e, [0.0, 0.0, -1.0 / 20.0, 1.0 / 20.0, -1.0 / 40.0, 1.0 / 120.0, -1.0 / 480.0]),
            (
                al * al,
                [-c2 / 2.0, -c2 / 8.0, -c2 / 8.0, -c2 / 16.0, 0.0, -c2 / 192.0, c2 / 2880.0],
            ),
            (
                al * q,
                [c, -1.5 * c, c, -5.0 * c / 12.0, c / 8.0, -7.0 * c / 240.0, c / 180.0],
            ),
            (al, [-c / 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
            (p, [0.0, 0.0, c / 2.0, -c / 4.0, c / 12.0, -c / 48.0, c / 240.0]),
            (
                nu * nu,
                [
                    (4.0 * c + 1.0) / 8.0,
                    -5.0 / 16.0,
                    7.0 / 32.0,
                    -5.0 / 192.0,
                    -1.0 / 96.0,
                    19.0 / 1280.0,
                    -9.0 / 1280.0,
                ],
            ),
            (nu * u, [0.0, 0.0, -c / 2.0, c / 4.0, -c / 12.0, c / 48.0, -c / 240.0]),
            (nu * q, [0.0, c / 4.0, -c / 2.0, c / 2.0, -c / 3.0, c / 6.0, -c / 15.0]),
            (u * q, [0.0, 0.0, c2, -c2, c2 / 2.0, -c2 / 6.0, c2 / 24.0]),
            (
                q * q,
                [
                    c * (c - 2.0) / 2.0,
                    -c * (13.0 * c - 12.0) / 8.0,
                    c * (3.0 * c - 2.0) / 2.0,
                    -c * (49.0 * c - 20.0) / 48.0,
                    c * (19.0 * c - 6.0) / 48.0,
                    -c * (117.0 * c - 28.0) / 960.0,
                    c * (5.0 * c - 1.0) / 180.0,
                ],
            ),
            (
                eta,
                [
                    0.0,
                    0.0,
                    -SQRT_2 / 2.0,
                    5.0 * SQRT_2 / 8.0,
                    -7.0 * SQRT_2 / 16.0,
                    11.0 * SQRT_2 / 48.0,
                    -19.0 * SQRT_2 / 192.0,
                ],
            ),
        ];
        rows.iter().map(|(m, k)| m * laurent(k, mu)).sum()
    }

    fn to_array(&self) -> [f64; FIELDS] {
        let b = &self.bundle;
        let mut out = [0.0; FIELDS];
        out[0] = self.s;
        out[1] = b.f2;
        for i in 0..3 {
            out[2 + i] = b.q[i];
            out[5 + i] = b.p[i];
            out[8 + i] = b.u[i];
            out[11 + i] = b.v[i];
            out[14 + i] = b.vtilde[i];
            out[17 + i] = b.w[i];
        }
        out[20] = self.mu;
        out[21] = self.nu;
        out[22] = self.alpha;
        out[23] = self.eta_integral;
        out
    }

    fn from_array(a: &[f64; FIELDS]) -> Self {
        let pick = |k: usize| [a[k], a[k + 1], a[k + 2]];
        Self {
            s: a[0],
            bundle: ResolventBundle {
                s: a[0],
                f2: a[1],
                q: pick(2),
                p: pick(5),
                u: pick(8),
                v: pick(11),
                vtilde: pick(14),
                w: pick(17),
            },
            mu: a[20],
            nu: a[21],
            alpha: a[22],
            eta_integral: a[23],
        }
    }
}

/// (k₀ + k₁μ + … + k₆μ⁶)/μ².
pub(crate) fn laurent(k: &[f64; 7], mu: f64) -> f64 {
    k.iter().rev().fold(0.0, |acc, &c| acc * mu + c) / (mu * mu)
}

impl CsvRecord for LimitPoint {
    fn header() -> &'static [&'static str] {
        &[
            "s", "F2", "q", "p", "u0", "v0", "w0", "q1", "p1", "u1", "v1", "w1", "q2", "p2", "u2", "mu", "nu",
            "alpha", "eta",
        ]
    }

    fn fields(&self) -> Vec<String> {
        let b = &self.bundle;
        [
            self.s,
            b.f2,
            b.q[0],
            b.p[0],
            b.u[0],
            b.v[0],
            b.w[0],
            b.q[1],
            b.p[1],
            b.u[1],
            b.v[1],
            b.w[1],
            b.q[2],
            b.p[2],
            b.u[2],
            self.mu,
            self.nu,
            self.alpha,
            self.eta(0.0),
        ]
        .iter()
        .map(|&x| format_real(x))
        .collect()
    }
}

/// Limit quantities on a uniform s-grid, with cubic interpolation between
/// nodes.
#[derive(Debug, Clone)]
pub struct LimitTables {
    pub step: f64,
    pub m: usize,
    points: Vec<LimitPoint>,
}

impl LimitTables {
    /// Builds the default table on [−8, 6] with step 0.05.
    pub fn build(m: usize) -> Result<Self> {
        Self::build_range(TABLE_RANGE.0, TABLE_RANGE.1, TABLE_STEP, m)
    }

    pub fn build_range(lo: f64, hi: f64, step: f64, m: usize) -> Result<Self> {
        check_table_range("LimitTables lower end", lo)?;
        check_table_range("LimitTables upper end", hi)?;
        if !(step > 0.0) || hi <= lo {
            return Err(Error::Parameter(format!(
                "table needs lo < hi and step > 0 (got {lo}, {hi}, {step})"
            )));
        }
        let count = ((hi - lo) / step).round() as usize;
        if count < 3 || ((lo + count as f64 * step) - hi).abs() > 1e-9 {
            return Err(Error::Parameter(format!(
                "step {step} must divide [{lo}, {hi}] into at least 3 intervals"
            )));
        }
        let grid: Vec<f64> = (0..=count).map(|k| lo + k as f64 * step).collect();
        let bundles = grid
            .par_iter()
            .map(|&s| resolvent_bundle_airy(s, m))
            .collect::<Result<Vec<_>>>()?;
        let rule = GaussLegendre::get(INTERVAL_ORDER);
        let pieces = grid
            .par_windows(2)
            .map(|w| {
                let mut acc = [0.0; 4];
                for (x, wt) in rule.mapped(w[0], w[1]) {
                    let v = integrands(&resolvent_bundle_airy(x, m)?);
                    for k in 0..4 {
                        acc[k] += wt * v[k];
                    }
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut tail = right_tail(hi, m)?;
        let mut points = vec![LimitPoint::from_parts(bundles[count], tail)];
        for k in (0..count).rev() {
            for j in 0..4 {
                tail[j] += pieces[k][j];
            }
            points.push(LimitPoint::from_parts(bundles[k], tail));
        }
        points.reverse();
        Ok(Self { step, m, points })
    }

    /// The default table, built once per process.
    pub fn shared() -> Result<&'static Self> {
        static TABLE: OnceLock<Result<LimitTables>> = OnceLock::new();
        TABLE
            .get_or_init(|| LimitTables::build(DEFAULT_NODES))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn points(&self) -> &[LimitPoint] {
        &self.points
    }

    pub fn range(&self) -> (f64, f64) {
        (self.points[0].s, self.points[self.points.len() - 1].s)
    }

    /// Index of the node equal to s (within 1e−9), if any.
    pub fn node_index(&self, s: f64) -> Option<usize> {
        let k = ((s - self.points[0].s) / self.step).round();
        if k < 0.0 || k as usize >= self.points.len() {
            return None;
        }
        let k = k as usize;
        ((self.points[k].s - s).abs() < 1e-9).then_some(k)
    }

    /// Values at s: exact at nodes, four-point Lagrange interpolation between.
    pub fn at(&self, s: f64) -> Result<LimitPoint> {
        let (lo, hi) = self.range();
        if !(lo..=hi).contains(&s) {
            return Err(Error::Range {
                what: "LimitTables::at",
                value: s,
                min: lo,
                max: hi,
            });
        }
        if let Some(k) = self.node_index(s) {
            return Ok(self.points[k]);
        }
        let len = self.points.len();
        let left = ((s - lo) / self.step).floor() as usize;
        let start = left.saturating_sub(1).min(len - 4);
        let xs: Vec<f64> = (start..start + 4).map(|k| self.points[k].s).collect();
        let mut acc = [0.0; FIELDS];
        for (j, k) in (start..start + 4).enumerate() {
            let mut weight = 1.0;
            for (i, xi) in xs.iter().enumerate() {
                if i != j {
                    weight *= (s - xi) / (xs[j] - xi);
                }
            }
            for (a, v) in acc.iter_mut().zip(self.points[k].to_array()) {
                *a += weight * v;
            }
        }
        acc[0] = s;
        Ok(LimitPoint::from_array(&acc))
    }
}

/// a₂ + b₂ computed from its own integrand: (1/(20√2))∫_s^∞ [(20c²+3)q₁ + 2p₂
/// + (−60c²+3)qv + 2p₁v + 2pv₁ − 2q₂u − 2q₁u₁ − 2qu₂ + (−20c²+3)pu + 40c²qu²].
/// It uses a quadrature layout distinct from the table's.
pub fn a2_plus_b2(s: f64, c: f64, m: usize) -> Result<f64> {
    check_table_range("a2_plus_b2", s)?;
    let c2 = c * c;
    let integrand = |x: f64| -> Result<[f64; 1]> {
        let b = bundle_at(x, m)?;
        let (q, p, u, v) = (b.q[0], b.p[0], b.u[0], b.v[0]);
        Ok([(20.0 * c2 + 3.0) * b.q[1] + 2.0 * b.p[2] + (-60.0 * c2 + 3.0) * q * v
            + 2.0 * b.p[1] * v
            + 2.0 * p * b.v[1]
            - 2.0 * b.q[2] * u
            - 2.0 * b.q[1] * b.u[1]
            - 2.0 * q * b.u[2]
            + (-20.0 * c2 + 3.0) * p * u
            + 40.0 * c2 * q * u * u])
    };
    let (total, _) = panel_integrate(integrand, s, TAIL_END, 0.25, 12)?;
    Ok(total[0] / (20.0 * SQRT_2))
}

/// Residuals of the three pointwise identities q₁ = sq − qv + pu,
/// q₁ = p′ + qv and q² = u² − 2v.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityResiduals {
    pub s: f64,
    pub q1_edge: f64,
    pub q1_derivative: f64,
    pub q_squared: f64,
}

const DERIVATIVE_HALF_WIDTH: f64 = 0.3;
const DERIVATIVE_POINTS: usize = 31;
const DERIVATIVE_DEGREE: usize = 8;

/// f′(s) from a degree-8 least-squares polynomial through 31 samples on
/// s ± 0.3.
pub fn smoothed_derivative<F: FnMut(f64) -> Result<f64>>(mut f: F, s: f64) -> Result<f64> {
    let h = DERIVATIVE_HALF_WIDTH;
    let xs: Vec<f64> = (0..DERIVATIVE_POINTS)
        .map(|k| -1.0 + 2.0 * k as f64 / (DERIVATIVE_POINTS - 1) as f64)
        .collect();
    let design = DMatrix::from_fn(DERIVATIVE_POINTS, DERIVATIVE_DEGREE + 1, |i, j| xs[i].powi(j as i32));
    let values = xs.iter().map(|x| f(s + h * x)).collect::<Result<Vec<_>>>()?;
    let coeffs = design
        .svd(true, true)
        .solve(&DVector::from_vec(values), 1e-14)
        .map_err(|e| Error::Internal(format!("derivative fit: {e}")))?;
    Ok(coeffs[1] / h)
}

pub fn identity_residuals(s: f64, m: usize) -> Result<IdentityResiduals> {
    let p_prime = smoothed_derivative(|x| resolvent_bundle_airy(x, m).map(|b| b.p[0]), s)?;
    let b = resolvent_bundle_airy(s, m)?;
    let (q, p, u, v) = (b.q[0], b.p[0], b.u[0], b.v[0]);
    Ok(IdentityResiduals {
        s,
        q1_edge: b.q[1] - (s * q - q * v + p * u),
        q1_derivative: b.q[1] - (p_prime + q * v),
        q_squared: q * q - (u * u - 2.0 * v),
    })
}

/// Cross-check of the Fredholm q against the Painlevé II solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PainleveCheck {
    /// max |q″ − sq − 2q³| of the Fredholm q, by finite differences.
    pub max_ode_residual: f64,
    /// max |q_fredholm − q_painleve|.
    pub max_match_error: f64,
}

/// Compares on a grid of spacing ≤ 0.1 covering [s_min, s_max].
pub fn painleve_hm_check(s_min: f64, s_max: f64, m: usize) -> Result<PainleveCheck> {
    if !(-10.0 <= s_min && s_min < s_max && s_max <= 8.0) {
        return Err(Error::Parameter(format!(
            "painleve_hm_check needs −10 ≤ s_min < s_max ≤ 8, got [{s_min}, {s_max}]"
        )));
    }
    let hm = HastingsMcLeod::global()?;
    let count = ((s_max - s_min) / 0.1).ceil().max(1.0) as usize;
    let h = 0.01;
    let rows = (0..=count)
        .into_par_iter()
        .map(|k| {
            let s = s_min + (s_max - s_min) * k as f64 / count as f64;
            let q = |x: f64| resolvent_bundle_airy(x, m).map(|b| b.q[0]);
            let f = [q(s - 2.0 * h)?, q(s - h)?, q(s)?, q(s + h)?, q(s + 2.0 * h)?];
            let d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
            let residual = (d2 - s * f[2] - 2.0 * f[2].powi(3)).abs();
            let matched = (f[2] - hm.q(s)?).abs();
            Ok((residual, matched))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PainleveCheck {
        max_ode_residual: rows.iter().map(|r| r.0).fold(0.0, f64::max),
        max_match_error: rows.iter().map(|r| r.1).fold(0.0, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> &'static LimitTables {
        LimitTables::shared().unwrap()
    }

    #[test]
    fn right_end_values_are_tail_sized() {
        let (mu, nu, alpha) = tail_integrals(6.0, DEFAULT_NODES).unwrap();
        // at s = 6 the resolvent is the identity to O(Ai²) ≈ 1e−10, so μ and ν
        // reduce to ∫Ai and −Ai(6); both are of order 1e−5, not 1e−6
        let (ai_int, _) =
            panel_integrate(|x| Ok([airy_unbounded(x).ai]), 6.0, TAIL_END, 0.5, 16).unwrap();
        let ai6 = airy_unbounded(6.0).ai;
        assert!(mu > 0.0 && mu < 1e-5 && (mu - ai_int[0]).abs() < 1e-14);
        assert!(nu < 0.0 && (nu + ai6).abs() < 1e-14);
        assert!(alpha > 0.0 && alpha < 1e-14);
        let pt = LimitPoint::compute(6.0, DEFAULT_NODES).unwrap();
        // η reduces to (−2s²Ai(s) + Ai′(s))/(20√2) up to O(Ai²), about 2.6e−5
        let a = airy_unbounded(6.0);
        let eta_airy = (-72.0 * a.ai + a.aip) / (20.0 * SQRT_2);
        assert!((pt.eta(0.0) - eta_airy).abs() < 1e-12, "{} vs {eta_airy}", pt.eta(0.0));
        assert!(pt.e_c2(0.0).abs() < 1e-5);
    }

    #[test]
    fn nu_equals_alpha_minus_q_on_table() {
        for pt in table().points() {
            let r = pt.nu - (pt.alpha - pt.q());
            assert!(r.abs() < 1e-8, "s = {}: {r}", pt.s);
        }
    }

    #[test]
    fn table_matches_direct_tail_integrals() {
        for s in [-5.0, -1.0, 2.5] {
            let direct = LimitPoint::compute(s, DEFAULT_NODES).unwrap();
            let node = table().at(s).unwrap();
            assert!((direct.mu - node.mu).abs() < 1e-11);
            assert!((direct.nu - node.nu).abs() < 1e-11);
            assert!((direct.alpha - node.alpha).abs() < 1e-11);
            assert!((direct.eta_integral - node.eta_integral).abs() < 1e-11);
        }
    }

    #[test]
    fn mu_is_positive_decreasing_and_differentiates_to_minus_q() {
        let pts = table().points();
        assert!(pts.windows(2).all(|w| w[0].mu > w[1].mu && w[1].mu > 0.0));
        assert!(pts.windows(2).all(|w| w[0].f2() < w[1].f2()));
        let h = table().step;
        for k in 2..pts.len() - 2 {
            let d = (-pts[k + 2].mu + 8.0 * pts[k + 1].mu - 8.0 * pts[k - 1].mu + pts[k - 2].mu) / (12.0 * h);
            assert!((d + pts[k].q()).abs() < 1e-6, "s = {}: {d} vs {}", pts[k].s, -pts[k].q());
        }
    }

    #[test]
    fn interpolation_between_nodes() {
        let s = -1.234;
        let direct = LimitPoint::compute(s, DEFAULT_NODES).unwrap();
        let interp = table().at(s).unwrap();
        assert!((direct.q() - interp.q()).abs() < 1e-6);
        assert!((direct.mu - interp.mu).abs() < 1e-6);
        assert!(table().at(7.0).is_err());
    }

    #[test]
    fn e_c2_c_dependence_is_one_term() {
        for pt in table().points().iter().step_by(20) {
            for c in [-1.0, 0.5, 1.0] {
                let lhs = pt.e_c2(c) - pt.e_c2(0.0) + 20.0 * c * c * pt.bundle.v[0];
                assert!(lhs.abs() <= 1e-12, "s = {}, c = {c}: {lhs}", pt.s);
            }
        }
    }

    #[test]
    fn eta_display_matches_a2_plus_b2() {
        for s in [-4.0, -2.0, -1.0, 0.0] {
            let pt = table().at(s).unwrap();
            for c in [0.0, 1.0] {
                let oracle = a2_plus_b2(s, c, DEFAULT_NODES).unwrap();
                assert!((pt.eta(c) - oracle).abs() < 1e-7, "s = {s}, c = {c}: {} vs {oracle}", pt.eta(c));
            }
        }
    }

    #[test]
    fn eta_shift_in_c_is_the_boundary_term() {
        let pt = table().at(-1.0).unwrap();
        let shift = pt.eta(1.0) - pt.eta(0.0);
        assert!((shift + pt.q_prime() / SQRT_2).abs() < 1e-14);
        assert!(shift.abs() > 1e-2);
    }

    #[test]
    fn series_branch_continues_the_direct_form() {
        let pt = table().at(-1.0).unwrap();
        for mu in [1e-3, 5e-3] {
            let mut shifted = pt;
            shifted.mu = mu;
            for c in [-1.0, 0.0, 1.0] {
                let a = shifted.e_c1_direct(c);
                let b = shifted.e_c1_series(c);
                let scale = a.abs().max(1.0);
                assert!((a - b).abs() < 1e-6 * scale, "μ = {mu}, c = {c}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn e_c1_right_tail_behaviour() {
        let pt = table().at(6.0).unwrap();
        assert!(pt.mu < SMALL_MU);
        // the ν²/μ² Laurent term of this display keeps a coefficient (4c+1)/8,
        // so E_{c,1} grows like s/8 rather than vanishing
        let v = pt.e_c1(0.0);
        assert!(v.is_finite());
        let ratio = pt.nu * pt.nu / (pt.mu * pt.mu);
        assert!((v - ratio / 8.0).abs() < 0.05 * ratio, "{v} vs {}", ratio / 8.0);
        let (_, flagged) = LimitPoint { mu: 0.0, ..pt }.e_c1_checked(0.0);
        assert!(flagged);
    }

    #[test]
    fn identities_hold_pointwise() {
        for s in [-6.0, -2.0, 0.0, 3.0] {
            let r = identity_residuals(s, DEFAULT_NODES).unwrap();
            assert!(r.q1_edge.abs() < 1e-6, "{r:?}");
            assert!(r.q1_derivative.abs() < 1e-6, "{r:?}");
            assert!(r.q_squared.abs() < 1e-6, "{r:?}");
        }
    }

    #[test]
    fn smoothed_derivative_of_smooth_function() {
        let d = smoothed_derivative(|x| Ok(x.sin() * x.exp()), 1.0).unwrap();
        let exact = (1f64.cos() + 1f64.sin()) * 1f64.exp();
        assert!((d - exact).abs() < 1e-9, "{d} vs {exact}");
    }

    #[test]
    fn painleve_agreement_near_boundary() {
        let r = painleve_hm_check(6.0, 8.0, DEFAULT_NODES).unwrap();
        assert!(r.max_ode_residual <= 1e-9 && r.max_match_error <= 1e-9, "{r:?}");
    }

    #[test]
    fn csv_has_spec_columns() {
        let text = crate::output::csv_string(&table().points()[..2]);
        assert!(text.starts_with("s,F2,q,p,u0,v0,w0,q1,p1,u1,v1,w1,q2,p2,u2,mu,nu,alpha,eta\n"));
    }
}
