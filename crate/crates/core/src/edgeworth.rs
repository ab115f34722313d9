//! Finite-n expansions of the GUE and GOE largest-eigenvalue laws at the
//! soft edge, each order exposed separately.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::{laurent, LimitPoint, LimitTables, SMALL_MU};
use crate::output::{format_real, CsvRecord};

/// Soft-edge scaling t = √(2(n + c)) + s/(√2 n^{1/6}).
pub fn tau(n: usize, c: f64, s: f64) -> Result<f64> {
    let nf = n as f64;
    if n == 0 || !(nf + c > 0.0) {
        return Err(Error::Domain(format!("tau needs n ≥ 1 and n + c > 0 (n = {n}, c = {c})")));
    }
    Ok((2.0 * (nf + c)).sqrt() + s / (SQRT_2 * nf.powf(1.0 / 6.0)))
}

/// Inverse of [`tau`] in s.
pub fn tau_inverse(n: usize, c: f64, t: f64) -> Result<f64> {
    let nf = n as f64;
    let edge = tau(n, c, 0.0)?;
    Ok((t - edge) * SQRT_2 * nf.powf(1.0 / 6.0))
}

/// leading + coeff13·n^{−1/3} + coeff23·n^{−2/3}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionValue {
    pub s: f64,
    pub n: usize,
    pub c: f64,
    pub leading: f64,
    pub coeff13: f64,
    pub coeff23: f64,
    pub total: f64,
}

impl ExpansionValue {
    fn assemble(s: f64, n: usize, c: f64, leading: f64, coeff13: f64, coeff23: f64) -> Self {
        let nf = n as f64;
        let total = leading + coeff13 * nf.powf(-1.0 / 3.0) + coeff23 * nf.powf(-2.0 / 3.0);
        Self {
            s,
            n,
            c,
            leading,
            coeff13,
            coeff23,
            total,
        }
    }

    /// Leading plus the n^{−1/3} term only.
    pub fn first_order(&self) -> f64 {
        self.leading + self.coeff13 * (self.n as f64).powf(-1.0 / 3.0)
    }

    /// √total, e.g. F_{n,1} from the GOE expansion of F_{n,1}². The square
    /// root of a truncated series is not the truncated series of the square
    /// root; it differs at order n^{−2/3}. Negative totals give NaN.
    pub fn sqrt_total(&self) -> f64 {
        self.total.sqrt()
    }
}

impl CsvRecord for ExpansionValue {
    fn header() -> &'static [&'static str] {
        &["s", "n", "c", "leading", "coeff13", "coeff23", "total"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            format_real(self.s),
            self.n.to_string(),
            format_real(self.c),
            format_real(self.leading),
            format_real(self.coeff13),
            format_real(self.coeff23),
            format_real(self.total),
        ]
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Parameter("expansion order n must be positive".into()))
    } else {
        Ok(())
    }
}

/// F_{n,2}(τ(s)) ≈ F₂ + F₂·c·u₀ n^{−1/3} − F₂·E_{c,2}/20 n^{−2/3}.
pub fn gue_expansion_at(pt: &LimitPoint, n: usize, c: f64) -> Result<ExpansionValue> {
    check_n(n)?;
    let f2 = pt.f2();
    Ok(ExpansionValue::assemble(pt.s, n, c, f2, f2 * c * pt.u(), -f2 * pt.e_c2(c) / 20.0))
}

pub fn gue_expansion(tables: &LimitTables, n: usize, c: f64, s: f64) -> Result<ExpansionValue> {
    gue_expansion_at(&tables.at(s)?, n, c)
}

/// (1 − e^{−μ})/μ, equal to 1 at μ = 0.
fn one_minus_em_over_mu(mu: f64) -> f64 {
    if mu == 0.0 {
        1.0
    } else {
        -(-mu).exp_m1() / mu
    }
}

fn goe_first_order(pt: &LimitPoint, c: f64) -> (f64, f64) {
    let f2 = pt.f2();
    let em = (-pt.mu).exp();
    let leading = f2 * em;
    let coeff13 = f2 * (c * (pt.q() + pt.u()) * em - pt.nu / 2.0 * one_minus_em_over_mu(pt.mu));
    (leading, coeff13)
}

/// F_{n,1}²(τ(s)) ≈ F₂e^{−μ} + F₂[c(q + u)e^{−μ} − ν(1 − e^{−μ})/(2μ)] n^{−1/3}
/// + F₂E_{c,1} n^{−2/3}.
pub fn goe_sq_expansion_at(pt: &LimitPoint, n: usize, c: f64) -> Result<ExpansionValue> {
    check_n(n)?;
    let (leading, coeff13) = goe_first_order(pt, c);
    Ok(ExpansionValue::assemble(pt.s, n, c, leading, coeff13, pt.f2() * pt.e_c1(c)))
}

pub fn goe_sq_expansion(tables: &LimitTables, n: usize, c: f64, s: f64) -> Result<ExpansionValue> {
    goe_sq_expansion_at(&tables.at(s)?, n, c)
}

/// The same expansion with the n^{−2/3} coefficient taken from the bracket
/// written before the substitution ν = α − q, i.e. with α kept explicit.
pub fn goe_sq_expansion_alt_at(pt: &LimitPoint, n: usize, c: f64) -> Result<ExpansionValue> {
    check_n(n)?;
    let (leading, coeff13) = goe_first_order(pt, c);
    Ok(ExpansionValue::assemble(pt.s, n, c, leading, coeff13, pt.f2() * presubstitution_bracket(pt, c)))
}

pub fn goe_sq_expansion_alt(tables: &LimitTables, n: usize, c: f64, s: f64) -> Result<ExpansionValue> {
    goe_sq_expansion_alt_at(&tables.at(s)?, n, c)
}

/// The α-explicit n^{−2/3} bracket; zero when μ underflows.
pub fn presubstitution_bracket(pt: &LimitPoint, c: f64) -> f64 {
    if pt.mu <= 0.0 {
        0.0
    } else if pt.mu < SMALL_MU {
        bracket_series(pt, c)
    } else {
        bracket_direct(pt, c)
    }
}

fn bracket_direct(pt: &LimitPoint, c: f64) -> f64 {
    let (mu, nu, al) = (pt.mu, pt.nu, pt.alpha);
    let (q, p, u) = (pt.q(), pt.p(), pt.u());
    let e = pt.e_c2(c);
    let eta = pt.eta(c);
    let c2 = c * c;
    let mu2 = mu * mu;
    let em = (-mu).exp();
    let e2m = (-2.0 * mu).exp();
    let one_m_em = -(-mu).exp_m1();
    let r = 4.0 * SQRT_2;
    -e / 20.0 * em - c * al / (2.0 * mu2) + c * p / (2.0 * mu) + (2.0 * c - 1.0) * nu * nu / (4.0 * mu2)
        + c * u * (c * q * em - nu / (2.0 * mu) * one_m_em)
        + e2m
            * (-eta / r + c2 * al * al / (8.0 * mu) - c2 * q * q / (8.0 * mu) - (c2 - c) * nu * al / (4.0 * mu)
                + (0.25 - 2.0 * c + c2) * nu * nu / (8.0 * mu))
        + em * (c2 * q * q / 2.0 - 3.0 * eta / r - c2 * al * al / (4.0 * mu) - c * p / (2.0 * mu)
            - c2 * q * q / (8.0 * mu)
            + c2 * nu * al / (4.0 * mu)
            - (c2 - 0.25) * nu * nu / (8.0 * mu)
            + (2.0 - mu) / (2.0 * mu2)
                * (c2 * al * al / 2.0 - (2.0 * c2 - c) * nu * al / 2.0 + (0.25 - c + c2) * nu * nu / 2.0))
        - (c2 * al * al - c2 * nu * al + (c2 - 0.25) * nu * nu / 2.0) * mu.cosh() / mu2
        + c2 * q * q * mu.sinh() / (8.0 * mu2)
}

fn bracket_series(pt: &LimitPoint, c: f64) -> f64 {
    let (mu, nu, al) = (pt.mu, pt.nu, pt.alpha);
    let (q, p, u) = (pt.q(), pt.p(), pt.u());
    let e = pt.e_c2(c);
    let eta = pt.eta(c);
    let c2 = c * c;
    let rows: [(f64, [f64; 7]); 10] = [
        (e, [0.0, 0.0, -1.0 / 20.0, 1.0 / 20.0, -1.0 / 40.0, 1.0 / 120.0, -1.0 / 480.0]),
        (
            al * al,
            [
                -c2 / 2.0,
                -7.0 * c2 / 8.0,
                0.0,
                -c2 / 12.0,
                -5.0 * c2 / 48.0,
                7.0 * c2 / 120.0,
                -43.0 * c2 / 1440.0,
            ],
        ),
        (
            al * nu,
            [
                c / 2.0,
                c * (3.0 * c - 1.0) / 2.0,
                -c2 / 4.0,
                c * (c + 7.0) / 24.0,
                c * (10.0 * c - 13.0) / 48.0,
                -c * (61.0 * c - 73.0) / 480.0,
                c * (87.0 * c - 92.0) / 1440.0,
            ],
        ),
        (al, [-c / 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
        (p, [0.0, 0.0, c / 2.0, -c / 4.0, c / 12.0, -c / 48.0, c / 240.0]),
        (
            nu * nu,
            [
                0.0,
                -(6.0 * c2 - 4.0 * c + 1.0) / 8.0,
                (4.0 * c2 + 3.0) / 32.0,
                -(4.0 * c2 + 56.0 * c - 5.0) / 192.0,
                -(2.0 * c - 5.0) * (10.0 * c - 1.0) / 192.0,
                (244.0 * c2 - 584.0 * c + 71.0) / 3840.0,
                -(348.0 * c2 - 736.0 * c + 89.0) / 11520.0,
            ],
        ),
        (nu * u, [0.0, 0.0, -c / 2.0, c / 4.0, -c / 12.0, c / 48.0, -c / 240.0]),
        (u * q, [0.0, 0.0, c2, -c2, c2 / 2.0, -c2 / 6.0, c2 / 24.0]),
        (
            q * q,
            [
                0.0,
                -c2 / 8.0,
                7.0 * c2 / 8.0,
                -19.0 * c2 / 24.0,
                7.0 * c2 / 16.0,
                -41.0 * c2 / 240.0,
                53.0 * c2 / 960.0,
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

/// e^{−μ}(μ − 2)(cq + ν/2)²/(4μ²): the algebraic gap between the α-explicit
/// bracket and E_{c,1} once ν = α − q is imposed.
pub fn bracket_gap(pt: &LimitPoint, c: f64) -> f64 {
    let mu = pt.mu;
    if mu <= 0.0 {
        return 0.0;
    }
    let lin = c * pt.q() + pt.nu / 2.0;
    (-mu).exp() * (mu - 2.0) * lin * lin / (4.0 * mu * mu)
}
