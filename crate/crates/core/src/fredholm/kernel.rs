use serde::Serialize;

use crate::specfun::airy::airy_unbounded;
use crate::specfun::hermite_phi_triple;

/// Which integrable kernel to discretize.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum KernelSpec {
    Zero,
    /// K(x,y) = (Ai(x)Ai′(y) − Ai′(x)Ai(y)) / (x − y).
    Airy,
    /// K_n(x,y) = √(n/2)(φ_n(x)φ_{n−1}(y) − φ_{n−1}(x)φ_n(y)) / (x − y).
    /// `scaled` selects whether the boundary functions carry (n/2)^{1/4}.
    Hermite { n: usize, scaled: bool },
}

/// Kernel data at one point: K(x,y) = scale·(f(x)g(y) − g(x)f(y))/(x − y)
/// off the diagonal and `diag` on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    pub x: f64,
    pub f: f64,
    pub g: f64,
    pub diag: f64,
}

impl KernelSpec {
    pub fn airy() -> Self {
        KernelSpec::Airy
    }

    pub fn hermite(n: usize) -> Self {
        KernelSpec::Hermite { n, scaled: true }
    }

    fn scale(&self) -> f64 {
        match *self {
            KernelSpec::Hermite { n, .. } => (n as f64 / 2.0).sqrt(),
            _ => 1.0,
        }
    }

    pub fn point(&self, x: f64) -> KernelPoint {
        match *self {
            KernelSpec::Zero => KernelPoint {
                x,
                f: 0.0,
                g: 0.0,
                diag: 0.0,
            },
            KernelSpec::Airy => {
                let a = airy_unbounded(x);
                KernelPoint {
                    x,
                    f: a.ai,
                    g: a.aip,
                    diag: a.aip * a.aip - x * a.ai * a.ai,
                }
            }
            KernelSpec::Hermite { n, .. } => {
                let [pn, pn1, pn2] = hermite_phi_triple(n, x);
                let nf = n as f64;
                KernelPoint {
                    x,
                    f: pn,
                    g: pn1,
                    diag: nf * pn1 * pn1 - (nf * (nf - 1.0)).sqrt() * pn * pn2,
                }
            }
        }
    }

    pub fn points(&self, xs: &[f64]) -> Vec<KernelPoint> {
        xs.iter().map(|&x| self.point(x)).collect()
    }

    pub fn eval(&self, a: &KernelPoint, b: &KernelPoint) -> f64 {
        if a.x == b.x {
            a.diag
        } else {
            self.scale() * (a.f * b.g - a.g * b.f) / (a.x - b.x)
        }
    }

    pub fn eval_at(&self, x: f64, y: f64) -> f64 {
        self.eval(&self.point(x), &self.point(y))
    }
}
