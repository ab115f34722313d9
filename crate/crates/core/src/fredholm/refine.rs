//! Residual correction of Airy-kernel Nyström solves. The kernel and the
//! residuals are evaluated in double-double; the double LU of I − K supplies
//! the corrections.

use crate::dd::Dd;
use crate::error::Result;
use crate::specfun::airy::airy_dd;

use super::{Nystrom, QuadratureGrid};

pub(crate) struct AiryRefiner {
    x: Vec<f64>,
    ai: Vec<Dd>,
    aip: Vec<Dd>,
    weights: Vec<f64>,
    /// K(x_i, x_j)·w_j, row-major.
    kw: Vec<Dd>,
}

fn kernel(xa: f64, a: (Dd, Dd), xb: f64, b: (Dd, Dd)) -> Dd {
    if xa == xb {
        a.1 * a.1 - (a.0 * a.0).mul_f64(xa)
    } else {
        (a.0 * b.1 - a.1 * b.0).div(Dd::diff(xa, xb))
    }
}

impl AiryRefiner {
    pub fn new(grid: &QuadratureGrid) -> Self {
        let m = grid.m;
        let (ai, aip): (Vec<Dd>, Vec<Dd>) = grid.nodes.iter().map(|&x| airy_dd(x)).unzip();
        let mut kw = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                let k = kernel(grid.nodes[i], (ai[i], aip[i]), grid.nodes[j], (ai[j], aip[j]));
                kw.push(k.mul_f64(grid.weights[j]));
            }
        }
        Self {
            x: grid.nodes.clone(),
            ai,
            aip,
            weights: grid.weights.clone(),
            kw,
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.x
    }

    pub fn ai(&self) -> &[Dd] {
        &self.ai
    }

    pub fn aip(&self) -> &[Dd] {
        &self.aip
    }

    /// Solves (I − KW)f = r for each right-hand side, starting from the
    /// double solve and applying `passes` residual corrections.
    pub fn solve(&self, sys: &Nystrom, rhs: &[Vec<Dd>], passes: usize) -> Result<Vec<Vec<Dd>>> {
        let m = self.x.len();
        let plain: Vec<Vec<f64>> = rhs.iter().map(|r| r.iter().map(|v| v.value()).collect()).collect();
        let mut sol: Vec<Vec<Dd>> = sys
            .solve(&plain)?
            .into_iter()
            .map(|f| f.into_iter().map(Dd::from_f64).collect())
            .collect();
        for _ in 0..passes {
            let residuals: Vec<Vec<f64>> = rhs
                .iter()
                .zip(&sol)
                .map(|(r, f)| {
                    (0..m)
                        .map(|i| {
                            let row = &self.kw[i * m..(i + 1) * m];
                            let kf = row.iter().zip(f).fold(Dd::ZERO, |acc, (k, v)| acc + *k * *v);
                            (r[i] - f[i] + kf).value()
                        })
                        .collect()
                })
                .collect();
            let corrections = sys.solve(&residuals)?;
            for (f, d) in sol.iter_mut().zip(corrections) {
                for (v, dv) in f.iter_mut().zip(d) {
                    *v = *v + Dd::from_f64(dv);
                }
            }
        }
        Ok(sol)
    }

    /// r(s) + Σ_j w_j K(s, x_j) f_j.
    pub fn extend(&self, s: f64, r_at: Dd, f: &[Dd]) -> Dd {
        let at = airy_dd(s);
        (0..self.x.len()).fold(r_at, |acc, j| {
            let k = kernel(s, at, self.x[j], (self.ai[j], self.aip[j]));
            acc + (k * f[j]).mul_f64(self.weights[j])
        })
    }

    /// Σ_j w_j a_j b_j.
    pub fn inner(&self, a: &[Dd], b: &[Dd]) -> Dd {
        a.iter()
            .zip(b)
            .zip(&self.weights)
            .fold(Dd::ZERO, |acc, ((x, y), w)| acc + (*x * *y).mul_f64(*w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fredholm::{build_grid, KernelSpec};

    fn residual(fine: &AiryRefiner, r: &[Dd], f: &[Dd]) -> f64 {
        let m = f.len();
        (0..m)
            .map(|i| {
                let row = &fine.kw[i * m..(i + 1) * m];
                let kf = row.iter().zip(f).fold(Dd::ZERO, |acc, (k, v)| acc + *k * *v);
                (r[i] - f[i] + kf).value().abs()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn refinement_drives_residual_below_double_precision() {
        let sys = Nystrom::new(KernelSpec::Airy, build_grid(-8.0, 120).unwrap()).unwrap();
        let fine = AiryRefiner::new(sys.grid());
        let rhs = vec![fine.ai().to_vec()];
        let plain = fine.solve(&sys, &rhs, 0).unwrap();
        let refined = fine.solve(&sys, &rhs, 2).unwrap();
        let before = residual(&fine, &rhs[0], &plain[0]);
        let after = residual(&fine, &rhs[0], &refined[0]);
        assert!(before > 1e-15, "{before:e}");
        assert!(after < 1e-22, "{after:e}");
    }

    #[test]
    fn inner_and_extend_match_double_versions() {
        let sys = Nystrom::new(KernelSpec::Airy, build_grid(-2.0, 60).unwrap()).unwrap();
        let fine = AiryRefiner::new(sys.grid());
        let ai: Vec<f64> = fine.ai().iter().map(|v| v.value()).collect();
        let f = sys.solve(std::slice::from_ref(&ai)).unwrap().remove(0);
        let fd: Vec<Dd> = f.iter().map(|&v| Dd::from_f64(v)).collect();
        assert!((fine.inner(&fd, fine.ai()).value() - sys.inner(&f, &ai)).abs() < 1e-13);
        let at = KernelSpec::Airy.point(-2.0);
        let e = fine.extend(-2.0, Dd::from_f64(at.f), &fd).value();
        assert!((e - sys.extend(&at, at.f, &f)).abs() < 1e-13);
    }
}
