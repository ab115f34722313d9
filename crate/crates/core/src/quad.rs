//! Gauss–Legendre rules and adaptive Gauss–Kronrod integration.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Nodes and weights of an m-point Gauss–Legendre rule on (−1, 1).
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    fn compute(m: usize) -> Self {
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        let half = m.div_ceil(2);
        for i in 0..half {
            let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(m, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(m, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[m - 1 - i] = x;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }
        if m % 2 == 1 {
            nodes[m / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Cached rule; rules are immutable once built.
    pub fn get(m: usize) -> Arc<GaussLegendre> {
        static CACHE: OnceLock<RwLock<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(rule) = cache.read().expect("rule cache poisoned").get(&m) {
            return rule.clone();
        }
        let rule = Arc::new(Self::compute(m));
        cache
            .write()
            .expect("rule cache poisoned")
            .entry(m)
            .or_insert(rule)
            .clone()
    }

    /// Nodes and weights mapped affinely to (a, b).
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }
}

fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if m == 0 {
        return (1.0, 0.0);
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integrates a vector-valued function over (a, b) split into equal panels of
/// at most `width`, each with an `order`-point rule. The returned error
/// estimate is the largest componentwise gap against a rule of half the order
/// on the same panels.
pub fn panel_integrate<const K: usize, F>(
    mut f: F,
    a: f64,
    b: f64,
    width: f64,
    order: usize,
) -> Result<([f64; K], f64)>
where
    F: FnMut(f64) -> Result<[f64; K]>,
{
    if !(b > a) {
        return Ok(([0.0; K], 0.0));
    }
    let panels = ((b - a) / width).ceil().max(1.0) as usize;
    let fine = GaussLegendre::get(order);
    let coarse = GaussLegendre::get((order / 2).max(2));
    let h = (b - a) / panels as f64;
    let mut total = [0.0; K];
    let mut total_coarse = [0.0; K];
    for j in 0..panels {
        let lo = a + j as f64 * h;
        let hi = if j + 1 == panels { b } else { lo + h };
        for (x, w) in fine.mapped(lo, hi) {
            let v = f(x)?;
            for k in 0..K {
                total[k] += w * v[k];
            }
        }
        for (x, w) in coarse.mapped(lo, hi) {
            let v = f(x)?;
            for k in 0..K {
                total_coarse[k] += w * v[k];
            }
        }
    }
    let err = total
        .iter()
        .zip(&total_coarse)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    Ok((total, err))
}

const GK_XK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const GK_WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * GK_WK[7];
    let mut gauss = fc * GK_WG[3];
    for j in 0..7 {
        let dx = h * GK_XK[j];
        let s = f(c - dx) + f(c + dx);
        kron += GK_WK[j] * s;
        if j % 2 == 1 {
            gauss += GK_WG[j / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Globally adaptive Gauss–Kronrod (7/15) quadrature on a finite interval.
pub fn adaptive<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut pieces = vec![(a, b, gk15(&mut f, a, b))];
    for _ in 0..4000 {
        let (total, err) = pieces
            .iter()
            .fold((0.0, 0.0), |(t, e), p| (t + p.2 .0, e + p.2 .1));
        if err <= abs_tol {
            return Ok(total);
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2 .1.total_cmp(&y.1 .2 .1))
            .map(|(i, _)| i)
            .expect("at least one piece");
        let (lo, hi, _) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        pieces.push((lo, mid, gk15(&mut f, lo, mid)));
        pieces.push((mid, hi, gk15(&mut f, mid, hi)));
    }
    let err = pieces.iter().map(|p| p.2 .1).sum();
    Err(Error::Convergence {
        what: "adaptive quadrature",
        estimate: err,
        tolerance: abs_tol,
    })
}
