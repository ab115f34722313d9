//! Monte Carlo sampling of the largest eigenvalue of GOE/GUE matrices with
//! density ∝ exp(−(β/2)Σx²)Π|x_j − x_k|^β, plus empirical-CDF distances and
//! log-log rate fits.
//!
//! Sample i is drawn from `ChaCha8Rng::seed_from_u64(seed)` switched to stream
//! i, so the output depends only on (params, seed), never on thread count.

pub mod eigen;

use std::io::{self, Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::edgeworth::{goe_sq_expansion, gue_expansion, tau_inverse};
use crate::error::{Error, Result};
use crate::limits::LimitTables;
use crate::output::{format_real, CsvRecord};

pub use eigen::{
    eigen_residual, symmetric_eigen, symmetric_eigenvalues, tridiagonal_eigenvalues, tridiagonal_largest,
};

pub const MAX_N_ORTHOGONAL: usize = 2000;
pub const MAX_N_UNITARY: usize = 1000;
/// Smallest sample count accepted by the distance statistics.
pub const MIN_DISTANCE_COUNT: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Beta {
    #[serde(rename = "1")]
    Orthogonal,
    #[serde(rename = "2")]
    Unitary,
}

impl Beta {
    pub fn from_index(beta: u8) -> Result<Self> {
        match beta {
            1 => Ok(Beta::Orthogonal),
            2 => Ok(Beta::Unitary),
            _ => Err(Error::Parameter(format!("beta must be 1 or 2, got {beta}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Beta::Orthogonal => 1,
            Beta::Unitary => 2,
        }
    }
}

/// Dense Wigner matrices, or the equivalent random tridiagonal model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixModel {
    #[default]
    Dense,
    Tridiagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleParams {
    pub beta: Beta,
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    #[serde(default)]
    pub model: MatrixModel,
}

impl EnsembleParams {
    pub fn new(beta: Beta, n: usize, count: usize, seed: u64) -> Self {
        Self {
            beta,
            n,
            count,
            seed,
            model: MatrixModel::Dense,
        }
    }

    pub fn with_model(mut self, model: MatrixModel) -> Self {
        self.model = model;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let limit = match self.beta {
            Beta::Orthogonal => MAX_N_ORTHOGONAL,
            Beta::Unitary => MAX_N_UNITARY,
        };
        if self.n == 0 || self.n > limit {
            return Err(Error::Parameter(format!(
                "n = {} outside 1..={limit} for beta = {}",
                self.n,
                self.beta.index()
            )));
        }
        if self.count == 0 {
            return Err(Error::Parameter("count must be positive".into()));
        }
        Ok(())
    }
}

fn stream_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn normal(rng: &mut ChaCha8Rng, sd: f64) -> f64 {
    let z: f64 = StandardNormal.sample(rng);
    sd * z
}

fn largest(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// β = 1: diagonal N(0, 1), off-diagonal N(0, ½).
fn dense_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let off = std::f64::consts::FRAC_1_SQRT_2;
    let mut h = vec![0.0; n * n];
    for i in 0..n {
        h[i * n + i] = normal(rng, 1.0);
        for j in 0..i {
            let v = normal(rng, off);
            h[i * n + j] = v;
            h[j * n + i] = v;
        }
    }
    h
}

/// β = 2: H = A + iB with diagonal N(0, ½) and off-diagonal real and
/// imaginary parts N(0, ¼), returned as the real symmetric embedding
/// [[A, −B], [B, A]] whose spectrum is that of H with each value doubled.
fn dense_unitary_embedded(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let m = 2 * n;
    let mut h = vec![0.0; m * m];
    let diag = std::f64::consts::FRAC_1_SQRT_2;
    let mut set = |i: usize, j: usize, v: f64| {
        h[i * m + j] = v;
        h[j * m + i] = v;
    };
    for i in 0..n {
        let d = normal(rng, diag);
        set(i, i, d);
        set(n + i, n + i, d);
        for j in 0..i {
            let re = normal(rng, 0.5);
            let im = normal(rng, 0.5);
            set(i, j, re);
            set(n + i, n + j, re);
            // block (1,0) holds B, block (0,1) holds −B; B antisymmetric
            set(n + i, j, im);
            set(n + j, i, -im);
        }
    }
    h
}

/// Tridiagonal β-Hermite model: (1/√(2β))·tridiag(N(0, 2); χ_{β(n−1)}, …, χ_β).
fn tridiagonal_max(rng: &mut ChaCha8Rng, n: usize, beta: f64) -> Result<f64> {
    let scale = 1.0 / (2.0 * beta).sqrt();
    let diag: Vec<f64> = (0..n).map(|_| scale * normal(rng, std::f64::consts::SQRT_2)).collect();
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for k in (1..n).rev() {
        let chi2 = ChiSquared::new(beta * k as f64)
            .map_err(|e| Error::Internal(format!("chi-squared: {e}")))?;
        let x: f64 = chi2.sample(rng);
        off.push(scale * x.sqrt());
    }
    tridiagonal_largest(&diag, &off)
}

fn sample_one(params: &EnsembleParams, index: usize) -> Result<f64> {
    let mut rng = stream_rng(params.seed, index);
    let n = params.n;
    match (params.model, params.beta) {
        (MatrixModel::Dense, Beta::Orthogonal) => {
            Ok(largest(&symmetric_eigenvalues(dense_orthogonal(&mut rng, n), n)?))
        }
        (MatrixModel::Dense, Beta::Unitary) => Ok(largest(&symmetric_eigenvalues(
            dense_unitary_embedded(&mut rng, n),
            2 * n,
        )?)),
        (MatrixModel::Tridiagonal, beta) => tridiagonal_max(&mut rng, n, beta.index() as f64),
    }
}

/// Largest eigenvalue of `count` independent matrices, in sample-index order.
pub fn sample_max(params: &EnsembleParams) -> Result<Vec<f64>> {
    params.validate()?;
    (0..params.count)
        .into_par_iter()
        .map(|i| sample_one(params, i))
        .collect()
}

/// A sorted sample with its empirical CDF.
#[derive(Debug, Clone, PartialEq)]
pub struct EcdfSummary {
    sorted: Vec<f64>,
    pub fit: Option<RateFit>,
}

impl EcdfSummary {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Parameter("empty sample".into()));
        }
        if let Some(bad) = samples.iter().find(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                what: "sample",
                at: *bad,
            });
        }
        samples.sort_by(f64::total_cmp);
        Ok(Self { sorted: samples, fit: None })
    }

    pub fn samples(&self) -> &[f64] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Fraction of samples ≤ x.
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.sorted.len() as f64
    }

    /// sup_x |ECDF(x) − model(x)|.
    pub fn sup_distance<F: FnMut(f64) -> f64>(&self, model: F) -> f64 {
        sup_distance(&self.sorted, model)
    }

    /// As [`Self::sup_distance`], refusing samples too small for the
    /// statistic to mean anything.
    pub fn checked_sup_distance<F: FnMut(f64) -> Result<f64>>(&self, mut model: F) -> Result<f64> {
        if self.len() < MIN_DISTANCE_COUNT {
            return Err(Error::Parameter(format!(
                "distance needs at least {MIN_DISTANCE_COUNT} samples, got {}",
                self.len()
            )));
        }
        let mut failure = None;
        let d = self.sup_distance(|x| match model(x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(d),
        }
    }
}

/// Kolmogorov distance between the ECDF of sorted `samples` and `model`,
/// checked on both sides of every jump.
pub fn sup_distance<F: FnMut(f64) -> f64>(samples: &[f64], mut model: F) -> f64 {
    let len = samples.len() as f64;
    let mut worst = 0.0f64;
    let mut i = 0;
    while i < samples.len() {
        let x = samples[i];
        let mut j = i + 1;
        while j < samples.len() && samples[j] == x {
            j += 1;
        }
        let f = model(x);
        worst = worst.max((f - i as f64 / len).abs()).max((f - j as f64 / len).abs());
        i = j;
    }
    worst
}

/// ε with P(sup |ECDF − F| > ε) ≤ `alpha` by the Dvoretzky–Kiefer–Wolfowitz
/// inequality.
pub fn dkw_bound(count: usize, alpha: f64) -> f64 {
    ((2.0 / alpha).ln() / (2.0 * count as f64)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Least-squares line through (ln n, ln error).
pub fn rate_fit(ns: &[usize], errors: &[f64]) -> Result<RateFit> {
    if ns.len() != errors.len() {
        return Err(Error::Parameter("ns and errors differ in length".into()));
    }
    if ns.len() < 3 {
        return Err(Error::Parameter("rate fit needs at least 3 points".into()));
    }
    if let Some(e) = errors.iter().find(|e| !(**e > 0.0)) {
        return Err(Error::Domain(format!("rate fit needs positive errors, got {e}")));
    }
    if ns.contains(&0) {
        return Err(Error::Domain("rate fit needs positive n".into()));
    }
    let xs: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain("rate fit needs at least two distinct n".into()));
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(RateFit {
        slope,
        intercept: my - slope * mx,
        r2,
    })
}

/// Writes the count as a little-endian u64 followed by the values as
/// little-endian f64.
pub fn write_samples<W: Write>(mut out: W, samples: &[f64]) -> io::Result<()> {
    out.write_all(&(samples.len() as u64).to_le_bytes())?;
    for x in samples {
        out.write_all(&x.to_le_bytes())?;
    }
    out.flush()
}

pub fn read_samples<R: Read>(mut input: R) -> io::Result<Vec<f64>> {
    let mut word = [0u8; 8];
    input.read_exact(&mut word)?;
    let count = u64::from_le_bytes(word) as usize;
    let mut out = Vec::with_capacity(count.min(1 << 24));
    for _ in 0..count {
        input.read_exact(&mut word)?;
        out.push(f64::from_le_bytes(word));
    }
    Ok(out)
}

/// Model CDFs for the largest eigenvalue at finite n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LimitModel {
    /// The limit law: F₂, or F₁ = √(F₂e^{−μ}).
    Leading,
    /// The limit law with its n^{−1/3} and n^{−2/3} corrections.
    Corrected,
}

impl LimitModel {
    pub fn name(self) -> &'static str {
        match self {
            LimitModel::Leading => "leading",
            LimitModel::Corrected => "corrected",
        }
    }
}

/// The model CDF at the unscaled eigenvalue x. Outside the table range it is
/// 0 on the left and 1 on the right; corrected values are clamped to [0, 1].
pub fn model_cdf(
    tables: &LimitTables,
    beta: Beta,
    n: usize,
    c: f64,
    model: LimitModel,
    x: f64,
) -> Result<f64> {
    let s = tau_inverse(n, c, x)?;
    let (lo, hi) = tables.range();
    if s < lo {
        return Ok(0.0);
    }
    if s > hi {
        return Ok(1.0);
    }
    let v = match beta {
        Beta::Unitary => {
            let e = gue_expansion(tables, n, c, s)?;
            match model {
                LimitModel::Leading => e.leading,
                LimitModel::Corrected => e.total,
            }
        }
        Beta::Orthogonal => {
            let e = goe_sq_expansion(tables, n, c, s)?;
            match model {
                LimitModel::Leading => e.leading.max(0.0).sqrt(),
                LimitModel::Corrected => e.total.max(0.0).sqrt(),
            }
        }
    };
    Ok(v.clamp(0.0, 1.0))
}

/// One line of the Monte Carlo summary CSV.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McSummaryRow {
    pub n: usize,
    pub c: f64,
    pub beta: u8,
    pub count: usize,
    pub seed: u64,
    pub model: String,
    pub sup_distance: f64,
}

impl CsvRecord for McSummaryRow {
    fn header() -> &'static [&'static str] {
        &["n", "c", "beta", "count", "seed", "model", "sup_distance"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            format_real(self.c),
            self.beta.to_string(),
            self.count.to_string(),
            self.seed.to_string(),
            self.model.clone(),
            format_real(self.sup_distance),
        ]
    }
}

/// Samples once and measures the distance to each requested model.
pub fn compare_models(
    tables: &LimitTables,
    params: &EnsembleParams,
    c: f64,
    models: &[LimitModel],
) -> Result<Vec<McSummaryRow>> {
    let ecdf = EcdfSummary::new(sample_max(params)?)?;
    models
        .iter()
        .map(|&model| {
            let d = ecdf.checked_sup_distance(|x| model_cdf(tables, params.beta, params.n, c, model, x))?;
            Ok(McSummaryRow {
                n: params.n,
                c,
                beta: params.beta.index(),
                count: params.count,
                seed: params.seed,
                model: model.name().to_string(),
                sup_distance: d,
            })
        })
        .collect()
}

/// A CDF sampled on a uniform grid and linearly interpolated, for models
/// too costly to evaluate at every sample. Constant beyond the grid ends.
#[derive(Debug, Clone)]
pub struct TabulatedCdf {
    lo: f64,
    step: f64,
    values: Vec<f64>,
}

impl TabulatedCdf {
    pub fn new<F: FnMut(f64) -> Result<f64>>(mut f: F, lo: f64, hi: f64, points: usize) -> Result<Self> {
        if points < 2 || !(hi > lo) {
            return Err(Error::Parameter("tabulation needs hi > lo and at least 2 points".into()));
        }
        let step = (hi - lo) / (points - 1) as f64;
        let values = (0..points).map(|k| f(lo + k as f64 * step)).collect::<Result<_>>()?;
        Ok(Self { lo, step, values })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let r = (x - self.lo) / self.step;
        let last = self.values.len() - 1;
        if r <= 0.0 {
            return self.values[0];
        }
        if r >= last as f64 {
            return self.values[last];
        }
        let k = r.floor() as usize;
        let w = r - k as f64;
        (1.0 - w) * self.values[k] + w * self.values[k + 1]
    }
}

/// Uniform draws in [0, 1) from the same per-index streams, for tests of the
/// distance machinery.
pub fn uniform_samples(count: usize, seed: u64) -> Vec<f64> {
    (0..count).map(|i| stream_rng(seed, i).random::<f64>()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_n::{goe_n2_oracle, gue_n2_oracle};
    use proptest::prelude::*;

    fn normal_cdf(x: f64) -> f64 {
        0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
    }

    #[test]
    fn n_one_orthogonal_is_standard_normal() {
        let s = sample_max(&EnsembleParams::new(Beta::Orthogonal, 1, 100_000, 7)).unwrap();
        let d = EcdfSummary::new(s).unwrap().sup_distance(normal_cdf);
        // 1% critical value of the Kolmogorov statistic
        assert!(d < 1.63 / (100_000f64).sqrt(), "{d}");
    }

    #[test]
    fn deterministic_and_thread_independent() {
        let p = EnsembleParams::new(Beta::Unitary, 5, 200, 42);
        let a = sample_max(&p).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool.install(|| sample_max(&p).unwrap());
        assert_eq!(a, b);
        let c = sample_max(&EnsembleParams { seed: 43, ..p }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn orthogonal_trace_identity() {
        // E[tr H²] = n(n + 1)/2 at n = 4
        let n = 4;
        let count = 40_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for i in 0..count {
            let mut rng = stream_rng(11, i);
            let vals = symmetric_eigenvalues(dense_orthogonal(&mut rng, n), n).unwrap();
            let t: f64 = vals.iter().map(|v| v * v).sum();
            sum += t;
            sum_sq += t * t;
        }
        let mean = sum / count as f64;
        let sd = ((sum_sq / count as f64 - mean * mean) / count as f64).sqrt();
        assert!((mean - 10.0).abs() < 4.0 * sd, "{mean} ± {sd}");
    }

    #[test]
    fn unitary_embedding_doubles_spectrum() {
        let mut rng = stream_rng(3, 0);
        let n = 6;
        let h = dense_unitary_embedded(&mut rng, n);
        let mut vals = symmetric_eigenvalues(h, 2 * n).unwrap();
        vals.sort_by(f64::total_cmp);
        for k in 0..n {
            assert!((vals[2 * k] - vals[2 * k + 1]).abs() < 1e-12);
        }
    }

    #[test]
    fn n_two_models_match_oracles() {
        let count = 100_000;
        let tol = 1.63 / (count as f64).sqrt();
        let goe_cdf = TabulatedCdf::new(|t| Ok(goe_n2_oracle(t)?.sqrt()), -6.0, 6.0, 2401).unwrap();
        let gue_cdf = TabulatedCdf::new(gue_n2_oracle, -6.0, 6.0, 2401).unwrap();
        for model in [MatrixModel::Dense, MatrixModel::Tridiagonal] {
            let goe = EcdfSummary::new(
                sample_max(&EnsembleParams::new(Beta::Orthogonal, 2, count, 1).with_model(model)).unwrap(),
            )
            .unwrap();
            let d = goe.sup_distance(|t| goe_cdf.eval(t));
            assert!(d < tol, "{model:?} GOE: {d}");
            let gue = EcdfSummary::new(
                sample_max(&EnsembleParams::new(Beta::Unitary, 2, count, 2).with_model(model)).unwrap(),
            )
            .unwrap();
            let d = gue.sup_distance(|t| gue_cdf.eval(t));
            assert!(d < tol, "{model:?} GUE: {d}");
        }
    }

    #[test]
    fn tabulated_cdf_interpolates() {
        let t = TabulatedCdf::new(|x| Ok(x * x), 0.0, 1.0, 11).unwrap();
        assert_eq!(t.eval(-1.0), 0.0);
        assert_eq!(t.eval(2.0), 1.0);
        assert!((t.eval(0.25) - 0.065).abs() < 1e-12);
    }

    #[test]
    fn dense_and_tridiagonal_agree_in_law() {
        // two-sample Kolmogorov statistic at the 1% level
        let count = 20_000;
        for beta in [Beta::Orthogonal, Beta::Unitary] {
            let dense = EcdfSummary::new(sample_max(&EnsembleParams::new(beta, 12, count, 5)).unwrap()).unwrap();
            let tri = EcdfSummary::new(
                sample_max(&EnsembleParams::new(beta, 12, count, 6).with_model(MatrixModel::Tridiagonal)).unwrap(),
            )
            .unwrap();
            let d = tri.sup_distance(|x| dense.eval(x));
            assert!(d < 1.63 * (2.0 / count as f64).sqrt(), "{beta:?}: {d}");
        }
    }

    #[test]
    fn distance_to_constant_half() {
        let e = EcdfSummary::new(uniform_samples(10_000, 5)).unwrap();
        assert!(e.sup_distance(|_| 0.5) >= 0.5 - 1e-3);
    }

    #[test]
    fn distance_of_model_to_itself_within_dkw() {
        let e = EcdfSummary::new(uniform_samples(100_000, 0)).unwrap();
        let d = e.sup_distance(|x| x.clamp(0.0, 1.0));
        assert!(d < dkw_bound(100_000, 0.01) && dkw_bound(100_000, 0.01) < 0.006, "{d}");
    }

    #[test]
    fn small_samples_refused_for_distance() {
        let e = EcdfSummary::new(uniform_samples(999, 1)).unwrap();
        assert!(e.checked_sup_distance(|x| Ok(x)).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        assert!(sample_max(&EnsembleParams::new(Beta::Unitary, 1001, 10, 0)).is_err());
        assert!(sample_max(&EnsembleParams::new(Beta::Orthogonal, 2001, 10, 0)).is_err());
        assert!(Beta::from_index(4).is_err());
    }

    #[test]
    fn rate_fit_synthetic() {
        let ns = [20, 40, 80, 160];
        let e1: Vec<f64> = ns.iter().map(|&n| 3.0 / n as f64).collect();
        let f = rate_fit(&ns, &e1).unwrap();
        assert!((f.slope + 1.0).abs() < 1e-12 && (f.r2 - 1.0).abs() < 1e-12);
        let e3: Vec<f64> = ns.iter().map(|&n| 0.5 * (n as f64).powf(-1.0 / 3.0)).collect();
        assert!((rate_fit(&ns, &e3).unwrap().slope + 1.0 / 3.0).abs() < 1e-12);
        assert!(matches!(rate_fit(&ns, &[1.0, 0.0, 1.0, 1.0]), Err(Error::Domain(_))));
        assert!(rate_fit(&ns[..2], &e1[..2]).is_err());
    }

    #[test]
    fn dump_round_trip() {
        let s = vec![1.5, -2.25, f64::MIN_POSITIVE, 1e300];
        let mut buf = Vec::new();
        write_samples(&mut buf, &s).unwrap();
        assert_eq!(buf.len(), 8 + 8 * s.len());
        assert_eq!(&buf[..8], &4u64.to_le_bytes());
        assert_eq!(read_samples(&buf[..]).unwrap(), s);
    }

    proptest! {
        #[test]
        fn ecdf_is_right_continuous_step(xs in proptest::collection::vec(-5.0f64..5.0, 1..200), probe in -6.0f64..6.0) {
            let e = EcdfSummary::new(xs.clone()).unwrap();
            let v = e.eval(probe);
            prop_assert!((0.0..=1.0).contains(&v));
            prop_assert!(e.samples().windows(2).all(|w| w[0] <= w[1]));
            for &x in e.samples() {
                prop_assert!(e.eval(x) >= e.eval(x - 1e-9));
                prop_assert_eq!(e.eval(x), e.eval(x + 0.0));
            }
            prop_assert_eq!(e.eval(f64::INFINITY), 1.0);
        }

        #[test]
        fn sup_distance_bounded(xs in proptest::collection::vec(0.0f64..1.0, 1..100)) {
            let e = EcdfSummary::new(xs).unwrap();
            let d = e.sup_distance(|x| x);
            prop_assert!((0.0..=1.0).contains(&d));
        }
    }
}
