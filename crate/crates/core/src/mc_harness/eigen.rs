//! Symmetric eigensolver: Householder tridiagonalization followed by the
//! implicit-shift QL iteration. Matrices are dense row-major n×n slices.

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Reduces the symmetric `a` to tridiagonal form. Returns (diagonal,
/// subdiagonal) with `sub[0] = 0` and `sub[i]` coupling rows i−1 and i. With
/// `vectors`, `a` is overwritten by the orthogonal reduction matrix.
fn householder(a: &mut [f64], n: usize, vectors: bool) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let ix = |i: usize, j: usize| i * n + j;
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..i).map(|k| a[ix(i, k)].abs()).sum();
            if scale == 0.0 {
                e[i] = a[ix(i, l)];
            } else {
                for k in 0..i {
                    a[ix(i, k)] /= scale;
                    h += a[ix(i, k)] * a[ix(i, k)];
                }
                let f = a[ix(i, l)];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[ix(i, l)] = f - g;
                let mut f = 0.0;
                for j in 0..i {
                    if vectors {
                        a[ix(j, i)] = a[ix(i, j)] / h;
                    }
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[ix(j, k)] * a[ix(i, k)];
                    }
                    for k in j + 1..i {
                        g += a[ix(k, j)] * a[ix(i, k)];
                    }
                    e[j] = g / h;
                    f += e[j] * a[ix(i, j)];
                }
                let hh = f / (h + h);
                for j in 0..i {
                    let f = a[ix(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[ix(j, k)] -= f * e[k] + g * a[ix(i, k)];
                    }
                }
            }
        } else {
            e[i] = a[ix(i, l)];
        }
        d[i] = h;
    }
    if vectors {
        d[0] = 0.0;
    }
    e[0] = 0.0;
    for i in 0..n {
        if vectors {
            if d[i] != 0.0 {
                for j in 0..i {
                    let g: f64 = (0..i).map(|k| a[ix(i, k)] * a[ix(k, j)]).sum();
                    for k in 0..i {
                        a[ix(k, j)] -= g * a[ix(k, i)];
                    }
                }
            }
            d[i] = a[ix(i, i)];
            a[ix(i, i)] = 1.0;
            for j in 0..i {
                a[ix(j, i)] = 0.0;
                a[ix(i, j)] = 0.0;
            }
        } else {
            d[i] = a[ix(i, i)];
        }
    }
    (d, e)
}

/// Implicit-shift QL on (d, sub) in the layout returned by `householder`.
/// Rotations are accumulated into the columns of `z` when given.
fn ql_implicit(d: &mut [f64], sub: &mut [f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(&sub[1..]);
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::Convergence {
                    what: "implicit QL iteration",
                    estimate: e[l].abs(),
                    tolerance: f64::EPSILON * (d[l].abs() + d[l + 1].abs()),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let f = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * f;
                        z[k * n + i] = c * z[k * n + i] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn check_square(a: &[f64], n: usize) -> Result<()> {
    if a.len() != n * n {
        return Err(Error::Parameter(format!("expected {n}×{n} matrix, got {} entries", a.len())));
    }
    Ok(())
}

/// Eigenvalues of a symmetric matrix, unordered. Only the lower triangle is
/// read. The input is consumed as workspace.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    check_square(&a, n)?;
    let (mut d, mut e) = householder(&mut a, n, false);
    ql_implicit(&mut d, &mut e, None)?;
    Ok(d)
}

/// Eigenvalues and eigenvectors; eigenvector k is column k of the returned
/// row-major matrix.
pub fn symmetric_eigen(mut a: Vec<f64>, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_square(&a, n)?;
    let (mut d, mut e) = householder(&mut a, n, true);
    ql_implicit(&mut d, &mut e, Some(&mut a))?;
    Ok((d, a))
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (length n − 1).
pub fn tridiagonal_eigenvalues(mut diag: Vec<f64>, off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n > 0 && off.len() + 1 != n {
        return Err(Error::Parameter("off-diagonal must have length n − 1".into()));
    }
    let mut sub = vec![0.0; n];
    if n > 1 {
        sub[1..].copy_from_slice(off);
    }
    ql_implicit(&mut diag, &mut sub, None)?;
    Ok(diag)
}

/// Number of eigenvalues of the tridiagonal matrix below x (Sturm count).
fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, d) in diag.iter().enumerate() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] / q };
        q = d - x - coupling;
        if q == 0.0 {
            q = -f64::EPSILON * (d.abs() + x.abs() + f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Largest eigenvalue of a symmetric tridiagonal matrix by bisection on the
/// Sturm count, to a few ulps.
pub fn tridiagonal_largest(diag: &[f64], off: &[f64]) -> Result<f64> {
    let n = diag.len();
    if n == 0 || off.len() + 1 != n {
        return Err(Error::Parameter("need n ≥ 1 and an off-diagonal of length n − 1".into()));
    }
    let radius = |i: usize| {
        (if i > 0 { off[i - 1].abs() } else { 0.0 }) + (if i + 1 < n { off[i].abs() } else { 0.0 })
    };
    let mut lo = (0..n).map(|i| diag[i] - radius(i)).fold(f64::INFINITY, f64::min);
    let mut hi = (0..n).map(|i| diag[i] + radius(i)).fold(f64::NEG_INFINITY, f64::max);
    let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    while hi - lo > 4.0 * f64::EPSILON * scale {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(diag, off, mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// max_k ‖H v_k − λ_k v_k‖_∞.
pub fn eigen_residual(h: &[f64], n: usize, values: &[f64], vectors: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for k in 0..n {
        for i in 0..n {
            let hv: f64 = (0..n).map(|j| h[i * n + j] * vectors[j * n + k]).sum();
            worst = worst.max((hv - values[k] * vectors[i * n + k]).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_symmetric(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v: f64 = rng.random_range(-1.0..1.0);
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        a
    }

    fn max_norm_rows(a: &[f64], n: usize) -> f64 {
        (0..n).map(|i| a[i * n..(i + 1) * n].iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    #[test]
    fn residuals_on_random_instances() {
        for (n, seed) in [(1, 1), (2, 2), (7, 3), (50, 4), (200, 5)] {
            let h = random_symmetric(n, seed);
            let (vals, vecs) = symmetric_eigen(h.clone(), n).unwrap();
            let res = eigen_residual(&h, n, &vals, &vecs);
            assert!(res <= 1e-10 * max_norm_rows(&h, n).max(1.0), "n = {n}: {res}");
            let mut only = symmetric_eigenvalues(h, n).unwrap();
            let mut full = vals.clone();
            only.sort_by(f64::total_cmp);
            full.sort_by(f64::total_cmp);
            for (x, y) in only.iter().zip(&full) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn two_by_two_closed_form() {
        let vals = symmetric_eigenvalues(vec![2.0, 1.0, 1.0, 2.0], 2).unwrap();
        let mx = vals.iter().cloned().fold(f64::MIN, f64::max);
        let mn = vals.iter().cloned().fold(f64::MAX, f64::min);
        assert!((mx - 3.0).abs() < 1e-15 && (mn - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tridiagonal_matches_dense() {
        let d = vec![1.0, -0.5, 2.0, 0.3];
        let off = [0.7, -1.1, 0.4];
        let mut dense = vec![0.0; 16];
        for i in 0..4 {
            dense[i * 4 + i] = d[i];
        }
        for i in 0..3 {
            dense[i * 4 + i + 1] = off[i];
            dense[(i + 1) * 4 + i] = off[i];
        }
        let mut a = tridiagonal_eigenvalues(d, &off).unwrap();
        let mut b = symmetric_eigenvalues(dense, 4).unwrap();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-13);
        }
    }

    #[test]
    fn bisection_finds_largest() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in [1, 2, 5, 40] {
            let d: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
            let off: Vec<f64> = (1..n).map(|_| rng.random_range(0.0..1.5)).collect();
            let top = tridiagonal_largest(&d, &off).unwrap();
            let all = tridiagonal_eigenvalues(d, &off).unwrap();
            let mx = all.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            assert!((top - mx).abs() < 1e-13 * mx.abs().max(1.0), "n = {n}");
        }
    }

    #[test]
    fn trace_is_preserved() {
        let n = 30;
        let h = random_symmetric(n, 9);
        let tr: f64 = (0..n).map(|i| h[i * n + i]).sum();
        let sum: f64 = symmetric_eigenvalues(h, n).unwrap().iter().sum();
        assert!((tr - sum).abs() < 1e-12);
    }
}
