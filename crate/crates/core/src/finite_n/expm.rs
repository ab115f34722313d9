//! Exponentials of the 3×3 generators built from the tail integrals a, b.

use nalgebra::Matrix3;

pub type Mat3 = Matrix3<f64>;

/// Which generator: the one driving (u_ε, V, q_ε) or the one driving
/// (𝒬, 𝒫, R̃).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    System1,
    System2,
}

/// Rows (0,0,a),(0,0,−b),(b,−a,0) for system 1 and (0,0,−a),(0,0,−b),(−b,−a,0)
/// for system 2.
pub fn generator(a: f64, b: f64, variant: Variant) -> Mat3 {
    match variant {
        Variant::System1 => Mat3::new(0.0, 0.0, a, 0.0, 0.0, -b, b, -a, 0.0),
        Variant::System2 => Mat3::new(0.0, 0.0, -a, 0.0, 0.0, -b, -b, -a, 0.0),
    }
}

/// exp(M) = I + (sinh θ/θ)M + ((cosh θ − 1)/θ²)M² with θ² = 2ab, using
/// M³ = θ²M.
pub fn expm_closed(a: f64, b: f64, variant: Variant) -> Mat3 {
    let m = generator(a, b, variant);
    let t2 = 2.0 * a * b;
    let (s1, s2) = if t2.abs() < 1e-4 {
        // sinh θ/θ and (cosh θ − 1)/θ² by their even series in θ²
        (
            1.0 + t2 / 6.0 * (1.0 + t2 / 20.0 * (1.0 + t2 / 42.0)),
            0.5 + t2 / 24.0 * (1.0 + t2 / 30.0 * (1.0 + t2 / 56.0)),
        )
    } else if t2 > 0.0 {
        let th = t2.sqrt();
        (th.sinh() / th, (th.cosh() - 1.0) / t2)
    } else {
        let th = (-t2).sqrt();
        (th.sin() / th, (1.0 - th.cos()) / -t2)
    };
    Mat3::identity() + m * s1 + m * m * s2
}

/// Σ_{k<terms} M^k/k!.
pub fn expm_series(m: &Mat3, terms: usize) -> Mat3 {
    let mut sum = Mat3::identity();
    let mut term = Mat3::identity();
    for k in 1..terms {
        term = term * m / k as f64;
        sum += term;
    }
    sum
}

/// Generic scaling and squaring: Taylor on M/2^j with ‖M/2^j‖ ≤ 1/2, then
/// j squarings.
pub fn expm_scaling_squaring(m: &Mat3) -> Mat3 {
    let norm = m.abs().row_sum().max();
    let mut j = 0;
    while norm / 2f64.powi(j) > 0.5 {
        j += 1;
    }
    let scaled = m / 2f64.powi(j);
    let mut e = expm_series(&scaled, 20);
    for _ in 0..j {
        e = e * e;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_generator_gives_identity() {
        for v in [Variant::System1, Variant::System2] {
            assert_eq!(expm_closed(0.0, 0.0, v), Mat3::identity());
        }
    }

    #[test]
    fn unit_arguments() {
        let e = expm_closed(1.0, 1.0, Variant::System1);
        let r2 = 2f64.sqrt();
        assert!((e[(2, 2)] - r2.cosh()).abs() < 1e-15);
        assert!((e[(0, 2)] - r2.sinh() / r2).abs() < 1e-15);
        // Σ 2^k a^{k+1} b^k/(2k+1)! at a = b = 1
        let mut fact = 1.0;
        let mut series = 0.0;
        for k in 0..30 {
            if k > 0 {
                fact *= (2 * k) as f64 * (2 * k + 1) as f64;
            }
            series += 2f64.powi(k as i32) / fact;
        }
        assert!((e[(0, 2)] - series).abs() < 1e-15);
    }

    #[test]
    fn cube_identity_of_generators() {
        for v in [Variant::System1, Variant::System2] {
            let m = generator(0.7, 1.9, v);
            let lhs = m * m * m;
            let rhs = m * (2.0 * 0.7 * 1.9);
            assert!((lhs - rhs).abs().max() < 1e-14);
        }
    }

    proptest! {
        #[test]
        fn closed_form_matches_generic_routes(a in 0.0f64..3.0, b in 0.0f64..3.0) {
            for v in [Variant::System1, Variant::System2] {
                let closed = expm_closed(a, b, v);
                let m = generator(a, b, v);
                let scale = closed.abs().max().max(1.0);
                prop_assert!((closed - expm_series(&m, 30)).abs().max() <= 1e-12 * scale);
                prop_assert!((closed - expm_scaling_squaring(&m)).abs().max() <= 1e-12 * scale);
                prop_assert!((closed.determinant() - 1.0).abs() <= 1e-12 * scale);
            }
        }

        #[test]
        fn small_theta_branch_is_continuous(a in 1e-4f64..1e-2, b in 1e-4f64..1e-2) {
            let m = generator(a, b, Variant::System1);
            let closed = expm_closed(a, b, Variant::System1);
            prop_assert!((closed - expm_series(&m, 30)).abs().max() <= 1e-15);
        }
    }
}
