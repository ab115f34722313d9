//! Double-double arithmetic: an unevaluated sum hi + lo carrying about 32
//! significant digits. Only what the Airy tables and kernel refinement use.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn new(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        Dd { hi: s, lo: lo - (s - hi) }
    }

    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact difference of two doubles.
    pub fn diff(a: f64, b: f64) -> Self {
        let (s, e) = two_sum(a, -b);
        Dd::new(s, e)
    }

    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    pub fn magnitude(self) -> f64 {
        self.hi.abs()
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        Dd::new(p, e + self.lo * b)
    }

    pub fn div_f64(self, d: f64) -> Dd {
        let q = self.hi / d;
        let (p, e) = two_prod(q, d);
        let r = (self.hi - p - e + self.lo) / d;
        Dd::new(q, r)
    }

    pub fn div(self, d: Dd) -> Dd {
        let q1 = self.hi / d.hi;
        let r = self - d.mul_f64(q1);
        let q2 = r.hi / d.hi;
        let r = r - d.mul_f64(q2);
        let q3 = r.hi / d.hi;
        let (s, e) = two_sum(q1, q2);
        Dd::new(s, e + q3)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let d = Dd::new(s, e + t);
        Dd::new(d.hi, d.lo + f)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        Dd::new(p, e + (self.hi * o.lo + self.lo * o.hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_third_round_trips() {
        let third = Dd::from_f64(1.0).div_f64(3.0);
        let back = third * Dd::from_f64(3.0) - Dd::from_f64(1.0);
        assert!(back.value().abs() < 1e-31);
        let q = Dd::from_f64(2.0).div(Dd::from_f64(3.0).div_f64(7.0));
        assert!((q - Dd::from_f64(14.0).div_f64(3.0)).value().abs() < 1e-30);
    }

    #[test]
    fn recovers_cancelled_bits() {
        let a = Dd::from_f64(1.0) + Dd::from_f64(1e-20);
        assert_eq!((a - Dd::from_f64(1.0)).value(), 1e-20);
        assert_eq!(Dd::diff(1.0 + f64::EPSILON, 1.0).value(), f64::EPSILON);
    }
}
