//! Real roots of polynomials up to degree three.
//!
//! Closed forms (trigonometric or Cardano for the cubic, the cancellation-free
//! quadratic formula otherwise), each root then polished with Newton steps on
//! the original coefficients.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const MAX_POLISH_STEPS: usize = 4;

/// `a3 t³ + a2 t² + a1 t + a0`, highest degree first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cubic {
    pub coeffs: [f64; 4],
}

impl Cubic {
    pub fn new(a3: f64, a2: f64, a1: f64, a0: f64) -> Self {
        Self {
            coeffs: [a3, a2, a1, a0],
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let [a3, a2, a1, a0] = self.coeffs;
        ((a3 * t + a2) * t + a1) * t + a0
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let [a3, a2, a1, _] = self.coeffs;
        (3.0 * a3 * t + 2.0 * a2) * t + a1
    }

    fn scale(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, a| m.max(a.abs()))
    }

    /// `|p(t)|` relative to the largest term magnitude the coefficients can
    /// produce at `|t|`, i.e. `max|aₖ| · max(1, |t|)³`.
    pub fn scaled_residual(&self, t: f64) -> f64 {
        let s = self.scale() * t.abs().max(1.0).powi(3);
        if s == 0.0 {
            0.0
        } else {
            self.eval(t).abs() / s
        }
    }

    /// All distinct real roots, ascending.
    pub fn real_roots(&self) -> Result<Vec<f64>> {
        let scale = self.scale();
        if scale == 0.0 {
            return Err(Error::DegeneratePolynomial);
        }
        let [a3, a2, a1, a0] = self.coeffs;
        let negligible = |a: f64| a.abs() <= 1e-15 * scale;
        let mut roots = if !negligible(a3) {
            cubic_closed_form(a3, a2, a1, a0)
        } else if !negligible(a2) {
            quadratic_roots(a2, a1, a0)
        } else if !negligible(a1) {
            vec![-a0 / a1]
        } else {
            Vec::new()
        };
        for r in &mut roots {
            *r = self.polish(*r);
        }
        roots.sort_by(|a, b| a.total_cmp(b));
        roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));
        Ok(roots)
    }

    fn polish(&self, mut t: f64) -> f64 {
        let mut best = self.eval(t).abs();
        for _ in 0..MAX_POLISH_STEPS {
            let d = self.derivative(t);
            if d == 0.0 || best == 0.0 {
                break;
            }
            let next = t - self.eval(t) / d;
            let val = self.eval(next).abs();
            if !(val < best) {
                break;
            }
            t = next;
            best = val;
        }
        t
    }
}

/// Real roots of `a t² + b t + c`, `a ≠ 0`.
pub fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    if disc == 0.0 {
        return vec![-b / (2.0 * a)];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        // b = 0 and c = 0.
        return vec![0.0];
    }
    vec![q / a, c / q]
}

fn cubic_closed_form(a3: f64, a2: f64, a1: f64, a0: f64) -> Vec<f64> {
    let b = a2 / a3;
    let c = a1 / a3;
    let d = a0 / a3;
    // t = s − b/3 turns the monic cubic into s³ + p s + q.
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let half_q = q / 2.0;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;

    if p == 0.0 && q == 0.0 {
        return vec![-shift];
    }
    if disc <= 0.0 {
        // Three real roots (p < 0 here).
        let m = 2.0 * (-third_p).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        (0..3)
            .map(|k| m * (theta - 2.0 * PI * k as f64 / 3.0).cos() - shift)
            .collect()
    } else {
        let a = -half_q.signum() * (half_q.abs() + disc.sqrt()).cbrt();
        let bb = if a == 0.0 { 0.0 } else { -third_p / a };
        vec![a + bb - shift]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn assert_roots(c: Cubic, expected: &[f64]) {
        let r = c.real_roots().unwrap();
        assert_eq!(r.len(), expected.len(), "{r:?} vs {expected:?}");
        for (a, b) in r.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{r:?} vs {expected:?}");
        }
    }

    #[test]
    fn three_distinct_roots() {
        // (t − 1)(t − 2)(t + 3) = t³ − 7t + 6
        assert_roots(Cubic::new(1.0, 0.0, -7.0, 6.0), &[-3.0, 1.0, 2.0]);
    }

    #[test]
    fn single_real_root() {
        // (t − 2)(t² + 1)
        assert_roots(Cubic::new(1.0, -2.0, 1.0, -2.0), &[2.0]);
    }

    #[test]
    fn double_and_triple_roots() {
        // (t − 1)²(t + 2) = t³ − 3t + 2
        assert_roots(Cubic::new(1.0, 0.0, -3.0, 2.0), &[-2.0, 1.0]);
        // (t − 1)³
        assert_roots(Cubic::new(1.0, -3.0, 3.0, -1.0), &[1.0]);
    }

    #[test]
    fn degree_drops() {
        assert_roots(Cubic::new(0.0, 1.0, -3.0, 2.0), &[1.0, 2.0]);
        assert_roots(Cubic::new(0.0, 0.0, 2.0, -1.0), &[0.5]);
        assert_roots(Cubic::new(0.0, 1.0, 0.0, 1.0), &[]);
        assert_roots(Cubic::new(0.0, 0.0, 0.0, 3.0), &[]);
        assert_eq!(Cubic::new(0.0, 0.0, 0.0, 0.0).real_roots(), Err(Error::DegeneratePolynomial));
    }

    #[test]
    fn quadratic_with_zero_root() {
        assert_roots(Cubic::new(0.0, 1.0, -1.0, 0.0), &[0.0, 1.0]);
        assert_roots(Cubic::new(0.0, 1.0, 0.0, 0.0), &[0.0]);
    }

    proptest! {
        #[test]
        fn constructed_roots_are_recovered(
            r1 in -5.0f64..5.0, r2 in -5.0f64..5.0, r3 in -5.0f64..5.0, lead in 0.1f64..10.0
        ) {
            prop_assume!((r1 - r2).abs() > 1e-3 && (r2 - r3).abs() > 1e-3 && (r1 - r3).abs() > 1e-3);
            let a2 = -lead * (r1 + r2 + r3);
            let a1 = lead * (r1 * r2 + r1 * r3 + r2 * r3);
            let a0 = -lead * r1 * r2 * r3;
            let c = Cubic::new(lead, a2, a1, a0);
            let found = c.real_roots().unwrap();
            let mut expected = vec![r1, r2, r3];
            expected.sort_by(|a, b| a.total_cmp(b));
            prop_assert_eq!(found.len(), 3);
            for (a, b) in found.iter().zip(&expected) {
                prop_assert!((a - b).abs() < 1e-8, "{:?} vs {:?}", found, expected);
            }
        }

        #[test]
        fn every_root_has_small_residual(
            a3 in -3.0f64..3.0, a2 in -3.0f64..3.0, a1 in -3.0f64..3.0, a0 in -3.0f64..3.0
        ) {
            let c = Cubic::new(a3, a2, a1, a0);
            prop_assume!(c.scale() > 1e-6);
            for t in c.real_roots().unwrap() {
                prop_assert!(c.scaled_residual(t) <= 1e-9, "t = {} residual {}", t, c.scaled_residual(t));
            }
        }
    }
}
