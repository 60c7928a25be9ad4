//! Complex polynomials and a simultaneous-iteration root finder.
//!
//! Roots are found with Aberth-Ehrlich iteration: all roots are refined at
//! once, so multiple and clustered roots converge without deflation error.
//! Iterates start on a circle of radius 1 + max|c_j| (a Cauchy bound on the
//! root magnitudes of the monic polynomial), with an angular offset so the
//! starting set is never symmetric about the real axis.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::math;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolynomialError {
    #[error("polynomial must have degree at least 1")]
    DegreeTooSmall,
    #[error("leading coefficient must be nonzero")]
    ZeroLeadingCoefficient,
    #[error("coefficients must be finite")]
    NonFiniteCoefficient,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootsError {
    /// The iteration cap was reached before every residual passed the
    /// tolerance. `best` holds the iterate with the smallest worst-case
    /// residual seen, `residual` that worst-case value.
    #[error("root iteration stopped after {sweeps} sweeps with residual {residual:e}")]
    NonConvergence {
        sweeps: usize,
        residual: f64,
        best: Vec<Complex64>,
    },
}

/// Tuning knobs for [`ComplexPolynomial::roots_with`].
///
/// `residual_tol` is relative: a root set is accepted when every |p(z_i)|
/// is at most `residual_tol * (1 + max|c_j|)` with `c_j` the coefficients
/// of the monic-normalized polynomial.
#[derive(Debug, Clone, Copy)]
pub struct RootFinder {
    pub residual_tol: f64,
    pub max_sweeps: usize,
}

impl Default for RootFinder {
    fn default() -> Self {
        RootFinder {
            residual_tol: 1e-10,
            max_sweeps: 500,
        }
    }
}

/// Polynomial with complex coefficients, highest degree first.
///
/// Degree is at least 1 and the leading coefficient is nonzero; both are
/// enforced at construction, as is finiteness of every coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self, PolynomialError> {
        if coeffs.len() < 2 {
            return Err(PolynomialError::DegreeTooSmall);
        }
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(PolynomialError::NonFiniteCoefficient);
        }
        if coeffs[0] == Complex64::new(0.0, 0.0) {
            return Err(PolynomialError::ZeroLeadingCoefficient);
        }
        Ok(ComplexPolynomial { coeffs })
    }

    /// Monic polynomial with the given root multiset (any order).
    pub fn from_roots(roots: &[Complex64]) -> Result<Self, PolynomialError> {
        if roots.is_empty() {
            return Err(PolynomialError::DegreeTooSmall);
        }
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            coeffs.push(Complex64::new(0.0, 0.0));
            for k in (1..coeffs.len()).rev() {
                let prev = coeffs[k - 1];
                coeffs[k] -= r * prev;
            }
        }
        ComplexPolynomial::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let mut p = self.coeffs[0];
        for &c in &self.coeffs[1..] {
            p = p * z + c;
        }
        p
    }

    /// All roots with multiplicity, in no particular order.
    pub fn roots(&self) -> Result<Vec<Complex64>, RootsError> {
        self.roots_with(&RootFinder::default())
    }

    pub fn roots_with(&self, finder: &RootFinder) -> Result<Vec<Complex64>, RootsError> {
        let inv_lead = Complex64::new(1.0, 0.0) / self.coeffs[0];
        let monic: Vec<Complex64> = self.coeffs.iter().map(|&c| c * inv_lead).collect();
        if self.degree() == 1 {
            return Ok(vec![-monic[1]]);
        }
        aberth(&monic, finder)
    }

    /// Largest real part over all roots. Invariant under scaling the
    /// polynomial by a nonzero constant.
    pub fn spectral_abscissa(&self) -> Result<f64, RootsError> {
        let roots = self.roots()?;
        Ok(roots.iter().map(|r| r.re).fold(f64::NEG_INFINITY, f64::max))
    }
}

fn horner_pair(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = coeffs[0];
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in &coeffs[1..] {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn start_point(radius: f64, index: usize, degree: usize, shift: usize) -> Complex64 {
    let angle = TAU * (index as f64) / (degree as f64) + 0.4 + 0.7 * (shift as f64);
    Complex64::new(radius * math::cos(angle), radius * math::sin(angle))
}

/// Aberth-Ehrlich sweep over a monic coefficient slice (degree >= 2).
fn aberth(monic: &[Complex64], finder: &RootFinder) -> Result<Vec<Complex64>, RootsError> {
    let degree = monic.len() - 1;
    let max_coeff = monic[1..].iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let radius = 1.0 + max_coeff;
    let tol = finder.residual_tol * radius;

    let mut z: Vec<Complex64> = (0..degree)
        .map(|m| start_point(radius, m, degree, 0))
        .collect();
    let mut best = z.clone();
    let mut best_residual = f64::INFINITY;

    for sweep in 0..=finder.max_sweeps {
        let worst = z
            .iter()
            .map(|&zi| horner_pair(monic, zi).0.norm())
            .fold(0.0f64, f64::max);
        if worst < best_residual {
            best_residual = worst;
            best.copy_from_slice(&z);
        }
        if worst <= tol {
            return Ok(z);
        }
        if sweep == finder.max_sweeps {
            break;
        }

        for i in 0..degree {
            let (p, dp) = horner_pair(monic, z[i]);
            if p.norm() <= tol {
                continue;
            }
            // Newton correction, falling back to a nudge at a critical point.
            let w = if dp.norm() == 0.0 {
                z[i] = z[i] + Complex64::new(tol + 1e-12, tol + 1e-12);
                continue;
            } else {
                p / dp
            };
            // Repulsion from the other iterates.
            let mut s = Complex64::new(0.0, 0.0);
            let mut collided = false;
            for j in 0..degree {
                if j == i {
                    continue;
                }
                let dz = z[i] - z[j];
                if dz.norm() < 1e-14 * radius {
                    collided = true;
                    break;
                }
                s += Complex64::new(1.0, 0.0) / dz;
            }
            if collided {
                z[i] = start_point(radius, i, degree, sweep + 1);
                continue;
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let delta = if denom.norm() < 1e-12 { w } else { w / denom };
            z[i] -= delta;
            if !z[i].re.is_finite() || !z[i].im.is_finite() {
                z[i] = start_point(radius, i, degree, sweep + 1);
            }
        }
    }

    Err(RootsError::NonConvergence {
        sweeps: finder.max_sweeps,
        residual: best_residual,
        best,
    })
}

/// Monic quartic z^4 + (a1 + i b1) z^3 + (a2 + i b2) z^2 + (a3 + i b3) z
/// + (a4 + i b4), split into real and imaginary coefficient parts.
///
/// This is the shape every transport mode reduces to; the split form is what
/// the stability table consumes. All parts are finite (checked in `new`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexQuartic {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub b4: f64,
}

impl ComplexQuartic {
    pub fn new(a: [f64; 4], b: [f64; 4]) -> Result<Self, PolynomialError> {
        if a.iter().chain(b.iter()).any(|x| !x.is_finite()) {
            return Err(PolynomialError::NonFiniteCoefficient);
        }
        Ok(ComplexQuartic {
            a1: a[0],
            a2: a[1],
            a3: a[2],
            a4: a[3],
            b1: b[0],
            b2: b[1],
            b3: b[2],
            b4: b[3],
        })
    }

    /// Coefficients highest degree first, leading 1 included.
    pub fn coefficients(&self) -> [Complex64; 5] {
        [
            Complex64::new(1.0, 0.0),
            Complex64::new(self.a1, self.b1),
            Complex64::new(self.a2, self.b2),
            Complex64::new(self.a3, self.b3),
            Complex64::new(self.a4, self.b4),
        ]
    }

    pub fn to_polynomial(&self) -> ComplexPolynomial {
        ComplexPolynomial::new(self.coefficients().to_vec())
            .expect("quartic coefficients are finite with unit leading term")
    }

    /// True when every imaginary part is zero, i.e. the quartic has real
    /// coefficients and a conjugation-symmetric root set.
    pub fn is_real(&self) -> bool {
        self.b1 == 0.0 && self.b2 == 0.0 && self.b3 == 0.0 && self.b4 == 0.0
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.to_polynomial().evaluate(z)
    }

    pub fn roots(&self) -> Result<Vec<Complex64>, RootsError> {
        self.to_polynomial().roots()
    }

    pub fn spectral_abscissa(&self) -> Result<f64, RootsError> {
        self.to_polynomial().spectral_abscissa()
    }

    /// Quartic with every root conjugated; its coefficient imaginary parts
    /// flip sign.
    pub fn conjugate(&self) -> ComplexQuartic {
        ComplexQuartic {
            b1: -self.b1,
            b2: -self.b2,
            b3: -self.b3,
            b4: -self.b4,
            ..*self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn evaluate_matches_direct_expansion() {
        // z^2 + 1 at i is 0; z^4 at 1 + i is -4.
        let p = ComplexPolynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(p.evaluate(c(0.0, 1.0)), c(0.0, 0.0));

        let q = ComplexPolynomial::new(vec![
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        ])
        .unwrap();
        let v = q.evaluate(c(1.0, 1.0));
        assert!((v - c(-4.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(
            ComplexPolynomial::new(vec![c(1.0, 0.0)]),
            Err(PolynomialError::DegreeTooSmall)
        );
        assert_eq!(
            ComplexPolynomial::new(vec![c(0.0, 0.0), c(1.0, 0.0)]),
            Err(PolynomialError::ZeroLeadingCoefficient)
        );
        assert_eq!(
            ComplexPolynomial::new(vec![c(f64::NAN, 0.0), c(1.0, 0.0)]),
            Err(PolynomialError::NonFiniteCoefficient)
        );
        assert_eq!(
            ComplexQuartic::new([0.0, 0.0, 0.0, f64::INFINITY], [0.0; 4]),
            Err(PolynomialError::NonFiniteCoefficient)
        );
    }

    #[test]
    fn from_roots_expands_binomial() {
        // (z - 2)(z + 1) = z^2 - z - 2
        let p = ComplexPolynomial::from_roots(&[c(2.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert_eq!(p.coefficients(), &[c(1.0, 0.0), c(-1.0, 0.0), c(-2.0, 0.0)]);
        // (z - (1+i))^2 = z^2 - (2+2i) z + 2i
        let q = ComplexPolynomial::from_roots(&[c(1.0, 1.0), c(1.0, 1.0)]).unwrap();
        assert_eq!(q.coefficients(), &[c(1.0, 0.0), c(-2.0, -2.0), c(0.0, 2.0)]);
    }

    #[test]
    fn roots_of_simple_quadratic() {
        let p = ComplexPolynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let mut r = p.roots().unwrap();
        r.sort_by(|x, y| x.im.total_cmp(&y.im));
        // The residual stop only pins simple roots to about
        // residual_tol * radius / |p'(root)|, so 1e-9 is the honest bound.
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-9);
        assert!((r[1] - c(0.0, 1.0)).norm() < 1e-9);
    }

    #[test]
    fn quadruple_root_meets_residual_bound() {
        // (z + 1)^4 = z^4 + 4z^3 + 6z^2 + 4z + 1. A quadruple root can only
        // be located to about (residual)^(1/4), so the location check is
        // loose while the residual check is the contract.
        let q = ComplexQuartic::new([4.0, 6.0, 4.0, 1.0], [0.0; 4]).unwrap();
        let roots = q.roots().unwrap();
        assert_eq!(roots.len(), 4);
        let scale = 1.0 + 6.0;
        for r in &roots {
            assert!(q.evaluate(*r).norm() <= 1e-10 * scale);
            assert!((r - c(-1.0, 0.0)).norm() < 1e-2);
        }
        assert!((q.spectral_abscissa().unwrap() - (-1.0)).abs() < 1e-2);
    }

    #[test]
    fn shifted_quadruple_root_in_the_complex_plane() {
        // (z + 1 + i)^4 expanded via from_roots and checked against a
        // binomial expansion done by hand: coefficients 1, 4(1+i),
        // 6(1+i)^2 = 12i, 4(1+i)^3 = -8+8i, (1+i)^4 = -4.
        let root = c(-1.0, -1.0);
        let p = ComplexPolynomial::from_roots(&[root; 4]).unwrap();
        let expect = [
            c(1.0, 0.0),
            c(4.0, 4.0),
            c(0.0, 12.0),
            c(-8.0, 8.0),
            c(-4.0, 0.0),
        ];
        for (got, want) in p.coefficients().iter().zip(expect.iter()) {
            assert!((got - want).norm() < 1e-12);
        }
        for r in p.roots().unwrap() {
            assert!((r - root).norm() < 2e-2);
        }
    }

    #[test]
    fn mixed_sign_quartic_abscissa() {
        // (z - 1)(z + 2)^3 = z^4 + 5z^3 + 6z^2 - 4z - 8: one root in the
        // right half-plane at z = 1, so the abscissa is 1.
        let p =
            ComplexPolynomial::from_roots(&[c(1.0, 0.0), c(-2.0, 0.0), c(-2.0, 0.0), c(-2.0, 0.0)])
                .unwrap();
        assert_eq!(
            p.coefficients(),
            &[
                c(1.0, 0.0),
                c(5.0, 0.0),
                c(6.0, 0.0),
                c(-4.0, 0.0),
                c(-8.0, 0.0)
            ]
        );
        assert!((p.spectral_abscissa().unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn abscissa_invariant_under_scaling() {
        let p = ComplexPolynomial::new(vec![c(1.0, 0.0), c(2.0, 1.0), c(-3.0, 0.5)]).unwrap();
        let scaled =
            ComplexPolynomial::new(p.coefficients().iter().map(|&x| x * 37.5).collect()).unwrap();
        let a = p.spectral_abscissa().unwrap();
        let b = scaled.spectral_abscissa().unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn degree_one_is_solved_directly() {
        let p = ComplexPolynomial::new(vec![c(2.0, 0.0), c(-4.0, 2.0)]).unwrap();
        let r = p.roots().unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - c(2.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn nonconvergence_carries_best_iterate() {
        let p = ComplexPolynomial::from_roots(&[c(0.5, 0.3), c(-1.0, 0.0), c(0.0, -2.0)]).unwrap();
        let finder = RootFinder {
            residual_tol: 1e-10,
            max_sweeps: 1,
        };
        match p.roots_with(&finder) {
            Err(RootsError::NonConvergence {
                sweeps,
                residual,
                best,
            }) => {
                assert_eq!(sweeps, 1);
                assert_eq!(best.len(), 3);
                assert!(residual.is_finite());
            }
            Ok(_) => panic!("one sweep should not converge from the starting circle"),
        }
    }

    #[test]
    fn quartic_accessors_round_trip() {
        let q = ComplexQuartic::new([1.0, 2.0, 3.0, 4.0], [0.5, -0.5, 0.25, 0.0]).unwrap();
        let coeffs = q.coefficients();
        assert_eq!(coeffs[0], c(1.0, 0.0));
        assert_eq!(coeffs[1], c(1.0, 0.5));
        assert_eq!(coeffs[4], c(4.0, 0.0));
        assert!(!q.is_real());
        assert!(ComplexQuartic::new([1.0; 4], [0.0; 4]).unwrap().is_real());
        let conj = q.conjugate();
        assert_eq!(conj.a2, q.a2);
        assert_eq!(conj.b2, -q.b2);
    }
}
