//! Eigenvalues of dense real nonsymmetric matrices.
//!
//! Householder reduction to upper Hessenberg form followed by the Francis
//! double-shift QR iteration, eigenvalues only. Complex eigenvalues come out
//! as conjugate pairs up to roundoff; no ordering is imposed here.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EigenError {
    #[error("matrix data length {len} does not match {n}x{n}")]
    ShapeMismatch { n: usize, len: usize },
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("QR iteration did not converge while isolating eigenvalue {index}")]
    NoConvergence { index: usize },
}

/// Eigenvalues of the dense row-major `n` x `n` matrix `data`.
pub fn eigenvalues(n: usize, data: &[f64]) -> Result<Vec<Complex64>, EigenError> {
    if data.len() != n * n {
        return Err(EigenError::ShapeMismatch { n, len: data.len() });
    }
    if data.iter().any(|x| !x.is_finite()) {
        return Err(EigenError::NonFinite);
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = data.to_vec();
    hessenberg(n, &mut h);
    francis_qr(n, &mut h)
}

/// In-place Householder reduction to upper Hessenberg form, similarity
/// transforms only (no accumulation). Entries below the first subdiagonal
/// are explicitly zeroed afterwards.
fn hessenberg(n: usize, h: &mut [f64]) {
    if n < 3 {
        return;
    }
    let mut ort = vec![0.0; n];
    for m in 1..(n - 1) {
        let mut scale = 0.0;
        for i in m..n {
            scale += h[i * n + m - 1].abs();
        }
        if scale == 0.0 {
            continue;
        }
        let mut hsum = 0.0;
        for i in (m..n).rev() {
            ort[i] = h[i * n + m - 1] / scale;
            hsum += ort[i] * ort[i];
        }
        let mut g = math::sqrt(hsum);
        if ort[m] > 0.0 {
            g = -g;
        }
        hsum -= ort[m] * g;
        ort[m] -= g;

        for j in m..n {
            let mut f = 0.0;
            for i in (m..n).rev() {
                f += ort[i] * h[i * n + j];
            }
            f /= hsum;
            for i in m..n {
                h[i * n + j] -= f * ort[i];
            }
        }
        for i in 0..n {
            let mut f = 0.0;
            for j in (m..n).rev() {
                f += ort[j] * h[i * n + j];
            }
            f /= hsum;
            for j in m..n {
                h[i * n + j] -= f * ort[j];
            }
        }
        h[m * n + m - 1] = scale * g;
    }
    for i in 2..n {
        for j in 0..(i - 1) {
            h[i * n + j] = 0.0;
        }
    }
}

/// Double-shift QR on an upper Hessenberg matrix, destroying it.
fn francis_qr(n: usize, h: &mut [f64]) -> Result<Vec<Complex64>, EigenError> {
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    let eps = f64::EPSILON;

    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += h[i * n + j].abs();
        }
    }
    if anorm == 0.0 {
        return Ok(eig);
    }

    let mut t = 0.0;
    let mut nn = n - 1;
    'deflate: loop {
        let mut its = 0;
        loop {
            // Look for a negligible subdiagonal entry, from the bottom up.
            let mut l = nn;
            while l >= 1 {
                let mut s = h[(l - 1) * n + l - 1].abs() + h[l * n + l].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if h[l * n + l - 1].abs() <= eps * s {
                    h[l * n + l - 1] = 0.0;
                    break;
                }
                l -= 1;
            }

            let mut x = h[nn * n + nn];
            if l == nn {
                eig[nn] = Complex64::new(x + t, 0.0);
                if nn == 0 {
                    break 'deflate;
                }
                nn -= 1;
                break;
            }

            let mut y = h[(nn - 1) * n + nn - 1];
            let mut w = h[nn * n + nn - 1] * h[(nn - 1) * n + nn];
            if l + 1 == nn {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = math::sqrt(q.abs());
                x += t;
                if q >= 0.0 {
                    let z = p + math::copysign(z, p);
                    let r1 = x + z;
                    let r2 = if z != 0.0 { x - w / z } else { r1 };
                    eig[nn] = Complex64::new(r1, 0.0);
                    eig[nn - 1] = Complex64::new(r2, 0.0);
                } else {
                    eig[nn] = Complex64::new(x + p, z);
                    eig[nn - 1] = Complex64::new(x + p, -z);
                }
                if nn <= 1 {
                    break 'deflate;
                }
                nn -= 2;
                break;
            }

            if its == 60 {
                return Err(EigenError::NoConvergence { index: nn });
            }
            if its > 0 && its % 10 == 0 {
                // Exceptional shift to break symmetric cycling.
                t += x;
                for i in 0..=nn {
                    h[i * n + i] -= x;
                }
                let s = h[nn * n + nn - 1].abs() + h[(nn - 1) * n + nn - 2].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;

            // Find two consecutive small subdiagonals working up from the
            // bottom of the active block.
            let mut m = nn - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = h[m * n + m];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / h[(m + 1) * n + m] + h[m * n + m + 1];
                q = h[(m + 1) * n + m + 1] - z - rr - ss;
                r = h[(m + 2) * n + m + 1];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = h[m * n + m - 1].abs() * (q.abs() + r.abs());
                let v = p.abs()
                    * (h[(m - 1) * n + m - 1].abs() + z.abs() + h[(m + 1) * n + m + 1].abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nn {
                h[i * n + i - 2] = 0.0;
                if i != m + 2 {
                    h[i * n + i - 3] = 0.0;
                }
            }

            // One implicit double-shift sweep over rows/columns m..=nn.
            let mut sx = 0.0;
            for k in m..nn {
                let notlast = k != nn - 1;
                if k != m {
                    p = h[k * n + k - 1];
                    q = h[(k + 1) * n + k - 1];
                    r = if notlast { h[(k + 2) * n + k - 1] } else { 0.0 };
                    sx = p.abs() + q.abs() + r.abs();
                    if sx != 0.0 {
                        p /= sx;
                        q /= sx;
                        r /= sx;
                    }
                }
                let s = math::copysign(math::sqrt(p * p + q * q + r * r), p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        h[k * n + k - 1] = -h[k * n + k - 1];
                    }
                } else {
                    h[k * n + k - 1] = -s * sx;
                }
                p += s;
                let px = p / s;
                let py = q / s;
                let pz = r / s;
                q /= p;
                r /= p;

                for j in k..=nn {
                    let mut pp = h[k * n + j] + q * h[(k + 1) * n + j];
                    if notlast {
                        pp += r * h[(k + 2) * n + j];
                        h[(k + 2) * n + j] -= pp * pz;
                    }
                    h[(k + 1) * n + j] -= pp * py;
                    h[k * n + j] -= pp * px;
                }
                let mmin = if nn < k + 3 { nn } else { k + 3 };
                for i in l..=mmin {
                    let mut pp = px * h[i * n + k] + py * h[i * n + k + 1];
                    if notlast {
                        pp += pz * h[i * n + k + 2];
                        h[i * n + k + 2] -= pp * r;
                    }
                    h[i * n + k + 1] -= pp * q;
                    h[i * n + k] -= pp;
                }
            }
        }
    }
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|p, q| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)));
        v
    }

    fn assert_spectrum_close(got: Vec<Complex64>, want: Vec<Complex64>, tol: f64) {
        let got = sorted(got);
        let want = sorted(want);
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want.iter()) {
            assert!(
                (g - w).norm() < tol,
                "eigenvalue {g} does not match expected {w}"
            );
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            eigenvalues(2, &[1.0, 2.0, 3.0]),
            Err(EigenError::ShapeMismatch { n: 2, len: 3 })
        );
        assert_eq!(eigenvalues(1, &[f64::NAN]), Err(EigenError::NonFinite));
        assert_eq!(eigenvalues(0, &[]), Ok(Vec::new()));
    }

    #[test]
    fn diagonal_and_triangular_matrices() {
        let got = eigenvalues(3, &[3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -2.0]).unwrap();
        assert_spectrum_close(
            got,
            vec![
                Complex64::new(3.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(-2.0, 0.0),
            ],
            1e-12,
        );

        let got = eigenvalues(3, &[2.0, 5.0, -1.0, 0.0, -3.0, 4.0, 0.0, 0.0, 0.5]).unwrap();
        assert_spectrum_close(
            got,
            vec![
                Complex64::new(2.0, 0.0),
                Complex64::new(-3.0, 0.0),
                Complex64::new(0.5, 0.0),
            ],
            1e-12,
        );
    }

    #[test]
    fn rotation_block_gives_conjugate_pair() {
        let got = eigenvalues(2, &[0.0, -1.0, 1.0, 0.0]).unwrap();
        assert_spectrum_close(
            got,
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)],
            1e-12,
        );
    }

    #[test]
    fn cyclic_permutation_has_roots_of_unity() {
        // 4-cycle permutation matrix: eigenvalues are the 4th roots of unity.
        #[rustfmt::skip]
        let p = [
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 1.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
            1.0, 0.0, 0.0, 0.0,
        ];
        let got = eigenvalues(4, &p).unwrap();
        assert_spectrum_close(
            got,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, -1.0),
            ],
            1e-10,
        );
    }

    #[test]
    fn companion_matrix_agrees_with_root_finder() {
        // Real quartic with roots {-1, 2, -0.5 +/- 1.2i}; its companion
        // matrix must reproduce them. The coefficient expansion is an
        // independent construction, so this cross-checks both solvers.
        let roots = [
            Complex64::new(-1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(-0.5, 1.2),
            Complex64::new(-0.5, -1.2),
        ];
        let poly = crate::polynomial::ComplexPolynomial::from_roots(&roots).unwrap();
        let c = poly.coefficients();
        for k in c {
            assert!(k.im.abs() < 1e-12);
        }
        let n = 4;
        let mut m = vec![0.0; n * n];
        for j in 0..n {
            m[j] = -c[j + 1].re;
        }
        for i in 1..n {
            m[i * n + i - 1] = 1.0;
        }
        let got = eigenvalues(n, &m).unwrap();
        assert_spectrum_close(got, roots.to_vec(), 1e-9);
    }

    #[test]
    fn defective_matrix_eigenvalues_within_cluster_tolerance() {
        // Jordan block with eigenvalue 2 (algebraic multiplicity 3): QR can
        // only locate the cluster to about eps^(1/3).
        #[rustfmt::skip]
        let j = [
            2.0, 1.0, 0.0,
            0.0, 2.0, 1.0,
            0.0, 0.0, 2.0,
        ];
        let got = eigenvalues(3, &j).unwrap();
        for g in got {
            assert!((g - Complex64::new(2.0, 0.0)).norm() < 1e-4);
        }
    }
}
