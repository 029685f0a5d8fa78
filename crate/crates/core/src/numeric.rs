//! Floating-point companion to the exact matrix-pair formulas: complex
//! matrix arithmetic, a scaling-and-squaring matrix exponential, tau-function
//! evaluations with truncated time vectors, and the numeric shift-property
//! check relating the two tau formulas.

use crate::cm::{CMPairRational, CMPairTrig};
use crate::error::Error;
use crate::matrix::Matrix;
use crate::scalar::GaussianRational;
use num::complex::Complex64;

/// Dense complex matrix, row major.
#[derive(Clone, Debug)]
pub struct CMat {
    pub n: usize,
    pub e: Vec<Complex64>,
}

impl CMat {
    pub fn zero(n: usize) -> Self {
        CMat {
            n,
            e: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zero(n);
        for i in 0..n {
            m.e[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_exact(m: &Matrix<GaussianRational>) -> Self {
        let n = m.rows;
        CMat {
            n,
            e: (0..n * n)
                .map(|k| m.at(k / n, k % n).to_complex64())
                .collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.e[i * self.n + j]
    }

    pub fn add(&self, rhs: &CMat) -> CMat {
        CMat {
            n: self.n,
            e: self.e.iter().zip(&rhs.e).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &CMat) -> CMat {
        CMat {
            n: self.n,
            e: self.e.iter().zip(&rhs.e).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> CMat {
        CMat {
            n: self.n,
            e: self.e.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        let n = self.n;
        let mut out = CMat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.e[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.e[i * n + j] += a * rhs.e[k * n + j];
                }
            }
        }
        out
    }

    pub fn frobenius(&self) -> f64 {
        self.e.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> Complex64 {
        let n = self.n;
        if n == 0 {
            return Complex64::new(1.0, 0.0);
        }
        let mut a = self.e.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let (pr, pv) = (col..n)
                .map(|i| (i, a[i * n + col].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if pv == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pr != col {
                for j in 0..n {
                    a.swap(col * n + j, pr * n + j);
                }
                det = -det;
            }
            let pivot = a[col * n + col];
            det *= pivot;
            for i in col + 1..n {
                let f = a[i * n + col] / pivot;
                for j in col..n {
                    let s = f * a[col * n + j];
                    a[i * n + j] -= s;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan with partial pivoting.
    pub fn inverse(&self) -> Result<CMat, Error> {
        let n = self.n;
        let mut a = self.e.clone();
        let mut inv = CMat::identity(n);
        for col in 0..n {
            let (pr, pv) = (col..n)
                .map(|i| (i, a[i * n + col].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if pv < 1e-300 {
                return Err(Error::SingularMatrix);
            }
            if pr != col {
                for j in 0..n {
                    a.swap(col * n + j, pr * n + j);
                    inv.e.swap(col * n + j, pr * n + j);
                }
            }
            let pivot = a[col * n + col];
            for j in 0..n {
                a[col * n + j] /= pivot;
                inv.e[col * n + j] /= pivot;
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a[i * n + col];
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let s = f * a[col * n + j];
                    a[i * n + j] -= s;
                    let s = f * inv.e[col * n + j];
                    inv.e[i * n + j] -= s;
                }
            }
        }
        Ok(inv)
    }

    /// Matrix exponential by scaling and squaring over a degree-20 Taylor
    /// sum; adequate at desk scale.
    pub fn expm(&self) -> CMat {
        let norm = self.frobenius();
        let s = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let scaled = self.scale(Complex64::new(1.0 / 2f64.powi(s as i32), 0.0));
        let mut sum = CMat::identity(self.n);
        let mut term = CMat::identity(self.n);
        for k in 1..=20 {
            term = term.mul(&scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
            sum = sum.add(&term);
        }
        for _ in 0..s {
            sum = sum.mul(&sum);
        }
        sum
    }

    /// Estimate of the spectral radius as the `p`-th root of `||A^p||`
    /// with `p = 2^12`, normalizing between squarings to avoid overflow.
    pub fn spectral_radius_estimate(&self) -> f64 {
        let k = 12u32;
        let mut b = self.clone();
        let mut log_norm_power = 0.0f64;
        let mut power = 1.0f64;
        for _ in 0..k {
            let norm = b.frobenius();
            if norm == 0.0 {
                return 0.0;
            }
            log_norm_power += norm.ln() * (1.0 / power);
            b = b.scale(Complex64::new(1.0 / norm, 0.0));
            b = b.mul(&b);
            power *= 2.0;
        }
        let norm = b.frobenius();
        if norm == 0.0 {
            return 0.0;
        }
        (log_norm_power + norm.ln() / power).exp()
    }
}

/// `sum_k k t_k M^{k-1}` for a truncated time vector.
fn time_sum(m: &CMat, t: &[Complex64]) -> CMat {
    let mut acc = CMat::zero(m.n);
    let mut power = CMat::identity(m.n); // M^{k-1}
    for (k, tk) in t.iter().enumerate() {
        if k > 0 {
            power = power.mul(m);
        }
        acc = acc.add(&power.scale(*tk * Complex64::new((k + 1) as f64, 0.0)));
    }
    acc
}

/// Tau of a rational pair at a truncated time vector:
/// `det(Xt - sum k t_k Zt^{k-1})`.
pub fn tau_rational(p: &CMPairRational, t: &[Complex64]) -> Complex64 {
    let xt = CMat::from_exact(&p.xt);
    let zt = CMat::from_exact(&p.zt);
    xt.sub(&time_sum(&zt, t)).det()
}

/// Tau of a rational pair with the discrete slot:
/// `det(Xt - sum k t_k Zt^{k-1} - n (I + Zt)^{-1})`.
pub fn tau_discrete(p: &CMPairRational, t: &[Complex64], n: Complex64) -> Result<Complex64, Error> {
    let xt = CMat::from_exact(&p.xt);
    let zt = CMat::from_exact(&p.zt);
    let shift = CMat::identity(p.n).add(&zt).inverse()?.scale(n);
    Ok(xt.sub(&time_sum(&zt, t)).sub(&shift).det())
}

/// Tau of a trigonometric pair at a truncated time vector:
/// `det(I - X exp(sum t_k ((Z-I)^k - Z^k)))`.
pub fn tau_trig(p: &CMPairTrig, t: &[Complex64]) -> Complex64 {
    let x = CMat::from_exact(&p.x);
    let z = CMat::from_exact(&p.z);
    let zm1 = z.sub(&CMat::identity(p.n));
    let mut arg = CMat::zero(p.n);
    let mut pz = CMat::identity(p.n);
    let mut pzm = CMat::identity(p.n);
    for tk in t {
        pz = pz.mul(&z);
        pzm = pzm.mul(&zm1);
        arg = arg.add(&pzm.sub(&pz).scale(*tk));
    }
    CMat::identity(p.n).sub(&x.mul(&arg.expm())).det()
}

/// Numeric agreement of the two tau formulas under the alternating time
/// shift `t_k + (-1)^{k+1} n / k`, truncated at `kmax`. Requires the
/// spectral radius of `Zt` below 1 so the truncation converges; otherwise
/// errors, advising the exact closed-form path.
pub fn verify_shift_property(
    p: &CMPairRational,
    n: i64,
    t: &[Complex64],
    kmax: usize,
    tol: f64,
) -> Result<bool, Error> {
    let zt = CMat::from_exact(&p.zt);
    if p.n > 0 && zt.spectral_radius_estimate() >= 1.0 {
        return Err(Error::Invalid(
            "spectral radius at least 1: truncated shift diverges, use the exact closed form"
                .into(),
        ));
    }
    let nn = Complex64::new(n as f64, 0.0);
    // all given times survive; the alternating shift itself is truncated
    let len = kmax.max(t.len());
    let mut shifted: Vec<Complex64> = Vec::with_capacity(len);
    for k in 1..=len {
        let base = t.get(k - 1).copied().unwrap_or(Complex64::new(0.0, 0.0));
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let shift = if k <= kmax {
            nn * Complex64::new(sign / k as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        shifted.push(base + shift);
    }
    let lhs = tau_rational(p, &shifted);
    let rhs = tau_discrete(p, t, nn)?;
    Ok((lhs - rhs).norm() < tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::Var;
    use std::collections::BTreeMap;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }
    fn gr(p: i64, q: i64) -> GaussianRational {
        GaussianRational::from_ratio(p, q)
    }

    #[test]
    fn det_and_inverse() {
        let m = CMat {
            n: 2,
            e: vec![c(1.0), c(2.0), c(3.0), c(4.0)],
        };
        assert!((m.det() - c(-2.0)).norm() < 1e-12);
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv);
        assert!(prod.sub(&CMat::identity(2)).frobenius() < 1e-12);
    }

    #[test]
    fn expm_diagonal() {
        let m = CMat {
            n: 2,
            e: vec![c(1.0), c(0.0), c(0.0), c(-2.0)],
        };
        let e = m.expm();
        assert!((e.at(0, 0) - c(1f64.exp())).norm() < 1e-9);
        assert!((e.at(1, 1) - c((-2f64).exp())).norm() < 1e-9);
        assert!(e.at(0, 1).norm() < 1e-12);
    }

    #[test]
    fn spectral_radius() {
        let m = CMat {
            n: 2,
            e: vec![c(0.5), c(10.0), c(0.0), c(0.25)],
        };
        let r = m.spectral_radius_estimate();
        assert!((r - 0.5).abs() < 0.05, "estimate {r}");
        let contraction = CMat {
            n: 2,
            e: vec![c(0.1), c(0.2), c(0.0), c(0.3)],
        };
        assert!(contraction.spectral_radius_estimate() < 1.0);
    }

    #[test]
    fn tau_values_at_zero_times() {
        let p = CMPairRational::new(
            Matrix::new(1, 1, vec![g(3)]),
            Matrix::new(1, 1, vec![gr(1, 2)]),
        )
        .unwrap();
        assert!((tau_rational(&p, &[]) - c(3.0)).norm() < 1e-12);
        assert!((tau_discrete(&p, &[], c(0.0)).unwrap() - c(3.0)).norm() < 1e-12);
    }

    #[test]
    fn stationary_tau_matches_exponential_formula() {
        // exact det(I - uX) against the float evaluation at t = (x, 0, ...)
        let pair = crate::cm::CMPairTrig::new(
            Matrix::new(1, 1, vec![g(3)]),
            Matrix::new(1, 1, vec![gr(1, 2)]),
        )
        .unwrap();
        let exact = crate::cm::tau_stationary(&pair);
        for x in [0.3, -0.7, 1.9] {
            let float = tau_trig(&pair, &[c(x)]);
            let u = (-x).exp();
            let mut assign = BTreeMap::new();
            assign.insert(Var::U, Complex64::new(u, 0.0));
            let want = exact.eval_c64(&assign).unwrap();
            assert!((float - want).norm() < 1e-9, "x = {x}");
        }
    }

    #[test]
    fn shift_property_scalar() {
        // z0 = 1/2, x0 = 3: geometric resummation n sum (-z0)^{k-1} = n/(1+z0)
        let p = CMPairRational::new(
            Matrix::new(1, 1, vec![g(3)]),
            Matrix::new(1, 1, vec![gr(1, 2)]),
        )
        .unwrap();
        assert!(verify_shift_property(&p, 2, &[], 60, 1e-9).unwrap());
        // n = 0 agrees regardless of truncation
        assert!(verify_shift_property(&p, 0, &[], 1, 1e-12).unwrap());
        // divergent spectral radius rejected
        let q = CMPairRational::new(
            Matrix::new(1, 1, vec![g(3)]),
            Matrix::new(1, 1, vec![g(2)]),
        )
        .unwrap();
        assert!(verify_shift_property(&q, 1, &[], 60, 1e-9).is_err());
    }
}
