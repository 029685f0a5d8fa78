//! Dense univariate polynomials over Gaussian rationals. The indeterminate
//! is contextual (z, w, x or the symbol of a constant-coefficient operator).

use std::fmt;

use crate::error::Error;
use crate::gcd::poly_gcd;
use crate::multipoly::{MultiPoly, Var};
use crate::scalar::GaussianRational;

/// Coefficients ascending by power; invariant: no trailing zero coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    pub coeffs: Vec<GaussianRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial `t`.
    pub fn ident() -> Self {
        UniPoly::new(vec![GaussianRational::zero(), GaussianRational::one()])
    }

    /// `t - root`.
    pub fn linear(root: &GaussianRational) -> Self {
        UniPoly::new(vec![-root, GaussianRational::one()])
    }

    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a GaussianRational>) -> Self {
        let mut p = UniPoly::one();
        for r in roots {
            p = p.mul(&UniPoly::linear(r));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading_coeff(&self) -> GaussianRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    pub fn monic(&self) -> UniPoly {
        let lc = self.leading_coeff();
        if lc.is_zero() || lc.is_one() {
            self.clone()
        } else {
            self.scalar_mul(&lc.inv().unwrap())
        }
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(&self.coeff(i) + &rhs.coeff(i));
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out =
            vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }

    pub fn scalar_mul(&self, c: &GaussianRational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut out = UniPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Euclidean division; divisor must be nonzero.
    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly), Error> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.degree().unwrap();
        let lc_inv = d.leading_coeff().inv().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![
            GaussianRational::zero();
            self.coeffs.len().saturating_sub(d.coeffs.len()) + 1
        ];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let c = &rem.leading_coeff() * &lc_inv;
            let k = dr - dd;
            quot[k] = &quot[k] + &c;
            let mut shifted = vec![GaussianRational::zero(); k];
            shifted.extend(d.coeffs.iter().map(|a| a * &c));
            rem = rem.sub(&UniPoly::new(shifted));
        }
        Ok((UniPoly::new(quot), rem))
    }

    /// Exact division; error if a nonzero remainder appears.
    pub fn div_exact(&self, d: &UniPoly) -> Result<UniPoly, Error> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Inconsistent("non-exact univariate division".into()));
        }
        Ok(q)
    }

    pub fn gcd(&self, rhs: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let g = self.gcd(rhs);
        self.mul(rhs).div_exact(&g).unwrap().monic()
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * &GaussianRational::from_int(i as i64 + 1))
                .collect(),
        )
    }

    pub fn eval(&self, t: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    pub fn eval_c64(&self, t: num::complex::Complex64) -> num::complex::Complex64 {
        let mut acc = num::complex::Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c.to_complex64();
        }
        acc
    }

    pub fn to_multipoly(&self, v: Var) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(crate::multipoly::Monomial::var(v, i as u16), c.clone());
        }
        p
    }

    pub fn from_multipoly(p: &MultiPoly, v: Var) -> Result<UniPoly, Error> {
        Ok(UniPoly::new(p.to_univariate(v)?))
    }

    /// Compose with a shift: `p(t + k)`.
    pub fn shift(&self, k: &GaussianRational) -> UniPoly {
        let m = self.to_multipoly(Var::S).shift_var(Var::S, k);
        UniPoly::from_multipoly(&m, Var::S).unwrap()
    }
}

/// Monic gcd helper exposed for coefficient denominators in `w`.
pub fn multipoly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    poly_gcd(a, b)
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_and_division() {
        let a = GaussianRational::from_int(2);
        let b = GaussianRational::from_ratio(1, 3);
        let p = UniPoly::from_roots([&a, &b]);
        assert_eq!(p.degree(), Some(2));
        assert!(p.eval(&a).is_zero());
        let q = p.div_exact(&UniPoly::linear(&a)).unwrap();
        assert_eq!(q, UniPoly::linear(&b));
    }

    #[test]
    fn gcd_lcm() {
        let a = GaussianRational::from_int(1);
        let b = GaussianRational::from_int(2);
        let c = GaussianRational::from_int(3);
        let p = UniPoly::from_roots([&a, &b]);
        let q = UniPoly::from_roots([&b, &c]);
        assert_eq!(p.gcd(&q), UniPoly::linear(&b));
        assert_eq!(p.lcm(&q), UniPoly::from_roots([&a, &b, &c]));
    }

    #[test]
    fn shift_composition() {
        // (t-1)(t-2) shifted by 1 -> t(t-1)
        let one = GaussianRational::one();
        let two = GaussianRational::from_int(2);
        let p = UniPoly::from_roots([&one, &two]);
        let s = p.shift(&one);
        assert_eq!(s, UniPoly::from_roots([&GaussianRational::zero(), &one]));
    }
}
