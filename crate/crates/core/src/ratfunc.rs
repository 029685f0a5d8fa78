//! Reduced rational functions: quotients of multivariate polynomials kept in
//! lowest terms with a monic denominator.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::gcd::poly_gcd;
use crate::multipoly::{MultiPoly, Var};
use crate::ring::{Field, Ring};
use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Build and reduce. The gcd of numerator and denominator is divided out
    /// and the denominator is normalized to leading coefficient 1.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num: MultiPoly::zero(),
                den: MultiPoly::one(),
            });
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.try_div(&g).unwrap();
        let mut den = den.try_div(&g).unwrap();
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            num = num.scalar_mul(&inv);
            den = den.scalar_mul(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(MultiPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(&self.num.as_constant()? / &self.den.as_constant()?)
        } else {
            None
        }
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.num.uses_var(v) || self.den.uses_var(v)
    }

    pub fn used_vars(&self) -> Vec<Var> {
        Var::ALL
            .iter()
            .copied()
            .filter(|&v| self.uses_var(v))
            .collect()
    }

    /// Addition keeping operands reduced: with coprime stored fractions the
    /// only possible cancellations are against `gcd(den, den')`, so the gcd
    /// work stays on small operands instead of the full cross-product.
    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let g = poly_gcd(&self.den, &rhs.den);
        if g.is_constant() {
            // coprime denominators: the sum is already in lowest terms
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            if num.is_zero() {
                return RatFunc::zero();
            }
            return RatFunc {
                num,
                den: self.den.mul(&rhs.den),
            };
        }
        let d1 = self.den.try_div(&g).unwrap();
        let d2 = rhs.den.try_div(&g).unwrap();
        let t = self.num.mul(&d2).add(&rhs.num.mul(&d1));
        if t.is_zero() {
            return RatFunc::zero();
        }
        // any factor shared with the lcm denominator must divide g
        let h = poly_gcd(&t, &g);
        if h.is_constant() {
            return RatFunc {
                num: t,
                den: d1.mul(&rhs.den),
            };
        }
        RatFunc {
            num: t.try_div(&h).unwrap(),
            den: d1.mul(&rhs.den.try_div(&h).unwrap()),
        }
    }

    pub fn sub(&self, rhs: &RatFunc) -> RatFunc {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Multiplication with cross-cancellation before the products are formed.
    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let num = self
            .num
            .try_div(&g1)
            .unwrap()
            .mul(&rhs.num.try_div(&g2).unwrap());
        let den = self
            .den
            .try_div(&g2)
            .unwrap()
            .mul(&rhs.den.try_div(&g1).unwrap());
        // stored fractions are reduced, so the cross gcds remove everything;
        // both gcds are monic, keeping the denominator monic
        RatFunc { num, den }
    }

    pub fn scalar_mul(&self, c: &GaussianRational) -> RatFunc {
        RatFunc {
            num: self.num.scalar_mul(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc, Error> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, e: usize) -> RatFunc {
        let mut out = RatFunc::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to one variable (quotient rule).
    pub fn derivative(&self, v: Var) -> RatFunc {
        let n = self
            .num
            .derivative(v)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative(v)));
        RatFunc::new(n, self.den.mul(&self.den)).unwrap()
    }

    /// Substitute a rational function for a variable.
    pub fn substitute(&self, v: Var, r: &RatFunc) -> Result<RatFunc, Error> {
        let sub_poly = |p: &MultiPoly| -> (MultiPoly, MultiPoly) {
            // p with v -> rn/rd, returned as (numerator, rd^deg)
            let coeffs = p.coeffs_in(v);
            let deg = coeffs.len() - 1;
            let mut acc = MultiPoly::zero();
            let mut rn_pow = MultiPoly::one();
            // precompute rd^(deg - i)
            let mut rd_pows = vec![MultiPoly::one(); deg + 1];
            for i in (0..deg).rev() {
                rd_pows[i] = rd_pows[i + 1].mul(&r.den);
            }
            for (i, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&c.mul(&rn_pow).mul(&rd_pows[i]));
                }
                if i < deg {
                    rn_pow = rn_pow.mul(&r.num);
                }
            }
            (acc, r.den.pow(deg))
        };
        if !self.uses_var(v) {
            return Ok(self.clone());
        }
        let (nn, nd) = sub_poly(&self.num);
        let (dn, dd) = sub_poly(&self.den);
        if dn.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RatFunc::new(nn.mul(&dd), dn.mul(&nd))
    }

    pub fn rename_var(&self, from: Var, to: Var) -> RatFunc {
        if from == to || !self.uses_var(from) {
            return self.clone();
        }
        self.substitute(from, &RatFunc::var(to)).unwrap()
    }

    pub fn shift_var(&self, v: Var, k: &GaussianRational) -> RatFunc {
        RatFunc::new(self.num.shift_var(v, k), self.den.shift_var(v, k)).unwrap()
    }

    /// Substitute a scalar for one variable, keeping the rest symbolic.
    pub fn eval_var(&self, v: Var, val: &GaussianRational) -> Result<RatFunc, Error> {
        let d = self.den.eval_var(v, val);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        RatFunc::new(self.num.eval_var(v, val), d)
    }

    /// Exact full evaluation; a vanishing denominator is reported as a pole.
    pub fn eval(&self, assign: &BTreeMap<Var, GaussianRational>) -> Result<GaussianRational, Error> {
        let d = self.den.eval(assign)?;
        if d.is_zero() {
            return Err(Error::Pole);
        }
        let n = self.num.eval(assign)?;
        Ok(&n / &d)
    }

    pub fn eval_c64(
        &self,
        assign: &BTreeMap<Var, num::complex::Complex64>,
    ) -> Result<num::complex::Complex64, Error> {
        let d = self.den.eval_c64(assign)?;
        if d.norm() == 0.0 {
            return Err(Error::Pole);
        }
        Ok(self.num.eval_c64(assign)? / d)
    }

    /// Coefficient of `v^{-1}` in the expansion in descending powers of `v`.
    /// The function must be univariate in `v`.
    pub fn residue_at_infinity(&self, v: Var) -> Result<GaussianRational, Error> {
        if !self.num.is_univariate_in(v) || !self.den.is_univariate_in(v) {
            return Err(Error::NonUnivariate(v.name()));
        }
        let num = crate::unipoly::UniPoly::from_multipoly(&self.num, v)?;
        let den = crate::unipoly::UniPoly::from_multipoly(&self.den, v)?;
        // polynomial part contributes nothing; for the proper part r/den the
        // z^{-1} coefficient is coeff(r, deg den - 1) / lc(den)
        let (_, r) = num.div_rem(&den)?;
        let d = den.degree().unwrap();
        if d == 0 {
            return Ok(GaussianRational::zero());
        }
        Ok(&r.coeff(d - 1) / &den.leading_coeff())
    }

    /// Degrees of numerator and denominator in `v`.
    pub fn degrees_in(&self, v: Var) -> (Option<u32>, Option<u32>) {
        (self.num.degree(v), self.den.degree(v))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.as_constant().map(|c| c.is_one()).unwrap_or(false) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        RatFunc::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        RatFunc::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFunc::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn u() -> MultiPoly {
        MultiPoly::var(Var::U)
    }
    fn z() -> MultiPoly {
        MultiPoly::var(Var::Z)
    }

    #[test]
    fn reduction() {
        // (x^2 - u^2)/(x - u) -> (x + u)/1
        let r = RatFunc::new(x().mul(&x()).sub(&u().mul(&u())), x().sub(&u())).unwrap();
        assert_eq!(r, RatFunc::from_poly(x().add(&u())));
        // 0/p -> 0/1
        let z0 = RatFunc::new(MultiPoly::zero(), x()).unwrap();
        assert_eq!(z0, RatFunc::zero());
        assert!(RatFunc::new(x(), MultiPoly::zero()).is_err());
    }

    #[test]
    fn cross_multiplied_reduction() {
        // (p q)/(p r) reduces with gcd(q', r') = 1: cross-check q'*(p r) = r'*(p q)
        let p = x().add(&u());
        let q = x().mul(&x()).add(&MultiPoly::one());
        let r0 = u().sub(&x());
        let rf = RatFunc::new(p.mul(&q), p.mul(&r0)).unwrap();
        let lhs = rf.num().mul(&p.mul(&r0));
        let rhs = rf.den().mul(&p.mul(&q));
        assert_eq!(lhs, rhs);
        assert_eq!(poly_gcd(rf.num(), rf.den()), MultiPoly::one());
    }

    #[test]
    fn residue_at_infinity_cases() {
        let a = MultiPoly::constant(GaussianRational::from_int(5));
        // 1/(z - a) -> 1
        let r = RatFunc::new(MultiPoly::one(), z().sub(&a)).unwrap();
        assert_eq!(
            r.residue_at_infinity(Var::Z).unwrap(),
            GaussianRational::one()
        );
        // polynomials -> 0
        let p = RatFunc::from_poly(z().mul(&z()).add(&z()));
        assert_eq!(
            p.residue_at_infinity(Var::Z).unwrap(),
            GaussianRational::zero()
        );
        // z/((z-a)(z-b)) -> 1 (partial fractions: a/(a-b) + b/(b-a))
        let b = MultiPoly::constant(GaussianRational::from_int(-2));
        let r2 = RatFunc::new(z(), z().sub(&a).mul(&z().sub(&b))).unwrap();
        assert_eq!(
            r2.residue_at_infinity(Var::Z).unwrap(),
            GaussianRational::one()
        );
        assert!(RatFunc::var(Var::X)
            .residue_at_infinity(Var::Z)
            .is_err());
    }

    #[test]
    fn residue_of_derivative_vanishes() {
        let a = MultiPoly::constant(GaussianRational::from_ratio(3, 2));
        let r = RatFunc::new(
            z().add(&MultiPoly::one()),
            z().sub(&a).mul(&z().add(&a)),
        )
        .unwrap();
        let d = r.derivative(Var::Z);
        assert_eq!(
            d.residue_at_infinity(Var::Z).unwrap(),
            GaussianRational::zero()
        );
    }

    #[test]
    fn evaluation_and_poles() {
        let r = RatFunc::new(x().add(&u()), MultiPoly::one()).unwrap();
        let mut m = BTreeMap::new();
        m.insert(Var::X, GaussianRational::from_int(1));
        m.insert(Var::U, GaussianRational::from_int(2));
        assert_eq!(r.eval(&m).unwrap(), GaussianRational::from_int(3));
        let pole = RatFunc::new(MultiPoly::one(), x().sub(&MultiPoly::one())).unwrap();
        assert_eq!(pole.eval(&m), Err(Error::Pole));
    }

    #[test]
    fn substitute_inverse_variable() {
        // u -> 1/w on 1/(1 - a u) gives w/(w - a)
        let a = MultiPoly::constant(GaussianRational::from_int(3));
        let r = RatFunc::new(MultiPoly::one(), MultiPoly::one().sub(&a.mul(&u()))).unwrap();
        let winv = RatFunc::new(MultiPoly::one(), MultiPoly::var(Var::W)).unwrap();
        let s = r.substitute(Var::U, &winv).unwrap();
        let expect = RatFunc::new(MultiPoly::var(Var::W), MultiPoly::var(Var::W).sub(&a)).unwrap();
        assert_eq!(s, expect);
    }
}
