//! Difference operators `sum a_m(v) T^m` in the shift variable `v` (either
//! `z` or `n`), with `T: f(v) -> f(v + 1)`: products, the forward-difference
//! basis `Delta = T - I`, and framed actions on the exponential and
//! `(1 + z)^n` wave frames.

use crate::error::Error;
use crate::multipoly::{MultiPoly, Var};
use crate::ratfunc::RatFunc;
use crate::scalar::GaussianRational;
use std::collections::BTreeMap;

fn binom(n: usize, k: usize) -> GaussianRational {
    if k > n {
        return GaussianRational::zero();
    }
    let mut acc = GaussianRational::one();
    for i in 0..k {
        acc = &acc * &GaussianRational::from_int((n - i) as i64);
        acc = &acc / &GaussianRational::from_int((i + 1) as i64);
    }
    acc
}

/// Difference operator in normal form; keys are shift exponents, values the
/// rational coefficients in the tagged variable.
#[derive(Clone, PartialEq, Debug)]
pub struct DifferenceOp {
    var: Var,
    coeffs: BTreeMap<usize, RatFunc>,
}

impl DifferenceOp {
    pub fn new(var: Var, terms: Vec<(usize, RatFunc)>) -> Result<Self, Error> {
        if var != Var::Z && var != Var::N {
            return Err(Error::VariableMismatch);
        }
        let mut coeffs = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            for v in c.used_vars() {
                if v != var {
                    return Err(Error::VariableMismatch);
                }
            }
            let e = coeffs.entry(m).or_insert_with(RatFunc::zero);
            *e = e.add(&c);
            if e.is_zero() {
                coeffs.remove(&m);
            }
        }
        Ok(DifferenceOp { var, coeffs })
    }

    pub fn zero(var: Var) -> Self {
        DifferenceOp {
            var,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(var: Var) -> Self {
        DifferenceOp::new(var, vec![(0, RatFunc::one())]).unwrap()
    }

    /// The bare shift.
    pub fn t(var: Var) -> Self {
        DifferenceOp::new(var, vec![(1, RatFunc::one())]).unwrap()
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeff(&self, m: usize) -> RatFunc {
        self.coeffs.get(&m).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &RatFunc)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> RatFunc {
        self.order().map(|m| self.coeff(m)).unwrap_or_else(RatFunc::zero)
    }

    pub fn add(&self, rhs: &DifferenceOp) -> DifferenceOp {
        assert_eq!(self.var, rhs.var);
        let mut out = self.clone();
        for (&m, c) in &rhs.coeffs {
            let e = out.coeffs.entry(m).or_insert_with(RatFunc::zero);
            *e = e.add(c);
            if e.is_zero() {
                out.coeffs.remove(&m);
            }
        }
        out
    }

    pub fn sub(&self, rhs: &DifferenceOp) -> DifferenceOp {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> DifferenceOp {
        DifferenceOp {
            var: self.var,
            coeffs: self.coeffs.iter().map(|(&m, c)| (m, c.neg())).collect(),
        }
    }

    /// Left multiplication by a coefficient function of the shift variable.
    pub fn mul_fn_left(&self, f: &RatFunc) -> DifferenceOp {
        if f.is_zero() {
            return DifferenceOp::zero(self.var);
        }
        DifferenceOp {
            var: self.var,
            coeffs: self.coeffs.iter().map(|(&m, c)| (m, c.mul(f))).collect(),
        }
    }

    /// Operator composition: `T^m o a(v) = a(v + m) T^m`.
    pub fn mul(&self, rhs: &DifferenceOp) -> DifferenceOp {
        assert_eq!(self.var, rhs.var);
        let mut out = DifferenceOp::zero(self.var);
        for (&m, a) in &self.coeffs {
            for (&l, b) in &rhs.coeffs {
                let shifted = b.shift_var(self.var, &GaussianRational::from_int(m as i64));
                let e = out.coeffs.entry(m + l).or_insert_with(RatFunc::zero);
                *e = e.add(&a.mul(&shifted));
                if e.is_zero() {
                    out.coeffs.remove(&(m + l));
                }
            }
        }
        out
    }

    /// Right composition with a coefficient function: `self o g`.
    pub fn mul_fn_right(&self, g: &RatFunc) -> DifferenceOp {
        let mut out = DifferenceOp::zero(self.var);
        for (&m, a) in &self.coeffs {
            let c = a.mul(&g.shift_var(self.var, &GaussianRational::from_int(m as i64)));
            if !c.is_zero() {
                out.coeffs.insert(m, c);
            }
        }
        out
    }

    /// Retag the shift variable, renaming every coefficient.
    pub fn rename(&self, var: Var) -> Result<DifferenceOp, Error> {
        if var != Var::Z && var != Var::N {
            return Err(Error::VariableMismatch);
        }
        Ok(DifferenceOp {
            var,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&m, c)| (m, c.rename_var(self.var, var)))
                .collect(),
        })
    }

    /// Apply on the exponential frame: for a function written as
    /// `e^{xz} rho(x, u, z)`, the shift in `z` sends `rho` to
    /// `u^{-1} rho|_{z -> z + 1}` because `e^{x(z+1)} = e^{xz} e^{x}`.
    pub fn apply_framed_exp(&self, rho: &RatFunc) -> Result<RatFunc, Error> {
        if self.var != Var::Z {
            return Err(Error::VariableMismatch);
        }
        let u_inv = RatFunc::from_poly(MultiPoly::var(Var::U)).inv()?;
        let mut acc = RatFunc::zero();
        for (&m, a) in &self.coeffs {
            let mut term = rho.shift_var(Var::Z, &GaussianRational::from_int(m as i64));
            for _ in 0..m {
                term = term.mul(&u_inv);
            }
            acc = acc.add(&a.mul(&term));
        }
        Ok(acc)
    }

    /// Apply on the discrete frame: for `(1 + z)^n sigma(n, z)`, the shift in
    /// `n` sends `sigma` to `(1 + z) sigma|_{n -> n + 1}`.
    pub fn apply_framed_discrete(&self, sigma: &RatFunc) -> Result<RatFunc, Error> {
        if self.var != Var::N {
            return Err(Error::VariableMismatch);
        }
        let opz = RatFunc::from_poly(MultiPoly::var(Var::Z).add(&MultiPoly::one()));
        let mut acc = RatFunc::zero();
        for (&m, a) in &self.coeffs {
            let mut term = sigma.shift_var(Var::N, &GaussianRational::from_int(m as i64));
            for _ in 0..m {
                term = term.mul(&opz);
            }
            acc = acc.add(&a.mul(&term));
        }
        Ok(acc)
    }

    /// Rewrite over the forward-difference basis: `T^m = sum_j C(m, j) Delta^j`.
    pub fn to_delta(&self) -> DeltaOp {
        let ord = self.order().unwrap_or(0);
        let mut coeffs = vec![RatFunc::zero(); ord + 1];
        for (&m, a) in &self.coeffs {
            for (j, c) in coeffs.iter_mut().enumerate().take(m + 1) {
                *c = c.add(&a.scalar_mul(&binom(m, j)));
            }
        }
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        DeltaOp {
            var: self.var,
            coeffs,
        }
    }
}

/// A difference operator over the basis `Delta^j` with `Delta = T - I`;
/// `coeffs[j]` multiplies `Delta^j` from the left.
#[derive(Clone, PartialEq, Debug)]
pub struct DeltaOp {
    var: Var,
    coeffs: Vec<RatFunc>,
}

impl DeltaOp {
    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn order(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading_coeff(&self) -> RatFunc {
        self.coeffs.last().cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    /// Back to the shift basis: `Delta^j = sum_m C(j, m) (-1)^{j-m} T^m`.
    pub fn to_shift(&self) -> DifferenceOp {
        let mut terms = Vec::new();
        for (j, b) in self.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for m in 0..=j {
                let mut c = b.scalar_mul(&binom(j, m));
                if (j - m) % 2 == 1 {
                    c = c.neg();
                }
                terms.push((m, c));
            }
        }
        DifferenceOp::new(self.var, terms).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn zf() -> RatFunc {
        RatFunc::from_poly(MultiPoly::var(Var::Z))
    }

    #[test]
    fn shift_commutation() {
        // T o z = (z + 1) T
        let tz = DifferenceOp::t(Var::Z).mul_fn_right(&zf());
        assert_eq!(tz.coeff(1), zf().add(&RatFunc::one()));
        // equivalently T o z == (z + 1) left-multiplied on T
        let lhs = DifferenceOp::t(Var::Z)
            .mul(&DifferenceOp::new(Var::Z, vec![(0, zf())]).unwrap());
        assert_eq!(lhs, tz);
    }

    fn sample(var: Var, seed: i64) -> DifferenceOp {
        let v = RatFunc::from_poly(MultiPoly::var(var));
        let a0 = v.mul(&v).add(&RatFunc::constant(g(seed)));
        let a1 = RatFunc::new(
            MultiPoly::one(),
            MultiPoly::var(var).add(&MultiPoly::constant(g(seed + 7))),
        )
        .unwrap();
        let a2 = v.scalar_mul(&g(seed - 1)).add(&RatFunc::one());
        DifferenceOp::new(var, vec![(0, a0), (1, a1), (2, a2)]).unwrap()
    }

    #[test]
    fn associativity() {
        let a = sample(Var::Z, 2);
        let b = sample(Var::Z, -3);
        let c = sample(Var::Z, 5);
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn rejects_foreign_variables() {
        let bad = RatFunc::from_poly(MultiPoly::var(Var::X));
        assert!(DifferenceOp::new(Var::Z, vec![(0, bad)]).is_err());
        assert!(DifferenceOp::new(Var::X, vec![(0, RatFunc::one())]).is_err());
    }

    #[test]
    fn delta_roundtrip() {
        let a = sample(Var::N, 4);
        assert_eq!(a.to_delta().to_shift(), a);
        // Delta itself
        let delta = DifferenceOp::t(Var::Z).sub(&DifferenceOp::one(Var::Z));
        let d = delta.to_delta();
        assert_eq!(d.order(), Some(1));
        assert!(d.coeffs()[0].is_zero());
        assert!(d.is_monic());
    }

    #[test]
    fn framed_exponential_action() {
        // T on rho = 1: u^{-1}
        let t = DifferenceOp::t(Var::Z);
        let res = t.apply_framed_exp(&RatFunc::one()).unwrap();
        assert_eq!(res, RatFunc::from_poly(MultiPoly::var(Var::U)).inv().unwrap());
        // a(z) T on rho = z: a(z) (z + 1) / u
        let a = zf();
        let op = DifferenceOp::new(Var::Z, vec![(1, a)]).unwrap();
        let res = op.apply_framed_exp(&zf()).unwrap();
        let expect = zf()
            .mul(&zf().add(&RatFunc::one()))
            .mul(&RatFunc::from_poly(MultiPoly::var(Var::U)).inv().unwrap());
        assert_eq!(res, expect);
        // composition is functorial on the frame
        let a = sample(Var::Z, 1);
        let b = sample(Var::Z, -2);
        let rho = RatFunc::new(
            MultiPoly::var(Var::U).add(&MultiPoly::var(Var::Z)),
            MultiPoly::var(Var::Z).add(&MultiPoly::constant(g(5))),
        )
        .unwrap();
        assert_eq!(
            a.mul(&b).apply_framed_exp(&rho).unwrap(),
            a.apply_framed_exp(&b.apply_framed_exp(&rho).unwrap()).unwrap()
        );
    }

    #[test]
    fn framed_discrete_action() {
        // T on sigma = 1: (1 + z)
        let t = DifferenceOp::t(Var::N);
        let res = t.apply_framed_discrete(&RatFunc::one()).unwrap();
        assert_eq!(
            res,
            RatFunc::from_poly(MultiPoly::var(Var::Z).add(&MultiPoly::one()))
        );
        // composition is functorial
        let a = sample(Var::N, 3);
        let b = sample(Var::N, -1);
        let sigma = RatFunc::new(
            MultiPoly::var(Var::N).mul(&MultiPoly::var(Var::Z)).add(&MultiPoly::one()),
            MultiPoly::var(Var::N).add(&MultiPoly::constant(g(4))),
        )
        .unwrap();
        assert_eq!(
            a.mul(&b).apply_framed_discrete(&sigma).unwrap(),
            a.apply_framed_discrete(&b.apply_framed_discrete(&sigma).unwrap())
                .unwrap()
        );
    }

    #[test]
    fn rename_variable() {
        let a = sample(Var::Z, 2);
        let b = a.rename(Var::N).unwrap();
        assert_eq!(b.var(), Var::N);
        assert_eq!(b.rename(Var::Z).unwrap(), a);
    }
}
