//! Differential operators `sum a_k(x, u) D^k` in normal form (coefficients
//! left of the derivations), over the derivation `D(x) = 1`, `D(u) = -u`
//! for `u = e^{-x}`: products, adjoints, Euclidean right division,
//! annihilators of quasi-polynomial bases and framed application to
//! `e^{xz}`-shaped functions.

use crate::error::Error;
use crate::gcd::poly_gcd;
use crate::matrix::Matrix;
use crate::multipoly::{MultiPoly, Var};
use crate::quasipoly::QuasiPoly;
use crate::ratfunc::RatFunc;
use crate::unipoly::UniPoly;

/// The coefficient derivation `d/dx` acting on rational functions of `(x, u)`
/// with `u = e^{-x}`.
pub fn derivation_poly(p: &MultiPoly) -> MultiPoly {
    p.derivative(Var::X)
        .sub(&MultiPoly::var(Var::U).mul(&p.derivative(Var::U)))
}

pub fn derivation(r: &RatFunc) -> RatFunc {
    let n = derivation_poly(r.num())
        .mul(r.den())
        .sub(&r.num().mul(&derivation_poly(r.den())));
    RatFunc::new(n, r.den().mul(r.den())).unwrap()
}

/// Normal-form differential operator; `coeffs[k]` is the coefficient of the
/// k-th derivative, and the top coefficient is nonzero unless the operator
/// is zero.
#[derive(Clone, PartialEq, Debug)]
pub struct DiffOp {
    coeffs: Vec<RatFunc>,
}

impl DiffOp {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    pub fn zero() -> Self {
        DiffOp { coeffs: vec![] }
    }

    pub fn one() -> Self {
        DiffOp {
            coeffs: vec![RatFunc::one()],
        }
    }

    /// The bare derivation.
    pub fn d() -> Self {
        DiffOp {
            coeffs: vec![RatFunc::zero(), RatFunc::one()],
        }
    }

    pub fn from_ratfunc(r: RatFunc) -> Self {
        DiffOp::new(vec![r])
    }

    /// Constant-coefficient operator from a univariate symbol polynomial.
    pub fn from_const_poly(h: &UniPoly) -> Self {
        DiffOp::new(h.coeffs.iter().map(|c| RatFunc::constant(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RatFunc {
        self.coeffs.get(k).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
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

    /// Divide out the leading coefficient from the left.
    pub fn make_monic(&self) -> Result<DiffOp, Error> {
        let lc = self.leading_coeff();
        if lc.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = lc.inv()?;
        Ok(self.mul_fn_left(&inv))
    }

    pub fn add(&self, rhs: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DiffOp::new((0..n).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect())
    }

    pub fn sub(&self, rhs: &DiffOp) -> DiffOp {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> DiffOp {
        DiffOp {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Left multiplication by a coefficient function.
    pub fn mul_fn_left(&self, f: &RatFunc) -> DiffOp {
        DiffOp::new(self.coeffs.iter().map(|c| c.mul(f)).collect())
    }

    /// `D o self` in normal form: `D o a = a D + D(a)`.
    fn derive_compose(&self) -> DiffOp {
        let mut out = vec![RatFunc::zero(); self.coeffs.len() + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            out[k + 1] = out[k + 1].add(a);
            out[k] = out[k].add(&derivation(a));
        }
        DiffOp::new(out)
    }

    /// Operator composition `self o rhs`, normal form.
    pub fn mul(&self, rhs: &DiffOp) -> DiffOp {
        let mut power = rhs.clone(); // D^k o rhs, starting at k = 0
        let mut acc = DiffOp::zero();
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                power = power.derive_compose();
            }
            if !a.is_zero() {
                acc = acc.add(&power.mul_fn_left(a));
            }
        }
        acc
    }

    /// Euclidean right division: `self = q o rhs + r` with `ord r < ord rhs`.
    /// The divisor must be monic.
    pub fn right_divide(&self, rhs: &DiffOp) -> Result<(DiffOp, DiffOp), Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !rhs.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        let db = rhs.order().unwrap();
        let mut rem = self.clone();
        let mut quot = DiffOp::zero();
        while let Some(dr) = rem.order() {
            if dr < db {
                break;
            }
            let c = rem.leading_coeff();
            let mut mono = vec![RatFunc::zero(); dr - db + 1];
            mono[dr - db] = c;
            let mono = DiffOp::new(mono);
            quot = quot.add(&mono);
            rem = rem.sub(&mono.mul(rhs));
        }
        Ok((quot, rem))
    }

    /// Formal adjoint: `(a D)^* = -D o a`, extended multiplicatively.
    pub fn adjoint(&self) -> DiffOp {
        let mut acc = DiffOp::zero();
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            // (a D^k)^* = (-1)^k D^k o a
            let mut term = DiffOp::from_ratfunc(a.clone());
            for _ in 0..k {
                term = term.derive_compose();
            }
            if k % 2 == 1 {
                term = term.neg();
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// The symbol on the exponential frame: `e^{-xz} (self e^{xz})`, i.e.
    /// `sum a_k(x, u) z^k`.
    pub fn apply_to_exp(&self) -> RatFunc {
        let z = RatFunc::var(Var::Z);
        let mut acc = RatFunc::zero();
        let mut zp = RatFunc::one();
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                zp = zp.mul(&z);
            }
            acc = acc.add(&a.mul(&zp));
        }
        acc
    }

    /// Same on the `e^{-xz}` frame: `sum a_k(x, u) (-z)^k`.
    pub fn apply_to_exp_neg(&self) -> RatFunc {
        let z = RatFunc::var(Var::Z).neg();
        let mut acc = RatFunc::zero();
        let mut zp = RatFunc::one();
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                zp = zp.mul(&z);
            }
            acc = acc.add(&a.mul(&zp));
        }
        acc
    }

    /// Apply to `e^{xz} rho`: the derivation acts as `D + z` on the reduced
    /// function.
    pub fn apply_framed(&self, rho: &RatFunc) -> RatFunc {
        let z = RatFunc::var(Var::Z);
        let mut acc = RatFunc::zero();
        let mut cur = rho.clone(); // (D + z)^k rho
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                cur = derivation(&cur).add(&z.mul(&cur));
            }
            acc = acc.add(&a.mul(&cur));
        }
        acc
    }

    /// Apply to `e^{-xz} rho`: the derivation acts as `D - z`.
    pub fn apply_framed_neg(&self, rho: &RatFunc) -> RatFunc {
        let z = RatFunc::var(Var::Z);
        let mut acc = RatFunc::zero();
        let mut cur = rho.clone();
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                cur = derivation(&cur).sub(&z.mul(&cur));
            }
            acc = acc.add(&a.mul(&cur));
        }
        acc
    }

    /// Least common denominator of the coefficients as a polynomial in
    /// `(x, u)`.
    pub fn common_denominator(&self) -> MultiPoly {
        let mut lcd = MultiPoly::one();
        for c in &self.coeffs {
            let g = poly_gcd(&lcd, c.den());
            lcd = lcd.mul(&c.den().try_div(&g).unwrap());
        }
        lcd
    }

    /// Apply to a quasi-polynomial after clearing denominators; returns
    /// `lcd * self(phi)` which vanishes exactly when `self(phi)` does.
    pub fn apply_cleared(&self, phi: &QuasiPoly) -> Result<QuasiPoly, Error> {
        let lcd = self.common_denominator();
        let mut acc = QuasiPoly::zero();
        let mut d = phi.clone();
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                d = d.derivative();
            }
            if a.is_zero() {
                continue;
            }
            let cleared = lcd
                .mul(a.num())
                .try_div(a.den())
                .expect("lcd clears every coefficient denominator");
            acc = acc.add(&d.mul_xu_poly(&cleared)?);
        }
        Ok(acc)
    }

    /// True when no coefficient involves `x` (the trigonometric shape).
    pub fn is_x_free(&self) -> bool {
        self.coeffs.iter().all(|c| !c.uses_var(Var::X))
    }

    /// Convert to right-normal form `sum D^k o b_k`: returns the `b_k`.
    pub fn right_coeffs(&self) -> Vec<RatFunc> {
        // a_k = sum_{j>=k} C(j, k) D^{j-k}(b_j)  inverted top-down:
        // b_K = a_K, then peel.
        let mut rem = self.clone();
        let ord = match self.order() {
            Some(o) => o,
            None => return vec![],
        };
        let mut out = vec![RatFunc::zero(); ord + 1];
        for k in (0..=ord).rev() {
            let b = rem.coeff(k);
            out[k] = b.clone();
            if b.is_zero() {
                continue;
            }
            // subtract D^k o b in normal form
            let mut term = DiffOp::from_ratfunc(b);
            for _ in 0..k {
                term = term.derive_compose();
            }
            rem = rem.sub(&term);
        }
        debug_assert!(rem.is_zero());
        out
    }

    /// Rebuild from right-normal coefficients.
    pub fn from_right_coeffs(bs: &[RatFunc]) -> DiffOp {
        let mut acc = DiffOp::zero();
        for (k, b) in bs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let mut term = DiffOp::from_ratfunc(b.clone());
            for _ in 0..k {
                term = term.derive_compose();
            }
            acc = acc.add(&term);
        }
        acc
    }
}

/// The monic annihilator of a linearly independent quasi-polynomial basis,
/// via the Wronskian quotient. Each column factors off its base exponential,
/// so the minors live in the `(x, u)` polynomial ring and the exponentials
/// cancel between numerator and denominator.
pub fn annihilator(basis: &[QuasiPoly]) -> Result<DiffOp, Error> {
    let k = basis.len();
    if k == 0 {
        return Ok(DiffOp::one());
    }
    // derivative table: rows 0..=k, columns the basis
    let mut rows: Vec<Vec<QuasiPoly>> = vec![basis.to_vec()];
    for i in 1..=k {
        rows.push(rows[i - 1].iter().map(|f| f.derivative()).collect());
    }
    // factored columns
    let mut cols: Vec<Vec<MultiPoly>> = Vec::with_capacity(k);
    for j in 0..k {
        if basis[j].is_zero() {
            return Err(Error::DependentBasis);
        }
        let (mu, _) = basis[j].factor_base_exponent()?;
        let mut col = Vec::with_capacity(k + 1);
        for row in rows.iter() {
            let (_, p) = row[j].factor_with_exponent(&mu)?;
            col.push(p);
        }
        cols.push(col);
    }
    let minor = |skip_row: usize| -> Result<MultiPoly, Error> {
        let m = Matrix::from_fn(k, k, |i, j| {
            let r = if i < skip_row { i } else { i + 1 };
            cols[j][r].clone()
        });
        m.det_bareiss()
    };
    let w = minor(k)?; // rows 0..k-1
    if w.is_zero() {
        return Err(Error::DependentBasis);
    }
    let mut coeffs = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let mi = minor(i)?;
        let mut c = RatFunc::new(mi, w.clone())?;
        if (i + k) % 2 == 1 {
            c = c.neg();
        }
        coeffs.push(c);
    }
    Ok(DiffOp::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    fn rf_u() -> RatFunc {
        RatFunc::var(Var::U)
    }
    fn rf_x() -> RatFunc {
        RatFunc::var(Var::X)
    }
    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn d_compose_u_and_x() {
        // D o u = u D - u
        let du = DiffOp::d().mul(&DiffOp::from_ratfunc(rf_u()));
        assert_eq!(du.coeff(1), rf_u());
        assert_eq!(du.coeff(0), rf_u().neg());
        // D o x = x D + 1
        let dx = DiffOp::d().mul(&DiffOp::from_ratfunc(rf_x()));
        assert_eq!(dx.coeff(1), rf_x());
        assert_eq!(dx.coeff(0), RatFunc::one());
    }

    fn sample_op(seed: i64) -> DiffOp {
        // deterministic order-2 operator with mixed coefficients
        let a0 = RatFunc::new(
            MultiPoly::var(Var::X).scalar_mul(&g(seed)).add(&MultiPoly::one()),
            MultiPoly::var(Var::U).add(&MultiPoly::constant(g(2))),
        )
        .unwrap();
        let a1 = RatFunc::from_poly(
            MultiPoly::var(Var::U)
                .mul(&MultiPoly::var(Var::X))
                .add(&MultiPoly::constant(g(seed + 1))),
        );
        let a2 = RatFunc::from_poly(MultiPoly::var(Var::U).add(&MultiPoly::constant(g(1))));
        DiffOp::new(vec![a0, a1, a2])
    }

    #[test]
    fn associativity() {
        let a = sample_op(1);
        let b = sample_op(-2);
        let c = sample_op(3);
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn right_division_roundtrip() {
        let c = sample_op(2);
        let b = sample_op(5).make_monic().unwrap();
        let a = c.mul(&b);
        let (q, r) = a.right_divide(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, c);
        // B / B = (1, 0)
        let (q, r) = b.right_divide(&b).unwrap();
        assert_eq!(q, DiffOp::one());
        assert!(r.is_zero());
        // non-monic divisor rejected
        let nm = sample_op(1);
        assert_eq!(a.right_divide(&nm), Err(Error::NonMonicDivisor));
    }

    #[test]
    fn adjoint_properties() {
        // (D^2)^* = D^2
        let d2 = DiffOp::d().mul(&DiffOp::d());
        assert_eq!(d2.adjoint(), d2);
        // (a D)^* = -a D - D(a)
        let a = RatFunc::from_poly(MultiPoly::var(Var::U).mul(&MultiPoly::var(Var::X)));
        let ad = DiffOp::new(vec![RatFunc::zero(), a.clone()]);
        let adj = ad.adjoint();
        assert_eq!(adj.coeff(1), a.neg());
        assert_eq!(adj.coeff(0), derivation(&a).neg());
        // anti-homomorphism and involution
        let p = sample_op(4);
        let q = sample_op(-1);
        assert_eq!(p.mul(&q).adjoint(), q.adjoint().mul(&p.adjoint()));
        assert_eq!(p.adjoint().adjoint(), p);
    }

    #[test]
    fn symbol_on_exponential() {
        assert_eq!(DiffOp::d().apply_to_exp(), RatFunc::var(Var::Z));
        let ud2 = DiffOp::new(vec![RatFunc::zero(), RatFunc::zero(), rf_u()]);
        assert_eq!(
            ud2.apply_to_exp(),
            rf_u().mul(&RatFunc::var(Var::Z)).mul(&RatFunc::var(Var::Z))
        );
    }

    #[test]
    fn framed_application() {
        // D on rho = 1 gives z
        assert_eq!(DiffOp::d().apply_framed(&RatFunc::one()), RatFunc::var(Var::Z));
        // D on rho = u gives z u - u
        let res = DiffOp::d().apply_framed(&rf_u());
        let expect = RatFunc::var(Var::Z).mul(&rf_u()).sub(&rf_u());
        assert_eq!(res, expect);
        // rho = 1 matches the symbol map
        let a = sample_op(7);
        assert_eq!(a.apply_framed(&RatFunc::one()), a.apply_to_exp());
        // composition is functorial
        let b = sample_op(-3);
        let rho = RatFunc::new(
            MultiPoly::var(Var::U).add(&MultiPoly::var(Var::Z)),
            MultiPoly::var(Var::Z).add(&MultiPoly::constant(g(3))),
        )
        .unwrap();
        assert_eq!(
            a.mul(&b).apply_framed(&rho),
            a.apply_framed(&b.apply_framed(&rho))
        );
    }

    #[test]
    fn right_coeff_roundtrip() {
        let a = sample_op(6);
        let bs = a.right_coeffs();
        assert_eq!(DiffOp::from_right_coeffs(&bs), a);
    }

    #[test]
    fn annihilator_single_exponential() {
        let l = GaussianRational::from_ratio(2, 3);
        let p = annihilator(&[QuasiPoly::monomial(l.clone(), 0)]).unwrap();
        assert_eq!(p.coeff(1), RatFunc::one());
        assert_eq!(p.coeff(0), RatFunc::constant(-&l));
    }

    #[test]
    fn annihilator_one_minus_au() {
        // {e^{cx} - a e^{(c-1)x}} -> D - c - a u / (1 - a u)
        let c = GaussianRational::from_ratio(1, 2);
        let a = g(3);
        let phi = QuasiPoly::monomial(c.clone(), 0)
            .sub(&QuasiPoly::monomial(&c - &g(1), 0).scalar_mul(&a));
        let p = annihilator(&[phi.clone()]).unwrap();
        let au = RatFunc::from_poly(MultiPoly::var(Var::U).scalar_mul(&a));
        let expect0 = RatFunc::constant(-&c).sub(&au.div(&RatFunc::one().sub(&au)).unwrap());
        assert_eq!(p.coeff(0), expect0);
        assert_eq!(p.coeff(1), RatFunc::one());
        // and it kills the basis element
        assert!(p.apply_cleared(&phi).unwrap().is_zero());
    }

    #[test]
    fn annihilator_polynomials() {
        // {1, x} -> D^2
        let one = QuasiPoly::monomial(GaussianRational::zero(), 0);
        let x = QuasiPoly::monomial(GaussianRational::zero(), 1);
        let p = annihilator(&[one, x]).unwrap();
        assert_eq!(p, DiffOp::d().mul(&DiffOp::d()));
    }

    #[test]
    fn annihilator_rejects_dependent() {
        let l = GaussianRational::from_ratio(1, 5);
        let f = QuasiPoly::monomial(l.clone(), 0);
        assert_eq!(
            annihilator(&[f.clone(), f.scalar_mul(&g(2))]),
            Err(Error::DependentBasis)
        );
    }
}
