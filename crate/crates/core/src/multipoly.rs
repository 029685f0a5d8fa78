//! Sparse multivariate polynomials over Gaussian rationals, on the fixed
//! ordered alphabet `x, u, w, z, n, y, s` with graded lexicographic term
//! order.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::ring::{ExactDiv, Ring};
use crate::scalar::GaussianRational;

pub const NVARS: usize = 7;

/// The fixed variable alphabet, in canonical order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    U = 1,
    W = 2,
    Z = 3,
    N = 4,
    Y = 5,
    S = 6,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::U, Var::W, Var::Z, Var::N, Var::Y, Var::S];

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::U => "u",
            Var::W => "w",
            Var::Z => "z",
            Var::N => "n",
            Var::Y => "y",
            Var::S => "s",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == s)
    }
}

/// Exponent vector. Ordered graded-lexicographically: first by total degree,
/// then lexicographically with `x` most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn unit() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: u16) -> Self {
        let mut m = [0; NVARS];
        m[v as usize] = e;
        Monomial(m)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut m = [0u16; NVARS];
        for i in 0..NVARS {
            m[i] = self.0[i] + rhs.0[i];
        }
        Monomial(m)
    }

    /// Componentwise division; `None` if any exponent would go negative.
    pub fn div(&self, rhs: &Monomial) -> Option<Monomial> {
        let mut m = [0u16; NVARS];
        for i in 0..NVARS {
            m[i] = self.0[i].checked_sub(rhs.0[i])?;
        }
        Some(Monomial(m))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial. Invariant: no zero coefficients are stored, so equal
/// polynomials have identical representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    pub terms: BTreeMap<Monomial, GaussianRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u16) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v, e), GaussianRational::one());
        MultiPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| *m == Monomial::unit())
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            Some(GaussianRational::zero())
        } else if self.is_constant() {
            self.terms.get(&Monomial::unit()).cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading (largest) term under the graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> GaussianRational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(GaussianRational::zero)
    }

    /// Divide through by the leading coefficient.
    pub fn monic(&self) -> MultiPoly {
        let lc = self.leading_coeff();
        if lc.is_zero() || lc.is_one() {
            self.clone()
        } else {
            self.scalar_mul(&lc.inv().unwrap())
        }
    }

    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.0[v as usize] as u32)
            .max()
            .filter(|_| !self.is_zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.0[v as usize] > 0)
    }

    pub fn used_vars(&self) -> Vec<Var> {
        Var::ALL.iter().copied().filter(|&v| self.uses_var(v)).collect()
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn mul(&self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scalar_mul(&self, c: &GaussianRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &GaussianRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact division: `Some(q)` with `self = q * d`, else `None`.
    pub fn try_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        let (dm, dc) = {
            let (m, c) = d.leading_term().unwrap();
            (*m, c.clone())
        };
        let dc_inv = dc.inv().unwrap();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading_term().unwrap();
                (*m, c.clone())
            };
            let qm = rm.div(&dm)?;
            let qc = &rc * &dc_inv;
            quot.add_term(qm, qc.clone());
            rem = rem.sub(&d.mul_monomial(&qm, &qc));
        }
        Some(quot)
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.0[v as usize];
            if e > 0 {
                let mut m2 = *m;
                m2.0[v as usize] -= 1;
                out.add_term(m2, c * &GaussianRational::from_int(e as i64));
            }
        }
        out
    }

    /// Substitute a polynomial for a variable.
    pub fn substitute_poly(&self, v: Var, p: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        // cache powers of p
        let maxe = self
            .terms
            .keys()
            .map(|m| m.0[v as usize])
            .max()
            .unwrap_or(0) as usize;
        let mut pows = Vec::with_capacity(maxe + 1);
        pows.push(MultiPoly::one());
        for i in 1..=maxe {
            let next = pows[i - 1].mul(p);
            pows.push(next);
        }
        for (m, c) in &self.terms {
            let e = m.0[v as usize] as usize;
            let mut m2 = *m;
            m2.0[v as usize] = 0;
            let base = MultiPoly::from_terms([(m2, c.clone())]);
            out = out.add(&base.mul(&pows[e]));
        }
        out
    }

    /// Rename a variable (target must be absent).
    pub fn rename_var(&self, from: Var, to: Var) -> MultiPoly {
        debug_assert!(!self.uses_var(to) || from == to);
        if from == to {
            return self.clone();
        }
        self.substitute_poly(from, &MultiPoly::var(to))
    }

    /// Substitute `v -> v + k` for a scalar shift `k`.
    pub fn shift_var(&self, v: Var, k: &GaussianRational) -> MultiPoly {
        if k.is_zero() {
            return self.clone();
        }
        let shifted = MultiPoly::var(v).add(&MultiPoly::constant(k.clone()));
        self.substitute_poly(v, &shifted)
    }

    /// Substitute a scalar for a variable.
    pub fn eval_var(&self, v: Var, val: &GaussianRational) -> MultiPoly {
        self.substitute_poly(v, &MultiPoly::constant(val.clone()))
    }

    /// Full evaluation; every variable used must be assigned.
    pub fn eval(&self, assign: &BTreeMap<Var, GaussianRational>) -> Result<GaussianRational, Error> {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m.0[v as usize];
                if e > 0 {
                    let val = assign
                        .get(&v)
                        .ok_or_else(|| Error::Invalid(format!("unassigned variable {}", v.name())))?;
                    for _ in 0..e {
                        t = &t * val;
                    }
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn eval_c64(
        &self,
        assign: &BTreeMap<Var, num::complex::Complex64>,
    ) -> Result<num::complex::Complex64, Error> {
        use num::complex::Complex64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex64();
            for v in Var::ALL {
                let e = m.0[v as usize];
                if e > 0 {
                    let val = assign
                        .get(&v)
                        .ok_or_else(|| Error::Invalid(format!("unassigned variable {}", v.name())))?;
                    t *= val.powi(e as i32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Dense coefficient list in `v`, ascending; coefficients are free of `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        let deg = self.degree(v).map(|d| d as usize).unwrap_or(0);
        let mut out = vec![MultiPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[v as usize] as usize;
            let mut m2 = *m;
            m2.0[v as usize] = 0;
            out[e].add_term(m2, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            out = out.add(&c.mul(&MultiPoly::var_pow(v, e as u16)));
        }
        out
    }

    pub fn is_univariate_in(&self, v: Var) -> bool {
        self.used_vars().iter().all(|&w| w == v)
    }

    /// Dense scalar coefficients, requiring the polynomial univariate in `v`.
    pub fn to_univariate(&self, v: Var) -> Result<Vec<GaussianRational>, Error> {
        if !self.is_univariate_in(v) {
            return Err(Error::NonUnivariate(v.name()));
        }
        let deg = self.degree(v).map(|d| d as usize).unwrap_or(0);
        let mut out = vec![GaussianRational::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.0[v as usize] as usize] = c.clone();
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for v in Var::ALL {
                let e = m.0[v as usize];
                if e == 1 {
                    write!(f, "*{}", v.name())?;
                } else if e > 1 {
                    write!(f, "*{}^{}", v.name(), e)?;
                }
            }
        }
        Ok(())
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        MultiPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        MultiPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        MultiPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
}

impl ExactDiv for MultiPoly {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.try_div(rhs)
    }
}
