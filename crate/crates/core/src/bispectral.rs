//! The exchange between exponential-coefficient differential operators and
//! polynomial-coefficient difference operators: operators with coefficients
//! polynomial in `w = e^x`, the product-reversing map sending `w` to the
//! shift `T` and the derivation to `z`, and the discrete wave function
//! `sigma(n, z)` with its shift operators in the forward-difference basis.

use crate::darboux::DarbouxTransform;
use crate::diffop::DiffOp;
use crate::difference::{DeltaOp, DifferenceOp};
use crate::error::Error;
use crate::multipoly::{MultiPoly, Var};
use crate::ratfunc::RatFunc;
use crate::scalar::GaussianRational;
use crate::unipoly::UniPoly;

/// A differential operator whose coefficients are polynomials in `w = e^x`,
/// in left normal form; `coeffs[k]` multiplies the k-th derivative.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyExpOp {
    coeffs: Vec<UniPoly>,
}

impl PolyExpOp {
    pub fn new(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        PolyExpOp { coeffs }
    }

    pub fn one() -> Self {
        PolyExpOp {
            coeffs: vec![UniPoly::one()],
        }
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> UniPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn order(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// `D o self` in normal form; the derivation sends `w` to `w`, so
    /// `D(p(w)) = w p'(w)`.
    fn derive_compose(&self) -> PolyExpOp {
        let mut out = vec![UniPoly::zero(); self.coeffs.len() + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            out[k + 1] = out[k + 1].add(a);
            out[k] = out[k].add(&a.derivative().mul(&UniPoly::ident()));
        }
        PolyExpOp::new(out)
    }

    pub fn add(&self, rhs: &PolyExpOp) -> PolyExpOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyExpOp::new((0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect())
    }

    /// Operator composition in normal form.
    pub fn mul(&self, rhs: &PolyExpOp) -> PolyExpOp {
        let mut power = rhs.clone();
        let mut acc = PolyExpOp::new(vec![]);
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                power = power.derive_compose();
            }
            if a.is_zero() {
                continue;
            }
            let term = PolyExpOp::new(power.coeffs.iter().map(|c| c.mul(a)).collect());
            acc = acc.add(&term);
        }
        acc
    }

    /// Build from right-normal coefficients `sum D^k o b_k(w)`.
    pub fn from_right_coeffs(bs: &[UniPoly]) -> PolyExpOp {
        let mut acc = PolyExpOp::new(vec![]);
        for (k, b) in bs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let mut term = PolyExpOp::new(vec![b.clone()]);
            for _ in 0..k {
                term = term.derive_compose();
            }
            let n = acc.coeffs.len().max(term.coeffs.len());
            acc = PolyExpOp::new(
                (0..n).map(|i| acc.coeff(i).add(&term.coeff(i))).collect(),
            );
        }
        acc
    }

    /// View over the `u = 1/w` coordinate, as a general operator.
    pub fn to_diffop(&self) -> DiffOp {
        let inv_u = RatFunc::var(Var::U).inv().unwrap();
        DiffOp::new(
            self.coeffs
                .iter()
                .map(|c| {
                    RatFunc::from_poly(c.to_multipoly(Var::W))
                        .substitute(Var::W, &inv_u)
                        .unwrap()
                })
                .collect(),
        )
    }
}

/// A univariate polynomial in `w` evaluated at `w = 1/u`, as a rational
/// function of `u`.
pub fn poly_w_at_inv_u(p: &UniPoly) -> RatFunc {
    let inv_u = RatFunc::var(Var::U).inv().unwrap();
    RatFunc::from_poly(p.to_multipoly(Var::W))
        .substitute(Var::W, &inv_u)
        .unwrap()
}

/// The trigonometric normal form of a transform: `theta` clears the left
/// coefficients of the forward operator, `nu` clears the right coefficients
/// of the complementary factor, and the cleared operators have coefficients
/// polynomial in `w`.
#[derive(Clone, PartialEq, Debug)]
pub struct TrigParts {
    pub theta: UniPoly,
    pub nu: UniPoly,
    pub p_bar: PolyExpOp,
    /// Right-normal coefficients of the cleared complementary factor:
    /// `q_bar = sum D^k o q_bar_right[k](w)`.
    pub q_bar_right: Vec<UniPoly>,
    pub q_bar: PolyExpOp,
}

/// Rewrite an `x`-free coefficient over `w = 1/u`; errors when the
/// coefficient involves `x`.
fn coeff_in_w(c: &RatFunc) -> Result<RatFunc, Error> {
    if c.uses_var(Var::X) {
        return Err(Error::NotTrigonometric);
    }
    let inv_w = RatFunc::var(Var::W).inv().unwrap();
    c.substitute(Var::U, &inv_w)
}

/// Monic least common denominator in `w` of a coefficient list.
fn common_w_denominator(cs: &[RatFunc]) -> Result<UniPoly, Error> {
    let mut lcd = UniPoly::one();
    for c in cs {
        let den = UniPoly::from_multipoly(c.den(), Var::W)?;
        lcd = lcd.lcm(&den).monic();
    }
    Ok(lcd)
}

/// Extract the trigonometric normal form of a monic factorization pair.
pub fn trig_parts(p: &DiffOp, q: &DiffOp) -> Result<TrigParts, Error> {
    let p_w: Vec<RatFunc> = p.coeffs().iter().map(coeff_in_w).collect::<Result<_, _>>()?;
    let theta = common_w_denominator(&p_w)?;
    let theta_rf = RatFunc::from_poly(theta.to_multipoly(Var::W));
    let p_bar = PolyExpOp::new(
        p_w.iter()
            .map(|c| {
                let cleared = theta_rf.mul(c);
                debug_assert!(cleared.is_polynomial());
                UniPoly::from_multipoly(cleared.num(), Var::W)
            })
            .collect::<Result<_, _>>()?,
    );
    let q_right: Vec<RatFunc> = q
        .right_coeffs()
        .iter()
        .map(coeff_in_w)
        .collect::<Result<_, _>>()?;
    let nu = common_w_denominator(&q_right)?;
    let nu_rf = RatFunc::from_poly(nu.to_multipoly(Var::W));
    let q_bar_right: Vec<UniPoly> = q_right
        .iter()
        .map(|c| {
            let cleared = c.mul(&nu_rf);
            debug_assert!(cleared.is_polynomial());
            UniPoly::from_multipoly(cleared.num(), Var::W)
        })
        .collect::<Result<_, _>>()?;
    let q_bar = PolyExpOp::from_right_coeffs(&q_bar_right);
    Ok(TrigParts {
        theta,
        nu,
        p_bar,
        q_bar_right,
        q_bar,
    })
}

/// The product-reversing map: `c w^m D^k` goes to `c z^k T^m`.
pub fn bmap(a: &PolyExpOp) -> DifferenceOp {
    let mut terms = Vec::new();
    for (k, cw) in a.coeffs().iter().enumerate() {
        let zk = MultiPoly::var_pow(Var::Z, k as u16);
        for m in 0..=cw.degree().unwrap_or(0) {
            let c = cw.coeff(m);
            if c.is_zero() {
                continue;
            }
            terms.push((m, RatFunc::from_poly(zk.scalar_mul(&c))));
        }
    }
    DifferenceOp::new(Var::Z, terms).unwrap()
}

/// The forward difference identity: the cleared operator, pushed through the
/// product-reversing map and applied on the exponential frame to the constant
/// function, reproduces `theta(1/u) f(z)` times the reduced wave; and the
/// complementary identity recovers `nu(1/u)`.
pub fn verify_difference_identities(t: &DarbouxTransform) -> Result<bool, Error> {
    let tp = t.trig.as_ref().ok_or(Error::NotTrigonometric)?;
    let f_z = RatFunc::from_poly(t.f.to_multipoly(Var::Z));
    let g_z = RatFunc::from_poly(t.g.to_multipoly(Var::Z));
    let lhs1 = bmap(&tp.p_bar).apply_framed_exp(&RatFunc::one())?;
    let rhs1 = poly_w_at_inv_u(&tp.theta).mul(&f_z).mul(&t.rho);
    let lhs2 = bmap(&tp.q_bar).apply_framed_exp(&t.rho.div(&g_z)?)?;
    let rhs2 = poly_w_at_inv_u(&tp.nu);
    Ok(lhs1 == rhs1 && lhs2 == rhs2)
}

/// The difference eigen-equation: `f(z)^{-1} b(p_bar) b(q_bar) g(z)^{-1}`
/// applied on the exponential frame multiplies the reduced wave by
/// `theta(1/u) nu(1/u)`.
pub fn verify_difference_eigen(t: &DarbouxTransform) -> Result<bool, Error> {
    let tp = t.trig.as_ref().ok_or(Error::NotTrigonometric)?;
    let f_inv = RatFunc::from_poly(t.f.to_multipoly(Var::Z)).inv()?;
    let g_inv = RatFunc::from_poly(t.g.to_multipoly(Var::Z)).inv()?;
    let op = bmap(&tp.p_bar)
        .mul_fn_left(&f_inv)
        .mul(&bmap(&tp.q_bar).mul_fn_right(&g_inv));
    let lhs = op.apply_framed_exp(&t.rho)?;
    let rhs = poly_w_at_inv_u(&tp.theta)
        .mul(&poly_w_at_inv_u(&tp.nu))
        .mul(&t.rho);
    Ok(lhs == rhs)
}

/// The reduced discrete wave `sigma(n, z)`: substitute the discrete spectral
/// variable for `x` and the shifted spectral variable `1 + z` for `e^x` in
/// the reduced wave. Only defined when the reduced wave is free of bare `x`.
pub fn discrete_wave(t: &DarbouxTransform) -> Result<RatFunc, Error> {
    if t.trig.is_none() {
        return Err(Error::NotTrigonometric);
    }
    let one_plus_z =
        RatFunc::from_poly(MultiPoly::var(Var::Z).add(&MultiPoly::one())).inv()?;
    t.rho.rename_var(Var::Z, Var::N).substitute(Var::U, &one_plus_z)
}

/// Structural normalization of the discrete wave: `sigma -> 1` as
/// `z -> infinity`, i.e. numerator and denominator have the same `z`-degree
/// and equal leading `z`-coefficients.
pub fn discrete_wave_normalized(sigma: &RatFunc) -> bool {
    let nc = sigma.num().coeffs_in(Var::Z);
    let dc = sigma.den().coeffs_in(Var::Z);
    nc.len() == dc.len() && nc.last() == dc.last()
}

/// The discrete shift operators over the forward-difference basis, with the
/// monicity bookkeeping for the leading coefficients.
#[derive(Clone, Debug)]
pub struct DiscreteOps {
    pub r: DeltaOp,
    pub s: DeltaOp,
    /// Whether the underlying shift-basis forms are monic in the top shift
    /// power (recorded, not required).
    pub r_t_monic: bool,
    pub s_t_monic: bool,
    pub s_delta_monic: bool,
}

/// Build the discrete counterpart operators: `r` is the normalized forward
/// operator in the discrete variable, `s` the complementary one composed with
/// the inverse of `g` on the right.
pub fn build_r_s(t: &DarbouxTransform) -> Result<DiscreteOps, Error> {
    let tp = t.trig.as_ref().ok_or(Error::NotTrigonometric)?;
    let f_n_inv = RatFunc::from_poly(t.f.to_multipoly(Var::N)).inv()?;
    let r_shift = bmap(&tp.p_bar).rename(Var::N)?.mul_fn_left(&f_n_inv);
    let r = r_shift.to_delta();
    if !r.is_monic() {
        return Err(Error::Inconsistent(
            "discrete forward operator not monic in the difference basis".into(),
        ));
    }
    if r.order() != tp.theta.degree() {
        return Err(Error::Inconsistent(
            "discrete forward operator order differs from clearing degree".into(),
        ));
    }
    let g_n_inv = RatFunc::from_poly(t.g.to_multipoly(Var::N)).inv()?;
    let s_shift = bmap(&tp.q_bar).rename(Var::N)?.mul_fn_right(&g_n_inv);
    let s = s_shift.to_delta();
    Ok(DiscreteOps {
        r_t_monic: r_shift.leading_coeff().is_one(),
        s_t_monic: s_shift.leading_coeff().is_one(),
        s_delta_monic: s.is_monic(),
        r,
        s,
    })
}

/// The framed discrete identities: `r` applied on the `(1+z)^n` frame to the
/// constant function equals `theta(1+z)` times the discrete wave, and `s`
/// applied to the discrete wave equals `nu(1+z)`.
pub fn verify_discrete_identities(t: &DarbouxTransform) -> Result<bool, Error> {
    let tp = t.trig.as_ref().ok_or(Error::NotTrigonometric)?;
    let ops = build_r_s(t)?;
    let sigma = discrete_wave(t)?;
    let one = GaussianRational::one();
    let theta_1pz = RatFunc::from_poly(tp.theta.shift(&one).to_multipoly(Var::Z));
    let nu_1pz = RatFunc::from_poly(tp.nu.shift(&one).to_multipoly(Var::Z));
    let lhs1 = ops.r.to_shift().apply_framed_discrete(&RatFunc::one())?;
    let lhs2 = ops.s.to_shift().apply_framed_discrete(&sigma)?;
    Ok(lhs1 == theta_1pz.mul(&sigma) && lhs2 == nu_1pz)
}
