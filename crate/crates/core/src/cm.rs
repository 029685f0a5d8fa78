//! Rank-one matrix pairs: the rational and trigonometric pair conditions,
//! the map between them, exact determinant wave functions, stationary tau
//! functions, the Sato quotient identity, the transpose involution, and the
//! reconstruction of a full factorization bundle from a trigonometric pair.

use crate::bispectral::trig_parts;
use crate::darboux::DarbouxTransform;
use crate::diffop::DiffOp;
use crate::error::Error;
use crate::matrix::Matrix;
use crate::multipoly::{MultiPoly, Var};
use crate::ratfunc::RatFunc;
use crate::scalar::GaussianRational;
use crate::unipoly::UniPoly;

/// A rational pair: `rank([X, Z] + I) = 1`, vacuous at size 0.
#[derive(Clone, PartialEq, Debug)]
pub struct CMPairRational {
    pub n: usize,
    pub xt: Matrix<GaussianRational>,
    pub zt: Matrix<GaussianRational>,
}

/// A trigonometric pair: `X` invertible and `rank(X Z X^{-1} - Z + I) = 1`.
#[derive(Clone, PartialEq, Debug)]
pub struct CMPairTrig {
    pub n: usize,
    pub x: Matrix<GaussianRational>,
    pub z: Matrix<GaussianRational>,
}

fn check_shape(a: &Matrix<GaussianRational>, b: &Matrix<GaussianRational>) -> Result<usize, Error> {
    if !a.is_square() || !b.is_square() || a.rows != b.rows {
        return Err(Error::ShapeMismatch);
    }
    Ok(a.rows)
}

/// Exact rank-one test of `[Xt, Zt] + I`.
pub fn is_rational_cm(
    xt: &Matrix<GaussianRational>,
    zt: &Matrix<GaussianRational>,
) -> Result<bool, Error> {
    let n = check_shape(xt, zt)?;
    if n == 0 {
        return Ok(true);
    }
    let comm = xt
        .mul(zt)?
        .sub(&zt.mul(xt)?)?
        .add(&Matrix::identity(n))?;
    Ok(comm.rank() == 1)
}

/// Exact rank-one test of `X Z X^{-1} - Z + I`, with invertibility of `X`.
pub fn is_trig_cm(
    x: &Matrix<GaussianRational>,
    z: &Matrix<GaussianRational>,
) -> Result<bool, Error> {
    let n = check_shape(x, z)?;
    if n == 0 {
        return Ok(true);
    }
    let xinv = match x.inverse() {
        Ok(m) => m,
        Err(Error::SingularMatrix) => return Ok(false),
        Err(e) => return Err(e),
    };
    let m = x.mul(z)?.mul(&xinv)?.sub(z)?.add(&Matrix::identity(n))?;
    Ok(m.rank() == 1)
}

/// The generalized rank condition: `rank(X Z - Y X) = 1`.
pub fn gk_rank_check(
    x: &Matrix<GaussianRational>,
    y: &Matrix<GaussianRational>,
    z: &Matrix<GaussianRational>,
) -> Result<bool, Error> {
    let n = check_shape(x, z)?;
    check_shape(x, y)?;
    if n == 0 {
        return Ok(true);
    }
    Ok(x.mul(z)?.sub(&y.mul(x)?)?.rank() == 1)
}

impl CMPairRational {
    pub fn new(
        xt: Matrix<GaussianRational>,
        zt: Matrix<GaussianRational>,
    ) -> Result<Self, Error> {
        let n = check_shape(&xt, &zt)?;
        if !is_rational_cm(&xt, &zt)? {
            return Err(Error::Invalid("rational pair rank condition fails".into()));
        }
        Ok(CMPairRational { n, xt, zt })
    }

    /// The transpose-swapped pair realizing the spectral-variable exchange.
    pub fn involution(&self) -> Result<CMPairRational, Error> {
        CMPairRational::new(self.zt.transpose(), self.xt.transpose())
    }
}

impl CMPairTrig {
    pub fn new(x: Matrix<GaussianRational>, z: Matrix<GaussianRational>) -> Result<Self, Error> {
        let n = check_shape(&x, &z)?;
        if n > 0 && x.inverse().is_err() {
            return Err(Error::SingularMatrix);
        }
        if !is_trig_cm(&x, &z)? {
            return Err(Error::Invalid("trigonometric pair rank condition fails".into()));
        }
        Ok(CMPairTrig { n, x, z })
    }
}

/// The rational-to-trigonometric map `X = I + Zt^T`, `Z = Xt^T (I + Zt^T)`;
/// requires `I + Zt` nonsingular. The output invariant is re-verified.
pub fn trig_from_rational(p: &CMPairRational) -> Result<CMPairTrig, Error> {
    let n = p.n;
    let x = Matrix::identity(n).add(&p.zt.transpose())?;
    if n > 0 && x.inverse().is_err() {
        return Err(Error::SingularMatrix);
    }
    let z = p.xt.transpose().mul(&x)?;
    CMPairTrig::new(x, z)
}

/// `v I - M` as a polynomial matrix.
fn char_matrix(m: &Matrix<GaussianRational>, v: Var) -> Matrix<MultiPoly> {
    let n = m.rows;
    Matrix::from_fn(n, n, |i, j| {
        let mut e = MultiPoly::constant(m.at(i, j).clone()).neg();
        if i == j {
            e = e.add(&MultiPoly::var(v));
        }
        e
    })
}

fn scalar_matrix(m: &Matrix<GaussianRational>) -> Matrix<MultiPoly> {
    Matrix::from_fn(m.rows, m.cols, |i, j| {
        MultiPoly::constant(m.at(i, j).clone())
    })
}

fn poly_identity(n: usize) -> Matrix<MultiPoly> {
    Matrix::identity(n)
}

/// Monic characteristic polynomial of an exact matrix.
pub fn char_poly(m: &Matrix<GaussianRational>) -> UniPoly {
    if m.rows == 0 {
        return UniPoly::one();
    }
    let det = char_matrix(m, Var::Z).det_bareiss().unwrap();
    UniPoly::from_multipoly(&det, Var::Z).unwrap()
}

/// Reduced rational wave `det(I - (xI - Xt)^{-1} (zI - Zt)^{-1})` as an exact
/// rational function of `(x, z)`, via the quotient
/// `det(AB - I) / (det A det B)`.
pub fn rational_wave(p: &CMPairRational) -> RatFunc {
    if p.n == 0 {
        return RatFunc::one();
    }
    let a = char_matrix(&p.xt, Var::X);
    let b = char_matrix(&p.zt, Var::Z);
    let num = a
        .mul(&b)
        .unwrap()
        .sub(&poly_identity(p.n))
        .unwrap()
        .det_bareiss()
        .unwrap();
    let den = a.det_bareiss().unwrap().mul(&b.det_bareiss().unwrap());
    RatFunc::new(num, den).unwrap()
}

/// Reduced trigonometric wave `det(I - X (wI - X)^{-1} (zI - Z)^{-1})` as an
/// exact rational function of `(w, z)`, via `det(AB - X) / (det A det B)`
/// (valid since `X` commutes with `wI - X`).
pub fn trig_wave(p: &CMPairTrig) -> RatFunc {
    if p.n == 0 {
        return RatFunc::one();
    }
    let a = char_matrix(&p.x, Var::W);
    let b = char_matrix(&p.z, Var::Z);
    let num = a
        .mul(&b)
        .unwrap()
        .sub(&scalar_matrix(&p.x))
        .unwrap()
        .det_bareiss()
        .unwrap();
    let den = a.det_bareiss().unwrap().mul(&b.det_bareiss().unwrap());
    RatFunc::new(num, den).unwrap()
}

/// Structural normalization of a reduced wave in a frame variable: the wave
/// tends to 1 as the variable grows.
pub fn wave_normalized(rho: &RatFunc, v: Var) -> bool {
    let nc = rho.num().coeffs_in(v);
    let dc = rho.den().coeffs_in(v);
    nc.len() == dc.len() && nc.last() == dc.last()
}

/// Reduced discrete wave
/// `det(I + (Xt - n (I + Zt)^{-1})^{-1} (zI - Zt)^{-1})` as an exact rational
/// function of `(n, z)`, via `det(CB + I) / (det C det B)`.
pub fn discrete_wave_cm(p: &CMPairRational) -> Result<RatFunc, Error> {
    if p.n == 0 {
        return Ok(RatFunc::one());
    }
    let w = Matrix::identity(p.n)
        .add(&p.zt)?
        .inverse()
        .map_err(|_| Error::SingularMatrix)?;
    let c: Matrix<RatFunc> = Matrix::from_fn(p.n, p.n, |i, j| {
        RatFunc::constant(p.xt.at(i, j).clone()).sub(&RatFunc::var(Var::N).scalar_mul(w.at(i, j)))
    });
    let b: Matrix<RatFunc> = Matrix::from_fn(p.n, p.n, |i, j| {
        let mut e = RatFunc::constant(p.zt.at(i, j).clone()).neg();
        if i == j {
            e = e.add(&RatFunc::var(Var::Z));
        }
        e
    });
    let ident: Matrix<RatFunc> = Matrix::identity(p.n);
    let num = c.mul(&b)?.add(&ident)?.det()?;
    let den = c.det()?.mul(&b.det()?);
    num.div(&den)
}

/// Stationary tau function `det(I - uX)` with `u` standing for the decaying
/// exponential.
pub fn tau_stationary(p: &CMPairTrig) -> MultiPoly {
    if p.n == 0 {
        return MultiPoly::one();
    }
    let m = Matrix::from_fn(p.n, p.n, |i, j| {
        let mut e = MultiPoly::var(Var::U)
            .mul(&MultiPoly::constant(p.x.at(i, j).clone()))
            .neg();
        if i == j {
            e = e.add(&MultiPoly::one());
        }
        e
    });
    m.det_bareiss().unwrap()
}

/// The shifted-time tau quotient at the stationary point, computed with the
/// closed-form shift matrix `(zI - (Z - I))(zI - Z)^{-1}`:
/// `det(B - uXS) / (det B det(I - uX))` rewritten over `w = 1/u`. Must equal
/// the trigonometric wave.
pub fn sato_quotient(p: &CMPairTrig) -> RatFunc {
    if p.n == 0 {
        return RatFunc::one();
    }
    let b = char_matrix(&p.z, Var::Z);
    let s = b.add(&poly_identity(p.n)).unwrap();
    let ux = Matrix::from_fn(p.n, p.n, |i, j| {
        MultiPoly::var(Var::U).mul(&MultiPoly::constant(p.x.at(i, j).clone()))
    });
    let num = b.sub(&ux.mul(&s).unwrap()).unwrap().det_bareiss().unwrap();
    let den = b.det_bareiss().unwrap().mul(&tau_stationary(p));
    let q_u = RatFunc::new(num, den).unwrap();
    let inv_w = RatFunc::var(Var::W).inv().unwrap();
    q_u.substitute(Var::U, &inv_w).unwrap()
}

/// The spectral-exchange identity between the trigonometric wave of the
/// mapped pair and the discrete wave: substitute the discrete slot by `z` and
/// the spectral slot by `w - 1`.
pub fn swap_identity_check(p: &CMPairRational) -> Result<bool, Error> {
    let lhs = trig_wave(&trig_from_rational(p)?);
    let sigma = discrete_wave_cm(p)?;
    let w_minus_1 =
        RatFunc::from_poly(MultiPoly::var(Var::W).sub(&MultiPoly::one()));
    let rhs = sigma
        .rename_var(Var::N, Var::Y)
        .substitute(Var::Z, &w_minus_1)?
        .rename_var(Var::Y, Var::Z);
    Ok(lhs == rhs)
}

/// The transpose involution exchanges the two spectral variables of the
/// rational wave.
pub fn involution_check(p: &CMPairRational) -> Result<bool, Error> {
    let q = p.involution()?;
    let rho = rational_wave(p);
    let swapped = rational_wave(&q)
        .rename_var(Var::X, Var::Y)
        .rename_var(Var::Z, Var::X)
        .rename_var(Var::Y, Var::Z);
    Ok(rho == swapped)
}

/// Rebuild a full factorization bundle from a trigonometric pair: the pivot
/// polynomial candidate is the characteristic polynomial of `Z`, the symbol
/// candidate its product with the unit shift, and the forward factor is read
/// off the cleared wave. Both candidates are refuted (error) if the division
/// leaves a remainder.
pub fn reconstruct_transform(p: &CMPairTrig) -> Result<DarbouxTransform, Error> {
    let f = char_poly(&p.z);
    let one = GaussianRational::one();
    let g = f.shift(&one);
    let h = f.mul(&g);
    let rho_w = trig_wave(p);
    // clear the z-denominator
    let cleared = rho_w.mul(&RatFunc::from_poly(f.to_multipoly(Var::Z)));
    if cleared.den().uses_var(Var::Z) {
        return Err(Error::Inconsistent(
            "pivot candidate does not clear the wave denominator".into(),
        ));
    }
    // read off coefficients of powers of z, converting w to 1/u
    let inv_u = RatFunc::var(Var::U).inv()?;
    let den = RatFunc::from_poly(cleared.den().clone());
    let coeffs: Vec<RatFunc> = cleared
        .num()
        .coeffs_in(Var::Z)
        .iter()
        .map(|c| {
            RatFunc::from_poly(c.clone())
                .div(&den)?
                .substitute(Var::W, &inv_u)
        })
        .collect::<Result<_, _>>()?;
    let p_op = DiffOp::new(coeffs);
    if !p_op.is_monic() {
        return Err(Error::Inconsistent("cleared wave is not monic".into()));
    }
    let (q_op, rem) = DiffOp::from_const_poly(&h).right_divide(&p_op)?;
    if !rem.is_zero() {
        return Err(Error::Inconsistent("symbol candidate refuted".into()));
    }
    let f_z = RatFunc::from_poly(f.to_multipoly(Var::Z));
    let g_z = RatFunc::from_poly(g.to_multipoly(Var::Z));
    let rho = p_op.apply_to_exp().div(&f_z)?;
    let rho_star = q_op.adjoint().apply_to_exp_neg().div(&g_z)?;
    let trig = Some(trig_parts(&p_op, &q_op)?);
    Ok(DarbouxTransform {
        h,
        p: p_op,
        q: q_op,
        f,
        g,
        rho,
        rho_star,
        basis: vec![],
        pivots: vec![],
        trig,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::darboux;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }
    fn gr(p: i64, q: i64) -> GaussianRational {
        GaussianRational::from_ratio(p, q)
    }

    fn mat(n: usize, entries: Vec<GaussianRational>) -> Matrix<GaussianRational> {
        Matrix::new(n, n, entries)
    }

    /// Diagonal positions with reciprocal-difference off-diagonal couplings.
    fn classical_pair(xs: &[GaussianRational], diag: &[GaussianRational]) -> CMPairRational {
        let n = xs.len();
        let xt = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                xs[i].clone()
            } else {
                GaussianRational::zero()
            }
        });
        let zt = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                (&xs[i] - &xs[j]).inv().unwrap()
            }
        });
        CMPairRational::new(xt, zt).unwrap()
    }

    #[test]
    fn rank_conditions() {
        // size 0: vacuous
        let e = Matrix::<GaussianRational>::new(0, 0, vec![]);
        assert!(is_rational_cm(&e, &e).unwrap());
        assert!(is_trig_cm(&e, &e).unwrap());
        // size 1 trig: any invertible X
        assert!(is_trig_cm(&mat(1, vec![g(3)]), &mat(1, vec![gr(1, 2)])).unwrap());
        // classical rational construction
        let p = classical_pair(&[g(1), g(2), g(4)], &[g(5), g(-1), gr(1, 3)]);
        assert!(is_rational_cm(&p.xt, &p.zt).unwrap());
        // shape mismatch
        assert!(matches!(
            is_rational_cm(&mat(1, vec![g(1)]), &e),
            Err(Error::ShapeMismatch)
        ));
    }

    #[test]
    fn generalized_rank_relation() {
        // with Y = Z - I and invertible X the two trig tests agree
        let x = mat(2, vec![g(2), g(1), g(0), g(1)]);
        let z = mat(2, vec![g(1), g(3), g(0), g(2)]);
        let y = z.sub(&Matrix::identity(2)).unwrap();
        assert_eq!(
            gk_rank_check(&x, &y, &z).unwrap(),
            is_trig_cm(&x, &z).unwrap()
        );
        // X = 0: rank 0
        let zero = Matrix::zero(2, 2);
        assert!(!gk_rank_check(&zero, &y, &z).unwrap());
    }

    #[test]
    fn rational_to_trig_map() {
        // size 1: (x0),(z0) -> X = 1 + z0, Z = x0 (1 + z0)
        let p = CMPairRational::new(mat(1, vec![g(3)]), mat(1, vec![gr(1, 2)])).unwrap();
        let t = trig_from_rational(&p).unwrap();
        assert_eq!(t.x, mat(1, vec![gr(3, 2)]));
        assert_eq!(t.z, mat(1, vec![gr(9, 2)]));
        // larger pairs keep the invariant (checked in the constructor)
        let p = classical_pair(&[g(0), g(3)], &[gr(1, 2), g(-2)]);
        trig_from_rational(&p).unwrap();
    }

    #[test]
    fn rational_wave_cases() {
        // size 1: 1 - 1/((x - x0)(z - z0))
        let p = CMPairRational::new(mat(1, vec![g(2)]), mat(1, vec![gr(1, 3)])).unwrap();
        let rho = rational_wave(&p);
        let xm = RatFunc::var(Var::X).sub(&RatFunc::constant(g(2)));
        let zm = RatFunc::var(Var::Z).sub(&RatFunc::constant(gr(1, 3)));
        let expect = RatFunc::one().sub(&xm.mul(&zm).inv().unwrap());
        assert_eq!(rho, expect);
        // conjugation invariance
        let p2 = classical_pair(&[g(1), g(-2)], &[g(3), gr(1, 5)]);
        let c = mat(2, vec![g(1), g(2), g(1), g(3)]);
        let ci = c.inverse().unwrap();
        let q = CMPairRational::new(
            c.mul(&p2.xt).unwrap().mul(&ci).unwrap(),
            c.mul(&p2.zt).unwrap().mul(&ci).unwrap(),
        )
        .unwrap();
        assert_eq!(rational_wave(&p2), rational_wave(&q));
    }

    #[test]
    fn trig_wave_matches_factorization_bundle() {
        // size 1 pair (a),(c) reproduces the order-one reduced wave over w
        let a = g(3);
        let c = gr(1, 2);
        let t = CMPairTrig::new(mat(1, vec![a.clone()]), mat(1, vec![c.clone()])).unwrap();
        let rho = trig_wave(&t);
        let w = RatFunc::var(Var::W);
        let z = RatFunc::var(Var::Z);
        let wa = w.sub(&RatFunc::constant(a));
        let zc = z.sub(&RatFunc::constant(c));
        let expect = wa
            .mul(&zc)
            .sub(&RatFunc::constant(g(3)))
            .div(&wa.mul(&zc))
            .unwrap();
        assert_eq!(rho, expect);
        assert!(wave_normalized(&rho, Var::W));
    }

    #[test]
    fn discrete_wave_and_swap() {
        // size 1: 1 + 1/((x0 - n/(1+z0))(z - z0))
        let x0 = g(3);
        let z0 = gr(1, 2);
        let p = CMPairRational::new(mat(1, vec![x0.clone()]), mat(1, vec![z0.clone()])).unwrap();
        let sigma = discrete_wave_cm(&p).unwrap();
        let n = RatFunc::var(Var::N);
        let z = RatFunc::var(Var::Z);
        let c = RatFunc::constant(x0).sub(
            &n.div(&RatFunc::constant(&GaussianRational::one() + &z0))
                .unwrap(),
        );
        let expect = RatFunc::one().add(
            &c.mul(&z.sub(&RatFunc::constant(z0)))
                .inv()
                .unwrap(),
        );
        assert_eq!(sigma, expect);
        assert!(wave_normalized(&sigma, Var::N));
        assert!(swap_identity_check(&p).unwrap());
        // and for a 2x2 pair
        let p2 = classical_pair(&[g(1), g(-2)], &[g(3), gr(1, 5)]);
        assert!(swap_identity_check(&p2).unwrap());
    }

    #[test]
    fn sato_quotient_equals_trig_wave() {
        let t = CMPairTrig::new(mat(1, vec![g(3)]), mat(1, vec![gr(1, 2)])).unwrap();
        assert_eq!(sato_quotient(&t), trig_wave(&t));
        let p = classical_pair(&[g(0), g(3)], &[gr(1, 2), g(-2)]);
        let t2 = trig_from_rational(&p).unwrap();
        assert_eq!(sato_quotient(&t2), trig_wave(&t2));
    }

    #[test]
    fn stationary_tau() {
        let t = CMPairTrig::new(mat(1, vec![g(3)]), mat(1, vec![gr(1, 2)])).unwrap();
        // 1 - 3u
        let expect = MultiPoly::one().sub(&MultiPoly::var(Var::U).scalar_mul(&g(3)));
        assert_eq!(tau_stationary(&t), expect);
    }

    #[test]
    fn involution_cases() {
        let p = CMPairRational::new(mat(1, vec![g(2)]), mat(1, vec![gr(1, 3)])).unwrap();
        assert!(involution_check(&p).unwrap());
        let p2 = classical_pair(&[g(1), g(-2), g(4)], &[g(3), gr(1, 5), g(0)]);
        assert!(involution_check(&p2).unwrap());
        // double involution preserves the wave
        let q = p2.involution().unwrap().involution().unwrap();
        assert_eq!(rational_wave(&p2), rational_wave(&q));
    }

    #[test]
    fn reconstruction_round_trip() {
        // size 0: identity bundle
        let e = Matrix::<GaussianRational>::new(0, 0, vec![]);
        let t0 = reconstruct_transform(&CMPairTrig::new(e.clone(), e).unwrap()).unwrap();
        assert!(t0.f.is_one() && t0.g.is_one() && t0.rho.is_one());

        // size 1 (a),(c): exactly the order-one bundle
        let a = g(3);
        let c = gr(1, 2);
        let pair = CMPairTrig::new(mat(1, vec![a.clone()]), mat(1, vec![c.clone()])).unwrap();
        let t = reconstruct_transform(&pair).unwrap();
        let au = RatFunc::from_poly(MultiPoly::var(Var::U).scalar_mul(&a));
        let expect0 = RatFunc::constant(-&c).sub(&au.div(&RatFunc::one().sub(&au)).unwrap());
        assert_eq!(t.p.coeffs(), &[expect0, RatFunc::one()]);
        assert_eq!(t.f, UniPoly::linear(&c));
        assert_eq!(t.g, UniPoly::linear(&(&c - &GaussianRational::one())));
        assert!(darboux::check_reversed_eigen(&t));
        assert!(darboux::check_orthogonality(&t, 3, 3).unwrap());

        // the reduced wave reproduces the determinant wave over w
        let inv_w = RatFunc::var(Var::W).inv().unwrap();
        let rho_w = t.rho.substitute(Var::U, &inv_w).unwrap();
        assert_eq!(rho_w, trig_wave(&pair));

        // composite rational -> trig -> bundle round trip
        let p2 = classical_pair(&[g(0), g(3)], &[gr(1, 2), g(-2)]);
        let t2 = reconstruct_transform(&trig_from_rational(&p2).unwrap()).unwrap();
        assert_eq!(t2.q.mul(&t2.p), DiffOp::from_const_poly(&t2.h));
        assert!(darboux::check_reversed_eigen(&t2));
        assert!(darboux::check_orthogonality(&t2, 4, 4).unwrap());
    }
}
