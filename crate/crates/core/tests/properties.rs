//! Randomized algebraic-law checks for the exact arithmetic layers.

use proptest::prelude::*;
use trig_darboux::bispectral::{bmap, PolyExpOp};
use trig_darboux::difference::DifferenceOp;
use trig_darboux::diffop::DiffOp;
use trig_darboux::gcd::poly_gcd;
use trig_darboux::json;
use trig_darboux::multipoly::Monomial;
use trig_darboux::quasipoly::QuasiPoly;
use trig_darboux::{GaussianRational, Matrix, MultiPoly, RatFunc, UniPoly, Var};

fn scalars() -> impl Strategy<Value = GaussianRational> {
    (-9i64..=9, 1i64..=4, -9i64..=9, 1i64..=4).prop_map(|(a, b, c, d)| {
        GaussianRational::new(
            GaussianRational::from_ratio(a, b).re,
            GaussianRational::from_ratio(c, d).re,
        )
    })
}

fn unipolys() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(scalars(), 0..5).prop_map(UniPoly::new)
}

/// Sparse polynomials in x and u with small degrees.
fn multipolys() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u16..4, 0u16..4), scalars()), 0..5).prop_map(|terms| {
        MultiPoly::from_terms(terms.into_iter().map(|((i, j), c)| {
            let mut e = [0u16; 7];
            e[Var::X as usize] = i;
            e[Var::U as usize] = j;
            (Monomial(e), c)
        }))
    })
}

fn nonzero_multipolys() -> impl Strategy<Value = MultiPoly> {
    multipolys().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfuncs() -> impl Strategy<Value = RatFunc> {
    (multipolys(), nonzero_multipolys()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

/// Rational functions univariate in z, for residue checks.
fn z_ratfuncs() -> impl Strategy<Value = RatFunc> {
    let zpoly = |cs: Vec<GaussianRational>| {
        MultiPoly::from_coeffs_in(
            Var::Z,
            &cs.into_iter().map(MultiPoly::constant).collect::<Vec<_>>(),
        )
    };
    (
        prop::collection::vec(scalars(), 0..5),
        prop::collection::vec(scalars(), 1..5),
    )
        .prop_filter_map("nonzero denominator", move |(n, d)| {
            let den = zpoly(d);
            if den.is_zero() {
                None
            } else {
                Some(RatFunc::new(zpoly(n), den).unwrap())
            }
        })
}

fn diffops() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec(ratfuncs(), 0..3).prop_map(DiffOp::new)
}

fn polyexps() -> impl Strategy<Value = PolyExpOp> {
    prop::collection::vec(unipolys(), 0..3).prop_map(PolyExpOp::new)
}

fn differences() -> impl Strategy<Value = DifferenceOp> {
    prop::collection::vec((0usize..3, z_ratfuncs()), 0..3)
        .prop_map(|terms| DifferenceOp::new(Var::Z, terms).unwrap())
}

fn quasis() -> impl Strategy<Value = QuasiPoly> {
    prop::collection::vec(
        ((-4i64..=4, 1i64..=3), unipolys()),
        0..3,
    )
    .prop_map(|parts| {
        parts
            .into_iter()
            .fold(QuasiPoly::zero(), |acc, ((p, q), poly)| {
                acc.add(&QuasiPoly::exp_term(GaussianRational::from_ratio(p, q), poly))
            })
    })
}

fn matrices() -> impl Strategy<Value = Matrix<GaussianRational>> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec(scalars(), n * n).prop_map(move |e| Matrix::new(n, n, e))
    })
}

fn reduced(r: &RatFunc) -> bool {
    r.den().leading_coeff().is_one() && poly_gcd(r.num(), r.den()).is_constant()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_field_laws(a in scalars(), b in scalars(), c in scalars()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
        }
    }

    #[test]
    fn ratfunc_field_laws(a in ratfuncs(), b in ratfuncs(), c in ratfuncs()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), RatFunc::zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), RatFunc::one());
        }
    }

    #[test]
    fn ratfunc_stays_reduced(a in ratfuncs(), b in ratfuncs()) {
        // the fast-path arithmetic must preserve the lowest-terms invariant
        prop_assert!(reduced(&a.add(&b)));
        prop_assert!(reduced(&a.mul(&b)));
        prop_assert!(reduced(&a.sub(&b)));
        prop_assert!(reduced(&a.derivative(Var::X)));
    }

    #[test]
    fn gcd_divides_and_is_monic(a in nonzero_multipolys(), b in nonzero_multipolys(), f in nonzero_multipolys()) {
        let g = poly_gcd(&a.mul(&f), &b.mul(&f));
        prop_assert!(g.leading_coeff().is_one());
        prop_assert!(a.mul(&f).try_div(&g).is_some());
        prop_assert!(b.mul(&f).try_div(&g).is_some());
        // a shared factor never escapes the gcd
        prop_assert!(g.try_div(&poly_gcd(&f, &f)).is_some());
    }

    #[test]
    fn determinant_is_multiplicative(m in matrices(), n in matrices()) {
        prop_assume!(m.rows == n.rows);
        let lhs = m.mul(&n).unwrap().det().unwrap();
        let rhs = &m.det().unwrap() * &n.det().unwrap();
        prop_assert_eq!(lhs, rhs);
        // both determinant algorithms agree
        prop_assert_eq!(m.det_cofactor().unwrap(), m.det().unwrap());
    }

    #[test]
    fn adjoint_is_an_involutive_antihomomorphism(p in diffops(), q in diffops()) {
        prop_assert_eq!(p.adjoint().adjoint(), p.clone());
        prop_assert_eq!(p.mul(&q).adjoint(), q.adjoint().mul(&p.adjoint()));
    }

    #[test]
    fn right_division_reconstructs(p in diffops(), d in diffops()) {
        prop_assume!(d.order().is_some() && d.leading_coeff().as_constant().map(|c| !c.is_zero()).unwrap_or(true));
        if let Ok((q, r)) = p.right_divide(&d) {
            prop_assert_eq!(q.mul(&d).add(&r), p.clone());
            prop_assert!(r.order().map(|o| o < d.order().unwrap()).unwrap_or(true));
        }
    }

    #[test]
    fn delta_shift_round_trip(a in differences()) {
        prop_assert_eq!(a.to_delta().to_shift(), a);
    }

    #[test]
    fn spectral_map_is_an_antihomomorphism(a in polyexps(), b in polyexps()) {
        prop_assert_eq!(bmap(&a.mul(&b)), bmap(&b).mul(&bmap(&a)));
        prop_assert_eq!(bmap(&a.add(&b)), bmap(&a).add(&bmap(&b)));
    }

    #[test]
    fn framed_application_composes(p in diffops(), q in diffops(), r in ratfuncs()) {
        prop_assert_eq!(
            p.mul(&q).apply_framed(&r),
            p.apply_framed(&q.apply_framed(&r))
        );
    }

    #[test]
    fn residue_is_linear_and_kills_derivatives(a in z_ratfuncs(), b in z_ratfuncs(), c in scalars()) {
        let lhs = a.add(&b.scalar_mul(&c)).residue_at_infinity(Var::Z).unwrap();
        let rhs = &a.residue_at_infinity(Var::Z).unwrap()
            + &(&c * &b.residue_at_infinity(Var::Z).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(
            a.derivative(Var::Z).residue_at_infinity(Var::Z).unwrap(),
            GaussianRational::zero()
        );
    }

    #[test]
    fn json_round_trips(c in scalars(), p in multipolys(), u in unipolys(), r in ratfuncs(), q in quasis()) {
        prop_assert_eq!(json::scalar_from_json(&json::scalar_json(&c)).unwrap(), c);
        prop_assert_eq!(json::multipoly_from_json(&json::multipoly_json(&p)).unwrap(), p);
        prop_assert_eq!(json::unipoly_from_json(&json::unipoly_json(&u)).unwrap(), u);
        prop_assert_eq!(json::ratfunc_from_json(&json::ratfunc_json(&r)).unwrap(), r);
        prop_assert_eq!(json::quasipoly_from_json(&json::quasipoly_json(&q)).unwrap(), q);
    }

    #[test]
    fn quasipoly_wronskian_alternates(f in quasis(), g in quasis()) {
        let w1 = trig_darboux::quasipoly::wronskian(&[f.clone(), g.clone()]);
        let w2 = trig_darboux::quasipoly::wronskian(&[g, f]);
        prop_assert_eq!(w1, w2.neg());
    }
}
