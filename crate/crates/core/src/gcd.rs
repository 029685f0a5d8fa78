//! Multivariate polynomial GCD via a primitive polynomial remainder
//! sequence, with recursive content extraction and scalar renormalization
//! between steps to keep big-integer coefficients small.

use crate::multipoly::{MultiPoly, Var};
use crate::scalar::GaussianRational;
use num::{BigInt, BigRational, Integer, One, Zero};

/// Rescale so all coefficients are Gaussian integers with no common
/// rational factor. The gcd is only defined up to a scalar, so remainders
/// may be renormalized freely; doing it every step is what keeps the
/// remainder sequence from exploding.
fn scalar_normalize(p: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for c in p.terms.values() {
        for part in [&c.re, &c.im] {
            if !part.numer().is_zero() {
                g = g.gcd(part.numer());
                l = l.lcm(part.denom());
            }
        }
    }
    if g.is_zero() {
        return p.clone();
    }
    let scale = GaussianRational::new(BigRational::new(l, g), BigRational::zero());
    p.scalar_mul(&scale)
}

/// Leading coefficient of `p` viewed as a polynomial in `v` (free of `v`).
fn lead_coeff_in(p: &MultiPoly, v: Var) -> MultiPoly {
    p.coeffs_in(v).pop().unwrap_or_else(MultiPoly::zero)
}

/// Content of `p` in `v`: gcd of its `v`-coefficients.
fn content_in(p: &MultiPoly, v: Var) -> MultiPoly {
    let mut c = MultiPoly::zero();
    for coeff in p.coeffs_in(v) {
        if coeff.is_zero() {
            continue;
        }
        c = poly_gcd(&c, &coeff);
        if c.is_constant() && !c.is_zero() {
            return MultiPoly::one();
        }
    }
    if c.is_zero() {
        MultiPoly::one()
    } else {
        c
    }
}

/// Pseudo-remainder of `a` by `b` in `v`: `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let db = b.degree(v).expect("prem: zero divisor") as i64;
    let lb = lead_coeff_in(b, v);
    let da = a.degree(v).unwrap_or(0) as i64;
    let mut e = da - db + 1;
    let mut r = a.clone();
    loop {
        let dr = match r.degree(v) {
            Some(d) => d as i64,
            None => break,
        };
        if dr < db || r.is_zero() {
            break;
        }
        let lr = lead_coeff_in(&r, v);
        let shift = MultiPoly::var_pow(v, (dr - db) as u16);
        r = r.mul(&lb).sub(&b.mul(&lr).mul(&shift));
        e -= 1;
    }
    for _ in 0..e.max(0) {
        r = r.mul(&lb);
    }
    r
}

/// Greatest common divisor, normalized to leading coefficient 1 under the
/// canonical term order. `gcd(p, 0) = p` made monic.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }

    // Univariate inputs in the same variable go through the modular
    // algorithm, which sidesteps the big-integer growth of the remainder
    // sequence entirely on this (very common) shape of input.
    let av = a.used_vars();
    if av.len() == 1 && av == b.used_vars() {
        let uv = av[0];
        if let (Ok(ac), Ok(bc)) = (a.to_univariate(uv), b.to_univariate(uv)) {
            if let Some(g) = crate::modgcd::unigcd(&ac, &bc) {
                let coeffs: Vec<MultiPoly> =
                    g.into_iter().map(MultiPoly::constant).collect();
                return MultiPoly::from_coeffs_in(uv, &coeffs);
            }
        }
    }

    // Main variable: the last alphabet variable appearing in either input.
    // If it is missing from one of them, the gcd must be free of it, so
    // replace the other input by its content.
    let v = *a
        .used_vars()
        .iter()
        .chain(b.used_vars().iter())
        .max()
        .unwrap();
    if !a.uses_var(v) {
        return poly_gcd(a, &content_in(b, v));
    }
    if !b.uses_var(v) {
        return poly_gcd(&content_in(a, v), b);
    }

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = poly_gcd(&ca, &cb);
    let mut p = scalar_normalize(&a.try_div(&ca).unwrap());
    let mut q = scalar_normalize(&b.try_div(&cb).unwrap());
    if p.degree(v).unwrap() < q.degree(v).unwrap() {
        std::mem::swap(&mut p, &mut q);
    }

    // Modular shortcuts on the primitive parts: one or two variables go
    // through the modular algorithms; with more variables a cheap modular
    // certificate can still settle the (common) coprime case.
    let mut vars: Vec<Var> = p.used_vars();
    for w in q.used_vars() {
        if !vars.contains(&w) {
            vars.push(w);
        }
    }
    match vars.len() {
        1 => {
            if let (Ok(pc), Ok(qc)) = (p.to_univariate(v), q.to_univariate(v)) {
                if let Some(g) = crate::modgcd::unigcd(&pc, &qc) {
                    let coeffs: Vec<MultiPoly> =
                        g.into_iter().map(MultiPoly::constant).collect();
                    return c.mul(&MultiPoly::from_coeffs_in(v, &coeffs)).monic();
                }
            }
        }
        2 => {
            let w = *vars.iter().find(|&&w| w != v).unwrap();
            if let Some(g) = crate::modgcd::bigcd(&p, &q, v, w) {
                return c.mul(&g).monic();
            }
        }
        _ => {
            if crate::modgcd::coprime_certificate(&p, &q, v) {
                return c.monic();
            }
        }
    }

    // Subresultant PRS on the primitive parts. The entry normalization
    // above makes the coefficients Gaussian integers, which is what keeps
    // the classical subresultant size bounds in force.
    let mut g = MultiPoly::one();
    let mut h = MultiPoly::one();
    let gcd_pp;
    loop {
        let dq = match q.degree(v) {
            Some(d) if !q.is_zero() => d,
            _ => {
                // q vanished: previous remainder is the gcd of the pps
                gcd_pp = p.try_div(&content_in(&p, v)).unwrap();
                break;
            }
        };
        if dq == 0 {
            gcd_pp = MultiPoly::one();
            break;
        }
        let dp = p.degree(v).unwrap();
        let delta = (dp - dq) as usize;
        let r = prem(&p, &q, v);
        p = q;
        if r.is_zero() {
            gcd_pp = p.try_div(&content_in(&p, v)).unwrap();
            break;
        }
        let divisor = g.mul(&h.pow(delta));
        q = r.try_div(&divisor).expect("subresultant division must be exact");
        g = lead_coeff_in(&p, v);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .try_div(&h.pow(delta - 1))
                .expect("subresultant h update must be exact"),
        };
    }
    c.mul(&gcd_pp).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn u() -> MultiPoly {
        MultiPoly::var(Var::U)
    }

    #[test]
    fn visible_common_factor() {
        // gcd(x^2 - u^2, x - u) = x - u
        let p = x().mul(&x()).sub(&u().mul(&u()));
        let q = x().sub(&u());
        assert_eq!(poly_gcd(&p, &q), q);
    }

    #[test]
    fn gcd_with_zero() {
        let p = x().scalar_mul(&GaussianRational::from_int(3)).add(&u());
        assert_eq!(poly_gcd(&p, &MultiPoly::zero()), p.monic());
        assert_eq!(poly_gcd(&MultiPoly::zero(), &p), p.monic());
    }

    #[test]
    fn coprime_inputs() {
        assert_eq!(poly_gcd(&x(), &u()), MultiPoly::one());
    }

    #[test]
    fn product_sharing_factor() {
        // random-ish products sharing the factor (x + 2u)
        let f = x().add(&u().scalar_mul(&GaussianRational::from_int(2)));
        let a = f.mul(&x().mul(&x()).add(&MultiPoly::one()));
        let b = f.mul(&u().sub(&x().scalar_mul(&GaussianRational::from_int(5))));
        let g = poly_gcd(&a, &b);
        assert!(a.try_div(&g).is_some());
        assert!(b.try_div(&g).is_some());
        assert_eq!(g, f.monic());
    }

    #[test]
    fn trivariate() {
        let z = MultiPoly::var(Var::Z);
        let f = x().mul(&z).add(&u());
        let a = f.mul(&f).mul(&z.add(&MultiPoly::one()));
        let b = f.mul(&x().add(&z));
        let g = poly_gcd(&a, &b);
        assert_eq!(g, f.monic());
    }
}
