//! Modular univariate GCD over the Gaussian rationals: images are computed
//! by Euclid's algorithm over GF(p^2) for word-sized primes `p = 3 mod 4`
//! (so that i generates the quadratic extension), combined by CRT, lifted
//! by rational reconstruction and certified by exact trial division. Used
//! as a fast path; callers fall back to the remainder-sequence algorithm
//! when it declines.

use crate::multipoly::{MultiPoly, Var, NVARS};
use crate::scalar::GaussianRational;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

/// Primes just below 2^62, all congruent to 3 mod 4.
const PRIMES: [u64; 24] = [
    4611686018427387847, 4611686018427387787, 4611686018427387751,
    4611686018427387631, 4611686018427387587, 4611686018427387323,
    4611686018427387271, 4611686018427387139, 4611686018427387131,
    4611686018427387127, 4611686018427387091, 4611686018427386923,
    4611686018427386911, 4611686018427386903, 4611686018427386887,
    4611686018427386707, 4611686018427386663, 4611686018427386611,
    4611686018427386551, 4611686018427386471, 4611686018427386351,
    4611686018427386323, 4611686018427386287, 4611686018427386231,
];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct F2 {
    re: u64,
    im: u64,
}

impl F2 {
    fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }
}

fn addp(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn subp(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn mulp(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invp(a: u64, p: u64) -> u64 {
    // extended Euclid on signed 128-bit words
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i128) as u64
}

fn f2_sub(a: F2, b: F2, p: u64) -> F2 {
    F2 {
        re: subp(a.re, b.re, p),
        im: subp(a.im, b.im, p),
    }
}

fn f2_mul(a: F2, b: F2, p: u64) -> F2 {
    F2 {
        re: subp(mulp(a.re, b.re, p), mulp(a.im, b.im, p), p),
        im: addp(mulp(a.re, b.im, p), mulp(a.im, b.re, p), p),
    }
}

fn f2_inv(a: F2, p: u64) -> F2 {
    // (re - im i) / (re^2 + im^2); the norm is nonzero for nonzero a
    // because -1 is not a square mod p
    let norm = addp(mulp(a.re, a.re, p), mulp(a.im, a.im, p), p);
    let ninv = invp(norm, p);
    F2 {
        re: mulp(a.re, ninv, p),
        im: mulp(subp(0, a.im, p), ninv, p),
    }
}

fn trim(v: &mut Vec<F2>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

/// Monic gcd in GF(p^2)[t]; inputs nonempty with nonzero leads.
fn gcd_fp2(mut a: Vec<F2>, mut b: Vec<F2>, p: u64) -> Vec<F2> {
    while !b.is_empty() {
        // make b monic, then a mod b
        let linv = f2_inv(*b.last().unwrap(), p);
        for c in b.iter_mut() {
            *c = f2_mul(*c, linv, p);
        }
        while a.len() >= b.len() {
            let lead = *a.last().unwrap();
            if lead.is_zero() {
                a.pop();
                continue;
            }
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                let s = f2_mul(*c, lead, p);
                a[i + shift] = f2_sub(a[i + shift], s, p);
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
        trim(&mut b);
    }
    if let Some(linv) = a.last().map(|l| f2_inv(*l, p)) {
        for c in a.iter_mut() {
            *c = f2_mul(*c, linv, p);
        }
    }
    a
}

fn reduce_ratio(r: &BigRational, p: u64) -> Option<u64> {
    let bp = BigInt::from(p);
    let d = r.denom().mod_floor(&bp);
    if d.is_zero() {
        return None;
    }
    let n = r.numer().mod_floor(&bp);
    use num::ToPrimitive;
    Some(mulp(n.to_u64().unwrap(), invp(d.to_u64().unwrap(), p), p))
}

fn reduce_poly(c: &[GaussianRational], p: u64) -> Option<Vec<F2>> {
    let mut out = Vec::with_capacity(c.len());
    for g in c {
        out.push(F2 {
            re: reduce_ratio(&g.re, p)?,
            im: reduce_ratio(&g.im, p)?,
        });
    }
    // the leading coefficient must survive reduction
    if out.last().map(|l| l.is_zero()).unwrap_or(true) {
        return None;
    }
    Some(out)
}

/// Rational reconstruction of `c mod m`: the unique fraction with numerator
/// and denominator below sqrt(m/2), if it exists.
fn rat_reconstruct(c: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let mut r0 = m.clone();
    let mut r1 = c.mod_floor(m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() {
        return None;
    }
    let (mut n, mut d) = (r1, t1);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    if d > bound || n.gcd(&d) != BigInt::one() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Exact division check: does monic `g` divide `a` with zero remainder?
fn divides(a: &[GaussianRational], g: &[GaussianRational]) -> bool {
    let mut rem: Vec<GaussianRational> = a.to_vec();
    let dg = g.len() - 1;
    while rem.len() > dg {
        let lead = rem.last().unwrap().clone();
        let shift = rem.len() - 1 - dg;
        if !lead.is_zero() {
            for (i, c) in g.iter().enumerate() {
                let s = c * &lead;
                rem[i + shift] = &rem[i + shift] - &s;
            }
        }
        rem.pop();
    }
    rem.iter().all(|c| c.is_zero())
}

/// Monic gcd of two univariate polynomials over the Gaussian rationals,
/// coefficients low to high, both nonzero. `None` means the modular
/// search was inconclusive and the caller should use the exact algorithm.
pub fn unigcd(a: &[GaussianRational], b: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
    debug_assert!(!a.last().unwrap().is_zero() && !b.last().unwrap().is_zero());
    let mut best_deg = usize::MAX;
    // accumulated CRT state: modulus and per-coefficient residues (re, im)
    let mut modulus = BigInt::one();
    let mut residues: Vec<(BigInt, BigInt)> = Vec::new();
    for &p in PRIMES.iter() {
        let (ap, bp) = match (reduce_poly(a, p), reduce_poly(b, p)) {
            (Some(x), Some(y)) => (x, y),
            _ => continue,
        };
        let g = gcd_fp2(ap, bp, p);
        let deg = g.len().saturating_sub(1);
        if g.len() <= 1 {
            // coprime image certifies a trivial gcd
            return Some(vec![GaussianRational::one()]);
        }
        if deg > best_deg {
            continue; // unlucky prime with an inflated image
        }
        if deg < best_deg {
            best_deg = deg;
            modulus = BigInt::one();
            residues = vec![(BigInt::zero(), BigInt::zero()); deg + 1];
        }
        // CRT-combine this image into the accumulated residues
        let bp_big = BigInt::from(p);
        let minv = {
            let m_mod = modulus.mod_floor(&bp_big);
            use num::ToPrimitive;
            let m64 = m_mod.to_u64().unwrap();
            if m64 == 0 {
                continue; // cannot happen: primes are distinct
            }
            invp(m64, p)
        };
        for (slot, c) in residues.iter_mut().zip(g.iter()) {
            for (acc, v) in [(&mut slot.0, c.re), (&mut slot.1, c.im)] {
                use num::ToPrimitive;
                let cur = acc.mod_floor(&bp_big).to_u64().unwrap();
                let diff = mulp(subp(v, cur, p), minv, p);
                *acc = &*acc + &modulus * BigInt::from(diff);
            }
        }
        modulus *= &bp_big;
        // try to lift and certify
        let mut lifted = Vec::with_capacity(residues.len());
        let mut ok = true;
        for (re, im) in &residues {
            match (
                rat_reconstruct(re, &modulus),
                rat_reconstruct(im, &modulus),
            ) {
                (Some(r), Some(i)) => lifted.push(GaussianRational::new(r, i)),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        if lifted.last().map(|l| l.is_one()).unwrap_or(false)
            && divides(a, &lifted)
            && divides(b, &lifted)
        {
            return Some(lifted);
        }
    }
    None
}

/// Scalar power in GF(p).
fn powp(mut b: u64, mut e: u32, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulp(acc, b, p);
        }
        b = mulp(b, b, p);
        e >>= 1;
    }
    acc
}

/// Quotient of `a` by a monic divisor `b` in GF(p^2)[t]; also leaves the
/// remainder in `a`.
fn divmod_fp2(a: &mut Vec<F2>, b: &[F2], p: u64) -> Vec<F2> {
    debug_assert!(b.last().map(|l| l.re == 1 && l.im == 0).unwrap_or(false));
    if a.len() < b.len() {
        return Vec::new();
    }
    let mut q = vec![F2 { re: 0, im: 0 }; a.len() - b.len() + 1];
    while a.len() >= b.len() {
        let lead = *a.last().unwrap();
        let shift = a.len() - b.len();
        if !lead.is_zero() {
            q[shift] = lead;
            // the divisor is monic, so the top term cancels exactly
            for (i, c) in b.iter().enumerate().take(b.len() - 1) {
                a[i + shift] = f2_sub(a[i + shift], f2_mul(*c, lead, p), p);
            }
        }
        a.pop();
    }
    trim(a);
    q
}

fn eval_fp2(c: &[F2], t: u64, p: u64) -> F2 {
    let mut acc = F2 { re: 0, im: 0 };
    let tt = F2 { re: t, im: 0 };
    for v in c.iter().rev() {
        acc = f2_add(f2_mul(acc, tt, p), *v, p);
    }
    acc
}

fn f2_add(a: F2, b: F2, p: u64) -> F2 {
    F2 {
        re: addp(a.re, b.re, p),
        im: addp(a.im, b.im, p),
    }
}

/// Newton interpolation in GF(p^2)[t] through the given nodes.
fn interpolate_fp2(ts: &[u64], ys: &[F2], p: u64) -> Vec<F2> {
    let n = ts.len();
    // divided differences
    let mut dd: Vec<F2> = ys.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            let denom = subp(ts[k], ts[k - level], p);
            let dinv = f2_inv(F2 { re: denom, im: 0 }, p);
            dd[k] = f2_mul(f2_sub(dd[k], dd[k - 1], p), dinv, p);
        }
    }
    // expand the Newton form
    let mut out = vec![dd[n - 1]];
    for k in (0..n - 1).rev() {
        // out = out * (t - ts[k]) + dd[k]
        let neg = F2 {
            re: subp(0, ts[k], p),
            im: 0,
        };
        let mut next = vec![F2 { re: 0, im: 0 }; out.len() + 1];
        for (i, c) in out.iter().enumerate() {
            next[i + 1] = f2_add(next[i + 1], *c, p);
            next[i] = f2_add(next[i], f2_mul(*c, neg, p), p);
        }
        next[0] = f2_add(next[0], dd[k], p);
        out = next;
    }
    trim(&mut out);
    out
}

/// Reduce `poly` mod p as a dense array indexed `[v-degree][w-degree]`,
/// failing if any denominator or the v-leading slice vanishes mod p.
fn reduce_biv(poly: &MultiPoly, v: Var, w: Var, p: u64) -> Option<Vec<Vec<F2>>> {
    let dv = poly.degree(v).unwrap_or(0) as usize;
    let dw = poly.degree(w).unwrap_or(0) as usize;
    let mut out = vec![vec![F2 { re: 0, im: 0 }; dw + 1]; dv + 1];
    for (m, c) in &poly.terms {
        let f = F2 {
            re: reduce_ratio(&c.re, p)?,
            im: reduce_ratio(&c.im, p)?,
        };
        let (i, j) = (m.0[v as usize] as usize, m.0[w as usize] as usize);
        out[i][j] = f2_add(out[i][j], f, p);
    }
    if out[dv].iter().all(|c| c.is_zero()) {
        return None;
    }
    Some(out)
}

fn biv_deg_w(b: &[Vec<F2>]) -> usize {
    let mut d = 0;
    for row in b {
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() && j > d {
                d = j;
            }
        }
    }
    d
}

/// Evaluate each v-slice at w = t, returning a univariate poly in v.
fn eval_biv(b: &[Vec<F2>], t: u64, p: u64) -> Vec<F2> {
    let mut out: Vec<F2> = b.iter().map(|row| eval_fp2(row, t, p)).collect();
    trim(&mut out);
    out
}

fn lead_slice(b: &[Vec<F2>]) -> Vec<F2> {
    let mut l = b.last().unwrap().clone();
    trim(&mut l);
    l
}

/// One prime's image of the bivariate gcd, in the canonical normalization
/// (primitive in v, top scalar 1). `Err(())` marks an unusable prime;
/// `Ok(None)` certifies coprime inputs.
#[allow(clippy::type_complexity)]
fn biv_image(
    a: &MultiPoly,
    b: &MultiPoly,
    v: Var,
    w: Var,
    p: u64,
) -> Result<Option<Vec<Vec<F2>>>, ()> {
    let pa = reduce_biv(a, v, w, p).ok_or(())?;
    let pb = reduce_biv(b, v, w, p).ok_or(())?;
    let gamma = gcd_fp2(lead_slice(&pa), lead_slice(&pb), p);
    let budget = gamma.len() + biv_deg_w(&pa).min(biv_deg_w(&pb));
    let mut ts: Vec<u64> = Vec::new();
    let mut images: Vec<Vec<F2>> = Vec::new();
    let mut degv = usize::MAX;
    let mut t = 0u64;
    while ts.len() < budget {
        if t > budget as u64 + 60 {
            return Err(()); // too many degenerate evaluation points
        }
        let cur = t;
        t += 1;
        let at = eval_biv(&pa, cur, p);
        let bt = eval_biv(&pb, cur, p);
        if at.len() != pa.len() || bt.len() != pb.len() {
            continue; // a leading coefficient vanished here
        }
        let g = gcd_fp2(at, bt, p);
        let d = g.len() - 1;
        if d == 0 {
            return Ok(None);
        }
        if d > degv {
            continue; // unlucky evaluation point
        }
        if d < degv {
            degv = d;
            ts.clear();
            images.clear();
        }
        let scale = eval_fp2(&gamma, cur, p);
        ts.push(cur);
        images.push(g.into_iter().map(|c| f2_mul(c, scale, p)).collect());
    }
    // interpolate each v-coefficient as a polynomial in w
    let mut cand: Vec<Vec<F2>> = Vec::with_capacity(degv + 1);
    for i in 0..=degv {
        let ys: Vec<F2> = images.iter().map(|img| img[i]).collect();
        cand.push(interpolate_fp2(&ts, &ys, p));
    }
    // primitive part in v
    let mut content: Vec<F2> = Vec::new();
    for row in &cand {
        let mut r = row.clone();
        trim(&mut r);
        if r.is_empty() {
            continue;
        }
        content = if content.is_empty() {
            let linv = f2_inv(*r.last().unwrap(), p);
            r.iter().map(|c| f2_mul(*c, linv, p)).collect()
        } else {
            gcd_fp2(content, r, p)
        };
        if content.len() == 1 {
            break;
        }
    }
    if content.len() > 1 {
        for row in cand.iter_mut() {
            let mut r = std::mem::take(row);
            trim(&mut r);
            if r.is_empty() {
                continue;
            }
            let q = divmod_fp2(&mut r, &content, p);
            debug_assert!(r.is_empty());
            *row = q;
        }
    }
    // canonical scaling: top scalar of the v-leading slice becomes 1
    let mut top = cand[degv].clone();
    trim(&mut top);
    let linv = f2_inv(*top.last().ok_or(())?, p);
    for row in cand.iter_mut() {
        for c in row.iter_mut() {
            *c = f2_mul(*c, linv, p);
        }
        trim(row);
    }
    Ok(Some(cand))
}

/// Modular gcd of two bivariate polynomials in `v` (main) and `w`, both
/// primitive in `v`. Returns the gcd of the primitive parts, or `None` if
/// the modular search was inconclusive.
pub fn bigcd(a: &MultiPoly, b: &MultiPoly, v: Var, w: Var) -> Option<MultiPoly> {
    let mut best_degv = usize::MAX;
    let mut modulus = BigInt::one();
    let mut residues: Vec<Vec<(BigInt, BigInt)>> = Vec::new();
    for &p in PRIMES.iter() {
        let cand = match biv_image(a, b, v, w, p) {
            Ok(Some(c)) => c,
            Ok(None) => return Some(MultiPoly::one()),
            Err(()) => continue,
        };
        let degv = cand.len() - 1;
        if degv > best_degv {
            continue;
        }
        if degv < best_degv {
            best_degv = degv;
            modulus = BigInt::one();
            residues = vec![Vec::new(); degv + 1];
        }
        let bp_big = BigInt::from(p);
        let minv = {
            use num::ToPrimitive;
            let m64 = modulus.mod_floor(&bp_big).to_u64().unwrap();
            invp(m64, p)
        };
        for (slot_row, crow) in residues.iter_mut().zip(cand.iter()) {
            while slot_row.len() < crow.len() {
                slot_row.push((BigInt::zero(), BigInt::zero()));
            }
            for (j, slot) in slot_row.iter_mut().enumerate() {
                let c = crow.get(j).copied().unwrap_or(F2 { re: 0, im: 0 });
                for (acc, val) in [(&mut slot.0, c.re), (&mut slot.1, c.im)] {
                    use num::ToPrimitive;
                    let cur = acc.mod_floor(&bp_big).to_u64().unwrap();
                    let diff = mulp(subp(val, cur, p), minv, p);
                    *acc = &*acc + &modulus * BigInt::from(diff);
                }
            }
        }
        modulus *= &bp_big;
        // lift and certify
        let mut vcoeffs: Vec<MultiPoly> = Vec::with_capacity(residues.len());
        let mut ok = true;
        'lift: for row in &residues {
            let mut scalars = Vec::with_capacity(row.len());
            for (re, im) in row {
                match (
                    rat_reconstruct(re, &modulus),
                    rat_reconstruct(im, &modulus),
                ) {
                    (Some(r), Some(i)) => scalars.push(GaussianRational::new(r, i)),
                    _ => {
                        ok = false;
                        break 'lift;
                    }
                }
            }
            let wpolys: Vec<MultiPoly> =
                scalars.into_iter().map(MultiPoly::constant).collect();
            vcoeffs.push(MultiPoly::from_coeffs_in(w, &wpolys));
        }
        if !ok {
            continue;
        }
        let g = MultiPoly::from_coeffs_in(v, &vcoeffs);
        if !g.is_zero() && a.try_div(&g).is_some() && b.try_div(&g).is_some() {
            return Some(g);
        }
    }
    None
}

/// Certify that two polynomials, each primitive in `v`, are coprime: if a
/// random specialization of the other variables preserves both v-degrees
/// and yields a constant univariate gcd mod p, the gcd is free of `v`, and
/// primitivity then forces it to be 1. Failure to certify proves nothing.
pub fn coprime_certificate(a: &MultiPoly, b: &MultiPoly, v: Var) -> bool {
    let p = PRIMES[0];
    for attempt in 0..6u64 {
        let mut assign = [0u64; NVARS];
        for (i, slot) in assign.iter_mut().enumerate() {
            *slot = 3 + 5 * attempt + 17 * i as u64;
        }
        let (sa, sb) = match (
            specialize(a, v, &assign, p),
            specialize(b, v, &assign, p),
        ) {
            (Some(x), Some(y)) => (x, y),
            _ => return false, // a denominator vanished mod p
        };
        if sa.len() != a.degree(v).unwrap_or(0) as usize + 1
            || sb.len() != b.degree(v).unwrap_or(0) as usize + 1
        {
            continue; // degenerate point, try another
        }
        return gcd_fp2(sa, sb, p).len() == 1;
    }
    false
}

/// Reduce mod p and substitute `assign` for every variable except `v`.
fn specialize(poly: &MultiPoly, v: Var, assign: &[u64; NVARS], p: u64) -> Option<Vec<F2>> {
    let dv = poly.degree(v).unwrap_or(0) as usize;
    let mut out = vec![F2 { re: 0, im: 0 }; dv + 1];
    for (m, c) in &poly.terms {
        let mut f = F2 {
            re: reduce_ratio(&c.re, p)?,
            im: reduce_ratio(&c.im, p)?,
        };
        for (i, &e) in m.0.iter().enumerate() {
            if i != v as usize && e > 0 {
                let s = powp(assign[i], e as u32, p);
                f = F2 {
                    re: mulp(f.re, s, p),
                    im: mulp(f.im, s, p),
                };
            }
        }
        let i = m.0[v as usize] as usize;
        out[i] = f2_add(out[i], f, p);
    }
    trim(&mut out);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(p: i64, q: i64) -> GaussianRational {
        GaussianRational::from_ratio(p, q)
    }

    fn mul_poly(a: &[GaussianRational], b: &[GaussianRational]) -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        out
    }

    #[test]
    fn coprime_detected() {
        // t + 1 and t + 2
        let a = vec![gr(1, 1), gr(1, 1)];
        let b = vec![gr(2, 1), gr(1, 1)];
        assert_eq!(unigcd(&a, &b).unwrap(), vec![GaussianRational::one()]);
    }

    #[test]
    fn shared_factor_recovered() {
        // common factor t - 3/7, cofactors t + 1/2 and t^2 + i
        let f = vec![gr(-3, 7), gr(1, 1)];
        let a = mul_poly(&f, &[gr(1, 2), gr(1, 1)]);
        let b = mul_poly(&f, &[GaussianRational::i(), gr(0, 1), gr(1, 1)]);
        let g = unigcd(&a, &b).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn repeated_factor() {
        let f = vec![gr(1, 3), gr(1, 1)];
        let f2 = mul_poly(&f, &f);
        let a = mul_poly(&f2, &[gr(5, 1), gr(1, 1)]);
        let b = mul_poly(&f2, &[gr(-1, 1), gr(1, 1)]);
        assert_eq!(unigcd(&a, &b).unwrap(), f2);
    }

    #[test]
    fn bivariate_shared_factor() {
        use crate::multipoly::Var;
        let x = MultiPoly::var(Var::X);
        let u = MultiPoly::var(Var::U);
        // factor (x^2 + (3/2) u x + i), cofactors coprime in x
        let f = x
            .mul(&x)
            .add(&u.mul(&x).scalar_mul(&gr(3, 2)))
            .add(&MultiPoly::constant(GaussianRational::i()));
        let a = f.mul(&x.add(&u));
        let b = f.mul(&x.sub(&u).add(&MultiPoly::one()));
        let g = bigcd(&a, &b, Var::X, Var::U).unwrap();
        assert!(f.try_div(&g).is_some() && g.try_div(&f).is_some());
    }

    #[test]
    fn bivariate_coprime() {
        use crate::multipoly::Var;
        let x = MultiPoly::var(Var::X);
        let u = MultiPoly::var(Var::U);
        let a = x.mul(&x).add(&u);
        let b = x.add(&u.mul(&u)).add(&MultiPoly::one());
        assert_eq!(bigcd(&a, &b, Var::X, Var::U).unwrap(), MultiPoly::one());
        assert!(coprime_certificate(&a, &b, Var::X));
    }

    #[test]
    fn big_coefficients() {
        // coefficients far beyond one machine word
        let huge = GaussianRational::new(
            BigRational::new(BigInt::from(10).pow(40) + 1, BigInt::from(3)),
            BigRational::new(BigInt::from(7), BigInt::from(10).pow(35)),
        );
        let f = vec![huge.clone(), gr(1, 1)];
        let a = mul_poly(&f, &[gr(1, 1), gr(2, 1), gr(1, 1)]);
        let b = mul_poly(&f, &[gr(4, 1), gr(1, 1)]);
        let g = unigcd(&a, &b).unwrap();
        assert_eq!(g, f);
    }
}
