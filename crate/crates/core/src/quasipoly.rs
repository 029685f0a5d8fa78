//! Quasi-polynomials `sum_lambda p_lambda(x) e^{lambda x}`, their Wronskians,
//! derivative-chain kernel families, and conversion into the `(x, u)`
//! polynomial world with `u = e^{-x}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::matrix::Matrix;
use crate::multipoly::{Monomial, MultiPoly, Var};
use crate::ring::Ring;
use crate::scalar::GaussianRational;
use crate::spectral::SpectralData;
use crate::unipoly::UniPoly;

/// Finite sum of `p_lambda(x) e^{lambda x}` with pairwise distinct exponents
/// and no zero parts.
#[derive(Clone, PartialEq, Debug)]
pub struct QuasiPoly {
    parts: BTreeMap<GaussianRational, UniPoly>,
}

fn binomial(k: usize, l: usize) -> GaussianRational {
    if l > k {
        return GaussianRational::zero();
    }
    let mut acc = GaussianRational::one();
    for i in 0..l {
        acc = &acc * &GaussianRational::from_int((k - i) as i64);
        acc = &acc / &GaussianRational::from_int((i + 1) as i64);
    }
    acc
}

impl QuasiPoly {
    pub fn zero() -> Self {
        QuasiPoly {
            parts: BTreeMap::new(),
        }
    }

    /// `p(x) e^{lambda x}`.
    pub fn exp_term(lambda: GaussianRational, poly: UniPoly) -> Self {
        let mut parts = BTreeMap::new();
        if !poly.is_zero() {
            parts.insert(lambda, poly);
        }
        QuasiPoly { parts }
    }

    /// `x^k e^{lambda x}`.
    pub fn monomial(lambda: GaussianRational, k: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = GaussianRational::one();
        Self::exp_term(lambda, UniPoly::new(coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (&GaussianRational, &UniPoly)> {
        self.parts.iter()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    fn add_part(&mut self, lambda: GaussianRational, poly: UniPoly) {
        if poly.is_zero() {
            return;
        }
        match self.parts.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(poly);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&poly);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &QuasiPoly) -> QuasiPoly {
        let mut out = self.clone();
        for (l, p) in &rhs.parts {
            out.add_part(l.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &QuasiPoly) -> QuasiPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> QuasiPoly {
        QuasiPoly {
            parts: self.parts.iter().map(|(l, p)| (l.clone(), p.neg())).collect(),
        }
    }

    pub fn scalar_mul(&self, c: &GaussianRational) -> QuasiPoly {
        if c.is_zero() {
            return QuasiPoly::zero();
        }
        QuasiPoly {
            parts: self
                .parts
                .iter()
                .map(|(l, p)| (l.clone(), p.scalar_mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &QuasiPoly) -> QuasiPoly {
        let mut out = QuasiPoly::zero();
        for (la, pa) in &self.parts {
            for (lb, pb) in &rhs.parts {
                out.add_part(la + lb, pa.mul(pb));
            }
        }
        out
    }

    /// d/dx: each part `p e^{lambda x}` maps to `(p' + lambda p) e^{lambda x}`.
    pub fn derivative(&self) -> QuasiPoly {
        let mut out = QuasiPoly::zero();
        for (l, p) in &self.parts {
            out.add_part(l.clone(), p.derivative().add(&p.scalar_mul(l)));
        }
        out
    }

    /// Differentiate the polynomial parts only, keeping every `e^{lambda x}`
    /// fixed.
    pub fn lowering(&self) -> QuasiPoly {
        let mut out = QuasiPoly::zero();
        for (l, p) in &self.parts {
            out.add_part(l.clone(), p.derivative());
        }
        out
    }

    /// Apply a constant-coefficient operator `h(d/dx)`.
    pub fn apply_const_op(&self, h: &UniPoly) -> QuasiPoly {
        let mut out = QuasiPoly::zero();
        let mut d = self.clone();
        for (k, c) in h.coeffs.iter().enumerate() {
            if k > 0 {
                d = d.derivative();
            }
            out = out.add(&d.scalar_mul(c));
        }
        out
    }

    /// Multiply by a polynomial in `x` and `u = e^{-x}`: the `u^m` monomials
    /// shift exponents down by `m`.
    pub fn mul_xu_poly(&self, p: &MultiPoly) -> Result<QuasiPoly, Error> {
        let mut out = QuasiPoly::zero();
        for (m, c) in &p.terms {
            for v in [Var::W, Var::Z, Var::N, Var::Y, Var::S] {
                if m.0[v as usize] > 0 {
                    return Err(Error::Invalid(
                        "polynomial multiplier must involve only x and u".into(),
                    ));
                }
            }
            let xe = m.0[Var::X as usize] as usize;
            let ue = m.0[Var::U as usize] as i64;
            let mut xpoly = vec![GaussianRational::zero(); xe + 1];
            xpoly[xe] = c.clone();
            let xpoly = UniPoly::new(xpoly);
            for (l, part) in &self.parts {
                out.add_part(l - &GaussianRational::from_int(ue), part.mul(&xpoly));
            }
        }
        Ok(out)
    }

    /// Write `self = e^{mu x} p(x, u)` where `mu` is the maximal exponent.
    /// Errors unless all exponents lie on `mu - Z_{>=0}`.
    pub fn factor_base_exponent(&self) -> Result<(GaussianRational, MultiPoly), Error> {
        if self.is_zero() {
            return Ok((GaussianRational::zero(), MultiPoly::zero()));
        }
        let mu = self
            .parts
            .keys()
            .max_by(|a, b| a.re.cmp(&b.re))
            .unwrap()
            .clone();
        self.factor_with_exponent(&mu)
    }

    /// Like `factor_base_exponent` with a caller-chosen base exponent; every
    /// exponent must lie on `mu - Z_{>=0}`.
    pub fn factor_with_exponent(
        &self,
        mu: &GaussianRational,
    ) -> Result<(GaussianRational, MultiPoly), Error> {
        let mut out = MultiPoly::zero();
        for (l, p) in &self.parts {
            let gap = mu - l;
            let shift = gap.to_i64().ok_or(Error::MixedLattice)?;
            if shift < 0 {
                return Err(Error::MixedLattice);
            }
            for (k, c) in p.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut mono = Monomial::unit();
                mono.0[Var::X as usize] = k as u16;
                mono.0[Var::U as usize] = shift as u16;
                out.add_term(mono, c.clone());
            }
        }
        Ok((mu.clone(), out))
    }

    /// Reconstruct from `(mu, p(x, u))`.
    pub fn from_factored(mu: &GaussianRational, p: &MultiPoly) -> Result<QuasiPoly, Error> {
        QuasiPoly::exp_term(mu.clone(), UniPoly::one()).mul_xu_poly(p)
    }

    /// Coordinates with respect to `data.kernel_monomials()`; errors when the
    /// function does not lie in `ker h`.
    pub fn coordinates(&self, data: &SpectralData) -> Result<Vec<GaussianRational>, Error> {
        let monos = data.kernel_monomials();
        let mut coords = vec![GaussianRational::zero(); monos.len()];
        let mut seen = vec![false; monos.len()];
        for (l, p) in &self.parts {
            for (k, c) in p.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let pos = monos.iter().position(|m| {
                    m.k == k && data.exponent(m.r, m.j) == *l
                });
                match pos {
                    Some(i) => {
                        coords[i] = c.clone();
                        seen[i] = true;
                    }
                    None => return Err(Error::NotInKernel),
                }
            }
        }
        let _ = seen;
        Ok(coords)
    }

    pub fn from_coordinates(data: &SpectralData, coords: &[GaussianRational]) -> QuasiPoly {
        let monos = data.kernel_monomials();
        assert_eq!(coords.len(), monos.len());
        let mut out = QuasiPoly::zero();
        for (m, c) in monos.iter().zip(coords) {
            if !c.is_zero() {
                out = out.add(&QuasiPoly::monomial(data.exponent(m.r, m.j), m.k).scalar_mul(c));
            }
        }
        out
    }
}

impl Ring for QuasiPoly {
    fn zero() -> Self {
        QuasiPoly::zero()
    }
    fn one() -> Self {
        QuasiPoly::exp_term(GaussianRational::zero(), UniPoly::one())
    }
    fn add(&self, rhs: &Self) -> Self {
        QuasiPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        QuasiPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        QuasiPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        QuasiPoly::neg(self)
    }
    fn is_zero(&self) -> bool {
        QuasiPoly::is_zero(self)
    }
}

impl fmt::Display for QuasiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, p) in self.parts.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{p}]*e^(({l})x)")?;
        }
        Ok(())
    }
}

/// Wronski determinant of a nonempty list of quasi-polynomials.
pub fn wronskian(fs: &[QuasiPoly]) -> QuasiPoly {
    assert!(!fs.is_empty());
    let k = fs.len();
    let mut rows: Vec<Vec<QuasiPoly>> = vec![fs.to_vec()];
    for i in 1..k {
        rows.push(rows[i - 1].iter().map(|f| f.derivative()).collect());
    }
    let m = Matrix::from_fn(k, k, |i, j| rows[i][j].clone());
    m.det_cofactor().unwrap()
}

/// One term `c_{r,k,j} y^k e^{(lambda_r - j) x}` of a kernel chain.
#[derive(Clone, PartialEq, Debug)]
pub struct ChainTerm {
    pub k: usize,
    pub j: usize,
    pub coeff: GaussianRational,
}

/// A derivative-chain specification inside one exponent group `r`.
#[derive(Clone, PartialEq, Debug)]
pub struct KernelChainSpec {
    pub r: usize,
    pub terms: Vec<ChainTerm>,
}

impl KernelChainSpec {
    /// Chain depth: largest `k` with a nonzero coefficient.
    pub fn depth(&self) -> usize {
        self.terms
            .iter()
            .filter(|t| !t.coeff.is_zero())
            .map(|t| t.k)
            .max()
            .unwrap_or(0)
    }
}

/// Expand a chain into the family `l = 0, ..., l_0` obtained by formal
/// differentiation in the auxiliary variable and substitution back to `x`:
/// the `y^k` monomial contributes `C(k, l) x^{k-l}` at level `l`.
pub fn chain_expand(
    spec: &KernelChainSpec,
    data: &SpectralData,
) -> Result<Vec<QuasiPoly>, Error> {
    if spec.r >= data.groups.len() {
        return Err(Error::IndexOutOfRange(format!("group index {}", spec.r)));
    }
    let group = &data.groups[spec.r];
    for t in &spec.terms {
        if t.j >= group.mults.len() || t.k >= group.mults[t.j] {
            return Err(Error::IndexOutOfRange(format!(
                "term (k={}, j={}) exceeds multiplicities of group {}",
                t.k, t.j, spec.r
            )));
        }
    }
    if spec.terms.iter().all(|t| t.coeff.is_zero()) {
        return Ok(vec![]);
    }
    let l0 = spec.depth();
    let mut out = Vec::with_capacity(l0 + 1);
    for l in 0..=l0 {
        let mut f = QuasiPoly::zero();
        for t in &spec.terms {
            if t.coeff.is_zero() || t.k < l {
                continue;
            }
            let c = &t.coeff * &binomial(t.k, l);
            f = f.add(&QuasiPoly::monomial(data.exponent(spec.r, t.j), t.k - l).scalar_mul(&c));
        }
        out.push(f);
    }
    Ok(out)
}

/// Decide whether `num / den` is a rational function of `e^{-x}` alone, by
/// solving for polynomials `A(u), B(u)` of bounded degree with
/// `num * B = den * A`. `den` must be nonzero.
pub fn ratio_is_rational_in_u(num: &QuasiPoly, den: &QuasiPoly) -> bool {
    assert!(!den.is_zero());
    if num.is_zero() {
        return true;
    }
    let diameter = |q: &QuasiPoly| -> i64 {
        use num::ToPrimitive;
        let re_min = q.parts.keys().map(|l| l.re.clone()).min().unwrap();
        let re_max = q.parts.keys().map(|l| l.re.clone()).max().unwrap();
        ((re_max - re_min).ceil()).to_integer().to_i64().unwrap_or(0)
    };
    let bound = (diameter(num) + diameter(den) + 2) as usize;

    // Unknowns: a_0..a_bound, b_0..b_bound. Equation per monomial
    // (exponent, x-power) of num*u^m and den*u^m.
    let mut monomial_index: BTreeMap<(GaussianRational, usize), usize> = BTreeMap::new();
    let mut columns: Vec<BTreeMap<usize, GaussianRational>> = Vec::new();
    let column_of = |q: &QuasiPoly,
                         shift: i64,
                         sign: bool,
                         monomial_index: &mut BTreeMap<(GaussianRational, usize), usize>|
     -> BTreeMap<usize, GaussianRational> {
        let mut col = BTreeMap::new();
        for (l, p) in &q.parts {
            let le = l - &GaussianRational::from_int(shift);
            for (k, c) in p.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let next = monomial_index.len();
                let idx = *monomial_index.entry((le.clone(), k)).or_insert(next);
                let v = if sign { c.clone() } else { -c };
                col.insert(idx, v);
            }
        }
        col
    };
    for m in 0..=bound {
        // coefficient of a_m: -den * u^m
        columns.push(column_of(den, m as i64, false, &mut monomial_index));
    }
    for m in 0..=bound {
        // coefficient of b_m: +num * u^m
        columns.push(column_of(num, m as i64, true, &mut monomial_index));
    }
    let nrows = monomial_index.len();
    let ncols = columns.len();
    let mat = Matrix::from_fn(nrows, ncols, |i, j| {
        columns[j]
            .get(&i)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    });
    let null = mat.nullspace();
    // need some null vector whose B-part (second half) is nonzero
    null.iter()
        .any(|v| v[bound + 1..].iter().any(|c| !c.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::SpectralGroup;

    fn lam(p: i64, q: i64) -> GaussianRational {
        GaussianRational::from_ratio(p, q)
    }

    #[test]
    fn derivative_basic() {
        // d/dx (x e^{lx}) = (1 + l x) e^{lx}
        let l = lam(1, 2);
        let f = QuasiPoly::monomial(l.clone(), 1);
        let d = f.derivative();
        let expect = QuasiPoly::exp_term(
            l.clone(),
            UniPoly::new(vec![GaussianRational::one(), l.clone()]),
        );
        assert_eq!(d, expect);
        // d/dx of a constant is 0
        let c = QuasiPoly::monomial(GaussianRational::zero(), 0);
        assert!(c.derivative().is_zero());
    }

    #[test]
    fn derivative_product_rule() {
        let f = QuasiPoly::monomial(lam(1, 3), 2);
        let g = QuasiPoly::monomial(lam(-1, 2), 1).add(&QuasiPoly::monomial(lam(2, 1), 0));
        let lhs = f.mul(&g).derivative();
        let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn wronskian_two_exponentials() {
        // Wr(e^{ax}, e^{bx}) = (b - a) e^{(a+b)x}
        let a = lam(1, 3);
        let b = lam(5, 2);
        let w = wronskian(&[
            QuasiPoly::monomial(a.clone(), 0),
            QuasiPoly::monomial(b.clone(), 0),
        ]);
        let expect =
            QuasiPoly::exp_term(&a + &b, UniPoly::constant(&b - &a));
        assert_eq!(w, expect);
        // single entry
        let f = QuasiPoly::monomial(a.clone(), 3);
        assert_eq!(wronskian(&[f.clone()]), f);
        // repeated entry
        assert!(wronskian(&[f.clone(), f]).is_zero());
    }

    #[test]
    fn lowering_kills_constants() {
        let l = lam(2, 1);
        let f = QuasiPoly::monomial(l.clone(), 2);
        assert_eq!(f.lowering(), QuasiPoly::monomial(l.clone(), 1).scalar_mul(&GaussianRational::from_int(2)));
        assert!(QuasiPoly::monomial(l.clone(), 0).lowering().is_zero());
        let mut g = QuasiPoly::monomial(l, 2);
        for _ in 0..3 {
            g = g.lowering();
        }
        assert!(g.is_zero());
    }

    #[test]
    fn factor_roundtrip() {
        let c = lam(1, 2);
        let a = GaussianRational::from_int(3);
        // e^{cx} - a e^{(c-1)x} -> (c, 1 - a u)
        let f = QuasiPoly::monomial(c.clone(), 0)
            .sub(&QuasiPoly::monomial(&c - &GaussianRational::one(), 0).scalar_mul(&a));
        let (mu, p) = f.factor_base_exponent().unwrap();
        assert_eq!(mu, c);
        let expect = MultiPoly::one().sub(&MultiPoly::var(Var::U).scalar_mul(&a));
        assert_eq!(p, expect);
        assert_eq!(QuasiPoly::from_factored(&mu, &p).unwrap(), f);
        // x e^{lx} -> (l, x)
        let g = QuasiPoly::monomial(c.clone(), 1);
        let (mu2, p2) = g.factor_base_exponent().unwrap();
        assert_eq!(mu2, c);
        assert_eq!(p2, MultiPoly::var(Var::X));
        // mixed lattice errors
        let bad = QuasiPoly::monomial(lam(0, 1), 0).add(&QuasiPoly::monomial(lam(1, 2), 0));
        assert!(bad.factor_base_exponent().is_err());
    }

    #[test]
    fn chain_expansion_and_lowering_identity() {
        // F = y e^{lx} - a e^{(l-1)x}: expands to
        // [x e^{lx} - a e^{(l-1)x}, e^{lx}]
        let l = lam(1, 3);
        let a = GaussianRational::from_int(2);
        let data = SpectralData::new(vec![SpectralGroup {
            lambda: l.clone(),
            mults: vec![2, 1],
        }])
        .unwrap();
        let spec = KernelChainSpec {
            r: 0,
            terms: vec![
                ChainTerm {
                    k: 1,
                    j: 0,
                    coeff: GaussianRational::one(),
                },
                ChainTerm {
                    k: 0,
                    j: 1,
                    coeff: -&a,
                },
            ],
        };
        let fam = chain_expand(&spec, &data).unwrap();
        assert_eq!(fam.len(), 2);
        let psi0 = QuasiPoly::monomial(l.clone(), 1)
            .sub(&QuasiPoly::monomial(&l - &GaussianRational::one(), 0).scalar_mul(&a));
        let psi1 = QuasiPoly::monomial(l.clone(), 0);
        assert_eq!(fam[0], psi0);
        assert_eq!(fam[1], psi1);
        // each annihilated by h = (D-l)^2 (D-l+1)
        let h = data.h();
        for f in &fam {
            assert!(f.apply_const_op(&h).is_zero());
        }
        // lowering(psi_l) = (l+1) psi_{l+1}
        assert_eq!(fam[0].lowering(), fam[1].scalar_mul(&GaussianRational::one()));
        // out-of-range index errors
        let bad = KernelChainSpec {
            r: 0,
            terms: vec![ChainTerm {
                k: 5,
                j: 0,
                coeff: GaussianRational::one(),
            }],
        };
        assert!(chain_expand(&bad, &data).is_err());
        // constant chain
        let single = KernelChainSpec {
            r: 0,
            terms: vec![ChainTerm {
                k: 0,
                j: 0,
                coeff: GaussianRational::one(),
            }],
        };
        assert_eq!(
            chain_expand(&single, &data).unwrap(),
            vec![QuasiPoly::monomial(l.clone(), 0)]
        );
    }

    #[test]
    fn ratio_in_u_detection() {
        let l = lam(1, 2);
        let mu = lam(1, 5);
        // (e^{(l-1)x}) / (e^{lx}) = u: yes
        let n1 = QuasiPoly::monomial(&l - &GaussianRational::one(), 0);
        let d1 = QuasiPoly::monomial(l.clone(), 0);
        assert!(ratio_is_rational_in_u(&n1, &d1));
        // (x e^{lx}) / (e^{lx}) = x: no
        let n2 = QuasiPoly::monomial(l.clone(), 1);
        assert!(!ratio_is_rational_in_u(&n2, &d1));
        // mixed-lattice quotient: no
        let n3 = QuasiPoly::monomial(mu, 0);
        assert!(!ratio_is_rational_in_u(&n3, &d1));
        // zero numerator: yes
        assert!(ratio_is_rational_in_u(&QuasiPoly::zero(), &d1));
    }

    #[test]
    fn coordinates_roundtrip() {
        let data = SpectralData::new(vec![
            SpectralGroup {
                lambda: lam(1, 2),
                mults: vec![2, 1],
            },
            SpectralGroup {
                lambda: lam(1, 3),
                mults: vec![1],
            },
        ])
        .unwrap();
        let f = QuasiPoly::monomial(lam(1, 2), 1)
            .add(&QuasiPoly::monomial(lam(-1, 2), 0).scalar_mul(&GaussianRational::from_int(7)))
            .add(&QuasiPoly::monomial(lam(1, 3), 0));
        let coords = f.coordinates(&data).unwrap();
        assert_eq!(QuasiPoly::from_coordinates(&data, &coords), f);
        // not in kernel
        let g = QuasiPoly::monomial(lam(9, 4), 0);
        assert!(g.coordinates(&data).is_err());
    }
}
