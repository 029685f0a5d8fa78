//! Seeded random instance generators for the verification suite: kernel
//! specifications (both chain-closed and deliberately unstructured), matrix
//! pairs from the classical rank-one construction, and the independent
//! rationality oracle used to cross-check the classifier.

use crate::cm::CMPairRational;
use crate::error::Error;
use crate::matrix::Matrix;
use crate::quasipoly::{ratio_is_rational_in_u, ChainTerm, KernelChainSpec, QuasiPoly};
use crate::scalar::GaussianRational;
use crate::spectral::{SpectralData, SpectralGroup};
use rand::Rng;

fn small_int(rng: &mut impl Rng, lo: i64, hi: i64) -> i64 {
    rng.gen_range(lo..=hi)
}

/// A small Gaussian rational with denominators from the given pool; the
/// imaginary part appears with probability ~1/4.
pub fn random_scalar(rng: &mut impl Rng) -> GaussianRational {
    let dens = [1i64, 2, 3];
    let re = GaussianRational::from_ratio(small_int(rng, -6, 6), dens[rng.gen_range(0..dens.len())]);
    if rng.gen_range(0..4) == 0 {
        let im = GaussianRational::from_ratio(small_int(rng, -4, 4), dens[rng.gen_range(0..dens.len())]);
        &re + &(&GaussianRational::i() * &im)
    } else {
        re
    }
}

fn nonzero_scalar(rng: &mut impl Rng) -> GaussianRational {
    loop {
        let c = random_scalar(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Base exponents whose pairwise differences are never integers.
fn random_lambdas(rng: &mut impl Rng, count: usize) -> Vec<GaussianRational> {
    'outer: loop {
        let mut out: Vec<GaussianRational> = Vec::with_capacity(count);
        for _ in 0..count {
            let dens = [2i64, 3, 5, 7];
            let d = dens[rng.gen_range(0..dens.len())];
            let mut p = small_int(rng, -8, 8);
            if p % d == 0 {
                p += 1;
            }
            let mut l = GaussianRational::from_ratio(p, d);
            if rng.gen_range(0..5) == 0 {
                l = &l + &(&GaussianRational::i() * &GaussianRational::from_int(small_int(rng, 1, 2)));
            }
            if out.iter().any(|m| (&l - m).is_integer()) {
                continue 'outer;
            }
            out.push(l);
        }
        return out;
    }
}

/// A random kernel specification built from derivative chains, so that the
/// spanned space is closed under the lowering map by construction. The
/// expanded kernel has dimension between 1 and `max_dim`.
#[derive(Clone, Debug)]
pub struct TrigInstance {
    pub data: SpectralData,
    pub chains: Vec<KernelChainSpec>,
}

pub fn random_trig_instance(rng: &mut impl Rng, max_dim: usize) -> TrigInstance {
    loop {
        let ngroups = if max_dim >= 2 && rng.gen_bool(0.35) { 2 } else { 1 };
        let lambdas = random_lambdas(rng, ngroups);
        let mut groups = Vec::with_capacity(ngroups);
        for l in lambdas {
            let nj = rng.gen_range(1..=2usize);
            let mut mults = Vec::with_capacity(nj);
            for j in 0..nj {
                let lo = if j == 0 { 1 } else { 0 };
                mults.push(rng.gen_range(lo..=2usize));
            }
            groups.push(SpectralGroup { lambda: l, mults });
        }
        let Ok(data) = SpectralData::new(groups) else {
            continue;
        };
        let mut chains = Vec::new();
        let mut budget = max_dim;
        for (r, g) in data.groups.iter().enumerate() {
            if budget == 0 {
                break;
            }
            if r > 0 && rng.gen_bool(0.3) {
                continue;
            }
            // pick a depth the group can support and that fits the budget
            let kmax = g.mults.iter().copied().max().unwrap() - 1;
            let depth = rng.gen_range(0..=kmax.min(budget.saturating_sub(1)));
            let mut terms = Vec::new();
            for (j, &m) in g.mults.iter().enumerate() {
                for k in 0..m {
                    if k > depth {
                        continue;
                    }
                    let keep = k == depth || rng.gen_bool(0.5);
                    if keep {
                        terms.push(ChainTerm {
                            k,
                            j,
                            coeff: if k == depth {
                                nonzero_scalar(rng)
                            } else {
                                random_scalar(rng)
                            },
                        });
                    }
                }
            }
            if terms.iter().all(|t| t.coeff.is_zero()) {
                continue;
            }
            budget -= depth + 1;
            chains.push(KernelChainSpec { r, terms });
        }
        if chains.is_empty() {
            continue;
        }
        // reject candidates whose expansion is linearly dependent so the
        // instance always builds
        if crate::darboux::build_trig(&data, &chains).is_ok() {
            return TrigInstance { data, chains };
        }
    }
}

/// A random kernel basis inside the coordinate space of some spectral data,
/// with no closure structure imposed: roughly half the draws are chain
/// expansions (closed), the rest are unconstrained coordinate vectors that
/// usually break closure.
#[derive(Clone, Debug)]
pub struct MixedInstance {
    pub data: SpectralData,
    pub basis: Vec<QuasiPoly>,
}

pub fn random_mixed_instance(rng: &mut impl Rng, max_dim: usize) -> MixedInstance {
    if rng.gen_bool(0.5) {
        let t = random_trig_instance(rng, max_dim);
        let mut basis = Vec::new();
        for c in &t.chains {
            basis.extend(crate::quasipoly::chain_expand(&c, &t.data).unwrap());
        }
        return MixedInstance {
            data: t.data,
            basis,
        };
    }
    loop {
        let ngroups = rng.gen_range(1..=2usize);
        let lambdas = random_lambdas(rng, ngroups);
        let mut groups = Vec::with_capacity(ngroups);
        for l in lambdas {
            let nj = rng.gen_range(1..=2usize);
            let mut mults = Vec::with_capacity(nj);
            for j in 0..nj {
                let lo = if j == 0 { 1 } else { 0 };
                mults.push(rng.gen_range(lo..=2usize));
            }
            groups.push(SpectralGroup { lambda: l, mults });
        }
        let Ok(data) = SpectralData::new(groups) else {
            continue;
        };
        let ncols = data.kernel_dim();
        let dim = rng.gen_range(1..=max_dim.min(ncols));
        let basis: Vec<QuasiPoly> = (0..dim)
            .map(|_| {
                let coords: Vec<GaussianRational> =
                    (0..ncols).map(|_| random_scalar(rng)).collect();
                QuasiPoly::from_coordinates(&data, &coords)
            })
            .collect();
        if basis.iter().any(|b| b.is_zero()) {
            continue;
        }
        if !wronskian_nonzero(&basis) {
            continue;
        }
        return MixedInstance { data, basis };
    }
}

fn derivative_rows(basis: &[QuasiPoly], orders: usize) -> Vec<Vec<QuasiPoly>> {
    let mut rows = Vec::with_capacity(orders);
    let mut current: Vec<QuasiPoly> = basis.to_vec();
    for _ in 0..orders {
        rows.push(current.clone());
        current = current.iter().map(|f| f.derivative()).collect();
    }
    rows
}

fn wronskian_nonzero(basis: &[QuasiPoly]) -> bool {
    !crate::quasipoly::wronskian(basis).is_zero()
}

/// Independent test of whether a kernel basis yields a forward factor with
/// coefficients rational in `e^{-x}`: each cofactor of the bordered
/// derivative matrix, divided by the base determinant, must be such a
/// ratio. This bypasses operator construction entirely.
pub fn kernel_is_exp_rational(basis: &[QuasiPoly]) -> Result<bool, Error> {
    let k = basis.len();
    if k == 0 {
        return Ok(true);
    }
    let rows = derivative_rows(basis, k + 1);
    let w = crate::quasipoly::wronskian(basis);
    if w.is_zero() {
        return Err(Error::DependentBasis);
    }
    for skip in 0..k {
        let kept: Vec<usize> = (0..=k).filter(|&i| i != skip).collect();
        let m = Matrix::from_fn(k, k, |a, b| rows[kept[a]][b].clone());
        let minor = m.det_cofactor()?;
        if !ratio_is_rational_in_u(&minor, &w) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A rank-one matrix pair from the classical construction: `Xt` diagonal
/// with distinct entries, `Zt_ij = 1/(x_i - x_j)` off the diagonal and free
/// on it. The defining rank condition holds identically; the constructor
/// re-verifies it.
pub fn random_rational_pair(rng: &mut impl Rng, n: usize) -> CMPairRational {
    loop {
        let xs: Vec<GaussianRational> = {
            let mut v: Vec<GaussianRational> = Vec::new();
            while v.len() < n {
                let c = random_scalar(rng);
                if !v.contains(&c) {
                    v.push(c);
                }
            }
            v
        };
        let diag: Vec<GaussianRational> = (0..n).map(|_| random_scalar(rng)).collect();
        if let Ok(p) = classical_pair(&xs, &diag) {
            return p;
        }
    }
}

/// Same construction, constrained so the second matrix has small norm:
/// widely separated diagonal for `Xt` and a small free diagonal for `Zt`,
/// which keeps the spectral radius of `Zt` well below 1.
pub fn random_contractive_pair(rng: &mut impl Rng, n: usize) -> CMPairRational {
    loop {
        let mut xs: Vec<GaussianRational> = Vec::with_capacity(n);
        for i in 0..n {
            // entries at least 8 apart: 16 i + jitter
            let base = 16 * i as i64 + small_int(rng, -3, 3);
            xs.push(GaussianRational::from_int(base));
        }
        let diag: Vec<GaussianRational> = (0..n)
            .map(|_| GaussianRational::from_ratio(small_int(rng, -1, 1), 4))
            .collect();
        if let Ok(p) = classical_pair(&xs, &diag) {
            return p;
        }
    }
}

/// Assemble and validate the classical pair from diagonal data.
pub fn classical_pair(
    xs: &[GaussianRational],
    diag: &[GaussianRational],
) -> Result<CMPairRational, Error> {
    let n = xs.len();
    for i in 0..n {
        for j in 0..i {
            if xs[i] == xs[j] {
                return Err(Error::Invalid("repeated diagonal entry".into()));
            }
        }
    }
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
    CMPairRational::new(xt, zt)
}
