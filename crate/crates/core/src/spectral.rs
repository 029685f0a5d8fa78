//! Spectral data: the constant-coefficient operator
//! `h(D) = prod_r prod_j (D - lambda_r + j)^{m_{r,j}}` described by its base
//! exponents and multiplicity profiles.

use crate::error::Error;
use crate::scalar::GaussianRational;
use crate::unipoly::UniPoly;

#[derive(Clone, PartialEq, Debug)]
pub struct SpectralGroup {
    pub lambda: GaussianRational,
    /// `m_{r,0}, ..., m_{r,n_r}`; the multiplicity of the root `lambda - j`.
    pub mults: Vec<usize>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct SpectralData {
    pub groups: Vec<SpectralGroup>,
}

/// One basis monomial `x^k e^{(lambda_r - j) x}` of `ker h`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct KernelMonomial {
    pub r: usize,
    pub j: usize,
    pub k: usize,
}

impl SpectralData {
    /// Validate the defining conditions: `m_{r,0} > 0` and
    /// `lambda_r - lambda_s` never an integer for distinct groups (which also
    /// forces the base exponents to be pairwise distinct).
    pub fn new(groups: Vec<SpectralGroup>) -> Result<Self, Error> {
        for (r, g) in groups.iter().enumerate() {
            if g.mults.is_empty() || g.mults[0] == 0 {
                return Err(Error::SpectralData(format!(
                    "group {r} must have m_0 > 0"
                )));
            }
        }
        for r in 0..groups.len() {
            for s in 0..r {
                let d = &groups[r].lambda - &groups[s].lambda;
                if d.is_integer() {
                    return Err(Error::SpectralData(format!(
                        "lambda_{r} - lambda_{s} = {d} is an integer"
                    )));
                }
            }
        }
        Ok(SpectralData { groups })
    }

    /// The operator `h` as a monic univariate polynomial in the symbol of
    /// differentiation.
    pub fn h(&self) -> UniPoly {
        let mut p = UniPoly::one();
        for g in &self.groups {
            for (j, &m) in g.mults.iter().enumerate() {
                let root = &g.lambda - &GaussianRational::from_int(j as i64);
                for _ in 0..m {
                    p = p.mul(&UniPoly::linear(&root));
                }
            }
        }
        p
    }

    /// Basis monomials of `ker h`, ordered (r asc, j asc, k desc). This is
    /// the triangularization order used when normalizing kernel bases.
    pub fn kernel_monomials(&self) -> Vec<KernelMonomial> {
        let mut out = Vec::new();
        for (r, g) in self.groups.iter().enumerate() {
            for (j, &m) in g.mults.iter().enumerate() {
                for k in (0..m).rev() {
                    out.push(KernelMonomial { r, j, k });
                }
            }
        }
        out
    }

    pub fn kernel_dim(&self) -> usize {
        self.groups.iter().map(|g| g.mults.iter().sum::<usize>()).sum()
    }

    /// The exponent `lambda_r - j`.
    pub fn exponent(&self, r: usize, j: usize) -> GaussianRational {
        &self.groups[r].lambda - &GaussianRational::from_int(j as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_integer_gap() {
        let g1 = SpectralGroup {
            lambda: GaussianRational::from_int(1),
            mults: vec![1],
        };
        let g2 = SpectralGroup {
            lambda: GaussianRational::from_int(2),
            mults: vec![1],
        };
        assert!(SpectralData::new(vec![g1, g2]).is_err());
    }

    #[test]
    fn accepts_non_integer_gap_and_builds_h() {
        let g1 = SpectralGroup {
            lambda: GaussianRational::from_ratio(1, 2),
            mults: vec![2, 1],
        };
        let data = SpectralData::new(vec![g1]).unwrap();
        let h = data.h();
        // (t - 1/2)^2 (t + 1/2)
        assert_eq!(h.degree(), Some(3));
        assert!(h.eval(&GaussianRational::from_ratio(1, 2)).is_zero());
        assert!(h.eval(&GaussianRational::from_ratio(-1, 2)).is_zero());
        assert_eq!(data.kernel_dim(), 3);
    }
}
