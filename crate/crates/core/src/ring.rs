//! Minimal ring/field abstractions used by the generic linear algebra.

/// A commutative ring with exact equality.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

/// A field: every nonzero element is invertible.
pub trait Field: Ring {
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|i| self.mul(&i))
    }
}

/// An integral domain supporting exact division tests, for fraction-free
/// elimination.
pub trait ExactDiv: Ring {
    /// `Some(q)` with `self = q * rhs` when the division is exact.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
}
