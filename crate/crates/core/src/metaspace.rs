//! Metaspace vectors and the family of products `⊙_i`.
//!
//! `x ⊙_i y = Σ_j K_ij x_j y_j`. The zeroth product is the meta product.
//! A vector's index is the least `i` with a positive `i`-th square; vectors
//! without one are limit vectors.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{GeomError, Result};
use crate::motions::Motion;
use crate::sigcore::{PairType, Signature};
use crate::tol::eps;

/// A vector of `R^(n+1)`, coordinates `0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MVector(pub Vec<f64>);

impl MVector {
    #[must_use]
    pub fn new(coords: Vec<f64>) -> Self {
        MVector(coords)
    }

    /// The zero vector of a space of dimension `n`.
    #[must_use]
    pub fn zeros(n: usize) -> Self {
        MVector(vec![0.0; n + 1])
    }

    /// The origin `e = (1, 0, ..., 0)` of a space of dimension `n`.
    #[must_use]
    pub fn origin(n: usize) -> Self {
        Self::basis(n, 0)
    }

    /// Coordinate vector `e^i`.
    #[must_use]
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![0.0; n + 1];
        v[i] = 1.0;
        MVector(v)
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[must_use]
    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    #[must_use]
    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    #[must_use]
    pub fn scale(&self, f: f64) -> MVector {
        MVector(self.0.iter().map(|v| v * f).collect())
    }

    /// `self + f·other`.
    #[must_use]
    pub fn axpy(&self, f: f64, other: &MVector) -> MVector {
        MVector(self.0.iter().zip(&other.0).map(|(a, b)| a + f * b).collect())
    }

    /// Max-norm distance, used for approximate comparisons.
    #[must_use]
    pub fn dist_inf(&self, other: &MVector) -> f64 {
        self.0.iter().zip(&other.0).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Approximate equality up to the sign of the whole vector.
    #[must_use]
    pub fn approx_eq_projective(&self, other: &MVector, tol: f64) -> bool {
        self.dist_inf(other) <= tol || self.dist_inf(&-other.clone()) <= tol
    }
}

impl Index<usize> for MVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for MVector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for &MVector {
    type Output = MVector;
    fn add(self, rhs: &MVector) -> MVector {
        self.axpy(1.0, rhs)
    }
}

impl Sub for &MVector {
    type Output = MVector;
    fn sub(self, rhs: &MVector) -> MVector {
        self.axpy(-1.0, rhs)
    }
}

impl Mul<f64> for &MVector {
    type Output = MVector;
    fn mul(self, rhs: f64) -> MVector {
        self.scale(rhs)
    }
}

impl Neg for MVector {
    type Output = MVector;
    fn neg(self) -> MVector {
        self.scale(-1.0)
    }
}

/// Index of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorIndex {
    Indexed(usize),
    Limit,
}

impl VectorIndex {
    #[must_use]
    pub fn indexed(self) -> Option<usize> {
        match self {
            VectorIndex::Indexed(i) => Some(i),
            VectorIndex::Limit => None,
        }
    }

    #[must_use]
    pub fn is_limit(self) -> bool {
        self == VectorIndex::Limit
    }
}

fn check_dim(x: &MVector, sig: &Signature) -> Result<()> {
    if x.len() != sig.dim() + 1 {
        return Err(GeomError::DimensionMismatch { expected: sig.dim() + 1, got: x.len() });
    }
    Ok(())
}

/// Meta product `Σ K_i x_i y_i`.
pub fn meta_product(x: &MVector, y: &MVector, sig: &Signature) -> Result<f64> {
    check_dim(x, sig)?;
    check_dim(y, sig)?;
    let kk = sig.cumulative_types();
    Ok(x.0.iter().zip(&y.0).zip(&kk).map(|((a, b), k)| f64::from(*k) * a * b).sum())
}

/// `i`-th product with tolerance `tol` for the infinite-coefficient test.
pub fn product_i_with(x: &MVector, y: &MVector, i: usize, sig: &Signature, tol: f64) -> Result<f64> {
    check_dim(x, sig)?;
    check_dim(y, sig)?;
    let n = sig.dim();
    if i > n {
        return Err(GeomError::IndexOutOfRange { index: i, max: n });
    }
    let k = sig.elements();
    let scale = x.norm_inf() * y.norm_inf();
    let mut sum = x[i] * y[i];
    let mut acc = 1i8;
    for j in i + 1..=n {
        acc *= k[j - 1];
        if acc == 0 {
            break;
        }
        sum += f64::from(acc) * x[j] * y[j];
    }
    let mut acc = 1i8;
    for j in (0..i).rev() {
        acc *= k[j];
        let term = x[j] * y[j];
        match PairType::Finite(acc).recip() {
            PairType::Finite(v) => sum += f64::from(v) * term,
            PairType::Infinite => {
                if term.abs() > tol * scale {
                    return Err(GeomError::InfiniteContribution { index: i, coord: j });
                }
            }
        }
    }
    Ok(sum)
}

/// `i`-th product `x ⊙_i y = Σ_j K_ij x_j y_j`.
///
/// Terms whose coefficient is infinite are skipped when the coordinate
/// product vanishes and rejected otherwise.
pub fn product_i(x: &MVector, y: &MVector, i: usize, sig: &Signature) -> Result<f64> {
    product_i_with(x, y, i, sig, eps())
}

/// Index of `x` with an explicit tolerance.
pub fn vector_index_with(x: &MVector, sig: &Signature, tol: f64) -> Result<VectorIndex> {
    check_dim(x, sig)?;
    let norm = x.norm_inf();
    if norm == 0.0 {
        return Err(GeomError::ZeroVector);
    }
    for i in 0..=sig.dim() {
        if let Ok(sq) = product_i_with(x, x, i, sig, tol) {
            if sq > tol * norm * norm {
                return Ok(VectorIndex::Indexed(i));
            }
        }
    }
    Ok(VectorIndex::Limit)
}

/// Least `i` with `x ⊙_i x > ε‖x‖²`, or `Limit`.
pub fn vector_index(x: &MVector, sig: &Signature) -> Result<VectorIndex> {
    vector_index_with(x, sig, eps())
}

/// Position of the first coordinate exceeding `tol` relative to the largest one.
fn leading_coord(x: &MVector, tol: f64) -> Option<usize> {
    let norm = x.norm_inf();
    if norm == 0.0 {
        return None;
    }
    x.0.iter().position(|v| v.abs() > tol * norm)
}

/// Index used for products with `x`: its index, or for a limit vector the
/// lower index of its decomposition pair.
pub fn effective_index(x: &MVector, sig: &Signature) -> Result<usize> {
    match vector_index(x, sig)? {
        VectorIndex::Indexed(i) => Ok(i),
        VectorIndex::Limit => leading_coord(x, eps()).ok_or(GeomError::ZeroVector),
    }
}

/// Natural product: `x ⊙_m y` with `m` the smaller of the two indices.
pub fn natural_product(x: &MVector, y: &MVector, sig: &Signature) -> Result<f64> {
    let m = effective_index(x, sig)?.min(effective_index(y, sig)?);
    product_i(x, y, m, sig)
}

/// Natural square `x ⊙_i x` at the vector's own index; zero for limit vectors.
pub fn natural_square(x: &MVector, sig: &Signature) -> Result<f64> {
    match vector_index(x, sig)? {
        VectorIndex::Indexed(i) => product_i(x, x, i, sig),
        VectorIndex::Limit => Ok(0.0),
    }
}

/// Scale an indexed vector to natural square 1.
pub fn normalize(x: &MVector, sig: &Signature) -> Result<MVector> {
    match vector_index(x, sig)? {
        VectorIndex::Indexed(i) => {
            let sq = product_i(x, x, i, sig)?;
            Ok(x.scale(1.0 / sq.sqrt()))
        }
        VectorIndex::Limit => Err(GeomError::LimitVector),
    }
}

/// Representative whose first significant coordinate is positive.
pub fn canonical_point(x: &MVector) -> Result<MVector> {
    let lead = leading_coord(x, eps()).ok_or(GeomError::ZeroVector)?;
    Ok(if x[lead] < 0.0 { -x.clone() } else { x.clone() })
}

/// The split of a limit vector into two indexed parts.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionPair {
    pub a: MVector,
    pub b: MVector,
    pub a_index: usize,
    pub b_index: usize,
}

/// Split a limit vector `x = a + b` by the sign of the coefficients of its
/// leading product: `+1` and `0` go to `a`, `-1` to `b`.
pub fn decomposition_vectors(x: &MVector, sig: &Signature) -> Result<DecompositionPair> {
    if vector_index(x, sig)? != VectorIndex::Limit {
        return Err(GeomError::NotLimit);
    }
    let m = leading_coord(x, eps()).ok_or(GeomError::ZeroVector)?;
    let mut a = MVector::zeros(sig.dim());
    let mut b = MVector::zeros(sig.dim());
    for j in 0..x.len() {
        match sig.pair_type_unchecked(m, j) {
            PairType::Finite(-1) => b[j] = x[j],
            _ => a[j] = x[j],
        }
    }
    let a_index = vector_index(&a, sig)?
        .indexed()
        .ok_or_else(|| GeomError::Unsupported("decomposition vector is itself a limit vector".into()))?;
    let b_index = vector_index(&b, sig)?
        .indexed()
        .ok_or_else(|| GeomError::Unsupported("decomposition vector is itself a limit vector".into()))?;
    Ok(DecompositionPair { a, b, a_index, b_index })
}

/// Measure of a limit vector: the common natural norm of its decomposition pair.
///
/// The type is always 0. The value depends on the basis, so it is flagged as
/// not motion invariant; only ratios of collinear limit vectors are.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitMeasure {
    pub value: f64,
    pub mtype: i8,
    pub invariant: bool,
}

pub fn limit_measure(x: &MVector, sig: &Signature) -> Result<LimitMeasure> {
    let d = decomposition_vectors(x, sig)?;
    let value = product_i(&d.a, &d.a, d.a_index, sig)?.sqrt();
    Ok(LimitMeasure { value, mtype: 0, invariant: false })
}

/// Remove from `y` the component along the limit vector `x` that keeps it from
/// being orthogonal to both decomposition vectors of `x`.
pub fn limit_orthogonalize(x: &MVector, y: &MVector, sig: &Signature) -> Result<MVector> {
    let d = decomposition_vectors(x, sig)?;
    check_dim(y, sig)?;
    let e = eps();
    let m = d.a_index;
    let scale = x.norm_inf() * y.norm_inf();
    let ay = product_i(&d.a, y, m, sig)?;
    let by = product_i(&d.b, y, m, sig)?;
    if ay.abs() <= e * scale && by.abs() <= e * scale {
        return Err(GeomError::AlreadyOrthogonal);
    }
    let aa = product_i(&d.a, &d.a, m, sig)?;
    let z = y.axpy(-ay / aa, x);
    if z.norm_inf() <= e * y.norm_inf() {
        return Err(GeomError::Degenerate("vector is collinear with the limit vector".into()));
    }
    let zs = x.norm_inf() * z.norm_inf();
    let az = product_i(&d.a, &z, m, sig)?;
    let bz = product_i(&d.b, &z, m, sig)?;
    if az.abs() > e.sqrt() * zs || bz.abs() > e.sqrt() * zs {
        return Err(GeomError::Unsupported("vectors are not formally orthogonal".into()));
    }
    Ok(z)
}

/// The limit translation `P(λ)` of a plane with `k2 = -1`.
pub fn limit_translation(lambda: f64, sig: &Signature) -> Result<Motion> {
    if sig.dim() != 2 || sig.elements()[1] != -1 {
        return Err(GeomError::WrongSignature(format!("limit translation needs a plane with k2 = -1, got {sig}")));
    }
    let k1 = f64::from(sig.elements()[0]);
    let h = k1 * lambda * lambda / 2.0;
    let rows = vec![
        vec![1.0, -k1 * lambda, k1 * lambda],
        vec![lambda, 1.0 - h, h],
        vec![lambda, -h, 1.0 + h],
    ];
    Motion::from_rows_unchecked(&rows, sig)
}
