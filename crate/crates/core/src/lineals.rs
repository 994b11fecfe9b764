//! Lineals (linear subspaces of the metaspace), their orthonormal bases and
//! the measures between them.
//!
//! A lineal of rank `r` is the metaspace image of an `(r-1)`-dimensional
//! subspace: rank 1 is a point, rank 2 a line, and so on.

use nalgebra::DMatrix;

use crate::error::{GeomError, Result};
use crate::metaspace::{
    canonical_point, decomposition_vectors, effective_index, limit_orthogonalize, natural_product, normalize, product_i, vector_index,
    MVector, VectorIndex,
};
use crate::motions::Motion;
use crate::sigcore::Signature;
use crate::tol::{eps, CASE_TOL};

/// A lineal given by a natural-orthonormal basis.
///
/// Indexed basis vectors have natural square 1. Limit vectors are kept
/// unnormalized since they have none.
#[derive(Debug, Clone, PartialEq)]
pub struct Lineal {
    basis: Vec<MVector>,
    sig: Signature,
}

impl Lineal {
    /// Span of `vectors`, orthonormalized.
    pub fn new(vectors: Vec<MVector>, sig: &Signature) -> Result<Lineal> {
        let basis = orthonormalize(&vectors, sig)?;
        Self::checked(basis, sig)
    }

    /// The point spanned by `x`.
    pub fn point(x: &MVector, sig: &Signature) -> Result<Lineal> {
        Self::new(vec![x.clone()], sig)
    }

    /// Wrap a basis that the caller asserts is already orthonormal. It is verified.
    pub fn from_orthonormal(basis: Vec<MVector>, sig: &Signature) -> Result<Lineal> {
        let e = eps().sqrt();
        for (a, x) in basis.iter().enumerate() {
            if let VectorIndex::Indexed(i) = vector_index(x, sig)? {
                if (product_i(x, x, i, sig)? - 1.0).abs() > e {
                    return Err(GeomError::InputNotOrthonormal);
                }
            }
            for y in &basis[a + 1..] {
                if natural_product(x, y, sig)?.abs() > e * x.norm_inf() * y.norm_inf() {
                    return Err(GeomError::InputNotOrthonormal);
                }
            }
        }
        Self::checked(basis, sig)
    }

    fn checked(basis: Vec<MVector>, sig: &Signature) -> Result<Lineal> {
        let mut weight = 0;
        for x in &basis {
            weight += if vector_index(x, sig)?.is_limit() { 2 } else { 1 };
        }
        if weight > sig.dim() + 1 {
            return Err(GeomError::Degenerate(format!(
                "basis with weight {weight} does not fit in dimension {}",
                sig.dim()
            )));
        }
        Ok(Lineal { basis, sig: sig.clone() })
    }

    #[must_use]
    pub fn basis(&self) -> &[MVector] {
        &self.basis
    }

    #[must_use]
    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    /// Number of basis vectors.
    #[must_use]
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Indices of the basis vectors.
    pub fn indices(&self) -> Result<Vec<VectorIndex>> {
        self.basis.iter().map(|x| vector_index(x, &self.sig)).collect()
    }

    pub fn has_limit(&self) -> Result<bool> {
        Ok(self.indices()?.iter().any(|i| i.is_limit()))
    }

    /// Whether `x` lies in the lineal within tolerance.
    pub fn contains(&self, x: &MVector) -> Result<bool> {
        let r = residual(x, &self.basis, &self.sig)?;
        Ok(r.norm_inf() <= eps().sqrt() * x.norm_inf().max(f64::MIN_POSITIVE))
    }

    /// Image under a motion.
    pub fn transform(&self, m: &Motion) -> Result<Lineal> {
        let imgs = self.basis.iter().map(|x| m.apply(x)).collect::<Result<Vec<_>>>()?;
        Lineal::new(imgs, &self.sig)
    }
}

fn sorted_indexed(basis: &[MVector], sig: &Signature) -> Result<(Vec<(usize, MVector)>, Vec<MVector>)> {
    let mut indexed = Vec::new();
    let mut limits = Vec::new();
    for l in basis {
        match vector_index(l, sig)? {
            VectorIndex::Indexed(i) => indexed.push((i, l.clone())),
            VectorIndex::Limit => limits.push(l.clone()),
        }
    }
    indexed.sort_by_key(|(i, _)| *i);
    Ok((indexed, limits))
}

/// Sequential projection onto indexed orthonormal vectors, ascending by index.
/// Returns the residual and the coefficients in the sorted order.
fn project_out(x: &MVector, indexed: &[(usize, MVector)], sig: &Signature) -> Result<(MVector, Vec<f64>)> {
    let mut r = x.clone();
    let mut coeffs = Vec::with_capacity(indexed.len());
    for (i, l) in indexed {
        let c = product_i(&r, l, *i, sig)?;
        r = r.axpy(-c, l);
        coeffs.push(c);
    }
    Ok((r, coeffs))
}

/// Residual of `x` against an orthonormal basis, or the zero vector when `x`
/// is dependent on it.
fn residual(x: &MVector, basis: &[MVector], sig: &Signature) -> Result<MVector> {
    let (indexed, limits) = sorted_indexed(basis, sig)?;
    let (mut r, _) = project_out(x, &indexed, sig)?;
    for l in &limits {
        if r.norm_inf() <= eps() * x.norm_inf() {
            break;
        }
        match limit_orthogonalize(l, &r, sig) {
            Ok(z) => r = z,
            Err(GeomError::AlreadyOrthogonal) => {}
            Err(GeomError::Degenerate(_)) => return Ok(MVector::zeros(sig.dim())),
            Err(e) => return Err(e),
        }
    }
    Ok(r)
}

/// Split `x` into its projection onto a lineal without limit vectors and the
/// orthogonal remainder.
pub fn project(x: &MVector, lineal: &Lineal) -> Result<(MVector, MVector)> {
    if x.len() != lineal.sig.dim() + 1 {
        return Err(GeomError::DimensionMismatch { expected: lineal.sig.dim() + 1, got: x.len() });
    }
    if lineal.has_limit()? {
        return Err(GeomError::Unsupported("projection onto a lineal containing a limit vector".into()));
    }
    let (indexed, _) = sorted_indexed(&lineal.basis, &lineal.sig)?;
    let (r, _) = project_out(x, &indexed, &lineal.sig)?;
    Ok((x - &r, r))
}

/// Natural-orthonormal basis of the span of `vectors`.
///
/// Each round removes the span found so far from the remaining vectors, drops
/// those that vanish, and takes the remaining one of lowest index (earliest
/// input first on ties, limit vectors last). Indexed vectors are normalized.
pub fn orthonormalize(vectors: &[MVector], sig: &Signature) -> Result<Vec<MVector>> {
    let basis = extend_orthonormal(Vec::new(), vectors, sig)?;
    if basis.is_empty() {
        return Err(GeomError::AllVectorsDegenerate);
    }
    Ok(basis)
}

/// Append the parts of `vectors` independent of `basis`, orthonormalized.
fn extend_orthonormal(mut basis: Vec<MVector>, vectors: &[MVector], sig: &Signature) -> Result<Vec<MVector>> {
    for v in vectors {
        if v.len() != sig.dim() + 1 {
            return Err(GeomError::DimensionMismatch { expected: sig.dim() + 1, got: v.len() });
        }
    }
    let e = eps();
    let mut pending: Vec<(MVector, f64)> =
        vectors.iter().filter(|v| v.norm_inf() > 0.0).map(|v| (v.clone(), v.norm_inf())).collect();
    loop {
        let mut cands = Vec::new();
        for (v, scale) in &pending {
            let r = residual(v, &basis, sig)?;
            if r.norm_inf() > e.sqrt() * scale {
                let key = match vector_index(&r, sig)? {
                    VectorIndex::Indexed(i) => (0, i),
                    VectorIndex::Limit => (1, effective_index(&r, sig)?),
                };
                cands.push((key, r, *scale));
            }
        }
        if cands.is_empty() {
            break;
        }
        let best = cands
            .iter()
            .enumerate()
            .min_by_key(|(pos, c)| (c.0, *pos))
            .map(|(pos, _)| pos)
            .expect("nonempty");
        let (key, r, _) = cands.remove(best);
        basis.push(if key.0 == 0 { normalize(&r, sig)? } else { r });
        pending = cands.into_iter().map(|(_, r, s)| (r, s)).collect();
    }
    Ok(basis)
}

/// Extend an orthonormal family to a basis of the whole metaspace by adding
/// the independent parts of the coordinate vectors.
pub fn complete(basis: &[MVector], sig: &Signature) -> Result<Vec<MVector>> {
    let lineal = Lineal::from_orthonormal(basis.to_vec(), sig)?;
    let n = sig.dim();
    let coords: Vec<MVector> = (0..=n).map(|i| MVector::basis(n, i)).collect();
    extend_orthonormal(lineal.basis, &coords, sig)
}

/// The basis obtained by projecting the coordinate vectors onto the lineal.
///
/// It depends only on the lineal, so two bases of the same lineal give the
/// same canonical basis up to signs.
pub fn canonical_basis(lineal: &Lineal) -> Result<Lineal> {
    if lineal.has_limit()? {
        return Err(GeomError::Unsupported("canonical basis of a lineal containing a limit vector".into()));
    }
    let n = lineal.sig.dim();
    let projs: Vec<MVector> = (0..=n)
        .map(|i| project(&MVector::basis(n, i), lineal).map(|p| p.0))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|p| p.norm_inf() > eps().sqrt())
        .collect();
    if projs.is_empty() {
        return Ok(lineal.clone());
    }
    let mut out = orthonormalize(&projs, &lineal.sig)?;
    for v in &mut out {
        *v = canonical_point(v)?;
    }
    Ok(Lineal { basis: out, sig: lineal.sig.clone() })
}

/// Signature of the lineal viewed as a space of its own.
///
/// Basis vectors are ordered by index and split into groups at
/// non-interchangeable steps, which contribute 0. Within a group the indexed
/// vectors contribute the pair types between consecutive indices, the step to
/// the first limit vector contributes 0 and each further limit vector 1. A
/// limit vector is placed by the lower index of its decomposition pair.
pub fn lineal_signature(lineal: &Lineal) -> Result<Signature> {
    let sig = &lineal.sig;
    let basis = if lineal.has_limit()? { lineal.clone() } else { canonical_basis(lineal)? };
    // A vector holds every index equivalent to its least one, so basis
    // vectors are given distinct indices within each class first.
    let mut used = vec![false; sig.dim() + 1];
    let mut take = |least: usize| -> usize {
        let pick = (least..=sig.dim()).find(|&j| !used[j] && sig.forward_type(least, j) == 1).unwrap_or(least);
        used[pick] = true;
        pick
    };
    let mut indexed = Vec::new();
    let mut limits = Vec::new();
    for x in &basis.basis {
        match vector_index(x, sig)? {
            VectorIndex::Indexed(i) => indexed.push(i),
            VectorIndex::Limit => limits.push(decomposition_vectors(x, sig)?),
        }
    }
    indexed.sort_unstable();
    let mut items: Vec<(usize, bool)> = indexed.into_iter().map(|i| (take(i), false)).collect();
    for d in limits {
        let (a, b) = (take(d.a_index), take(d.b_index));
        items.push((a.min(b), true));
    }
    items.sort_unstable();
    let mut groups: Vec<Vec<(usize, bool)>> = Vec::new();
    for it in items {
        match groups.last_mut() {
            Some(g) if sig.forward_type(g[g.len() - 1].0, it.0) != 0 => g.push(it),
            _ => groups.push(vec![it]),
        }
    }
    let mut k = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        if gi > 0 {
            k.push(0);
        }
        let idx: Vec<usize> = g.iter().filter(|t| !t.1).map(|t| t.0).collect();
        let limits = g.iter().filter(|t| t.1).count();
        k.extend(idx.windows(2).map(|w| sig.forward_type(w[0], w[1])));
        if limits > 0 && !idx.is_empty() {
            k.push(0);
        }
        k.extend(std::iter::repeat_n(1, limits.saturating_sub(1)));
    }
    Signature::new(k)
}

/// Sum `A + B` and intersection `A ∩ B` of two lineals.
///
/// `B` is added one vector at a time. Each new residual remembers which
/// combination of `A` vectors it came from, so a vanishing residual yields a
/// vector common to both.
pub fn sum_and_intersection(a: &Lineal, b: &Lineal) -> Result<(Lineal, Lineal)> {
    if a.sig != b.sig {
        return Err(GeomError::SignatureMismatch);
    }
    let sig = &a.sig;
    if a.has_limit()? || b.has_limit()? {
        return Err(GeomError::Unsupported("sum and intersection with limit vectors".into()));
    }
    let n = sig.dim();
    // Each entry: (basis vector w, its part in A).
    let mut w: Vec<(usize, MVector, MVector)> = Vec::new();
    for x in &a.basis {
        let i = vector_index(x, sig)?.indexed().expect("checked above");
        w.push((i, x.clone(), x.clone()));
    }
    let mut common = Vec::new();
    for x in &b.basis {
        w.sort_by_key(|t| t.0);
        let mut r = x.clone();
        let mut from_a = MVector::zeros(n);
        for (i, wl, ha) in &w {
            let c = product_i(&r, wl, *i, sig)?;
            r = r.axpy(-c, wl);
            from_a = from_a.axpy(c, ha);
        }
        if r.norm_inf() <= eps().sqrt() * x.norm_inf() {
            if from_a.norm_inf() > eps().sqrt() {
                common.push(from_a);
            }
            continue;
        }
        match vector_index(&r, sig)? {
            VectorIndex::Indexed(i) => {
                let s = product_i(&r, &r, i, sig)?.sqrt();
                w.push((i, r.scale(1.0 / s), from_a.scale(-1.0 / s)));
            }
            VectorIndex::Limit => {
                return Err(GeomError::Unsupported("sum produces a limit vector".into()));
            }
        }
    }
    let sum = Lineal::checked(w.into_iter().map(|t| t.1).collect(), sig)?;
    let inter = if common.is_empty() {
        Lineal { basis: Vec::new(), sig: sig.clone() }
    } else {
        Lineal::new(common, sig)?
    };
    Ok((sum, inter))
}

/// `A ⊖ B`: the part of `A` orthogonal to `B`.
pub fn difference(a: &Lineal, b: &Lineal) -> Result<Lineal> {
    if a.sig != b.sig {
        return Err(GeomError::SignatureMismatch);
    }
    let e = eps().sqrt();
    let mut res = Vec::new();
    for x in &a.basis {
        let r = residual(x, &b.basis, &a.sig)?;
        if r.norm_inf() > e * x.norm_inf() {
            res.push(r);
        }
    }
    if res.is_empty() {
        return Ok(Lineal { basis: Vec::new(), sig: a.sig.clone() });
    }
    Lineal::new(res, &a.sig)
}

/// State matrix `W_ij = v^i ⊙_i v^j` of a vector family, with the row position
/// as product index. For `n+1` vectors `det W = (det V)^2` on nondegenerate
/// signatures.
pub fn state_matrix(vectors: &[MVector], sig: &Signature) -> Result<DMatrix<f64>> {
    let r = vectors.len();
    if r > sig.dim() + 1 {
        return Err(GeomError::DimensionMismatch { expected: sig.dim() + 1, got: r });
    }
    let mut w = DMatrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            w[(i, j)] = product_i(&vectors[i], &vectors[j], i, sig)?;
        }
    }
    Ok(w)
}

/// Gram matrix in natural products. Zero vectors give zero rows.
pub fn natural_state_matrix(vectors: &[MVector], sig: &Signature) -> Result<DMatrix<f64>> {
    let r = vectors.len();
    let tiny = |v: &MVector| v.norm_inf() <= eps() * 1e-3;
    let mut w = DMatrix::zeros(r, r);
    for i in 0..r {
        for j in i..r {
            if tiny(&vectors[i]) || tiny(&vectors[j]) {
                continue;
            }
            let p = natural_product(&vectors[i], &vectors[j], sig)?;
            w[(i, j)] = p;
            w[(j, i)] = p;
        }
    }
    Ok(w)
}

/// Value of a measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureValue {
    Finite(f64),
    Infinite,
    /// No value, as for parallel lines in the Euclidean plane.
    Undefined,
    /// Only the complementary measure exists.
    Unmeasurable,
}

impl MeasureValue {
    #[must_use]
    pub fn finite(self) -> Option<f64> {
        match self {
            MeasureValue::Finite(v) => Some(v),
            _ => None,
        }
    }
}

/// Case of the measure classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureCase {
    /// Coincident.
    A,
    /// Completely orthogonal.
    B,
    /// Elliptic.
    C,
    /// Parabolic.
    D,
    /// Parabolic, complementary only.
    E,
    /// Hyperbolic.
    F,
    /// Hyperbolic, complementary only.
    G,
    /// Through a limit lineal.
    H,
}

impl MeasureCase {
    #[must_use]
    pub fn letter(self) -> char {
        match self {
            MeasureCase::A => 'a',
            MeasureCase::B => 'b',
            MeasureCase::C => 'c',
            MeasureCase::D => 'd',
            MeasureCase::E => 'e',
            MeasureCase::F => 'f',
            MeasureCase::G => 'g',
            MeasureCase::H => 'h',
        }
    }
}

/// A measure between two lineals.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureResult {
    pub value: MeasureValue,
    pub complementary: Option<MeasureValue>,
    /// Type of the trigonometric functions the measure is an argument of.
    pub mtype: i8,
    pub case: MeasureCase,
    /// Set when the measure does not determine the relative position.
    pub ambiguous: bool,
    /// Squared projection and squared residual Gram determinants.
    pub w1: f64,
    pub w2: f64,
}

fn gram_det(vectors: &[MVector], sig: &Signature) -> Result<f64> {
    if vectors.is_empty() {
        return Ok(1.0);
    }
    Ok(natural_state_matrix(vectors, sig)?.determinant())
}

fn clamp_nonneg(v: f64, w1: f64, w2: f64, tol: f64) -> Result<f64> {
    if v >= 0.0 {
        Ok(v)
    } else if v >= -tol {
        Ok(0.0)
    } else {
        Err(GeomError::UnclassifiableMeasure { w1, w2 })
    }
}

/// Vectors spanning the common part of two lineals, found as the null space
/// of `[A | -B]` by plain linear algebra. Works with limit bases.
fn span_intersection(a: &Lineal, b: &Lineal) -> Vec<MVector> {
    let (p, q) = (a.rank(), b.rank());
    let rows = a.sig.dim() + 1;
    let m = DMatrix::from_fn(rows, p + q, |r, c| if c < p { a.basis[c][r] } else { -b.basis[c - p][r] });
    let eig = (m.transpose() * &m).symmetric_eigen();
    let top = eig.eigenvalues.amax().max(f64::MIN_POSITIVE);
    let mut out = Vec::new();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda <= eps() * top {
            let coef = eig.eigenvectors.column(k);
            let mut x = MVector::zeros(a.sig.dim());
            for (i, base) in a.basis.iter().enumerate() {
                x = x.axpy(coef[i], base);
            }
            if x.norm_inf() > eps().sqrt() {
                out.push(x);
            }
        }
    }
    out
}

/// Measure between two lineals of a space.
///
/// The common part is removed first. Then the smaller remaining family is
/// projected onto the other lineal and the Gram determinants `w1` of the
/// projections and `w2` of the residuals select the case.
pub fn measure_between(a: &Lineal, b: &Lineal) -> Result<MeasureResult> {
    measure_between_with(a, b, CASE_TOL)
}

/// [`measure_between`] with an explicit case tolerance.
pub fn measure_between_with(a: &Lineal, b: &Lineal, tol: f64) -> Result<MeasureResult> {
    if a.sig != b.sig {
        return Err(GeomError::SignatureMismatch);
    }
    let sig = a.sig.clone();
    let limit = a.has_limit()? || b.has_limit()?;
    let inter = if limit {
        let common = span_intersection(a, b);
        if common.is_empty() {
            Lineal { basis: Vec::new(), sig: sig.clone() }
        } else {
            Lineal::new(common, &sig)?
        }
    } else {
        sum_and_intersection(a, b)?.1
    };
    if inter.has_limit()? {
        return Err(GeomError::Unsupported("lineals sharing a limit vector".into()));
    }
    let (a_star, b_star) =
        if inter.is_empty() { (a.clone(), b.clone()) } else { (difference(a, &inter)?, difference(b, &inter)?) };
    let result = |value, complementary, mtype, case, ambiguous, w1, w2| MeasureResult {
        value,
        complementary,
        mtype,
        case,
        ambiguous,
        w1,
        w2,
    };
    if a_star.is_empty() || b_star.is_empty() {
        return Ok(result(MeasureValue::Finite(0.0), None, 1, MeasureCase::A, true, 1.0, 0.0));
    }
    let (mut src, mut dst) = if b_star.rank() <= a_star.rank() { (&b_star, &a_star) } else { (&a_star, &b_star) };
    if dst.has_limit()? {
        std::mem::swap(&mut src, &mut dst);
    }
    if dst.has_limit()? {
        return Err(GeomError::Unsupported("measure between two lineals with limit vectors".into()));
    }
    let mut projs = Vec::new();
    let mut resid = Vec::new();
    for x in &src.basis {
        let (p, r) = project(x, dst)?;
        resid.push(r);
        projs.push(p);
    }
    let w1r = gram_det(&projs, &sig)?;
    let w2r = gram_det(&resid, &sig)?;
    let w1 = clamp_nonneg(w1r, w1r, w2r, tol)?;
    let w2 = clamp_nonneg(w2r, w1r, w2r, tol)?;
    let near = |a: f64, b: f64| (a - b).abs() <= tol;
    use MeasureValue::{Finite, Infinite, Undefined, Unmeasurable};
    if limit && near(w1, w2) {
        return Ok(result(Infinite, None, -1, MeasureCase::H, false, w1, w2));
    }
    if near(w1, 1.0) && near(w2, 0.0) {
        return Ok(result(Finite(0.0), None, 1, MeasureCase::A, true, w1, w2));
    }
    if near(w1, 0.0) && near(w2, 1.0) {
        return Ok(result(Undefined, Some(Finite(0.0)), 1, MeasureCase::B, true, w1, w2));
    }
    if near(w1 + w2, 1.0) {
        return Ok(result(Finite(w2.sqrt().atan2(w1.sqrt())), None, 1, MeasureCase::C, false, w1, w2));
    }
    if near(w1, 1.0) {
        return Ok(result(Finite(w2.sqrt()), None, 0, MeasureCase::D, false, w1, w2));
    }
    if near(w2, 1.0) {
        return Ok(result(Unmeasurable, Some(Finite(w1.sqrt())), 0, MeasureCase::E, false, w1, w2));
    }
    if near(w1 - w2, 1.0) {
        return Ok(result(Finite((w2 / w1).sqrt().atanh()), None, -1, MeasureCase::F, false, w1, w2));
    }
    if near(w2 - w1, 1.0) {
        let c = (w1 / w2).sqrt().atanh();
        return Ok(result(Unmeasurable, Some(Finite(c)), -1, MeasureCase::G, false, w1, w2));
    }
    Err(GeomError::UnclassifiableMeasure { w1, w2 })
}

/// Distance between two points.
pub fn point_distance(x: &MVector, y: &MVector, sig: &Signature) -> Result<MeasureResult> {
    measure_between(&Lineal::point(x, sig)?, &Lineal::point(y, sig)?)
}

/// Whether two points can be joined by a segment.
#[derive(Debug, Clone, PartialEq)]
pub enum Connectability {
    /// Joined by a line; carries the distance.
    Connectable(MeasureResult),
    Unconnectable,
    /// The second basis vector of the joining line is a limit vector.
    LimitPair,
}

impl Connectability {
    #[must_use]
    pub fn is_connectable(&self) -> bool {
        matches!(self, Connectability::Connectable(_))
    }
}

/// Decide connectability from the index of the second basis vector of the
/// line through both points.
pub fn connectable(x: &MVector, y: &MVector, sig: &Signature) -> Result<Connectability> {
    let basis = orthonormalize(&[x.clone(), y.clone()], sig)?;
    if basis.len() < 2 {
        let zero = MeasureResult {
            value: MeasureValue::Finite(0.0),
            complementary: None,
            mtype: sig.k(1).unwrap_or(1),
            case: MeasureCase::A,
            ambiguous: true,
            w1: 1.0,
            w2: 0.0,
        };
        return Ok(Connectability::Connectable(zero));
    }
    if vector_index(&basis[0], sig)? != VectorIndex::Indexed(0) {
        return Err(GeomError::InvalidParams("arguments are not proper points".into()));
    }
    Ok(match vector_index(&basis[1], sig)? {
        VectorIndex::Limit => Connectability::LimitPair,
        VectorIndex::Indexed(j) if sig.forward_type(1, j) == 1 => Connectability::Connectable(point_distance(x, y, sig)?),
        VectorIndex::Indexed(_) => Connectability::Unconnectable,
    })
}

fn proper_point(x: &MVector, sig: &Signature) -> Result<MVector> {
    if vector_index(x, sig)? != VectorIndex::Indexed(0) {
        return Err(GeomError::InvalidParams("argument is not a proper point".into()));
    }
    canonical_point(&normalize(x, sig)?)
}

/// Midpoint of the segment between two connectable points.
pub fn midpoint(x: &MVector, y: &MVector, sig: &Signature) -> Result<MVector> {
    let (px, py) = (proper_point(x, sig)?, proper_point(y, sig)?);
    if px.dist_inf(&py) <= eps().sqrt() {
        return Ok(px);
    }
    if !connectable(&px, &py, sig)?.is_connectable() {
        return Err(GeomError::Unconnectable);
    }
    let s = &px + &py;
    if s.norm_inf() <= eps().sqrt() {
        return Err(GeomError::AntipodalAmbiguity);
    }
    canonical_point(&normalize(&s, sig)?)
}

/// Centroid of a triangle: the normalized sum of its vertices.
pub fn centroid(a: &MVector, b: &MVector, c: &MVector, sig: &Signature) -> Result<MVector> {
    let pts = [proper_point(a, sig)?, proper_point(b, sig)?, proper_point(c, sig)?];
    if orthonormalize(&pts, sig)?.len() < 3 {
        return Err(GeomError::DegenerateTriangle);
    }
    let s = &(&pts[0] + &pts[1]) + &pts[2];
    match vector_index(&s, sig)? {
        VectorIndex::Limit => Err(GeomError::LimitSum),
        VectorIndex::Indexed(_) => canonical_point(&normalize(&s, sig)?),
    }
}
