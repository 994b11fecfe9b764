//! GM-orthogonal motions: construction, validation, product, inverse and
//! decomposition into elementary rotations.
//!
//! A matrix is GM-orthogonal when its column `j` has index `j`, natural square
//! 1, and the columns are pairwise orthogonal in the natural product. Such
//! matrices form the motion group of the space. A motion and its negative act
//! identically on points, so motions are stored with the first significant
//! entry of column 0 positive.

use nalgebra::DMatrix;

use crate::error::{GeomError, Result};
use crate::metaspace::{product_i_with, MVector};
use crate::sigcore::{gtrig, Signature};
use crate::tol::eps;

/// A motion of the space with signature `sig`.
#[derive(Debug, Clone, PartialEq)]
pub struct Motion {
    m: DMatrix<f64>,
    sig: Signature,
}

/// Relation between two coordinate axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisRelation {
    Equivalent,
    Interchangeable,
    NonInterchangeable,
}

/// One elementary rotation `R_ij(φ)` of type `K_ij`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationStep {
    pub i: usize,
    pub j: usize,
    pub phi: f64,
    pub ktype: i8,
}

/// Result of [`Motion::decompose`]: `M = E · R(rotations[0]) · R(rotations[1]) · ...`
/// up to the global sign.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub rotations: Vec<RotationStep>,
    pub reflection: Vec<f64>,
}

impl Decomposition {
    /// Multiply the factors back together.
    pub fn recompose(&self, sig: &Signature) -> Result<Motion> {
        let mut m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.reflection.clone()));
        for st in &self.rotations {
            m *= Motion::rotation(st.i, st.j, st.phi, sig)?.m;
        }
        Ok(Motion::from_matrix_unchecked(m, sig))
    }

    #[must_use]
    pub fn is_proper(&self) -> bool {
        self.reflection.iter().all(|&v| v > 0.0)
    }
}

/// A failed GM-orthogonality condition.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub condition: &'static str,
    pub i: usize,
    pub j: usize,
    pub residual: f64,
}

/// Diagnostics of [`is_gm_orthogonal`].
#[derive(Debug, Clone, PartialEq)]
pub struct GmReport {
    pub ok: bool,
    /// Worst violated condition, if any.
    pub worst: Option<Violation>,
    /// Row relations hold; `None` when the signature contains a zero and they do not apply.
    pub row_relations: Option<bool>,
    /// Entries forced to zero by zero pair types vanish.
    pub zero_block: bool,
}

/// Check the column conditions of a GM-orthogonal matrix within `tol`.
#[must_use]
pub fn is_gm_orthogonal(m: &DMatrix<f64>, sig: &Signature, tol: f64) -> GmReport {
    let n1 = sig.dim() + 1;
    if m.nrows() != n1 || m.ncols() != n1 {
        return GmReport {
            ok: false,
            worst: Some(Violation { condition: "shape", i: m.nrows(), j: m.ncols(), residual: f64::INFINITY }),
            row_relations: None,
            zero_block: false,
        };
    }
    let cols: Vec<MVector> = (0..n1).map(|j| MVector(m.column(j).iter().copied().collect())).collect();
    let mut worst: Option<Violation> = None;
    let mut note = |condition: &'static str, i: usize, j: usize, residual: f64| {
        if worst.as_ref().is_none_or(|w| residual > w.residual) {
            worst = Some(Violation { condition, i, j, residual });
        }
    };
    // j need not be the least index of column j; a unit square at j suffices.
    for (j, c) in cols.iter().enumerate() {
        match product_i_with(c, c, j, sig, tol) {
            Ok(sq) if (sq - 1.0).abs() > tol => note("norm", j, j, (sq - 1.0).abs()),
            Ok(_) => {}
            Err(_) => note("index", j, j, f64::INFINITY),
        }
        for (i, ci) in cols.iter().enumerate().take(j) {
            match product_i_with(ci, c, i, sig, tol) {
                Ok(p) if p.abs() > tol => note("orthogonality", i, j, p.abs()),
                Ok(_) => {}
                Err(_) => note("orthogonality", i, j, f64::INFINITY),
            }
        }
    }
    let mut zero_block = true;
    for j in 0..n1 {
        for i in 0..j {
            if sig.forward_type(i, j) == 0 && m[(i, j)].abs() > tol {
                zero_block = false;
                note("zero_block", i, j, m[(i, j)].abs());
            }
        }
    }
    let row_relations = if sig.has_zero() {
        None
    } else {
        let kk = sig.cumulative_types();
        let mut good = true;
        for i in 0..n1 {
            for j in i..n1 {
                let s: f64 = (0..n1).map(|p| m[(i, p)] * m[(j, p)] * f64::from(kk[p])).sum();
                let v = f64::from(kk[j]) * s;
                let target = if i == j { 1.0 } else { 0.0 };
                if (v - target).abs() > tol {
                    good = false;
                    note("row_relation", i, j, (v - target).abs());
                }
            }
        }
        Some(good)
    };
    GmReport { ok: worst.is_none(), worst, row_relations, zero_block }
}

/// Relation between axes `i < j` determined by `K_ij`.
pub fn axis_relation(i: usize, j: usize, sig: &Signature) -> Result<AxisRelation> {
    let n = sig.dim();
    if j > n {
        return Err(GeomError::IndexOutOfRange { index: j, max: n });
    }
    if i >= j {
        return Err(GeomError::InvalidParams(format!("axis relation needs i < j, got ({i}, {j})")));
    }
    Ok(match sig.forward_type(i, j) {
        1 => AxisRelation::Equivalent,
        -1 => AxisRelation::Interchangeable,
        _ => AxisRelation::NonInterchangeable,
    })
}

/// Number of degrees of freedom of the motion group, `n(n+1)/2`.
#[must_use]
pub fn degrees_of_freedom(n: usize) -> usize {
    n * (n + 1) / 2
}

fn canonicalize(mut m: DMatrix<f64>) -> DMatrix<f64> {
    let col = m.column(0);
    let norm = col.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if let Some(v) = col.iter().find(|v| v.abs() > eps() * norm) {
        if *v < 0.0 {
            m.neg_mut();
        }
    }
    m
}

/// Right-multiply by `R_ij` given its `(C, S)` pair and type.
fn right_rotate(x: &mut DMatrix<f64>, i: usize, j: usize, c: f64, s: f64, k: i8) {
    let kf = f64::from(k);
    for r in 0..x.nrows() {
        let xi = x[(r, i)];
        let xj = x[(r, j)];
        x[(r, i)] = c * xi + s * xj;
        x[(r, j)] = -kf * s * xi + c * xj;
    }
}

fn inverse_block(m: &DMatrix<f64>, k: &[i8]) -> DMatrix<f64> {
    let n1 = m.nrows();
    match k.iter().position(|&v| v == 0) {
        None => {
            let mut kk = vec![1i8; n1];
            for p in 1..n1 {
                kk[p] = kk[p - 1] * k[p - 1];
            }
            DMatrix::from_fn(n1, n1, |i, j| m[(j, i)] * f64::from(kk[i] * kk[j]))
        }
        Some(pos) => {
            let split = pos + 1;
            let a = m.view((0, 0), (split, split)).into_owned();
            let b = m.view((split, 0), (n1 - split, split)).into_owned();
            let c = m.view((split, split), (n1 - split, n1 - split)).into_owned();
            let ai = inverse_block(&a, &k[..pos]);
            let ci = inverse_block(&c, &k[split..]);
            let lower = -(&ci * &b * &ai);
            let mut out = DMatrix::zeros(n1, n1);
            out.view_mut((0, 0), (split, split)).copy_from(&ai);
            out.view_mut((split, 0), (n1 - split, split)).copy_from(&lower);
            out.view_mut((split, split), (n1 - split, n1 - split)).copy_from(&ci);
            out
        }
    }
}

impl Motion {
    /// Identity motion.
    #[must_use]
    pub fn identity(sig: &Signature) -> Motion {
        let n1 = sig.dim() + 1;
        Motion { m: DMatrix::identity(n1, n1), sig: sig.clone() }
    }

    /// Build from row-major entries, validating GM-orthogonality.
    pub fn from_rows(rows: &[Vec<f64>], sig: &Signature) -> Result<Motion> {
        let m = Self::matrix_from_rows(rows, sig)?;
        let report = is_gm_orthogonal(&m, sig, validation_tol());
        if !report.ok {
            let w = report.worst.expect("failed report has a violation");
            return Err(GeomError::NotGmOrthogonal(format!(
                "{} condition fails at ({}, {}) by {:e}",
                w.condition, w.i, w.j, w.residual
            )));
        }
        Ok(Motion { m: canonicalize(m), sig: sig.clone() })
    }

    pub(crate) fn from_rows_unchecked(rows: &[Vec<f64>], sig: &Signature) -> Result<Motion> {
        let m = Self::matrix_from_rows(rows, sig)?;
        Ok(Motion { m: canonicalize(m), sig: sig.clone() })
    }

    fn matrix_from_rows(rows: &[Vec<f64>], sig: &Signature) -> Result<DMatrix<f64>> {
        let n1 = sig.dim() + 1;
        if rows.len() != n1 {
            return Err(GeomError::DimensionMismatch { expected: n1, got: rows.len() });
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n1) {
            return Err(GeomError::DimensionMismatch { expected: n1, got: r.len() });
        }
        Ok(DMatrix::from_fn(n1, n1, |i, j| rows[i][j]))
    }

    /// Wrap a matrix without validation. The caller guarantees GM-orthogonality.
    #[must_use]
    pub fn from_matrix_unchecked(m: DMatrix<f64>, sig: &Signature) -> Motion {
        Motion { m: canonicalize(m), sig: sig.clone() }
    }

    /// Main rotation `R_m(φ)`, `1 <= m <= n`.
    pub fn main_rotation(m: usize, phi: f64, sig: &Signature) -> Result<Motion> {
        if m == 0 || m > sig.dim() {
            return Err(GeomError::IndexOutOfRange { index: m, max: sig.dim() });
        }
        Self::rotation(m - 1, m, phi, sig)
    }

    /// Rotation in the coordinate plane `(i, j)`, `i < j`, of type `K_ij`.
    /// With `i = 0` this is a translation.
    pub fn rotation(i: usize, j: usize, phi: f64, sig: &Signature) -> Result<Motion> {
        let n = sig.dim();
        if j > n {
            return Err(GeomError::IndexOutOfRange { index: j, max: n });
        }
        if i >= j {
            return Err(GeomError::InvalidParams(format!("rotation needs i < j, got ({i}, {j})")));
        }
        let k = sig.forward_type(i, j);
        let t = gtrig(phi, k);
        let mut m = DMatrix::identity(n + 1, n + 1);
        m[(i, i)] = t.c;
        m[(i, j)] = -f64::from(k) * t.s;
        m[(j, i)] = t.s;
        m[(j, j)] = t.c;
        Ok(Motion { m: canonicalize(m), sig: sig.clone() })
    }

    #[must_use]
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    #[must_use]
    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    #[must_use]
    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.m.nrows()).map(|i| self.m.row(i).iter().copied().collect()).collect()
    }

    /// Image of a vector.
    pub fn apply(&self, x: &MVector) -> Result<MVector> {
        let n1 = self.m.nrows();
        if x.len() != n1 {
            return Err(GeomError::DimensionMismatch { expected: n1, got: x.len() });
        }
        Ok(MVector((0..n1).map(|i| (0..n1).map(|j| self.m[(i, j)] * x[j]).sum()).collect()))
    }

    /// Product `self · other`.
    pub fn compose(&self, other: &Motion) -> Result<Motion> {
        if self.sig != other.sig {
            return Err(GeomError::SignatureMismatch);
        }
        Ok(Motion { m: canonicalize(&self.m * &other.m), sig: self.sig.clone() })
    }

    /// Inverse via the transpose formula, or the block formula when the
    /// signature contains zeros.
    #[must_use]
    pub fn inverse(&self) -> Motion {
        Motion { m: canonicalize(inverse_block(&self.m, self.sig.elements())), sig: self.sig.clone() }
    }

    #[must_use]
    pub fn det(&self) -> f64 {
        self.m.determinant()
    }

    /// Equality up to the global sign.
    #[must_use]
    pub fn approx_eq(&self, other: &Motion, tol: f64) -> bool {
        if self.m.shape() != other.m.shape() {
            return false;
        }
        let d1 = (&self.m - &other.m).amax();
        let d2 = (&self.m + &other.m).amax();
        d1.min(d2) <= tol
    }

    /// Max-norm distance up to the global sign.
    #[must_use]
    pub fn distance(&self, other: &Motion) -> f64 {
        let d1 = (&self.m - &other.m).amax();
        let d2 = (&self.m + &other.m).amax();
        d1.min(d2)
    }

    fn eliminate(x0: &DMatrix<f64>, sig: &Signature) -> Result<(Vec<RotationStep>, Vec<f64>)> {
        let n = sig.dim();
        let mut x = x0.clone();
        let mut applied = Vec::new();
        let mut rot = |x: &mut DMatrix<f64>, i: usize, j: usize, phi: f64, k: i8| {
            let t = gtrig(phi, k);
            right_rotate(x, i, j, t.c, t.s, k);
            applied.push(RotationStep { i, j, phi, ktype: k });
        };
        let e = eps();
        for r in (1..=n).rev() {
            for i in 0..r {
                if sig.forward_type(i, r) == 1 {
                    let phi = (-x[(r, i)]).atan2(x[(r, r)]);
                    if phi.abs() > 1e-15 {
                        rot(&mut x, i, r, phi, 1);
                    }
                }
            }
            let hyper: Vec<usize> = (0..r).filter(|&i| sig.forward_type(i, r) == -1).collect();
            if let Some((&p, rest)) = hyper.split_last() {
                for &i in rest {
                    let phi = (-x[(r, i)]).atan2(x[(r, p)]);
                    if phi.abs() > 1e-15 {
                        rot(&mut x, i, p, phi, 1);
                    }
                }
                let (d, o) = (x[(r, r)], x[(r, p)]);
                let rho2 = d * d - o * o;
                if rho2 <= e {
                    return Err(GeomError::NotGmOrthogonal(format!("row {r} is light-like")));
                }
                let phi = (-o * d.signum() / d.abs()).atanh();
                if phi.abs() > 1e-15 {
                    rot(&mut x, p, r, phi, -1);
                }
            }
            for i in 0..r {
                if sig.forward_type(i, r) == 0 {
                    let d = x[(r, r)];
                    if d.abs() <= e {
                        return Err(GeomError::NotGmOrthogonal(format!("vanishing diagonal in row {r}")));
                    }
                    let phi = -x[(r, i)] / d;
                    if phi.abs() > 1e-15 {
                        rot(&mut x, i, r, phi, 0);
                    }
                }
            }
        }
        let tol = validation_tol();
        let mut diag = Vec::with_capacity(n + 1);
        for i in 0..=n {
            for j in 0..=n {
                if i != j && x[(i, j)].abs() > tol {
                    return Err(GeomError::NotGmOrthogonal(format!("residual entry ({i}, {j}) after elimination")));
                }
            }
            let d = x[(i, i)];
            if (d.abs() - 1.0).abs() > tol {
                return Err(GeomError::NotGmOrthogonal(format!("diagonal entry {i} is {d}")));
            }
            diag.push(d.signum());
        }
        let steps = applied
            .into_iter()
            .rev()
            .map(|s| RotationStep { phi: -s.phi, ..s })
            .collect();
        Ok((steps, diag))
    }

    /// Decompose into elementary rotations and a diagonal reflection.
    ///
    /// Rows are cleared bottom-up. In each row the elliptic partners of the
    /// diagonal column are merged into it left to right, the hyperbolic
    /// partners are merged into the rightmost one and that one is cleared by a
    /// hyperbolic rotation, and parabolic partners are cleared last.
    pub fn decompose(&self) -> Result<Decomposition> {
        let report = is_gm_orthogonal(&self.m, &self.sig, validation_tol());
        if !report.ok {
            let w = report.worst.expect("failed report has a violation");
            return Err(GeomError::NotGmOrthogonal(format!("{} condition fails at ({}, {})", w.condition, w.i, w.j)));
        }
        let (steps, diag) = Self::eliminate(&self.m, &self.sig)?;
        let uniform = |d: &[f64]| d.iter().all(|&v| v == d[0]);
        if uniform(&diag) {
            return Ok(Decomposition { rotations: steps, reflection: vec![1.0; diag.len()] });
        }
        if let Ok((s2, d2)) = Self::eliminate(&(-&self.m), &self.sig) {
            if uniform(&d2) {
                return Ok(Decomposition { rotations: s2, reflection: vec![1.0; d2.len()] });
            }
        }
        Ok(Decomposition { rotations: steps, reflection: diag })
    }

    /// Whether the motion is a product of rotations.
    pub fn is_proper(&self) -> Result<bool> {
        Ok(self.decompose()?.is_proper())
    }

    /// Point `p` of the path from the identity (`p = 0`) to this motion (`p = 1`)
    /// obtained by scaling every rotation angle of the decomposition.
    pub fn parameterize(&self, p: f64) -> Result<Motion> {
        let d = self.decompose()?;
        if !d.is_proper() {
            return Err(GeomError::ImproperMotion);
        }
        let n1 = self.sig.dim() + 1;
        let mut m = DMatrix::identity(n1, n1);
        for st in &d.rotations {
            m *= Self::rotation(st.i, st.j, p * st.phi, &self.sig)?.m;
        }
        Ok(Motion { m: canonicalize(m), sig: self.sig.clone() })
    }
}

/// Tolerance for validating externally supplied or accumulated matrices.
#[must_use]
pub fn validation_tol() -> f64 {
    (eps() * 100.0).max(1e-10)
}
