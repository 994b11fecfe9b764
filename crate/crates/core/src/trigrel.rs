//! Triangle relations on the nine homogeneous planes.
//!
//! Sides are measures of type `k1`, angles of type `k2`. Triangles use the
//! internal angles `alpha`, `gamma` and the external angle `beta_prime` at the
//! middle vertex, which keeps every relation free of `π`.

use std::cmp::Ordering;

use crate::error::{GeomError, Result};
use crate::sigcore::{gtrig, gtrig_arg, gtrig_inverse, Signature, TrigFn};
use crate::tol::eps;

/// A triangle part: known value, not yet known, or not fixed by the equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Part {
    Known(f64),
    Unknown,
    Undetermined,
}

impl Part {
    #[must_use]
    pub fn value(self) -> Option<f64> {
        match self {
            Part::Known(v) => Some(v),
            _ => None,
        }
    }

    #[must_use]
    pub fn from_option(v: Option<f64>) -> Part {
        v.map_or(Part::Unknown, Part::Known)
    }
}

/// A general triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    pub a: Part,
    pub b: Part,
    pub c: Part,
    pub alpha: Part,
    pub beta_prime: Part,
    pub gamma: Part,
    /// Inputs were reduced modulo `π` on an elliptic axis.
    pub reduced: bool,
}

impl Triangle {
    /// All six values, if every part is known.
    #[must_use]
    pub fn values(&self) -> Option<[f64; 6]> {
        Some([
            self.a.value()?,
            self.b.value()?,
            self.c.value()?,
            self.alpha.value()?,
            self.beta_prime.value()?,
            self.gamma.value()?,
        ])
    }
}

/// The two types of a plane, checked.
fn plane_types(sig: &Signature) -> Result<(i8, i8)> {
    match sig.elements() {
        [k1, k2] => Ok((*k1, *k2)),
        _ => Err(GeomError::WrongSignature(format!("expected a plane, got {sig}"))),
    }
}

fn reduce_pi(v: f64) -> f64 {
    v.rem_euclid(std::f64::consts::PI)
}

/// Solve a triangle from two sides and the included angle.
///
/// `b` and `c` meet at the vertex with internal angle `alpha`.
pub fn solve_triangle_sas(b: f64, c: f64, alpha: f64, sig: &Signature) -> Result<Triangle> {
    let (k1, k2) = plane_types(sig)?;
    let (mut b, mut c, mut alpha) = (b, c, alpha);
    let mut reduced = false;
    if k1 == 1 {
        let (rb, rc) = (reduce_pi(b), reduce_pi(c));
        reduced |= rb != b || rc != c;
        (b, c) = (rb, rc);
    }
    if k2 == 1 {
        let ra = reduce_pi(alpha);
        reduced |= ra != alpha;
        alpha = ra;
    }
    let (tb, tc, ta) = (gtrig(b, k1), gtrig(c, k1), gtrig(alpha, k2));
    let a = if k1 != 0 {
        let ca = tb.c * tc.c + f64::from(k1) * tb.s * tc.s * ta.c;
        gtrig_inverse(ca, TrigFn::C, k1).map_err(|e| GeomError::OutOfDomain(e.to_string()))?
    } else {
        let sq = b * b + c * c - 2.0 * b * c * ta.c;
        if sq < -eps() {
            return Err(GeomError::OutOfDomain(format!("squared side {sq} is negative")));
        }
        sq.max(0.0).sqrt()
    };
    let mut tri = Triangle {
        a: Part::Known(a),
        b: Part::Known(b),
        c: Part::Known(c),
        alpha: Part::Known(alpha),
        beta_prime: Part::Undetermined,
        gamma: Part::Undetermined,
        reduced,
    };
    if gtrig(a, k1).s.abs() <= eps() {
        return Ok(tri);
    }
    let gx = tb.s * tc.c - tb.c * tc.s * ta.c;
    let gy = tc.s * ta.s;
    tri.gamma = Part::Known(gtrig_arg(gx, gy, k2)?);
    let bx = -tb.c * tc.s + tb.s * tc.c * ta.c;
    let by = tb.s * ta.s;
    tri.beta_prime = Part::Known(gtrig_arg(bx, by, k2)?);
    Ok(tri)
}

/// A named relation and its relative residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub name: &'static str,
    pub value: f64,
}

fn rel(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / 1f64.max(lhs.abs()).max(rhs.abs())
}

/// Residuals of the sine law, both cosine-law families and the tangent forms.
///
/// Tangent forms are skipped when a cosine involved vanishes.
pub fn triangle_residuals(tri: &Triangle, sig: &Signature) -> Result<Vec<Residual>> {
    let (k1, k2) = plane_types(sig)?;
    let [a, b, c, al, be, ga] = tri.values().ok_or_else(|| GeomError::Undetermined("triangle has unknown parts".into()))?;
    let (f1, f2) = (f64::from(k1), f64::from(k2));
    let (ta, tb, tc) = (gtrig(a, k1), gtrig(b, k1), gtrig(c, k1));
    let (tal, tbe, tga) = (gtrig(al, k2), gtrig(be, k2), gtrig(ga, k2));
    let mut out = vec![
        Residual { name: "sine law (a, b)", value: rel(ta.s * tbe.s, tb.s * tal.s) },
        Residual { name: "sine law (a, c)", value: rel(ta.s * tga.s, tc.s * tal.s) },
        Residual { name: "side cosine law a", value: rel(ta.c, tb.c * tc.c + f1 * tb.s * tc.s * tal.c) },
        Residual { name: "side cosine law b", value: rel(tb.c, ta.c * tc.c - f1 * ta.s * tc.s * tbe.c) },
        Residual { name: "side cosine law c", value: rel(tc.c, ta.c * tb.c + f1 * ta.s * tb.s * tga.c) },
        Residual { name: "angle cosine law alpha", value: rel(tal.c, tbe.c * tga.c + f2 * tbe.s * tga.s * ta.c) },
        Residual { name: "angle cosine law beta", value: rel(tbe.c, tal.c * tga.c - f2 * tal.s * tga.s * tb.c) },
        Residual { name: "angle cosine law gamma", value: rel(tga.c, tal.c * tbe.c + f2 * tal.s * tbe.s * tc.c) },
    ];
    let k12 = f1 * f2;
    // x² (1 ± k y z q)² = y² + z² ∓ 2 y z q + k1 k2 y² z² s²
    let tangent = |x: f64, y: f64, z: f64, q: f64, s: f64, k: f64, sign: f64| {
        let d = 1.0 + sign * k * y * z * q;
        rel(x * x * d * d, y * y + z * z - sign * 2.0 * y * z * q + k12 * y * y * z * z * s * s)
    };
    let small = |v: f64| v.abs() <= eps().sqrt();
    if ![ta.c, tb.c, tc.c].into_iter().any(small) {
        out.push(Residual { name: "side tangent law a", value: tangent(ta.t, tb.t, tc.t, tal.c, tal.s, f1, 1.0) });
        out.push(Residual { name: "side tangent law b", value: tangent(tb.t, ta.t, tc.t, tbe.c, tbe.s, f1, -1.0) });
        out.push(Residual { name: "side tangent law c", value: tangent(tc.t, ta.t, tb.t, tga.c, tga.s, f1, 1.0) });
    }
    if ![tal.c, tbe.c, tga.c].into_iter().any(small) {
        out.push(Residual { name: "angle tangent law alpha", value: tangent(tal.t, tbe.t, tga.t, ta.c, ta.s, f2, 1.0) });
        out.push(Residual { name: "angle tangent law beta", value: tangent(tbe.t, tal.t, tga.t, tb.c, tb.s, f2, -1.0) });
        out.push(Residual { name: "angle tangent law gamma", value: tangent(tga.t, tal.t, tbe.t, tc.c, tc.s, f2, 1.0) });
    }
    Ok(out)
}

/// Direction of the four triangle inequalities of a plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InequalityProfile {
    /// `a` compared with `b - c`.
    pub shortest_edge: Ordering,
    /// `b` compared with `a + c`.
    pub longest_edge: Ordering,
    /// `alpha` compared with `beta_prime - gamma`.
    pub internal_angle: Ordering,
    /// `beta_prime` compared with `alpha + gamma`.
    pub external_angle: Ordering,
}

/// The edge relations depend on `k2`, the angle relations on `k1`.
pub fn triangle_inequality_profile(sig: &Signature) -> Result<InequalityProfile> {
    let (k1, k2) = plane_types(sig)?;
    let lower = |k: i8| match k {
        1 => Ordering::Greater,
        0 => Ordering::Equal,
        _ => Ordering::Less,
    };
    Ok(InequalityProfile {
        shortest_edge: lower(k2),
        longest_edge: lower(k2).reverse(),
        internal_angle: lower(k1),
        external_angle: lower(k1).reverse(),
    })
}

/// A right triangle. The right angle is opposite the hypotenuse `c`.
///
/// The cathetus `a` has type `k1 k2`, `b` and `c` type `k1`, the angles type `k2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RightTriangle {
    pub a: Part,
    pub b: Part,
    pub c: Part,
    pub alpha: Part,
    pub beta_prime: Part,
}

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const AL: usize = 3;
const BE: usize = 4;

/// `f(x) = g(y) · h(z)`.
type ProductEq = [(TrigFn, usize); 3];

const PRODUCT_EQS: [ProductEq; 10] = {
    use TrigFn::{C as Cf, S as Sf, T as Tf};
    [
        [(Tf, B), (Tf, C), (Cf, AL)],
        [(Tf, A), (Tf, C), (Sf, BE)],
        [(Sf, A), (Sf, C), (Sf, AL)],
        [(Sf, B), (Sf, C), (Cf, BE)],
        [(Tf, A), (Sf, B), (Tf, AL)],
        [(Sf, A), (Tf, B), (Tf, BE)],
        [(Cf, AL), (Cf, A), (Cf, BE)],
        [(Sf, BE), (Cf, B), (Sf, AL)],
        [(Cf, C), (Cf, A), (Cf, B)],
        [(Tf, BE), (Cf, C), (Tf, AL)],
    ]
};

/// `T²x = p T²u + T²y + q T²u T²y`, as (x, u, y).
const SQUARE_EQS: [[usize; 3]; 2] = [[C, A, B], [AL, A, BE]];

fn eval(f: TrigFn, v: f64, k: i8) -> f64 {
    let t = gtrig(v, k);
    match f {
        TrigFn::C => t.c,
        TrigFn::S => t.s,
        TrigFn::T => t.t,
    }
}

fn right_types(k1: i8, k2: i8) -> [i8; 5] {
    [k1 * k2, k1, k1, k2, k2]
}

fn square_coeffs(x: usize, k1: i8, k2: i8) -> (f64, f64) {
    let q = f64::from(k1 * k2);
    if x == C {
        (f64::from(k2), q)
    } else {
        (f64::from(k1), q)
    }
}

/// Solve a right triangle from any two independent parts by propagating the
/// product relations until nothing changes.
pub fn solve_right_triangle(known: &RightTriangle, sig: &Signature) -> Result<RightTriangle> {
    let (k1, k2) = plane_types(sig)?;
    let ty = right_types(k1, k2);
    let mut v: [Option<f64>; 5] = [known.a, known.b, known.c, known.alpha, known.beta_prime].map(Part::value);
    if v.iter().flatten().count() < 2 {
        return Err(GeomError::Underdetermined);
    }
    let tiny = eps();
    let inv = |f: TrigFn, x: f64, k: i8| -> Option<f64> {
        if !x.is_finite() {
            return None;
        }
        gtrig_inverse(x, f, k).ok()
    };
    for _ in 0..10 {
        let mut changed = false;
        for eq in &PRODUCT_EQS {
            let vals: Vec<Option<f64>> = eq.iter().map(|&(f, p)| v[p].map(|x| eval(f, x, ty[p]))).collect();
            let unknown: Vec<usize> = (0..3).filter(|&s| v[eq[s].1].is_none()).collect();
            if unknown.len() != 1 {
                continue;
            }
            let s = unknown[0];
            let target = match s {
                0 => vals[1].zip(vals[2]).map(|(y, z)| y * z),
                _ => {
                    let other = if s == 1 { vals[2] } else { vals[1] };
                    vals[0].zip(other).and_then(|(x, o)| (o.abs() > tiny).then(|| x / o))
                }
            };
            let (f, p) = eq[s];
            if let Some(x) = target.and_then(|t| inv(f, t, ty[p])) {
                v[p] = Some(x);
                changed = true;
            }
        }
        for &[x, u, y] in &SQUARE_EQS {
            let (pc, qc) = square_coeffs(x, k1, k2);
            let t = |p: usize| v[p].map(|val| gtrig(val, ty[p]).t);
            let solved = match (v[x], v[u], v[y]) {
                (None, Some(_), Some(_)) => {
                    let (tu, ty_) = (t(u).unwrap(), t(y).unwrap());
                    Some((x, pc * tu * tu + ty_ * ty_ + qc * tu * tu * ty_ * ty_))
                }
                (Some(_), None, Some(_)) => {
                    let (tx, ty_) = (t(x).unwrap(), t(y).unwrap());
                    let d = pc + qc * ty_ * ty_;
                    (d.abs() > tiny).then(|| (u, (tx * tx - ty_ * ty_) / d))
                }
                (Some(_), Some(_), None) => {
                    let (tx, tu) = (t(x).unwrap(), t(u).unwrap());
                    let d = 1.0 + qc * tu * tu;
                    (d.abs() > tiny).then(|| (y, (tx * tx - pc * tu * tu) / d))
                }
                _ => None,
            };
            if let Some((p, sq)) = solved {
                if sq >= -tiny {
                    if let Some(val) = inv(TrigFn::T, sq.max(0.0).sqrt(), ty[p]) {
                        v[p] = Some(val);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let worst = right_residuals(&v, k1, k2);
    if worst > 1e-9 {
        return Err(GeomError::Inconsistent(worst));
    }
    let part = |x: Option<f64>| x.map_or(Part::Undetermined, Part::Known);
    Ok(RightTriangle { a: part(v[A]), b: part(v[B]), c: part(v[C]), alpha: part(v[AL]), beta_prime: part(v[BE]) })
}

/// Largest relative residual over the relations whose parts are all known.
fn right_residuals(v: &[Option<f64>; 5], k1: i8, k2: i8) -> f64 {
    let ty = right_types(k1, k2);
    let mut worst = 0.0f64;
    for eq in &PRODUCT_EQS {
        let vals: Option<Vec<f64>> = eq.iter().map(|&(f, p)| v[p].map(|x| eval(f, x, ty[p]))).collect();
        if let Some(vals) = vals {
            let r = rel(vals[0], vals[1] * vals[2]);
            if r.is_finite() {
                worst = worst.max(r);
            }
        }
    }
    for &[x, u, y] in &SQUARE_EQS {
        if let (Some(xv), Some(uv), Some(yv)) = (v[x], v[u], v[y]) {
            let (pc, qc) = square_coeffs(x, k1, k2);
            let (tx, tu, tyv) = (gtrig(xv, ty[x]).t, gtrig(uv, ty[u]).t, gtrig(yv, ty[y]).t);
            let r = rel(tx * tx, pc * tu * tu + tyv * tyv + qc * tu * tu * tyv * tyv);
            if r.is_finite() {
                worst = worst.max(r);
            }
        }
    }
    worst
}

/// Largest residual of a fully known right triangle.
pub fn right_triangle_residual(tri: &RightTriangle, sig: &Signature) -> Result<f64> {
    let (k1, k2) = plane_types(sig)?;
    let v = [tri.a, tri.b, tri.c, tri.alpha, tri.beta_prime].map(Part::value);
    Ok(right_residuals(&v, k1, k2))
}

/// An area with its type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AreaMeasure {
    pub value: f64,
    pub mtype: i8,
}

/// Area of a right triangle from its catheti, `T(s/2) = T(a/2) T(b/2)` with
/// the area type `k1 · k1 k2`.
pub fn right_triangle_area(a: f64, b: f64, sig: &Signature) -> Result<AreaMeasure> {
    let (k1, k2) = plane_types(sig)?;
    let ka = k1 * k2;
    let k = k1 * ka;
    let half = gtrig(a / 2.0, ka).t * gtrig(b / 2.0, k1).t;
    let s = gtrig_inverse(half, TrigFn::T, k).map_err(|e| GeomError::OutOfDomain(e.to_string()))?;
    Ok(AreaMeasure { value: 2.0 * s, mtype: k })
}

/// Numerical area of a right triangle in polar coordinates around the vertex
/// of `alpha`, by Simpson's rule over `steps` strips.
pub fn area_integral_oracle(a: f64, b: f64, sig: &Signature, steps: usize) -> Result<f64> {
    let (k1, k2) = plane_types(sig)?;
    let steps = (steps.max(2) + 1) & !1;
    let ta = gtrig(a, k1 * k2).t;
    let sb = gtrig(b, k1).s;
    let alpha = gtrig_inverse(ta / sb, TrigFn::T, k2)
        .map_err(|e| GeomError::NonConvergent(format!("angle at the apex: {e}")))?;
    let tb = gtrig(b, k1).t;
    let inner = |phi: f64| -> Result<f64> {
        let rho = gtrig_inverse(tb / gtrig(phi, k2).c, TrigFn::T, k1)
            .map_err(|e| GeomError::NonConvergent(format!("boundary at {phi}: {e}")))?;
        Ok(if k1 == 0 { rho * rho / 2.0 } else { (1.0 - gtrig(rho, k1).c) / f64::from(k1) })
    };
    let h = alpha / steps as f64;
    let mut sum = inner(0.0)? + inner(alpha)?;
    for i in 1..steps {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * inner(i as f64 * h)?;
    }
    Ok(sum * h / 3.0)
}

/// Volume type of a space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VolumeType {
    /// Some `k_i` is zero.
    pub parabolic: bool,
    /// Product of the cumulative types. This is proven for planes and
    /// conjectural in higher dimensions.
    pub conjectured: i8,
}

#[must_use]
pub fn volume_type(sig: &Signature) -> VolumeType {
    VolumeType { parabolic: sig.has_zero(), conjectured: sig.cumulative_types().iter().skip(1).product() }
}

/// How points on a line of the space separate it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Separability {
    NonSeparable,
    WeakSeparable,
    StrongSeparable,
}

pub fn separability_class(sig: &Signature) -> Result<Separability> {
    Ok(match sig.k(1)? {
        1 => Separability::NonSeparable,
        0 => Separability::WeakSeparable,
        _ => Separability::StrongSeparable,
    })
}
