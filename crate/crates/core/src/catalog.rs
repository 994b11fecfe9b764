//! Named spaces, signatures of quadratic forms, plane duality and
//! crystallographic groups on the nine planes.

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{GeomError, Result};
use crate::metaspace::{canonical_point, natural_square, normalize, product_i, MVector};
use crate::motions::{is_gm_orthogonal, validation_tol, Motion};
use crate::sigcore::{gtrig_inverse, Signature, TrigFn};

/// A space of the registry.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedSpace {
    pub name: String,
    pub sig: Signature,
    pub notes: &'static str,
}

/// Family name, default dimension, builder from the dimension, notes.
type Family = (&'static str, usize, fn(usize) -> Vec<i8>, &'static str);

fn tail(head: &[i8], n: usize) -> Vec<i8> {
    let mut k = head.to_vec();
    k.resize(n.max(head.len()), 1);
    k.truncate(n);
    k
}

const FAMILIES: [Family; 13] = [
    ("elliptic", 2, |n| tail(&[1], n), "constant positive curvature, elliptic angles"),
    ("euclidean", 2, |n| tail(&[0], n), "flat, elliptic angles"),
    ("hyperbolic", 2, |n| tail(&[-1], n), "constant negative curvature, elliptic angles"),
    ("galilean", 2, |n| tail(&[0, 0], n), "flat, parabolic angles"),
    ("galilean-positive", 2, |n| tail(&[1, 0], n), "positively curved, parabolic angles"),
    ("galilean-negative", 2, |n| tail(&[-1, 0], n), "negatively curved, parabolic angles"),
    ("minkowski", 4, |n| tail(&[0, -1], n), "flat space-time, coordinate 1 is time"),
    ("minkowski-plane", 2, |n| tail(&[0, -1], n), "flat, hyperbolic angles"),
    ("minkowski-positive", 2, |n| tail(&[1, -1], n), "positively curved, hyperbolic angles"),
    ("minkowski-negative", 2, |n| tail(&[-1, -1], n), "negatively curved, hyperbolic angles"),
    ("desitter", 4, |n| tail(&[-1, -1], n), "de Sitter space-time"),
    ("antidesitter", 4, |n| tail(&[1, -1], n), "anti de Sitter space-time"),
    ("galilean-spacetime", 4, |n| tail(&[0, 0], n), "Galilean space-time"),
];

/// All registered spaces at their default dimension.
#[must_use]
pub fn registry() -> Vec<NamedSpace> {
    FAMILIES
        .iter()
        .map(|(name, n, build, notes)| NamedSpace {
            name: (*name).to_string(),
            sig: Signature::new(build(*n)).expect("registry signatures are valid"),
            notes,
        })
        .collect()
}

/// Look up a space by name, optionally with a dimension suffix such as `euclidean-3`.
pub fn lookup(name: &str) -> Result<NamedSpace> {
    let name = name.trim().to_ascii_lowercase();
    let (base, dim) = match name.rsplit_once('-') {
        Some((b, d)) if d.chars().all(|c| c.is_ascii_digit()) && !d.is_empty() => {
            let n: usize = d.parse().map_err(|_| GeomError::InvalidParams(format!("bad dimension in {name:?}")))?;
            (b.to_string(), Some(n))
        }
        _ => (name.clone(), None),
    };
    let (fname, n0, build, notes) = FAMILIES
        .iter()
        .find(|f| f.0 == base)
        .ok_or_else(|| GeomError::InvalidParams(format!("unknown space {name:?}")))?;
    let n = dim.unwrap_or(*n0);
    let min = if base.contains("galilean") || base.starts_with("minkowski") || base.contains("desitter") { 2 } else { 1 };
    if n < min {
        return Err(GeomError::InvalidParams(format!("{fname} needs dimension at least {min}")));
    }
    Ok(NamedSpace { name: format!("{fname}-{n}"), sig: Signature::new(build(n))?, notes })
}

/// Signature derived from a quadratic form.
#[derive(Debug, Clone, PartialEq)]
pub struct FormSignature {
    pub sig: Signature,
    /// 1-based positions whose value is free and was set to 1.
    pub ambiguous: Vec<usize>,
}

/// Signature of a space with metric form `Σ p_i dx_i²` and curvature type
/// `curvature`: `k1` is the curvature, later elements are quotients of
/// consecutive coefficients.
pub fn signature_from_form(coeffs: &[i8], curvature: i8) -> Result<FormSignature> {
    if coeffs.first() != Some(&1) {
        return Err(GeomError::MalformedForm("the first coefficient must be +1".into()));
    }
    if let Some(&bad) = coeffs.iter().find(|v| !(-1..=1).contains(*v)) {
        return Err(GeomError::MalformedForm(format!("coefficient {bad} is not in {{-1,0,1}}")));
    }
    if let Some(z) = coeffs.iter().position(|&v| v == 0) {
        if coeffs[z..].iter().any(|&v| v != 0) {
            return Err(GeomError::MalformedForm("zero coefficients must be last".into()));
        }
    }
    let mut k = vec![curvature];
    let mut ambiguous = Vec::new();
    for i in 1..coeffs.len() {
        if coeffs[i - 1] == 0 {
            ambiguous.push(i + 1);
            k.push(1);
        } else {
            k.push(coeffs[i] * coeffs[i - 1]);
        }
    }
    Ok(FormSignature { sig: Signature::new(k)?, ambiguous })
}

/// Signature `{0, k1, ..., kn}` of the metaspace as a linear space.
#[must_use]
pub fn metaspace_signature(sig: &Signature) -> Signature {
    let mut k = vec![0];
    k.extend_from_slice(sig.elements());
    Signature::new(k).expect("valid")
}

/// Signature of the tangent space: `k1` replaced by 0.
#[must_use]
pub fn tangent_signature(sig: &Signature) -> Signature {
    let mut k = sig.elements().to_vec();
    if let Some(first) = k.first_mut() {
        *first = 0;
    }
    Signature::new(k).expect("valid")
}

/// Isomorphism onto the dual space: anti-transpose of the inverse. The result
/// lives on the reversed signature.
#[must_use]
pub fn dual_transform(m: &Motion) -> Motion {
    let inv = m.inverse();
    let a = inv.matrix();
    let n = a.nrows() - 1;
    let out = DMatrix::from_fn(n + 1, n + 1, |i, j| a[(n - j, n - i)]);
    Motion::from_matrix_unchecked(out, &m.sig().reversed())
}

/// Parameters a group was built from.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupParams {
    /// Regular `p`-gon tiling with `q` polygons at each vertex, translation half-step `d`.
    Tiling { p: u32, q: u32, d: f64 },
    /// Dual of a tiling group, rotation half-angle `phi`.
    DualTiling { p: u32, q: u32, phi: f64 },
    /// Lattice with steps `a`, `b` on the flat Galilean plane.
    Galilean { a: f64, b: f64 },
    /// Lattice with steps `a`, `b` and rotation `cosh⁻¹ u` on the flat Minkowski plane.
    Minkowski { u: u32, plus: bool, a: f64, b: f64 },
    /// Dual of the flat Minkowski group.
    CurvedGalilean { u: u32, plus: bool },
    /// Group on the negatively curved Minkowski plane, from an even-`q` tiling.
    CurvedMinkowski { p: u32, q: u32 },
}

/// A crystallographic group on a plane, generated by a translation and a rotation.
#[derive(Debug, Clone, PartialEq)]
pub struct CrystalGroup {
    pub plane_sig: Signature,
    pub translation: Motion,
    pub rotation: Motion,
    /// Order of the rotation when it is finite.
    pub rotation_order: Option<u32>,
    pub params: GroupParams,
    pub lattice_seed: MVector,
}

impl CrystalGroup {
    #[must_use]
    pub fn generators(&self) -> [&Motion; 2] {
        [&self.translation, &self.rotation]
    }

    /// Both generators pass the GM-orthogonality check.
    #[must_use]
    pub fn generators_valid(&self) -> bool {
        self.generators().iter().all(|g| is_gm_orthogonal(g.matrix(), &self.plane_sig, validation_tol()).ok)
    }
}

/// Length type of the tiling plane: sign of `4 - (p-2)(q-2)`.
#[must_use]
pub fn tiling_curvature(p: u32, q: u32) -> i8 {
    let v = (i64::from(p) - 2) * (i64::from(q) - 2);
    match v.cmp(&4) {
        std::cmp::Ordering::Less => 1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => -1,
    }
}

/// Catheti and hypotenuse of the fundamental right triangle with acute angles
/// `π/p`, `π/q`, in a direction of type `k`.
fn fundamental_sides(p: u32, q: u32, k: i8) -> Result<(f64, f64, f64)> {
    let (pp, qq) = (PI / f64::from(p), PI / f64::from(q));
    let ca = qq.cos() / pp.sin();
    let cb = pp.cos() / qq.sin();
    let cc = 1.0 / (pp.tan() * qq.tan());
    Ok((gtrig_inverse(ca, TrigFn::C, k)?, gtrig_inverse(cb, TrigFn::C, k)?, gtrig_inverse(cc, TrigFn::C, k)?))
}

fn parity_step(p: u32, q: u32, a: f64, b: f64, c: f64) -> f64 {
    if q.is_multiple_of(2) {
        b
    } else if p.is_multiple_of(2) {
        b + c
    } else {
        a + b + c
    }
}

fn check_pq(p: u32, q: u32) -> Result<()> {
    if p < 3 || q < 3 {
        return Err(GeomError::InvalidParams(format!("p and q must be at least 3, got ({p}, {q})")));
    }
    Ok(())
}

fn positive(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(GeomError::InvalidParams(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

/// Symmetry group of the `{p, q}` tiling on the elliptic, Euclidean or
/// hyperbolic plane. `d` is used only on the Euclidean plane (default 1).
pub fn tiling_group(p: u32, q: u32, d: Option<f64>) -> Result<CrystalGroup> {
    check_pq(p, q)?;
    let k1 = tiling_curvature(p, q);
    let sig = Signature::new(vec![k1, 1])?;
    let d = if k1 == 0 {
        let d = d.unwrap_or(1.0);
        positive("d", d)?;
        d
    } else {
        let (a, b, c) = fundamental_sides(p, q, k1)?;
        parity_step(p, q, a, b, c)
    };
    Ok(CrystalGroup {
        translation: Motion::main_rotation(1, 2.0 * d, &sig)?,
        rotation: Motion::main_rotation(2, 2.0 * PI / f64::from(q), &sig)?,
        rotation_order: Some(q),
        params: GroupParams::Tiling { p, q, d },
        lattice_seed: MVector::origin(2),
        plane_sig: sig,
    })
}

/// Group on the dual plane `{1, k}` of a tiling plane: the translation turns
/// by `2π/q` and the rotation uses the fundamental sides as angles.
pub fn dual_tiling_group(p: u32, q: u32, phi: Option<f64>) -> Result<CrystalGroup> {
    check_pq(p, q)?;
    let k2 = tiling_curvature(p, q);
    let sig = Signature::new(vec![1, k2])?;
    let phi = if k2 == 0 {
        let v = phi.unwrap_or(1.0);
        positive("phi", v)?;
        v
    } else {
        let (a, b, c) = fundamental_sides(p, q, k2)?;
        parity_step(p, q, a, b, c)
    };
    Ok(CrystalGroup {
        translation: Motion::main_rotation(1, 2.0 * PI / f64::from(q), &sig)?,
        rotation: Motion::main_rotation(2, 2.0 * phi, &sig)?,
        rotation_order: if k2 == 1 { Some(p) } else { None },
        params: GroupParams::DualTiling { p, q, phi },
        lattice_seed: MVector::origin(2),
        plane_sig: sig,
    })
}

/// Shear group of the lattice `E + i a x + j b y` on the flat Galilean plane.
pub fn galilean_group(a: f64, b: f64) -> Result<CrystalGroup> {
    positive("a", a)?;
    if !b.is_finite() {
        return Err(GeomError::InvalidParams("b must be finite".into()));
    }
    let sig = Signature::new(vec![0, 0])?;
    Ok(CrystalGroup {
        translation: Motion::main_rotation(1, a, &sig)?,
        rotation: Motion::main_rotation(2, b / a, &sig)?,
        rotation_order: None,
        params: GroupParams::Galilean { a, b },
        lattice_seed: MVector::origin(2),
        plane_sig: sig,
    })
}

/// Ratio `b/a` of the Minkowski lattice steps: `√((u+1)/(u-1))` for the plus
/// sign, the reciprocal otherwise.
fn minkowski_ratio(u: u32, plus: bool) -> Result<f64> {
    if u < 2 {
        return Err(GeomError::InvalidParams(format!("u must be at least 2, got {u}")));
    }
    let u = f64::from(u);
    Ok(if plus { ((u + 1.0) / (u - 1.0)).sqrt() } else { ((u - 1.0) / (u + 1.0)).sqrt() })
}

/// Group of the lattice `E + i a x + j b y` on the flat Minkowski plane with
/// rotation `cosh⁻¹ u`.
pub fn minkowski_group(u: u32, plus: bool, a: Option<f64>) -> Result<CrystalGroup> {
    let ratio = minkowski_ratio(u, plus)?;
    let a = a.unwrap_or(1.0);
    positive("a", a)?;
    let sig = Signature::new(vec![0, -1])?;
    let phi = f64::from(u).acosh();
    Ok(CrystalGroup {
        translation: Motion::main_rotation(1, a, &sig)?,
        rotation: Motion::main_rotation(2, phi, &sig)?,
        rotation_order: None,
        params: GroupParams::Minkowski { u, plus, a, b: a * ratio },
        lattice_seed: MVector::origin(2),
        plane_sig: sig,
    })
}

/// Images of the lattice steps under the Minkowski rotation, in lattice units.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeCheck {
    /// `R P = (1 : u a : v b)` and `R Q = (1 : r a : t b)`.
    pub u: f64,
    pub v: f64,
    pub r: f64,
    pub t: f64,
    /// Largest distance of the four numbers from an integer.
    pub max_fraction: f64,
}

/// Lattice closure of a Minkowski group.
pub fn minkowski_lattice_check(g: &CrystalGroup) -> Result<LatticeCheck> {
    let GroupParams::Minkowski { a, b, .. } = g.params else {
        return Err(GeomError::InvalidParams("not a flat Minkowski group".into()));
    };
    let rp = g.rotation.apply(&MVector::new(vec![1.0, a, 0.0]))?;
    let rq = g.rotation.apply(&MVector::new(vec![1.0, 0.0, b]))?;
    let (u, v, r, t) = (rp[1] / a / rp[0], rp[2] / b / rp[0], rq[1] / a / rq[0], rq[2] / b / rq[0]);
    let max_fraction = [u, v, r, t].iter().fold(0.0f64, |m, x| m.max((x - x.round()).abs()));
    Ok(LatticeCheck { u, v, r, t, max_fraction })
}

/// Group on the negatively curved Galilean plane, dual to the flat Minkowski group.
pub fn curved_galilean_group(u: u32, plus: bool) -> Result<CrystalGroup> {
    let ratio = minkowski_ratio(u, plus)?;
    let sig = Signature::new(vec![-1, 0])?;
    Ok(CrystalGroup {
        translation: Motion::main_rotation(1, f64::from(u).acosh(), &sig)?,
        rotation: Motion::main_rotation(2, ratio, &sig)?,
        rotation_order: None,
        params: GroupParams::CurvedGalilean { u, plus },
        lattice_seed: MVector::origin(2),
        plane_sig: sig,
    })
}

/// Group on the negatively curved Minkowski plane built from a hyperbolic
/// `{p, q}` tiling. Only even `q` is supported.
pub fn curved_minkowski_group(p: u32, q: u32) -> Result<CrystalGroup> {
    check_pq(p, q)?;
    if tiling_curvature(p, q) != -1 {
        return Err(GeomError::InvalidParams(format!("({p}, {q}) is not a hyperbolic tiling")));
    }
    if !q.is_multiple_of(2) {
        return Err(GeomError::Unsupported(format!("odd q = {q} on the negatively curved Minkowski plane")));
    }
    let (a, b, c) = fundamental_sides(p, q, -1)?;
    let phi = if q.is_multiple_of(4) { b } else { a + c };
    let sig = Signature::new(vec![-1, -1])?;
    Ok(CrystalGroup {
        translation: Motion::main_rotation(1, 2.0 * b, &sig)?,
        rotation: Motion::main_rotation(2, 2.0 * phi, &sig)?,
        rotation_order: None,
        params: GroupParams::CurvedMinkowski { p, q },
        lattice_seed: MVector::origin(2),
        plane_sig: sig,
    })
}

/// A representative group for each of the nine planes.
pub fn plane_group(sig: &Signature) -> Result<CrystalGroup> {
    match sig.elements() {
        [1, 1] => tiling_group(5, 3, None),
        [0, 1] => tiling_group(4, 4, None),
        [-1, 1] => tiling_group(3, 7, None),
        [1, 0] => dual_tiling_group(4, 4, None),
        [1, -1] => dual_tiling_group(3, 7, None),
        [0, 0] => galilean_group(1.0, 1.0),
        [0, -1] => minkowski_group(2, true, None),
        [-1, 0] => curved_galilean_group(2, true),
        [-1, -1] => curved_minkowski_group(3, 8),
        _ => Err(GeomError::WrongSignature(format!("expected a plane, got {sig}"))),
    }
}

/// Lattice nodes and their adjacency.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub nodes: Vec<MVector>,
    pub edges: Vec<(usize, usize)>,
    /// Smallest separation between two nodes, `None` for a single node.
    pub min_distance: Option<f64>,
}

/// Default node cap of [`orbit`].
pub const ORBIT_NODE_CAP: usize = 50_000;

/// Separation of two proper points: the inverse sine of the residual norm,
/// at the length type.
fn separation(x: &MVector, y: &MVector, sig: &Signature) -> Result<f64> {
    let c = product_i(y, x, 0, sig)?;
    let r = y.axpy(-c, x);
    if r.norm_inf() <= 1e-12 {
        return Ok(0.0);
    }
    let w = natural_square(&r, sig)?;
    let k1 = sig.elements()[0];
    Ok(gtrig_inverse(w.max(0.0).sqrt(), TrigFn::S, k1).unwrap_or(std::f64::consts::FRAC_PI_2))
}

/// Breadth-first lattice around the seed. Rotations about the current node are
/// free; `depth` bounds the number of translation steps. Nodes closer than
/// `tol` are merged.
pub fn orbit(g: &CrystalGroup, depth: usize, tol: f64, cap: usize) -> Result<Orbit> {
    let sig = &g.plane_sig;
    let tol = if tol > 0.0 { tol } else { 1e-6 };
    let spins: i64 = match g.rotation_order {
        Some(q) => i64::from(q / 2),
        None => depth as i64,
    };
    let rot_inv = g.rotation.inverse();
    let mut spin_motions = vec![Motion::identity(sig)];
    let (mut fwd, mut back) = (Motion::identity(sig), Motion::identity(sig));
    for _ in 0..spins {
        fwd = fwd.compose(&g.rotation)?;
        back = back.compose(&rot_inv)?;
        spin_motions.push(fwd.clone());
        spin_motions.push(back.clone());
    }
    let steps = [g.translation.clone(), g.translation.inverse()];
    let step_words: Vec<Motion> = spin_motions
        .iter()
        .flat_map(|s| steps.iter().map(move |t| s.compose(t)))
        .collect::<Result<Vec<_>>>()?;

    let key = |p: &MVector| -> Vec<i64> { p.coords().iter().map(|v| (v / tol).floor() as i64).collect() };
    let mut cells: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    let find = |cells: &HashMap<Vec<i64>, Vec<usize>>, nodes: &[MVector], p: &MVector| -> Option<usize> {
        let base = key(p);
        let dims = base.len();
        for mask in 0..3usize.pow(dims as u32) {
            let mut cell = base.clone();
            let mut m = mask;
            for c in &mut cell {
                *c += (m % 3) as i64 - 1;
                m /= 3;
            }
            if let Some(ids) = cells.get(&cell) {
                if let Some(&id) = ids.iter().find(|&&id| nodes[id].dist_inf(p) < tol) {
                    return Some(id);
                }
            }
        }
        None
    };

    let point = |w: &Motion| -> Result<MVector> { canonical_point(&normalize(&w.apply(&g.lattice_seed)?, sig)?) };
    let seed = point(&Motion::identity(sig))?;
    let mut nodes = vec![seed.clone()];
    cells.entry(key(&seed)).or_default().push(0);
    let mut frames = vec![Motion::identity(sig)];
    let mut edges = std::collections::BTreeSet::new();
    let mut frontier = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &id in &frontier {
            for w in &step_words {
                let frame = frames[id].compose(w)?;
                let p = point(&frame)?;
                let target = match find(&cells, &nodes, &p) {
                    Some(t) => t,
                    None => {
                        if nodes.len() >= cap {
                            return Err(GeomError::OrbitExplosion(cap));
                        }
                        let t = nodes.len();
                        cells.entry(key(&p)).or_default().push(t);
                        nodes.push(p);
                        frames.push(frame);
                        next.push(t);
                        t
                    }
                };
                if target != id {
                    edges.insert((id.min(target), id.max(target)));
                }
            }
        }
        frontier = next;
    }
    let mut min_distance: Option<f64> = None;
    let mut consider = |d: f64| min_distance = Some(min_distance.map_or(d, |m: f64| m.min(d)));
    if nodes.len() <= 4000 {
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                consider(separation(&nodes[i], &nodes[j], sig)?);
            }
        }
    } else {
        for &(i, j) in &edges {
            consider(separation(&nodes[i], &nodes[j], sig)?);
        }
    }
    Ok(Orbit { nodes, edges: edges.into_iter().collect(), min_distance })
}
