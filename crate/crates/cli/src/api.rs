//! JSON routes.
//!
//! Every response is an envelope: `{"ok": true, "result": ...}` or
//! `{"ok": false, "error": {"code", "message"}}`. Non-finite numbers are the
//! strings `"inf"` and `"-inf"`.

use homspace::catalog::{
    dual_tiling_group, dual_transform, lookup, metaspace_signature, orbit, plane_group, registry, tangent_signature,
    tiling_group, CrystalGroup, GroupParams, ORBIT_NODE_CAP,
};
use homspace::lineals::{connectable, measure_between_with, Connectability, Lineal, MeasureResult, MeasureValue};
use homspace::metaspace::{meta_product, MVector};
use homspace::motions::{axis_relation, degrees_of_freedom, AxisRelation, Motion};
use homspace::tol::CASE_TOL;
use homspace::trigrel::{
    area_integral_oracle, right_triangle_area, right_triangle_residual, separability_class, solve_right_triangle,
    solve_triangle_sas, triangle_inequality_profile, triangle_residuals, volume_type, Part, RightTriangle,
    Separability,
};
use homspace::{GeomError, Signature};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Map, Value};

/// Why a request failed.
#[derive(Debug)]
pub enum ApiError {
    /// The payload could not be read: HTTP 400, CLI usage error.
    BadRequest(String),
    /// The kernel rejected the input: HTTP 422.
    Domain(GeomError),
    NotFound(String),
    MethodNotAllowed(String),
}

impl ApiError {
    #[must_use]
    pub fn status(&self) -> u16 {
        match self {
            ApiError::BadRequest(_) => 400,
            ApiError::Domain(_) => 422,
            ApiError::NotFound(_) => 404,
            ApiError::MethodNotAllowed(_) => 405,
        }
    }

    #[must_use]
    pub fn code(&self) -> &'static str {
        match self {
            ApiError::BadRequest(_) => "malformed_request",
            ApiError::Domain(e) => e.code(),
            ApiError::NotFound(_) => "not_found",
            ApiError::MethodNotAllowed(_) => "method_not_allowed",
        }
    }

    #[must_use]
    pub fn message(&self) -> String {
        match self {
            ApiError::BadRequest(m) | ApiError::NotFound(m) | ApiError::MethodNotAllowed(m) => m.clone(),
            ApiError::Domain(e) => e.to_string(),
        }
    }
}

impl From<GeomError> for ApiError {
    fn from(e: GeomError) -> Self {
        ApiError::Domain(e)
    }
}

type ApiResult = Result<Value, ApiError>;

/// Routes that take a JSON body.
pub const POST_ROUTES: [&str; 10] =
    ["/space", "/measure", "/decompose", "/triangle", "/area", "/connectable", "/apply", "/tiling", "/dual", "/spaces"];

/// Run one request and return the HTTP status and the envelope.
#[must_use]
pub fn handle(method: &str, path: &str, body: &str) -> (u16, String) {
    let out = dispatch(method, path, body);
    let status = out.as_ref().map_or_else(ApiError::status, |_| 200);
    (status, envelope(&out))
}

/// The envelope for a result.
#[must_use]
pub fn envelope(out: &ApiResult) -> String {
    let v = match out {
        Ok(result) => json!({"ok": true, "result": result}),
        Err(e) => json!({"ok": false, "error": {"code": e.code(), "message": e.message()}}),
    };
    serde_json::to_string(&v).expect("values serialize")
}

pub fn dispatch(method: &str, path: &str, body: &str) -> ApiResult {
    let path = path.split('?').next().unwrap_or(path);
    match (method, path) {
        ("GET", "/health") => Ok(json!({"status": "ok"})),
        ("GET", "/spaces") => Ok(spaces()),
        ("POST", p) if POST_ROUTES.contains(&p) => {
            let req: Value = if body.trim().is_empty() {
                json!({})
            } else {
                serde_json::from_str(body).map_err(|e| ApiError::BadRequest(format!("invalid JSON: {e}")))?
            };
            call(p, req)
        }
        (_, "/health" | "/spaces") => Err(ApiError::MethodNotAllowed(format!("{method} {path}"))),
        (_, p) if POST_ROUTES.contains(&p) => Err(ApiError::MethodNotAllowed(format!("{method} {path}"))),
        _ => Err(ApiError::NotFound(format!("no route {path}"))),
    }
}

/// Run a POST route on an already parsed body.
pub fn call(route: &str, req: Value) -> ApiResult {
    match route {
        "/space" => space_info(parse(req)?),
        "/measure" => measure(parse(req)?),
        "/decompose" => decompose(parse(req)?),
        "/triangle" => triangle(parse(req)?),
        "/area" => area(parse(req)?),
        "/connectable" => connect(parse(req)?),
        "/apply" => apply(parse(req)?),
        "/tiling" => tiling(parse(req)?),
        "/dual" => dual(parse(req)?),
        "/spaces" => Ok(spaces()),
        _ => Err(ApiError::NotFound(format!("no route {route}"))),
    }
}

fn parse<T: DeserializeOwned>(v: Value) -> Result<T, ApiError> {
    serde_json::from_value(v).map_err(|e| ApiError::BadRequest(e.to_string()))
}

/// A JSON number, or `"inf"` / `"-inf"`, or null for NaN. Negative zero prints as 0.
#[must_use]
pub fn num(x: f64) -> Value {
    if x == 0.0 {
        json!(0.0)
    } else if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        Value::Null
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn vec_json(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| num(x)).collect())
}

fn rows_json(m: &Motion) -> Value {
    Value::Array(m.rows().iter().map(|r| vec_json(r)).collect())
}

/// A signature string such as `{0,-1}` or a registry name such as `minkowski`.
fn resolve_sig(s: &str) -> Result<Signature, ApiError> {
    if s.trim_start().starts_with('{') {
        Ok(s.parse()?)
    } else {
        Ok(lookup(s)?.sig)
    }
}

fn vector(v: &[f64]) -> MVector {
    MVector::new(v.to_vec())
}

fn spaces() -> Value {
    Value::Array(
        registry()
            .into_iter()
            .map(|s| json!({"name": s.name, "sig": s.sig.to_string(), "notes": s.notes}))
            .collect(),
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SigReq {
    sig: String,
}

fn space_info(req: SigReq) -> ApiResult {
    let sig = resolve_sig(&req.sig)?;
    let n = sig.dim();
    let mut pair_types = Vec::new();
    let mut relations = Vec::new();
    for i in 0..=n {
        let mut row = Vec::new();
        for j in 0..=n {
            row.push(json!(sig.pair_type(i, j)?.to_string()));
            if i < j {
                let r = match axis_relation(i, j, &sig)? {
                    AxisRelation::Equivalent => "equivalent",
                    AxisRelation::Interchangeable => "interchangeable",
                    AxisRelation::NonInterchangeable => "non-interchangeable",
                };
                relations.push(json!({"i": i, "j": j, "relation": r}));
            }
        }
        pair_types.push(Value::Array(row));
    }
    let separability = if n == 0 {
        Value::Null
    } else {
        json!(match separability_class(&sig)? {
            Separability::NonSeparable => "non-separable",
            Separability::WeakSeparable => "weakly separable",
            Separability::StrongSeparable => "strongly separable",
        })
    };
    let vt = volume_type(&sig);
    let tangent = if n == 0 { Value::Null } else { json!(tangent_signature(&sig).to_string()) };
    Ok(json!({
        "sig": sig.to_string(),
        "dim": n,
        "cumulative_types": sig.cumulative_types(),
        "pair_types": pair_types,
        "axis_relations": relations,
        "separability": separability,
        "dof": degrees_of_freedom(n),
        "metaspace_sig": metaspace_signature(&sig).to_string(),
        "tangent_sig": tangent,
        "volume_type": {"parabolic": vt.parabolic, "conjectured": vt.conjectured},
    }))
}

fn measure_value(v: MeasureValue) -> Value {
    match v {
        MeasureValue::Finite(x) => num(x),
        MeasureValue::Infinite => json!("inf"),
        MeasureValue::Undefined => json!("undefined"),
        MeasureValue::Unmeasurable => json!("unmeasurable"),
    }
}

/// JSON form of a measure.
#[must_use]
pub fn measure_json(m: &MeasureResult) -> Value {
    json!({
        "value": measure_value(m.value),
        "complementary": m.complementary.map_or(Value::Null, measure_value),
        "type": m.mtype,
        "case": format!("({})", m.case.letter()),
        "ambiguous": m.ambiguous,
        "w1": num(m.w1),
        "w2": num(m.w2),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureReq {
    sig: String,
    a: Vec<Vec<f64>>,
    b: Vec<Vec<f64>>,
    tol: Option<f64>,
}

fn lineal(vs: &[Vec<f64>], sig: &Signature) -> Result<Lineal, ApiError> {
    if vs.is_empty() {
        return Err(ApiError::BadRequest("a lineal needs at least one vector".into()));
    }
    Ok(Lineal::new(vs.iter().map(|v| vector(v)).collect(), sig)?)
}

fn measure(req: MeasureReq) -> ApiResult {
    let sig = resolve_sig(&req.sig)?;
    let (a, b) = (lineal(&req.a, &sig)?, lineal(&req.b, &sig)?);
    let m = measure_between_with(&a, &b, req.tol.unwrap_or(CASE_TOL))?;
    Ok(measure_json(&m))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixReq {
    sig: String,
    matrix: Vec<Vec<f64>>,
}

fn decompose(req: MatrixReq) -> ApiResult {
    let sig = resolve_sig(&req.sig)?;
    let m = Motion::from_rows(&req.matrix, &sig)?;
    let d = m.decompose()?;
    let rotations: Vec<Value> = d
        .rotations
        .iter()
        .map(|r| json!({"i": r.i, "j": r.j, "angle": num(r.phi), "type": r.ktype}))
        .collect();
    Ok(json!({
        "rotations": rotations,
        "reflection": vec_json(&d.reflection),
        "proper": d.is_proper(),
        "max_rotations": degrees_of_freedom(sig.dim()),
    }))
}

fn dual(req: MatrixReq) -> ApiResult {
    let sig = resolve_sig(&req.sig)?;
    let m = Motion::from_rows(&req.matrix, &sig)?;
    let d = dual_transform(&m);
    Ok(json!({"sig": d.sig().to_string(), "matrix": rows_json(&d)}))
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RightReq {
    a: Option<f64>,
    b: Option<f64>,
    c: Option<f64>,
    alpha: Option<f64>,
    beta_prime: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TriangleReq {
    sig: String,
    b: Option<f64>,
    c: Option<f64>,
    alpha: Option<f64>,
    right: Option<RightReq>,
}

fn part(p: Part) -> Value {
    match p {
        Part::Known(v) => num(v),
        Part::Unknown => json!("unknown"),
        Part::Undetermined => json!("undetermined"),
    }
}

fn ordering(o: std::cmp::Ordering) -> &'static str {
    match o {
        std::cmp::Ordering::Less => "less",
        std::cmp::Ordering::Equal => "equal",
        std::cmp::Ordering::Greater => "greater",
    }
}

fn triangle(req: TriangleReq) -> ApiResult {
    let sig = resolve_sig(&req.sig)?;
    if let Some(r) = req.right {
        if req.b.is_some() || req.c.is_some() || req.alpha.is_some() {
            return Err(ApiError::BadRequest("give either \"right\" or b, c, alpha".into()));
        }
        let known = RightTriangle {
            a: Part::from_option(r.a),
            b: Part::from_option(r.b),
            c: Part::from_option(r.c),
            alpha: Part::from_option(r.alpha),
            beta_prime: Part::from_option(r.beta_prime),
        };
        let t = solve_right_triangle(&known, &sig)?;
        return Ok(json!({
            "a": part(t.a),
            "b": part(t.b),
            "c": part(t.c),
            "alpha": part(t.alpha),
            "beta_prime": part(t.beta_prime),
            "max_residual": num(right_triangle_residual(&t, &sig)?),
        }));
    }
    let (Some(b), Some(c), Some(alpha)) = (req.b, req.c, req.alpha) else {
        return Err(ApiError::BadRequest("a triangle needs b, c and alpha, or \"right\"".into()));
    };
    let t = solve_triangle_sas(b, c, alpha, &sig)?;
    let residual = match t.values() {
        Some(_) => num(triangle_residuals(&t, &sig)?.iter().map(|r| r.value).fold(0.0, f64::max)),
        None => Value::Null,
    };
    let p = triangle_inequality_profile(&sig)?;
    Ok(json!({
        "a": part(t.a),
        "b": part(t.b),
        "c": part(t.c),
        "alpha": part(t.alpha),
        "beta_prime": part(t.beta_prime),
        "gamma": part(t.gamma),
        "reduced": t.reduced,
        "max_residual": residual,
        "inequalities": {
            "a_vs_b_minus_c": ordering(p.shortest_edge),
            "b_vs_a_plus_c": ordering(p.longest_edge),
            "alpha_vs_beta_prime_minus_gamma": ordering(p.internal_angle),
            "beta_prime_vs_alpha_plus_gamma": ordering(p.external_angle),
        },
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AreaReq {
    sig: String,
    a: f64,
    b: f64,
    oracle_steps: Option<usize>,
}

fn area(req: AreaReq) -> ApiResult {
    let sig = resolve_sig(&req.sig)?;
    let m = right_triangle_area(req.a, req.b, &sig)?;
    let mut out = Map::new();
    out.insert("value".into(), num(m.value));
    out.insert("type".into(), json!(m.mtype));
    if let Some(steps) = req.oracle_steps {
        out.insert("oracle".into(), num(area_integral_oracle(req.a, req.b, &sig, steps)?));
    }
    Ok(Value::Object(out))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairReq {
    sig: String,
    x: Vec<f64>,
    y: Vec<f64>,
}

fn connect(req: PairReq) -> ApiResult {
    let sig = resolve_sig(&req.sig)?;
    Ok(match connectable(&vector(&req.x), &vector(&req.y), &sig)? {
        Connectability::Connectable(m) => json!({"kind": "connectable", "distance": measure_json(&m)}),
        Connectability::Unconnectable => json!({"kind": "unconnectable"}),
        Connectability::LimitPair => json!({"kind": "limit_pair"}),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RotationReq {
    i: usize,
    j: usize,
    angle: f64,
    /// Ignored; accepted so `/decompose` output can be fed back in.
    #[serde(rename = "type")]
    _ktype: Option<i8>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MotionInput {
    matrix: Option<Vec<Vec<f64>>>,
    /// Product of rotations, leftmost first.
    rotations: Option<Vec<RotationReq>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ApplyReq {
    sig: String,
    motion: MotionInput,
    points: Vec<Vec<f64>>,
    /// Apply the motion raised to this parameter.
    p: Option<f64>,
}

fn build_motion(input: &MotionInput, sig: &Signature) -> Result<Motion, ApiError> {
    match (&input.matrix, &input.rotations) {
        (Some(rows), None) => Ok(Motion::from_rows(rows, sig)?),
        (None, Some(rots)) => {
            let mut m = Motion::identity(sig);
            for r in rots {
                m = m.compose(&Motion::rotation(r.i, r.j, r.angle, sig)?)?;
            }
            Ok(m)
        }
        _ => Err(ApiError::BadRequest("motion needs exactly one of \"matrix\" or \"rotations\"".into())),
    }
}

fn gram(points: &[MVector], sig: &Signature) -> Result<Value, ApiError> {
    let mut rows = Vec::new();
    for x in points {
        let mut row = Vec::new();
        for y in points {
            row.push(num(meta_product(x, y, sig)?));
        }
        rows.push(Value::Array(row));
    }
    Ok(Value::Array(rows))
}

fn apply(req: ApplyReq) -> ApiResult {
    let sig = resolve_sig(&req.sig)?;
    let mut m = build_motion(&req.motion, &sig)?;
    if let Some(p) = req.p {
        m = m.parameterize(p)?;
    }
    let before: Vec<MVector> = req.points.iter().map(|v| vector(v)).collect();
    let after = before.iter().map(|x| m.apply(x)).collect::<Result<Vec<_>, _>>()?;
    Ok(json!({
        "matrix": rows_json(&m),
        "points": Value::Array(after.iter().map(|x| vec_json(x.coords())).collect()),
        "products_before": gram(&before, &sig)?,
        "products_after": gram(&after, &sig)?,
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TilingReq {
    pq: Option<[u32; 2]>,
    sig: Option<String>,
    #[serde(default)]
    dual: bool,
    depth: Option<usize>,
    tol: Option<f64>,
    /// Translation half-step on the Euclidean plane, rotation half-angle on its dual.
    d: Option<f64>,
    cap: Option<usize>,
}

fn params_json(p: &GroupParams) -> Value {
    match *p {
        GroupParams::Tiling { p, q, d } => json!({"kind": "tiling", "p": p, "q": q, "d": num(d)}),
        GroupParams::DualTiling { p, q, phi } => json!({"kind": "dual_tiling", "p": p, "q": q, "phi": num(phi)}),
        GroupParams::Galilean { a, b } => json!({"kind": "galilean", "a": num(a), "b": num(b)}),
        GroupParams::Minkowski { u, plus, a, b } => {
            json!({"kind": "minkowski", "u": u, "plus": plus, "a": num(a), "b": num(b)})
        }
        GroupParams::CurvedGalilean { u, plus } => json!({"kind": "curved_galilean", "u": u, "plus": plus}),
        GroupParams::CurvedMinkowski { p, q } => json!({"kind": "curved_minkowski", "p": p, "q": q}),
    }
}

fn tiling(req: TilingReq) -> ApiResult {
    let group: CrystalGroup = match (&req.pq, &req.sig) {
        (Some([p, q]), None) if req.dual => dual_tiling_group(*p, *q, req.d)?,
        (Some([p, q]), None) => tiling_group(*p, *q, req.d)?,
        (None, Some(s)) if !req.dual && req.d.is_none() => plane_group(&resolve_sig(s)?)?,
        _ => return Err(ApiError::BadRequest("tiling needs \"pq\" (optionally with dual, d) or \"sig\"".into())),
    };
    let depth = req.depth.unwrap_or(2);
    let o = orbit(&group, depth, req.tol.unwrap_or(1e-6), req.cap.unwrap_or(ORBIT_NODE_CAP))?;
    Ok(json!({
        "sig": group.plane_sig.to_string(),
        "params": params_json(&group.params),
        "translation": rows_json(&group.translation),
        "rotation": rows_json(&group.rotation),
        "rotation_order": group.rotation_order,
        "generators_valid": group.generators_valid(),
        "depth": depth,
        "nodes": Value::Array(o.nodes.iter().map(|x| vec_json(x.coords())).collect()),
        "edges": o.edges.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
        "min_distance": o.min_distance.map_or(Value::Null, num),
    }))
}
