//! SVG rendering of an orbit in the projective chart `(x1/x0, x2/x0)`.

use homspace::metaspace::MVector;
use homspace::tol::eps;
use std::fmt::Write;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 20.0;

fn chart(x: &MVector) -> Option<(f64, f64)> {
    let c = x.coords();
    (c[0].abs() > eps()).then(|| (c[1] / c[0], c[2] / c[0]))
}

/// Nodes as dots, edges as lines. Nodes at infinity (`x0 = 0`) are left out
/// and counted in a comment.
#[must_use]
pub fn render(nodes: &[MVector], edges: &[(usize, usize)]) -> String {
    let pts: Vec<Option<(f64, f64)>> = nodes.iter().map(chart).collect();
    let extent = pts.iter().flatten().fold(1e-9_f64, |m, &(x, y)| m.max(x.abs()).max(y.abs()));
    let scale = (SIZE / 2.0 - MARGIN) / extent;
    let at = |(x, y): (f64, f64)| (SIZE / 2.0 + x * scale, SIZE / 2.0 - y * scale);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for &(i, j) in edges {
        if let (Some(a), Some(b)) = (pts[i], pts[j]) {
            let ((x1, y1), (x2, y2)) = (at(a), at(b));
            let _ = writeln!(s, r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#888" stroke-width="0.5"/>"##);
        }
    }
    for (k, p) in pts.iter().enumerate() {
        if let Some(p) = *p {
            let (cx, cy) = at(p);
            let fill = if k == 0 { "#c00" } else { "#036" };
            let _ = writeln!(s, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="2" fill="{fill}"/>"#);
        }
    }
    let hidden = pts.iter().filter(|p| p.is_none()).count();
    if hidden > 0 {
        let _ = writeln!(s, "<!-- {hidden} nodes at infinity -->");
    }
    s.push_str("</svg>\n");
    s
}
