use std::f64::consts::PI;
use std::fmt::Write as _;

use super::GeometryError;
use crate::complex::{build_complex, DecompositionTree, Node};

const PALETTE: [&str; 3] = ["#d62728", "#1f77b4", "#2ca02c"];
const SIZE: f64 = 400.0;

/// Apex ids in creation order, matching `build_complex`.
struct Ids(usize);

/// Polygon vertices strictly between the ends of a rooted edge, walking the
/// boundary on the far side from the edge.
fn between(node: Option<&Node>, ids: &mut Ids) -> Vec<usize> {
    let Some(node) = node else {
        return Vec::new();
    };
    let apex = ids.0;
    ids.0 += 1;
    let right = between(node.slot(1), ids);
    let left = between(node.slot(2), ids);
    let mut out: Vec<usize> = left.into_iter().rev().collect();
    out.push(apex);
    out.extend(right);
    out
}

/// Draws a triangulation on a regular `(n+2)`-gon with the marked edge at the
/// bottom, arrowed from its first to its second vertex, and vertices filled by
/// colour class.
pub fn render_svg(tree: &DecompositionTree) -> Result<String, GeometryError> {
    if tree.d() != 2 {
        return Err(GeometryError::UnsupportedDimension(tree.d()));
    }
    let cx = build_complex(tree);
    let mut cycle = vec![0];
    cycle.extend(between(tree.root(), &mut Ids(2)));
    cycle.push(1);

    let n = cycle.len();
    let radius = SIZE * 0.38;
    let mut pos = vec![(0.0, 0.0); n];
    for (k, &v) in cycle.iter().enumerate() {
        let angle = -PI / 2.0 - PI / n as f64 - 2.0 * PI * k as f64 / n as f64;
        // screen y points down
        pos[v] = (SIZE / 2.0 + radius * angle.cos(), SIZE / 2.0 - radius * angle.sin());
    }
    let xy = |v: usize| format!("{:.2},{:.2}", pos[v].0, pos[v].1);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    out.push_str(concat!(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="8" markerHeight="8" orient="auto">"#,
        r#"<path d="M0,0 L10,5 L0,10 z" fill="black"/></marker></defs>"#,
        "\n"
    ));
    for s in cx.simplices() {
        let pts: Vec<String> = s.iter().map(|&v| xy(v)).collect();
        writeln!(
            out,
            r#"<polygon class="triangle" points="{}" fill="whitesmoke" stroke="black" stroke-width="1.5"/>"#,
            pts.join(" ")
        )
        .unwrap();
    }
    let (a, b) = (pos[0], pos[1]);
    writeln!(
        out,
        r#"<line class="marked" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="3" marker-end="url(#arrow)"/>"#,
        a.0, a.1, b.0, b.1
    )
    .unwrap();
    for v in 0..n {
        writeln!(
            out,
            r#"<circle class="vertex colour-{c}" cx="{:.2}" cy="{:.2}" r="8" fill="{}"/>"#,
            pos[v].0,
            pos[v].1,
            PALETTE[cx.colour(v)],
            c = cx.colour(v)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
