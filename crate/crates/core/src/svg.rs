//! Deterministic SVG rendering of an arrangement and a chosen cover.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::geometry::{Arrangement, SegmentId};

const UNIT: i64 = 16;

/// Rectangular cells are shaded, chosen segments carry class `chosen`.
pub fn render_svg(arr: &Arrangement, chosen: &BTreeSet<SegmentId>) -> String {
    let mut x0 = i64::MAX;
    let mut y0 = i64::MAX;
    let mut x1 = i64::MIN;
    let mut y1 = i64::MIN;
    for s in &arr.segments {
        let (a, b, c, d) = s.endpoints();
        x0 = x0.min(a);
        y0 = y0.min(b);
        x1 = x1.max(c);
        y1 = y1.max(d);
    }
    let (x0, y0, x1, y1) = (x0 - 1, y0 - 1, x1 + 1, y1 + 1);
    // SVG grows downwards; flip y so the picture matches the coordinates.
    let px = |x: i64| (x - x0) * UNIT;
    let py = |y: i64| (y1 - y) * UNIT;
    let (w, h) = ((x1 - x0) * UNIT, (y1 - y0) * UNIT);

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    out.push_str(
        "<style>.cell{fill:#dbe9f6}.seg{stroke:#444;stroke-width:2}.chosen{stroke:#d62728;stroke-width:4}</style>\n",
    );
    for c in arr.rectangular_cells() {
        let b = c.bounds.expect("rectangular cells are bounded");
        writeln!(
            out,
            r#"<rect class="cell" data-cell="{}" x="{}" y="{}" width="{}" height="{}"/>"#,
            c.id,
            px(b.x0),
            py(b.y1),
            (b.x1 - b.x0) * UNIT,
            (b.y1 - b.y0) * UNIT
        )
        .unwrap();
    }
    for s in &arr.segments {
        let (a, b, c, d) = s.endpoints();
        let class = if chosen.contains(&s.id) { "chosen" } else { "seg" };
        writeln!(
            out,
            r#"<line class="{class}" data-id="{}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            s.id,
            px(a),
            py(b),
            px(c),
            py(d)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

pub fn write_svg(arr: &Arrangement, chosen: &BTreeSet<SegmentId>, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, render_svg(arr, chosen))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_arrangement, Segment};

    #[test]
    fn box_rendering() {
        let arr = build_arrangement(&[
            Segment::horizontal(0, 0, 0, 4),
            Segment::vertical(1, 4, 0, 4),
            Segment::horizontal(2, 4, 0, 4),
            Segment::vertical(3, 0, 0, 4),
        ])
        .unwrap();
        let svg = render_svg(&arr, &[SegmentId(2)].into());
        assert_eq!(svg.matches("<line ").count(), 4);
        assert_eq!(svg.matches("<rect ").count(), 1);
        assert_eq!(svg.matches(r#"class="chosen""#).count(), 1);
        assert!(svg.contains(r#"viewBox="0 0 96 96""#));
        // The top edge (y = 4) is drawn one unit below the upper margin.
        assert!(svg.contains(r#"data-id="2" x1="16" y1="16" x2="80" y2="16""#));
        assert_eq!(svg, render_svg(&arr, &[SegmentId(2)].into()));
    }
}
