//! Reference arrangement by flood fill over a coordinate-compressed grid.
//!
//! With `u` distinct x and `v` distinct y coordinates the plane is cut into
//! a `(2u+1) x (2v+1)` array of elements. Odd indices sit on a coordinate
//! line, even indices on the open interval between two lines (or beyond the
//! outermost one). An element is a box (even, even), an edge (one odd), or a
//! vertex (odd, odd). Segments cover edges and vertices; connected groups of
//! uncovered elements are the cells.

use std::collections::{BTreeSet, VecDeque};

use super::{
    canonicalize, coordinate_axes, unbounded_witness, validate_segments, Arrangement, Axis, Bounds, Cell,
    GeometryError, Rational, Segment, SegmentId, Witness,
};

struct Grid {
    w: usize,
    covered: Vec<bool>,
    owner: Vec<Option<SegmentId>>,
}

impl Grid {
    fn idx(&self, i: usize, j: usize) -> usize {
        j * self.w + i
    }
}

/// Builds the arrangement of `segments` by grid flood fill.
pub fn gridfill_oracle(segments: &[Segment]) -> Result<Arrangement, GeometryError> {
    let segments = validate_segments(segments)?;
    let (xs, ys) = coordinate_axes(&segments);
    let (w, h) = (2 * xs.len() + 1, 2 * ys.len() + 1);
    let mut grid = Grid { w, covered: vec![false; w * h], owner: vec![None; w * h] };

    let line = |axis: &[i64], v: i64| 2 * axis.binary_search(&v).expect("coordinate present") + 1;
    for s in &segments {
        let (fixed_axis, span_axis) = match s.axis {
            Axis::Horizontal => (&ys, &xs),
            Axis::Vertical => (&xs, &ys),
        };
        let f = line(fixed_axis, s.fixed);
        for t in line(span_axis, s.lo)..=line(span_axis, s.hi) {
            let (i, j) = match s.axis {
                Axis::Horizontal => (t, f),
                Axis::Vertical => (f, t),
            };
            let k = grid.idx(i, j);
            grid.covered[k] = true;
            if t % 2 == 0 {
                grid.owner[k] = Some(s.id);
            }
        }
    }

    let mut label = vec![usize::MAX; w * h];
    let mut regions = 0;
    let mut queue = VecDeque::new();
    for start in 0..w * h {
        if grid.covered[start] || label[start] != usize::MAX {
            continue;
        }
        label[start] = regions;
        queue.push_back(start);
        while let Some(k) = queue.pop_front() {
            let (i, j) = (k % w, k / w);
            let mut visit = |ni: usize, nj: usize| {
                let nk = grid.idx(ni, nj);
                if !grid.covered[nk] && label[nk] == usize::MAX {
                    label[nk] = regions;
                    queue.push_back(nk);
                }
            };
            if i > 0 {
                visit(i - 1, j);
            }
            if i + 1 < w {
                visit(i + 1, j);
            }
            if j > 0 {
                visit(i, j - 1);
            }
            if j + 1 < h {
                visit(i, j + 1);
            }
        }
        regions += 1;
    }

    let outside = label[0];
    let mut defining = vec![BTreeSet::new(); regions];
    for j in 0..h {
        for i in 0..w {
            let Some(id) = grid.owner[grid.idx(i, j)] else { continue };
            let sides = if i % 2 == 0 { [(i, j - 1), (i, j + 1)] } else { [(i - 1, j), (i + 1, j)] };
            for (ni, nj) in sides {
                defining[label[grid.idx(ni, nj)]].insert(id);
            }
        }
    }

    // Box index extents per region; boxes are visited in (i, j) lexicographic
    // order so the first box seen is the witness box.
    let mut first_box = vec![None; regions];
    let mut extent = vec![(usize::MAX, usize::MAX, 0, 0); regions];
    for i in (0..w).step_by(2) {
        for j in (0..h).step_by(2) {
            let r = label[grid.idx(i, j)];
            first_box[r].get_or_insert((i, j));
            let e = &mut extent[r];
            *e = (e.0.min(i), e.1.min(j), e.2.max(i), e.3.max(j));
        }
    }

    let mut cells = Vec::with_capacity(regions);
    for r in 0..regions {
        if r == outside {
            continue;
        }
        let (bi, bj) = first_box[r].expect("bounded region contains a box");
        let witness = Witness {
            x: Rational::midpoint(xs[bi / 2 - 1], xs[bi / 2]),
            y: Rational::midpoint(ys[bj / 2 - 1], ys[bj / 2]),
        };
        let (i0, j0, i1, j1) = extent[r];
        let bounds = Bounds { x0: xs[i0 / 2 - 1], y0: ys[j0 / 2 - 1], x1: xs[i1 / 2], y1: ys[j1 / 2] };
        let fills_box = (i0..=i1)
            .step_by(2)
            .all(|i| (j0..=j1).step_by(2).all(|j| label[grid.idx(i, j)] == r));
        let rectangular = defining[r].len() == 4 && fills_box;
        cells.push(Cell {
            id: 0,
            bounded: true,
            defining: std::mem::take(&mut defining[r]),
            rectangular,
            witness,
            bounds: Some(bounds),
        });
    }
    cells.push(Cell {
        id: 0,
        bounded: false,
        defining: std::mem::take(&mut defining[outside]),
        rectangular: false,
        witness: unbounded_witness(&xs, &ys),
        bounds: None,
    });

    Ok(Arrangement { segments, cells: canonicalize(cells) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::tests::box4;

    #[test]
    fn box_matches_definition() {
        let arr = gridfill_oracle(&box4()).unwrap();
        assert_eq!(arr.cell_count(), 2);
        assert!(arr.cells[0].rectangular);
        assert_eq!(arr.cells[0].witness, Witness { x: Rational::midpoint(0, 4), y: Rational::midpoint(0, 4) });
    }

    #[test]
    fn lone_segment_single_cell() {
        let arr = gridfill_oracle(&[Segment::vertical(3, 0, 0, 1)]).unwrap();
        assert_eq!(arr.cell_count(), 1);
        assert_eq!(arr.cells[0].defining, [SegmentId(3)].into());
    }

    #[test]
    fn splitter_touching_outer_face_only_at_endpoints() {
        let mut segs = box4();
        segs.push(Segment::vertical(4, 2, 0, 4));
        let arr = gridfill_oracle(&segs).unwrap();
        assert_eq!(arr.cell_count(), 3);
        assert!(!arr.unbounded_cell().defining.contains(&SegmentId(4)));
        assert!(arr.cells[..2].iter().all(|c| c.rectangular && c.defining.contains(&SegmentId(4))));
    }

    #[test]
    fn l_shaped_cell_is_not_rectangular() {
        // Box with a notch cut by two segments forming an inner corner.
        let segs = vec![
            Segment::horizontal(0, 0, 0, 4),
            Segment::vertical(1, 4, 0, 4),
            Segment::horizontal(2, 4, 0, 4),
            Segment::vertical(3, 0, 0, 4),
            Segment::horizontal(4, 2, 2, 4),
            Segment::vertical(5, 2, 2, 4),
        ];
        let arr = gridfill_oracle(&segs).unwrap();
        assert_eq!(arr.cell_count(), 3);
        let l_cell = arr.cells.iter().find(|c| c.defining.len() == 6).unwrap();
        assert!(!l_cell.rectangular);
    }
}
