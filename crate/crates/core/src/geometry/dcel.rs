//! Arrangement construction by walking the faces of a half-edge structure.
//!
//! Segments are split at every endpoint and crossing into edges. Each edge
//! contributes two half-edges, and faces are traced keeping the face on the
//! left. Counter-clockwise cycles (positive area) bound bounded faces; every
//! connected component additionally owns one cycle of non-positive area that
//! faces outward. Such outward cycles are attached to the face that encloses
//! their component by shooting a ray to the left.

use std::collections::{BTreeMap, BTreeSet};

use super::{
    canonicalize, coordinate_axes, unbounded_witness, validate_segments, Arrangement, Axis, Bounds, Cell,
    GeometryError, Rational, Segment, SegmentId, Witness,
};

// Directions counter-clockwise from east; west is 2.
const EAST: usize = 0;
const NORTH: usize = 1;
const SOUTH: usize = 3;

#[derive(Debug, Clone, Copy)]
struct HalfEdge {
    origin: usize,
    dest: usize,
    dir: usize,
    segment: SegmentId,
}

struct PlanarGraph {
    vertices: Vec<(i64, i64)>,
    /// Half-edge `h` and `h ^ 1` are twins.
    half_edges: Vec<HalfEdge>,
    /// Outgoing half-edge per vertex and direction.
    out: Vec<[Option<usize>; 4]>,
}

impl PlanarGraph {
    fn new(segments: &[Segment]) -> Self {
        let mut pieces: Vec<(SegmentId, (i64, i64), (i64, i64), usize)> = Vec::new();
        for s in segments {
            let mut stops = vec![s.lo, s.hi];
            for t in segments {
                if t.axis != s.axis && t.lo <= s.fixed && s.fixed <= t.hi && s.lo <= t.fixed && t.fixed <= s.hi {
                    stops.push(t.fixed);
                }
            }
            stops.sort_unstable();
            stops.dedup();
            for w in stops.windows(2) {
                let (a, b, dir) = match s.axis {
                    Axis::Horizontal => ((w[0], s.fixed), (w[1], s.fixed), EAST),
                    Axis::Vertical => ((s.fixed, w[0]), (s.fixed, w[1]), NORTH),
                };
                pieces.push((s.id, a, b, dir));
            }
        }

        let mut index: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for &(_, a, b, _) in &pieces {
            index.insert(a, 0);
            index.insert(b, 0);
        }
        let vertices: Vec<(i64, i64)> = index.keys().copied().collect();
        for (i, v) in index.values_mut().enumerate() {
            *v = i;
        }

        let mut half_edges = Vec::with_capacity(pieces.len() * 2);
        let mut out = vec![[None; 4]; vertices.len()];
        for (segment, a, b, dir) in pieces {
            let (u, v) = (index[&a], index[&b]);
            let h = half_edges.len();
            half_edges.push(HalfEdge { origin: u, dest: v, dir, segment });
            half_edges.push(HalfEdge { origin: v, dest: u, dir: (dir + 2) % 4, segment });
            out[u][dir] = Some(h);
            out[v][(dir + 2) % 4] = Some(h + 1);
        }
        PlanarGraph { vertices, half_edges, out }
    }

    /// Next half-edge along the face to the left of `h`: the first outgoing
    /// edge clockwise from the reversed direction of `h`.
    fn next(&self, h: usize) -> usize {
        let e = &self.half_edges[h];
        let back = (e.dir + 2) % 4;
        (1..=4)
            .map(|turn| (back + 4 - turn) % 4)
            .find_map(|d| self.out[e.dest][d])
            .expect("twin always exists")
    }

    fn components(&self) -> (Vec<usize>, usize) {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in self.half_edges.iter().step_by(2) {
            let (a, b) = (find(&mut parent, e.origin), find(&mut parent, e.dest));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut label = vec![usize::MAX; self.vertices.len()];
        let mut count = 0;
        let mut comp = vec![0; self.vertices.len()];
        for v in 0..self.vertices.len() {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            comp[v] = label[r];
        }
        (comp, count)
    }
}

/// Size of the planar graph induced by a segment set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphCounts {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
}

impl GraphCounts {
    pub fn of(segments: &[Segment]) -> Self {
        let g = PlanarGraph::new(segments);
        let (_, components) = g.components();
        GraphCounts { vertices: g.vertices.len(), edges: g.half_edges.len() / 2, components }
    }
}

struct Cycle {
    edges: Vec<usize>,
    /// Twice the signed area.
    area2: i128,
}

/// Builds the arrangement of `segments` by tracing faces of the planar graph.
pub fn build_arrangement(segments: &[Segment]) -> Result<Arrangement, GeometryError> {
    let segments = validate_segments(segments)?;
    let g = PlanarGraph::new(&segments);
    let (comp, comp_count) = g.components();

    let mut cycle_of = vec![usize::MAX; g.half_edges.len()];
    let mut cycles: Vec<Cycle> = Vec::new();
    for start in 0..g.half_edges.len() {
        if cycle_of[start] != usize::MAX {
            continue;
        }
        let mut edges = Vec::new();
        let mut area2 = 0i128;
        let mut h = start;
        loop {
            cycle_of[h] = cycles.len();
            edges.push(h);
            let (x1, y1) = g.vertices[g.half_edges[h].origin];
            let (x2, y2) = g.vertices[g.half_edges[h].dest];
            area2 += x1 as i128 * y2 as i128 - x2 as i128 * y1 as i128;
            h = g.next(h);
            if h == start {
                break;
            }
        }
        cycles.push(Cycle { edges, area2 });
    }

    // Bounded faces are the counter-clockwise cycles; each component has
    // exactly one outward cycle.
    let mut face_of_cycle = vec![None; cycles.len()];
    let mut outward = vec![usize::MAX; comp_count];
    let mut bounded = 0;
    for (ci, c) in cycles.iter().enumerate() {
        if c.area2 > 0 {
            face_of_cycle[ci] = Some(bounded);
            bounded += 1;
        } else {
            let k = comp[g.half_edges[c.edges[0]].origin];
            debug_assert_eq!(outward[k], usize::MAX, "component with two outward cycles");
            outward[k] = ci;
        }
    }

    // Lowest-left vertex of every component, and the vertical edge pieces
    // available for ray shooting.
    let mut anchor = vec![usize::MAX; comp_count];
    for v in 0..g.vertices.len() {
        if anchor[comp[v]] == usize::MAX {
            anchor[comp[v]] = v;
        }
    }
    let southward: Vec<usize> = (0..g.half_edges.len()).filter(|&h| g.half_edges[h].dir == SOUTH).collect();

    // Face (None = unbounded) enclosing each component.
    let mut enclosing: Vec<Option<Option<usize>>> = vec![None; comp_count];
    fn resolve(
        k: usize,
        g: &PlanarGraph,
        comp: &[usize],
        anchor: &[usize],
        southward: &[usize],
        cycle_of: &[usize],
        face_of_cycle: &[Option<usize>],
        enclosing: &mut Vec<Option<Option<usize>>>,
    ) -> Option<usize> {
        if let Some(f) = enclosing[k] {
            return f;
        }
        let (px, py) = g.vertices[anchor[k]];
        // Ray from just left of the anchor, at height py + epsilon.
        let hit = southward
            .iter()
            .copied()
            .filter(|&h| {
                let e = &g.half_edges[h];
                let (x, top) = g.vertices[e.origin];
                let (_, bottom) = g.vertices[e.dest];
                comp[e.origin] != k && x < px && bottom <= py && py < top
            })
            .max_by_key(|&h| g.vertices[g.half_edges[h].origin].0);
        let face = match hit {
            None => None,
            Some(h) => match face_of_cycle[cycle_of[h]] {
                Some(f) => Some(f),
                None => {
                    let other = comp[g.half_edges[h].origin];
                    resolve(other, g, comp, anchor, southward, cycle_of, face_of_cycle, enclosing)
                }
            },
        };
        enclosing[k] = Some(face);
        face
    }

    let mut face_cycles: Vec<Vec<usize>> = vec![Vec::new(); bounded];
    for (ci, f) in face_of_cycle.iter().enumerate() {
        if let Some(f) = f {
            face_cycles[*f].push(ci);
        }
    }
    let mut unbounded_cycles = Vec::new();
    for k in 0..comp_count {
        match resolve(k, &g, &comp, &anchor, &southward, &cycle_of, &face_of_cycle, &mut enclosing) {
            Some(f) => face_cycles[f].push(outward[k]),
            None => unbounded_cycles.push(outward[k]),
        }
    }

    let (xs, ys) = coordinate_axes(&segments);
    let next_after = |axis: &[i64], v: i64| axis[axis.partition_point(|&a| a <= v)];

    let mut cells = Vec::with_capacity(bounded + 1);
    for cyc in &face_cycles {
        let mut defining = BTreeSet::new();
        let mut members = BTreeSet::new();
        for &ci in cyc {
            for &h in &cycles[ci].edges {
                defining.insert(g.half_edges[h].segment);
                members.insert(h);
            }
        }
        // Leftmost, then lowest, boundary piece with the face on its east side.
        let (ax, ay) = members
            .iter()
            .filter(|&&h| g.half_edges[h].dir == SOUTH)
            .map(|&h| g.vertices[g.half_edges[h].dest])
            .min()
            .expect("bounded face has a western boundary");
        let witness = Witness {
            x: Rational::midpoint(ax, next_after(&xs, ax)),
            y: Rational::midpoint(ay, next_after(&ys, ay)),
        };

        let outer = cyc[0];
        let pts = cycles[outer].edges.iter().map(|&h| g.vertices[g.half_edges[h].origin]);
        let bounds = pts.fold(
            Bounds { x0: i64::MAX, y0: i64::MAX, x1: i64::MIN, y1: i64::MIN },
            |b, (x, y)| Bounds { x0: b.x0.min(x), y0: b.y0.min(y), x1: b.x1.max(x), y1: b.y1.max(y) },
        );
        let dangling = members.iter().any(|&h| members.contains(&(h ^ 1)));
        let box_area2 = 2 * (bounds.x1 - bounds.x0) as i128 * (bounds.y1 - bounds.y0) as i128;
        let rectangular =
            cyc.len() == 1 && !dangling && cycles[outer].area2 == box_area2 && defining.len() == 4;

        cells.push(Cell { id: 0, bounded: true, defining, rectangular, witness, bounds: Some(bounds) });
    }

    let defining = unbounded_cycles
        .iter()
        .flat_map(|&ci| cycles[ci].edges.iter().map(|&h| g.half_edges[h].segment))
        .collect();
    cells.push(Cell {
        id: 0,
        bounded: false,
        defining,
        rectangular: false,
        witness: unbounded_witness(&xs, &ys),
        bounds: None,
    });

    Ok(Arrangement { segments, cells: canonicalize(cells) })
}
