//! Planar 3SAT formulas compiled into segment covering instances.
//!
//! Each variable becomes a grid of `4m + 8` horizontal and `4m + 2` vertical
//! segments: two tall verticals crossing every horizontal, and `2m` short
//! verticals on each half. A cover of the gadget with `2m + 1` segments takes
//! the rightmost tall vertical and the odd shorts (true) or the leftmost and
//! the even shorts (false). Each clause extends one short per literal towards
//! its side of the variable line and closes a cell over them; a positive
//! literal uses an odd short and a negative one an even short, so the clause
//! cell is hit for free exactly when some literal is true.
//!
//! Layout, with `m` clauses in total:
//!
//! * variable `i` occupies `x` in `X..=X + 2m + 1` with `X = (i - 1)(2m + 3)`;
//!   the lower horizontals sit at `y = 0..=2m+3`, the upper ones at
//!   `y = 2m+5..=4m+8`;
//! * every vertical sticks out one unit beyond the outermost horizontals, so
//!   any cell touching the gadget from outside has two consecutive verticals
//!   on its boundary;
//! * a clause at nesting level `l` above the line has its near horizontal at
//!   `4m + 8 + 3l` and its far one two units further out; below the line the
//!   picture is mirrored around `y = 0`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fpt::SegmentSet;
use crate::geometry::{validate_segments, Arrangement, Cell, GeometryError, Mode, Segment, SegmentId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("formula has no variables")]
    NoVariables,
    #[error("clause {clause}: {reason}")]
    InvalidClause { clause: usize, reason: String },
    #[error("clauses cannot be embedded: segments {0} and {1} would meet")]
    EmbeddingInfeasible(SegmentId, SegmentId),
    #[error("variable x{variable} has {found} of its two tall verticals in the cover")]
    AmbiguousAssignment { variable: usize, found: usize },
    #[error("assignment has {found} values for {expected} variables")]
    AssignmentLength { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Above,
    Below,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    /// `+i` for `x_i`, `-i` for its negation.
    pub literals: [i32; 3],
    pub side: Side,
}

/// A 3-CNF formula with each clause placed above or below the variable line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfEmbedding {
    #[serde(rename = "variables")]
    pub n: usize,
    pub clauses: Vec<Clause>,
}

impl CnfEmbedding {
    pub fn validate(&self) -> Result<(), ReductionError> {
        if self.n == 0 {
            return Err(ReductionError::NoVariables);
        }
        for (ci, c) in self.clauses.iter().enumerate() {
            let bad = |reason: String| Err(ReductionError::InvalidClause { clause: ci, reason });
            for &l in &c.literals {
                if l == 0 || l.unsigned_abs() as usize > self.n {
                    return bad(format!("literal {l} is not in ±1..=±{}", self.n));
                }
            }
            let vars: BTreeSet<u32> = c.literals.iter().map(|l| l.unsigned_abs()).collect();
            if vars.len() != 3 {
                return bad("a variable occurs twice".into());
            }
        }
        Ok(())
    }

    /// `assignment[i - 1]` is the value of `x_i`.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.literals.iter().any(|&l| literal_value(l, assignment)))
    }
}

fn literal_value(l: i32, assignment: &[bool]) -> bool {
    assignment[l.unsigned_abs() as usize - 1] == (l > 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariableGadget {
    /// Bottom to top.
    pub horizontals: Vec<SegmentId>,
    pub leftmost: SegmentId,
    pub rightmost: SegmentId,
    /// Left to right, `s_1..s_2m` of the upper half.
    pub top_shorts: Vec<SegmentId>,
    /// Left to right, `s_1..s_2m` of the lower half.
    pub bottom_shorts: Vec<SegmentId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseGadget {
    /// Extended shorts, ordered by variable index.
    pub extended: [SegmentId; 3],
    /// Literals in the same order as `extended`.
    pub literals: [i32; 3],
    /// Variant `all`: near and far horizontal. Variant `rect`: near-left,
    /// far-left, inner wall, outer wall, near-right, far-right.
    pub added: Vec<SegmentId>,
    pub side: Side,
    pub level: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetLayout {
    pub variant: Mode,
    pub variables: Vec<VariableGadget>,
    pub clauses: Vec<ClauseGadget>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compiled {
    pub segments: Vec<Segment>,
    pub layout: GadgetLayout,
    pub budget: usize,
}

pub fn budget(n: usize, m: usize, variant: Mode) -> usize {
    n * (2 * m + 1) + if variant == Mode::Rect { m } else { 0 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Role {
    Max,
    Middle,
    Min,
}

/// Per clause, the 0-based short index used for each literal (sorted by variable).
fn attachments(phi: &CnfEmbedding) -> Vec<[usize; 3]> {
    let sorted: Vec<[i32; 3]> = phi
        .clauses
        .iter()
        .map(|c| {
            let mut l = c.literals;
            l.sort_by_key(|l| l.unsigned_abs());
            l
        })
        .collect();
    let mut slots = vec![[0usize; 3]; phi.clauses.len()];
    for v in 1..=phi.n as u32 {
        for side in [Side::Above, Side::Below] {
            // (role, signed span key, clause, position within clause)
            let mut here: Vec<(Role, i64, usize, usize)> = Vec::new();
            for (ci, lits) in sorted.iter().enumerate() {
                if phi.clauses[ci].side != side {
                    continue;
                }
                let Some(pos) = lits.iter().position(|l| l.unsigned_abs() == v) else { continue };
                let span = (lits[2].unsigned_abs() - lits[0].unsigned_abs()) as i64;
                let (role, key) = match pos {
                    2 => (Role::Max, span),
                    1 => (Role::Middle, 0),
                    _ => (Role::Min, -span),
                };
                here.push((role, key, ci, pos));
            }
            here.sort();
            for (p, &(_, _, ci, pos)) in here.iter().enumerate() {
                let positive = sorted[ci][pos] > 0;
                // s_{2p+1} for a positive literal, s_{2p+2} for a negative one.
                slots[ci][pos] = 2 * p + usize::from(!positive);
            }
        }
    }
    slots
}

/// Compiles `phi`; `variant` decides the clause gadget and the budget.
pub fn compile(phi: &CnfEmbedding, variant: Mode) -> Result<Compiled, ReductionError> {
    phi.validate()?;
    let (n, m) = (phi.n, phi.clauses.len());
    let mi = m as i64;
    let width = 2 * mi + 1;
    let origin = |v: usize| (v as i64 - 1) * (width + 2);
    let y_top = 4 * mi + 8;
    let slots = attachments(phi);

    let sorted_vars: Vec<[usize; 3]> = phi
        .clauses
        .iter()
        .map(|c| {
            let mut v = c.literals.map(|l| l.unsigned_abs() as usize);
            v.sort_unstable();
            v
        })
        .collect();
    let xs: Vec<[i64; 3]> =
        (0..m).map(|c| [0, 1, 2].map(|p| origin(sorted_vars[c][p]) + 1 + slots[c][p] as i64)).collect();

    // Nesting level: one above the deepest same-side clause strictly inside.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&c| (xs[c][2] - xs[c][0], c));
    let mut level = vec![0u32; m];
    for (a, &c) in order.iter().enumerate() {
        let inner = order[..a]
            .iter()
            .filter(|&&d| phi.clauses[d].side == phi.clauses[c].side && xs[c][0] < xs[d][0] && xs[d][2] < xs[c][2])
            .map(|&d| level[d])
            .max()
            .unwrap_or(0);
        level[c] = inner + 1;
    }
    // Near and far clause heights.
    let heights = |c: usize| -> (i64, i64) {
        let l = level[c] as i64;
        match phi.clauses[c].side {
            Side::Above => (y_top + 3 * l, y_top + 3 * l + 2),
            Side::Below => (-3 * l, -3 * l - 2),
        }
    };
    // Far end and clause of each extended short, keyed by (variable, side, short index).
    let mut reach = HashMap::new();
    for c in 0..m {
        let (near, far) = heights(c);
        let towards = far - near; // +2 above, -2 below
        for p in 0..3 {
            let end = if variant == Mode::All && p == 1 { near + towards / 2 } else { far };
            reach.insert((sorted_vars[c][p], phi.clauses[c].side, slots[c][p]), (end, c));
        }
    }

    let mut b = Builder::default();
    let mut variables = Vec::with_capacity(n);
    for v in 1..=n {
        let x0 = origin(v);
        let who = Owner::Variable(v);
        let rows = (0..2 * mi + 4).chain(2 * mi + 5..=y_top);
        let horizontals = rows.map(|y| b.horizontal(who, y, x0, x0 + width)).collect();
        let leftmost = b.vertical(who, x0, -1, y_top + 1);
        let rightmost = b.vertical(who, x0 + width, -1, y_top + 1);
        let mut shorts = |side: Side| -> Vec<SegmentId> {
            let (inner, outer) = match side {
                Side::Above => (2 * mi + 5, y_top + 1),
                Side::Below => (2 * mi + 3, -1),
            };
            (0..2 * m)
                .map(|t| {
                    let x = x0 + 1 + t as i64;
                    match reach.get(&(v, side, t)) {
                        Some(&(end, c)) => b.vertical(Owner::Extension(v, c), x, inner, end),
                        None => b.vertical(who, x, inner, outer),
                    }
                })
                .collect()
        };
        let top_shorts = shorts(Side::Above);
        let bottom_shorts = shorts(Side::Below);
        variables.push(VariableGadget { horizontals, leftmost, rightmost, top_shorts, bottom_shorts });
    }

    let mut clauses = Vec::with_capacity(m);
    for c in 0..m {
        let (near, far) = heights(c);
        let [xi, xj, xk] = xs[c];
        let who = Owner::Clause(c);
        let added: Vec<SegmentId> = match variant {
            Mode::All => vec![b.horizontal(who, near, xi, xk), b.horizontal(who, far, xi, xk)],
            Mode::Rect => vec![
                b.horizontal(who, near, xi, xj),
                b.horizontal(who, far, xi, xj + 2),
                b.vertical(who, xj + 1, near, far),
                b.vertical(who, xj + 2, near, far),
                b.horizontal(who, near, xj + 1, xk),
                b.horizontal(who, far, xj + 2, xk),
            ],
        };
        let side = phi.clauses[c].side;
        let extended = [0, 1, 2].map(|p| {
            let g = &variables[sorted_vars[c][p] - 1];
            match side {
                Side::Above => g.top_shorts[slots[c][p]],
                Side::Below => g.bottom_shorts[slots[c][p]],
            }
        });
        let mut literals = phi.clauses[c].literals;
        literals.sort_by_key(|l| l.unsigned_abs());
        clauses.push(ClauseGadget { extended, literals, added, side, level: level[c] });
    }

    verify(&b.segs, &b.owner)?;
    Ok(Compiled { segments: b.segs, layout: GadgetLayout { variant, variables, clauses }, budget: budget(n, m, variant) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Owner {
    Variable(usize),
    /// A short of the variable extended into the clause.
    Extension(usize, usize),
    Clause(usize),
}

/// Hands out consecutive ids and remembers who owns each segment.
#[derive(Default)]
struct Builder {
    segs: Vec<Segment>,
    owner: Vec<Owner>,
}

impl Builder {
    fn add(&mut self, who: Owner, seg: Segment) -> SegmentId {
        self.segs.push(seg);
        self.owner.push(who);
        seg.id
    }

    fn next_id(&self) -> u32 {
        self.segs.len() as u32
    }

    fn horizontal(&mut self, who: Owner, y: i64, x1: i64, x2: i64) -> SegmentId {
        self.add(who, Segment::horizontal(self.next_id(), y, x1, x2))
    }

    fn vertical(&mut self, who: Owner, x: i64, y1: i64, y2: i64) -> SegmentId {
        self.add(who, Segment::vertical(self.next_id(), x, y1, y2))
    }
}

fn may_meet(a: Owner, b: Owner) -> bool {
    use Owner::*;
    match (a, b) {
        (Variable(v), Variable(w)) | (Variable(v), Extension(w, _)) | (Extension(v, _), Variable(w)) => v == w,
        (Extension(v, _), Extension(w, _)) => v == w,
        (Extension(_, c), Clause(d)) | (Clause(d), Extension(_, c)) => c == d,
        (Clause(c), Clause(d)) => c == d,
        (Variable(_), Clause(_)) | (Clause(_), Variable(_)) => false,
    }
}

/// Rejects collinear overlaps and any contact between parts that the
/// construction keeps apart.
fn verify(segs: &[Segment], owner: &[Owner]) -> Result<(), ReductionError> {
    validate_segments(segs).map_err(|e| match e {
        GeometryError::OverlappingCollinear(a, b) => ReductionError::EmbeddingInfeasible(a, b),
        other => panic!("compiled segments are malformed: {other}"),
    })?;
    for (a, sa) in segs.iter().enumerate() {
        for (b, sb) in segs.iter().enumerate().skip(a + 1) {
            if !may_meet(owner[a], owner[b]) && sa.intersects(sb) {
                return Err(ReductionError::EmbeddingInfeasible(sa.id, sb.id));
            }
        }
    }
    Ok(())
}

/// Defining sets of the clause's cells: one cell for variant `all`, the
/// left, middle and right rectangles for variant `rect`.
pub fn clause_cell_sets(layout: &GadgetLayout, clause: usize) -> Vec<SegmentSet> {
    let g = &layout.clauses[clause];
    let [ei, ej, ek] = g.extended;
    match layout.variant {
        Mode::All => vec![[ei, ej, ek, g.added[0], g.added[1]].into()],
        Mode::Rect => {
            let [a_near, p_far, wall_in, wall_out, q_near, b_far] = g.added[..] else {
                unreachable!("rect clause gadget has six segments")
            };
            vec![
                [ei, ej, a_near, p_far].into(),
                [wall_in, wall_out, p_far, q_near].into(),
                [wall_out, ek, q_near, b_far].into(),
            ]
        }
    }
}

/// Cells of `arr` whose defining sets match the clause's gadget cells.
pub fn clause_cells<'a>(arr: &'a Arrangement, layout: &GadgetLayout, clause: usize) -> Vec<&'a Cell> {
    let wanted = clause_cell_sets(layout, clause);
    arr.cells.iter().filter(|c| wanted.contains(&c.defining)).collect()
}

fn check_len(layout: &GadgetLayout, assignment: &[bool]) -> Result<(), ReductionError> {
    let expected = layout.variables.len();
    if assignment.len() != expected {
        return Err(ReductionError::AssignmentLength { expected, found: assignment.len() });
    }
    Ok(())
}

/// The cover encoding `assignment`: `2m + 1` segments per variable, plus one
/// segment per clause for variant `rect`.
pub fn assignment_to_cover(layout: &GadgetLayout, assignment: &[bool]) -> Result<SegmentSet, ReductionError> {
    check_len(layout, assignment)?;
    let mut cover = SegmentSet::new();
    for (g, &value) in layout.variables.iter().zip(assignment) {
        // Odd shorts counting from one sit at even 0-based positions.
        let parity = usize::from(!value);
        cover.insert(if value { g.rightmost } else { g.leftmost });
        for shorts in [&g.top_shorts, &g.bottom_shorts] {
            cover.extend(shorts.iter().skip(parity).step_by(2));
        }
    }
    if layout.variant == Mode::Rect {
        for c in 0..layout.clauses.len() {
            let cells = clause_cell_sets(layout, c);
            let uncovered: Vec<&SegmentSet> = cells.iter().filter(|s| s.is_disjoint(&cover)).collect();
            // Among the middle cell's sides, the lowest id hitting the most
            // still-uncovered gadget cells.
            let extra = cells[1]
                .iter()
                .copied()
                .max_by_key(|id| (uncovered.iter().filter(|s| s.contains(id)).count(), std::cmp::Reverse(*id)))
                .expect("middle cell has four sides");
            cover.insert(extra);
        }
    }
    Ok(cover)
}

/// Reads the assignment off the tall verticals: `x_i` is true iff its
/// rightmost vertical is chosen.
pub fn cover_to_assignment(layout: &GadgetLayout, cover: &BTreeSet<SegmentId>) -> Result<Vec<bool>, ReductionError> {
    layout
        .variables
        .iter()
        .enumerate()
        .map(|(i, g)| match (cover.contains(&g.leftmost), cover.contains(&g.rightmost)) {
            (true, false) => Ok(false),
            (false, true) => Ok(true),
            (l, r) => Err(ReductionError::AmbiguousAssignment { variable: i + 1, found: l as usize + r as usize }),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_arrangement, is_cover, Axis};

    fn phi(n: usize, clauses: &[([i32; 3], Side)]) -> CnfEmbedding {
        CnfEmbedding { n, clauses: clauses.iter().map(|&(literals, side)| Clause { literals, side }).collect() }
    }

    fn assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
        (0..1u32 << n).map(move |bits| (0..n).map(|i| bits >> i & 1 == 1).collect())
    }

    #[test]
    fn gadget_counts_and_budgets() {
        let f = phi(3, &[([1, 2, -3], Side::Above)]);
        for (variant, expected) in [(Mode::All, 9), (Mode::Rect, 10)] {
            let c = compile(&f, variant).unwrap();
            assert_eq!(c.budget, expected);
            for g in &c.layout.variables {
                assert_eq!(g.horizontals.len(), 12);
                assert_eq!(2 + g.top_shorts.len() + g.bottom_shorts.len(), 6);
            }
            let added = if variant == Mode::All { 2 } else { 6 };
            assert_eq!(c.segments.len(), 3 * 18 + added);
        }
        let two = phi(3, &[([1, 2, 3], Side::Above), ([-1, 2, -3], Side::Below)]);
        let c = compile(&two, Mode::All).unwrap();
        assert_eq!(c.segments.len(), 78 + 4);
        assert_eq!(c.budget, 15);
        assert_eq!(compile(&two, Mode::Rect).unwrap().budget, 17);
        let horizontal = c.segments[..78].iter().filter(|s| s.axis == Axis::Horizontal).count();
        assert_eq!(horizontal, 3 * 16);
    }

    #[test]
    fn rejects_bad_clauses() {
        assert!(matches!(compile(&phi(3, &[([1, 1, 2], Side::Above)]), Mode::All), Err(ReductionError::InvalidClause { .. })));
        assert!(matches!(compile(&phi(2, &[([1, 2, 3], Side::Above)]), Mode::All), Err(ReductionError::InvalidClause { .. })));
        assert_eq!(compile(&phi(0, &[]), Mode::All), Err(ReductionError::NoVariables));
    }

    #[test]
    fn same_side_clauses_on_the_same_variables_cannot_nest() {
        let f = phi(3, &[([1, 2, 3], Side::Above), ([-1, 2, 3], Side::Above)]);
        assert!(matches!(compile(&f, Mode::All), Err(ReductionError::EmbeddingInfeasible(..))));
        assert!(matches!(compile(&f, Mode::Rect), Err(ReductionError::EmbeddingInfeasible(..))));
    }

    #[test]
    fn nested_clauses_compile() {
        // Clause 1 sits inside clause 0 and shares its outer variables.
        let f = phi(5, &[([1, 3, 5], Side::Above), ([1, 2, 3], Side::Above), ([3, 4, 5], Side::Above)]);
        let c = compile(&f, Mode::All).unwrap();
        let levels: Vec<u32> = c.layout.clauses.iter().map(|g| g.level).collect();
        assert_eq!(levels, vec![2, 1, 1]);
    }

    #[test]
    fn witnesses_cover_exactly_when_satisfying() {
        let f = phi(3, &[([1, 2, -3], Side::Above), ([-1, -2, 3], Side::Below)]);
        for variant in [Mode::All, Mode::Rect] {
            let c = compile(&f, variant).unwrap();
            let arr = build_arrangement(&c.segments).unwrap();
            for clause in 0..2 {
                let cells = clause_cells(&arr, &c.layout, clause);
                assert_eq!(cells.len(), if variant == Mode::All { 1 } else { 3 });
                assert!(cells.iter().all(|cell| cell.rectangular == (variant == Mode::Rect)));
            }
            for a in assignments(3) {
                let cover = assignment_to_cover(&c.layout, &a).unwrap();
                assert_eq!(cover.len(), c.budget);
                assert_eq!(is_cover(&arr, &cover, variant).unwrap(), f.is_satisfied_by(&a), "{variant} {a:?}");
                assert_eq!(cover_to_assignment(&c.layout, &cover).unwrap(), a);
            }
        }
    }

    #[test]
    fn falsified_clause_cell_is_missed() {
        let f = phi(3, &[([1, 2, 3], Side::Above)]);
        let c = compile(&f, Mode::All).unwrap();
        let arr = build_arrangement(&c.segments).unwrap();
        let cover = assignment_to_cover(&c.layout, &[false; 3]).unwrap();
        let cell = clause_cells(&arr, &c.layout, 0)[0];
        assert!(cell.defining.is_disjoint(&cover));
        assert_eq!(arr.cells.iter().filter(|c| c.defining.is_disjoint(&cover)).count(), 1);
    }

    #[test]
    fn reading_assignments() {
        let c = compile(&phi(3, &[([1, 2, -3], Side::Above)]), Mode::All).unwrap();
        let v = &c.layout.variables;
        let cover: BTreeSet<SegmentId> = [v[0].rightmost, v[1].leftmost, v[2].rightmost].into();
        assert_eq!(cover_to_assignment(&c.layout, &cover).unwrap(), vec![true, false, true]);
        let both: BTreeSet<SegmentId> = [v[0].leftmost, v[0].rightmost, v[1].leftmost, v[2].leftmost].into();
        assert_eq!(
            cover_to_assignment(&c.layout, &both),
            Err(ReductionError::AmbiguousAssignment { variable: 1, found: 2 })
        );
    }
}
