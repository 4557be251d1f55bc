//! Lattice knots, their stick tabulations, and levels.
//!
//! A knot is stored as its full cyclic vertex list `V(K)`: every integer
//! point on the polygon, in traversal order. Vertex `i` sits at arc
//! position `i`, and step `i` goes from vertex `i` to vertex `i + 1`
//! (indices mod `e_L`).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{bounding_box, Axis, BoundingBox, Isometry, LatticePoint, StickType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("walk does not close: it ends at offset {residual} from its start")]
    NotClosed { residual: LatticePoint },
    #[error("self-intersection at {point} between stick {first_stick} and stick {second_stick}")]
    SelfIntersection { point: LatticePoint, first_stick: usize, second_stick: usize },
    #[error("{axis}-column mismatch: {detail}")]
    LengthMismatch { axis: Axis, detail: String },
    #[error("points {index} and {next} are not joined by an axis-parallel segment", next = index + 1)]
    NonAxisParallel { index: usize },
    #[error("a knot needs at least one stick")]
    Empty,
}

/// A stick-type sequence with the per-axis columns of stick lengths.
///
/// The n-th stick of a given axis takes its length from row n of that
/// axis's column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tabulation {
    pub types: Vec<StickType>,
    pub lengths: AxisColumns,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AxisColumns {
    pub x: Vec<u64>,
    pub y: Vec<u64>,
    pub z: Vec<u64>,
}

impl AxisColumns {
    pub fn column(&self, axis: Axis) -> &[u64] {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
            Axis::Z => &self.z,
        }
    }

    pub fn column_mut(&mut self, axis: Axis) -> &mut Vec<u64> {
        match axis {
            Axis::X => &mut self.x,
            Axis::Y => &mut self.y,
            Axis::Z => &mut self.z,
        }
    }
}

impl Tabulation {
    pub fn new(types: Vec<StickType>, x: Vec<u64>, y: Vec<u64>, z: Vec<u64>) -> Self {
        Tabulation { types, lengths: AxisColumns { x, y, z } }
    }

    /// Number of rows of the printed table (longest column).
    pub fn rows(&self) -> usize {
        Axis::ALL.into_iter().map(|a| self.lengths.column(a).len()).max().unwrap_or(0)
    }

    /// Row `r` (0-based) as `(x, y, z)`, zero where a column is shorter.
    pub fn row(&self, r: usize) -> [u64; 3] {
        Axis::ALL.map(|a| self.lengths.column(a).get(r).copied().unwrap_or(0))
    }

    /// Pairs each stick type with its length, checking column consistency.
    pub fn sticks(&self) -> Result<Vec<(StickType, u64)>, KnotError> {
        let mut cursor = [0usize; 3];
        let mut out = Vec::with_capacity(self.types.len());
        for &t in &self.types {
            let col = self.lengths.column(t.axis);
            let k = cursor[t.axis.index()];
            let len = *col.get(k).ok_or_else(|| KnotError::LengthMismatch {
                axis: t.axis,
                detail: format!("column has {} entries but more {}-sticks follow", col.len(), t.axis),
            })?;
            if len == 0 {
                return Err(KnotError::LengthMismatch {
                    axis: t.axis,
                    detail: format!("row {} is zero but is consumed by a stick", k + 1),
                });
            }
            cursor[t.axis.index()] += 1;
            out.push((t, len));
        }
        for a in Axis::ALL {
            let rest = &self.lengths.column(a)[cursor[a.index()]..];
            if let Some(off) = rest.iter().position(|&l| l != 0) {
                return Err(KnotError::LengthMismatch {
                    axis: a,
                    detail: format!("row {} is never consumed", cursor[a.index()] + off + 1),
                });
            }
        }
        Ok(out)
    }

    /// Builds a tabulation from an ordered stick list.
    pub fn from_sticks<I: IntoIterator<Item = (StickType, u64)>>(sticks: I) -> Self {
        let mut tab = Tabulation { types: Vec::new(), lengths: AxisColumns::default() };
        for (t, len) in sticks {
            tab.types.push(t);
            tab.lengths.column_mut(t.axis).push(len);
        }
        tab
    }

    /// Running signed sums of one axis's stick lengths, offset by `origin`.
    ///
    /// The n-th entry is the coordinate of the level holding the n-th
    /// such stick's terminal critical vertex.
    pub fn partial_sums(&self, axis: Axis, origin: LatticePoint) -> Result<Vec<i64>, KnotError> {
        let sticks = self.sticks()?;
        Ok(partial_sums_of(&sticks, axis, origin.coord(axis)))
    }
}

fn partial_sums_of(sticks: &[(StickType, u64)], axis: Axis, start: i64) -> Vec<i64> {
    sticks
        .iter()
        .filter(|(t, _)| t.axis == axis)
        .scan(start, |acc, &(t, len)| {
            *acc += t.sign() * len as i64;
            Some(*acc)
        })
        .collect()
}

/// A maximal straight segment of a knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stick {
    pub kind: StickType,
    pub length: u64,
    /// Index of the initial critical vertex.
    pub start: usize,
}

impl Stick {
    /// Index of the terminal critical vertex in a knot with `n` vertices.
    pub fn end(&self, n: usize) -> usize {
        (self.start + self.length as usize) % n
    }
}

/// A closed, simple, axis-parallel lattice polygon with an orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeKnot {
    vertices: Vec<LatticePoint>,
    steps: Vec<StickType>,
    critical: Vec<bool>,
    sticks: Vec<Stick>,
}

impl LatticeKnot {
    /// Walks a stick list from `origin`, validating closure and simplicity.
    ///
    /// Collisions are reported with indices into `sticks`.
    pub fn from_sticks(sticks: &[(StickType, u64)], origin: LatticePoint) -> Result<Self, KnotError> {
        if sticks.is_empty() {
            return Err(KnotError::Empty);
        }
        let residual = sticks.iter().fold(LatticePoint::ORIGIN, |acc, &(t, len)| acc + len as i64 * t.unit());
        if residual != LatticePoint::ORIGIN {
            return Err(KnotError::NotClosed { residual });
        }
        let total: u64 = sticks.iter().map(|s| s.1).sum();
        let mut owner: HashMap<LatticePoint, usize> = HashMap::with_capacity(total as usize);
        let mut steps = Vec::with_capacity(total as usize);
        let mut pos = origin;
        owner.insert(origin, 0);
        for (k, &(t, len)) in sticks.iter().enumerate() {
            if len == 0 {
                return Err(KnotError::LengthMismatch { axis: t.axis, detail: format!("stick {k} has zero length") });
            }
            for _ in 0..len {
                pos = pos + t;
                steps.push(t);
                if steps.len() as u64 == total {
                    break;
                }
                if let Some(&first) = owner.get(&pos) {
                    return Err(KnotError::SelfIntersection { point: pos, first_stick: first, second_stick: k });
                }
                owner.insert(pos, k);
            }
        }
        Ok(Self::from_valid_steps(origin, steps))
    }

    /// Imports a cyclic list of points joined by axis-parallel segments.
    ///
    /// Intermediate lattice points are filled in. A repeated first point at
    /// the end of the list is treated as explicit closure and dropped.
    pub fn from_vertices(cycle: &[LatticePoint]) -> Result<Self, KnotError> {
        let mut pts = cycle;
        if pts.len() > 1 && pts.first() == pts.last() {
            pts = &pts[..pts.len() - 1];
        }
        if pts.is_empty() {
            return Err(KnotError::Empty);
        }
        let n = pts.len();
        let mut sticks: Vec<(StickType, u64)> = Vec::with_capacity(n);
        for i in 0..n {
            let d = pts[(i + 1) % n] - pts[i];
            let t = StickType::axis_of_offset(d).ok_or(KnotError::NonAxisParallel { index: i })?;
            let len = d.l1_norm();
            match sticks.last_mut() {
                Some((prev, l)) if *prev == t => *l += len,
                _ => sticks.push((t, len)),
            }
        }
        LatticeKnot::from_sticks(&sticks, pts[0])
    }

    fn from_valid_steps(origin: LatticePoint, steps: Vec<StickType>) -> Self {
        let n = steps.len();
        let mut vertices = Vec::with_capacity(n);
        let mut pos = origin;
        for &s in &steps {
            vertices.push(pos);
            pos = pos + s;
        }
        let critical: Vec<bool> = (0..n).map(|i| steps[(i + n - 1) % n] != steps[i]).collect();
        let first = critical.iter().position(|&c| c).expect("closed polygons turn");
        let mut sticks = Vec::new();
        let mut i = first;
        loop {
            let kind = steps[i];
            let mut length = 0u64;
            let start = i;
            loop {
                length += 1;
                i = (i + 1) % n;
                if critical[i] {
                    break;
                }
            }
            sticks.push(Stick { kind, length, start });
            if i == first {
                break;
            }
        }
        LatticeKnot { vertices, steps, critical, sticks }
    }

    /// Number of unit edges, which equals the number of vertices.
    pub fn edge_length(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> LatticePoint {
        self.vertices[i]
    }

    /// `steps()[i]` joins vertex `i` to vertex `i + 1`.
    pub fn steps(&self) -> &[StickType] {
        &self.steps
    }

    pub fn is_critical(&self, i: usize) -> bool {
        self.critical[i]
    }

    pub fn critical_flags(&self) -> &[bool] {
        &self.critical
    }

    pub fn critical_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(|&i| self.critical[i])
    }

    /// Maximal sticks, starting with the first stick whose initial vertex
    /// has index ≥ 0 in traversal order.
    pub fn sticks(&self) -> &[Stick] {
        &self.sticks
    }

    pub fn stick_count(&self) -> usize {
        self.sticks.len()
    }

    pub fn stick_list(&self) -> Vec<(StickType, u64)> {
        self.sticks.iter().map(|s| (s.kind, s.length)).collect()
    }

    /// Index of the stick whose half-open range `[start, end)` holds vertex `i`.
    pub fn stick_of_vertex(&self, i: usize) -> usize {
        let n = self.vertices.len();
        self.sticks
            .iter()
            .position(|s| (i + n - s.start) % n < s.length as usize)
            .expect("every vertex starts a unit edge of some stick")
    }

    pub fn index_of(&self, p: LatticePoint) -> Option<usize> {
        self.vertices.iter().position(|&v| v == p)
    }

    pub fn bounding_box(&self) -> BoundingBox {
        bounding_box(&self.vertices).expect("knots are nonempty")
    }

    /// The vertex half-way round the knot from `i`.
    pub fn antipodal_vertex(&self, i: usize) -> usize {
        let n = self.vertices.len();
        (i + n / 2) % n
    }

    /// Per-direction sums of stick lengths, indexed by [`StickType::code`].
    pub fn directed_sums(&self) -> [u64; 6] {
        let mut sums = [0u64; 6];
        for s in &self.sticks {
            sums[s.kind.code() as usize] += s.length;
        }
        sums
    }

    /// Running signed sums of the `axis` sticks, in stick order, starting
    /// from the coordinate of the first stick's initial vertex.
    pub fn partial_sums(&self, axis: Axis) -> Vec<i64> {
        let start = self.vertices[self.sticks[0].start].coord(axis);
        partial_sums_of(&self.stick_list(), axis, start)
    }

    /// Tabulation read from the current starting stick, with its origin.
    pub fn tabulation(&self) -> (Tabulation, LatticePoint) {
        (Tabulation::from_sticks(self.stick_list()), self.vertices[self.sticks[0].start])
    }

    /// Tabulation starting at the lexicographically least critical vertex,
    /// following the stored orientation.
    pub fn canonical_tabulation(&self) -> (Tabulation, LatticePoint) {
        let k = (0..self.sticks.len()).min_by_key(|&k| self.vertices[self.sticks[k].start]).expect("knots have sticks");
        let list = self.stick_list();
        let rotated = list[k..].iter().chain(&list[..k]).copied();
        (Tabulation::from_sticks(rotated), self.vertices[self.sticks[k].start])
    }

    /// The same polygon traversed from vertex `i`.
    pub fn rotated(&self, i: usize) -> LatticeKnot {
        let mut steps = self.steps.clone();
        steps.rotate_left(i % self.steps.len());
        LatticeKnot::from_valid_steps(self.vertices[i], steps)
    }

    /// The same polygon with the opposite orientation, starting at the same vertex.
    pub fn reversed(&self) -> LatticeKnot {
        let steps: Vec<StickType> = self.steps.iter().rev().map(|s| s.reversed()).collect();
        LatticeKnot::from_valid_steps(self.vertices[0], steps)
    }

    pub fn transformed(&self, g: &Isometry, shift: LatticePoint) -> LatticeKnot {
        let steps = self.steps.iter().map(|&s| g.apply_direction(s)).collect();
        LatticeKnot::from_valid_steps(g.apply(self.vertices[0]) + shift, steps)
    }

    pub fn translated(&self, shift: LatticePoint) -> LatticeKnot {
        self.transformed(&Isometry::IDENTITY, shift)
    }

    pub fn level(&self, axis: Axis, value: i64) -> Level {
        level(self, axis, value)
    }
}

/// Builds and validates the knot described by a tabulation, starting at `origin`.
pub fn build_knot(tab: &Tabulation, origin: LatticePoint) -> Result<LatticeKnot, KnotError> {
    LatticeKnot::from_sticks(&tab.sticks()?, origin)
}

/// Intersection of a knot with the plane `axis = value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub axis: Axis,
    pub value: i64,
    /// Maximal runs of consecutive in-plane vertices with at least one edge.
    pub arcs: Vec<Vec<usize>>,
    /// In-plane vertices with neither neighbour in the plane.
    pub isolated_points: Vec<usize>,
    /// True when the whole knot lies in the plane (a single cyclic arc).
    pub closed: bool,
}

impl Level {
    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty() && self.isolated_points.is_empty()
    }
}

pub fn level(knot: &LatticeKnot, axis: Axis, value: i64) -> Level {
    let n = knot.edge_length();
    let inside: Vec<bool> = knot.vertices().iter().map(|v| v.coord(axis) == value).collect();
    let mut out = Level { axis, value, arcs: Vec::new(), isolated_points: Vec::new(), closed: false };
    if inside.iter().all(|&b| b) {
        out.arcs.push((0..n).collect());
        out.closed = true;
        return out;
    }
    // Start scanning just after a vertex outside the plane so no run wraps.
    let first_out = inside.iter().position(|&b| !b).expect("checked above");
    let mut run: Vec<usize> = Vec::new();
    for k in 1..=n {
        let i = (first_out + k) % n;
        if inside[i] {
            run.push(i);
        } else if !run.is_empty() {
            let r = std::mem::take(&mut run);
            if r.len() == 1 {
                out.isolated_points.push(r[0]);
            } else {
                out.arcs.push(r);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::new(x, y, z)
    }

    fn types(s: &str) -> Vec<StickType> {
        s.split_whitespace().map(|t| t.parse().unwrap()).collect()
    }

    pub(crate) fn trefoil_table() -> Tabulation {
        Tabulation::new(
            types("z+ x+ y+ z- x- y- z+ x+ y+ z- x- y-"),
            vec![2, 3, 2, 1],
            vec![1, 2, 3, 2],
            vec![3, 2, 1, 2],
        )
    }

    fn unit_square() -> LatticeKnot {
        let tab = Tabulation::new(types("x+ y+ x- y-"), vec![1, 1], vec![1, 1], vec![]);
        build_knot(&tab, LatticePoint::ORIGIN).unwrap()
    }

    #[test]
    fn trefoil_builds() {
        let k = build_knot(&trefoil_table(), LatticePoint::ORIGIN).unwrap();
        assert_eq!(k.stick_count(), 12);
        assert_eq!(k.edge_length(), 24);
        assert_eq!(k.vertex(0), LatticePoint::ORIGIN);
        assert_eq!(k.stick_list(), trefoil_table().sticks().unwrap());
        assert_eq!(k.tabulation(), (trefoil_table(), LatticePoint::ORIGIN));
    }

    #[test]
    fn square_builds() {
        let k = unit_square();
        assert_eq!(k.vertices(), &[p(0, 0, 0), p(1, 0, 0), p(1, 1, 0), p(0, 1, 0)]);
        assert!(k.critical_flags().iter().all(|&c| c));
    }

    #[test]
    fn shortened_first_z_stick_breaks_closure() {
        let mut tab = trefoil_table();
        tab.lengths.z[0] = 2;
        assert_eq!(build_knot(&tab, LatticePoint::ORIGIN), Err(KnotError::NotClosed { residual: p(0, 0, -1) }));
    }

    #[test]
    fn reports_first_collision() {
        // Closed but folded: the y- stick runs back over the y+ stick.
        let tab = Tabulation::new(types("x+ y+ y- x-"), vec![1, 1], vec![2, 2], vec![]);
        assert_eq!(
            build_knot(&tab, LatticePoint::ORIGIN),
            Err(KnotError::SelfIntersection { point: p(1, 1, 0), first_stick: 1, second_stick: 2 })
        );
    }

    #[test]
    fn column_mismatches() {
        let short = Tabulation::new(types("x+ y+ x- y-"), vec![1], vec![1, 1], vec![]);
        assert!(matches!(
            build_knot(&short, LatticePoint::ORIGIN),
            Err(KnotError::LengthMismatch { axis: Axis::X, .. })
        ));
        let extra = Tabulation::new(types("x+ y+ x- y-"), vec![1, 1], vec![1, 1], vec![4]);
        assert!(matches!(
            build_knot(&extra, LatticePoint::ORIGIN),
            Err(KnotError::LengthMismatch { axis: Axis::Z, .. })
        ));
        let padded = Tabulation::new(types("x+ y+ x- y-"), vec![1, 1, 0], vec![1, 1], vec![0, 0]);
        assert!(build_knot(&padded, LatticePoint::ORIGIN).is_ok());
        let zero = Tabulation::new(types("x+ y+ x- y-"), vec![0, 1], vec![1, 1], vec![]);
        assert!(matches!(build_knot(&zero, LatticePoint::ORIGIN), Err(KnotError::LengthMismatch { .. })));
    }

    #[test]
    fn vertex_import() {
        let k = LatticeKnot::from_vertices(&[p(0, 0, 0), p(1, 0, 0), p(1, 1, 0), p(0, 1, 0)]).unwrap();
        assert_eq!(k, unit_square());
        let closed = LatticeKnot::from_vertices(&[p(0, 0, 0), p(1, 0, 0), p(1, 1, 0), p(0, 1, 0), p(0, 0, 0)]).unwrap();
        assert_eq!(closed, unit_square());
        assert_eq!(
            LatticeKnot::from_vertices(&[p(0, 0, 0), p(2, 1, 0), p(0, 1, 0)]),
            Err(KnotError::NonAxisParallel { index: 0 })
        );
        // Collinear runs merge into one stick.
        let rect = LatticeKnot::from_vertices(&[p(0, 0, 0), p(1, 0, 0), p(2, 0, 0), p(2, 1, 0), p(0, 1, 0)]).unwrap();
        assert_eq!(rect.stick_count(), 4);
        assert_eq!(rect.edge_length(), 6);
    }

    #[test]
    fn vertex_round_trip() {
        let k = build_knot(&trefoil_table(), LatticePoint::ORIGIN).unwrap();
        assert_eq!(LatticeKnot::from_vertices(k.vertices()).unwrap(), k);
        let crit: Vec<_> = k.critical_vertices().map(|i| k.vertex(i)).collect();
        assert_eq!(LatticeKnot::from_vertices(&crit).unwrap(), k);
    }

    #[test]
    fn canonical_tabulation_starts_at_least_critical_vertex() {
        let k = build_knot(&trefoil_table(), LatticePoint::ORIGIN).unwrap();
        let (tab, origin) = k.canonical_tabulation();
        let least = k.critical_vertices().map(|i| k.vertex(i)).min().unwrap();
        assert_eq!(origin, least);
        let rebuilt = build_knot(&tab, origin).unwrap();
        assert_eq!(rebuilt.edge_length(), k.edge_length());
        let shift = k.index_of(origin).unwrap();
        assert_eq!(rebuilt, k.rotated(shift));
    }

    #[test]
    fn antipodes() {
        let sq = unit_square();
        assert_eq!(sq.vertex(sq.antipodal_vertex(0)), p(1, 1, 0));
        let k = build_knot(&trefoil_table(), LatticePoint::ORIGIN).unwrap();
        assert_eq!(k.antipodal_vertex(0), 12);
        for i in 0..k.edge_length() {
            assert_eq!(k.antipodal_vertex(k.antipodal_vertex(i)), i);
        }
    }

    #[test]
    fn levels() {
        let sq = unit_square();
        let l = sq.level(Axis::Z, 0);
        assert!(l.closed);
        assert_eq!(l.arcs, vec![vec![0, 1, 2, 3]]);
        assert!(sq.level(Axis::X, 1_000_000).is_empty());
        let l = sq.level(Axis::X, 1);
        assert_eq!(l.arcs, vec![vec![1, 2]]);
    }

    #[test]
    fn trefoil_partial_sums_close() {
        let tab = trefoil_table();
        for a in Axis::ALL {
            let sums = tab.partial_sums(a, LatticePoint::ORIGIN).unwrap();
            assert_eq!(*sums.last().unwrap(), 0);
            let k = build_knot(&tab, LatticePoint::ORIGIN).unwrap();
            assert_eq!(k.partial_sums(a), sums);
        }
        assert_eq!(tab.partial_sums(Axis::Z, LatticePoint::ORIGIN).unwrap(), vec![3, 1, 2, 0]);
    }

    #[test]
    fn reversal_and_rotation_keep_the_polygon() {
        let k = build_knot(&trefoil_table(), LatticePoint::ORIGIN).unwrap();
        let r = k.reversed();
        assert_eq!(r.reversed(), k);
        let mut a: Vec<_> = k.vertices().to_vec();
        let mut b: Vec<_> = r.vertices().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(k.rotated(5).rotated(k.edge_length() - 5), k);
    }

    #[test]
    fn stick_of_vertex_matches_ranges() {
        let k = build_knot(&trefoil_table(), LatticePoint::ORIGIN).unwrap();
        assert_eq!(k.stick_of_vertex(0), 0);
        assert_eq!(k.stick_of_vertex(3), 1);
        assert_eq!(k.stick_of_vertex(23), 11);
    }
}
