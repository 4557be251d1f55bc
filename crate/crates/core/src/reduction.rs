//! Isotopic stick reduction.
//!
//! Shrinking stick `s` with the orientation slides its initial vertex
//! forward along `s`. The sticks before `s` that are perpendicular to it
//! (two of them in a z, x, y period) translate rigidly, and the first
//! earlier stick parallel to `s` (the other leg of the "L") shrinks by the
//! same amount. Against the orientation is the mirror image on the sticks
//! after `s`. A move of amount `a` succeeds only if every intermediate
//! configuration `1..=a` is simple, so the swept surface misses the knot.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::knot::{KnotError, LatticeKnot};
use crate::lattice::{LatticePoint, StickType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Move the initial vertex forward.
    WithOrientation,
    /// Move the terminal vertex backward.
    AgainstOrientation,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::WithOrientation, Direction::AgainstOrientation];
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::WithOrientation => "with",
            Direction::AgainstOrientation => "against",
        })
    }
}

impl std::str::FromStr for Direction {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "with" | "with_orientation" => Ok(Direction::WithOrientation),
            "against" | "against_orientation" => Ok(Direction::AgainstOrientation),
            _ => Err(format!("unknown direction `{s}` (expected `with` or `against`)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("stick {stick} does not exist (knot has {count} sticks)")]
    StickOutOfRange { stick: usize, count: usize },
    #[error("move amount must be positive")]
    ZeroAmount,
    #[error("amount {amount} would consume all of stick {stick} (length {length})")]
    AmountTooLarge { stick: usize, amount: u64, length: u64 },
    #[error("leg stick {stick} (length {length}) would shrink to nothing")]
    DegenerateStick { stick: usize, length: u64 },
    #[error("leg stick {stick} points the same way as stick {target}; the move would not shorten the knot")]
    ParallelLeg { stick: usize, target: usize },
    #[error("collision at {point} between sticks {first_stick} and {second_stick} after sliding {amount}")]
    CollisionDetected { point: LatticePoint, amount: u64, first_stick: usize, second_stick: usize },
}

/// A reduction of `stick` by `amount` lattice units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReductionMove {
    pub stick: usize,
    pub direction: Direction,
    pub amount: u64,
}

impl ReductionMove {
    pub fn new(stick: usize, direction: Direction, amount: u64) -> Result<Self, ReductionError> {
        if amount == 0 {
            return Err(ReductionError::ZeroAmount);
        }
        Ok(ReductionMove { stick, direction, amount })
    }
}

/// The sticks that translate and the leg that absorbs the change.
#[derive(Debug, Clone, PartialEq, Eq)]
struct MoveFrame {
    sticks: Vec<(StickType, u64)>,
    kind: StickType,
    /// Perpendicular sticks adjacent to the target on the moving side, nearest first.
    run: Vec<usize>,
    leg: usize,
}

fn frame(knot: &LatticeKnot, stick: usize, direction: Direction) -> Result<MoveFrame, ReductionError> {
    let sticks = knot.stick_list();
    let m = sticks.len();
    if stick >= m {
        return Err(ReductionError::StickOutOfRange { stick, count: m });
    }
    let kind = sticks[stick].0;
    let step = |j: usize| match direction {
        Direction::WithOrientation => (j + m - 1) % m,
        Direction::AgainstOrientation => (j + 1) % m,
    };
    let mut run = Vec::new();
    let mut j = step(stick);
    while sticks[j].0.axis != kind.axis {
        run.push(j);
        j = step(j);
    }
    Ok(MoveFrame { sticks, kind, run, leg: j })
}

/// Stick list and origin after sliding by `amount`; `sign` is −1 for an extension.
fn moved(
    knot: &LatticeKnot,
    f: &MoveFrame,
    stick: usize,
    direction: Direction,
    amount: u64,
    sign: i64,
) -> (Vec<(StickType, u64)>, LatticePoint) {
    let mut sticks = f.sticks.clone();
    let delta = |l: u64| if sign > 0 { l - amount } else { l + amount };
    sticks[stick].1 = delta(sticks[stick].1);
    sticks[f.leg].1 = delta(sticks[f.leg].1);
    // Sticks whose initial vertex moves, and by how much.
    let (shift, first_moves) = match direction {
        Direction::WithOrientation => (sign * amount as i64 * f.kind.unit(), stick == 0 || f.run.contains(&0)),
        Direction::AgainstOrientation => (-sign * amount as i64 * f.kind.unit(), f.leg == 0 || f.run.contains(&0)),
    };
    let origin = knot.vertex(knot.sticks()[0].start);
    (sticks, if first_moves { origin + shift } else { origin })
}

fn slide(knot: &LatticeKnot, mv: ReductionMove, sign: i64) -> Result<LatticeKnot, ReductionError> {
    if mv.amount == 0 {
        return Err(ReductionError::ZeroAmount);
    }
    let f = frame(knot, mv.stick, mv.direction)?;
    if f.sticks[f.leg].0 == f.kind {
        return Err(ReductionError::ParallelLeg { stick: f.leg, target: mv.stick });
    }
    if sign > 0 {
        let leg_len = f.sticks[f.leg].1;
        if leg_len <= mv.amount {
            return Err(ReductionError::DegenerateStick { stick: f.leg, length: leg_len });
        }
        let len = f.sticks[mv.stick].1;
        if len <= mv.amount {
            return Err(ReductionError::AmountTooLarge { stick: mv.stick, amount: mv.amount, length: len });
        }
    }
    let mut last = None;
    for k in 1..=mv.amount {
        let (sticks, origin) = moved(knot, &f, mv.stick, mv.direction, k, sign);
        match LatticeKnot::from_sticks(&sticks, origin) {
            Ok(next) => last = Some(next),
            Err(KnotError::SelfIntersection { point, first_stick, second_stick }) => {
                return Err(ReductionError::CollisionDetected { point, amount: k, first_stick, second_stick });
            }
            Err(e) => unreachable!("slides preserve closure and positive lengths: {e}"),
        }
    }
    Ok(last.expect("amount is positive"))
}

/// Applies a reduction; the edge length drops by `2 * amount`.
pub fn apply_reduction(knot: &LatticeKnot, mv: ReductionMove) -> Result<LatticeKnot, ReductionError> {
    slide(knot, mv, 1)
}

/// The inverse move: lengthens the stick and its leg by `amount`.
pub fn apply_extension(knot: &LatticeKnot, mv: ReductionMove) -> Result<LatticeKnot, ReductionError> {
    slide(knot, mv, -1)
}

/// True iff the stick can be shortened by at least one unit in `direction`.
pub fn is_reducible(knot: &LatticeKnot, stick: usize, direction: Direction) -> bool {
    max_reduction(knot, stick, direction) > 0
}

/// Largest amount by which the stick can be reduced in `direction` (0 if none).
pub fn max_reduction(knot: &LatticeKnot, stick: usize, direction: Direction) -> u64 {
    let Some(s) = knot.sticks().get(stick) else {
        return 0;
    };
    let mut best = 0;
    for a in 1..s.length {
        match apply_reduction(knot, ReductionMove { stick, direction, amount: a }) {
            Ok(_) => best = a,
            Err(_) => break,
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reducible {
    pub stick: usize,
    pub direction: Direction,
    pub max_amount: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityReport {
    pub irreducible: bool,
    pub witnesses: Vec<Reducible>,
}

/// Tries every stick in both directions.
pub fn is_irreducible(knot: &LatticeKnot) -> IrreducibilityReport {
    let witnesses: Vec<Reducible> = (0..knot.stick_count())
        .flat_map(|stick| Direction::BOTH.map(|direction| (stick, direction)))
        .filter_map(|(stick, direction)| {
            let max_amount = max_reduction(knot, stick, direction);
            (max_amount > 0).then_some(Reducible { stick, direction, max_amount })
        })
        .collect();
    IrreducibilityReport { irreducible: witnesses.is_empty(), witnesses }
}

/// Plane-sweep test: does a translated neighbour stick, one unit into the
/// swept plane (ℓ1 distance exactly 1 from its current position), land on
/// another point of the knot?
///
/// When this fires the stick cannot be reduced in `direction`; the converse
/// does not hold in general.
pub fn sweep_blocked(knot: &LatticeKnot, stick: usize, direction: Direction) -> bool {
    let Ok(f) = frame(knot, stick, direction) else {
        return false;
    };
    let n = knot.edge_length();
    let points_of = |k: usize| {
        let s = knot.sticks()[k];
        (0..=s.length as usize).map(move |t| knot.vertex((s.start + t) % n))
    };
    let mut moving: HashSet<LatticePoint> = points_of(stick).chain(points_of(f.leg)).collect();
    for &k in &f.run {
        moving.extend(points_of(k));
    }
    let shift = match direction {
        Direction::WithOrientation => f.kind.unit(),
        Direction::AgainstOrientation => -f.kind.unit(),
    };
    let rest: HashSet<LatticePoint> = knot.vertices().iter().copied().filter(|p| !moving.contains(p)).collect();
    // Two neighbouring sticks trace the swept plane segments.
    f.run.iter().take(2).any(|&k| points_of(k).any(|p| rest.contains(&(p + shift))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::torus_knot;

    fn p(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::new(x, y, z)
    }

    fn rectangle() -> LatticeKnot {
        LatticeKnot::from_vertices(&[p(0, 0, 0), p(2, 0, 0), p(2, 1, 0), p(0, 1, 0)]).unwrap()
    }

    fn square() -> LatticeKnot {
        LatticeKnot::from_vertices(&[p(0, 0, 0), p(1, 0, 0), p(1, 1, 0), p(0, 1, 0)]).unwrap()
    }

    fn same_polygon(a: &LatticeKnot, b: &LatticeKnot) -> bool {
        let mut va = a.vertices().to_vec();
        let mut vb = b.vertices().to_vec();
        va.sort();
        vb.sort();
        va == vb
    }

    #[test]
    fn rectangle_shrinks_to_square() {
        let r = rectangle();
        for dir in Direction::BOTH {
            let out = apply_reduction(&r, ReductionMove::new(0, dir, 1).unwrap()).unwrap();
            assert_eq!(out.edge_length(), 4);
            assert_eq!(out.stick_count(), 4);
            let b = out.bounding_box();
            assert_eq!((b.extent(crate::Axis::X), b.extent(crate::Axis::Y)), (1, 1));
        }
        let with = apply_reduction(&r, ReductionMove::new(0, Direction::WithOrientation, 1).unwrap()).unwrap();
        assert!(same_polygon(&with, &square().translated(p(1, 0, 0))));
        let against = apply_reduction(&r, ReductionMove::new(0, Direction::AgainstOrientation, 1).unwrap()).unwrap();
        assert!(same_polygon(&against, &square()));
    }

    #[test]
    fn square_admits_no_reduction() {
        let sq = square();
        for stick in 0..4 {
            for dir in Direction::BOTH {
                let err = apply_reduction(&sq, ReductionMove::new(stick, dir, 1).unwrap()).unwrap_err();
                assert!(matches!(err, ReductionError::DegenerateStick { .. }), "{err:?}");
            }
        }
        assert!(is_irreducible(&sq).irreducible);
    }

    #[test]
    fn rectangle_witnesses() {
        let r = is_irreducible(&rectangle());
        assert!(!r.irreducible);
        let got: Vec<_> = r.witnesses.iter().map(|w| (w.stick, w.direction, w.max_amount)).collect();
        assert_eq!(
            got,
            vec![
                (0, Direction::WithOrientation, 1),
                (0, Direction::AgainstOrientation, 1),
                (2, Direction::WithOrientation, 1),
                (2, Direction::AgainstOrientation, 1),
            ]
        );
        assert!(is_reducible(&rectangle(), 0, Direction::WithOrientation));
        assert!(!is_reducible(&rectangle(), 1, Direction::WithOrientation));
    }

    #[test]
    fn move_errors() {
        assert_eq!(ReductionMove::new(0, Direction::WithOrientation, 0), Err(ReductionError::ZeroAmount));
        let big = LatticeKnot::from_vertices(&[p(0, 0, 0), p(3, 0, 0), p(3, 4, 0), p(0, 4, 0)]).unwrap();
        assert_eq!(
            apply_reduction(&big, ReductionMove::new(0, Direction::WithOrientation, 3).unwrap()),
            Err(ReductionError::DegenerateStick { stick: 2, length: 3 })
        );
        let stair =
            LatticeKnot::from_vertices(&[p(0, 0, 0), p(3, 0, 0), p(3, 2, 0), p(1, 2, 0), p(1, 4, 0), p(0, 4, 0)])
                .unwrap();
        assert_eq!(
            apply_reduction(&stair, ReductionMove::new(1, Direction::WithOrientation, 2).unwrap()),
            Err(ReductionError::AmountTooLarge { stick: 1, amount: 2, length: 2 })
        );
        assert_eq!(
            apply_reduction(&big, ReductionMove::new(9, Direction::WithOrientation, 1).unwrap()),
            Err(ReductionError::StickOutOfRange { stick: 9, count: 4 })
        );
        assert_eq!(max_reduction(&big, 0, Direction::WithOrientation), 2);
    }

    #[test]
    fn edge_length_drops_by_twice_the_amount() {
        let big = LatticeKnot::from_vertices(&[p(0, 0, 0), p(5, 0, 0), p(5, 4, 0), p(0, 4, 0)]).unwrap();
        for a in 1..4 {
            let out = apply_reduction(&big, ReductionMove::new(1, Direction::AgainstOrientation, a).unwrap()).unwrap();
            assert_eq!(out.edge_length(), big.edge_length() - 2 * a as usize);
            assert_eq!(out.stick_count(), 4);
        }
    }

    #[test]
    fn extension_round_trip_on_trefoil() {
        let k = torus_knot(2).unwrap();
        for stick in 0..k.stick_count() {
            for dir in Direction::BOTH {
                let mv = ReductionMove::new(stick, dir, 2).unwrap();
                if let Ok(longer) = apply_extension(&k, mv) {
                    assert_eq!(longer.edge_length(), k.edge_length() + 4);
                    assert_eq!(apply_reduction(&longer, mv).unwrap(), k);
                }
            }
        }
    }

    #[test]
    fn collision_is_reported() {
        let k = torus_knot(2).unwrap();
        let points: HashSet<_> = k.vertices().iter().copied().collect();
        let mut collisions = 0;
        for stick in 0..k.stick_count() {
            for dir in Direction::BOTH {
                if let Err(ReductionError::CollisionDetected { point, amount, .. }) =
                    apply_reduction(&k, ReductionMove::new(stick, dir, 1).unwrap())
                {
                    assert_eq!(amount, 1);
                    assert!(points.contains(&point));
                    collisions += 1;
                }
            }
        }
        assert!(collisions > 0);
    }
}
