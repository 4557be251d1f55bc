//! Exhaustive enumeration of small lattice polygons and searches over them.

use std::collections::HashSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::distortion::{check_distortion_one_structure, vertex_distortion, DistortionOneReport, Rational};
use crate::knot::LatticeKnot;
use crate::lattice::{LatticePoint, StickType};
use crate::reduction::{apply_extension, apply_reduction, Direction, ReductionMove};

pub const DEFAULT_MAX_EDGE_LENGTH: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplorerError {
    #[error("edge length bound {requested} exceeds the configured cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("edge length bound must be an even number ≥ 4, got {0}")]
    InvalidBound(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub max_edge_length: usize,
    pub cap: usize,
}

impl EnumerationConfig {
    pub fn new(max_edge_length: usize) -> Self {
        EnumerationConfig { max_edge_length, cap: DEFAULT_MAX_EDGE_LENGTH }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    fn validate(&self) -> Result<(), ExplorerError> {
        if self.max_edge_length < 4 || !self.max_edge_length.is_multiple_of(2) {
            return Err(ExplorerError::InvalidBound(self.max_edge_length));
        }
        if self.max_edge_length > self.cap {
            return Err(ExplorerError::CapExceeded { requested: self.max_edge_length, cap: self.cap });
        }
        Ok(())
    }
}

fn codes(steps: &[StickType]) -> Vec<u8> {
    steps.iter().map(|s| s.code()).collect()
}

/// Lexicographically least step-code sequence over all 48 isometries,
/// starting vertices and both orientations.
///
/// For a fixed start and orientation the least isometric image is forced:
/// each axis is sent, in order of first appearance, to the smallest unused
/// axis with positive sign. Only the 2n start/orientation choices remain.
pub fn canonical_steps(steps: &[StickType]) -> Vec<u8> {
    let n = steps.len();
    let forward = codes(steps);
    let reversed: Vec<u8> = steps.iter().rev().map(|s| s.reversed().code()).collect();
    let mut best: Vec<u8> = Vec::new();
    let mut cand: Vec<u8> = Vec::with_capacity(n);
    for seq in [&forward, &reversed] {
        for start in 0..n {
            cand.clear();
            let mut image = [u8::MAX; 3];
            let mut flip = [0u8; 3];
            let mut used = 0u8;
            // Ordering::Equal while the candidate matches best so far.
            let mut order = if best.is_empty() { std::cmp::Ordering::Less } else { std::cmp::Ordering::Equal };
            for k in 0..n {
                let c = seq[(start + k) % n];
                let (axis, neg) = ((c / 2) as usize, c % 2);
                if image[axis] == u8::MAX {
                    image[axis] = used;
                    flip[axis] = neg;
                    used += 1;
                }
                let mapped = 2 * image[axis] + (neg ^ flip[axis]);
                if order.is_eq() {
                    order = mapped.cmp(&best[k]);
                    if order.is_gt() {
                        break;
                    }
                }
                cand.push(mapped);
            }
            if order.is_lt() {
                std::mem::swap(&mut best, &mut cand);
            }
        }
    }
    best
}

/// The representative of a knot's isometry class: canonical steps from the origin.
pub fn canonical_knot(knot: &LatticeKnot) -> LatticeKnot {
    knot_from_codes(&canonical_steps(knot.steps()))
}

fn knot_from_codes(codes: &[u8]) -> LatticeKnot {
    let mut pts = Vec::with_capacity(codes.len());
    let mut at = LatticePoint::ORIGIN;
    for &c in codes {
        pts.push(at);
        at = at + StickType::from_code(c);
    }
    LatticeKnot::from_vertices(&pts).expect("canonical forms are valid polygons")
}

/// Dense occupancy grid centred on the origin.
struct Grid {
    radius: i64,
    side: i64,
    cells: Vec<bool>,
}

impl Grid {
    fn new(radius: i64) -> Self {
        let side = 2 * radius + 1;
        Grid { radius, side, cells: vec![false; (side * side * side) as usize] }
    }

    fn slot(&self, p: LatticePoint) -> usize {
        let r = self.radius;
        (((p.x + r) * self.side + (p.y + r)) * self.side + (p.z + r)) as usize
    }
}

struct Walker {
    length: usize,
    grid: Grid,
    steps: Vec<StickType>,
    found: HashSet<Vec<u8>>,
}

impl Walker {
    fn extend(&mut self, at: LatticePoint) {
        let remaining = self.length - self.steps.len();
        for d in StickType::ALL {
            let next = at + d;
            if remaining == 1 {
                if next == LatticePoint::ORIGIN {
                    self.steps.push(d);
                    self.close();
                    self.steps.pop();
                }
                continue;
            }
            // The origin is the lexicographically least vertex of the polygon.
            if next <= LatticePoint::ORIGIN || next.l1_norm() as usize > remaining - 1 {
                continue;
            }
            let slot = self.grid.slot(next);
            if self.grid.cells[slot] {
                continue;
            }
            self.grid.cells[slot] = true;
            self.steps.push(d);
            self.extend(next);
            self.steps.pop();
            self.grid.cells[slot] = false;
        }
    }

    fn close(&mut self) {
        // Each polygon is reached once per orientation; keep the smaller.
        let fwd = codes(&self.steps);
        let rev: Vec<u8> = self.steps.iter().rev().map(|s| s.reversed().code()).collect();
        if fwd < rev {
            self.found.insert(canonical_steps(&self.steps));
        }
    }
}

fn polygons_of_length(length: usize) -> Vec<Vec<u8>> {
    let mut w = Walker {
        length,
        grid: Grid::new(length as i64 / 2 + 1),
        steps: Vec::with_capacity(length),
        found: HashSet::new(),
    };
    let origin_slot = w.grid.slot(LatticePoint::ORIGIN);
    w.grid.cells[origin_slot] = true;
    w.extend(LatticePoint::ORIGIN);
    let mut out: Vec<Vec<u8>> = w.found.into_iter().collect();
    out.sort();
    out
}

/// Every closed simple lattice polygon with edge length at most the bound,
/// one per class under translation, the 48 isometries, choice of start and
/// orientation. Ordered by length, then canonical step sequence.
pub fn enumerate_conformations(config: EnumerationConfig) -> Result<Vec<LatticeKnot>, ExplorerError> {
    config.validate()?;
    Ok((4..=config.max_edge_length).step_by(2).flat_map(polygons_of_length).map(|c| knot_from_codes(&c)).collect())
}

/// Number of classes at each even length `4..=max`.
pub fn conformation_counts(config: EnumerationConfig) -> Result<Vec<(usize, usize)>, ExplorerError> {
    config.validate()?;
    Ok((4..=config.max_edge_length).step_by(2).map(|n| (n, polygons_of_length(n).len())).collect())
}

/// The enumerated conformations with vertex distortion exactly 1, each with
/// its structural check.
pub fn classify_distortion_one(
    config: EnumerationConfig,
) -> Result<Vec<(LatticeKnot, DistortionOneReport)>, ExplorerError> {
    let one = Rational::from_integer(BigInt::from(1));
    Ok(enumerate_conformations(config)?
        .into_iter()
        .filter(|k| vertex_distortion(k).value == one)
        .map(|k| {
            let report = check_distortion_one_structure(&k).expect("distortion checked above");
            (k, report)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub best: LatticeKnot,
    pub value: Rational,
    pub moves_tried: u64,
    pub moves_accepted: u64,
}

/// Random walk over reductions and leg extensions of amount 1, keeping the
/// conformation with the smallest vertex distortion seen.
///
/// Moves that increase distortion are accepted with probability 1/8; edge
/// length is kept within 16 of the starting knot. The result is only an
/// upper bound for the knot type.
pub fn search_low_distortion(knot: &LatticeKnot, move_budget: u64, seed: u64) -> SearchOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_len = knot.edge_length() + 16;
    let mut current = knot.clone();
    let mut current_value = vertex_distortion(&current).value;
    let mut out =
        SearchOutcome { best: current.clone(), value: current_value.clone(), moves_tried: 0, moves_accepted: 0 };
    for _ in 0..move_budget {
        out.moves_tried += 1;
        let stick = rng.gen_range(0..current.stick_count());
        let direction = if rng.gen_bool(0.5) { Direction::WithOrientation } else { Direction::AgainstOrientation };
        let mv = ReductionMove { stick, direction, amount: 1 };
        let next = if rng.gen_bool(0.5) { apply_reduction(&current, mv) } else { apply_extension(&current, mv) };
        let Ok(next) = next else { continue };
        if next.edge_length() > max_len {
            continue;
        }
        let value = vertex_distortion(&next).value;
        if value <= current_value || rng.gen_ratio(1, 8) {
            out.moves_accepted += 1;
            if value < out.value {
                out.value = value.clone();
                out.best = next.clone();
            }
            current = next;
            current_value = value;
        }
    }
    out
}
