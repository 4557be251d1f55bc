//! Vertex distortion: the maximum over vertex pairs of the shorter arc
//! length along the knot divided by the ℓ1 distance.
//!
//! The pair scan is O(n²) in the edge length and compares ratios by
//! integer cross-multiplication, so ties are detected exactly.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::knot::LatticeKnot;
use crate::lattice::{is_box_corner, l1_distance, LatticePath};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistortionError {
    #[error("vertex index {index} out of range for a knot with {len} vertices")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("distortion of a vertex with itself is undefined")]
    SameVertex,
    #[error("vertex distortion is {0}, not 1")]
    PreconditionFailed(Rational),
}

/// Result of an all-pairs scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistortionReport {
    pub value: Rational,
    /// Every pair `(i, j)`, `i < j`, attaining `value`, ascending.
    pub realizing_pairs: Vec<(usize, usize)>,
    pub pairs_scanned: u64,
}

/// Always `numerator/denominator`, including `n/1` for integers.
pub fn format_fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Shorter arc length between vertices `i` and `j`.
pub fn knot_distance(knot: &LatticeKnot, i: usize, j: usize) -> Result<u64, DistortionError> {
    let n = knot.edge_length();
    for index in [i, j] {
        if index >= n {
            return Err(DistortionError::IndexOutOfRange { index, len: n });
        }
    }
    Ok(arc_distance(n, i, j))
}

#[inline]
fn arc_distance(n: usize, i: usize, j: usize) -> u64 {
    let d = i.abs_diff(j);
    d.min(n - d) as u64
}

/// `d_K / d_1` for one pair of distinct vertices.
pub fn distortion_pair_value(knot: &LatticeKnot, i: usize, j: usize) -> Result<Rational, DistortionError> {
    let along = knot_distance(knot, i, j)?;
    if i == j {
        return Err(DistortionError::SameVertex);
    }
    let straight = l1_distance(knot.vertex(i), knot.vertex(j));
    Ok(Rational::new(BigInt::from(along), BigInt::from(straight)))
}

/// The trivial bound `e_L / 2`.
pub fn distortion_upper_bound(knot: &LatticeKnot) -> Rational {
    Rational::new(BigInt::from(knot.edge_length()), BigInt::from(2))
}

/// Best ratio seen so far, kept as a fraction of small integers.
#[derive(Debug, Clone)]
struct Best {
    num: u64,
    den: u64,
    pairs: Vec<(usize, usize)>,
}

impl Best {
    fn empty() -> Self {
        Best { num: 0, den: 1, pairs: Vec::new() }
    }

    fn cmp_ratio(&self, num: u64, den: u64) -> Ordering {
        // Values are bounded by the edge length, so u128 cannot overflow.
        (u128::from(num) * u128::from(self.den)).cmp(&(u128::from(self.num) * u128::from(den)))
    }

    fn offer(&mut self, num: u64, den: u64, pair: (usize, usize)) {
        match self.cmp_ratio(num, den) {
            Ordering::Greater => {
                self.num = num;
                self.den = den;
                self.pairs.clear();
                self.pairs.push(pair);
            }
            Ordering::Equal => self.pairs.push(pair),
            Ordering::Less => {}
        }
    }

    fn merge(mut self, other: Best) -> Best {
        match self.cmp_ratio(other.num, other.den) {
            Ordering::Greater => other,
            Ordering::Equal => {
                self.pairs.extend(other.pairs);
                self
            }
            Ordering::Less => self,
        }
    }
}

fn scan_rows(knot: &LatticeKnot, rows: std::ops::Range<usize>) -> Best {
    let n = knot.edge_length();
    let v = knot.vertices();
    let mut best = Best::empty();
    for i in rows {
        let a = v[i];
        for (j, &b) in v.iter().enumerate().skip(i + 1) {
            let along = arc_distance(n, i, j);
            let straight = l1_distance(a, b);
            best.offer(along, straight, (i, j));
        }
    }
    best
}

fn finish(knot: &LatticeKnot, mut best: Best) -> DistortionReport {
    let n = knot.edge_length() as u64;
    best.pairs.sort_unstable();
    DistortionReport {
        value: Rational::new(BigInt::from(best.num), BigInt::from(best.den)),
        realizing_pairs: best.pairs,
        pairs_scanned: n * n.saturating_sub(1) / 2,
    }
}

/// Exact vertex distortion by a single-threaded scan of all pairs.
pub fn vertex_distortion(knot: &LatticeKnot) -> DistortionReport {
    let best = scan_rows(knot, 0..knot.edge_length());
    finish(knot, best)
}

/// Same result as [`vertex_distortion`], with rows split across the rayon pool.
pub fn vertex_distortion_parallel(knot: &LatticeKnot) -> DistortionReport {
    let n = knot.edge_length();
    // Row i costs n - i - 1; 64 chunks keep the pool busy.
    let chunk = n.div_ceil(64).max(1);
    let best = (0..n.div_ceil(chunk))
        .into_par_iter()
        .map(|c| scan_rows(knot, c * chunk..((c + 1) * chunk).min(n)))
        .reduce(Best::empty, Best::merge);
    finish(knot, best)
}

/// Outcome of checking the structure forced by `δ_V = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DistortionOneReport {
    /// Vertices whose arc to the antipode (either direction) is not a staircase walk.
    pub non_staircase_arcs: Vec<usize>,
    /// Vertices that are not corners of the bounding box.
    pub non_corner_vertices: Vec<usize>,
    /// Vertices off the boundary surface of the bounding box.
    pub interior_vertices: Vec<usize>,
}

impl DistortionOneReport {
    pub fn passed(&self) -> bool {
        self.non_staircase_arcs.is_empty() && self.non_corner_vertices.is_empty() && self.interior_vertices.is_empty()
    }
}

/// For a knot with `δ_V = 1`, checks that both arcs from every vertex to its
/// antipode are staircase walks and that every vertex is a bounding-box corner.
pub fn check_distortion_one_structure(knot: &LatticeKnot) -> Result<DistortionOneReport, DistortionError> {
    let value = vertex_distortion(knot).value;
    if value != Rational::from_integer(BigInt::from(1)) {
        return Err(DistortionError::PreconditionFailed(value));
    }
    let n = knot.edge_length();
    let v = knot.vertices();
    let bbox = knot.bounding_box();
    let mut report = DistortionOneReport::default();
    for i in 0..n {
        let j = knot.antipodal_vertex(i);
        let forward: Vec<_> = (0..=n / 2).map(|k| v[(i + k) % n]).collect();
        let backward: Vec<_> = (0..=n / 2).map(|k| v[(i + n - k) % n]).collect();
        debug_assert_eq!(forward.last(), Some(&v[j]));
        let staircase = |pts: Vec<_>| LatticePath::new(pts).map(|p| crate::lattice::is_staircase(&p)).unwrap_or(false);
        if !(staircase(forward) && staircase(backward)) {
            report.non_staircase_arcs.push(i);
        }
        if !is_box_corner(v[i], v).expect("vertex of its own knot") {
            report.non_corner_vertices.push(i);
        }
        if !bbox.on_boundary(v[i]) {
            report.interior_vertices.push(i);
        }
    }
    Ok(report)
}
