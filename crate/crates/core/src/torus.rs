//! The T(p, p+1) torus-knot family: table generation and structural checks.
//!
//! The generator reproduces the printed stick-length table row by row,
//! including its three exceptional final rows. Every check rebuilds the
//! knot through the generic validator; nothing assumes the curve is simple.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::knot::{build_knot, KnotError, LatticeKnot, Tabulation};
use crate::lattice::{Axis, LatticePoint, StickType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("p must be at least 2, got {0}")]
    InvalidP(u64),
    #[error("the generated table does not build a knot: {0}")]
    Build(#[from] KnotError),
}

/// The family parameter, `p ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusParams(u64);

impl TorusParams {
    pub fn new(p: u64) -> Result<Self, TorusError> {
        if p < 2 {
            return Err(TorusError::InvalidP(p));
        }
        Ok(TorusParams(p))
    }

    pub fn p(self) -> u64 {
        self.0
    }

    /// `5p² + 3p − 2`.
    pub fn edge_length(self) -> u64 {
        let p = self.0;
        5 * p * p + 3 * p - 2
    }

    /// `6p`.
    pub fn stick_count(self) -> u64 {
        6 * self.0
    }
}

/// The repeating stick-type period.
pub const TYPE_PERIOD: [StickType; 6] =
    [StickType::Z_POS, StickType::X_POS, StickType::Y_POS, StickType::Z_NEG, StickType::X_NEG, StickType::Y_NEG];

/// Row `i` (1-based) of the length table as `(x, y, z)`.
fn table_row(p: u64, i: u64) -> (u64, u64, u64) {
    let x = match i {
        1 => 2,
        _ if i == 2 * p - 2 => p + 1,
        _ if i == 2 * p - 1 => p,
        _ if i == 2 * p => 1,
        // rows 2k and 2k+1 hold k + 2
        _ => i / 2 + 2,
    };
    let y = if i == 2 * p - 1 {
        2 * p - 1
    } else if i % 2 == 1 {
        p - 1
    } else {
        p
    };
    let z = if i == 2 * p { p } else { 2 * p - i };
    (x, y, z)
}

/// Closed forms for the vertex distortion of the generated `T(p, p+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistortionFormula {
    /// `9p²/4 + 3p/2 − 1`, the lower bound for smaller even p.
    A,
    /// `11p²/4 − p − 11/4`, for small odd p.
    B,
    /// `11p²/4 − 7p/2 − 5`, for larger even p.
    C,
}

impl DistortionFormula {
    pub const ALL: [DistortionFormula; 3] = [DistortionFormula::A, DistortionFormula::B, DistortionFormula::C];

    pub fn value(self, p: u64) -> BigRational {
        let p = BigRational::from_integer(BigInt::from(p));
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let p2 = &p * &p;
        match self {
            DistortionFormula::A => &p2 * q(9, 4) + &p * q(3, 2) - q(1, 1),
            DistortionFormula::B => &p2 * q(11, 4) - &p - q(11, 4),
            DistortionFormula::C => &p2 * q(11, 4) - &p * q(7, 2) - q(5, 1),
        }
    }

    /// Whether the formula is stated for this parity of p.
    pub fn applies_to(self, p: u64) -> bool {
        match self {
            DistortionFormula::B => p % 2 == 1,
            _ => p.is_multiple_of(2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DistortionFormula::A => "A",
            DistortionFormula::B => "B",
            DistortionFormula::C => "C",
        }
    }
}

pub fn generate_torus_tabulation(p: u64) -> Result<Tabulation, TorusError> {
    let p = TorusParams::new(p)?.p();
    let types = TYPE_PERIOD.iter().copied().cycle().take(6 * p as usize).collect();
    let (mut x, mut y, mut z) = (Vec::new(), Vec::new(), Vec::new());
    for i in 1..=2 * p {
        let (a, b, c) = table_row(p, i);
        x.push(a);
        y.push(b);
        z.push(c);
    }
    Ok(Tabulation::new(types, x, y, z))
}

/// Builds T(p, p+1) from the origin.
pub fn torus_knot(p: u64) -> Result<LatticeKnot, TorusError> {
    Ok(build_knot(&generate_torus_tabulation(p)?, LatticePoint::ORIGIN)?)
}

pub fn stick_count(knot: &LatticeKnot) -> usize {
    knot.stick_count()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSums {
    /// Directed sums indexed by [`StickType::code`].
    pub directed: [u64; 6],
    pub total: u64,
    pub passed: bool,
}

impl ClosureSums {
    pub fn sum(&self, t: StickType) -> u64 {
        self.directed[t.code() as usize]
    }
}

/// Σ|z±| = Σ|y±| = p², Σ|x±| = p²/2 + 3p/2 − 1, total 5p² + 3p − 2.
pub fn verify_closure_sums(p: u64) -> Result<ClosureSums, TorusError> {
    let tab = generate_torus_tabulation(p)?;
    let mut directed = [0u64; 6];
    for (t, len) in tab.sticks()? {
        directed[t.code() as usize] += len;
    }
    let total = directed.iter().sum();
    let sq = p * p;
    let x_expected = (p * p + 3 * p - 2) / 2;
    let expect = |t: StickType| match t.axis {
        Axis::X => x_expected,
        _ => sq,
    };
    let passed = StickType::ALL.iter().all(|&t| directed[t.code() as usize] == expect(t))
        && total == TorusParams::new(p)?.edge_length();
    Ok(ClosureSums { directed, total, passed })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSumReport {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
    pub z: Vec<i64>,
    pub y_distinct: bool,
    /// z sums are exactly `0..2p` in some order.
    pub z_is_range: bool,
    /// Values occurring more than once in the x sums, with multiplicity.
    pub x_repeats: BTreeMap<i64, usize>,
    /// Number of times 2 occurs among the x sums.
    pub x_twos: usize,
    pub passed: bool,
}

fn multiplicities(v: &[i64]) -> BTreeMap<i64, usize> {
    let mut m = BTreeMap::new();
    for &x in v {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

pub fn verify_partial_sums(p: u64) -> Result<PartialSumReport, TorusError> {
    let tab = generate_torus_tabulation(p)?;
    let sums = |a| tab.partial_sums(a, LatticePoint::ORIGIN);
    let (x, y, z) = (sums(Axis::X)?, sums(Axis::Y)?, sums(Axis::Z)?);
    let y_distinct = multiplicities(&y).values().all(|&c| c == 1);
    let mut zs = z.clone();
    zs.sort_unstable();
    let z_is_range = zs == (0..2 * p as i64).collect::<Vec<_>>();
    let x_mult = multiplicities(&x);
    let x_twos = x_mult.get(&2).copied().unwrap_or(0);
    let x_repeats: BTreeMap<i64, usize> = x_mult.into_iter().filter(|&(_, c)| c > 1).collect();
    let only_two_repeats = x_repeats.keys().all(|&k| k == 2);
    let passed = y_distinct && z_is_range && only_two_repeats && x_twos as u64 == p - 1;
    Ok(PartialSumReport { x, y, z, y_distinct, z_is_range, x_repeats, x_twos, passed })
}

/// One arc of the plane x = 2, described stick by stick.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelArc {
    pub initial: LatticePoint,
    pub sticks: Vec<(StickType, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XLevelTwoReport {
    pub arcs: Vec<LevelArc>,
    pub isolated_points: usize,
    /// `(2, 1 − n, 2p − n)` for n = 1..p−1; what the built knot exhibits.
    pub expected_initials: Vec<LatticePoint>,
    /// Whether the initials also satisfy the shifted form `(2, 1 − n, 2p − 2 − n)`.
    pub matches_shifted_form: bool,
    pub passed: bool,
}

fn arc_sticks(knot: &LatticeKnot, arc: &[usize]) -> Vec<(StickType, u64)> {
    let mut out: Vec<(StickType, u64)> = Vec::new();
    for &i in &arc[..arc.len() - 1] {
        let t = knot.steps()[i];
        match out.last_mut() {
            Some((prev, l)) if *prev == t => *l += 1,
            _ => out.push((t, 1)),
        }
    }
    out
}

/// Checks that the plane x = 2 meets the knot in p − 1 L-shaped arcs,
/// each a y⁺ stick of length p − 1 followed by a z⁻ stick, with the n-th
/// arc starting at (2, 1 − n, 2p − n).
pub fn verify_x_level_2(p: u64) -> Result<XLevelTwoReport, TorusError> {
    let knot = torus_knot(p)?;
    let level = knot.level(Axis::X, 2);
    let mut arcs: Vec<&Vec<usize>> = level.arcs.iter().collect();
    arcs.sort_by_key(|a| a[0]);
    let arcs: Vec<LevelArc> =
        arcs.into_iter().map(|a| LevelArc { initial: knot.vertex(a[0]), sticks: arc_sticks(&knot, a) }).collect();
    let pi = p as i64;
    let expected_initials: Vec<_> = (1..pi).map(|n| LatticePoint::new(2, 1 - n, 2 * pi - n)).collect();
    let shifted: Vec<_> = (1..pi).map(|n| LatticePoint::new(2, 1 - n, 2 * pi - 2 - n)).collect();
    let initials: Vec<_> = arcs.iter().map(|a| a.initial).collect();
    let shape_ok = arcs.iter().all(|a| {
        matches!(a.sticks.as_slice(),
            [(StickType::Y_POS, ly), (StickType::Z_NEG, _)] if *ly == p - 1)
    });
    let passed = arcs.len() as u64 == p - 1 && shape_ok && initials == expected_initials;
    Ok(XLevelTwoReport {
        isolated_points: level.isolated_points.len(),
        matches_shifted_form: initials == shifted,
        arcs,
        expected_initials,
        passed,
    })
}

/// Rank of a set of integer vectors, by fraction-free elimination.
pub fn integer_rank(rows: &[[i64; 3]]) -> usize {
    let mut m: Vec<[i128; 3]> = rows.iter().map(|r| r.map(i128::from)).collect();
    let mut rank = 0;
    for col in 0..3 {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let pr = m[rank];
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f != 0 {
                for c in 0..3 {
                    row[c] = row[c] * pr[col] - pr[c] * f;
                }
                let g = row.iter().fold(0i128, |g, &v| gcd(g, v));
                if g > 1 {
                    *row = row.map(|v| v / g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Affine dimension of a point set: 0 for a point, 1 collinear, 2 coplanar.
pub fn affine_rank(points: &[LatticePoint]) -> usize {
    let Some(&base) = points.first() else {
        return 0;
    };
    let diffs: Vec<[i64; 3]> = points[1..].iter().map(|&q| (q - base).to_array()).collect();
    integer_rank(&diffs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StickPlaneCheck {
    pub kind: StickType,
    /// Affine rank of all endpoints of sticks of this type.
    pub rank_all: usize,
    /// Same, leaving out the last stick of this type.
    pub rank_without_last: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollinearityReport {
    pub z_pos_initials: Vec<LatticePoint>,
    pub z_pos_closed_form: bool,
    pub planes: Vec<StickPlaneCheck>,
    pub last_three_x_pos: Vec<LatticePoint>,
    pub last_three_x_pos_collinear: bool,
    pub last_three_x_pos_closed_form: bool,
    pub passed: bool,
}

/// z⁺ initial vertices on the line (1 − n, 1 − n, n − 1); per-type
/// coplanarity with y⁺ and z⁻ needing their final stick left out; the
/// last three x⁺ initial vertices collinear.
pub fn verify_collinearity(p: u64) -> Result<CollinearityReport, TorusError> {
    let knot = torus_knot(p)?;
    let n = knot.edge_length();
    let of_type = |t: StickType| -> Vec<(LatticePoint, LatticePoint)> {
        knot.sticks().iter().filter(|s| s.kind == t).map(|s| (knot.vertex(s.start), knot.vertex(s.end(n)))).collect()
    };
    let z_pos_initials: Vec<_> = of_type(StickType::Z_POS).into_iter().map(|s| s.0).collect();
    let pi = p as i64;
    let z_pos_closed_form =
        z_pos_initials == (1..=pi).map(|k| LatticePoint::new(1 - k, 1 - k, k - 1)).collect::<Vec<_>>();

    let planes: Vec<StickPlaneCheck> = TYPE_PERIOD
        .iter()
        .map(|&kind| {
            let sticks = of_type(kind);
            let flat = |s: &[(LatticePoint, LatticePoint)]| -> Vec<LatticePoint> {
                s.iter().flat_map(|&(a, b)| [a, b]).collect()
            };
            StickPlaneCheck {
                kind,
                rank_all: affine_rank(&flat(&sticks)),
                rank_without_last: affine_rank(&flat(&sticks[..sticks.len() - 1])),
            }
        })
        .collect();
    let planes_ok = planes.iter().all(|c| {
        let trimmed = c.kind == StickType::Y_POS || c.kind == StickType::Z_NEG;
        if trimmed {
            c.rank_without_last <= 2
        } else {
            c.rank_all <= 2
        }
    });

    let x_pos: Vec<_> = of_type(StickType::X_POS).into_iter().map(|s| s.0).collect();
    let last_three_x_pos = x_pos[x_pos.len().saturating_sub(3)..].to_vec();
    let last_three_x_pos_collinear = affine_rank(&last_three_x_pos) <= 1;
    let last_three_x_pos_closed_form = last_three_x_pos
        == vec![
            LatticePoint::new(3 - pi, 3 - pi, 2 + pi),
            LatticePoint::new(2 - pi, 2 - pi, 1 + pi),
            LatticePoint::new(1 - pi, 1 - pi, pi),
        ];
    let passed = z_pos_closed_form && planes_ok && last_three_x_pos_collinear && last_three_x_pos_closed_form;
    Ok(CollinearityReport {
        z_pos_initials,
        z_pos_closed_form,
        planes,
        last_three_x_pos,
        last_three_x_pos_collinear,
        last_three_x_pos_closed_form,
        passed,
    })
}

/// Every structural check for one member of the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub p: u64,
    pub closed_and_simple: bool,
    pub stick_count: usize,
    pub edge_length: usize,
    pub sticks_per_axis: [usize; 3],
    pub closure: ClosureSums,
    /// Present for p ≥ 3; the level-2 and plane arguments need the general table.
    pub partial_sums: Option<PartialSumReport>,
    pub x_level_2: Option<XLevelTwoReport>,
    pub collinearity: Option<CollinearityReport>,
    /// Levels other than x = 2 holding more than one arc, as `(axis, value, arcs)`.
    pub crowded_levels: Vec<(Axis, i64, usize)>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        let params = TorusParams(self.p);
        self.closed_and_simple
            && self.stick_count as u64 == params.stick_count()
            && self.edge_length as u64 == params.edge_length()
            && self.sticks_per_axis.iter().all(|&c| c as u64 == 2 * self.p)
            && self.closure.passed
            && self.partial_sums.as_ref().is_none_or(|r| r.passed)
            && self.x_level_2.as_ref().is_none_or(|r| r.passed)
            && self.collinearity.as_ref().is_none_or(|r| r.passed)
            && self.crowded_levels.is_empty()
    }
}

pub fn structure_report(p: u64) -> Result<StructureReport, TorusError> {
    let params = TorusParams::new(p)?;
    let knot = torus_knot(p)?;
    let mut sticks_per_axis = [0usize; 3];
    for s in knot.sticks() {
        sticks_per_axis[s.kind.axis.index()] += 1;
    }
    let general = params.p() >= 3;
    let bbox = knot.bounding_box();
    let mut crowded_levels = Vec::new();
    for axis in Axis::ALL {
        for value in bbox.min_corner().coord(axis)..=bbox.max_corner().coord(axis) {
            if general && axis == Axis::X && value == 2 {
                continue;
            }
            let arcs = knot.level(axis, value).arcs.len();
            if arcs > 1 {
                crowded_levels.push((axis, value, arcs));
            }
        }
    }
    Ok(StructureReport {
        p,
        closed_and_simple: true,
        stick_count: knot.stick_count(),
        edge_length: knot.edge_length(),
        sticks_per_axis,
        closure: verify_closure_sums(p)?,
        partial_sums: general.then(|| verify_partial_sums(p)).transpose()?,
        x_level_2: general.then(|| verify_x_level_2(p)).transpose()?,
        collinearity: general.then(|| verify_collinearity(p)).transpose()?,
        crowded_levels,
    })
}
