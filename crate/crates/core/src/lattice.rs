//! Integer geometry of the cubic lattice.
//!
//! Everything here is exact: points are integer triples, distances are
//! integers and walk counts are arbitrary-precision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("bounding box of an empty point set")]
    EmptyPointSet,
    #[error("point {0} is not a member of the set")]
    NotInSet(LatticePoint),
    #[error("path is empty")]
    EmptyPath,
    #[error("points {index} and {next} of the path are not a unit step apart", next = index + 1)]
    NotUnitStep { index: usize },
    #[error("unknown stick type `{0}`")]
    UnknownStickType(String),
}

/// A point of Z³.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0, z: 0 };

    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        LatticePoint { x, y, z }
    }

    pub fn coord(&self, axis: Axis) -> i64 {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }

    pub fn coord_mut(&mut self, axis: Axis) -> &mut i64 {
        match axis {
            Axis::X => &mut self.x,
            Axis::Y => &mut self.y,
            Axis::Z => &mut self.z,
        }
    }

    pub fn to_array(self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(c: [i64; 3]) -> Self {
        LatticePoint::new(c[0], c[1], c[2])
    }

    /// Sum of absolute coordinates.
    pub fn l1_norm(&self) -> u64 {
        self.x.unsigned_abs() + self.y.unsigned_abs() + self.z.unsigned_abs()
    }

    /// The stick type of the unit step from `self` to `other`, if they are adjacent.
    pub fn step_to(&self, other: &LatticePoint) -> Option<StickType> {
        StickType::from_offset(*other - *self)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<LatticePoint> for i64 {
    type Output = LatticePoint;
    fn mul(self, p: LatticePoint) -> LatticePoint {
        LatticePoint::new(self * p.x, self * p.y, self * p.z)
    }
}

impl Add<StickType> for LatticePoint {
    type Output = LatticePoint;
    fn add(self, d: StickType) -> LatticePoint {
        self + d.unit()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            _ => Err(LatticeError::UnknownStickType(s.to_string())),
        }
    }
}

/// One of the six oriented axis directions x±, y±, z±.
///
/// Used both for unit steps and for the type of a whole stick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StickType {
    pub axis: Axis,
    pub positive: bool,
}

impl StickType {
    pub const X_POS: StickType = StickType::new(Axis::X, true);
    pub const X_NEG: StickType = StickType::new(Axis::X, false);
    pub const Y_POS: StickType = StickType::new(Axis::Y, true);
    pub const Y_NEG: StickType = StickType::new(Axis::Y, false);
    pub const Z_POS: StickType = StickType::new(Axis::Z, true);
    pub const Z_NEG: StickType = StickType::new(Axis::Z, false);

    /// Ordered by code: x+, x-, y+, y-, z+, z-.
    pub const ALL: [StickType; 6] =
        [StickType::X_POS, StickType::X_NEG, StickType::Y_POS, StickType::Y_NEG, StickType::Z_POS, StickType::Z_NEG];

    pub const fn new(axis: Axis, positive: bool) -> Self {
        StickType { axis, positive }
    }

    pub fn sign(self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub fn reversed(self) -> StickType {
        StickType::new(self.axis, !self.positive)
    }

    pub fn unit(self) -> LatticePoint {
        let mut p = LatticePoint::ORIGIN;
        *p.coord_mut(self.axis) = self.sign();
        p
    }

    /// Small integer code in `0..6`, see [`StickType::ALL`].
    pub fn code(self) -> u8 {
        (self.axis.index() as u8) * 2 + u8::from(!self.positive)
    }

    pub fn from_code(code: u8) -> StickType {
        StickType::ALL[code as usize]
    }

    /// The direction of a nonzero offset along a single axis.
    pub fn axis_of_offset(d: LatticePoint) -> Option<StickType> {
        let nonzero: Vec<Axis> = Axis::ALL.into_iter().filter(|&a| d.coord(a) != 0).collect();
        match nonzero.as_slice() {
            [a] => Some(StickType::new(*a, d.coord(*a) > 0)),
            _ => None,
        }
    }

    /// The direction of a unit offset.
    pub fn from_offset(d: LatticePoint) -> Option<StickType> {
        if d.l1_norm() == 1 {
            StickType::axis_of_offset(d)
        } else {
            None
        }
    }
}

impl fmt::Display for StickType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.axis, if self.positive { '+' } else { '-' })
    }
}

impl FromStr for StickType {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::UnknownStickType(s.to_string());
        let mut chars = s.chars();
        let axis = match chars.next() {
            Some('x') => Axis::X,
            Some('y') => Axis::Y,
            Some('z') => Axis::Z,
            _ => return Err(bad()),
        };
        let positive = match (chars.next(), chars.next()) {
            (Some('+'), None) => true,
            // Accept the unicode superscripts as well as ASCII signs.
            (Some('-' | '−' | '⁻'), None) => false,
            (Some('⁺'), None) => true,
            _ => return Err(bad()),
        };
        Ok(StickType::new(axis, positive))
    }
}

impl Serialize for StickType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for StickType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// ℓ1 (taxicab) distance.
pub fn l1_distance(a: LatticePoint, b: LatticePoint) -> u64 {
    (a - b).l1_norm()
}

/// Number of staircase walks from `a` to `b`: the multinomial
/// d₁(a,b)! / (|Δx|! |Δy|! |Δz|!).
pub fn staircase_count(a: LatticePoint, b: LatticePoint) -> BigUint {
    let d = b - a;
    let parts = [d.x.unsigned_abs(), d.y.unsigned_abs(), d.z.unsigned_abs()];
    // Product of binomials C(n1, n1) C(n1+n2, n2) C(n1+n2+n3, n3).
    let mut total = BigUint::one();
    let mut placed: u64 = 0;
    for k in parts {
        for i in 1..=k {
            total *= BigUint::from(placed + i);
            total /= BigUint::from(i);
        }
        placed += k;
    }
    total
}

/// A lattice path made of unit steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    points: Vec<LatticePoint>,
}

impl LatticePath {
    pub fn new(points: Vec<LatticePoint>) -> Result<Self, LatticeError> {
        if points.is_empty() {
            return Err(LatticeError::EmptyPath);
        }
        if let Some(index) = points.windows(2).position(|w| l1_distance(w[0], w[1]) != 1) {
            return Err(LatticeError::NotUnitStep { index });
        }
        Ok(LatticePath { points })
    }

    /// Builds the path visited by a start point and a step sequence.
    pub fn from_steps(start: LatticePoint, steps: &[StickType]) -> Self {
        let mut points = Vec::with_capacity(steps.len() + 1);
        let mut p = start;
        points.push(p);
        for &s in steps {
            p = p + s;
            points.push(p);
        }
        LatticePath { points }
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn start(&self) -> LatticePoint {
        self.points[0]
    }

    pub fn end(&self) -> LatticePoint {
        *self.points.last().expect("paths are nonempty")
    }

    /// Number of unit edges.
    pub fn length(&self) -> u64 {
        (self.points.len() - 1) as u64
    }
}

/// True iff every coordinate is independently monotone along the path.
pub fn is_staircase(path: &LatticePath) -> bool {
    Axis::ALL.into_iter().all(|axis| {
        let mut seen_up = false;
        let mut seen_down = false;
        for w in path.points().windows(2) {
            match w[1].coord(axis).cmp(&w[0].coord(axis)) {
                std::cmp::Ordering::Greater => seen_up = true,
                std::cmp::Ordering::Less => seen_down = true,
                std::cmp::Ordering::Equal => {}
            }
        }
        !(seen_up && seen_down)
    })
}

/// Axis-aligned box `[min.x, max.x] × [min.y, max.y] × [min.z, max.z]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundingBox {
    min: LatticePoint,
    max: LatticePoint,
}

impl BoundingBox {
    /// Returns `None` unless `min <= max` componentwise.
    pub fn new(min: LatticePoint, max: LatticePoint) -> Option<Self> {
        Axis::ALL.into_iter().all(|a| min.coord(a) <= max.coord(a)).then_some(BoundingBox { min, max })
    }

    pub fn min_corner(&self) -> LatticePoint {
        self.min
    }

    pub fn max_corner(&self) -> LatticePoint {
        self.max
    }

    /// The eight corners; coincident corners of a degenerate box repeat.
    pub fn corners(&self) -> [LatticePoint; 8] {
        let mut out = [LatticePoint::ORIGIN; 8];
        for (bits, slot) in out.iter_mut().enumerate() {
            let pick = |k: usize, lo: i64, hi: i64| if bits >> k & 1 == 0 { lo } else { hi };
            *slot = LatticePoint::new(
                pick(0, self.min.x, self.max.x),
                pick(1, self.min.y, self.max.y),
                pick(2, self.min.z, self.max.z),
            );
        }
        out
    }

    pub fn is_corner(&self, p: LatticePoint) -> bool {
        Axis::ALL.into_iter().all(|a| {
            let c = p.coord(a);
            c == self.min.coord(a) || c == self.max.coord(a)
        })
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        Axis::ALL.into_iter().all(|a| (self.min.coord(a)..=self.max.coord(a)).contains(&p.coord(a)))
    }

    /// True iff `p` lies on the boundary surface of the box.
    pub fn on_boundary(&self, p: LatticePoint) -> bool {
        self.contains(p)
            && Axis::ALL.into_iter().any(|a| p.coord(a) == self.min.coord(a) || p.coord(a) == self.max.coord(a))
    }

    pub fn extent(&self, axis: Axis) -> u64 {
        (self.max.coord(axis) - self.min.coord(axis)) as u64
    }
}

/// Componentwise min/max of a nonempty point set.
pub fn bounding_box<'a, I>(points: I) -> Result<BoundingBox, LatticeError>
where
    I: IntoIterator<Item = &'a LatticePoint>,
{
    let mut iter = points.into_iter();
    let first = *iter.next().ok_or(LatticeError::EmptyPointSet)?;
    let (min, max) = iter.fold((first, first), |(mut lo, mut hi), p| {
        for a in Axis::ALL {
            *lo.coord_mut(a) = lo.coord(a).min(p.coord(a));
            *hi.coord_mut(a) = hi.coord(a).max(p.coord(a));
        }
        (lo, hi)
    });
    Ok(BoundingBox { min, max })
}

/// True iff each coordinate of `v` is an upper or lower bound of that
/// coordinate over `points`.
pub fn is_box_corner(v: LatticePoint, points: &[LatticePoint]) -> Result<bool, LatticeError> {
    if !points.contains(&v) {
        return Err(LatticeError::NotInSet(v));
    }
    Ok(Axis::ALL.into_iter().all(|a| {
        let c = v.coord(a);
        points.iter().all(|p| p.coord(a) >= c) || points.iter().all(|p| p.coord(a) <= c)
    }))
}

/// A symmetry of Z³ fixing the origin: a signed permutation of the axes.
///
/// Coordinate `i` of the image is `signs[i] * p[perm[i]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Isometry {
    perm: [usize; 3],
    signs: [i64; 3],
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry { perm: [0, 1, 2], signs: [1, 1, 1] };

    /// All 48 signed axis permutations, identity first.
    pub fn all() -> Vec<Isometry> {
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut out = Vec::with_capacity(48);
        for perm in PERMS {
            for bits in 0..8 {
                let s = |k: usize| if bits >> k & 1 == 0 { 1 } else { -1 };
                out.push(Isometry { perm, signs: [s(0), s(1), s(2)] });
            }
        }
        out
    }

    pub fn apply(&self, p: LatticePoint) -> LatticePoint {
        let c = p.to_array();
        LatticePoint::new(
            self.signs[0] * c[self.perm[0]],
            self.signs[1] * c[self.perm[1]],
            self.signs[2] * c[self.perm[2]],
        )
    }

    pub fn apply_direction(&self, d: StickType) -> StickType {
        StickType::from_offset(self.apply(d.unit())).expect("isometries preserve unit steps")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::new(x, y, z)
    }

    #[test]
    fn l1_examples() {
        assert_eq!(l1_distance(p(0, 0, 0), p(0, 0, 0)), 0);
        assert_eq!(l1_distance(p(1, 1, 0), p(3, 3, 0)), 4);
        assert_eq!(l1_distance(p(2, -1, 5), p(-1, 0, 5)), 4);
    }

    #[test]
    fn staircase_count_examples() {
        assert_eq!(staircase_count(p(1, 1, 0), p(3, 3, 0)), BigUint::from(6u32));
        assert_eq!(staircase_count(p(4, -2, 7), p(4, -2, 7)), BigUint::from(1u32));
        assert_eq!(staircase_count(p(0, 0, 0), p(1, 1, 1)), BigUint::from(6u32));
    }

    #[test]
    fn staircase_count_is_big() {
        // 60!/(20!)^3 does not fit in 64 bits.
        let c = staircase_count(p(0, 0, 0), p(20, -20, 20));
        assert!(c.bits() > 64);
        let expected: BigUint = "577831214478475823831865900".parse().unwrap();
        assert_eq!(c, expected);
    }

    #[test]
    fn staircase_examples() {
        let walk = LatticePath::new(vec![p(1, 1, 0), p(2, 1, 0), p(2, 2, 0), p(3, 2, 0), p(3, 3, 0)]).unwrap();
        assert!(is_staircase(&walk));
        assert!(is_staircase(&LatticePath::new(vec![p(5, 5, 5)]).unwrap()));
        let back = LatticePath::new(vec![p(0, 0, 0), p(1, 0, 0), p(0, 0, 0)]).unwrap();
        assert!(!is_staircase(&back));
    }

    #[test]
    fn path_rejects_jumps() {
        assert_eq!(LatticePath::new(vec![]), Err(LatticeError::EmptyPath));
        assert_eq!(
            LatticePath::new(vec![p(0, 0, 0), p(1, 0, 0), p(2, 1, 0)]),
            Err(LatticeError::NotUnitStep { index: 1 })
        );
    }

    #[test]
    fn bounding_box_examples() {
        let single = [p(0, 0, 0)];
        let b = bounding_box(&single).unwrap();
        assert_eq!((b.min_corner(), b.max_corner()), (p(0, 0, 0), p(0, 0, 0)));

        let square = [p(0, 0, 0), p(1, 0, 0), p(1, 1, 0), p(0, 1, 0)];
        let b = bounding_box(&square).unwrap();
        assert_eq!((b.min_corner(), b.max_corner()), (p(0, 0, 0), p(1, 1, 0)));

        let empty: [LatticePoint; 0] = [];
        assert_eq!(bounding_box(&empty), Err(LatticeError::EmptyPointSet));
    }

    #[test]
    fn corner_examples() {
        let square = [p(0, 0, 0), p(1, 0, 0), p(1, 1, 0), p(0, 1, 0)];
        for v in square {
            assert!(is_box_corner(v, &square).unwrap());
        }
        let line = [p(0, 0, 0), p(1, 0, 0), p(2, 0, 0)];
        assert!(!is_box_corner(p(1, 0, 0), &line).unwrap());
        assert_eq!(is_box_corner(p(9, 9, 9), &line), Err(LatticeError::NotInSet(p(9, 9, 9))));
    }

    #[test]
    fn corners_enumerate_box() {
        let b = BoundingBox::new(p(0, -1, 2), p(3, 1, 2)).unwrap();
        let corners = b.corners();
        assert!(corners.contains(&p(0, -1, 2)));
        assert!(corners.contains(&p(3, 1, 2)));
        assert!(corners.iter().all(|&c| b.is_corner(c)));
        assert!(BoundingBox::new(p(1, 0, 0), p(0, 0, 0)).is_none());
    }

    #[test]
    fn stick_type_parsing() {
        for t in StickType::ALL {
            assert_eq!(t.to_string().parse::<StickType>().unwrap(), t);
            assert_eq!(StickType::from_code(t.code()), t);
        }
        assert_eq!("z⁻".parse::<StickType>().unwrap(), StickType::Z_NEG);
        assert!("w+".parse::<StickType>().is_err());
        assert!("x".parse::<StickType>().is_err());
    }

    #[test]
    fn isometries_are_distinct_and_preserve_l1() {
        let all = Isometry::all();
        assert_eq!(all.len(), 48);
        let probe = p(1, 2, 3);
        let images: std::collections::HashSet<_> = all.iter().map(|g| g.apply(probe)).collect();
        assert_eq!(images.len(), 48);
        for g in &all {
            assert_eq!(g.apply(probe).l1_norm(), 6);
            for d in StickType::ALL {
                assert_eq!(g.apply_direction(d).unit(), g.apply(d.unit()));
            }
        }
    }
}
