#![allow(dead_code)]

use std::collections::HashSet;

use latknot::lattice::Isometry;
use latknot::torus::torus_knot;
use latknot::{LatticeKnot, LatticePoint, StickType};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn p(x: i64, y: i64, z: i64) -> LatticePoint {
    LatticePoint::new(x, y, z)
}

pub fn square() -> LatticeKnot {
    LatticeKnot::from_vertices(&[p(0, 0, 0), p(1, 0, 0), p(1, 1, 0), p(0, 1, 0)]).unwrap()
}

pub fn cube_hexagon() -> LatticeKnot {
    LatticeKnot::from_vertices(&[p(0, 0, 0), p(1, 0, 0), p(1, 1, 0), p(1, 1, 1), p(0, 1, 1), p(0, 0, 1)]).unwrap()
}

pub fn trefoil() -> LatticeKnot {
    torus_knot(2).unwrap()
}

fn perpendicular(d: StickType) -> Vec<StickType> {
    StickType::ALL.into_iter().filter(|s| s.axis != d.axis).collect()
}

/// Grows a random simple polygon from the unit square by inserting
/// bumps (one edge pushed out sideways, +2 length) and flipping corners,
/// until the edge length reaches `target` (even, ≥ 4).
pub fn random_polygon<R: Rng>(rng: &mut R, target: usize) -> LatticeKnot {
    let mut v = vec![p(0, 0, 0), p(1, 0, 0), p(1, 1, 0), p(0, 1, 0)];
    let mut occupied: HashSet<LatticePoint> = v.iter().copied().collect();
    let mut guard = 0;
    while v.len() < target && guard < 100_000 {
        guard += 1;
        let n = v.len();
        let i = rng.gen_range(0..n);
        let (a, b) = (v[i], v[(i + 1) % n]);
        let d = a.step_to(&b).unwrap();
        if rng.gen_bool(0.6) {
            let u = *perpendicular(d).choose(rng).unwrap();
            let (a2, b2) = (a + u, b + u);
            if !occupied.contains(&a2) && !occupied.contains(&b2) {
                v.splice(i + 1..i + 1, [a2, b2]);
                occupied.extend([a2, b2]);
            }
        } else {
            // Corner flip at b: a → b → c becomes a → b' → c.
            let c = v[(i + 2) % n];
            let e = b.step_to(&c).unwrap();
            if e.axis != d.axis {
                let flipped = a + e;
                if !occupied.contains(&flipped) {
                    occupied.remove(&b);
                    occupied.insert(flipped);
                    v[(i + 1) % n] = flipped;
                }
            }
        }
    }
    LatticeKnot::from_vertices(&v).expect("moves keep the polygon simple")
}

pub fn random_isometry<R: Rng>(rng: &mut R) -> (Isometry, LatticePoint) {
    let g = *Isometry::all().choose(rng).unwrap();
    let shift = p(rng.gen_range(-20..=20), rng.gen_range(-20..=20), rng.gen_range(-20..=20));
    (g, shift)
}
