//! Independent brute-force recomputation of knot distances and vertex
//! distortion.
//!
//! Nothing here uses arc positions: the knot is treated as an undirected
//! graph on its lattice points, distances come from breadth-first search,
//! and ratios are compared as big rationals. Used to cross-check the fast
//! scan in [`crate::distortion`].

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::knot::LatticeKnot;
use crate::lattice::LatticePoint;

/// Undirected unit-edge graph of a knot.
#[derive(Debug, Clone)]
pub struct KnotGraph {
    points: Vec<LatticePoint>,
    index: HashMap<LatticePoint, usize>,
    adjacency: Vec<Vec<usize>>,
}

impl KnotGraph {
    pub fn new(knot: &LatticeKnot) -> Self {
        let mut index = HashMap::new();
        let mut points = Vec::new();
        let mut adjacency: Vec<Vec<usize>> = Vec::new();
        let mut id = |p: LatticePoint, points: &mut Vec<LatticePoint>, adj: &mut Vec<Vec<usize>>| {
            *index.entry(p).or_insert_with(|| {
                points.push(p);
                adj.push(Vec::new());
                points.len() - 1
            })
        };
        let mut at = knot.vertex(0);
        for &step in knot.steps() {
            let next = at + step;
            let a = id(at, &mut points, &mut adjacency);
            let b = id(next, &mut points, &mut adjacency);
            adjacency[a].push(b);
            adjacency[b].push(a);
            at = next;
        }
        KnotGraph { points, index, adjacency }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Hop distances from `source` to every point, indexed like `points()`.
    pub fn bfs(&self, source: usize) -> Vec<u64> {
        let mut dist = vec![u64::MAX; self.points.len()];
        let mut queue = VecDeque::from([source]);
        dist[source] = 0;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == u64::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn index_of(&self, p: LatticePoint) -> Option<usize> {
        self.index.get(&p).copied()
    }
}

/// Shortest distance along the knot between two of its points.
pub fn bfs_knot_distance(graph: &KnotGraph, a: LatticePoint, b: LatticePoint) -> Option<u64> {
    let (s, t) = (graph.index_of(a)?, graph.index_of(b)?);
    Some(graph.bfs(s)[t])
}

/// Vertex distortion with the realizing point pairs (each pair sorted, list sorted).
pub fn bfs_vertex_distortion(knot: &LatticeKnot) -> (BigRational, Vec<(LatticePoint, LatticePoint)>) {
    let graph = KnotGraph::new(knot);
    let mut best = BigRational::from_integer(BigInt::from(0));
    let mut pairs = Vec::new();
    for s in 0..graph.len() {
        let dist = graph.bfs(s);
        for (t, &hops) in dist.iter().enumerate().skip(s + 1) {
            let (a, b) = (graph.points[s], graph.points[t]);
            let l1 = (a.x - b.x).abs() + (a.y - b.y).abs() + (a.z - b.z).abs();
            let r = BigRational::new(BigInt::from(hops), BigInt::from(l1));
            let pair = if a < b { (a, b) } else { (b, a) };
            if r > best {
                best = r;
                pairs.clear();
                pairs.push(pair);
            } else if r == best {
                pairs.push(pair);
            }
        }
    }
    pairs.sort();
    (best, pairs)
}
