mod common;

use common::{cube_hexagon, random_polygon, square, trefoil};
use latknot::distortion::{knot_distance, vertex_distortion, vertex_distortion_parallel};
use latknot::oracle::{bfs_knot_distance, bfs_vertex_distortion, KnotGraph};
use latknot::torus::torus_knot;
use latknot::LatticeKnot;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn assert_agrees(knot: &LatticeKnot) {
    let n = knot.edge_length();
    let graph = KnotGraph::new(knot);
    assert_eq!(graph.len(), n);
    for i in 0..n {
        let dist = graph.bfs(graph.index_of(knot.vertex(i)).unwrap());
        for j in 0..n {
            let bfs = dist[graph.index_of(knot.vertex(j)).unwrap()];
            assert_eq!(knot_distance(knot, i, j).unwrap(), bfs, "pair ({i},{j})");
        }
    }
    let scan = vertex_distortion(knot);
    let (value, pairs) = bfs_vertex_distortion(knot);
    assert_eq!(scan.value, value);
    let mut scan_pairs: Vec<_> = scan
        .realizing_pairs
        .iter()
        .map(|&(i, j)| {
            let (a, b) = (knot.vertex(i), knot.vertex(j));
            (a.min(b), a.max(b))
        })
        .collect();
    scan_pairs.sort();
    assert_eq!(scan_pairs, pairs);
    assert_eq!(vertex_distortion_parallel(knot), scan);
}

#[test]
fn fixed_knots_agree_with_bfs() {
    for k in [square(), cube_hexagon(), trefoil(), torus_knot(3).unwrap()] {
        assert_agrees(&k);
    }
}

#[test]
fn random_polygons_agree_with_bfs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for round in 0..50 {
        let target = 4 + 2 * (round % 29);
        let k = random_polygon(&mut rng, target);
        assert!(k.edge_length() <= 60);
        assert_agrees(&k);
    }
}

#[test]
fn bfs_distance_lookup() {
    let k = trefoil();
    let g = KnotGraph::new(&k);
    assert_eq!(bfs_knot_distance(&g, k.vertex(0), k.vertex(5)), Some(5));
    assert_eq!(bfs_knot_distance(&g, k.vertex(0), k.vertex(20)), Some(4));
    assert_eq!(bfs_knot_distance(&g, k.vertex(0), common::p(9, 9, 9)), None);
}
