use std::collections::BTreeMap;

use super::{find_quads, Geometry};
use crate::graph::{graph_isomorphism, Graph};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Signature {
    Point { degree: usize, distances: Vec<usize>, quads: usize },
    Line { size: usize },
}

fn signatures(g: &Geometry, with_quads: bool) -> Vec<Signature> {
    let mut quads_at = vec![0usize; g.num_points()];
    if with_quads {
        for q in find_quads(g).unwrap_or_default() {
            for p in q.points {
                quads_at[p as usize] += 1;
            }
        }
    }
    let points = (0..g.num_points()).map(|p| Signature::Point {
        degree: g.lines_through(p).len(),
        distances: g.distance_distribution(p),
        quads: quads_at[p],
    });
    let lines = g.lines().iter().map(|l| Signature::Line { size: l.len() });
    points.chain(lines).collect()
}

fn incidence_graph(g: &Geometry) -> Graph {
    let p = g.num_points();
    let edges = g.lines().iter().enumerate().flat_map(|(li, l)| l.iter().map(move |&x| (x as usize, p + li)));
    Graph::from_edges(p + g.num_lines(), edges).expect("valid incidence")
}

/// A point bijection carrying the lines of `g1` onto those of `g2`, found
/// on the point-line incidence graphs with points and lines coloured by
/// (degree, distance distribution, quads through the point) and line size.
pub fn geometry_isomorphism(g1: &Geometry, g2: &Geometry) -> Option<Vec<u32>> {
    if g1.num_points() != g2.num_points() || g1.num_lines() != g2.num_lines() {
        return None;
    }
    let with_quads = g1.lines().iter().chain(g2.lines()).all(|l| l.len() >= 3);
    let (s1, s2) = (signatures(g1, with_quads), signatures(g2, with_quads));
    let mut sorted1 = s1.clone();
    let mut sorted2 = s2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return None;
    }
    let mut ids: BTreeMap<&Signature, u32> = BTreeMap::new();
    for s in &sorted1 {
        let next = ids.len() as u32;
        ids.entry(s).or_insert(next);
    }
    let c1: Vec<u32> = s1.iter().map(|s| ids[s]).collect();
    let c2: Vec<u32> = s2.iter().map(|s| ids[s]).collect();
    let map = graph_isomorphism(&incidence_graph(g1), &incidence_graph(g2), Some(&c1), Some(&c2)).ok()??;
    let points: Vec<u32> = (0..g1.num_points()).map(|p| map.apply(p) as u32).collect();
    // Colours keep points on the point side; check the line condition directly.
    let carried = g1.lines().iter().all(|l| {
        let image: Vec<u32> = l.iter().map(|&x| points[x as usize]).collect();
        g2.find_line(&image).is_some()
    });
    carried.then_some(points)
}
