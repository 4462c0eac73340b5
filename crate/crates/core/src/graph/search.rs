//! Automorphism and isomorphism search over the individualize-refine tree.

use crate::group::{orbit_under, Domain, Perm, PermGroup};

use super::refine::{refine, Partition};
use super::{is_isomorphism, Graph, GraphError};

/// Generators and base data of an automorphism group.
#[derive(Clone, Debug)]
pub struct Automorphisms {
    pub generators: Vec<Perm>,
    /// Vertices individualized along the first path.
    pub base: Vec<u32>,
    /// `|G_(b1..b(i-1)) : G_(b1..bi)|` for each base point.
    pub orbit_lengths: Vec<usize>,
    pub order: u128,
}

struct Node {
    partition: Partition,
    trace: u64,
}

/// The leftmost root-to-leaf path of a search tree.
struct FirstPath {
    nodes: Vec<Node>,
    targets: Vec<usize>,
}

fn root(g: &Graph, colors: Option<&[u32]>) -> Result<Node, GraphError> {
    let n = g.order();
    let colors = match colors {
        Some(c) if c.len() != n => return Err(GraphError::ColoringLength { expected: n, found: c.len() }),
        Some(c) => c.to_vec(),
        None => vec![0; n],
    };
    let (mut partition, t0) = Partition::from_colors(&colors);
    let starts: Vec<usize> = partition.cell_starts().collect();
    let trace = t0 ^ refine(g, &mut partition, starts);
    Ok(Node { partition, trace })
}

fn child(g: &Graph, parent: &Partition, v: usize) -> Node {
    let mut partition = parent.clone();
    let s = partition.individualize(v);
    let trace = refine(g, &mut partition, [s]);
    Node { partition, trace }
}

fn first_path(g: &Graph, root: Node) -> FirstPath {
    let mut nodes = vec![root];
    let mut targets = Vec::new();
    while let Some(t) = nodes.last().unwrap().partition.target_cell() {
        let p = &nodes.last().unwrap().partition;
        let v = p.lab[t] as usize;
        targets.push(t);
        let next = child(g, p, v);
        nodes.push(next);
    }
    FirstPath { nodes, targets }
}

fn leaf_map(from: &Partition, to: &Partition) -> Perm {
    let mut images = vec![0usize; from.lab.len()];
    for (a, b) in from.lab.iter().zip(&to.lab) {
        images[*a as usize] = *b as usize;
    }
    Perm::from_images(&images).expect("leaves are orderings")
}

/// Depth-first search below `node` (at `level` of `path`) for a leaf whose
/// map from the first leaf carries `g1` onto `g2`. Subtrees whose traces
/// differ from the first path are skipped.
fn search_below(g1: &Graph, g2: &Graph, path: &FirstPath, level: usize, node: &Node) -> Option<Perm> {
    if node.partition.is_discrete() {
        let first_leaf = &path.nodes.last().unwrap().partition;
        let map = leaf_map(first_leaf, &node.partition);
        return is_isomorphism(g1, g2, &map).then_some(map);
    }
    let t = path.targets[level];
    if node.partition.target_cell() != Some(t) {
        return None;
    }
    let expected = path.nodes[level + 1].trace;
    for &v in node.partition.cell(t) {
        let next = child(g2, &node.partition, v as usize);
        if next.trace != expected {
            continue;
        }
        if let Some(map) = search_below(g1, g2, path, level + 1, &next) {
            return Some(map);
        }
    }
    None
}

/// Generators of the automorphism group preserving `colors`, found level by
/// level from the bottom of the first path, and the group order as the
/// product of the basic orbit lengths.
pub fn automorphism_generators(g: &Graph, colors: Option<&[u32]>) -> Result<Automorphisms, GraphError> {
    let path = first_path(g, root(g, colors)?);
    let depth = path.targets.len();
    let mut generators: Vec<Perm> = Vec::new();
    let mut orbit_lengths = vec![0usize; depth];
    let mut base = Vec::with_capacity(depth);
    for level in 0..depth {
        base.push(path.nodes[level].partition.lab[path.targets[level]]);
    }
    for level in (0..depth).rev() {
        let node = &path.nodes[level];
        let b = base[level] as usize;
        let mut orbit = orbit_under(&generators, b, |&x, h| h.apply(x));
        let cell: Vec<u32> = node.partition.cell(path.targets[level]).to_vec();
        for &w in &cell {
            let w = w as usize;
            if orbit.contains(&w) {
                continue;
            }
            let next = child(g, &node.partition, w);
            if next.trace != path.nodes[level + 1].trace {
                continue;
            }
            if let Some(h) = search_below(g, g, &path, level + 1, &next) {
                generators.push(h);
                orbit = orbit_under(&generators, b, |&x, h| h.apply(x));
            }
        }
        orbit_lengths[level] = orbit.len();
    }
    let order = orbit_lengths.iter().map(|&k| k as u128).product();
    Ok(Automorphisms { generators, base, orbit_lengths, order })
}

/// Generators plus the fully enumerated group, cross-checked against the
/// orbit-length product.
pub fn automorphism_group(
    g: &Graph,
    colors: Option<&[u32]>,
    budget: usize,
) -> Result<(Automorphisms, PermGroup), GraphError> {
    let aut = automorphism_generators(g, colors)?;
    let n = g.order();
    let gens = if aut.generators.is_empty() { vec![Perm::identity(n)] } else { aut.generators.clone() };
    let group = PermGroup::closure(Domain::numbered(n), gens, budget)?;
    if group.order() as u128 != aut.order {
        return Err(GraphError::OrderMismatch { product: aut.order, enumerated: group.order() });
    }
    Ok((aut, group))
}

/// A vertex bijection carrying `g1` onto `g2` and `colors1` onto `colors2`.
pub fn graph_isomorphism(
    g1: &Graph,
    g2: &Graph,
    colors1: Option<&[u32]>,
    colors2: Option<&[u32]>,
) -> Result<Option<Perm>, GraphError> {
    if g1.order() != g2.order() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let path = first_path(g1, root(g1, colors1)?);
    let r2 = root(g2, colors2)?;
    if r2.trace != path.nodes[0].trace {
        return Ok(None);
    }
    Ok(search_below(g1, g2, &path, 0, &r2))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::group::DEFAULT_ELEMENT_BUDGET;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn order(g: &Graph) -> u128 {
        let (aut, group) = automorphism_group(g, None, DEFAULT_ELEMENT_BUDGET).unwrap();
        assert!(aut.generators.iter().all(|h| g.is_automorphism(h)));
        assert_eq!(group.order() as u128, aut.order);
        aut.order
    }

    #[test]
    fn small_orders() {
        assert_eq!(order(&complete(4)), 24);
        assert_eq!(order(&cycle(5)), 10);
        assert_eq!(order(&cycle(8)), 16);
        assert_eq!(order(&petersen()), 120);
        assert_eq!(order(&Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()), 2);
        assert_eq!(order(&Graph::empty(1)), 1);
    }

    #[test]
    fn disjoint_union_of_cycles() {
        let g = Graph::from_edges(
            9,
            [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (6, 7), (7, 8), (8, 6)],
        )
        .unwrap();
        assert_eq!(order(&g), 6 * 6 * 6 * 6);
    }

    #[test]
    fn colors_restrict_the_group() {
        let g = cycle(6);
        let colors = [1, 0, 0, 0, 0, 0];
        assert_eq!(automorphism_generators(&g, Some(&colors)).unwrap().order, 2);
        assert!(automorphism_generators(&g, Some(&[0, 1])).is_err());
    }

    fn shuffled(n: usize, seed: u64) -> Perm {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(&mut rng);
        Perm::from_images(&images).unwrap()
    }

    #[test]
    fn isomorphism_of_relabelled_petersen() {
        let g = petersen();
        for seed in 0..5 {
            let p = shuffled(10, seed);
            let h = g.relabel(&p);
            let map = graph_isomorphism(&g, &h, None, None).unwrap().unwrap();
            assert!(is_isomorphism(&g, &h, &map));
        }
        // Same degree sequence, not isomorphic: C6 vs two triangles.
        let triangles = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(graph_isomorphism(&cycle(6), &triangles, None, None).unwrap().is_none());
        assert!(graph_isomorphism(&cycle(5), &cycle(6), None, None).unwrap().is_none());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(5))]
        #[test]
        fn order_is_relabelling_invariant(seed in 0u64..1000) {
            let g = petersen();
            let h = g.relabel(&shuffled(10, seed));
            proptest::prop_assert_eq!(automorphism_generators(&h, None).unwrap().order, 120);
        }
    }
}
