use std::collections::VecDeque;

use super::{order_of, Geometry, GeometryError};

/// Point-line incidence graph: points first, then lines.
fn incidence_adjacency(g: &Geometry) -> Vec<Vec<u32>> {
    let p = g.num_points();
    let mut adj: Vec<Vec<u32>> = (0..p).map(|x| g.lines_through(x).iter().map(|&l| p as u32 + l).collect()).collect();
    adj.extend(g.lines().iter().cloned());
    adj
}

/// Checks that the incidence graph has diameter `n` and girth `2n`.
pub fn verify_generalized_polygon(g: &Geometry, n: usize) -> Result<(), GeometryError> {
    order_of(g)?;
    let adj = incidence_adjacency(g);
    let v = adj.len();
    let mut girth = usize::MAX;
    let mut girth_vertex = 0;
    let mut diameter = 0;
    let mut dist = vec![usize::MAX; v];
    let mut parent = vec![usize::MAX; v];
    let mut queue = VecDeque::new();
    for s in 0..v {
        dist.fill(usize::MAX);
        dist[s] = 0;
        parent[s] = usize::MAX;
        queue.clear();
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                let y = y as usize;
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    let len = dist[x] + dist[y] + 1;
                    if len < girth {
                        girth = len;
                        girth_vertex = s;
                    }
                }
            }
        }
        if let Some(b) = dist.iter().position(|&d| d == usize::MAX) {
            return Err(GeometryError::DiameterExceeded { a: s, b, distance: usize::MAX });
        }
        let (b, &d) = dist.iter().enumerate().max_by_key(|(_, &d)| d).unwrap();
        if d > n {
            return Err(GeometryError::DiameterExceeded { a: s, b, distance: d });
        }
        diameter = diameter.max(d);
    }
    if girth < 2 * n {
        return Err(GeometryError::ShortCycle { vertex: girth_vertex, length: girth });
    }
    if girth != 2 * n || diameter != n {
        return Err(GeometryError::WrongGonality { girth, diameter });
    }
    Ok(())
}

/// The flag geometry of a projective plane: points are the flags `(p, L)`
/// ordered by `(p, L)`; lines are, first, the flag pencils of each plane
/// point and, then, those of each plane line.
pub fn flag_geometry(plane: &Geometry) -> (Geometry, Vec<(u32, u32)>) {
    let mut flags = Vec::new();
    for p in 0..plane.num_points() {
        for &l in plane.lines_through(p) {
            flags.push((p as u32, l));
        }
    }
    flags.sort_unstable();
    let mut by_point = vec![Vec::new(); plane.num_points()];
    let mut by_line = vec![Vec::new(); plane.num_lines()];
    for (i, &(p, l)) in flags.iter().enumerate() {
        by_point[p as usize].push(i as u32);
        by_line[l as usize].push(i as u32);
    }
    by_point.extend(by_line);
    (Geometry::new(flags.len(), by_point).expect("flag geometry is a partial linear space"), flags)
}
