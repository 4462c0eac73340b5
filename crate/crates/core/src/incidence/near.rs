use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{Geometry, GeometryError, UNREACHABLE};

/// `(s, t)`: lines of size `s+1`, points on `t+1` lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Order {
    pub s: usize,
    pub t: usize,
}

pub fn order_of(g: &Geometry) -> Result<Order, GeometryError> {
    let expected = g.lines().first().map_or(0, Vec::len);
    if let Some((line, l)) = g.lines().iter().enumerate().find(|(_, l)| l.len() != expected) {
        return Err(GeometryError::NonUniformLineSize { line, size: l.len(), expected });
    }
    let degree = if g.num_points() == 0 { 0 } else { g.lines_through(0).len() };
    if let Some(point) = (0..g.num_points()).find(|&p| g.lines_through(p).len() != degree) {
        return Err(GeometryError::NonUniformPointDegree {
            point,
            degree: g.lines_through(point).len(),
            expected: degree,
        });
    }
    if expected == 0 || degree == 0 {
        return Err(GeometryError::NonUniformPointDegree { point: 0, degree: 0, expected: 1 });
    }
    Ok(Order { s: expected - 1, t: degree - 1 })
}

/// Checks connectivity and that every line has a unique point nearest to
/// every point. Returns the diameter.
pub fn verify_near_polygon(g: &Geometry) -> Result<usize, GeometryError> {
    if let Some(point) = (0..g.num_points()).find(|&p| g.distances_from(0)[p] == UNREACHABLE) {
        return Err(GeometryError::Disconnected { point });
    }
    for x in 0..g.num_points() {
        let row = g.distances_from(x);
        for (li, line) in g.lines().iter().enumerate() {
            let m = line.iter().map(|&p| row[p as usize]).min().unwrap();
            let count = line.iter().filter(|&&p| row[p as usize] == m).count();
            if count != 1 {
                return Err(GeometryError::NearestPointNotUnique { point: x, line: li, count });
            }
        }
    }
    Ok(g.diameter())
}

/// Every triangle of the collinearity graph lies in a line: the common
/// neighbours of two collinear points are exactly the other points of their line.
pub fn triangles_in_lines(g: &Geometry) -> Result<(), (usize, usize, usize)> {
    for a in 0..g.num_points() {
        for b in g.neighbours(a).ones().filter(|&b| b > a) {
            let line = g.line(g.line_through(a, b).unwrap());
            let mut common = g.neighbours(a).clone();
            common.intersect_with(g.neighbours(b));
            if let Some(c) = common.ones().find(|&c| line.binary_search(&(c as u32)).is_err()) {
                return Err((a, b, c));
            }
        }
    }
    Ok(())
}

/// Least superset of `seed` closed under adding full lines through two of
/// its points and adding every point on a geodesic between two of its points.
pub fn convex_closure(g: &Geometry, seed: &[u32]) -> Vec<u32> {
    let n = g.num_points();
    let mut inside = FixedBitSet::with_capacity(n);
    let mut members: Vec<usize> = Vec::new();
    for &p in seed {
        if !inside.put(p as usize) {
            members.push(p as usize);
        }
    }
    // Pairs (i, j) with j < done are already processed.
    let mut done = 0;
    while done < members.len() {
        let b = members[done];
        for i in 0..done {
            let a = members[i];
            if let Some(l) = g.line_through(a, b) {
                for &p in g.line(l) {
                    if !inside.put(p as usize) {
                        members.push(p as usize);
                    }
                }
            }
            let (ra, rb) = (g.distances_from(a), g.distances_from(b));
            let d = ra[b];
            for z in 0..n {
                if !inside.contains(z) && ra[z] as u16 + rb[z] as u16 == d as u16 {
                    inside.insert(z);
                    members.push(z);
                }
            }
        }
        done += 1;
    }
    let mut out: Vec<u32> = members.into_iter().map(|p| p as u32).collect();
    out.sort_unstable();
    out
}

/// A quad: a convex subspace inducing a generalized quadrangle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Quad {
    /// Sorted point indices.
    pub points: Vec<u32>,
    /// Indices of the geometry lines inside the quad, ascending.
    pub lines: Vec<u32>,
    pub order: Order,
}

impl Quad {
    pub fn contains(&self, p: usize) -> bool {
        self.points.binary_search(&(p as u32)).is_ok()
    }
}

/// Checks the generalized quadrangle axioms directly on a sub-geometry:
/// uniform order and, for every non-incident point-line pair, exactly one
/// point of the line collinear with the point.
fn quadrangle_order(q: &Geometry) -> Result<Order, String> {
    let order = order_of(q).map_err(|e| e.to_string())?;
    if order.t == 0 {
        return Err("degenerate: one line per point".into());
    }
    for x in 0..q.num_points() {
        for (li, line) in q.lines().iter().enumerate() {
            if line.binary_search(&(x as u32)).is_ok() {
                continue;
            }
            let k = line.iter().filter(|&&p| q.collinear(x, p as usize)).count();
            if k != 1 {
                return Err(format!("point {x} is collinear with {k} points of line {li}"));
            }
        }
    }
    Ok(order)
}

/// All quads: closures of point pairs at distance 2 with at least two common
/// neighbours, each verified as a generalized quadrangle. Sorted by point set.
pub fn find_quads(g: &Geometry) -> Result<Vec<Quad>, GeometryError> {
    if let Some((line, l)) = g.lines().iter().enumerate().find(|(_, l)| l.len() < 3) {
        return Err(GeometryError::ThinLine { line, size: l.len() });
    }
    let n = g.num_points();
    let mut found: BTreeSet<Quad> = BTreeSet::new();
    let mut covered: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut closures: Vec<Vec<u32>> = Vec::new();
    for a in 0..n {
        let row = g.distances_from(a);
        for (b, &d) in row.iter().enumerate().skip(a + 1) {
            if d != 2 {
                continue;
            }
            if covered[a].iter().any(|q| closures[*q].binary_search(&(b as u32)).is_ok()) {
                continue;
            }
            let mut common = g.neighbours(a).clone();
            common.intersect_with(g.neighbours(b));
            if common.count_ones(..) < 2 {
                continue;
            }
            let points = convex_closure(g, &[a as u32, b as u32]);
            let (sub, kept) = g.induced(&points);
            let order = quadrangle_order(&sub).map_err(|reason| GeometryError::NotAQuadrangle { a, b, reason })?;
            let qi = closures.len();
            for &p in &points {
                covered[p as usize].push(qi);
            }
            closures.push(points.clone());
            found.insert(Quad { points, lines: kept.into_iter().map(|l| l as u32).collect(), order });
        }
    }
    Ok(found.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PointQuadRelation {
    /// A unique nearest point through which every point of the quad is reached.
    Classical { gate: u32 },
    /// The nearest points form an ovoid of the quad.
    Ovoidal { nearest: Vec<u32> },
}

pub fn classify_point_quad(g: &Geometry, x: usize, q: &Quad) -> Result<PointQuadRelation, GeometryError> {
    let row = g.distances_from(x);
    let m = q.points.iter().map(|&p| row[p as usize]).min().unwrap_or(UNREACHABLE);
    let nearest: Vec<u32> = q.points.iter().copied().filter(|&p| row[p as usize] == m).collect();
    let fail = || GeometryError::UnclassifiablePointQuad { point: x, quad_point: q.points[0] as usize };
    if let [gate] = nearest[..] {
        let rg = g.distances_from(gate as usize);
        if q.points.iter().all(|&y| row[y as usize] == m + rg[y as usize]) {
            return Ok(PointQuadRelation::Classical { gate });
        }
        return Err(fail());
    }
    let meets_once = q
        .lines
        .iter()
        .all(|&l| g.line(l as usize).iter().filter(|p| nearest.binary_search(p).is_ok()).count() == 1);
    if meets_once {
        Ok(PointQuadRelation::Ovoidal { nearest })
    } else {
        Err(fail())
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{grid, w2};
    use super::*;

    #[test]
    fn single_line_is_near_2_gon() {
        let g = Geometry::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(verify_near_polygon(&g), Ok(1));
        assert_eq!(order_of(&g), Ok(Order { s: 2, t: 0 }));
    }

    #[test]
    fn grid_is_near_quadrangle() {
        let g = grid(3);
        assert_eq!(verify_near_polygon(&g), Ok(2));
        let quads = find_quads(&g).unwrap();
        assert_eq!(quads.len(), 1);
        assert_eq!(quads[0].points.len(), 9);
        assert_eq!(quads[0].order, Order { s: 2, t: 1 });
        assert!(triangles_in_lines(&g).is_ok());
    }

    #[test]
    fn w2_is_its_own_quad() {
        let g = w2();
        assert_eq!(order_of(&g), Ok(Order { s: 2, t: 2 }));
        let quads = find_quads(&g).unwrap();
        assert_eq!(quads.len(), 1);
        assert_eq!(quads[0].order, Order { s: 2, t: 2 });
        for x in 0..15 {
            assert_eq!(classify_point_quad(&g, x, &quads[0]), Ok(PointQuadRelation::Classical { gate: x as u32 }));
        }
    }

    #[test]
    fn closure_of_a_line_is_the_line() {
        let g = w2();
        assert_eq!(convex_closure(&g, &g.line(3)[..2]), g.line(3).to_vec());
    }

    #[test]
    fn triangle_outside_a_line_is_found() {
        let g = Geometry::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(triangles_in_lines(&g).is_err());
        assert!(verify_near_polygon(&g).is_err());
    }

    #[test]
    fn disconnected_is_reported() {
        let g = Geometry::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(verify_near_polygon(&g), Err(GeometryError::Disconnected { point: 2 }));
    }

    proptest::proptest! {
        #[test]
        fn closure_is_idempotent_and_monotone(a in 0u32..15, b in 0u32..15, c in 0u32..15) {
            let g = w2();
            let small = convex_closure(&g, &[a, b]);
            proptest::prop_assert_eq!(convex_closure(&g, &small), small.clone());
            let big = convex_closure(&g, &[a, b, c]);
            proptest::prop_assert!(small.iter().all(|p| big.contains(p)));
        }
    }
}
