use serde::Serialize;

use super::{Geometry, GeometryError, Quad};

/// A set of lines partitioning the point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Spread {
    /// Geometry line indices, ascending.
    lines: Vec<u32>,
    /// For each point, its position in `lines`.
    member_of: Vec<u32>,
}

impl Spread {
    pub fn new(g: &Geometry, mut lines: Vec<u32>) -> Result<Spread, GeometryError> {
        lines.sort_unstable();
        lines.dedup();
        let mut member_of = vec![u32::MAX; g.num_points()];
        let mut count = vec![0usize; g.num_points()];
        for (i, &l) in lines.iter().enumerate() {
            for &p in g.line(l as usize) {
                member_of[p as usize] = i as u32;
                count[p as usize] += 1;
            }
        }
        if let Some(point) = count.iter().position(|&c| c != 1) {
            return Err(GeometryError::NotASpread { point, count: count[point] });
        }
        Ok(Spread { lines, member_of })
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Geometry indices of the spread lines.
    pub fn lines(&self) -> &[u32] {
        &self.lines
    }

    pub fn contains_line(&self, l: usize) -> bool {
        self.lines.binary_search(&(l as u32)).is_ok()
    }

    /// Position in `lines()` of the spread line through `p`.
    pub fn member_of(&self, p: usize) -> usize {
        self.member_of[p] as usize
    }

    /// Geometry index of the spread line through `p`.
    pub fn line_of(&self, p: usize) -> usize {
        self.lines[self.member_of(p)] as usize
    }
}

/// The lines lying in at least two quads, checked to form a spread.
pub fn spread_from_quads(g: &Geometry, quads: &[Quad]) -> Result<Spread, GeometryError> {
    let mut multiplicity = vec![0usize; g.num_lines()];
    for q in quads {
        for &l in &q.lines {
            multiplicity[l as usize] += 1;
        }
    }
    let candidates: Vec<u32> = (0..g.num_lines() as u32).filter(|&l| multiplicity[l as usize] >= 2).collect();
    if candidates.is_empty() {
        return Err(GeometryError::AmbiguousSpread);
    }
    Spread::new(g, candidates)
}

/// Points are the spread lines (by position in `spread.lines()`), lines are
/// the quads, incidence is containment.
pub fn quotient_geometry(g: &Geometry, spread: &Spread, quads: &[Quad]) -> Result<Geometry, GeometryError> {
    let mut lines = Vec::with_capacity(quads.len());
    for q in quads {
        let members: Vec<u32> = q
            .lines
            .iter()
            .filter(|&&l| spread.contains_line(l as usize))
            .map(|&l| spread.member_of(g.line(l as usize)[0] as usize) as u32)
            .collect();
        let covered: usize = members.iter().map(|&m| g.line(spread.lines()[m as usize] as usize).len()).sum();
        if covered != q.points.len() {
            let point = q
                .points
                .iter()
                .copied()
                .find(|&p| !q.lines.contains(&(spread.line_of(p as usize) as u32)))
                .unwrap_or(q.points[0]);
            return Err(GeometryError::QuadNotPartitioned { quad_point: q.points[0] as usize, point: point as usize });
        }
        lines.push(members);
    }
    Geometry::new(spread.len(), lines)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::grid;
    use super::super::find_quads;
    use super::*;

    #[test]
    fn grid_has_no_distinguished_spread() {
        let g = grid(3);
        let quads = find_quads(&g).unwrap();
        assert_eq!(spread_from_quads(&g, &quads), Err(GeometryError::AmbiguousSpread));
        // Either parallel class is a spread.
        assert!(Spread::new(&g, vec![0, 1, 2]).is_ok());
        assert!(Spread::new(&g, vec![3, 4, 5]).is_ok());
        assert!(matches!(Spread::new(&g, vec![0, 3]), Err(GeometryError::NotASpread { .. })));
    }

    #[test]
    fn quotient_of_grid_by_rows() {
        let g = grid(3);
        let quads = find_quads(&g).unwrap();
        let s = Spread::new(&g, vec![0, 1, 2]).unwrap();
        let q = quotient_geometry(&g, &s, &quads).unwrap();
        assert_eq!(q.num_points(), 3);
        assert_eq!(q.lines(), &[vec![0, 1, 2]]);
    }
}
