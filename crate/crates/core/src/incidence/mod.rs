//! Finite point-line geometries: near polygons, quads, spreads, quotients,
//! generalized polygons, isomorphism and suborbit diagrams.

mod iso;
mod near;
mod polygon;
mod spread;
mod suborbit;

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

pub use iso::geometry_isomorphism;
pub use near::{
    classify_point_quad, convex_closure, find_quads, order_of, triangles_in_lines, verify_near_polygon,
    Order, PointQuadRelation, Quad,
};
pub use polygon::{flag_geometry, verify_generalized_polygon};
pub use spread::{quotient_geometry, spread_from_quads, Spread};
pub use suborbit::{suborbit_diagram, LineType, Suborbit, SuborbitDiagram};

pub const UNREACHABLE: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum GeometryError {
    #[error("line {line} has fewer than two points")]
    ShortLine { line: usize },
    #[error("line {line} mentions point {point} outside 0..{points}")]
    PointOutOfRange { line: usize, point: usize, points: usize },
    #[error("line {line} repeats a point")]
    RepeatedPoint { line: usize },
    #[error("points {a} and {b} lie on two common lines")]
    TwoCommonLines { a: usize, b: usize },
    #[error("point {point} is not connected to point 0")]
    Disconnected { point: usize },
    #[error("line {line} has {count} points nearest to point {point}")]
    NearestPointNotUnique { point: usize, line: usize, count: usize },
    #[error("line {line} has {size} points, expected {expected}")]
    NonUniformLineSize { line: usize, size: usize, expected: usize },
    #[error("point {point} is on {degree} lines, expected {expected}")]
    NonUniformPointDegree { point: usize, degree: usize, expected: usize },
    #[error("line {line} has only {size} points")]
    ThinLine { line: usize, size: usize },
    #[error("closure of {a} and {b} is not a generalized quadrangle: {reason}")]
    NotAQuadrangle { a: usize, b: usize, reason: String },
    #[error("point {point} with the quad through {quad_point} is neither classical nor ovoidal")]
    UnclassifiablePointQuad { point: usize, quad_point: usize },
    #[error("point {point} lies on {count} chosen lines, expected 1")]
    NotASpread { point: usize, count: usize },
    #[error("no line lies in two quads, so the quads do not single out a spread")]
    AmbiguousSpread,
    #[error("spread lines inside the quad through {quad_point} do not cover point {point} exactly once")]
    QuadNotPartitioned { quad_point: usize, point: usize },
    #[error("incidence graph has a cycle of length {length} through {vertex}")]
    ShortCycle { vertex: usize, length: usize },
    #[error("incidence graph distance between {a} and {b} is {distance}")]
    DiameterExceeded { a: usize, b: usize, distance: usize },
    #[error("incidence graph has girth {girth} and diameter {diameter}")]
    WrongGonality { girth: usize, diameter: usize },
    #[error("permutation {generator} does not preserve the line set")]
    NotAnAutomorphism { generator: usize },
    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// A finite partial linear space with lines stored as sorted point lists.
#[derive(Debug)]
pub struct Geometry {
    num_points: usize,
    lines: Vec<Vec<u32>>,
    point_lines: Vec<Vec<u32>>,
    adjacency: Vec<FixedBitSet>,
    distances: OnceLock<Vec<u8>>,
}

impl Clone for Geometry {
    fn clone(&self) -> Self {
        Geometry {
            num_points: self.num_points,
            lines: self.lines.clone(),
            point_lines: self.point_lines.clone(),
            adjacency: self.adjacency.clone(),
            distances: OnceLock::new(),
        }
    }
}

impl Geometry {
    /// Validates that every line has at least two distinct points in range and
    /// that two points share at most one line. Connectivity is not required.
    pub fn new(num_points: usize, lines: Vec<Vec<u32>>) -> Result<Geometry, GeometryError> {
        let mut point_lines = vec![Vec::new(); num_points];
        let mut adjacency = vec![FixedBitSet::with_capacity(num_points); num_points];
        let mut sorted_lines = Vec::with_capacity(lines.len());
        for (li, mut line) in lines.into_iter().enumerate() {
            line.sort_unstable();
            if line.len() < 2 {
                return Err(GeometryError::ShortLine { line: li });
            }
            if line.windows(2).any(|w| w[0] == w[1]) {
                return Err(GeometryError::RepeatedPoint { line: li });
            }
            if let Some(&p) = line.iter().find(|&&p| p as usize >= num_points) {
                return Err(GeometryError::PointOutOfRange { line: li, point: p as usize, points: num_points });
            }
            for (i, &a) in line.iter().enumerate() {
                point_lines[a as usize].push(li as u32);
                for &b in &line[i + 1..] {
                    if adjacency[a as usize].put(b as usize) {
                        return Err(GeometryError::TwoCommonLines { a: a as usize, b: b as usize });
                    }
                    adjacency[b as usize].insert(a as usize);
                }
            }
            sorted_lines.push(line);
        }
        Ok(Geometry { num_points, lines: sorted_lines, point_lines, adjacency, distances: OnceLock::new() })
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<u32>] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> &[u32] {
        &self.lines[i]
    }

    pub fn lines_through(&self, p: usize) -> &[u32] {
        &self.point_lines[p]
    }

    /// Collinearity neighbours of `p`.
    pub fn neighbours(&self, p: usize) -> &FixedBitSet {
        &self.adjacency[p]
    }

    pub fn collinear(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(b)
    }

    pub fn line_through(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return None;
        }
        self.point_lines[a]
            .iter()
            .find(|&&l| self.lines[l as usize].binary_search(&(b as u32)).is_ok())
            .map(|&l| l as usize)
    }

    /// Index of the line with exactly these points.
    pub fn find_line(&self, points: &[u32]) -> Option<usize> {
        let mut key = points.to_vec();
        key.sort_unstable();
        let first = *key.first()? as usize;
        self.point_lines[first]
            .iter()
            .find(|&&l| self.lines[l as usize] == key)
            .map(|&l| l as usize)
    }

    fn distance_table(&self) -> &[u8] {
        self.distances.get_or_init(|| {
            let n = self.num_points;
            let mut table = vec![UNREACHABLE; n * n];
            let mut queue = VecDeque::new();
            for s in 0..n {
                let row = &mut table[s * n..(s + 1) * n];
                row[s] = 0;
                queue.clear();
                queue.push_back(s);
                while let Some(x) = queue.pop_front() {
                    let d = row[x];
                    for y in self.adjacency[x].ones() {
                        if row[y] == UNREACHABLE {
                            row[y] = d + 1;
                            queue.push_back(y);
                        }
                    }
                }
            }
            table
        })
    }

    /// Collinearity-graph distance, `UNREACHABLE` across components.
    pub fn distance(&self, a: usize, b: usize) -> u8 {
        self.distance_table()[a * self.num_points + b]
    }

    pub fn distances_from(&self, a: usize) -> &[u8] {
        let n = self.num_points;
        &self.distance_table()[a * n..(a + 1) * n]
    }

    pub fn is_connected(&self) -> bool {
        self.num_points == 0 || self.distances_from(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Largest finite distance.
    pub fn diameter(&self) -> usize {
        self.distance_table().iter().filter(|&&d| d != UNREACHABLE).max().copied().unwrap_or(0) as usize
    }

    /// `|Γ_i(a)|` for `i = 0..=diameter`.
    pub fn distance_distribution(&self, a: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &d in self.distances_from(a) {
            if d == UNREACHABLE {
                continue;
            }
            if out.len() <= d as usize {
                out.resize(d as usize + 1, 0);
            }
            out[d as usize] += 1;
        }
        out
    }

    /// Distance from a point to a set of points.
    pub fn distance_to_set(&self, a: usize, set: &[u32]) -> u8 {
        let row = self.distances_from(a);
        set.iter().map(|&p| row[p as usize]).min().unwrap_or(UNREACHABLE)
    }

    /// The geometry induced on a point subset: lines entirely inside it,
    /// with points renumbered by position in `subset` (which must be sorted).
    pub fn induced(&self, subset: &[u32]) -> (Geometry, Vec<usize>) {
        let pos = |p: u32| subset.binary_search(&p).ok();
        let mut lines = Vec::new();
        let mut kept = Vec::new();
        for (li, line) in self.lines.iter().enumerate() {
            if let Some(mapped) = line.iter().map(|&p| pos(p).map(|i| i as u32)).collect::<Option<Vec<_>>>() {
                lines.push(mapped);
                kept.push(li);
            }
        }
        (Geometry::new(subset.len(), lines).expect("sub-geometry of a partial linear space"), kept)
    }

    /// Line-oriented text form: `points N`, then one sorted point list per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("points {}\n", self.num_points);
        for line in &self.lines {
            let mut first = true;
            for p in line {
                if !first {
                    out.push(' ');
                }
                let _ = write!(out, "{p}");
                first = false;
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Geometry, GeometryError> {
        let parse_err = |line: usize, reason: &str| GeometryError::Parse { line, reason: reason.to_owned() };
        let mut rows = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
        let (hl, header) = rows.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let n: usize = header
            .trim()
            .strip_prefix("points ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| parse_err(hl + 1, "expected `points N`"))?;
        let mut lines = Vec::new();
        for (i, row) in rows {
            let pts = row
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| parse_err(i + 1, "bad point index")))
                .collect::<Result<Vec<_>, _>>()?;
            lines.push(pts);
        }
        Geometry::new(n, lines)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Geometry;

    /// `k × k` grid: rows and columns as lines.
    pub fn grid(k: u32) -> Geometry {
        let mut lines = Vec::new();
        for r in 0..k {
            lines.push((0..k).map(|c| r * k + c).collect());
        }
        for c in 0..k {
            lines.push((0..k).map(|r| r * k + c).collect());
        }
        Geometry::new((k * k) as usize, lines).unwrap()
    }

    /// W(2) as the points and totally isotropic lines of the symplectic
    /// form on GF(2)^4, i.e. the duads/synthemes model on 6 letters.
    pub fn w2() -> Geometry {
        let mut duads = Vec::new();
        for a in 0..6u32 {
            for b in a + 1..6 {
                duads.push((a, b));
            }
        }
        let idx = |a: u32, b: u32| duads.iter().position(|&d| d == (a.min(b), a.max(b))).unwrap() as u32;
        let mut lines: Vec<Vec<u32>> = Vec::new();
        for (i, &(a, b)) in duads.iter().enumerate() {
            for &(c, d) in &duads[i + 1..] {
                if [c, d].iter().any(|x| *x == a || *x == b) {
                    continue;
                }
                let rest: Vec<u32> = (0..6).filter(|x| ![a, b, c, d].contains(x)).collect();
                let mut line = vec![idx(a, b), idx(c, d), idx(rest[0], rest[1])];
                line.sort_unstable();
                if !lines.contains(&line) {
                    lines.push(line);
                }
            }
        }
        Geometry::new(15, lines).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(Geometry::new(3, vec![vec![0]]), Err(GeometryError::ShortLine { .. })));
        assert!(matches!(
            Geometry::new(3, vec![vec![0, 1, 2], vec![0, 1]]),
            Err(GeometryError::TwoCommonLines { a: 0, b: 1 })
        ));
        assert!(matches!(Geometry::new(2, vec![vec![0, 5]]), Err(GeometryError::PointOutOfRange { .. })));
        assert!(matches!(Geometry::new(2, vec![vec![1, 1]]), Err(GeometryError::RepeatedPoint { .. })));
    }

    #[test]
    fn grid_distances() {
        let g = grid(3);
        assert_eq!(g.diameter(), 2);
        assert_eq!(g.distance_distribution(0), vec![1, 4, 4]);
        assert_eq!(g.line_through(0, 2), Some(0));
        assert_eq!(g.line_through(0, 4), None);
        assert_eq!(g.find_line(&[5, 3, 4]), Some(1));
    }

    #[test]
    fn w2_shape() {
        let g = w2();
        assert_eq!(g.num_lines(), 15);
        assert!(g.lines().iter().all(|l| l.len() == 3));
        assert!((0..15).all(|p| g.lines_through(p).len() == 3));
    }

    #[test]
    fn text_round_trip() {
        let g = w2();
        let h = Geometry::from_text(&g.to_text()).unwrap();
        assert_eq!(g.lines(), h.lines());
        assert!(matches!(Geometry::from_text("nonsense"), Err(GeometryError::Parse { .. })));
    }
}
