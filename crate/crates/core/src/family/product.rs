use serde::Serialize;
use thiserror::Error;

use crate::incidence::{
    find_quads, flag_geometry, geometry_isomorphism, verify_generalized_polygon, Geometry, GeometryError, Spread,
};

#[derive(Debug, Error, PartialEq, Serialize)]
pub enum ProductError {
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("layer through point {point} has {size} points, expected {expected}")]
    LayerSize { point: usize, size: usize, expected: usize },
    #[error("layer through point {point} is not a subspace (line {line})")]
    NotASubspace { point: usize, line: usize },
    #[error("layer is not a generalized hexagon: {0}")]
    NotAHexagon(String),
    #[error("no isomorphism with the rebuilt product")]
    NotIsomorphic,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// The Fano plane from the difference set {0,1,3} mod 7.
pub fn fano_plane() -> Geometry {
    let lines = (0..7u32).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect();
    Geometry::new(7, lines).expect("valid plane")
}

/// Flags of the Fano plane: the generalized hexagon of order (2,1).
pub fn fano_flag_geometry() -> Geometry {
    flag_geometry(&fano_plane()).0
}

/// `h × L` with `|L| = ell`: point `(i, p)` has index `i·|h| + p`. Lines are
/// the copies of the lines of `h` on each level, then the vertical fibers,
/// which form the returned spread.
pub fn build_product(h: &Geometry, ell: usize) -> (Geometry, Spread) {
    let n = h.num_points();
    let mut lines: Vec<Vec<u32>> = Vec::with_capacity(ell * h.num_lines() + n);
    for i in 0..ell {
        for l in h.lines() {
            lines.push(l.iter().map(|&p| (i * n) as u32 + p).collect());
        }
    }
    for p in 0..n {
        lines.push((0..ell).map(|i| (i * n + p) as u32).collect());
    }
    let g = Geometry::new(n * ell, lines).expect("product lines are valid");
    let fibers: Vec<u32> = g
        .lines()
        .iter()
        .enumerate()
        .filter(|(_, l)| l.len() == ell && (l[0] as usize) < n && l.windows(2).all(|w| w[1] - w[0] == n as u32))
        .map(|(i, _)| i as u32)
        .collect();
    let spread = Spread::new(&g, fibers).expect("fibers partition the points");
    (g, spread)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductDecomposition {
    /// One layer per point of the first spread line, in that line's order.
    pub layers: Vec<Vec<u32>>,
    /// The geometry induced on the first layer.
    #[serde(skip)]
    pub hexagon: Geometry,
    /// Point map from the rebuilt product onto the input geometry.
    pub isomorphism: Vec<u32>,
}

/// Splits a near octagon with spread whose quads are grids into layers
/// `H_x = {y : x is the point of L* nearest y}` over the first spread line
/// `L*`, checks each layer is a hexagon subspace, and matches the input with
/// the product of the first layer and a line.
pub fn recognize_product(g: &Geometry, spread: &Spread) -> Result<ProductDecomposition, ProductError> {
    let quads = find_quads(g)?;
    if let Some(q) = quads.iter().find(|q| q.order.t != 1) {
        return Err(ProductError::NotApplicable(format!(
            "quad through {} has order ({},{})",
            q.points[0], q.order.s, q.order.t
        )));
    }
    let base = g.line(spread.lines()[0] as usize).to_vec();
    let expected = g.num_points() / base.len();
    let mut layers: Vec<Vec<u32>> = vec![Vec::new(); base.len()];
    for y in 0..g.num_points() {
        let row = g.distances_from(y);
        let m = base.iter().map(|&p| row[p as usize]).min().unwrap();
        let nearest: Vec<usize> = (0..base.len()).filter(|&i| row[base[i] as usize] == m).collect();
        if nearest.len() != 1 {
            return Err(GeometryError::NearestPointNotUnique {
                point: y,
                line: spread.lines()[0] as usize,
                count: nearest.len(),
            }
            .into());
        }
        layers[nearest[0]].push(y as u32);
    }
    for (i, layer) in layers.iter().enumerate() {
        let point = base[i] as usize;
        if layer.len() != expected {
            return Err(ProductError::LayerSize { point, size: layer.len(), expected });
        }
        for (li, line) in g.lines().iter().enumerate() {
            let inside = line.iter().filter(|p| layer.binary_search(p).is_ok()).count();
            if inside >= 2 && inside < line.len() {
                return Err(ProductError::NotASubspace { point, line: li });
            }
        }
    }
    let (hexagon, _) = g.induced(&layers[0]);
    verify_generalized_polygon(&hexagon, 6).map_err(|e| ProductError::NotAHexagon(e.to_string()))?;
    let (rebuilt, _) = build_product(&hexagon, base.len());
    let isomorphism = geometry_isomorphism(&rebuilt, g).ok_or(ProductError::NotIsomorphic)?;
    Ok(ProductDecomposition { layers, hexagon, isomorphism })
}
