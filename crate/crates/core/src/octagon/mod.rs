//! The near octagon on the central involutions of a group: points are the
//! central involutions, lines are the triples `{x, y, xy}` from selected
//! conjugacy classes of such triples.

mod aut;
mod quads;
mod suborbits;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::group::{central_involutions, ConjugationAction, GroupError, Perm, PermGroup};
use crate::incidence::{order_of, verify_near_polygon, Geometry, GeometryError, Order, Spread};
use crate::pg24::{Plane, ProjLine, ProjPoint, NUM_POINTS};
use crate::report::Report;

pub use aut::{aut_report, collinearity_graph, flag_permutation};
pub use quads::{plane_geometry, quads_report};
pub use suborbits::{
    embedded_fixture, name_suborbits, suborbit_report, FixtureEdge, FixtureOrbit, Mismatch, SuborbitComparison,
    SuborbitFixture,
};

#[derive(Debug, Error)]
pub enum OctagonError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("triple orbit size {size} not among the observed sizes {observed:?}")]
    UnobservedSize { size: usize, observed: Vec<usize> },
    #[error("fewer than two triple orbit sizes observed: {0:?}")]
    TooFewSizes(Vec<usize>),
    #[error("involution {0} is not an elation")]
    NotAnElation(usize),
    #[error("malformed fixture: {0}")]
    Fixture(String),
}

/// A commuting triple `{x, y, xy}` of central involutions, by index, with
/// the size of its conjugacy class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Triple {
    pub members: [u32; 3],
    pub orbit_size: usize,
}

/// Central involutions of a group together with all their commuting triples
/// and the geometry on the admissible ones.
#[derive(Clone, Debug)]
pub struct InvolutionGeometry {
    pub action: ConjugationAction,
    /// All commuting triples, sorted by members.
    pub triples: Vec<Triple>,
    /// Distinct triple class sizes, ascending.
    pub observed_sizes: Vec<usize>,
    pub admissible: Vec<usize>,
    pub geometry: Geometry,
}

impl InvolutionGeometry {
    pub fn num_points(&self) -> usize {
        self.action.len()
    }

    pub fn involution(&self, i: usize) -> &Perm {
        self.action.element(i)
    }

    /// Geometry whose lines are the triples with class size in `sizes`.
    pub fn with_sizes(&self, sizes: &[usize]) -> Result<Geometry, GeometryError> {
        let lines = self
            .triples
            .iter()
            .filter(|t| sizes.contains(&t.orbit_size))
            .map(|t| t.members.to_vec())
            .collect();
        Geometry::new(self.num_points(), lines)
    }

    /// Class size of the triple forming geometry line `l`.
    pub fn line_orbit_size(&self, l: usize) -> usize {
        let line = self.geometry.line(l);
        let key = [line[0], line[1], line[2]];
        let i = self.triples.binary_search_by(|t| t.members.cmp(&key)).expect("line is a triple");
        self.triples[i].orbit_size
    }

    /// The lines from the smallest admissible class.
    pub fn spread(&self) -> Result<Spread, GeometryError> {
        let smallest = self.admissible[0];
        let lines = (0..self.geometry.num_lines())
            .filter(|&l| self.line_orbit_size(l) == smallest)
            .map(|l| l as u32)
            .collect();
        Spread::new(&self.geometry, lines)
    }
}

/// Builds the involution geometry of `g`. `admissible` defaults to the two
/// smallest triple class sizes.
pub fn build_octagon(g: &PermGroup, admissible: Option<&[usize]>) -> Result<InvolutionGeometry, OctagonError> {
    let action = ConjugationAction::new(g, central_involutions(g))?;
    let n = action.len();
    let mut triples: Vec<[u32; 3]> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if !action.element(i).commutes_with(action.element(j)) {
                continue;
            }
            if let Some(k) = action.product_index(i, j).filter(|&k| k > j) {
                triples.push([i as u32, j as u32, k as u32]);
            }
        }
    }
    triples.sort_unstable();
    let index: HashMap<[u32; 3], usize> = triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();

    // Orbits of triples under the induced generators.
    let mut class = vec![usize::MAX; triples.len()];
    let mut sizes: Vec<usize> = Vec::new();
    for start in 0..triples.len() {
        if class[start] != usize::MAX {
            continue;
        }
        let c = sizes.len();
        class[start] = c;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(t) = stack.pop() {
            size += 1;
            for h in action.generator_actions() {
                let mut image = triples[t].map(|x| h.apply(x as usize) as u32);
                image.sort_unstable();
                let u = index[&image];
                if class[u] == usize::MAX {
                    class[u] = c;
                    stack.push(u);
                }
            }
        }
        sizes.push(size);
    }
    let triples: Vec<Triple> =
        triples.iter().zip(&class).map(|(&members, &c)| Triple { members, orbit_size: sizes[c] }).collect();
    let observed: Vec<usize> = sizes.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();

    let admissible: Vec<usize> = match admissible {
        Some(a) => {
            if let Some(&size) = a.iter().find(|s| !observed.contains(s)) {
                return Err(OctagonError::UnobservedSize { size, observed });
            }
            let mut a = a.to_vec();
            a.sort_unstable();
            a.dedup();
            a
        }
        None if observed.len() < 2 => return Err(OctagonError::TooFewSizes(observed)),
        None => observed[..2].to_vec(),
    };
    let lines = triples.iter().filter(|t| admissible.contains(&t.orbit_size)).map(|t| t.members.to_vec()).collect();
    let geometry = Geometry::new(n, lines)?;
    Ok(InvolutionGeometry { action, triples, observed_sizes: observed, admissible, geometry })
}

/// An involution of the plane group viewed as an elation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ElationDatum {
    pub involution: usize,
    pub center: ProjPoint,
    pub axis: ProjLine,
}

/// Centre (the point whose five lines are all fixed) and axis (the line
/// whose five points are all fixed) of involution `i`, a permutation of the
/// 42 points and lines.
pub fn elation_data(plane: &Plane, o: &InvolutionGeometry, i: usize) -> Result<ElationDatum, OctagonError> {
    let s = o.involution(i);
    let fixed = |slot: usize| s.apply(slot) == slot;
    let centers: Vec<ProjPoint> =
        plane.points().filter(|&p| plane.lines_through(p).iter().all(|l| fixed(NUM_POINTS + l.0 as usize))).collect();
    let axes: Vec<ProjLine> =
        plane.lines().filter(|&l| plane.points_on(l).iter().all(|p| fixed(p.0 as usize))).collect();
    match (&centers[..], &axes[..]) {
        (&[center], &[axis]) if plane.incident(center, axis) => Ok(ElationDatum { involution: i, center, axis }),
        _ => Err(OctagonError::NotAnElation(i)),
    }
}

/// Near-octagon checks: counts, line closure, axioms, order, distances, line
/// classes, and the two alternative line choices.
pub fn octagon_report(o: &InvolutionGeometry) -> Report {
    let mut r = Report::new("octagon");
    let g = &o.geometry;
    r.expect_eq("octagon.points", g.num_points(), 315);
    r.expect_eq("octagon.lines", g.num_lines(), 525);
    r.expect_eq("octagon.triple_orbit_sizes", o.observed_sizes.clone(), vec![105, 420, 840]);

    let bad = g.lines().iter().find(|line| {
        let [a, b, c] = [0, 1, 2].map(|k| line[k] as usize);
        let x = o.involution(a);
        let y = o.involution(b);
        let z = o.involution(c);
        let inv = |p: &Perm| !p.is_identity() && p.then(p).is_identity();
        !(x.then(y) == *z && y.then(x) == *z && inv(&x.then(y)) && inv(&y.then(z)) && inv(&z.then(x)))
    });
    r.check_witness("octagon.line_closure", "z = xy = yx on every line", bad.map(|l| format!("line {l:?}")));

    match verify_near_polygon(g) {
        Ok(d) => r.expect_eq("octagon.diameter", d, 4),
        Err(e) => r.check_witness("octagon.diameter", "near polygon", Some(e.to_string())),
    };
    match order_of(g) {
        Ok(ord) => r.expect_eq("octagon.order", ord, Order { s: 2, t: 4 }),
        Err(e) => r.check_witness("octagon.order", "uniform order", Some(e.to_string())),
    };
    let expected = vec![1, 10, 48, 128, 128];
    let bad = (0..g.num_points()).find(|&x| g.distance_distribution(x) != expected);
    r.check_witness(
        "octagon.distance_distribution",
        format!("{expected:?} at every point"),
        bad.map(|x| format!("point {x}: {:?}", g.distance_distribution(x))),
    );

    let mut line_classes: BTreeMap<usize, usize> = BTreeMap::new();
    for l in 0..g.num_lines() {
        *line_classes.entry(o.line_orbit_size(l)).or_default() += 1;
    }
    let classes: Vec<(usize, usize)> = line_classes.into_iter().collect();
    r.expect_eq("octagon.line_orbits", classes, vec![(105, 105), (420, 420)]);

    let observed = &o.observed_sizes;
    if observed.len() >= 3 {
        let spread_only = o.with_sizes(&observed[..1]).map(|h| h.is_connected());
        r.check(
            "octagon.spread_lines_disconnected",
            spread_only == Ok(false),
            format!("lines of class size {} alone", observed[0]),
        );
        let all = o.with_sizes(observed).map_err(|e| e.to_string()).and_then(|h| verify_near_polygon(&h).map_err(|e| e.to_string()));
        r.check_witness(
            "octagon.all_triples_not_near_polygon",
            format!("lines of class sizes {observed:?}"),
            all.ok().map(|d| format!("near polygon of diameter {d}")),
        );
    }
    r
}

/// Elation structure in the plane model: every involution is an elation,
/// each flag carries three of them forming with the identity a group of
/// order 4, and conjugation moves the flag with the group.
pub fn elation_report(plane: &Plane, g: &PermGroup, o: &InvolutionGeometry) -> Report {
    let mut r = Report::new("elations");
    let data: Result<Vec<ElationDatum>, OctagonError> =
        (0..o.num_points()).map(|i| elation_data(plane, o, i)).collect();
    let data = match data {
        Ok(d) => {
            r.check("elations.center_on_axis", true, format!("{} involutions", d.len()));
            d
        }
        Err(e) => {
            r.check_witness("elations.center_on_axis", "every involution", Some(e.to_string()));
            return r;
        }
    };
    let flag_of: Vec<usize> = data
        .iter()
        .map(|d| plane.flag_index(crate::pg24::Flag { point: d.center, line: d.axis }).expect("incident"))
        .collect();
    let mut fibers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &f) in flag_of.iter().enumerate() {
        fibers.entry(f).or_default().push(i);
    }
    let bad = fibers.iter().find(|(_, v)| v.len() != 3);
    r.check_witness(
        "elations.flag_fibers",
        format!("{} flags with 3 involutions each", fibers.len()),
        bad.map(|(f, v)| format!("flag {f} has {} involutions", v.len())).or_else(|| {
            (fibers.len() != 105).then(|| format!("{} flags", fibers.len()))
        }),
    );
    let bad = fibers.values().find(|v| {
        v.len() != 3 || [(0, 1, 2), (0, 2, 1), (1, 2, 0)].iter().any(|&(a, b, c)| o.action.product_index(v[a], v[b]) != Some(v[c]))
    });
    r.check_witness(
        "elations.fiber_groups",
        "each fiber with the identity is a group of order 4",
        bad.map(|v| format!("fiber {v:?}")),
    );
    let mut witness = None;
    'outer: for (h, act) in g.generators().iter().zip(o.action.generator_actions()) {
        for i in 0..o.num_points() {
            let image = act.apply(i);
            if crate::group::act_on_flag(plane, h, flag_of[i]) != Some(flag_of[image]) {
                witness = Some(format!("involution {i} under a generator"));
                break 'outer;
            }
        }
    }
    r.check_witness("elations.equivariance", "flag of a conjugate is the image flag", witness);
    r
}

/// Flag index of each involution, in the plane model.
pub fn involution_flags(plane: &Plane, o: &InvolutionGeometry) -> Result<Vec<usize>, OctagonError> {
    (0..o.num_points())
        .map(|i| {
            let d = elation_data(plane, o, i)?;
            Ok(plane.flag_index(crate::pg24::Flag { point: d.center, line: d.axis }).expect("incident"))
        })
        .collect()
}


#[cfg(test)]
mod tests {
    use super::fixtures::model;
    use super::*;

    #[test]
    fn near_octagon_checks_pass() {
        let m = model();
        let r = octagon_report(&m.octagon);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn elation_checks_pass() {
        let m = model();
        let r = elation_report(&m.plane, &m.group, &m.octagon);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn admissible_sizes_are_validated() {
        let m = model();
        assert!(matches!(build_octagon(&m.group, Some(&[105, 7])), Err(OctagonError::UnobservedSize { size: 7, .. })));
        let spread_only = build_octagon(&m.group, Some(&[105])).unwrap();
        assert_eq!(spread_only.geometry.num_lines(), 105);
    }

    #[test]
    fn spread_is_the_smallest_class() {
        let m = model();
        let s = m.octagon.spread().unwrap();
        assert_eq!(s.len(), 105);
    }
}
