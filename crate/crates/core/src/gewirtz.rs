//! The Gewirtz graph on one L3(4)-orbit of hyperovals of PG(2,4), the fixed
//! 8-sets of its central involutions, and the structures they induce on the
//! near octagon built from its automorphism group.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::family::{GammaClass, GammaPartition};
use crate::graph::{drg_params, graph_isomorphism, srg_params, Graph, GraphError, IntersectionArray, SrgParams};
use crate::group::{orbits_of, GroupError, Perm, PermGroup};
use crate::incidence::geometry_isomorphism;
use crate::octagon::InvolutionGeometry;
use crate::pg24::{Hyperoval, Plane, NUM_POINTS};
use crate::report::Report;

#[derive(Debug, Error)]
pub enum GewirtzError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("hyperoval orbit sizes {0:?}, expected three of size 56")]
    OrbitStructure(Vec<usize>),
    #[error("graph is not srg(56,10,0,2): {0}")]
    NotGewirtz(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct GewirtzGraph {
    pub hyperovals: Vec<Hyperoval>,
    /// Orbits of L3(4) on hyperoval indices, each sorted, ordered by least member.
    pub orbits: Vec<Vec<usize>>,
    /// Index into `orbits` of the orbit used as vertex set.
    pub chosen: usize,
    #[serde(skip)]
    pub graph: Graph,
}

impl GewirtzGraph {
    /// The disjointness graph on orbit `k`.
    pub fn orbit_graph(&self, k: usize) -> Graph {
        let members = &self.orbits[k];
        let sets: Vec<u32> = members
            .iter()
            .map(|&h| self.hyperovals[h].0.iter().fold(0u32, |m, p| m | 1 << p.0))
            .collect();
        Graph::from_fn(members.len(), |a, b| sets[a] & sets[b] == 0)
    }
}

/// Hyperoval orbits under the collineation group `l34` (acting on the 42
/// points and lines), with the lexicographically least orbit as vertex set
/// and disjointness as adjacency.
pub fn build_gewirtz(plane: &Plane, l34: &PermGroup) -> Result<GewirtzGraph, GewirtzError> {
    let hyperovals = plane.hyperovals();
    let index: HashMap<Hyperoval, usize> = hyperovals.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let actions = l34
        .generators()
        .iter()
        .map(|g| {
            let images: Vec<usize> = hyperovals
                .iter()
                .map(|h| {
                    let mut pts = h.0.map(|p| crate::pg24::ProjPoint(g.apply(p.0 as usize) as u8));
                    pts.sort();
                    index[&Hyperoval(pts)]
                })
                .collect();
            Perm::from_images(&images)
        })
        .collect::<Result<Vec<_>, _>>()?;
    debug_assert!(l34.generators().iter().all(|g| g.apply(0) < NUM_POINTS));
    let mut orbits = orbits_of(&actions, hyperovals.len());
    for o in orbits.iter_mut() {
        o.sort_unstable();
    }
    orbits.sort();
    let sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    if sizes != [56, 56, 56] {
        return Err(GewirtzError::OrbitStructure(sizes));
    }
    let mut out = GewirtzGraph { hyperovals, orbits, chosen: 0, graph: Graph::empty(0) };
    out.graph = out.orbit_graph(0);
    let params = srg_params(&out.graph).map_err(|e| GewirtzError::NotGewirtz(format!("{e:?}")))?;
    if params != (SrgParams { v: 56, k: 10, lambda: 0, mu: 2 }) {
        return Err(GewirtzError::NotGewirtz(format!("{params:?}")));
    }
    Ok(out)
}

/// Parameters, the three orbit choices, and the automorphism group order.
pub fn gewirtz_report(gw: &GewirtzGraph, aut: &PermGroup) -> Report {
    let mut r = Report::new("gewirtz");
    r.expect_eq("gewirtz.hyperoval_orbits", gw.orbits.iter().map(Vec::len).collect::<Vec<_>>(), vec![56, 56, 56]);
    match srg_params(&gw.graph) {
        Ok(p) => r.expect_eq("gewirtz.srg", (p.v, p.k, p.lambda, p.mu), (56, 10, 0, 2)),
        Err(e) => r.check_witness("gewirtz.srg", "strongly regular", Some(format!("{e:?}"))),
    };
    match drg_params(&gw.graph) {
        Ok(a) => r.expect_eq("gewirtz.intersection_array", a.to_string(), "{10,9;1,2}".to_string()),
        Err(e) => r.check_witness("gewirtz.intersection_array", "distance-regular", Some(format!("{e:?}"))),
    };
    let bad = (1..gw.orbits.len()).find(|&k| {
        !matches!(graph_isomorphism(&gw.graph, &gw.orbit_graph(k), None, None), Ok(Some(_)))
    });
    r.check_witness(
        "gewirtz.orbit_choice_irrelevant",
        format!("orbit {} chosen; all three orbit graphs isomorphic", gw.chosen),
        bad.map(|k| format!("orbit {k}")),
    );
    r.expect_eq("gewirtz.aut_order", aut.order(), 80640);
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialEightSet {
    /// Index of the involution in the given list.
    pub involution: usize,
    /// Fixed vertices, ascending.
    pub fixed: Vec<u32>,
}

impl SpecialEightSet {
    fn mask(&self) -> u64 {
        self.fixed.iter().fold(0u64, |m, &v| m | 1 << v)
    }
}

pub fn special_eight_sets(involutions: &[Perm]) -> Vec<SpecialEightSet> {
    involutions
        .iter()
        .enumerate()
        .map(|(i, s)| SpecialEightSet { involution: i, fixed: s.fixed_points().into_iter().map(|v| v as u32).collect() })
        .collect()
}

/// Whether the induced subgraph is two disjoint 4-cycles.
fn is_two_squares(g: &Graph, set: &[u32]) -> bool {
    let vs: Vec<usize> = set.iter().map(|&v| v as usize).collect();
    let h = g.induced(&vs);
    if h.order() != 8 || (0..8).any(|v| h.degree(v) != 2) {
        return false;
    }
    let d = h.distances_from(0);
    let reach = d.iter().filter(|&&x| x != usize::MAX).count();
    reach == 4 && d.iter().filter(|&&x| x == 2).count() == 1
}

/// Fixed sets of the central involutions of the automorphism group.
pub fn eight_set_report(g: &Graph, aut: &PermGroup, involutions: &[Perm], sets: &[SpecialEightSet]) -> Report {
    let mut r = Report::new("eight_sets");
    r.expect_eq("eight_sets.count", sets.len(), 315);
    let bad = sets.iter().find(|s| s.fixed.len() != 8);
    r.check_witness("eight_sets.size", "8 fixed vertices", bad.map(|s| format!("involution {}: {}", s.involution, s.fixed.len())));
    let bad = sets.iter().find(|s| !is_two_squares(g, &s.fixed));
    r.check_witness(
        "eight_sets.two_squares",
        "induced subgraph is two 4-cycles",
        bad.map(|s| format!("involution {}: {:?}", s.involution, s.fixed)),
    );
    // Pointwise stabilizer of X_σ: elements whose fixed set contains it.
    let fixed_masks: Vec<u64> = aut
        .elements()
        .map(|e| e.fixed_points().into_iter().fold(0u64, |m, v| m | 1 << v))
        .collect();
    let bad = sets.par_iter().find_first(|s| {
        let m = s.mask();
        let stab: Vec<usize> = (0..fixed_masks.len()).filter(|&i| fixed_masks[i] & m == m).collect();
        stab.len() != 2 || !stab.iter().any(|&i| aut.element(i) == &involutions[s.involution])
    });
    r.check_witness(
        "eight_sets.pointwise_stabilizer",
        "pointwise stabilizer is {1, σ}",
        bad.map(|s| format!("involution {}", s.involution)),
    );
    let distinct: BTreeSet<&Vec<u32>> = sets.iter().map(|s| &s.fixed).collect();
    r.expect_eq("eight_sets.injective", distinct.len(), sets.len());
    r
}

/// Involutions adjacent when at distance 2 with a single common neighbour.
pub fn surrogate_graph(o: &InvolutionGeometry) -> Graph {
    let g = &o.geometry;
    Graph::from_fn(g.num_points(), |a, b| {
        if g.distance(a, b) != 2 {
            return false;
        }
        let mut common = g.neighbours(a).clone();
        common.intersect_with(g.neighbours(b));
        common.count_ones(..) == 1
    })
}

/// `|X_x ∩ X_y|` by the class of `y` relative to `x`.
pub const INTERSECTION_COLUMN: [(GammaClass, usize); 8] = [
    (GammaClass::Base, 8),
    (GammaClass::One1, 0),
    (GammaClass::One2, 4),
    (GammaClass::Two1, 0),
    (GammaClass::Two2, 2),
    (GammaClass::Three1, 0),
    (GammaClass::Three2, 2),
    (GammaClass::Four, 1),
];

/// One row of the intersection table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionRow {
    pub suborbit: String,
    pub size: usize,
    /// Every value of `|X_x ∩ X_y|` seen over all base points `x` and all `y` in the suborbit.
    pub observed: Vec<usize>,
    pub expected: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionTable {
    pub rows: Vec<IntersectionRow>,
    /// Distinct values of `Σ_y |X_x ∩ X_y|` over base points.
    pub row_sums: Vec<usize>,
}

impl IntersectionTable {
    pub fn matches(&self) -> bool {
        self.rows.iter().all(|r| r.observed == [r.expected])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("suborbit  size  |X∩X|  expected\n");
        for r in &self.rows {
            let obs: Vec<String> = r.observed.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{:<8}  {:>4}  {:>5}  {:>8}", r.suborbit, r.size, obs.join(","), r.expected);
        }
        out
    }
}

fn suborbit_name(c: GammaClass) -> &'static str {
    match c {
        GammaClass::Base => "O0",
        GammaClass::One1 => "O1a",
        GammaClass::One2 => "O1b",
        GammaClass::Two1 => "O2a",
        GammaClass::Two2 => "O2b",
        GammaClass::Three1 => "O3a",
        GammaClass::Three2 => "O3b",
        GammaClass::Four => "O4",
    }
}

/// Per class: member count and the distinct intersection sizes seen.
type ClassCells = BTreeMap<GammaClass, (usize, BTreeSet<usize>)>;

/// Intersection sizes of fixed 8-sets over every ordered pair, grouped by
/// the position of the second involution relative to the first.
pub fn intersection_table(o: &InvolutionGeometry, sets: &[SpecialEightSet]) -> Option<IntersectionTable> {
    let spread = o.spread().ok()?;
    let masks: Vec<u64> = sets.iter().map(SpecialEightSet::mask).collect();
    let per_base: Vec<(ClassCells, usize)> = (0..o.num_points())
        .into_par_iter()
        .map(|x| {
            let part = GammaPartition::new(&o.geometry, &spread, x);
            let mut cells = ClassCells::new();
            let mut sum = 0;
            for y in 0..o.num_points() {
                let k = (masks[x] & masks[y]).count_ones() as usize;
                sum += k;
                if let Some(c) = part.class[y] {
                    let cell = cells.entry(c).or_default();
                    cell.0 += 1;
                    cell.1.insert(k);
                }
            }
            (cells, sum)
        })
        .collect();
    let rows = INTERSECTION_COLUMN
        .iter()
        .map(|&(c, expected)| {
            let mut observed = BTreeSet::new();
            let mut sizes = BTreeSet::new();
            for (cells, _) in &per_base {
                if let Some((n, ks)) = cells.get(&c) {
                    sizes.insert(*n);
                    observed.extend(ks);
                }
            }
            IntersectionRow {
                suborbit: suborbit_name(c).to_string(),
                size: if sizes.len() == 1 { *sizes.first().unwrap() } else { 0 },
                observed: observed.into_iter().collect(),
                expected,
            }
        })
        .collect();
    let row_sums: BTreeSet<usize> = per_base.iter().map(|(_, s)| *s).collect();
    Some(IntersectionTable { rows, row_sums: row_sums.into_iter().collect() })
}

/// The near octagon from the automorphism group against the plane model,
/// the distance-2 single-common-neighbour graph, and the intersection column.
pub fn subconstituent_report(
    matrix: &InvolutionGeometry,
    gewirtz: &InvolutionGeometry,
    sets: &[SpecialEightSet],
) -> (Report, Option<IntersectionTable>) {
    let mut r = Report::new("subconstituent");
    r.check(
        "subconstituent.octagon_isomorphic",
        geometry_isomorphism(&gewirtz.geometry, &matrix.geometry).is_some(),
        format!("{} and {} points", gewirtz.num_points(), matrix.num_points()),
    );
    let surrogate = surrogate_graph(gewirtz);
    let expected = IntersectionArray::new(vec![32, 27, 8, 1], vec![1, 4, 27, 32]);
    match drg_params(&surrogate) {
        Ok(a) => {
            let sizes = a.distance_sizes();
            r.expect_eq("subconstituent.intersection_array", a.to_string(), expected.to_string());
            r.expect_eq("subconstituent.distance_sizes", sizes, Some(vec![1, 32, 216, 64, 2]));
        }
        Err(e) => {
            r.check_witness("subconstituent.intersection_array", "distance-regular", Some(format!("{e:?}")));
        }
    }
    let table = intersection_table(gewirtz, sets);
    match &table {
        Some(t) => {
            let bad = t.rows.iter().find(|row| row.observed != [row.expected]);
            r.check_witness(
                "subconstituent.intersection_column",
                "(8,0,4,0,2,0,2,1) at every base point",
                bad.map(|row| format!("{}: {:?}", row.suborbit, row.observed)),
            );
            r.check(
                "subconstituent.row_sum_constant",
                t.row_sums.len() == 1,
                format!("Σ size·|X∩X| = {:?}", t.row_sums),
            );
        }
        None => {
            r.check_witness("subconstituent.intersection_column", "spread", Some("no spread".into()));
        }
    }
    // Collinear pairs meet in 0 points on a spread line and in 4 otherwise;
    // a 4-point intersection forces collinearity.
    let spread = gewirtz.spread().ok();
    let bad = (0..gewirtz.num_points()).find_map(|a| {
        (0..gewirtz.num_points()).filter(|&b| b != a).find_map(|b| {
            let k = (sets[a].mask() & sets[b].mask()).count_ones();
            let collinear = gewirtz.geometry.collinear(a, b);
            let same_spread_line = spread.as_ref().is_some_and(|s| s.member_of(a) == s.member_of(b));
            let ok = match (collinear, same_spread_line) {
                (true, true) => k == 0,
                (true, false) => k == 4,
                (false, _) => k != 4,
            };
            (!ok).then(|| format!("{a},{b}: |X∩X| = {k}"))
        })
    });
    r.check_witness("subconstituent.collinearity_rule", "collinear iff |X∩X| is 0 on a spread line or 4", bad);
    (r, table)
}

#[cfg(test)]
mod tests {
    use std::sync::OnceLock;

    use super::*;
    use crate::graph::automorphism_group;
    use crate::group::{build_group_l34, DEFAULT_ELEMENT_BUDGET};
    use crate::octagon::build_octagon;

    struct Data {
        gw: GewirtzGraph,
        aut: PermGroup,
        octagon: InvolutionGeometry,
    }

    fn data() -> &'static Data {
        static DATA: OnceLock<Data> = OnceLock::new();
        DATA.get_or_init(|| {
            let plane = Plane::new();
            let l34 = build_group_l34(&plane, DEFAULT_ELEMENT_BUDGET).unwrap();
            let gw = build_gewirtz(&plane, &l34).unwrap();
            let (_, aut) = automorphism_group(&gw.graph, None, DEFAULT_ELEMENT_BUDGET).unwrap();
            let octagon = build_octagon(&aut, None).unwrap();
            Data { gw, aut, octagon }
        })
    }

    #[test]
    fn gewirtz_checks_pass() {
        let d = data();
        let r = gewirtz_report(&d.gw, &d.aut);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn eight_sets_pass() {
        let d = data();
        let sets = special_eight_sets(d.octagon.action.elements());
        let r = eight_set_report(&d.gw.graph, &d.aut, d.octagon.action.elements(), &sets);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn subconstituent_checks_pass() {
        let d = data();
        let sets = special_eight_sets(d.octagon.action.elements());
        let matrix = &crate::octagon::fixtures::model().octagon;
        let (r, table) = subconstituent_report(matrix, &d.octagon, &sets);
        assert!(r.passed(), "{}", r.to_text());
        // Each vertex is fixed by 315·8/56 = 45 involutions, so every row sums to 8·45.
        assert_eq!(table.unwrap().row_sums, vec![360]);
    }

    #[test]
    fn two_squares_shape() {
        let sq = Graph::from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)]).unwrap();
        assert!(is_two_squares(&sq, &(0..8).collect::<Vec<_>>()));
        let oct = Graph::from_edges(8, (0..8).map(|i| (i, (i + 1) % 8))).unwrap();
        assert!(!is_two_squares(&oct, &(0..8).collect::<Vec<_>>()));
    }
}
