use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{InvolutionGeometry, OctagonError};
use crate::family::GammaPartition;
use crate::group::dihedral_type;
use crate::incidence::{suborbit_diagram, SuborbitDiagram};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureOrbit {
    pub name: String,
    pub size: usize,
    /// Isomorphism type of the group generated by the base involution and a member.
    pub group: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureEdge {
    /// Nearer orbit first.
    pub orbits: [String; 2],
    pub points: [usize; 2],
    pub lines_per_point: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuborbitFixture {
    pub version: u32,
    pub orbits: Vec<FixtureOrbit>,
    pub edges: Vec<FixtureEdge>,
}

const EMBEDDED: &str = include_str!("../../fixtures/suborbit_fixture.json");

pub fn embedded_fixture() -> SuborbitFixture {
    serde_json::from_str(EMBEDDED).expect("embedded fixture parses")
}

impl SuborbitFixture {
    pub fn from_json(text: &str) -> Result<SuborbitFixture, OctagonError> {
        serde_json::from_str(text).map_err(|e| OctagonError::Fixture(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub cell: String,
    pub expected: String,
    pub observed: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuborbitComparison {
    pub diagram: SuborbitDiagram,
    /// Group type per suborbit, in diagram order.
    pub groups: Vec<String>,
    pub mismatches: Vec<Mismatch>,
    pub report: Report,
}

/// Names `O{d}` for a distance with a single suborbit; otherwise `O{d}a` for
/// suborbits inside the primed class and `O{d}b` for the others, with a
/// numeric suffix if that still collides.
pub fn name_suborbits(diagram: &SuborbitDiagram, part: &GammaPartition) -> Vec<String> {
    let mut per_distance: BTreeMap<usize, usize> = BTreeMap::new();
    for o in &diagram.suborbits {
        *per_distance.entry(o.distance).or_default() += 1;
    }
    let mut names: Vec<String> = diagram
        .suborbits
        .iter()
        .map(|o| {
            let mut name = format!("O{}", o.distance);
            if per_distance[&o.distance] > 1 {
                let primed = part.class[o.representative as usize].is_some_and(|c| c.is_primed());
                name.push(if primed { 'a' } else { 'b' });
            }
            name
        })
        .collect();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for n in &names {
        *seen.entry(n.clone()).or_default() += 1;
    }
    let mut used: BTreeMap<String, usize> = BTreeMap::new();
    for n in names.iter_mut() {
        if seen[n] > 1 {
            let k = used.entry(n.clone()).or_default();
            *k += 1;
            n.push_str(&k.to_string());
        }
    }
    names
}

/// Computes the suborbit diagram at involution `x` and compares it with the
/// fixture cell by cell.
pub fn suborbit_report(
    o: &InvolutionGeometry,
    x: usize,
    fixture: &SuborbitFixture,
) -> Result<SuborbitComparison, OctagonError> {
    let mut diagram = suborbit_diagram(&o.geometry, o.action.generator_actions(), x)?;
    let spread = o.spread()?;
    let part = GammaPartition::new(&o.geometry, &spread, x);
    diagram.set_names(&name_suborbits(&diagram, &part));
    let groups: Vec<String> = diagram
        .suborbits
        .iter()
        .map(|s| dihedral_type(o.involution(x), o.involution(s.representative as usize)).to_string())
        .collect();

    let mut mismatches = Vec::new();
    let mut miss = |cell: String, expected: String, observed: String| {
        mismatches.push(Mismatch { cell, expected, observed });
    };
    let by_name: BTreeMap<&str, usize> =
        diagram.suborbits.iter().enumerate().map(|(i, s)| (s.name.as_str(), i)).collect();
    for f in &fixture.orbits {
        match by_name.get(f.name.as_str()) {
            None => miss(f.name.clone(), "present".into(), "absent".into()),
            Some(&i) => {
                if diagram.suborbits[i].size != f.size {
                    miss(format!("{}.size", f.name), f.size.to_string(), diagram.suborbits[i].size.to_string());
                }
                if groups[i] != f.group {
                    miss(format!("{}.group", f.name), f.group.clone(), groups[i].clone());
                }
            }
        }
    }
    for s in &diagram.suborbits {
        if !fixture.orbits.iter().any(|f| f.name == s.name) {
            miss(s.name.clone(), "absent".into(), format!("size {}", s.size));
        }
    }

    let mut computed: BTreeMap<[String; 2], ([usize; 2], [usize; 2])> = BTreeMap::new();
    for t in &diagram.line_types {
        if t.orbits.len() != 2 {
            let names: Vec<&str> = t.orbits.iter().map(|&i| diagram.suborbits[i].name.as_str()).collect();
            miss(format!("line type {}", names.join("-")), "absent".into(), format!("{} lines", t.total));
            continue;
        }
        let key = [diagram.suborbits[t.orbits[0]].name.clone(), diagram.suborbits[t.orbits[1]].name.clone()];
        computed.insert(key, ([t.points[0], t.points[1]], [t.lines_per_point[0], t.lines_per_point[1]]));
    }
    for e in &fixture.edges {
        let cell = format!("{}-{}", e.orbits[0], e.orbits[1]);
        match computed.remove(&e.orbits) {
            None => miss(cell, "present".into(), "absent".into()),
            Some((points, lpp)) => {
                if points != e.points {
                    miss(format!("{cell}.points"), format!("{:?}", e.points), format!("{points:?}"));
                }
                if lpp != e.lines_per_point {
                    miss(format!("{cell}.lines_per_point"), format!("{:?}", e.lines_per_point), format!("{lpp:?}"));
                }
            }
        }
    }
    for (k, (points, lpp)) in computed {
        miss(format!("{}-{}", k[0], k[1]), "absent".into(), format!("points {points:?}, lines {lpp:?}"));
    }

    let mut report = Report::new("suborbits");
    // Computed values listed in fixture order.
    let ordered = |f: &FixtureOrbit| by_name.get(f.name.as_str()).copied();
    report.expect_eq(
        "suborbits.sizes",
        fixture.orbits.iter().map(|f| ordered(f).map(|i| diagram.suborbits[i].size)).collect::<Vec<_>>(),
        fixture.orbits.iter().map(|f| Some(f.size)).collect(),
    );
    report.expect_eq(
        "suborbits.groups",
        fixture.orbits.iter().map(|f| ordered(f).map(|i| groups[i].clone())).collect::<Vec<_>>(),
        fixture.orbits.iter().map(|f| Some(f.group.clone())).collect(),
    );
    let first = |pred: &dyn Fn(&Mismatch) -> bool| {
        mismatches.iter().find(|m| pred(m)).map(|m| format!("{}: expected {}, observed {}", m.cell, m.expected, m.observed))
    };
    report.check_witness(
        "suborbits.edges",
        format!("{} line types", fixture.edges.len()),
        first(&|m| m.cell.contains('-')),
    );
    report.check_witness("suborbits.all_cells", "fixture diff", first(&|_| true));
    report.check("suborbits.double_count", diagram.is_consistent(), "size·lines per point = total·points");
    Ok(SuborbitComparison { diagram, groups, mismatches, report })
}
