use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use super::{Geometry, GeometryError};
use crate::group::{orbits_of, stabilizer_generators, Perm};

#[derive(Clone, Debug, Serialize)]
pub struct Suborbit {
    pub name: String,
    pub size: usize,
    /// Distance from the base point.
    pub distance: usize,
    pub representative: u32,
    #[serde(skip)]
    pub members: Vec<u32>,
}

/// A class of lines by how they meet the suborbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineType {
    /// Suborbit indices met, ascending.
    pub orbits: Vec<usize>,
    /// Points of the line in each of `orbits`.
    pub points: Vec<usize>,
    /// Lines of this type through a point of each of `orbits`.
    pub lines_per_point: Vec<usize>,
    /// Lines of this type in the whole geometry.
    pub total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuborbitDiagram {
    pub base: u32,
    pub suborbits: Vec<Suborbit>,
    pub line_types: Vec<LineType>,
}

/// Orbits of the stabilizer of `x` in `⟨gens⟩` and the lines between them.
///
/// Suborbits are ordered by distance from `x`, then size, then least member.
pub fn suborbit_diagram(g: &Geometry, gens: &[Perm], x: usize) -> Result<SuborbitDiagram, GeometryError> {
    let line_set: HashSet<&[u32]> = g.lines().iter().map(Vec::as_slice).collect();
    for (i, h) in gens.iter().enumerate() {
        let preserved = h.degree() == g.num_points()
            && g.lines().iter().all(|l| {
                let mut image: Vec<u32> = l.iter().map(|&p| h.apply(p as usize) as u32).collect();
                image.sort_unstable();
                line_set.contains(image.as_slice())
            });
        if !preserved {
            return Err(GeometryError::NotAnAutomorphism { generator: i });
        }
    }
    let n = g.num_points();
    let stab = stabilizer_generators(gens, x);
    let mut orbits = if stab.is_empty() { (0..n).map(|p| vec![p]).collect() } else { orbits_of(&stab, n) };
    let row = g.distances_from(x);
    orbits.sort_by_key(|o| (row[o[0]], o.len(), o[0]));
    let mut orbit_of = vec![0usize; n];
    for (i, o) in orbits.iter().enumerate() {
        for &p in o {
            orbit_of[p] = i;
        }
    }

    let mut types: BTreeMap<Vec<(usize, usize)>, usize> = BTreeMap::new();
    let mut line_type = Vec::with_capacity(g.num_lines());
    for line in g.lines() {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in line {
            *counts.entry(orbit_of[p as usize]).or_default() += 1;
        }
        let key: Vec<(usize, usize)> = counts.into_iter().collect();
        *types.entry(key.clone()).or_default() += 1;
        line_type.push(key);
    }
    let type_index: BTreeMap<&Vec<(usize, usize)>, usize> = types.keys().enumerate().map(|(i, k)| (k, i)).collect();
    let line_types = types
        .iter()
        .map(|(key, &total)| {
            let t = type_index[key];
            let lines_per_point = key
                .iter()
                .map(|&(o, _)| {
                    let rep = orbits[o][0];
                    g.lines_through(rep).iter().filter(|&&l| type_index[&line_type[l as usize]] == t).count()
                })
                .collect();
            LineType {
                orbits: key.iter().map(|&(o, _)| o).collect(),
                points: key.iter().map(|&(_, c)| c).collect(),
                lines_per_point,
                total,
            }
        })
        .collect();

    let suborbits = orbits
        .into_iter()
        .enumerate()
        .map(|(i, members)| Suborbit {
            name: format!("O{i}"),
            size: members.len(),
            distance: row[members[0]] as usize,
            representative: members[0] as u32,
            members: members.into_iter().map(|p| p as u32).collect(),
        })
        .collect();
    Ok(SuborbitDiagram { base: x as u32, suborbits, line_types })
}

impl SuborbitDiagram {
    pub fn sizes(&self) -> Vec<usize> {
        self.suborbits.iter().map(|o| o.size).collect()
    }

    pub fn orbit_of(&self, p: u32) -> Option<usize> {
        self.suborbits.iter().position(|o| o.members.binary_search(&p).is_ok())
    }

    pub fn set_names(&mut self, names: &[String]) {
        for (o, n) in self.suborbits.iter_mut().zip(names) {
            o.name = n.clone();
        }
    }

    /// Line types meeting exactly two suborbits.
    pub fn edges(&self) -> impl Iterator<Item = &LineType> {
        self.line_types.iter().filter(|t| t.orbits.len() == 2)
    }

    /// Double count of every line type: `size_i · lines_per_point_i = total · points_i`.
    pub fn is_consistent(&self) -> bool {
        let sum: usize = self.sizes().iter().sum();
        sum == self.suborbits.iter().flat_map(|o| &o.members).count()
            && self.line_types.iter().all(|t| {
                t.orbits.iter().enumerate().all(|(k, &o)| {
                    self.suborbits[o].size * t.lines_per_point[k] == t.total * t.points[k]
                })
            })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Graphviz rendering: one node per suborbit, ranked by distance, one edge
    /// per line type labelled `a|b` (points on each side) and `m:n` (lines
    /// through a point on each side).
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph suborbits {\n  rankdir=LR;\n  node [shape=circle];\n");
        for o in &self.suborbits {
            let _ = writeln!(out, "  \"{}\" [label=\"{}\\n{}\"];", o.name, o.name, o.size);
        }
        let max_d = self.suborbits.iter().map(|o| o.distance).max().unwrap_or(0);
        for d in 0..=max_d {
            let names: Vec<String> =
                self.suborbits.iter().filter(|o| o.distance == d).map(|o| format!("\"{}\"", o.name)).collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", names.join("; "));
        }
        for (k, t) in self.line_types.iter().enumerate() {
            let name = |i: usize| &self.suborbits[t.orbits[i]].name;
            match t.orbits.len() {
                1 => {
                    let _ = writeln!(
                        out,
                        "  \"{}\" -- \"{}\" [label=\"{} ({})\"];",
                        name(0),
                        name(0),
                        t.points[0],
                        t.lines_per_point[0]
                    );
                }
                2 => {
                    let _ = writeln!(
                        out,
                        "  \"{}\" -- \"{}\" [label=\"{}|{} ({}:{})\"];",
                        name(0),
                        name(1),
                        t.points[0],
                        t.points[1],
                        t.lines_per_point[0],
                        t.lines_per_point[1]
                    );
                }
                _ => {
                    let _ = writeln!(out, "  t{k} [shape=point];");
                    for i in 0..t.orbits.len() {
                        let _ = writeln!(
                            out,
                            "  t{k} -- \"{}\" [label=\"{} ({})\"];",
                            name(i),
                            t.points[i],
                            t.lines_per_point[i]
                        );
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::grid;
    use super::*;

    fn grid_automorphisms() -> Vec<Perm> {
        // Row shift, column shift, transpose of the 3×3 grid.
        let shift_rows: Vec<usize> = (0..9).map(|p| ((p / 3 + 1) % 3) * 3 + p % 3).collect();
        let shift_cols: Vec<usize> = (0..9).map(|p| (p / 3) * 3 + (p % 3 + 1) % 3).collect();
        let swap_cols: Vec<usize> = (0..9).map(|p| (p / 3) * 3 + [0, 2, 1][p % 3]).collect();
        let transpose: Vec<usize> = (0..9).map(|p| (p % 3) * 3 + p / 3).collect();
        [shift_rows, shift_cols, swap_cols, transpose].iter().map(|v| Perm::from_images(v).unwrap()).collect()
    }

    #[test]
    fn grid_suborbits() {
        let g = grid(3);
        let d = suborbit_diagram(&g, &grid_automorphisms(), 0).unwrap();
        assert_eq!(d.sizes(), vec![1, 4, 4]);
        assert!(d.is_consistent());
        let edge = d.edges().find(|t| t.orbits == vec![0, 1]).unwrap();
        assert_eq!(edge.points, vec![1, 2]);
        assert_eq!(edge.lines_per_point, vec![2, 1]);
        assert!(d.to_dot().contains("\"O0\" -- \"O1\" [label=\"1|2 (2:1)\"]"));
        assert!(d.to_json().contains("\"line_types\""));
    }

    #[test]
    fn non_automorphism_rejected() {
        let g = grid(3);
        let bad = Perm::from_images(&[1, 0, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        assert!(matches!(suborbit_diagram(&g, &[bad], 0), Err(GeometryError::NotAnAutomorphism { generator: 0 })));
    }
}
