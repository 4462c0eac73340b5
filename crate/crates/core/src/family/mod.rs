//! Near octagons with a distinguished line spread: the Γ′/Γ″ refinement of
//! the distance partition, the four local axioms, every derived count, and
//! the product of a generalized hexagon with a line.

mod product;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::incidence::{
    classify_point_quad, find_quads, order_of, quotient_geometry, verify_generalized_polygon, verify_near_polygon,
    Geometry, PointQuadRelation, Quad, Spread,
};
use crate::report::Report;

pub use product::{build_product, fano_flag_geometry, fano_plane, recognize_product, ProductDecomposition, ProductError};

/// Position of a point relative to a base point `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GammaClass {
    Base,
    One1,
    One2,
    Two1,
    Two2,
    Three1,
    Three2,
    Four,
}

impl GammaClass {
    pub const ALL: [GammaClass; 8] = [
        GammaClass::Base,
        GammaClass::One1,
        GammaClass::One2,
        GammaClass::Two1,
        GammaClass::Two2,
        GammaClass::Three1,
        GammaClass::Three2,
        GammaClass::Four,
    ];

    pub fn distance(self) -> usize {
        match self {
            GammaClass::Base => 0,
            GammaClass::One1 | GammaClass::One2 => 1,
            GammaClass::Two1 | GammaClass::Two2 => 2,
            GammaClass::Three1 | GammaClass::Three2 => 3,
            GammaClass::Four => 4,
        }
    }

    /// Whether this is a primed class Γi′.
    pub fn is_primed(self) -> bool {
        matches!(self, GammaClass::One1 | GammaClass::Two1 | GammaClass::Three1)
    }
}

impl fmt::Display for GammaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GammaClass::Base => "0",
            GammaClass::One1 => "1'",
            GammaClass::One2 => "1''",
            GammaClass::Two1 => "2'",
            GammaClass::Two2 => "2''",
            GammaClass::Three1 => "3'",
            GammaClass::Three2 => "3''",
            GammaClass::Four => "4",
        })
    }
}

/// The partition `{x}, Γ1′, Γ1″, Γ2′, Γ2″, Γ3′, Γ3″, Γ4` around a base point.
///
/// `Γ1′ = L_x ∖ {x}`; for `i = 2, 3`, `Γi′` is the part of `Γi` collinear
/// with `Γ(i-1)′` and `Γi″` the rest.
#[derive(Clone, Debug)]
pub struct GammaPartition {
    pub base: usize,
    pub class: Vec<Option<GammaClass>>,
}

impl GammaPartition {
    pub fn new(g: &Geometry, spread: &Spread, x: usize) -> GammaPartition {
        let n = g.num_points();
        let row = g.distances_from(x);
        let mut class: Vec<Option<GammaClass>> = vec![None; n];
        class[x] = Some(GammaClass::Base);
        let lx = g.line(spread.line_of(x));
        for y in 0..n {
            if row[y] == 1 {
                class[y] = Some(if lx.contains(&(y as u32)) { GammaClass::One1 } else { GammaClass::One2 });
            }
        }
        for (d, primed, plain, prev) in [
            (2, GammaClass::Two1, GammaClass::Two2, GammaClass::One1),
            (3, GammaClass::Three1, GammaClass::Three2, GammaClass::Two1),
        ] {
            for y in 0..n {
                if row[y] == d {
                    let hit = g.neighbours(y).ones().any(|z| class[z] == Some(prev));
                    class[y] = Some(if hit { primed } else { plain });
                }
            }
        }
        for y in 0..n {
            if row[y] == 4 {
                class[y] = Some(GammaClass::Four);
            }
        }
        GammaPartition { base: x, class }
    }

    pub fn members(&self, c: GammaClass) -> Vec<u32> {
        (0..self.class.len() as u32).filter(|&y| self.class[y as usize] == Some(c)).collect()
    }

    pub fn sizes(&self) -> BTreeMap<GammaClass, usize> {
        let mut out: BTreeMap<GammaClass, usize> = GammaClass::ALL.iter().map(|&c| (c, 0)).collect();
        for c in self.class.iter().flatten() {
            *out.get_mut(c).unwrap() += 1;
        }
        out
    }

    /// `(nearest point's class, class of the other points)`, or `None` when the
    /// far points are split over two classes or some point is unclassified.
    pub fn line_type(&self, line: &[u32], g: &Geometry) -> Option<(GammaClass, GammaClass)> {
        let row = g.distances_from(self.base);
        let near = *line.iter().min_by_key(|&&p| row[p as usize])?;
        let near_class = self.class[near as usize]?;
        let mut far = line.iter().filter(|&&p| p != near).map(|&p| self.class[p as usize]);
        let first = far.next()??;
        far.all(|c| c == Some(first)).then_some((near_class, first))
    }
}

/// `(s, t, t′)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyParameters {
    pub s: usize,
    pub t: usize,
    pub t_prime: usize,
}

impl FamilyParameters {
    fn ratio(&self) -> usize {
        self.t / self.t_prime
    }

    /// Closed-form `|Γ|` for every class.
    pub fn expected_sizes(&self) -> BTreeMap<GammaClass, usize> {
        let FamilyParameters { s, t, t_prime: tp } = *self;
        let u = t - tp;
        BTreeMap::from([
            (GammaClass::Base, 1),
            (GammaClass::One1, s),
            (GammaClass::One2, s * t),
            (GammaClass::Two1, s * s * t),
            (GammaClass::Two2, s * s * t * u),
            (GammaClass::Three1, s * s * s * t * u),
            (GammaClass::Three2, s * s * s * tp * u * u),
            (GammaClass::Four, s * s * s * s * tp * u * u),
        ])
    }

    /// The admissible line types.
    pub fn line_types() -> [(GammaClass, GammaClass); 10] {
        use GammaClass::*;
        [
            (Base, One1),
            (Base, One2),
            (One1, Two1),
            (One2, Two1),
            (One2, Two2),
            (Two1, Three1),
            (Two2, Three1),
            (Two2, Three2),
            (Three1, Four),
            (Three2, Four),
        ]
    }

    /// Lines of each type through a point of each class.
    pub fn expected_profile(&self, c: GammaClass) -> BTreeMap<(GammaClass, GammaClass), usize> {
        use GammaClass::*;
        let FamilyParameters { t, t_prime: tp, .. } = *self;
        let r = self.ratio();
        let entries: Vec<((GammaClass, GammaClass), usize)> = match c {
            Base => vec![((Base, One1), 1), ((Base, One2), t)],
            One1 => vec![((Base, One1), 1), ((One1, Two1), t)],
            One2 => vec![((Base, One2), 1), ((One2, Two1), tp), ((One2, Two2), t - tp)],
            Two1 => vec![((One1, Two1), 1), ((One2, Two1), tp), ((Two1, Three1), t - tp)],
            Two2 => vec![((One2, Two2), 1), ((Two2, Three1), tp), ((Two2, Three2), t - tp)],
            Three1 => vec![((Two1, Three1), 1), ((Two2, Three1), tp), ((Three1, Four), t - tp)],
            Three2 => vec![((Two2, Three2), r), ((Three2, Four), t + 1 - r)],
            Four => vec![((Three1, Four), r), ((Three2, Four), t + 1 - r)],
        };
        entries.into_iter().filter(|&(_, k)| k > 0).collect()
    }

    /// Spread lines of each type with respect to any base point.
    pub fn expected_spread_census(&self) -> BTreeMap<(GammaClass, GammaClass), usize> {
        use GammaClass::*;
        let FamilyParameters { s, t, t_prime: tp } = *self;
        let u = t - tp;
        BTreeMap::from([
            ((Base, One1), 1),
            ((One2, Two1), s * t),
            ((Two2, Three1), s * s * t * u),
            ((Three2, Four), s * s * s * tp * u * u),
        ])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub parameters: Option<FamilyParameters>,
    pub report: Report,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Per-base-point tags, in report order.
const LOCAL_TAGS: [&str; 10] = [
    "family.p1",
    "family.p2",
    "family.p3",
    "family.p4",
    "family.gamma_sizes",
    "family.line_types",
    "family.no_mixed_gamma3_lines",
    "family.point_profiles",
    "family.spread_census",
    "family.point_quad_classical",
];

/// Lines through `y` meeting the class `c`, ignoring `y` itself.
fn lines_meeting(g: &Geometry, part: &GammaPartition, y: usize, c: GammaClass) -> usize {
    g.lines_through(y)
        .iter()
        .filter(|&&l| g.line(l as usize).iter().any(|&z| z as usize != y && part.class[z as usize] == Some(c)))
        .count()
}

fn check_at(g: &Geometry, spread: &Spread, quads: &[Quad], p: &FamilyParameters, x: usize) -> Vec<Option<String>> {
    use GammaClass::*;
    let part = GammaPartition::new(g, spread, x);
    let mut out: Vec<Option<String>> = vec![None; LOCAL_TAGS.len()];

    let axioms = [(Two1, One2, p.t_prime), (Two2, One2, 1), (Three1, Two2, p.t_prime), (Three2, Two2, p.ratio())];
    for (k, &(at, meeting, expected)) in axioms.iter().enumerate() {
        out[k] = part.members(at).into_iter().find_map(|y| {
            let found = lines_meeting(g, &part, y as usize, meeting);
            (found != expected).then(|| format!("x={x} y={y}: {found} lines meeting Γ{meeting}, expected {expected}"))
        });
    }

    let sizes = part.sizes();
    let expected = p.expected_sizes();
    if sizes != expected || part.class.iter().any(Option::is_none) {
        let bad = GammaClass::ALL.iter().find(|c| sizes[c] != expected[c]);
        out[4] = Some(match bad {
            Some(c) => format!("x={x}: |Γ{c}| = {}, expected {}", sizes[c], expected[c]),
            None => format!("x={x}: points beyond distance 4"),
        });
    }

    let allowed = FamilyParameters::line_types();
    let mut census: BTreeMap<(GammaClass, GammaClass), usize> = BTreeMap::new();
    let mut types = Vec::with_capacity(g.num_lines());
    for (li, line) in g.lines().iter().enumerate() {
        let ty = part.line_type(line, g);
        if out[6].is_none() {
            let classes: Vec<GammaClass> = line.iter().filter_map(|&z| part.class[z as usize]).collect();
            if classes.contains(&Three1) && classes.contains(&Three2) {
                out[6] = Some(format!("x={x}: line {li} meets Γ3' and Γ3''"));
            }
        }
        match ty {
            Some(t) if allowed.contains(&t) => {
                if spread.contains_line(li) {
                    *census.entry(t).or_default() += 1;
                }
            }
            _ if out[5].is_none() => {
                out[5] = Some(format!("x={x}: line {li} has type {ty:?} outside the admissible list"));
            }
            _ => {}
        }
        types.push(ty);
    }

    for y in 0..g.num_points() {
        let Some(c) = part.class[y] else { continue };
        let mut profile: BTreeMap<(GammaClass, GammaClass), usize> = BTreeMap::new();
        for &l in g.lines_through(y) {
            if let Some(t) = types[l as usize] {
                *profile.entry(t).or_default() += 1;
            }
        }
        let expected = p.expected_profile(c);
        if profile != expected {
            out[7] = Some(format!("x={x} y={y} in Γ{c}: {profile:?}, expected {expected:?}"));
            break;
        }
    }

    let expected_census = p.expected_spread_census();
    if census != expected_census {
        out[8] = Some(format!("x={x}: {census:?}, expected {expected_census:?}"));
    }

    out[9] = quads.iter().find_map(|q| match classify_point_quad(g, x, q) {
        Ok(PointQuadRelation::Classical { .. }) => None,
        Ok(other) => Some(format!("x={x} with quad through {}: {other:?}", q.points[0])),
        Err(e) => Some(e.to_string()),
    });
    out
}

/// Spread lines pairwise parallel: every point of one line has the same
/// distance to the other line.
fn parallel_witness(g: &Geometry, spread: &Spread) -> Option<String> {
    let lines = spread.lines();
    for (i, &a) in lines.iter().enumerate() {
        for &b in &lines[i + 1..] {
            let (la, lb) = (g.line(a as usize), g.line(b as usize));
            let da: Vec<u8> = la.iter().map(|&p| g.distance_to_set(p as usize, lb)).collect();
            let db: Vec<u8> = lb.iter().map(|&p| g.distance_to_set(p as usize, la)).collect();
            if da.iter().chain(&db).any(|&d| d != da[0]) {
                return Some(format!("lines {a} and {b}: distances {da:?} / {db:?}"));
            }
        }
    }
    None
}

/// Runs every check of the family at every base point.
pub fn check_family(g: &Geometry, spread: &Spread, t_prime: usize) -> FamilyReport {
    let mut report = Report::new("family");
    let order = match order_of(g) {
        Ok(o) => o,
        Err(e) => {
            report.check_witness("family.parameters", "order (s,t)", Some(e.to_string()));
            return FamilyReport { parameters: None, report };
        }
    };
    let (s, t) = (order.s, order.t);
    let ok = s >= 2 && t_prime > 0 && t % t_prime == 0 && t_prime != t;
    report.check(
        "family.parameters",
        ok,
        format!("(s,t,t')=({s},{t},{t_prime})"),
    );
    if !ok {
        return FamilyReport { parameters: None, report };
    }
    let p = FamilyParameters { s, t, t_prime };
    match verify_near_polygon(g) {
        Ok(d) => report.expect_eq("family.near_octagon", d, 4),
        Err(e) => report.check_witness("family.near_octagon", "near polygon", Some(e.to_string())),
    };
    let quads = match find_quads(g) {
        Ok(q) => q,
        Err(e) => {
            report.check_witness("family.quads", "quad detection", Some(e.to_string()));
            Vec::new()
        }
    };

    let per_point: Vec<Vec<Option<String>>> =
        (0..g.num_points()).into_par_iter().map(|x| check_at(g, spread, &quads, &p, x)).collect();
    for (k, tag) in LOCAL_TAGS.iter().enumerate() {
        let witness = per_point.iter().find_map(|r| r[k].clone());
        report.check_witness(tag, format!("all {} base points", g.num_points()), witness);
    }

    let mut per_point_quads = vec![0usize; g.num_points()];
    for q in &quads {
        for &y in &q.points {
            per_point_quads[y as usize] += 1;
        }
    }
    let bad = per_point_quads.iter().position(|&k| k != p.ratio());
    report.check_witness(
        "family.quads_per_point",
        format!("t/t' = {}", p.ratio()),
        bad.map(|y| format!("point {y} on {} quads", per_point_quads[y])),
    );
    let bad = quads.iter().find(|q| q.order.s != s || q.order.t != t_prime);
    report.check_witness(
        "family.quad_order",
        format!("{} quads of order ({s},{t_prime})", quads.len()),
        bad.map(|q| format!("quad through {} has order {:?}", q.points[0], q.order)),
    );
    if t_prime == 1 {
        let bad = quads.iter().find(|q| q.points.len() != (s + 1) * (s + 1));
        report.check_witness(
            "family.grid_quads",
            format!("every quad a {0}x{0} grid", s + 1),
            bad.map(|q| format!("quad through {} has {} points", q.points[0], q.points.len())),
        );
    }
    report.check_witness("family.spread_parallel", format!("{} spread lines", spread.len()), parallel_witness(g, spread));

    match quotient_geometry(g, spread, &quads) {
        Ok(quotient) => {
            let mut witness = None;
            'outer: for (i, &a) in spread.lines().iter().enumerate() {
                for (j, &b) in spread.lines().iter().enumerate() {
                    let d = g.line(a as usize).iter().map(|&p| g.distance_to_set(p as usize, g.line(b as usize))).min();
                    if d != Some(quotient.distance(i, j)) {
                        witness = Some(format!("spread lines {a},{b}: {d:?} vs {}", quotient.distance(i, j)));
                        break 'outer;
                    }
                }
            }
            report.check_witness("family.quotient_distance", "d'(L1,L2) = d(L1,L2)", witness);
            let expected = (s * t_prime, p.ratio() - 1);
            match (order_of(&quotient), verify_generalized_polygon(&quotient, 6)) {
                (Ok(o), Ok(())) => report.expect_eq("family.quotient_hexagon", (o.s, o.t), expected),
                (Err(e), _) | (_, Err(e)) => {
                    report.check_witness("family.quotient_hexagon", format!("order {expected:?}"), Some(e.to_string()))
                }
            };
        }
        Err(e) => {
            report.check_witness("family.quotient_hexagon", "quotient", Some(e.to_string()));
        }
    }
    FamilyReport { parameters: Some(p), report }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_partition_the_points() {
        for p in [
            FamilyParameters { s: 2, t: 4, t_prime: 2 },
            FamilyParameters { s: 2, t: 2, t_prime: 1 },
            FamilyParameters { s: 2, t: 10, t_prime: 2 },
        ] {
            let sizes = p.expected_sizes();
            let total: usize = sizes.values().sum();
            let census: usize = p.expected_spread_census().values().sum();
            assert_eq!(total, (p.s + 1) * census);
            for c in GammaClass::ALL {
                let lines: usize = p.expected_profile(c).values().sum();
                assert_eq!(lines, p.t + 1, "class {c}");
            }
        }
        let o2 = FamilyParameters { s: 2, t: 4, t_prime: 2 }.expected_sizes();
        assert_eq!(o2.values().copied().collect::<Vec<_>>(), vec![1, 2, 8, 16, 32, 64, 64, 128]);
    }

    #[test]
    fn octagon_is_a_family_member() {
        let o = &crate::octagon::fixtures::model().octagon;
        let spread = o.spread().unwrap();
        let r = check_family(&o.geometry, &spread, 2);
        assert!(r.passed(), "{}", r.report.to_text());
        assert_eq!(r.parameters, Some(FamilyParameters { s: 2, t: 4, t_prime: 2 }));
        assert!(r.report.claim("family.grid_quads").is_none());
    }

    #[test]
    fn octagon_with_wrong_t_prime_fails_p1() {
        let o = &crate::octagon::fixtures::model().octagon;
        let spread = o.spread().unwrap();
        let r = check_family(&o.geometry, &spread, 1);
        let p1 = r.report.claim("family.p1").unwrap();
        assert!(!p1.passed);
        assert!(p1.witness.as_ref().unwrap().contains("2 lines meeting"), "{p1:?}");
    }

    #[test]
    fn octagon_is_not_a_product() {
        let o = &crate::octagon::fixtures::model().octagon;
        let spread = o.spread().unwrap();
        assert!(matches!(recognize_product(&o.geometry, &spread), Err(ProductError::NotApplicable(_))));
    }

    #[test]
    fn profiles_double_count() {
        // Edges between classes counted from both sides agree.
        let p = FamilyParameters { s: 2, t: 4, t_prime: 2 };
        let sizes = p.expected_sizes();
        for (a, b) in FamilyParameters::line_types() {
            let from_a = sizes[&a] * p.expected_profile(a)[&(a, b)];
            let from_b = sizes[&b] * p.expected_profile(b)[&(a, b)];
            assert_eq!(from_a * p.s, from_b, "{a}-{b}");
        }
    }
}
