//! End-to-end acceptance run: one line per criterion, nonzero exit on failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use octalab::family::{GammaClass, GammaPartition};
use octalab::graph::Graph;
use octalab::octagon::collinearity_graph;
use octalab::report::Report;
use octalab::workbench::{Config, Instance, Workbench};

struct Outcome {
    ok: bool,
    note: String,
}

fn outcome(problems: Vec<String>, note: impl Into<String>) -> Outcome {
    if problems.is_empty() {
        Outcome { ok: true, note: note.into() }
    } else {
        Outcome { ok: false, note: problems.join("; ") }
    }
}

/// Fails unless every listed tag is present and passing.
fn require(report: &Report, tags: &[&str], problems: &mut Vec<String>) {
    for tag in tags {
        match report.claim(tag) {
            None => problems.push(format!("{tag} missing")),
            Some(c) if !c.passed => problems.push(format!("{tag}: {} {:?}", c.detail, c.witness)),
            Some(_) => {}
        }
    }
    if let Some(c) = report.failures().next() {
        problems.push(format!("{} failed", c.tag));
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, observed: T, expected: T, problems: &mut Vec<String>) {
    if observed != expected {
        problems.push(format!("{what}: {observed:?} != {expected:?}"));
    }
}

fn bfs_distribution(g: &Graph, v: usize) -> Vec<usize> {
    let d = g.distances_from(v);
    let mut out = vec![0; d.iter().copied().filter(|&x| x != usize::MAX).max().unwrap_or(0) + 1];
    for x in d {
        if x == usize::MAX {
            return Vec::new();
        }
        out[x] += 1;
    }
    out
}

fn srg_by_counting(g: &Graph) -> Option<(usize, usize, usize, usize)> {
    let n = g.order();
    let k = g.degree(0);
    let mut lambda = BTreeSet::new();
    let mut mu = BTreeSet::new();
    for a in 0..n {
        if g.degree(a) != k {
            return None;
        }
        for b in a + 1..n {
            let common = g.neighbours(a).iter().filter(|&&c| g.has_edge(b, c as usize)).count();
            if g.has_edge(a, b) { lambda.insert(common) } else { mu.insert(common) };
        }
    }
    match (lambda.len(), mu.len()) {
        (1, 1) => Some((n, k, *lambda.first()?, *mu.first()?)),
        _ => None,
    }
}

fn c1_group(w: &Workbench) -> Result<Outcome, String> {
    let r = w.group_report().map_err(|e| e.to_string())?;
    let mut p = Vec::new();
    require(&r, &["group.l34_order", "group.order", "group.flag_orbit"], &mut p);
    // |PSL(3,4)| = q^3 (q^3-1)(q^2-1) / gcd(3, q-1), extended by a group of order 4.
    let q: usize = 4;
    let psl = q.pow(3) * (q.pow(3) - 1) * (q.pow(2) - 1) / 3;
    expect("|L3(4)|", w.l34().map_err(|e| e.to_string())?.order(), psl, &mut p);
    expect("|G|", w.group().map_err(|e| e.to_string())?.order(), 4 * psl, &mut p);
    // Flags of PG(2,4): 21 points on 5 lines each.
    expect("flags", w.plane().flags().len(), 21 * 5, &mut p);
    Ok(outcome(p, format!("|L3(4)| = {psl}, |G| = {}, transitive on 105 flags", 4 * psl)))
}

fn c2_involutions(w: &Workbench) -> Result<Outcome, String> {
    let r = w.group_report().map_err(|e| e.to_string())?;
    let mut p = Vec::new();
    require(&r, &["group.central_involutions", "group.single_class", "group.centralizer_order"], &mut p);
    let o = w.octagon().map_err(|e| e.to_string())?;
    let g = w.group().map_err(|e| e.to_string())?;
    expect("class size |G|/|C|", g.order() / 256, 315, &mut p);
    let class = g.conjugacy_class(o.involution(0)).map_err(|e| e.to_string())?;
    expect("class of the first involution", class.len(), o.num_points(), &mut p);
    Ok(outcome(p, "315 central involutions, one class, centralizers of order 256"))
}

fn c3_octagon(w: &Workbench) -> Result<Outcome, String> {
    let r = w.octagon_report().map_err(|e| e.to_string())?;
    let mut p = Vec::new();
    require(&r, &["octagon.points", "octagon.lines", "octagon.diameter", "octagon.order", "octagon.distance_distribution"], &mut p);
    let o = w.octagon().map_err(|e| e.to_string())?;
    let graph = collinearity_graph(o);
    let dists: BTreeSet<Vec<usize>> = (0..graph.order()).map(|v| bfs_distribution(&graph, v)).collect();
    expect("BFS distance distributions", dists.into_iter().collect(), vec![vec![1, 10, 48, 128, 128]], &mut p);
    // s = 2, t = 4: three points per line, five lines per point.
    expect("lines", o.geometry.num_lines(), 315 * 5 / 3, &mut p);
    let bad = o.geometry.lines().iter().any(|l| l.len() != 3);
    expect("line size 3", bad, false, &mut p);
    Ok(outcome(p, "near octagon of order (2,4), distances (1,10,48,128,128)"))
}

fn c4_suborbits(w: &Workbench) -> Result<Outcome, String> {
    let c = w.suborbits().map_err(|e| e.to_string())?;
    let mut p = Vec::new();
    require(&c.report, &["suborbits.sizes", "suborbits.groups", "suborbits.edges", "suborbits.all_cells"], &mut p);
    for m in &c.mismatches {
        p.push(format!("{}: expected {}, observed {}", m.cell, m.expected, m.observed));
    }
    let mut sizes: Vec<usize> = c.diagram.suborbits.iter().map(|s| s.size).collect();
    sizes.sort_unstable();
    expect("suborbit sizes", sizes, vec![1, 2, 8, 16, 32, 64, 64, 128], &mut p);
    let groups: BTreeSet<&str> = c.groups.iter().map(String::as_str).collect();
    expect("group types", groups, ["C2", "C2xC2", "D10", "D8", "S3"].into_iter().collect(), &mut p);
    Ok(outcome(p, format!("8 suborbits, {} line types, fixture matches", c.diagram.line_types.len())))
}

fn c5_quads(w: &Workbench) -> Result<Outcome, String> {
    let r = w.quads_report().map_err(|e| e.to_string())?;
    let mut p = Vec::new();
    require(
        &r,
        &[
            "quads.count",
            "quads.order",
            "quads.per_point",
            "quads.meet_in_spread_line",
            "quads.spread_size",
            "quads.quotient_hexagon",
            "quads.flag_isomorphism",
        ],
        &mut p,
    );
    let o = w.octagon().map_err(|e| e.to_string())?;
    let spread = o.spread().map_err(|e| e.to_string())?;
    expect("spread covers points", spread.len() * 3, o.num_points(), &mut p);
    Ok(outcome(p, "42 GQ(2,2) quads, spread of 105 lines, quotient H(4,1)"))
}

fn c6_family(w: &Workbench) -> Result<Outcome, String> {
    let r = w.family_report(Instance::Octagon).map_err(|e| e.to_string())?;
    let mut p = Vec::new();
    require(
        &r,
        &[
            "family.p1",
            "family.p2",
            "family.p3",
            "family.p4",
            "family.gamma_sizes",
            "family.line_types",
            "family.point_profiles",
            "family.point_quad_classical",
            "family.spread_parallel",
        ],
        &mut p,
    );
    let o = w.octagon().map_err(|e| e.to_string())?;
    let spread = o.spread().map_err(|e| e.to_string())?;
    let want = [16, 32, 64, 64, 128];
    let classes = [GammaClass::Two1, GammaClass::Two2, GammaClass::Three1, GammaClass::Three2, GammaClass::Four];
    for x in [0, 157, 314] {
        let part = GammaPartition::new(&o.geometry, &spread, x);
        let sizes = part.sizes();
        let got: Vec<usize> = classes.iter().map(|c| sizes.get(c).copied().unwrap_or(0)).collect();
        expect(&format!("class sizes at {x}"), got, want.to_vec(), &mut p);
    }
    Ok(outcome(p, "P1-P4 and all multiplicities at 315 base points, t' = 2"))
}

fn c7_product(w: &Workbench) -> Result<Outcome, String> {
    let r = w.family_report(Instance::Product).map_err(|e| e.to_string())?;
    let mut p = Vec::new();
    require(&r, &["family.parameters", "family.product_size", "family.product_recognized", "family.grid_quads"], &mut p);
    Ok(outcome(p, "63 points, order (2,2), t' = 1, decomposition recovered"))
}

fn c8_aut(w: &Workbench) -> Result<Outcome, String> {
    let r = w.aut_report().map_err(|e| e.to_string())?;
    let mut p = Vec::new();
    require(
        &r,
        &["aut.collinearity_order", "aut.conjugation_injective", "aut.conjugation_onto", "aut.triangles_in_lines"],
        &mut p,
    );
    Ok(outcome(p, "|Aut| = 80640, conjugation action faithful and onto"))
}

fn c9_gewirtz(w: &Workbench) -> Result<Outcome, String> {
    let (r, _) = w.gewirtz_report().map_err(|e| e.to_string())?;
    let mut p = Vec::new();
    require(
        &r,
        &[
            "gewirtz.srg",
            "gewirtz.aut_order",
            "eight_sets.count",
            "eight_sets.two_squares",
            "eight_sets.pointwise_stabilizer",
        ],
        &mut p,
    );
    let gw = w.gewirtz().map_err(|e| e.to_string())?;
    expect("srg by counting", srg_by_counting(&gw.graph), Some((56, 10, 0, 2)), &mut p);
    expect("|Aut|", w.gewirtz_aut().map_err(|e| e.to_string())?.order(), 80640, &mut p);
    Ok(outcome(p, "srg(56,10,0,2), |Aut| = 80640, 315 special 8-sets"))
}

fn c10_subconstituent(w: &Workbench) -> Result<Outcome, String> {
    let (r, table) = w.gewirtz_report().map_err(|e| e.to_string())?;
    let mut p = Vec::new();
    require(
        &r,
        &["subconstituent.octagon_isomorphic", "subconstituent.intersection_array", "subconstituent.intersection_column"],
        &mut p,
    );
    match table {
        Some(t) => {
            let observed: Vec<Vec<usize>> = t.rows.iter().map(|r| r.observed.clone()).collect();
            let expected: Vec<Vec<usize>> = [8, 0, 4, 0, 2, 0, 2, 1].iter().map(|&k| vec![k]).collect();
            expect("|X∩X| column", observed, expected, &mut p);
        }
        None => p.push("no intersection table".into()),
    }
    Ok(outcome(p, "surrogate graph {32,27,8,1;1,4,27,32}, column (8,0,4,0,2,0,2,1)"))
}

type Criterion = fn(&Workbench) -> Result<Outcome, String>;

fn main() -> ExitCode {
    // Accept and ignore libtest arguments such as --nocapture.
    let criteria: [(&str, Criterion, Duration); 10] = [
        ("group construction", c1_group, Duration::from_secs(30)),
        ("central involutions", c2_involutions, Duration::from_secs(30)),
        ("near octagon", c3_octagon, Duration::from_secs(60)),
        ("suborbit diagram", c4_suborbits, Duration::from_secs(600)),
        ("quads and quotient hexagon", c5_quads, Duration::from_secs(120)),
        ("family checks on the octagon", c6_family, Duration::from_secs(600)),
        ("product instance", c7_product, Duration::from_secs(600)),
        ("collinearity automorphisms", c8_aut, Duration::from_secs(300)),
        ("gewirtz graph and 8-sets", c9_gewirtz, Duration::from_secs(600)),
        ("subconstituent surrogate", c10_subconstituent, Duration::from_secs(600)),
    ];
    let w = Workbench::new(Config::default());
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = run(&w);
        let elapsed = t.elapsed();
        let (ok, note) = match result {
            Ok(o) if elapsed > *limit => (false, format!("took {elapsed:.1?}, limit {limit:?}; {}", o.note)),
            Ok(o) => (o.ok, o.note),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        let mark = if ok { "PASS" } else { "FAIL" };
        println!("{mark}  {:>2}  {name:<30}  {elapsed:>8.2?}  {note}", i + 1);
    }
    println!("acceptance: {} passed, {failed} failed in {:.2?}", criteria.len() - failed, start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
