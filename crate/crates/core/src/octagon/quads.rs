use std::collections::BTreeSet;

use super::{involution_flags, InvolutionGeometry};
use crate::incidence::{
    find_quads, flag_geometry, geometry_isomorphism, order_of, quotient_geometry, spread_from_quads,
    verify_generalized_polygon, Geometry, Order,
};
use crate::pg24::Plane;
use crate::report::Report;

/// PG(2,4) as a geometry, plus the geometry line index of each plane line.
pub fn plane_geometry(plane: &Plane) -> (Geometry, Vec<usize>) {
    let lines: Vec<Vec<u32>> =
        plane.lines().map(|l| plane.points_on(l).iter().map(|p| p.0 as u32).collect()).collect();
    let g = Geometry::new(plane.points().count(), lines.clone()).expect("projective plane");
    let slot = lines
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort_unstable();
            g.find_line(&l).expect("line present")
        })
        .collect();
    (g, slot)
}

/// Quads, the spread they define, and the quotient hexagon, including its
/// identification with the flags of PG(2,4) via the elations' flags.
pub fn quads_report(plane: &Plane, o: &InvolutionGeometry) -> Report {
    let mut r = Report::new("quads");
    let g = &o.geometry;
    let quads = match find_quads(g) {
        Ok(q) => q,
        Err(e) => {
            r.check_witness("quads.count", "quad detection", Some(e.to_string()));
            return r;
        }
    };
    r.expect_eq("quads.count", quads.len(), 42);
    let bad = quads.iter().find(|q| q.points.len() != 15 || q.order != Order { s: 2, t: 2 });
    r.check_witness(
        "quads.order",
        "15 points, order (2,2)",
        bad.map(|q| format!("quad through {}: {} points, {:?}", q.points[0], q.points.len(), q.order)),
    );
    let through: Vec<Vec<usize>> =
        (0..g.num_points()).map(|x| (0..quads.len()).filter(|&q| quads[q].contains(x)).collect()).collect();
    let bad = through.iter().position(|v| v.len() != 2);
    r.check_witness("quads.per_point", "2 quads through every point", bad.map(|x| format!("point {x}: {}", through[x].len())));

    let spread = match spread_from_quads(g, &quads) {
        Ok(s) => s,
        Err(e) => {
            r.check_witness("quads.spread_size", "lines in two quads", Some(e.to_string()));
            return r;
        }
    };
    r.expect_eq("quads.spread_size", spread.len(), 105);
    let by_class = o.spread().map(|s| s.lines().to_vec()).ok();
    r.check(
        "quads.spread_is_smallest_class",
        by_class.as_deref() == Some(spread.lines()),
        format!("lines in two quads = triples of class size {}", o.admissible[0]),
    );
    let bad = (0..g.num_points()).find(|&x| {
        let [a, b] = [through[x].first(), through[x].get(1)].map(|q| q.map(|&q| &quads[q].points));
        match (a, b) {
            (Some(a), Some(b)) => {
                let common: Vec<u32> = a.iter().filter(|p| b.binary_search(p).is_ok()).copied().collect();
                common != g.line(spread.line_of(x))
            }
            _ => true,
        }
    });
    r.check_witness(
        "quads.meet_in_spread_line",
        "the two quads through x meet in its spread line",
        bad.map(|x| format!("point {x}")),
    );
    let bad = quads.iter().find(|q| {
        let inside: Vec<u32> = q.lines.iter().copied().filter(|&l| spread.contains_line(l as usize)).collect();
        let covered: BTreeSet<u32> = inside.iter().flat_map(|&l| g.line(l as usize).iter().copied()).collect();
        inside.len() != 5 || covered.len() != 15
    });
    r.check_witness(
        "quads.quad_spreads",
        "5 spread lines partition each quad",
        bad.map(|q| format!("quad through {}", q.points[0])),
    );

    let quotient = match quotient_geometry(g, &spread, &quads) {
        Ok(q) => q,
        Err(e) => {
            r.check_witness("quads.quotient_order", "quotient", Some(e.to_string()));
            return r;
        }
    };
    match order_of(&quotient) {
        Ok(ord) => r.expect_eq("quads.quotient_order", ord, Order { s: 4, t: 1 }),
        Err(e) => r.check_witness("quads.quotient_order", "uniform order", Some(e.to_string())),
    };
    r.check_witness(
        "quads.quotient_hexagon",
        "generalized hexagon",
        verify_generalized_polygon(&quotient, 6).err().map(|e| e.to_string()),
    );

    let flags = match involution_flags(plane, o) {
        Ok(f) => f,
        Err(e) => {
            r.check_witness("quads.shared_flag", "elation flags", Some(e.to_string()));
            return r;
        }
    };
    let bad = spread.lines().iter().find(|&&l| {
        let line = g.line(l as usize);
        line.iter().any(|&p| flags[p as usize] != flags[line[0] as usize])
    });
    r.check_witness(
        "quads.shared_flag",
        "the involutions on a spread line share centre and axis",
        bad.map(|l| format!("spread line {l}")),
    );

    let (pg, slot) = plane_geometry(plane);
    let (hexagon, hex_flags) = flag_geometry(&pg);
    // Quotient point i is spread line i; send it to the flag of its involutions.
    let flag_map: Vec<u32> = spread
        .lines()
        .iter()
        .map(|&l| {
            let f = plane.flags()[flags[g.line(l as usize)[0] as usize]];
            let key = (f.point.0 as u32, slot[f.line.0 as usize] as u32);
            hex_flags.binary_search(&key).expect("flag present") as u32
        })
        .collect();
    let direct = bad.is_none()
        && flag_map.iter().copied().collect::<BTreeSet<_>>().len() == flag_map.len()
        && quotient.lines().iter().all(|l| {
            let image: Vec<u32> = l.iter().map(|&p| flag_map[p as usize]).collect();
            hexagon.find_line(&image).is_some()
        });
    if direct {
        r.check("quads.flag_isomorphism", true, "spread line to shared flag");
    } else {
        let generic = geometry_isomorphism(&quotient, &hexagon).is_some();
        r.check("quads.flag_isomorphism", generic, "generic isomorphism search");
    }

    // Each quad's spread lines form the pencil of a point or of a line.
    let mut pencils: BTreeSet<(bool, u8)> = BTreeSet::new();
    let mut witness = None;
    for q in &quads {
        let fl: Vec<_> = q
            .lines
            .iter()
            .filter(|&&l| spread.contains_line(l as usize))
            .map(|&l| plane.flags()[flags[g.line(l as usize)[0] as usize]])
            .collect();
        if fl.iter().all(|f| f.point == fl[0].point) {
            pencils.insert((false, fl[0].point.0));
        } else if fl.iter().all(|f| f.line == fl[0].line) {
            pencils.insert((true, fl[0].line.0));
        } else {
            witness.get_or_insert(format!("quad through {}", q.points[0]));
        }
    }
    let points = pencils.iter().filter(|p| !p.0).count();
    let lines = pencils.len() - points;
    if witness.is_none() && (points, lines) != (21, 21) {
        witness = Some(format!("{points} point pencils, {lines} line pencils"));
    }
    r.check_witness("quads.plane_image", "quads onto the 21 points and 21 lines", witness);
    r
}
