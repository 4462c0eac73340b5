use std::sync::OnceLock;

use proptest::prelude::*;

use octalab::family::{build_product, check_family, fano_flag_geometry, recognize_product};
use octalab::group::{read_group, write_group, Perm};
use octalab::incidence::{Geometry, Spread};
use octalab::report::Report;
use octalab::workbench::{Config, Workbench};

fn bench() -> &'static Workbench {
    static W: OnceLock<Workbench> = OnceLock::new();
    W.get_or_init(|| Workbench::new(Config::default()))
}

fn word(gens: &[Perm], letters: &[usize]) -> Perm {
    letters.iter().fold(Perm::identity(gens[0].degree()), |acc, &i| acc.then(&gens[i % gens.len()]))
}

fn relabel(g: &Geometry, spread: &Spread, perm: &[u32]) -> (Geometry, Spread) {
    let lines = g.lines().iter().map(|l| l.iter().map(|&p| perm[p as usize]).collect()).collect();
    let h = Geometry::new(g.num_points(), lines).unwrap();
    let fibers = spread
        .lines()
        .iter()
        .map(|&l| {
            let image: Vec<u32> = g.line(l as usize).iter().map(|&p| perm[p as usize]).collect();
            h.find_line(&image).unwrap() as u32
        })
        .collect();
    let s = Spread::new(&h, fibers).unwrap();
    (h, s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugation_preserves_distance(letters in proptest::collection::vec(0usize..8, 1..10), a in 0usize..315, b in 0usize..315) {
        let o = bench().octagon().unwrap();
        let h = word(o.action.generator_actions(), &letters);
        let g = &o.geometry;
        prop_assert_eq!(g.distance(a, b), g.distance(h.apply(a), h.apply(b)));
    }

    #[test]
    fn conjugates_of_central_involutions_are_central(i in 0usize..315, k in 0usize..80640) {
        let o = bench().octagon().unwrap();
        let g = bench().group().unwrap().element(k);
        let y = o.involution(i).conjugate_by(g);
        prop_assert!(o.action.index_of(&y).is_some());
    }

    #[test]
    fn fixed_sets_are_equivariant(i in 0usize..315, k in 0usize..80640) {
        let o = bench().gewirtz_octagon().unwrap();
        let aut = bench().gewirtz_aut().unwrap();
        let a = aut.element(k);
        let x = o.involution(i);
        let mut image: Vec<usize> = x.fixed_points().into_iter().map(|v| a.apply(v)).collect();
        image.sort_unstable();
        prop_assert_eq!(x.conjugate_by(a).fixed_points(), image);
    }

    #[test]
    fn report_json_round_trips(claims in proptest::collection::vec(("[a-z.]{1,12}", any::<bool>(), "\\PC{0,20}"), 0..8)) {
        let mut r = Report::new("prop");
        for (tag, passed, detail) in &claims {
            r.check(tag, *passed, detail.clone());
        }
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let back = v["claims"].as_array().unwrap();
        prop_assert_eq!(back.len(), claims.len());
        for (c, (tag, passed, detail)) in back.iter().zip(&claims) {
            prop_assert_eq!(c["tag"].as_str().unwrap(), tag.as_str());
            prop_assert_eq!(c["passed"].as_bool().unwrap(), *passed);
            prop_assert_eq!(c["detail"].as_str().unwrap(), detail.as_str());
        }
        prop_assert_eq!(r.passed(), claims.iter().all(|c| c.1));
        prop_assert_eq!(r.to_text().lines().count(), claims.len() + 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn product_checks_survive_relabelling(perm in Just((0..63u32).collect::<Vec<_>>()).prop_shuffle()) {
        let (g, spread) = build_product(&fano_flag_geometry(), 3);
        let (h, s) = relabel(&g, &spread, &perm);
        let r = check_family(&h, &s, 1);
        prop_assert!(r.passed(), "{}", r.report.to_text());
        let d = recognize_product(&h, &s).unwrap();
        prop_assert_eq!(d.layers.iter().map(Vec::len).collect::<Vec<_>>(), vec![21, 21, 21]);
    }
}

#[test]
fn group_cache_text_round_trips() {
    let g = bench().l34().unwrap();
    let back = read_group(&write_group(g)).unwrap();
    assert_eq!(back.order(), g.order());
    assert!(g.elements().all(|e| back.contains(e)));
    assert_eq!(write_group(&back), write_group(g));
}
