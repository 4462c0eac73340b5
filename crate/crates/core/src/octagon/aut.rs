use super::InvolutionGeometry;
use crate::graph::{automorphism_generators, automorphism_group, Graph};
use crate::group::{act_on_flag, Domain, Perm, PermGroup};
use crate::incidence::triangles_in_lines;
use crate::pg24::{Flag, Gf4, Mat3, Plane};
use crate::report::Report;

pub fn collinearity_graph(o: &InvolutionGeometry) -> Graph {
    let g = &o.geometry;
    Graph::from_fn(g.num_points(), |a, b| g.collinear(a, b))
}

/// The permutation of the 105 flags induced by the collineation `x ↦ m·x`.
pub fn flag_permutation(plane: &Plane, m: &Mat3) -> Option<Perm> {
    let dual = m.transpose().inverse()?;
    let images = plane
        .flags()
        .iter()
        .map(|f| {
            let point = plane.point_of(&m.mul_vec(&plane.point_coords(f.point)))?;
            let line = plane.line_of(&dual.mul_vec(&plane.line_coords(f.line)))?;
            plane.flag_index(Flag { point, line })
        })
        .collect::<Option<Vec<usize>>>()?;
    Perm::from_images(&images).ok()
}

/// Automorphisms of the collinearity graph against the conjugation action
/// of the source group and its action on flags.
pub fn aut_report(plane: &Plane, g: &PermGroup, o: &InvolutionGeometry, budget: usize) -> Report {
    let mut r = Report::new("aut");
    let graph = collinearity_graph(o);
    r.check_witness(
        "aut.triangles_in_lines",
        "every triangle of the collinearity graph lies in a line",
        triangles_in_lines(&o.geometry).err().map(|t| format!("{t:?}")),
    );
    let aut = match automorphism_group(&graph, None, budget) {
        Ok((_, group)) => {
            r.expect_eq("aut.collinearity_order", group.order(), 80640);
            Some(group)
        }
        Err(e) => {
            r.check_witness("aut.collinearity_order", "automorphism search", Some(e.to_string()));
            None
        }
    };

    let actions = o.action.generator_actions().to_vec();
    let bad = actions.iter().position(|h| !graph.is_automorphism(h));
    r.check_witness(
        "aut.conjugation_preserves_lines",
        "conjugation by each generator",
        bad.map(|i| format!("generator {i}")),
    );
    match PermGroup::closure(Domain::numbered(o.num_points()), actions, budget) {
        Ok(image) => {
            r.check(
                "aut.conjugation_injective",
                image.order() == g.order(),
                format!("image order {} for group order {}", image.order(), g.order()),
            );
            if let Some(aut) = &aut {
                let outside = aut.generators().iter().position(|h| !image.contains(h));
                r.check_witness(
                    "aut.conjugation_onto",
                    "automorphism generators lie in the image",
                    outside.map(|i| format!("generator {i}")),
                );
            }
        }
        Err(e) => {
            r.check_witness("aut.conjugation_injective", "image closure", Some(e.to_string()));
        }
    }

    let spread = o.spread();
    match spread {
        Ok(s) => {
            let colors: Vec<u32> = (0..o.num_points()).map(|p| s.member_of(p) as u32).collect();
            match automorphism_generators(&graph, Some(&colors)) {
                Ok(a) => r.expect_eq("aut.spread_fixing_trivial", a.order, 1),
                Err(e) => r.check_witness("aut.spread_fixing_trivial", "search", Some(e.to_string())),
            };
        }
        Err(e) => {
            r.check_witness("aut.spread_fixing_trivial", "spread", Some(e.to_string()));
        }
    }

    if g.degree() == 2 * plane.points().count() {
        let gens: Option<Vec<Perm>> = g
            .generators()
            .iter()
            .map(|h| {
                let images = (0..plane.flags().len()).map(|f| act_on_flag(plane, h, f)).collect::<Option<Vec<_>>>()?;
                Perm::from_images(&images).ok()
            })
            .collect();
        let flags = gens.and_then(|gens| PermGroup::closure(Domain::numbered(plane.flags().len()), gens, budget).ok());
        match flags {
            Some(fg) => {
                r.expect_eq("aut.flag_action_order", fg.order(), 80640);
                let homology = flag_permutation(plane, &Mat3::diag(Gf4::W, Gf4::ONE, Gf4::ONE));
                r.check(
                    "aut.homology_outside",
                    homology.is_some_and(|h| !h.is_identity() && !fg.contains(&h)),
                    "diag(w,1,1) acts on flags outside the group",
                );
            }
            None => {
                r.check_witness("aut.flag_action_order", "flag action", Some("not a flag action".into()));
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::model;
    use super::*;
    use crate::group::DEFAULT_ELEMENT_BUDGET;

    #[test]
    fn aut_checks_pass() {
        let m = model();
        let r = aut_report(&m.plane, &m.group, &m.octagon, DEFAULT_ELEMENT_BUDGET);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn identity_matrix_fixes_flags() {
        let plane = Plane::new();
        assert!(flag_permutation(&plane, &Mat3::identity()).unwrap().is_identity());
    }
}
