//! Lazily built shared objects and the check suites run over them.

use std::path::PathBuf;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::family::{build_product, check_family, fano_flag_geometry, recognize_product};
use crate::gewirtz::{
    build_gewirtz, eight_set_report, gewirtz_report, special_eight_sets, subconstituent_report, GewirtzError,
    GewirtzGraph, IntersectionTable,
};
use crate::graph::{automorphism_generators, automorphism_group, GraphError};
use crate::group::{
    act_on_flag, central_involutions, g_generators, l34_generators, load_or_build, orbit_under, plane_domain,
    CacheOutcome, GroupError, Perm, PermGroup, DEFAULT_ELEMENT_BUDGET,
};
use crate::incidence::GeometryError;
use crate::octagon::{
    aut_report, build_octagon, collinearity_graph, elation_report, embedded_fixture, octagon_report, quads_report,
    suborbit_report, InvolutionGeometry, OctagonError, SuborbitComparison,
};
use crate::pg24::Plane;
use crate::report::Report;

#[derive(Debug, Error)]
pub enum WorkbenchError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Octagon(#[from] OctagonError),
    #[error(transparent)]
    Gewirtz(#[from] GewirtzError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Directory for enumerated groups; `None` disables caching.
    pub cache_dir: Option<PathBuf>,
    pub budget: usize,
    /// Seed for the relabelling checks.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Config {
        Config { cache_dir: None, budget: DEFAULT_ELEMENT_BUDGET, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Instance {
    Octagon,
    Product,
}

impl FromStr for Instance {
    type Err = String;

    fn from_str(s: &str) -> Result<Instance, String> {
        match s {
            "o2" => Ok(Instance::Octagon),
            "product" => Ok(Instance::Product),
            _ => Err(format!("unknown instance {s:?} (expected o2 or product)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Group,
    Octagon,
    Suborbits,
    Quads,
    Family(Option<Instance>),
    Aut,
    Gewirtz,
    All,
}

fn get_or_try<T>(cell: &OnceLock<T>, f: impl FnOnce() -> Result<T, WorkbenchError>) -> Result<&T, WorkbenchError> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = f()?;
    Ok(cell.get_or_init(|| v))
}

pub struct Workbench {
    config: Config,
    plane: Plane,
    l34: OnceLock<PermGroup>,
    g: OnceLock<PermGroup>,
    octagon: OnceLock<InvolutionGeometry>,
    gewirtz: OnceLock<GewirtzGraph>,
    gewirtz_aut: OnceLock<PermGroup>,
    gewirtz_octagon: OnceLock<InvolutionGeometry>,
    warnings: Mutex<Vec<String>>,
}

impl Workbench {
    pub fn new(config: Config) -> Workbench {
        Workbench {
            config,
            plane: Plane::new(),
            l34: OnceLock::new(),
            g: OnceLock::new(),
            octagon: OnceLock::new(),
            gewirtz: OnceLock::new(),
            gewirtz_aut: OnceLock::new(),
            gewirtz_octagon: OnceLock::new(),
            warnings: Mutex::new(Vec::new()),
        }
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn plane(&self) -> &Plane {
        &self.plane
    }

    /// Messages about rebuilt caches, in the order they occurred.
    pub fn warnings(&self) -> Vec<String> {
        self.warnings.lock().expect("warnings lock").clone()
    }

    fn cached_group(&self, gens: Vec<Perm>) -> Result<PermGroup, WorkbenchError> {
        let (g, outcome) = load_or_build(self.config.cache_dir.as_deref(), plane_domain(), gens, self.config.budget)?;
        if let CacheOutcome::Rebuilt { path, reason } = outcome {
            self.warnings
                .lock()
                .expect("warnings lock")
                .push(format!("rebuilt group cache {}: {reason}", path.display()));
        }
        Ok(g)
    }

    pub fn l34(&self) -> Result<&PermGroup, WorkbenchError> {
        get_or_try(&self.l34, || self.cached_group(l34_generators(&self.plane)?))
    }

    pub fn group(&self) -> Result<&PermGroup, WorkbenchError> {
        get_or_try(&self.g, || self.cached_group(g_generators(&self.plane)?))
    }

    pub fn octagon(&self) -> Result<&InvolutionGeometry, WorkbenchError> {
        get_or_try(&self.octagon, || Ok(build_octagon(self.group()?, None)?))
    }

    pub fn gewirtz(&self) -> Result<&GewirtzGraph, WorkbenchError> {
        get_or_try(&self.gewirtz, || Ok(build_gewirtz(&self.plane, self.l34()?)?))
    }

    pub fn gewirtz_aut(&self) -> Result<&PermGroup, WorkbenchError> {
        get_or_try(&self.gewirtz_aut, || Ok(automorphism_group(&self.gewirtz()?.graph, None, self.config.budget)?.1))
    }

    /// The near octagon on the central involutions of the Gewirtz graph's automorphism group.
    pub fn gewirtz_octagon(&self) -> Result<&InvolutionGeometry, WorkbenchError> {
        get_or_try(&self.gewirtz_octagon, || Ok(build_octagon(self.gewirtz_aut()?, None)?))
    }

    pub fn group_report(&self) -> Result<Report, WorkbenchError> {
        let mut r = Report::new("group");
        let l34 = self.l34()?;
        let g = self.group()?;
        r.expect_eq("group.l34_order", l34.order(), 20160);
        r.expect_eq("group.order", g.order(), 80640);
        r.check("group.l34_normal", g.is_normal_subgroup(l34), "L3(4) is normal");
        let bad = g.elements().position(|e| !l34.contains(&e.then(e)));
        r.check_witness("group.quotient_exponent_2", "g² ∈ L3(4) for every g", bad.map(|i| format!("element {i}")));
        let flags = orbit_under(g.generators(), 0usize, |&f, h| act_on_flag(&self.plane, h, f).expect("flag image"));
        r.expect_eq("group.flag_orbit", flags.len(), 105);

        let invs = central_involutions(g);
        r.expect_eq("group.central_involutions", invs.len(), 315);
        let class = invs.first().map(|x| g.conjugacy_class(x)).transpose()?;
        r.check(
            "group.single_class",
            class.as_ref().is_some_and(|c| c.len() == invs.len() && invs.iter().all(|x| c.contains(x))),
            "one conjugacy class",
        );
        let bad = invs.iter().position(|x| g.centralizer_order(x).ok() != Some(256));
        r.check_witness("group.centralizer_order", "256 for every central involution", bad.map(|i| format!("involution {i}")));
        let bad = invs.iter().position(|x| !l34.contains(x));
        r.check_witness("group.involutions_in_l34", "inside L3(4)", bad.map(|i| format!("involution {i}")));
        Ok(r)
    }

    pub fn octagon_report(&self) -> Result<Report, WorkbenchError> {
        let o = self.octagon()?;
        let mut r = octagon_report(o);
        r.extend(elation_report(&self.plane, self.group()?, o));
        r.suite = "octagon".into();
        Ok(r)
    }

    pub fn suborbits(&self) -> Result<SuborbitComparison, WorkbenchError> {
        Ok(suborbit_report(self.octagon()?, 0, &embedded_fixture())?)
    }

    pub fn quads_report(&self) -> Result<Report, WorkbenchError> {
        Ok(quads_report(&self.plane, self.octagon()?))
    }

    pub fn family_report(&self, instance: Instance) -> Result<Report, WorkbenchError> {
        match instance {
            Instance::Octagon => {
                let o = self.octagon()?;
                let spread = o.spread()?;
                let mut r = check_family(&o.geometry, &spread, 2).report;
                r.suite = "family o2".into();
                let wrong = check_family(&o.geometry, &spread, 1).report;
                let p1 = wrong.claim("family.p1");
                r.check_witness(
                    "family.wrong_t_prime_rejected",
                    "t' = 1 fails the first axiom",
                    match p1 {
                        Some(c) if !c.passed => None,
                        _ => Some("passed".into()),
                    },
                );
                Ok(r)
            }
            Instance::Product => {
                let (g, spread) = build_product(&fano_flag_geometry(), 3);
                let fam = check_family(&g, &spread, 1);
                let mut r = fam.report;
                r.suite = "family product".into();
                r.expect_eq(
                    "family.product_size",
                    (g.num_points(), spread.len(), fam.parameters.map(|p| (p.s, p.t, p.t_prime))),
                    (63, 21, Some((2, 2, 1))),
                );
                match recognize_product(&g, &spread) {
                    Ok(d) => r.expect_eq(
                        "family.product_recognized",
                        d.layers.iter().map(Vec::len).collect::<Vec<_>>(),
                        vec![21, 21, 21],
                    ),
                    Err(e) => r.check_witness("family.product_recognized", "decomposition", Some(e.to_string())),
                };
                Ok(r)
            }
        }
    }

    pub fn aut_report(&self) -> Result<Report, WorkbenchError> {
        let o = self.octagon()?;
        let mut r = aut_report(&self.plane, self.group()?, o, self.config.budget);
        let graph = collinearity_graph(o);
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        let mut images: Vec<usize> = (0..graph.order()).collect();
        images.shuffle(&mut rng);
        let relabelled = graph.relabel(&Perm::from_images(&images)?);
        let order = automorphism_generators(&relabelled, None)?.order;
        r.expect_eq("aut.relabel_invariant", order, 80640);
        Ok(r)
    }

    pub fn gewirtz_report(&self) -> Result<(Report, Option<IntersectionTable>), WorkbenchError> {
        let gw = self.gewirtz()?;
        let aut = self.gewirtz_aut()?;
        let o = self.gewirtz_octagon()?;
        let mut r = gewirtz_report(gw, aut);
        let sets = special_eight_sets(o.action.elements());
        r.extend(eight_set_report(&gw.graph, aut, o.action.elements(), &sets));
        let (sub, table) = subconstituent_report(self.octagon()?, o, &sets);
        r.extend(sub);
        Ok((r, table))
    }

    /// Every claim of a suite, failing with an error only when an object
    /// cannot be built at all.
    pub fn run(&self, suite: Suite) -> Result<Vec<Report>, WorkbenchError> {
        Ok(match suite {
            Suite::Group => vec![self.group_report()?],
            Suite::Octagon => vec![self.octagon_report()?],
            Suite::Suborbits => vec![self.suborbits()?.report],
            Suite::Quads => vec![self.quads_report()?],
            Suite::Family(Some(i)) => vec![self.family_report(i)?],
            Suite::Family(None) => {
                vec![self.family_report(Instance::Octagon)?, self.family_report(Instance::Product)?]
            }
            Suite::Aut => vec![self.aut_report()?],
            Suite::Gewirtz => vec![self.gewirtz_report()?.0],
            Suite::All => {
                let mut out = Vec::new();
                for s in [
                    Suite::Group,
                    Suite::Octagon,
                    Suite::Suborbits,
                    Suite::Quads,
                    Suite::Family(None),
                    Suite::Aut,
                    Suite::Gewirtz,
                ] {
                    out.extend(self.run(s)?);
                }
                out
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_suite_passes() {
        let w = Workbench::new(Config::default());
        let r = w.group_report().unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn instance_names() {
        assert_eq!("o2".parse::<Instance>(), Ok(Instance::Octagon));
        assert_eq!("product".parse::<Instance>(), Ok(Instance::Product));
        assert!("x".parse::<Instance>().is_err());
    }

    #[test]
    fn cache_is_used() {
        let dir = tempfile::tempdir().unwrap();
        let config = Config { cache_dir: Some(dir.path().to_path_buf()), ..Config::default() };
        let first = Workbench::new(config.clone());
        let a = first.l34().unwrap().order();
        let second = Workbench::new(config);
        assert_eq!(second.l34().unwrap().order(), a);
        assert!(second.warnings().is_empty());
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
