//! Central involutions, the conjugation action on them, and the groups
//! generated by pairs of involutions.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{orbit_under, GroupError, Perm, PermGroup};

fn two_adic_valuation(mut n: usize) -> u32 {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(2) {
        n /= 2;
        v += 1;
    }
    v
}

/// All involutions whose centralizer contains a Sylow 2-subgroup, i.e. whose
/// centralizer order has the same 2-part as the group order.
///
/// Output is ordered by position in the group's element list.
pub fn central_involutions(g: &PermGroup) -> Vec<Perm> {
    let target = two_adic_valuation(g.order());
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for (i, e) in g.elements().enumerate() {
        if seen[i] || e.is_identity() || !e.then(e).is_identity() {
            continue;
        }
        let class = g.conjugacy_class(e).expect("element of g");
        for c in &class {
            seen[g.index_of(c).expect("class inside g")] = true;
        }
        let centralizer = g.order() / class.len();
        if two_adic_valuation(centralizer) == target {
            out.extend(class);
        }
    }
    out.sort_by_key(|p| g.index_of(p));
    out
}

/// The conjugation action of a group on a conjugation-closed set of its elements.
#[derive(Clone, Debug)]
pub struct ConjugationAction {
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    generator_actions: Vec<Perm>,
}

impl ConjugationAction {
    pub fn new(g: &PermGroup, elements: Vec<Perm>) -> Result<ConjugationAction, GroupError> {
        let index: HashMap<Perm, u32> =
            elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let mut generator_actions = Vec::with_capacity(g.generators().len());
        for h in g.generators() {
            let images = elements
                .iter()
                .map(|x| index.get(&x.conjugate_by(h)).map(|&i| i as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or(GroupError::NotConjugationClosed)?;
            generator_actions.push(Perm::from_images(&images)?);
        }
        Ok(ConjugationAction { elements, index, generator_actions })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    /// Generators of the induced permutation group on element indices.
    pub fn generator_actions(&self) -> &[Perm] {
        &self.generator_actions
    }

    /// Index of the product `x_i · x_j`, when it lies in the set.
    pub fn product_index(&self, i: usize, j: usize) -> Option<usize> {
        self.index_of(&self.elements[i].then(&self.elements[j]))
    }

    /// Orbit size of the unordered index set under the induced action.
    pub fn set_orbit_size(&self, set: &[u32]) -> usize {
        let mut seed = set.to_vec();
        seed.sort_unstable();
        orbit_under(&self.generator_actions, seed, |s, g| {
            let mut t: Vec<u32> = s.iter().map(|&x| g.apply(x as usize) as u32).collect();
            t.sort_unstable();
            t
        })
        .len()
    }
}

/// `[G : N_G(⟨x, y⟩)]`, computed as the orbit size of `{x, y, xy}` under conjugation.
pub fn triple_orbit_size(x: &Perm, y: &Perm, g: &PermGroup) -> Result<usize, GroupError> {
    let is_involution = |p: &Perm| !p.is_identity() && p.then(p).is_identity();
    if x == y || !is_involution(x) || !is_involution(y) {
        return Err(GroupError::NotDistinctInvolutions);
    }
    if !x.commutes_with(y) {
        return Err(GroupError::NotCommuting);
    }
    if !g.contains(x) || !g.contains(y) {
        return Err(GroupError::NotAnElement);
    }
    let mut seed = vec![x.clone(), y.clone(), x.then(y)];
    seed.sort();
    Ok(orbit_under(g.generators(), seed, |s, h| {
        let mut t: Vec<Perm> = s.iter().map(|p| p.conjugate_by(h)).collect();
        t.sort();
        t
    })
    .len())
}

/// Isomorphism type of a group generated by two involutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DihedralType {
    /// `x = y`.
    Cyclic2,
    /// Commuting distinct involutions.
    Klein,
    /// Dihedral of order `2n`, with `n = order(xy) ≥ 3`.
    Dihedral(usize),
}

impl fmt::Display for DihedralType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DihedralType::Cyclic2 => write!(f, "C2"),
            DihedralType::Klein => write!(f, "C2xC2"),
            DihedralType::Dihedral(3) => write!(f, "S3"),
            DihedralType::Dihedral(n) => write!(f, "D{}", 2 * n),
        }
    }
}

impl std::str::FromStr for DihedralType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "C2" => Ok(DihedralType::Cyclic2),
            "C2xC2" => Ok(DihedralType::Klein),
            "S3" => Ok(DihedralType::Dihedral(3)),
            _ => s
                .strip_prefix('D')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|n| n % 2 == 0 && *n >= 6)
                .map(|n| DihedralType::Dihedral(n / 2))
                .ok_or_else(|| format!("unknown group type {s:?}")),
        }
    }
}

pub fn dihedral_type(x: &Perm, y: &Perm) -> DihedralType {
    match x.then(y).order() {
        1 => DihedralType::Cyclic2,
        2 => DihedralType::Klein,
        n => DihedralType::Dihedral(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_names() {
        let a = Perm::from_images(&[1, 0, 2, 3, 4]).unwrap();
        let b = Perm::from_images(&[0, 2, 1, 3, 4]).unwrap();
        assert_eq!(dihedral_type(&a, &b).to_string(), "S3");
        assert_eq!(dihedral_type(&a, &a).to_string(), "C2");
        let c = Perm::from_images(&[0, 1, 2, 4, 3]).unwrap();
        assert_eq!(dihedral_type(&a, &c), DihedralType::Klein);
        for t in ["C2", "C2xC2", "S3", "D8", "D10"] {
            assert_eq!(t.parse::<DihedralType>().unwrap().to_string(), t);
        }
    }

    #[test]
    fn valuation() {
        assert_eq!(two_adic_valuation(80640), 8);
        assert_eq!(two_adic_valuation(256), 8);
        assert_eq!(two_adic_valuation(315), 0);
    }

    mod plane_group {
        use super::super::*;
        use crate::group::{act_on_flag, build_group_g, DEFAULT_ELEMENT_BUDGET};
        use crate::pg24::{Plane, NUM_FLAGS, NUM_POINTS};
        use std::collections::BTreeMap;
        use std::sync::OnceLock;

        fn g() -> &'static (Plane, PermGroup, Vec<Perm>) {
            static G: OnceLock<(Plane, PermGroup, Vec<Perm>)> = OnceLock::new();
            G.get_or_init(|| {
                let plane = Plane::new();
                let g = build_group_g(&plane, DEFAULT_ELEMENT_BUDGET).unwrap();
                let inv = central_involutions(&g);
                (plane, g, inv)
            })
        }

        #[test]
        fn three_hundred_fifteen_elations() {
            let (_, g, inv) = g();
            assert_eq!(g.order(), 80640);
            assert_eq!(inv.len(), 315);
            assert_eq!(g.conjugacy_class(&inv[0]).unwrap().len(), 315);
            for x in inv.iter().take(20) {
                assert_eq!(g.centralizer_order(x).unwrap(), 256);
                // collineation fixing 5 points and 5 lines
                assert!(x.apply(0) < NUM_POINTS);
                assert_eq!(x.fixed_points().len(), 10);
            }
        }

        #[test]
        fn triple_orbits() {
            let (_, g, inv) = g();
            let x = &inv[0];
            let mut sizes = BTreeMap::new();
            for y in inv.iter().skip(1) {
                if x.commutes_with(y) {
                    *sizes.entry(triple_orbit_size(x, y, g).unwrap()).or_insert(0) += 1;
                }
            }
            let keys: Vec<usize> = sizes.keys().copied().collect();
            assert_eq!(keys, vec![105, 420, 840]);
            assert!(triple_orbit_size(x, x, g).is_err());
        }

        #[test]
        fn transitive_on_flags() {
            let (plane, g, _) = g();
            let gens: Vec<Perm> = g
                .generators()
                .iter()
                .map(|h| {
                    let im: Vec<usize> = (0..NUM_FLAGS).map(|f| act_on_flag(plane, h, f).unwrap()).collect();
                    Perm::from_images(&im).unwrap()
                })
                .collect();
            assert_eq!(orbits_of_flags(&gens).len(), 1);
        }

        fn orbits_of_flags(gens: &[Perm]) -> Vec<Vec<usize>> {
            crate::group::orbits_of(gens, NUM_FLAGS)
        }
    }
}
