use std::collections::VecDeque;
use std::hash::Hash;

use indexmap::IndexSet;

use super::{GroupError, Perm};

pub const DEFAULT_ELEMENT_BUDGET: usize = 1_000_000;

/// Ordered labels of the set a group acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    labels: Vec<String>,
}

impl Domain {
    pub fn new(labels: Vec<String>) -> Result<Domain, GroupError> {
        let set: IndexSet<&String> = labels.iter().collect();
        if set.len() != labels.len() {
            return Err(GroupError::DuplicateLabel);
        }
        Ok(Domain { labels })
    }

    /// Labels `0..n`.
    pub fn numbered(n: usize) -> Domain {
        Domain { labels: (0..n).map(|i| i.to_string()).collect() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// A fully enumerated permutation group.
///
/// Element order is the breadth-first order in which closure discovered the
/// elements; it is deterministic given the generator list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    domain: Domain,
    generators: Vec<Perm>,
    elements: IndexSet<Perm>,
}

impl PermGroup {
    /// Breadth-first closure of `generators` under right multiplication.
    pub fn closure(domain: Domain, generators: Vec<Perm>, budget: usize) -> Result<PermGroup, GroupError> {
        let n = domain.len();
        if let Some(g) = generators.iter().find(|g| g.degree() != n) {
            return Err(GroupError::DegreeMismatch { expected: n, found: g.degree() });
        }
        let mut elements = IndexSet::new();
        elements.insert(Perm::identity(n));
        let mut i = 0;
        while i < elements.len() {
            let e = elements[i].clone();
            for g in &generators {
                let p = e.then(g);
                if !elements.contains(&p) {
                    if elements.len() >= budget {
                        return Err(GroupError::BudgetExceeded(budget));
                    }
                    elements.insert(p);
                }
            }
            i += 1;
        }
        Ok(PermGroup { domain, generators, elements })
    }

    /// Rebuild from a stored element list (see the cache module).
    pub(crate) fn from_parts(domain: Domain, generators: Vec<Perm>, elements: IndexSet<Perm>) -> PermGroup {
        PermGroup { domain, generators, elements }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn degree(&self) -> usize {
        self.domain.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = &Perm> {
        self.elements.iter()
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.elements.contains(g)
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.elements.get_index_of(g)
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree())
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut orbit: Vec<usize> = orbit_under(&self.generators, point, |&x, g| g.apply(x))
            .into_iter()
            .collect();
        orbit.sort_unstable();
        orbit
    }

    /// Orbits on the domain, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(&self.generators, self.degree())
    }

    /// The conjugacy class of `g`, in discovery order.
    pub fn conjugacy_class(&self, g: &Perm) -> Result<IndexSet<Perm>, GroupError> {
        if !self.contains(g) {
            return Err(GroupError::NotAnElement);
        }
        Ok(orbit_under(&self.generators, g.clone(), |x, h| x.conjugate_by(h)))
    }

    pub fn centralizer_order(&self, g: &Perm) -> Result<usize, GroupError> {
        Ok(self.order() / self.conjugacy_class(g)?.len())
    }

    /// Whether `sub` is a normal subgroup: contained in `self` and closed
    /// under conjugation by the generators of `self`.
    pub fn is_normal_subgroup(&self, sub: &PermGroup) -> bool {
        sub.elements().all(|s| self.contains(s))
            && sub
                .generators()
                .iter()
                .all(|s| self.generators.iter().all(|h| sub.contains(&s.conjugate_by(h))))
    }
}

/// Orbit of `seed` under the group generated by `gens`, for an arbitrary right action.
pub fn orbit_under<T, F>(gens: &[Perm], seed: T, act: F) -> IndexSet<T>
where
    T: Hash + Eq + Clone,
    F: Fn(&T, &Perm) -> T,
{
    let mut orbit = IndexSet::new();
    orbit.insert(seed);
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i].clone();
        for g in gens {
            orbit.insert(act(&x, g));
        }
        i += 1;
    }
    orbit
}

/// Point orbits of the group generated by `gens` on `0..n`.
pub fn orbits_of(gens: &[Perm], n: usize) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![start];
        label[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.apply(x);
                if label[y] == usize::MAX {
                    label[y] = id;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Schreier generators for the stabilizer of `point` in `⟨gens⟩`, deduplicated
/// and with the identity removed.
pub fn stabilizer_generators(gens: &[Perm], point: usize) -> Vec<Perm> {
    let n = gens.first().map_or(0, Perm::degree);
    // transversal[y] maps point to y
    let mut transversal: Vec<Option<Perm>> = vec![None; n];
    transversal[point] = Some(Perm::identity(n));
    let mut queue = VecDeque::from([point]);
    let mut order = vec![point];
    while let Some(x) = queue.pop_front() {
        let tx = transversal[x].clone().unwrap();
        for g in gens {
            let y = g.apply(x);
            if transversal[y].is_none() {
                transversal[y] = Some(tx.then(g));
                queue.push_back(y);
                order.push(y);
            }
        }
    }
    let mut out: IndexSet<Perm> = IndexSet::new();
    for &x in &order {
        let tx = transversal[x].as_ref().unwrap();
        for g in gens {
            let y = g.apply(x);
            let s = tx.then(g).then(&transversal[y].as_ref().unwrap().inverse());
            if !s.is_identity() {
                out.insert(s);
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> PermGroup {
        let mut cyc: Vec<usize> = (1..n).collect();
        cyc.push(0);
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        PermGroup::closure(
            Domain::numbered(n),
            vec![Perm::from_images(&cyc).unwrap(), Perm::from_images(&swap).unwrap()],
            DEFAULT_ELEMENT_BUDGET,
        )
        .unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        assert_eq!(sym(4).order(), 24);
        assert_eq!(sym(5).order(), 120);
    }

    #[test]
    fn classes_of_s4() {
        let g = sym(4);
        let id = g.identity();
        assert_eq!(g.conjugacy_class(&id).unwrap().len(), 1);
        let t = Perm::from_images(&[1, 0, 2, 3]).unwrap();
        assert_eq!(g.conjugacy_class(&t).unwrap().len(), 6);
        assert_eq!(g.centralizer_order(&t).unwrap(), 4);
        let dt = Perm::from_images(&[1, 0, 3, 2]).unwrap();
        assert_eq!(g.conjugacy_class(&dt).unwrap().len(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let err = PermGroup::closure(
            Domain::numbered(5),
            sym(5).generators().to_vec(),
            50,
        )
        .unwrap_err();
        assert!(matches!(err, GroupError::BudgetExceeded(50)));
    }

    #[test]
    fn schreier_generators_generate_stabilizer() {
        let g = sym(5);
        let stab = stabilizer_generators(g.generators(), 0);
        let h = PermGroup::closure(Domain::numbered(5), stab, 1000).unwrap();
        assert_eq!(h.order(), 24);
        assert!(h.elements().all(|p| p.apply(0) == 0));
    }

    #[test]
    fn non_member_rejected() {
        let g = PermGroup::closure(
            Domain::numbered(3),
            vec![Perm::from_images(&[1, 2, 0]).unwrap()],
            10,
        )
        .unwrap();
        let t = Perm::from_images(&[1, 0, 2]).unwrap();
        assert!(matches!(g.conjugacy_class(&t), Err(GroupError::NotAnElement)));
    }
}
