//! Permutations, enumerated permutation groups, and the semilinear model of
//! the collineation/correlation group of PG(2,4).

mod cache;
mod involution;
mod perm;
mod permgroup;
mod semilinear;

use thiserror::Error;

pub use cache::{cache_file_name, load_or_build, read_group, write_group, CacheOutcome, CACHE_FORMAT_VERSION};
pub use involution::{
    central_involutions, dihedral_type, triple_orbit_size, ConjugationAction, DihedralType,
};
pub use perm::Perm;
pub use permgroup::{
    orbit_under, orbits_of, stabilizer_generators, Domain, PermGroup, DEFAULT_ELEMENT_BUDGET,
};
pub use semilinear::{
    act_on_flag, build_group_g, build_group_l34, g_generators, is_correlation, l34_generators, line_slot, plane_domain,
    point_slot, semilinear_to_perm, sl3_generators, SemilinearDatum, PLANE_DEGREE,
};

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("image array is not a bijection")]
    NotABijection,
    #[error("domain of size {0} exceeds the u16 index range")]
    DomainTooLarge(usize),
    #[error("domain labels are not distinct")]
    DuplicateLabel,
    #[error("generator of degree {found} on a domain of size {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("closure exceeded the element budget of {0}")]
    BudgetExceeded(usize),
    #[error("permutation is not an element of the group")]
    NotAnElement,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix determinant is not 1")]
    DeterminantNotOne,
    #[error("expected two distinct involutions")]
    NotDistinctInvolutions,
    #[error("involutions do not commute")]
    NotCommuting,
    #[error("element set is not closed under conjugation")]
    NotConjugationClosed,
    #[error("group cache is corrupt: {0}")]
    CacheCorrupt(String),
    #[error("group cache i/o: {0}")]
    Io(#[from] std::io::Error),
}
