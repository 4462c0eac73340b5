//! Collineations and correlations of PG(2,4) as permutations of the 42
//! points and lines.
//!
//! Domain layout: indices `0..21` are the points in canonical order, `21..42`
//! the lines. A line with dual coordinates `y` is incident with a point `x`
//! iff `x·y = 0`.

use crate::pg24::{frob_vec, Gf4, Mat3, Plane, ProjLine, ProjPoint, Vec3, NUM_POINTS};

use super::{Domain, GroupError, Perm, PermGroup};

pub const PLANE_DEGREE: usize = 2 * NUM_POINTS;

/// Matrix, field-automorphism flag and correlation flag of a semilinear map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SemilinearDatum {
    pub matrix: Mat3,
    /// Apply the Frobenius map to coordinates before the matrix.
    pub frobenius: bool,
    /// Swap the point and line blocks.
    pub correlation: bool,
}

impl SemilinearDatum {
    pub fn collineation(matrix: Mat3) -> SemilinearDatum {
        SemilinearDatum { matrix, frobenius: false, correlation: false }
    }

    pub fn frobenius() -> SemilinearDatum {
        SemilinearDatum { matrix: Mat3::identity(), frobenius: true, correlation: false }
    }

    pub fn duality() -> SemilinearDatum {
        SemilinearDatum { matrix: Mat3::identity(), frobenius: false, correlation: true }
    }

    /// The datum of `self` followed by `other`.
    pub fn then(&self, other: &SemilinearDatum) -> Option<SemilinearDatum> {
        let a = if other.frobenius { frob_mat(&self.matrix) } else { self.matrix };
        // `self` lands in the line block when it is a correlation, where
        // `other` acts through its dual matrix.
        let n = if self.correlation { other.matrix.transpose().inverse()? } else { other.matrix };
        Some(SemilinearDatum {
            matrix: n.mul(&a),
            frobenius: self.frobenius ^ other.frobenius,
            correlation: self.correlation ^ other.correlation,
        })
    }
}

fn frob_mat(m: &Mat3) -> Mat3 {
    Mat3(m.0.map(|row| row.map(Gf4::frob)))
}

pub fn plane_domain() -> Domain {
    let labels = (0..NUM_POINTS)
        .map(|i| format!("p{i}"))
        .chain((0..NUM_POINTS).map(|i| format!("l{i}")))
        .collect();
    Domain::new(labels).expect("distinct labels")
}

pub fn point_slot(p: ProjPoint) -> usize {
    p.0 as usize
}

pub fn line_slot(l: ProjLine) -> usize {
    NUM_POINTS + l.0 as usize
}

/// The permutation of points ∪ lines induced by a determinant-1 semilinear map.
///
/// Points `x` go to `A·x^τ` and lines `y` to `(Aᵀ)⁻¹·y^τ`; a correlation sends
/// the former to lines and the latter to points.
pub fn semilinear_to_perm(plane: &Plane, d: &SemilinearDatum) -> Result<Perm, GroupError> {
    let det = d.matrix.det();
    if det.is_zero() {
        return Err(GroupError::SingularMatrix);
    }
    if det != Gf4::ONE {
        return Err(GroupError::DeterminantNotOne);
    }
    let dual = d.matrix.transpose().inverse().ok_or(GroupError::SingularMatrix)?;
    let twist = |v: Vec3| if d.frobenius { frob_vec(&v) } else { v };
    let mut images = vec![0usize; PLANE_DEGREE];
    for p in plane.points() {
        let v = d.matrix.mul_vec(&twist(plane.point_coords(p)));
        let target = plane.point_of(&v).expect("nonsingular image").0 as usize;
        images[point_slot(p)] = if d.correlation { NUM_POINTS + target } else { target };
    }
    for l in plane.lines() {
        let v = dual.mul_vec(&twist(plane.line_coords(l)));
        let target = plane.point_of(&v).expect("nonsingular image").0 as usize;
        images[line_slot(l)] = if d.correlation { target } else { NUM_POINTS + target };
    }
    Perm::from_images(&images)
}

/// Elementary transvections `I + a·E_ij` with `a ∈ {1, w}`.
pub fn sl3_generators() -> Vec<Mat3> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                for a in [Gf4::ONE, Gf4::W] {
                    out.push(Mat3::transvection(i, j, a));
                }
            }
        }
    }
    out
}

/// Generators of L3(4): the transvections of [`sl3_generators`].
pub fn l34_generators(plane: &Plane) -> Result<Vec<Perm>, GroupError> {
    sl3_generators()
        .into_iter()
        .map(|m| semilinear_to_perm(plane, &SemilinearDatum::collineation(m)))
        .collect()
}

/// Generators of L3(4):2²: the transvections, the Frobenius map and the duality.
pub fn g_generators(plane: &Plane) -> Result<Vec<Perm>, GroupError> {
    let mut gens = l34_generators(plane)?;
    gens.push(semilinear_to_perm(plane, &SemilinearDatum::frobenius())?);
    gens.push(semilinear_to_perm(plane, &SemilinearDatum::duality())?);
    Ok(gens)
}

/// L3(4): collineations without field automorphism and with det(A) = 1.
pub fn build_group_l34(plane: &Plane, budget: usize) -> Result<PermGroup, GroupError> {
    PermGroup::closure(plane_domain(), l34_generators(plane)?, budget)
}

/// L3(4):2², all det-1 collineations and correlations.
pub fn build_group_g(plane: &Plane, budget: usize) -> Result<PermGroup, GroupError> {
    PermGroup::closure(plane_domain(), g_generators(plane)?, budget)
}

/// Index of the flag `(p, L)` that a plane permutation sends `flag_index` to.
/// Returns `None` if the image is not a flag (not an incidence-preserving map).
pub fn act_on_flag(plane: &Plane, g: &Perm, flag_index: usize) -> Option<usize> {
    let f = plane.flags()[flag_index];
    let a = g.apply(point_slot(f.point));
    let b = g.apply(line_slot(f.line));
    let (p, l) = if a < NUM_POINTS { (a, b - NUM_POINTS) } else { (b, a - NUM_POINTS) };
    let flag = crate::pg24::Flag { point: ProjPoint(p as u8), line: ProjLine(l as u8) };
    if !plane.incident(flag.point, flag.line) {
        return None;
    }
    plane.flag_index(flag)
}

/// Whether `g` maps points to lines.
pub fn is_correlation(g: &Perm) -> bool {
    g.apply(0) >= NUM_POINTS
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_duality() {
        let plane = Plane::new();
        let id = semilinear_to_perm(&plane, &SemilinearDatum::collineation(Mat3::identity())).unwrap();
        assert!(id.is_identity());
        let d = semilinear_to_perm(&plane, &SemilinearDatum::duality()).unwrap();
        assert!(!d.is_identity());
        assert!(d.then(&d).is_identity());
        for i in 0..NUM_POINTS {
            assert!(d.apply(i) >= NUM_POINTS);
        }
    }

    #[test]
    fn elation_fixes_one_line_pointwise() {
        let plane = Plane::new();
        let t = semilinear_to_perm(
            &plane,
            &SemilinearDatum::collineation(Mat3::transvection(0, 1, Gf4::ONE)),
        )
        .unwrap();
        let fixed_points: Vec<usize> = (0..NUM_POINTS).filter(|&i| t.apply(i) == i).collect();
        assert_eq!(fixed_points.len(), 5);
        let on_common_line = plane.lines().any(|l| {
            fixed_points.iter().all(|&p| plane.incident(ProjPoint(p as u8), l))
        });
        assert!(on_common_line);
        // The other 16 points move in 2-cycles.
        let ct = t.cycle_type();
        assert_eq!(ct.iter().filter(|&&c| c == 2).count(), (42 - 10) / 2);
        assert_eq!(t.order(), 2);
    }

    #[test]
    fn rejects_bad_matrices() {
        let plane = Plane::new();
        let singular = Mat3([[Gf4::ONE; 3]; 3]);
        assert!(matches!(
            semilinear_to_perm(&plane, &SemilinearDatum::collineation(singular)),
            Err(GroupError::SingularMatrix)
        ));
        let det_w = Mat3::diag(Gf4::W, Gf4::ONE, Gf4::ONE);
        assert!(matches!(
            semilinear_to_perm(&plane, &SemilinearDatum::collineation(det_w)),
            Err(GroupError::DeterminantNotOne)
        ));
    }

    fn datum_strategy() -> impl proptest::strategy::Strategy<Value = SemilinearDatum> {
        use proptest::prelude::*;
        let gens = sl3_generators();
        (proptest::collection::vec(0..gens.len(), 0..12), any::<bool>(), any::<bool>()).prop_map(
            move |(word, frobenius, correlation)| {
                let matrix = word.iter().fold(Mat3::identity(), |m, &i| m.mul(&gens[i]));
                SemilinearDatum { matrix, frobenius, correlation }
            },
        )
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(100))]
        #[test]
        fn perm_of_product_is_product_of_perms(a in datum_strategy(), b in datum_strategy()) {
            let plane = Plane::new();
            let ab = a.then(&b).unwrap();
            let lhs = semilinear_to_perm(&plane, &ab).unwrap();
            let rhs = semilinear_to_perm(&plane, &a).unwrap().then(&semilinear_to_perm(&plane, &b).unwrap());
            proptest::prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn scalar_multiples_agree() {
        let plane = Plane::new();
        let m = Mat3::transvection(2, 0, Gf4::W).mul(&Mat3::transvection(0, 1, Gf4::W));
        let scaled = Mat3(m.0.map(|row| row.map(|x| x * Gf4::W)));
        // det(wA) = w³ det(A) = det(A)
        assert_eq!(scaled.det(), Gf4::ONE);
        let a = semilinear_to_perm(&plane, &SemilinearDatum::collineation(m)).unwrap();
        let b = semilinear_to_perm(&plane, &SemilinearDatum::collineation(scaled)).unwrap();
        assert_eq!(a, b);
    }
}
