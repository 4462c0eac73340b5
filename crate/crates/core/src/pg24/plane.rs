//! Points, lines, flags and hyperovals of the projective plane PG(2,4).

use super::gf4::Gf4;
use serde::Serialize;
use std::fmt;

pub type Vec3 = [Gf4; 3];

/// A 3×3 matrix over GF(4), row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat3(pub [[Gf4; 3]; 3]);

impl Mat3 {
    pub fn identity() -> Mat3 {
        let mut m = [[Gf4::ZERO; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Gf4::ONE;
        }
        Mat3(m)
    }

    /// `I + a·E_ij` for `i != j`.
    pub fn transvection(i: usize, j: usize, a: Gf4) -> Mat3 {
        assert!(i != j && i < 3 && j < 3);
        let mut m = Mat3::identity();
        m.0[i][j] = a;
        m
    }

    pub fn diag(a: Gf4, b: Gf4, c: Gf4) -> Mat3 {
        let z = Gf4::ZERO;
        Mat3([[a, z, z], [z, b, z], [z, z, c]])
    }

    pub fn det(&self) -> Gf4 {
        let m = &self.0;
        // Characteristic 2: the signs of the cofactor expansion vanish.
        m[0][0] * (m[1][1] * m[2][2] + m[1][2] * m[2][1])
            + m[0][1] * (m[1][0] * m[2][2] + m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] + m[1][1] * m[2][0])
    }

    pub fn transpose(&self) -> Mat3 {
        let mut t = [[Gf4::ZERO; 3]; 3];
        for (i, row) in self.0.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                t[j][i] = v;
            }
        }
        Mat3(t)
    }

    /// Inverse via the adjugate; `None` when singular.
    pub fn inverse(&self) -> Option<Mat3> {
        let d_inv = self.det().inv()?;
        let m = &self.0;
        let mut adj = [[Gf4::ZERO; 3]; 3];
        for (i, row) in adj.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                // cofactor of m[j][i]
                let r: Vec<usize> = (0..3).filter(|&r| r != j).collect();
                let c: Vec<usize> = (0..3).filter(|&c| c != i).collect();
                let minor = m[r[0]][c[0]] * m[r[1]][c[1]] + m[r[0]][c[1]] * m[r[1]][c[0]];
                *entry = minor * d_inv;
            }
        }
        Some(Mat3(adj))
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        let mut out = [Gf4::ZERO; 3];
        for (i, row) in self.0.iter().enumerate() {
            out[i] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
        }
        out
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let mut out = [[Gf4::ZERO; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..3).fold(Gf4::ZERO, |acc, k| acc + self.0[i][k] * other.0[k][j]);
            }
        }
        Mat3(out)
    }
}

pub fn frob_vec(v: &Vec3) -> Vec3 {
    [v[0].frob(), v[1].frob(), v[2].frob()]
}

pub fn dot(a: &Vec3, b: &Vec3) -> Gf4 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Scale so the first nonzero coordinate is 1. Returns `None` for the zero vector.
pub fn normalize(v: &Vec3) -> Option<Vec3> {
    let lead = v.iter().copied().find(|c| !c.is_zero())?;
    let s = lead.inv()?;
    Some([v[0] * s, v[1] * s, v[2] * s])
}

fn code_of(v: &Vec3) -> usize {
    (v[0].code() as usize) << 4 | (v[1].code() as usize) << 2 | v[2].code() as usize
}

/// A point of PG(2,4) by its index in the canonical ordering.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct ProjPoint(pub u8);

/// A line of PG(2,4), i.e. a point of the dual plane, by canonical index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct ProjLine(pub u8);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Flag {
    pub point: ProjPoint,
    pub line: ProjLine,
}

/// Six points, no three collinear, sorted ascending.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Hyperoval(pub [ProjPoint; 6]);

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.0)
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{}", self.0)
    }
}

/// The plane PG(2,4) with its canonical orderings fixed once.
///
/// Points and lines share the same coordinate list: the `i`-th line is the
/// dual-basis vector equal to the `i`-th point's coordinates, and a point is
/// on a line iff their dot product vanishes.
#[derive(Clone, Debug)]
pub struct Plane {
    coords: Vec<Vec3>,
    index_of_code: [u8; 64],
    points_on_line: Vec<[ProjPoint; 5]>,
    lines_on_point: Vec<[ProjLine; 5]>,
    flags: Vec<Flag>,
}

pub const NUM_POINTS: usize = 21;
pub const NUM_FLAGS: usize = 105;

impl Plane {
    pub fn new() -> Plane {
        let mut coords: Vec<Vec3> = Vec::new();
        for a in Gf4::ALL {
            for b in Gf4::ALL {
                for c in Gf4::ALL {
                    if let Some(n) = normalize(&[a, b, c]) {
                        if !coords.contains(&n) {
                            coords.push(n);
                        }
                    }
                }
            }
        }
        coords.sort();
        assert_eq!(coords.len(), NUM_POINTS);
        let mut index_of_code = [u8::MAX; 64];
        for (i, v) in coords.iter().enumerate() {
            index_of_code[code_of(v)] = i as u8;
        }
        let mut points_on_line = Vec::with_capacity(NUM_POINTS);
        let mut lines_on_point = vec![Vec::new(); NUM_POINTS];
        let mut flags = Vec::with_capacity(NUM_FLAGS);
        for (li, l) in coords.iter().enumerate() {
            let pts: Vec<ProjPoint> = coords
                .iter()
                .enumerate()
                .filter(|(_, p)| dot(p, l).is_zero())
                .map(|(pi, _)| ProjPoint(pi as u8))
                .collect();
            for &p in &pts {
                lines_on_point[p.0 as usize].push(ProjLine(li as u8));
            }
            points_on_line.push(<[ProjPoint; 5]>::try_from(pts).expect("5 points per line"));
        }
        let lines_on_point: Vec<[ProjLine; 5]> = lines_on_point
            .into_iter()
            .map(|v| <[ProjLine; 5]>::try_from(v).expect("5 lines per point"))
            .collect();
        for (pi, ls) in lines_on_point.iter().enumerate() {
            for &l in ls {
                flags.push(Flag { point: ProjPoint(pi as u8), line: l });
            }
        }
        flags.sort();
        Plane { coords, index_of_code, points_on_line, lines_on_point, flags }
    }

    pub fn points(&self) -> impl Iterator<Item = ProjPoint> {
        (0..NUM_POINTS as u8).map(ProjPoint)
    }

    pub fn lines(&self) -> impl Iterator<Item = ProjLine> {
        (0..NUM_POINTS as u8).map(ProjLine)
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn flag_index(&self, flag: Flag) -> Option<usize> {
        self.flags.binary_search(&flag).ok()
    }

    pub fn point_coords(&self, p: ProjPoint) -> Vec3 {
        self.coords[p.0 as usize]
    }

    pub fn line_coords(&self, l: ProjLine) -> Vec3 {
        self.coords[l.0 as usize]
    }

    /// Index of the projective point spanned by `v` (nonzero).
    pub fn point_of(&self, v: &Vec3) -> Option<ProjPoint> {
        let n = normalize(v)?;
        Some(ProjPoint(self.index_of_code[code_of(&n)]))
    }

    pub fn line_of(&self, v: &Vec3) -> Option<ProjLine> {
        self.point_of(v).map(|p| ProjLine(p.0))
    }

    pub fn incident(&self, p: ProjPoint, l: ProjLine) -> bool {
        dot(&self.coords[p.0 as usize], &self.coords[l.0 as usize]).is_zero()
    }

    pub fn points_on(&self, l: ProjLine) -> &[ProjPoint; 5] {
        &self.points_on_line[l.0 as usize]
    }

    pub fn lines_through(&self, p: ProjPoint) -> &[ProjLine; 5] {
        &self.lines_on_point[p.0 as usize]
    }

    pub fn join(&self, a: ProjPoint, b: ProjPoint) -> Option<ProjLine> {
        if a == b {
            return None;
        }
        self.lines_through(a).iter().copied().find(|&l| self.incident(b, l))
    }

    pub fn collinear(&self, a: ProjPoint, b: ProjPoint, c: ProjPoint) -> bool {
        match self.join(a, b) {
            Some(l) => self.incident(c, l),
            None => true,
        }
    }

    /// Every hyperoval of the plane, sorted.
    ///
    /// Depth-first arc extension in increasing point order; each 6-arc is
    /// produced exactly once.
    pub fn hyperovals(&self) -> Vec<Hyperoval> {
        let mut out = Vec::new();
        let mut arc: Vec<ProjPoint> = Vec::with_capacity(6);
        self.extend_arc(&mut arc, 0, &mut out);
        out.sort();
        out
    }

    fn extend_arc(&self, arc: &mut Vec<ProjPoint>, next: u8, out: &mut Vec<Hyperoval>) {
        if arc.len() == 6 {
            out.push(Hyperoval(<[ProjPoint; 6]>::try_from(arc.as_slice()).unwrap()));
            return;
        }
        for p in next..NUM_POINTS as u8 {
            let p = ProjPoint(p);
            let ok = arc.iter().enumerate().all(|(i, &a)| {
                arc[i + 1..].iter().all(|&b| !self.collinear(a, b, p))
            });
            if ok {
                arc.push(p);
                self.extend_arc(arc, p.0 + 1, out);
                arc.pop();
            }
        }
    }
}

impl Default for Plane {
    fn default() -> Self {
        Plane::new()
    }
}

/// Points, lines and flags of PG(2,4) in canonical order.
pub fn enumerate_plane() -> (Vec<ProjPoint>, Vec<ProjLine>, Vec<Flag>) {
    let plane = Plane::new();
    (plane.points().collect(), plane.lines().collect(), plane.flags().to_vec())
}

pub fn enumerate_hyperovals() -> Vec<Hyperoval> {
    Plane::new().hyperovals()
}
