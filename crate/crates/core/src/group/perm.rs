use std::fmt;

use super::GroupError;

/// A permutation of `0..n`, stored as its image array.
///
/// Products act on the right: `(a * b)(i) = b(a(i))`, so `a.then(&b)` applies
/// `a` first. Conjugation `g.conjugate_by(h)` is `h⁻¹ g h`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u16]>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!(n <= u16::MAX as usize + 1);
        Perm((0..n).map(|i| i as u16).collect())
    }

    pub fn from_images(images: &[usize]) -> Result<Perm, GroupError> {
        let n = images.len();
        if n > u16::MAX as usize + 1 {
            return Err(GroupError::DomainTooLarge(n));
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(GroupError::NotABijection);
            }
        }
        Ok(Perm(images.iter().map(|&x| x as u16).collect()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm(inv.into_boxed_slice())
    }

    /// `h⁻¹ · self · h`.
    pub fn conjugate_by(&self, h: &Perm) -> Perm {
        // i ↦ h(self(h⁻¹(i))); write it as: h(i) ↦ h(self(i)).
        let mut out = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[h.0[i] as usize] = h.0[x as usize];
        }
        Perm(out.into_boxed_slice())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &x)| other.0[x as usize] == self.0[other.0[i] as usize])
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) == i).collect()
    }

    /// Cycle lengths, sorted ascending (fixed points included as 1-cycles).
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.apply(i);
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, lcm)
    }

    pub fn pow(&self, mut e: usize) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Cycle notation, omitting fixed points.
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{i}")?;
                first = false;
                i = self.apply(i);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_and_inverse() {
        let a = Perm::from_images(&[1, 2, 0, 3]).unwrap();
        let b = Perm::from_images(&[0, 1, 3, 2]).unwrap();
        let ab = a.then(&b);
        assert_eq!(ab.apply(1), b.apply(a.apply(1)));
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.order(), 3);
        assert_eq!(ab.order(), 4);
        assert_eq!(a.pow(3), Perm::identity(4));
    }

    #[test]
    fn conjugation_matches_definition() {
        let g = Perm::from_images(&[1, 0, 2, 4, 3]).unwrap();
        let h = Perm::from_images(&[2, 3, 4, 0, 1]).unwrap();
        let direct = h.inverse().then(&g).then(&h);
        assert_eq!(g.conjugate_by(&h), direct);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(&[0, 0]).is_err());
        assert!(Perm::from_images(&[0, 2]).is_err());
    }

    #[test]
    fn commutation() {
        let a = Perm::from_images(&[1, 0, 2, 3]).unwrap();
        let b = Perm::from_images(&[0, 1, 3, 2]).unwrap();
        let c = Perm::from_images(&[0, 2, 1, 3]).unwrap();
        assert!(a.commutes_with(&b));
        assert!(!a.commutes_with(&c));
    }
}
