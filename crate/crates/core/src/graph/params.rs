use std::fmt;

use serde::Serialize;

use super::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SrgParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SrgFailure {
    NotRegular { vertex: usize, degree: usize, expected: usize },
    /// Adjacent pair with a deviating number of common neighbours.
    Lambda { a: usize, b: usize, found: usize, expected: usize },
    /// Non-adjacent pair with a deviating number of common neighbours.
    Mu { a: usize, b: usize, found: usize, expected: usize },
}

pub fn srg_params(g: &Graph) -> Result<SrgParams, SrgFailure> {
    let v = g.order();
    let k = if v == 0 { 0 } else { g.degree(0) };
    if let Some(vertex) = (0..v).find(|&x| g.degree(x) != k) {
        return Err(SrgFailure::NotRegular { vertex, degree: g.degree(vertex), expected: k });
    }
    let (mut lambda, mut mu) = (None, None);
    for a in 0..v {
        for b in a + 1..v {
            let found = g.common_neighbours(a, b);
            let slot = if g.has_edge(a, b) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(found),
                Some(expected) if expected != found => {
                    return Err(if g.has_edge(a, b) {
                        SrgFailure::Lambda { a, b, found, expected }
                    } else {
                        SrgFailure::Mu { a, b, found, expected }
                    });
                }
                _ => {}
            }
        }
    }
    Ok(SrgParams { v, k, lambda: lambda.unwrap_or(0), mu: mu.unwrap_or(0) })
}

/// `{b0, …, b(d-1); c1, …, cd}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl IntersectionArray {
    pub fn new(b: Vec<usize>, c: Vec<usize>) -> IntersectionArray {
        IntersectionArray { b, c }
    }

    pub fn diameter(&self) -> usize {
        self.c.len()
    }

    /// `k_0 = 1`, `k_(i+1) = k_i b_i / c_(i+1)`; `None` if some step is not integral.
    pub fn distance_sizes(&self) -> Option<Vec<usize>> {
        let mut k = vec![1usize];
        for i in 0..self.diameter() {
            let num = k[i] * self.b[i];
            if self.c[i] == 0 || !num.is_multiple_of(self.c[i]) {
                return None;
            }
            k.push(num / self.c[i]);
        }
        Some(k)
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DrgFailure {
    Disconnected { vertex: usize },
    /// Vertex `u` at `distance` from `vertex` has deviating `b` or `c` counts.
    NotConstant { vertex: usize, other: usize, distance: usize },
}

pub fn drg_params(g: &Graph) -> Result<IntersectionArray, DrgFailure> {
    let mut b: Vec<usize> = Vec::new();
    let mut c: Vec<usize> = Vec::new();
    for v in 0..g.order() {
        let dist = g.distances_from(v);
        if let Some(vertex) = dist.iter().position(|&d| d == usize::MAX) {
            return Err(DrgFailure::Disconnected { vertex });
        }
        let d = dist.iter().copied().max().unwrap_or(0);
        if v == 0 {
            b = vec![usize::MAX; d];
            c = vec![usize::MAX; d];
        } else if d != c.len() {
            let other = dist.iter().position(|&x| x == d).unwrap_or(v);
            return Err(DrgFailure::NotConstant { vertex: v, other, distance: d });
        }
        for u in 0..g.order() {
            let i = dist[u];
            let (mut up, mut down) = (0, 0);
            for &w in g.neighbours(u) {
                let j = dist[w as usize];
                if j == i + 1 {
                    up += 1;
                } else if j + 1 == i {
                    down += 1;
                }
            }
            let fail = DrgFailure::NotConstant { vertex: v, other: u, distance: i };
            if i < d {
                if b[i] == usize::MAX {
                    b[i] = up;
                } else if b[i] != up {
                    return Err(fail);
                }
            }
            if i > 0 {
                if c[i - 1] == usize::MAX {
                    c[i - 1] = down;
                } else if c[i - 1] != down {
                    return Err(fail);
                }
            }
        }
    }
    Ok(IntersectionArray { b, c })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn pentagon_and_petersen() {
        assert_eq!(srg_params(&cycle(5)), Ok(SrgParams { v: 5, k: 2, lambda: 0, mu: 1 }));
        assert_eq!(srg_params(&petersen()), Ok(SrgParams { v: 10, k: 3, lambda: 0, mu: 1 }));
        assert_eq!(drg_params(&petersen()).unwrap().to_string(), "{3,2;1,1}");
    }

    #[test]
    fn path_fails() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(srg_params(&p3), Err(SrgFailure::NotRegular { .. })));
        assert!(drg_params(&p3).is_err());
    }

    #[test]
    fn cycle_arrays() {
        assert_eq!(drg_params(&cycle(8)).unwrap(), IntersectionArray::new(vec![2, 1, 1, 1], vec![1, 1, 1, 2]));
    }

    #[test]
    fn distance_sizes_from_array() {
        let a = IntersectionArray::new(vec![32, 27, 8, 1], vec![1, 4, 27, 32]);
        let k = a.distance_sizes().unwrap();
        assert_eq!(k, vec![1, 32, 216, 64, 2]);
        assert_eq!(k.iter().sum::<usize>(), 315);
        assert!(IntersectionArray::new(vec![3], vec![2]).distance_sizes().is_none());
    }
}
