//! Ordered partitions and equitable refinement.
//!
//! A partition is an ordering `lab` of the vertices cut into cells of
//! consecutive positions. A cell is named by its start position. Everything
//! the refinement does depends only on positions and neighbour counts, so an
//! isomorphism carrying one input partition to another carries the refined
//! partitions (and their traces) onto each other.

use std::collections::BTreeSet;

use super::Graph;

#[derive(Clone, Debug)]
pub(crate) struct Partition {
    pub lab: Vec<u32>,
    pub pos: Vec<u32>,
    /// Start position of the cell holding each vertex.
    pub cell_of: Vec<u32>,
    /// For a cell start, one past its last position.
    pub cell_end: Vec<u32>,
    pub cells: usize,
}

fn mix(h: u64, x: u64) -> u64 {
    let mut z = (h ^ x).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Partition {
    /// Cells by ascending color. Returns the partition and a trace of the
    /// color classes.
    pub fn from_colors(colors: &[u32]) -> (Partition, u64) {
        let n = colors.len();
        let mut lab: Vec<u32> = (0..n as u32).collect();
        lab.sort_by_key(|&v| (colors[v as usize], v));
        let mut p = Partition {
            pos: vec![0; n],
            cell_of: vec![0; n],
            cell_end: vec![0; n],
            lab,
            cells: 0,
        };
        let mut trace = mix(0, n as u64);
        let mut start = 0;
        for i in 0..n {
            let v = p.lab[i] as usize;
            p.pos[v] = i as u32;
            if i > 0 && colors[v] != colors[p.lab[i - 1] as usize] {
                start = i;
            }
            p.cell_of[v] = start as u32;
            if i + 1 == n || colors[p.lab[i + 1] as usize] != colors[v] {
                p.cell_end[start] = i as u32 + 1;
                p.cells += 1;
                trace = mix(trace, (colors[v] as u64) << 32 | (i + 1 - start) as u64);
            }
        }
        (p, trace)
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    pub fn cell(&self, start: usize) -> &[u32] {
        &self.lab[start..self.cell_end[start] as usize]
    }

    pub fn cell_starts(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.lab.len();
        let mut s = 0;
        std::iter::from_fn(move || {
            if s >= n {
                return None;
            }
            let out = s;
            s = self.cell_end[s] as usize;
            Some(out)
        })
    }

    /// First smallest non-singleton cell.
    pub fn target_cell(&self) -> Option<usize> {
        self.cell_starts()
            .filter(|&s| self.cell_end[s] as usize - s > 1)
            .min_by_key(|&s| (self.cell_end[s] as usize - s, s))
    }

    /// Split `v` off the front of its cell. Returns the singleton's start.
    pub fn individualize(&mut self, v: usize) -> usize {
        let start = self.cell_of[v] as usize;
        let end = self.cell_end[start];
        let at = self.pos[v] as usize;
        let u = self.lab[start];
        self.lab.swap(start, at);
        self.pos[u as usize] = at as u32;
        self.pos[v] = start as u32;
        self.cell_end[start] = start as u32 + 1;
        self.cell_end[start + 1] = end;
        for i in start + 1..end as usize {
            self.cell_of[self.lab[i] as usize] = start as u32 + 1;
        }
        self.cells += 1;
        start
    }
}

/// Refine `p` to the coarsest equitable partition below it, using the cells
/// starting at `pending` as initial splitters. Returns a trace of the splits.
pub(crate) fn refine(g: &Graph, p: &mut Partition, pending: impl IntoIterator<Item = usize>) -> u64 {
    let n = p.lab.len();
    let mut queue: BTreeSet<usize> = pending.into_iter().collect();
    let mut count = vec![0u32; n];
    let mut touched: Vec<u32> = Vec::new();
    let mut trace = 0u64;
    let mut scratch: Vec<(u32, u32)> = Vec::new();
    while let Some(w) = queue.pop_first() {
        if p.is_discrete() {
            break;
        }
        let splitter: Vec<u32> = p.cell(w).to_vec();
        for &u in &splitter {
            for &v in g.neighbours(u as usize) {
                if count[v as usize] == 0 {
                    touched.push(v);
                }
                count[v as usize] += 1;
            }
        }
        let mut cells: Vec<usize> = touched.iter().map(|&v| p.cell_of[v as usize] as usize).collect();
        cells.sort_unstable();
        cells.dedup();
        trace = mix(trace, w as u64);
        for c in cells {
            let end = p.cell_end[c] as usize;
            if end - c == 1 {
                trace = mix(trace, (c as u64) << 32 | count[p.lab[c] as usize] as u64);
                continue;
            }
            scratch.clear();
            scratch.extend(p.lab[c..end].iter().map(|&v| (count[v as usize], v)));
            scratch.sort_unstable_by_key(|&(k, _)| k);
            if scratch[0].0 == scratch[end - c - 1].0 {
                trace = mix(trace, (c as u64) << 32 | scratch[0].0 as u64);
                continue;
            }
            let was_pending = queue.contains(&c);
            let mut fragments: Vec<(usize, usize)> = Vec::new();
            let mut fs = c;
            for i in 0..end - c {
                let (k, v) = scratch[i];
                p.lab[c + i] = v;
                p.pos[v as usize] = (c + i) as u32;
                if i > 0 && k != scratch[i - 1].0 {
                    fragments.push((fs, c + i));
                    fs = c + i;
                }
                p.cell_of[v as usize] = fs as u32;
                trace = mix(trace, k as u64);
            }
            fragments.push((fs, end));
            trace = mix(trace, (c as u64) << 32 | fragments.len() as u64);
            p.cells += fragments.len() - 1;
            let mut largest = 0;
            for (i, &(s, e)) in fragments.iter().enumerate() {
                p.cell_end[s] = e as u32;
                if e - s > fragments[largest].1 - fragments[largest].0 {
                    largest = i;
                }
            }
            for (i, &(s, _)) in fragments.iter().enumerate() {
                if was_pending || i != largest {
                    queue.insert(s);
                }
            }
        }
        for &v in &touched {
            count[v as usize] = 0;
        }
        touched.clear();
    }
    mix(trace, p.cells as u64)
}
