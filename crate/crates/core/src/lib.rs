//! Exact finite group and incidence-geometry computations around PG(2,4),
//! the group L3(4):2², and the near octagon on its central involutions.

pub mod family;
pub mod gewirtz;
pub mod graph;
pub mod group;
pub mod incidence;
pub mod octagon;
pub mod pg24;
pub mod report;
pub mod workbench;
