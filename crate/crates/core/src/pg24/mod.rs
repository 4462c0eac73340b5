//! Exact arithmetic over GF(4) and the combinatorics of PG(2,4).

mod gf4;
mod plane;

pub use gf4::{gf4_add, gf4_frob, gf4_mul, Gf4};
pub use plane::{
    dot, enumerate_hyperovals, enumerate_plane, frob_vec, normalize, Flag, Hyperoval, Mat3, Plane,
    ProjLine, ProjPoint, Vec3, NUM_FLAGS, NUM_POINTS,
};
