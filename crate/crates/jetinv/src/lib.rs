//! Differential invariants of ODE geometries: scalar fourth-order ODEs under
//! contact equivalence, pairs of third-order ODEs under point equivalence, and
//! orthopath invariants computed from Finsler component data.

pub mod symexpr;
pub mod frontend;
pub mod jetspace;
pub mod orthopath;
pub mod coframe;
pub mod ode4;
pub mod euler_lagrange;
pub mod pair;
pub mod quasicontact;
pub mod acceptance;
pub mod selftest;
