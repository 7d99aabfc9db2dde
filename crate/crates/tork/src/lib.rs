//! Exact computation of bigraded Betti numbers `beta^{-i,2j}` of finitely
//! graded modules over the polynomial ring `Q[v_1..v_m]` (all generators in
//! degree 2), via Koszul complexes over arbitrary-precision rationals.
//!
//! For a simplicial complex `K` the engine builds the Stanley-Reisner ring
//! `Q[K]`, whose Betti numbers are the ranks of the cohomology of the
//! moment-angle complex `Z_K`; an independent combinatorial oracle
//! (Hochster's formula) cross-checks every table. On top of the tables sit
//! check suites for classical lower bounds: Horrocks-type binomial bounds,
//! corner and parity bounds, the Avramov-Buchweitz quadratic bound,
//! Evans-Griffith syzygy bounds, toral-rank bounds, duality, and Euler
//! characteristic vanishing.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod cli;
mod combin;
pub mod conjectures;
pub mod exactla;
pub mod grmod;
pub mod hochster;
pub mod koszul;
pub mod simplicial;
