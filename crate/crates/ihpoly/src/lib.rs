//! Exact calculator for intersection-cohomology Poincaré polynomials of
//! complex projective varieties that admit a resolution of singularities
//! with two strata.
//!
//! For such a resolution the pushforward of the constant sheaf splits into
//! the intersection-cohomology complex of the base plus shifted constant
//! sheaves on the singular locus, with multiplicities read off the Betti
//! numbers of the fiber. At the level of Poincaré polynomials this gives
//! the closed formula
//!
//! ```text
//! IH(t) = H_res(t) - H_delta(t) * g(t)
//! ```
//!
//! implemented by [`twostrata`] over the exact Laurent-polynomial
//! arithmetic of [`laurent`]. Two fully worked model families instantiate
//! the engine and cross-check it against independent closed formulas:
//! single-condition Schubert varieties ([`schubert`], built on the
//! Grassmannian polynomials of [`grassmann`]) and hypersurfaces of `P^5`
//! with a one-dimensional singular locus ([`blowup5`]). The [`cli`] module
//! backs the `ihpoly` command-line tool.

pub mod blowup5;
pub mod cli;
pub mod grassmann;
pub mod laurent;
pub mod schubert;
pub mod twostrata;
