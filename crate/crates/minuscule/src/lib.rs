//! Exact-arithmetic Schubert calculus for minuscule and cominuscule elements
//! of Kac-Moody Weyl groups.
//!
//! The library is organized around a pipeline:
//! - [`cartan`]: generalized Cartan matrices, symmetrizers, weights and roots;
//! - [`weyl`]: reduced words, Bruhat order, minimal coset representatives;
//! - [`heap`]: colored heaps of fully commutative elements and their ideals;
//! - [`taquin`]: jeu de taquin, `t` and `m` coefficients, the combinatorial product;
//! - [`schubert`]: an independent cohomological oracle (Chevalley products,
//!   degrees, torus-fixed-point localization);
//! - [`folding`]: Dynkin diagram foldings, push-forwards, and the constraint
//!   solver for push-forward matrices;
//! - [`verify`]: the named verification suites exposed by the CLI.

pub mod cartan;
pub mod weyl;
pub mod heap;
pub mod taquin;
pub mod schubert;
pub mod folding;
pub mod verify;
