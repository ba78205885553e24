//! Exact-arithmetic construction and verification of solutions of the
//! classical Yang–Baxter equation (CYBE).
//!
//! The crate builds the standard trigonometric r-matrix on a twisted loop
//! algebra, its Belavin–Drinfeld twists, the Cremmer–Gervais type (c, d)
//! quasi-trigonometric solutions, and quasi-constant solutions — all over ℚ
//! — and verifies each of them by bit-exact polynomial identities. The
//! Manin-triple machinery (twist equation, Lagrangian-subspace ↔ twist
//! correspondence, dual-basis recipes on nodal/cuspidal windows) both
//! produces these solutions and independently re-derives them.
//!
//! Module map:
//! - [`rat`], [`poly`], [`linalg`] — the exact scalar / Laurent-polynomial /
//!   linear-algebra substrate.
//! - [`liealg`] — sl_n bases, brackets, invariant forms, Casimir elements.
//! - [`grading`] — finite-order automorphisms as residue gradings, graded
//!   Casimir components.
//! - [`loops`] — twisted loop algebras: bracket, standard form B, dagger,
//!   loop root systems, parabolic subalgebras.
//! - [`rtensor`] — (g⊗g)-valued rational functions; CYBE / skew / constant
//!   residuals; gauge transformations.
//! - [`solutions`] — constructors for every explicit solution family.
//! - [`manin`] — truncated Manin triples: the form F, twist ↔ subspace
//!   correspondence, nodal and cuspidal dual-basis recipes, formal series.
//! - [`latex`] — LaTeX rendering of solutions.
//! - [`cli`] — the command-line surface (the `cybe` binary is a thin shim).

pub mod cli;
pub mod grading;
pub mod latex;
pub mod liealg;
pub mod linalg;
pub mod loops;
pub mod manin;
pub mod poly;
pub mod rat;
pub mod rtensor;
pub mod solutions;
