//! Exact-arithmetic computational Galois theory workbench.
//!
//! The crate is organized in layers:
//!
//! * [`poly`], [`crt`], [`roots`] — arbitrary-precision rational/integer
//!   polynomial arithmetic, resultants and discriminants, Chinese
//!   remaindering, exact rational root extraction.
//! * [`finite`] — prime-field polynomial arithmetic: squarefree splitting,
//!   distinct-degree factor patterns, irreducibility tests, seeded random
//!   irreducible generation.
//! * [`frobenius`], [`groups`], [`speiser`] — cycle-type sampling over
//!   primes, transitive-group tables for degrees 2..=5, statistical group
//!   identification, and the recurrence-period computation of the Frobenius
//!   order.
//! * [`construct`] — polynomials with prescribed factorization patterns via
//!   CRT, certified symmetric-group constructions, alternating-group
//!   families, and the circulant determinant/congruence search.
//! * [`splitting`], [`identity`] — the universal splitting algebra and its
//!   tensor square as an exact oracle, mixed equations of degree n!, cubic
//!   and quartic resolvents, and the field-identity decision with
//!   Tschirnhaus map recovery.
//! * [`elliptic`], [`pell`], [`commensurable`] — exact elliptic group law
//!   and division polynomials, continued fractions of polynomial square
//!   roots with functional-unit extraction, and the torsion/periodicity
//!   decision for genus-1 quartics.
//! * [`parse`], [`cli`] — polynomial expression parsing and the command
//!   line front end with machine-readable reports.

pub mod cli;
pub mod commensurable;
pub mod construct;
pub mod crt;
pub mod elliptic;
pub mod finite;
pub mod frobenius;
pub mod groups;
pub mod identity;
pub mod parse;
pub mod pell;
pub mod poly;
pub mod roots;
pub mod speiser;
pub mod splitting;

pub use poly::{BigInt, BigRat, IntPoly, RatPoly};
