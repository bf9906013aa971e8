//! Exact-arithmetic toolkit for rank-2 character varieties of k-punctured
//! spheres.
//!
//! Everything is computed over the exact rationals — no floating point
//! anywhere. The crate has four layers:
//!
//! * [`exact_linear`] — arbitrary-precision rational scalars, 2×2 matrix
//!   algebra, eigenlines, and canonical projective normalization.
//! * [`charvar`] — tuples (B₁,…,B_k) of determinant-1 matrices with product I
//!   (monodromy data on the k-punctured sphere), Kostov/very-generic
//!   conditions, irreducibility, pants restriction and stability, and the
//!   stratum classifier.
//! * [`fenchel_nielsen`] — the Fenchel–Nielsen coordinate system on the open
//!   stratum: normal-form pants matrices, the commutant parametrization,
//!   decode (coordinates → tuple), encode (tuple → coordinates), the
//!   unstable-splitting isomorphism, and a deterministic sampler.
//! * [`dual_complex`] — Δ-complexes with exact integer homology (Smith normal
//!   form), join/cone constructions, and the concrete boundary-complex models
//!   whose sphere homology the test suite certifies.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to call concurrently.

// Error variants deliberately carry exact rational witnesses (offending traces,
// matrix entries), so the Err payloads are large; none of these Results sit on
// hot paths.
#![allow(clippy::result_large_err)]

pub mod charvar;
pub mod dual_complex;
pub mod exact_linear;
pub mod fenchel_nielsen;
