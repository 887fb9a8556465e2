//! Exact-arithmetic calculus for branched twist spins in the 4-sphere.
//!
//! A branched twist spin `K^{m,n}` is the 2-knot swept out by the singular
//! set of an effective circle action on S^4 with orbit data `{(S^3,K), m, n}`.
//! This crate manipulates such knots purely through their integer index
//! pairs, the unimodular gluing matrices of the associated piece
//! decompositions, and finitely presented fundamental groups:
//!
//! * [`orbitdata`] — index pairs `(m,n)`, sign conventions, twin states,
//!   the Gluck-twist index rewrites and the Euclidean reduction to `(k,1)`.
//! * [`gluing`] — exact 2x2 integer matrix algebra for the torus gluing
//!   maps, canonical Bezout coefficients and the rearrangement identities.
//! * [`fpgroup`] — words, presentations, Smith normal form, abelianization
//!   and brute-force homomorphism counting into small symmetric groups.
//! * [`knotfile`] — the plain-text 1-knot presentation format.
//! * [`assembly`] — piece complexes for the closed, complement and
//!   Gluck-twisted decompositions, mechanical van Kampen extraction and
//!   homology certificates.
//!
//! Everything is immutable and deterministic; there is no floating point.
//! The heavy sweeps have data-parallel implementations behind the
//! `parallel` feature (enabled by default), with sequential fallbacks that
//! produce identical results.

pub mod assembly;
pub mod fpgroup;
pub mod gluing;
pub mod knotfile;
pub mod orbitdata;

pub use assembly::{ArcLabel, ComplexLabel, CycleLabel, GluingEdge, Piece, PieceComplex};
pub use fpgroup::{AbelianInvariants, GroupPresentation, Word};
pub use gluing::{BezoutPair, Mat2, ProofKit, WeightVector};
pub use orbitdata::{BTSIndex, OrbitData, ReductionTrace, SignConvention, Site, TwinState};
