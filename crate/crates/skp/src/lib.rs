//! Exact lattice and quaternion-order arithmetic, arbitrary-precision
//! Siegel theta constants, and the explicit inverse period map of the
//! quartic K3 pencil `s1 = t0*s4 + t1*s2^2 = 0` with its Shimura curve.
//!
//! Module map:
//!
//! * [`lattice_core`]: integer lattices, discriminant forms, overlattices.
//! * [`quatalg`]: quaternion algebras, even Clifford algebras, orders.
//! * [`fuchsian`]: the period domain, elliptic points and group relations.
//! * [`siegel_theta`]: genus 1 and genus 2 theta constants.
//! * [`embedding`]: the modular embedding into the Siegel upper half space.
//! * [`period_inverse`]: theta relations and the inverse period map.
//! * [`quartic_family`]: singular fibers of the quartic pencil.
//!
//! Supporting modules: [`exact`] (rational linear algebra), [`bigc`]
//! (arbitrary-precision complex numbers), [`radical`] (exact numbers in
//! multiquadratic fields) and [`cm`] (published CM reference values).

#![allow(clippy::needless_range_loop)]

pub mod bigc;
pub mod cm;
pub mod embedding;
pub mod exact;
pub mod fuchsian;
pub mod lattice_core;
pub mod period_inverse;
pub mod quartic_family;
pub mod quatalg;
pub mod radical;
pub mod siegel_theta;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;

/// Extra bits carried by series evaluations beyond the requested precision.
pub const GUARD_BITS: u32 = 10;
