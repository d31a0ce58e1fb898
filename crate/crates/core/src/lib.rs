//! Computational toolkit for comparison geometry in the style of CAT(k)
//! spaces: constant-curvature model planes, four-point comparison tests,
//! flag and cubical complex combinatorics, geodesics in stacked glued
//! half-space arrays ("puff pastries"), and event-driven billiards with
//! convex walls including the hard-ball gas reduction.
//!
//! Batch drivers run in parallel through rayon by default; disable the
//! `parallel` feature for a fully sequential build.

pub mod batch;
pub mod bhv;
pub mod cat;
pub mod complex;
pub mod cubical;
pub mod geom;
pub mod metric;
pub mod sampling;
pub mod model;
