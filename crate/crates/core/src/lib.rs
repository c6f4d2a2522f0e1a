//! Exact covering of the cells of an axis-aligned segment arrangement by a
//! minimum number of its segments.
//!
//! * [`geometry`]: arrangements, cells, defining segments and cover checks.
//! * [`fpt`]: kernel and exact search for covering the rectangular cells.
//! * [`subdivision`]: linear-time optimum for recursively split rectangles.
//! * [`reduction`]: planar 3SAT formulas compiled into covering instances.

pub mod cli;
pub mod fpt;
pub mod generate;
pub mod geometry;
pub mod io;
pub mod reduction;
pub mod subdivision;
pub mod svg;
