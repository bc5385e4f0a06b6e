//! Shape-feature extraction from binary silhouettes, stigmergic ant-colony
//! clustering on a toroidal grid, and k-nearest-neighbour classification of
//! the resulting map.
//!
//! The crate is organised bottom-up:
//!
//! * [`shape_features`] computes raw, central and normalised moments and the
//!   seven Hu rotation invariants of a [`BinaryImage`](shape_features::BinaryImage).
//! * [`segmentation`] turns a grey microscope image into a single-object mask.
//! * [`swarm`] is the ant colony: ants wander a toroidal grid following
//!   pheromone and pick up or drop feature vectors by composed response
//!   thresholds.
//! * [`grid_knn`] classifies items from their final grid positions.
//! * [`dataset`] and [`pipeline`] wire everything into reproducible runs.

pub mod dataset;
pub mod error;
pub mod grid_knn;
pub mod netpbm;
pub mod pipeline;
pub mod segmentation;
pub mod shape_features;
pub mod swarm;

pub use error::{Error, Result};
