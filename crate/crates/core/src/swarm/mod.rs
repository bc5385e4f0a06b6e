//! Stigmergic ant-colony clustering on a toroidal grid.
//!
//! Ants carry no memory. They sense a pheromone field that they themselves
//! lay down and that evaporates every step, turn reluctantly, and pick up or
//! drop feature-vector items by majority vote over their eight neighbours.
//! Each vote composes a crowding response (how many items are around) with a
//! similarity response (how far the focal item is from that neighbour).

mod entropy;
mod grid;
mod params;
pub mod rng;
mod rules;
mod state;

pub use entropy::{entropy_floor, spatial_entropy};
pub use grid::{Cell, Direction, Torus};
pub use params::{Params, DEFAULT_DIRECTION_KERNEL};
pub use rules::{
    crowding, directional_weight, drop_probability, drop_threshold, feature_distance, pheromone_weight,
    pick_probability, pick_threshold, response_threshold,
};
pub use state::{run, run_state, Ant, AntId, ItemId, LoadAction, RunOutput, Snapshot, SwarmState};
