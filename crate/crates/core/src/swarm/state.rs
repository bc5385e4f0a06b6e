//! Grid state and the per-ant update of the clustering colony.

use crate::error::{Error, Result};
use crate::shape_features::FeatureVector;

use super::grid::{Cell, Direction, Torus};
use super::params::Params;
use super::rng::SwarmRng;
use super::rules::{
    crowding, directional_weight, drop_probability, drop_threshold, pheromone_weight, pick_probability, pick_threshold,
    rms_distance,
};

pub type ItemId = usize;
pub type AntId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ant {
    pub cell: Cell,
    pub heading: Direction,
    pub carrying: Option<ItemId>,
}

/// What an ant did with its load during one action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoadAction {
    None,
    Picked(ItemId),
    Dropped(ItemId),
}

/// Item positions at one instant. `None` marks an item in transit.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub step: u64,
    pub positions: Vec<Option<Cell>>,
}

impl Snapshot {
    pub fn placed(&self) -> impl Iterator<Item = Cell> + '_ {
        self.positions.iter().flatten().copied()
    }

    pub fn carried(&self) -> usize {
        self.positions.iter().filter(|p| p.is_none()).count()
    }
}

/// Complete colony state: lattice layers, ants, items and the random stream.
#[derive(Debug, Clone, PartialEq)]
pub struct SwarmState {
    params: Params,
    torus: Torus,
    item_at: Vec<Option<ItemId>>,
    ant_at: Vec<Option<AntId>>,
    pheromone: Vec<f64>,
    ants: Vec<Ant>,
    items: Vec<FeatureVector>,
    rng: SwarmRng,
    step: u64,
}

impl SwarmState {
    /// Validates inputs and scatters items, then ants, over uniformly random
    /// free cells.
    pub fn new(items: Vec<FeatureVector>, params: Params) -> Result<Self> {
        params.validate()?;
        let torus = Torus::new(params.grid_rows, params.grid_cols);
        let cells = torus.cells();
        if items.len() > cells {
            return Err(Error::CapacityExceeded {
                what: "items",
                requested: items.len(),
                cells,
            });
        }
        if params.n_ants > cells {
            return Err(Error::CapacityExceeded {
                what: "ants",
                requested: params.n_ants,
                cells,
            });
        }
        if let Some(first) = items.first() {
            for f in &items {
                if f.len() != first.len() {
                    return Err(Error::DimensionMismatch(first.len(), f.len()));
                }
                if let Some(&v) = f.values().iter().find(|v| !(0.0..=1.0).contains(*v)) {
                    return Err(Error::FeatureRange(v));
                }
            }
        }

        let mut rng = SwarmRng::new(params.seed);
        let mut item_at = vec![None; cells];
        for id in 0..items.len() {
            let idx = free_cell(&mut rng, &item_at);
            item_at[idx] = Some(id);
        }
        let mut ant_at = vec![None; cells];
        let mut ants = Vec::with_capacity(params.n_ants);
        for id in 0..params.n_ants {
            let idx = free_cell(&mut rng, &ant_at);
            ant_at[idx] = Some(id);
            let heading = Direction::new(rng.below(8) as u8);
            ants.push(Ant {
                cell: torus.cell(idx),
                heading,
                carrying: None,
            });
        }

        Ok(Self {
            params,
            torus,
            item_at,
            ant_at,
            pheromone: vec![0.0; cells],
            ants,
            items,
            rng,
            step: 0,
        })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn torus(&self) -> Torus {
        self.torus
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }

    pub fn ants(&self) -> &[Ant] {
        &self.ants
    }

    pub fn items(&self) -> &[FeatureVector] {
        &self.items
    }

    pub fn item_at(&self, cell: Cell) -> Option<ItemId> {
        self.item_at[self.torus.index(cell)]
    }

    pub fn ant_at(&self, cell: Cell) -> Option<AntId> {
        self.ant_at[self.torus.index(cell)]
    }

    pub fn pheromone(&self, cell: Cell) -> f64 {
        self.pheromone[self.torus.index(cell)]
    }

    pub fn pheromone_field(&self) -> &[f64] {
        &self.pheromone
    }

    pub fn set_pheromone(&mut self, cell: Cell, sigma: f64) -> Result<()> {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "pheromone {sigma} must be finite and >= 0"
            )));
        }
        let idx = self.torus.index(cell);
        self.pheromone[idx] = sigma;
        Ok(())
    }

    /// Number of items on the eight cells around `cell`.
    pub fn items_around(&self, cell: Cell) -> usize {
        self.torus
            .neighbours(cell)
            .iter()
            .filter(|&&c| self.item_at[self.torus.index(c)].is_some())
            .count()
    }

    pub fn snapshot(&self) -> Snapshot {
        let mut positions = vec![None; self.items.len()];
        for (idx, slot) in self.item_at.iter().enumerate() {
            if let Some(id) = slot {
                positions[*id] = Some(self.torus.cell(idx));
            }
        }
        Snapshot {
            step: self.step,
            positions,
        }
    }

    /// Movement probabilities towards each neighbour in heading order. Cells
    /// holding another ant get zero; all zeros means the ant is boxed in.
    pub fn transition_probabilities(&self, ant: AntId) -> [f64; 8] {
        let mut w = self.transition_weights(ant);
        let total: f64 = w.iter().sum();
        if total > 0.0 {
            for x in &mut w {
                *x /= total;
            }
        }
        w
    }

    fn transition_weights(&self, ant: AntId) -> [f64; 8] {
        let a = self.ants[ant];
        let mut w = [0.0; 8];
        for dir in Direction::ALL {
            let idx = self.torus.index(self.torus.step(a.cell, dir));
            if self.ant_at[idx].is_none() {
                w[dir.index()] = pheromone_weight(self.pheromone[idx], &self.params)
                    * directional_weight(a.heading.turn_to(dir), &self.params);
            }
        }
        w
    }

    /// Samples and performs one move. Returns the new cell.
    pub fn transition_step(&mut self, ant: AntId) -> Cell {
        let w = self.transition_weights(ant);
        let total: f64 = w.iter().sum();
        let here = self.ants[ant].cell;
        if total <= 0.0 {
            return here;
        }
        let target = self.rng.unit() * total;
        let mut acc = 0.0;
        let mut chosen = None;
        for (i, &wi) in w.iter().enumerate() {
            if wi <= 0.0 {
                continue;
            }
            acc += wi;
            chosen = Some(i);
            if target < acc {
                break;
            }
        }
        let dir = Direction::new(chosen.expect("positive total implies a free neighbour") as u8);
        let dest = self.torus.step(here, dir);
        let (from, to) = (self.torus.index(here), self.torus.index(dest));
        self.ant_at[from] = None;
        self.ant_at[to] = Some(ant);
        let a = &mut self.ants[ant];
        a.cell = dest;
        a.heading = dir;
        dest
    }

    /// Counts neighbour votes for moving `focal` given the item count `n`.
    fn vote(&mut self, cell: Cell, focal: ItemId, n: usize, picking: bool) -> usize {
        let chi = crowding(n, &self.params);
        let mut votes = 0;
        for nb in self.torus.neighbours(cell) {
            let Some(other) = self.item_at[self.torus.index(nb)] else {
                continue;
            };
            let d = rms_distance(self.items[focal].values(), self.items[other].values());
            let p = if picking {
                pick_probability(chi, pick_threshold(d, &self.params))
            } else {
                drop_probability(chi, drop_threshold(d, &self.params))
            };
            if self.rng.unit() <= p {
                votes += 1;
            }
        }
        votes
    }

    /// Pick/drop decision, move, and pheromone deposit for one ant.
    pub fn agent_act(&mut self, ant: AntId) -> LoadAction {
        let cell = self.ants[ant].cell;
        let idx = self.torus.index(cell);
        let n = self.items_around(cell);

        let action = match (self.ants[ant].carrying, self.item_at[idx]) {
            (None, Some(item)) => {
                let votes = if n > 0 { self.vote(cell, item, n, true) } else { 0 };
                if n == 0 || 2 * votes >= n {
                    self.item_at[idx] = None;
                    self.ants[ant].carrying = Some(item);
                    LoadAction::Picked(item)
                } else {
                    LoadAction::None
                }
            }
            (Some(item), None) => {
                let votes = if n > 0 { self.vote(cell, item, n, false) } else { 0 };
                if n > 0 && 2 * votes >= n {
                    self.item_at[idx] = Some(item);
                    self.ants[ant].carrying = None;
                    LoadAction::Dropped(item)
                } else {
                    LoadAction::None
                }
            }
            _ => LoadAction::None,
        };

        let dest = self.transition_step(ant);
        let n_new = self.items_around(dest);
        let didx = self.torus.index(dest);
        self.pheromone[didx] += self.params.eta + n_new as f64 / self.params.deposit_a;
        action
    }

    /// Multiplicative decay of the whole field.
    pub fn evaporate(&mut self) {
        let keep = 1.0 - self.params.evap_k;
        for s in &mut self.pheromone {
            *s *= keep;
        }
    }

    /// One colony step: every ant in index order, then evaporation.
    pub fn step(&mut self) {
        for ant in 0..self.ants.len() {
            self.agent_act(ant);
        }
        self.evaporate();
        self.step += 1;
    }

    /// Puts every carried item on the grid: at the carrier's cell when free,
    /// otherwise at the nearest free cell (toroidal distance, row-major ties).
    pub fn force_drop(&mut self) {
        for ant in 0..self.ants.len() {
            let Some(item) = self.ants[ant].carrying.take() else {
                continue;
            };
            let here = self.ants[ant].cell;
            let idx = if self.item_at[self.torus.index(here)].is_none() {
                self.torus.index(here)
            } else {
                (0..self.torus.cells())
                    .filter(|&i| self.item_at[i].is_none())
                    .min_by_key(|&i| (self.torus.distance_sq(here, self.torus.cell(i)), i))
                    .expect("item count never exceeds the cell count")
            };
            self.item_at[idx] = Some(item);
        }
    }

    /// Copy of this state shifted by `(dr, dc)` on the torus, sharing the
    /// same future random stream.
    pub fn translated(&self, dr: isize, dc: isize) -> Self {
        let mut out = self.clone();
        let shift = |idx: usize| self.torus.index(self.torus.shift(self.torus.cell(idx), dr, dc));
        for idx in 0..self.torus.cells() {
            let to = shift(idx);
            out.item_at[to] = self.item_at[idx];
            out.ant_at[to] = self.ant_at[idx];
            out.pheromone[to] = self.pheromone[idx];
        }
        for a in &mut out.ants {
            a.cell = self.torus.shift(a.cell, dr, dc);
        }
        out
    }

    /// Checks item conservation, single occupancy and pheromone sanity.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let mut seen = vec![0u32; self.items.len()];
        for id in self.item_at.iter().flatten() {
            seen[*id] += 1;
        }
        for a in &self.ants {
            if let Some(id) = a.carrying {
                seen[id] += 1;
            }
        }
        if let Some((id, count)) = seen.iter().enumerate().find(|(_, &c)| c != 1) {
            return Err(format!("item {id} present {count} times at step {}", self.step));
        }
        let mut ant_cells = vec![false; self.torus.cells()];
        for (id, a) in self.ants.iter().enumerate() {
            let idx = self.torus.index(a.cell);
            if ant_cells[idx] {
                return Err(format!("two ants on cell {:?} at step {}", a.cell, self.step));
            }
            ant_cells[idx] = true;
            if self.ant_at[idx] != Some(id) {
                return Err(format!("ant layer out of sync for ant {id} at step {}", self.step));
            }
        }
        if self.ant_at.iter().flatten().count() != self.ants.len() {
            return Err(format!("stray ant marker at step {}", self.step));
        }
        if let Some(s) = self.pheromone.iter().find(|s| !(s.is_finite() && **s >= 0.0)) {
            return Err(format!("pheromone {s} at step {}", self.step));
        }
        Ok(())
    }
}

fn free_cell<T>(rng: &mut SwarmRng, layer: &[Option<T>]) -> usize {
    loop {
        let idx = rng.below(layer.len() as u64) as usize;
        if layer[idx].is_none() {
            return idx;
        }
    }
}

/// Result of a complete run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    /// Periodic snapshots including step 0, when requested.
    pub snapshots: Vec<Snapshot>,
    /// Positions after `t_max` steps and the final forced drop.
    pub final_placement: Snapshot,
}

/// Runs the colony for `t_max` steps. With `snapshot_every = Some(s)` the
/// state is recorded at step 0 and every `s` steps.
pub fn run(items: Vec<FeatureVector>, params: Params, snapshot_every: Option<u64>) -> Result<RunOutput> {
    let mut state = SwarmState::new(items, params)?;
    run_state(&mut state, snapshot_every)
}

/// Continues an existing state for `t_max` steps.
pub fn run_state(state: &mut SwarmState, snapshot_every: Option<u64>) -> Result<RunOutput> {
    if snapshot_every == Some(0) {
        return Err(Error::InvalidParams("snapshot interval must be positive".into()));
    }
    let t_max = state.params.t_max;
    let mut snapshots = Vec::new();
    if snapshot_every.is_some() {
        snapshots.push(state.snapshot());
    }
    for t in 1..=t_max {
        state.step();
        if snapshot_every.is_some_and(|s| t % s == 0) {
            snapshots.push(state.snapshot());
        }
    }
    state.force_drop();
    Ok(RunOutput {
        snapshots,
        final_placement: state.snapshot(),
    })
}
