use serde::{Deserialize, Serialize};

/// Grid coordinate, zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

/// One of the eight compass headings, numbered clockwise from north.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Direction(u8);

impl Direction {
    pub const ALL: [Direction; 8] = [
        Direction(0),
        Direction(1),
        Direction(2),
        Direction(3),
        Direction(4),
        Direction(5),
        Direction(6),
        Direction(7),
    ];

    const OFFSETS: [(isize, isize); 8] = [(-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1)];

    pub fn new(index: u8) -> Self {
        Direction(index % 8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn offset(self) -> (isize, isize) {
        Self::OFFSETS[self.0 as usize]
    }

    /// Signed turn from `self` to `to` in 45° steps, in `-3..=4`.
    pub fn turn_to(self, to: Direction) -> i32 {
        let d = (to.0 as i32 - self.0 as i32).rem_euclid(8);
        if d > 4 {
            d - 8
        } else {
            d
        }
    }
}

/// Toroidal lattice geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Torus {
    pub rows: usize,
    pub cols: usize,
}

impl Torus {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols }
    }

    pub fn cells(&self) -> usize {
        self.rows * self.cols
    }

    #[inline]
    pub fn index(&self, cell: Cell) -> usize {
        cell.row * self.cols + cell.col
    }

    #[inline]
    pub fn cell(&self, index: usize) -> Cell {
        Cell::new(index / self.cols, index % self.cols)
    }

    #[inline]
    pub fn step(&self, cell: Cell, dir: Direction) -> Cell {
        self.shift(cell, dir.offset().0, dir.offset().1)
    }

    pub fn shift(&self, cell: Cell, dr: isize, dc: isize) -> Cell {
        Cell::new(
            (cell.row as isize + dr).rem_euclid(self.rows as isize) as usize,
            (cell.col as isize + dc).rem_euclid(self.cols as isize) as usize,
        )
    }

    /// The eight Moore neighbours in heading order.
    pub fn neighbours(&self, cell: Cell) -> [Cell; 8] {
        Direction::ALL.map(|d| self.step(cell, d))
    }

    /// Squared wrap-around Euclidean distance, exact in integers.
    pub fn distance_sq(&self, a: Cell, b: Cell) -> usize {
        let dr = a.row.abs_diff(b.row);
        let dc = a.col.abs_diff(b.col);
        let dr = dr.min(self.rows - dr);
        let dc = dc.min(self.cols - dc);
        dr * dr + dc * dc
    }
}
