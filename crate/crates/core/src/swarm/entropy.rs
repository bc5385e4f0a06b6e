use crate::error::{Error, Result};

use super::grid::Cell;

/// Shannon entropy (nats) of item counts over `block × block` tiles of the
/// grid. Tiles on the bottom and right edges may be smaller.
pub fn spatial_entropy<I>(positions: I, rows: usize, cols: usize, block: usize) -> Result<f64>
where
    I: IntoIterator<Item = Cell>,
{
    if block == 0 {
        return Err(Error::InvalidParams("block size must be positive".into()));
    }
    let (brows, bcols) = (rows.div_ceil(block), cols.div_ceil(block));
    let mut counts = vec![0usize; brows * bcols];
    let mut total = 0usize;
    for cell in positions {
        if cell.row >= rows || cell.col >= cols {
            return Err(Error::OutOfBounds(cell.row, cell.col));
        }
        counts[(cell.row / block) * bcols + cell.col / block] += 1;
        total += 1;
    }
    if total == 0 {
        return Err(Error::NoItems);
    }
    let n = total as f64;
    Ok(counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum())
}

/// Lowest entropy reachable by `items` items when each tile holds at most
/// `block²` of them: fill tiles completely, one partial tile for the rest.
pub fn entropy_floor(items: usize, block: usize) -> f64 {
    let cap = block * block;
    if items == 0 || cap == 0 {
        return 0.0;
    }
    let n = items as f64;
    let full = items / cap;
    let rest = items % cap;
    let mut e = 0.0;
    if full > 0 {
        let p = cap as f64 / n;
        e -= full as f64 * p * p.ln();
    }
    if rest > 0 {
        let p = rest as f64 / n;
        e -= p * p.ln();
    }
    e
}
