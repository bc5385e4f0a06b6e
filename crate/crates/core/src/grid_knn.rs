//! Nearest-marker classification on the toroidal map the colony leaves
//! behind.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::swarm::{Cell, Torus};

pub type Label = String;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacementEntry {
    pub id: u64,
    pub cell: Cell,
    /// Present for markers, absent for items awaiting classification.
    pub label: Option<Label>,
}

/// Final item positions on a grid. Positions are distinct and in bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    entries: Vec<PlacementEntry>,
    rows: usize,
    cols: usize,
}

impl Placement {
    pub fn new(entries: Vec<PlacementEntry>, rows: usize, cols: usize) -> Result<Self> {
        let mut seen = HashSet::with_capacity(entries.len());
        for e in &entries {
            if e.cell.row >= rows || e.cell.col >= cols {
                return Err(Error::OutOfBounds(e.cell.row, e.cell.col));
            }
            if !seen.insert(e.cell) {
                return Err(Error::DuplicatePosition(e.cell.row, e.cell.col));
            }
        }
        Ok(Self { entries, rows, cols })
    }

    pub fn entries(&self) -> &[PlacementEntry] {
        &self.entries
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Same placement shifted rigidly on the torus.
    pub fn translated(&self, dr: isize, dc: isize) -> Self {
        let torus = Torus::new(self.rows, self.cols);
        let entries = self
            .entries
            .iter()
            .map(|e| PlacementEntry {
                cell: torus.shift(e.cell, dr, dc),
                ..e.clone()
            })
            .collect();
        Self {
            entries,
            rows: self.rows,
            cols: self.cols,
        }
    }
}

/// Wrap-around Euclidean distance between two cells of a `dims` grid.
pub fn toroidal_distance(a: Cell, b: Cell, dims: (usize, usize)) -> f64 {
    (Torus::new(dims.0, dims.1).distance_sq(a, b) as f64).sqrt()
}

/// Labels every unlabeled entry by plurality among its `k` nearest markers.
///
/// Distance ties go to the smaller marker id. Vote ties go to the tied label
/// held by the smallest marker id among the voters. Output follows the
/// order of the unlabeled entries.
pub fn knn_classify(p: &Placement, k: usize) -> Result<Vec<(u64, Label)>> {
    if k.is_multiple_of(2) {
        return Err(Error::EvenK(k));
    }
    let torus = Torus::new(p.rows, p.cols);
    let mut markers: Vec<(&PlacementEntry, &str)> = p
        .entries
        .iter()
        .filter_map(|e| e.label.as_deref().map(|l| (e, l)))
        .collect();
    if markers.len() < k {
        return Err(Error::NotEnoughMarkers {
            needed: k,
            found: markers.len(),
        });
    }
    markers.sort_by_key(|(e, _)| e.id);

    let mut out = Vec::new();
    let mut ranked: Vec<(usize, u64, &str)> = Vec::with_capacity(markers.len());
    for item in p.entries.iter().filter(|e| e.label.is_none()) {
        ranked.clear();
        ranked.extend(
            markers
                .iter()
                .map(|(m, l)| (torus.distance_sq(item.cell, m.cell), m.id, *l)),
        );
        ranked.sort_unstable_by_key(|&(d, id, _)| (d, id));

        // label -> (votes, smallest voter id)
        let mut tally: HashMap<&str, (usize, u64)> = HashMap::new();
        for &(_, id, label) in &ranked[..k] {
            let slot = tally.entry(label).or_insert((0, id));
            slot.0 += 1;
            slot.1 = slot.1.min(id);
        }
        let (label, _) = tally
            .into_iter()
            .max_by(|a, b| a.1 .0.cmp(&b.1 .0).then(b.1 .1.cmp(&a.1 .1)))
            .expect("k >= 1 voters");
        out.push((item.id, label.to_string()));
    }
    Ok(out)
}

/// Fraction of ids whose predicted label equals the truth.
pub fn accuracy(predicted: &[(u64, Label)], truth: &[(u64, Label)]) -> Result<f64> {
    let truth_map: BTreeMap<u64, &str> = truth.iter().map(|(id, l)| (*id, l.as_str())).collect();
    let pred_map: BTreeMap<u64, &str> = predicted.iter().map(|(id, l)| (*id, l.as_str())).collect();
    if truth_map.len() != truth.len() || pred_map.len() != predicted.len() || !truth_map.keys().eq(pred_map.keys()) {
        return Err(Error::IdMismatch);
    }
    if pred_map.is_empty() {
        return Err(Error::NoItems);
    }
    let correct = pred_map.iter().filter(|(id, l)| truth_map[*id] == **l).count();
    Ok(correct as f64 / pred_map.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::swarm::rng::SwarmRng;
    use proptest::prelude::*;

    fn entry(id: u64, row: usize, col: usize, label: Option<&str>) -> PlacementEntry {
        PlacementEntry {
            id,
            cell: Cell::new(row, col),
            label: label.map(str::to_string),
        }
    }

    /// All-pairs reference: floating distances, full sort, explicit counting.
    pub(crate) fn brute_force(p: &Placement, k: usize) -> Vec<(u64, Label)> {
        let (rows, cols) = (p.rows() as f64, p.cols() as f64);
        let dist = |a: Cell, b: Cell| {
            let dr = (a.row as f64 - b.row as f64).abs();
            let dc = (a.col as f64 - b.col as f64).abs();
            let dr = dr.min(rows - dr);
            let dc = dc.min(cols - dc);
            (dr * dr + dc * dc).sqrt()
        };
        let markers: Vec<&PlacementEntry> = p.entries().iter().filter(|e| e.label.is_some()).collect();
        p.entries()
            .iter()
            .filter(|e| e.label.is_none())
            .map(|q| {
                let mut all: Vec<(f64, u64, String)> = markers
                    .iter()
                    .map(|m| (dist(q.cell, m.cell), m.id, m.label.clone().unwrap()))
                    .collect();
                all.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
                let voters = &all[..k];
                let mut labels: Vec<String> = voters.iter().map(|v| v.2.clone()).collect();
                labels.sort();
                labels.dedup();
                let best = labels
                    .into_iter()
                    .map(|l| {
                        let votes = voters.iter().filter(|v| v.2 == l).count();
                        let first = voters.iter().filter(|v| v.2 == l).map(|v| v.1).min().unwrap();
                        (votes, std::cmp::Reverse(first), l)
                    })
                    .max()
                    .unwrap();
                (q.id, best.2)
            })
            .collect()
    }

    #[test]
    fn toroidal_distance_examples() {
        let dims = (15, 15);
        assert_eq!(toroidal_distance(Cell::new(3, 4), Cell::new(3, 4), dims), 0.0);
        assert_eq!(toroidal_distance(Cell::new(0, 0), Cell::new(14, 0), dims), 1.0);
        assert!((toroidal_distance(Cell::new(0, 0), Cell::new(7, 7), dims) - 98f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sample_58_style_vote() {
        // markers 18 and 7 scallop, 17 non-scallop, 20 farther away
        let p = Placement::new(
            vec![
                entry(58, 10, 1, None),
                entry(18, 10, 2, Some("scallop")),
                entry(7, 11, 1, Some("scallop")),
                entry(17, 9, 1, Some("non-scallop")),
                entry(20, 12, 3, Some("non-scallop")),
            ],
            15,
            15,
        )
        .unwrap();
        assert_eq!(knn_classify(&p, 3).unwrap(), vec![(58, "scallop".to_string())]);
    }

    #[test]
    fn k1_takes_nearest() {
        let p = Placement::new(
            vec![
                entry(1, 0, 0, Some("x")),
                entry(2, 5, 5, Some("y")),
                entry(3, 14, 14, None),
            ],
            15,
            15,
        )
        .unwrap();
        assert_eq!(knn_classify(&p, 1).unwrap(), vec![(3, "x".to_string())]);
    }

    #[test]
    fn distance_ties_prefer_smaller_id() {
        let p = Placement::new(
            vec![
                entry(9, 0, 1, Some("a")),
                entry(4, 1, 0, Some("b")),
                entry(100, 0, 0, None),
            ],
            5,
            5,
        )
        .unwrap();
        assert_eq!(knn_classify(&p, 1).unwrap(), vec![(100, "b".to_string())]);
    }

    #[test]
    fn plurality_tie_goes_to_smallest_voter_id() {
        let p = Placement::new(
            vec![
                entry(5, 0, 1, Some("a")),
                entry(3, 1, 0, Some("b")),
                entry(8, 0, 4, Some("c")),
                entry(1, 2, 2, None),
            ],
            5,
            5,
        )
        .unwrap();
        // all three at distinct distances; one vote each; smallest voter id 3 -> "b"
        assert_eq!(knn_classify(&p, 3).unwrap(), vec![(1, "b".to_string())]);
    }

    #[test]
    fn error_cases() {
        let p = Placement::new(vec![entry(1, 0, 0, Some("a")), entry(2, 1, 1, None)], 5, 5).unwrap();
        assert!(matches!(knn_classify(&p, 2), Err(Error::EvenK(2))));
        assert!(matches!(
            knn_classify(&p, 3),
            Err(Error::NotEnoughMarkers { needed: 3, found: 1 })
        ));
        assert!(matches!(
            Placement::new(vec![entry(1, 0, 0, None), entry(2, 0, 0, None)], 5, 5),
            Err(Error::DuplicatePosition(0, 0))
        ));
        assert!(matches!(
            Placement::new(vec![entry(1, 5, 0, None)], 5, 5),
            Err(Error::OutOfBounds(5, 0))
        ));
    }

    #[test]
    fn accuracy_examples() {
        let truth: Vec<(u64, Label)> = (0..40).map(|i| (i, "a".to_string())).collect();
        assert_eq!(accuracy(&truth, &truth).unwrap(), 1.0);
        let wrong: Vec<(u64, Label)> = (0..40).map(|i| (i, "b".to_string())).collect();
        assert_eq!(accuracy(&wrong, &truth).unwrap(), 0.0);
        let mut one_off = truth.clone();
        one_off[7].1 = "b".into();
        assert_eq!(accuracy(&one_off, &truth).unwrap(), 0.975);
        assert!(matches!(accuracy(&truth[..39], &truth), Err(Error::IdMismatch)));
    }

    fn random_placement(rng: &mut SwarmRng, rows: usize, cols: usize, markers: usize, others: usize) -> Placement {
        let mut idx: Vec<usize> = (0..rows * cols).collect();
        let n = markers + others;
        for i in 0..n {
            let j = i + rng.below((idx.len() - i) as u64) as usize;
            idx.swap(i, j);
        }
        let labels = ["a", "b", "c"];
        let entries = idx[..n]
            .iter()
            .enumerate()
            .map(|(i, &cell)| {
                let label = (i < markers).then(|| labels[rng.below(3) as usize]);
                entry(i as u64 + 1, cell / cols, cell % cols, label)
            })
            .collect();
        Placement::new(entries, rows, cols).unwrap()
    }

    #[test]
    fn matches_brute_force_on_random_10x10() {
        let mut rng = SwarmRng::new(2024);
        for _ in 0..100 {
            let p = random_placement(&mut rng, 10, 10, 5, 20);
            assert_eq!(knn_classify(&p, 3).unwrap(), brute_force(&p, 3));
        }
    }

    proptest! {
        #[test]
        fn toroidal_metric_axioms(
            rows in 1usize..30, cols in 1usize..30,
            a in (0usize..30, 0usize..30), b in (0usize..30, 0usize..30), c in (0usize..30, 0usize..30),
        ) {
            let cell = |(r, c): (usize, usize)| Cell::new(r % rows, c % cols);
            let (a, b, c) = (cell(a), cell(b), cell(c));
            let d = |x, y| toroidal_distance(x, y, (rows, cols));
            prop_assert_eq!(d(a, b), d(b, a));
            prop_assert_eq!(d(a, b) == 0.0, a == b);
            prop_assert!(d(a, c) <= d(a, b) + d(b, c) + 1e-12);
        }

        #[test]
        fn classification_translation_invariant(seed in any::<u64>(), dr in -20isize..20, dc in -20isize..20) {
            let mut rng = SwarmRng::new(seed);
            let p = random_placement(&mut rng, 12, 9, 7, 15);
            prop_assert_eq!(knn_classify(&p, 3).unwrap(), knn_classify(&p.translated(dr, dc), 3).unwrap());
        }
    }
}
