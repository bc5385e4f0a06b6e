//! End-to-end experiment steps: image to features, features to a clustered
//! map, map to predictions.
//!
//! Each step is a pure function of its inputs and [`RunConfig`]; the `write_*`
//! helpers persist results in the on-disk formats the command-line tool uses.

mod config;
mod manifest;

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

pub use config::{parse_range, RunConfig, CONFIG_ENV};
pub use manifest::{EntropyRecord, InputRecord, Manifest};

use crate::dataset::{format_real, FeatureRow, FeatureTable, HU_COLUMNS};
use crate::error::{Error, Result};
use crate::grid_knn::{knn_classify, Placement, PlacementEntry};
use crate::netpbm;
use crate::segmentation::segment;
use crate::shape_features::{hu_invariants, log_normalize};
use crate::swarm::{run, spatial_entropy, Cell, Snapshot};

pub const EMPTY_CELL: u8 = 0;
pub const ITEM_CELL: u8 = 128;
pub const HIGHLIGHT_CELL: u8 = 255;

fn csv_writer<W: std::io::Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hu invariants of the largest object in one image.
pub fn extract_one(path: &Path, cfg: &RunConfig) -> Result<Vec<f64>> {
    let img = netpbm::read_grey(path)?;
    let mask = segment(&img, cfg.polarity)?;
    let hu = hu_invariants(&mask)?;
    let hu = match cfg.log {
        Some(t) => log_normalize(&hu, t),
        None => hu,
    };
    Ok(hu.0.to_vec())
}

/// Per-image features, id = 1-based position in `paths`. Failed images keep
/// their id out of the table and are returned with the error.
pub fn extract(
    paths: &[PathBuf],
    cfg: &RunConfig,
    label: Option<&str>,
    jobs: usize,
) -> (FeatureTable, Vec<(PathBuf, Error)>) {
    let jobs = jobs.max(1).min(paths.len().max(1));
    let chunk = paths.len().div_ceil(jobs).max(1);
    let results: Vec<Result<Vec<f64>>> = std::thread::scope(|s| {
        let handles: Vec<_> = paths
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|p| extract_one(p, cfg)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("extraction worker panicked"))
            .collect()
    });

    let mut table = FeatureTable {
        columns: HU_COLUMNS.iter().map(|s| s.to_string()).collect(),
        rows: Vec::new(),
    };
    let mut failures = Vec::new();
    for (i, (path, res)) in paths.iter().zip(results).enumerate() {
        match res {
            Ok(values) => table.rows.push(FeatureRow {
                id: i as u64 + 1,
                values,
                label: label.map(str::to_string),
            }),
            Err(e) => failures.push((path.clone(), e)),
        }
    }
    (table, failures)
}

/// A clustered map plus everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterOutput {
    pub placement: Vec<PlacementRow>,
    pub manifest: Manifest,
    pub snapshots: Vec<Snapshot>,
    /// Row labels in item order, for rendering snapshots.
    pub labels: Vec<Option<String>>,
    pub ids: Vec<u64>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacementRow {
    pub id: u64,
    pub cell: Cell,
    pub label: Option<String>,
}

fn entropy_of(snap: &Snapshot, cfg: &RunConfig) -> Result<Option<f64>> {
    let p = &cfg.params;
    match spatial_entropy(snap.placed(), p.grid_rows, p.grid_cols, cfg.block_size) {
        Ok(e) => Ok(Some(e)),
        Err(Error::NoItems) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Clusters the rows of `table`. `input` identifies the source bytes in the
/// manifest.
pub fn cluster(table: &FeatureTable, input: InputRecord, cfg: &RunConfig) -> Result<ClusterOutput> {
    cfg.validate()?;
    let mut warnings = Vec::new();
    let table = if cfg.normalize && !table.is_empty() {
        table.normalized()?
    } else {
        table.clone()
    };
    if table.is_empty() {
        warnings.push("input has no items; writing an empty placement".to_string());
    }

    let out = run(table.vectors(), cfg.params.clone(), cfg.snapshot_every)?;

    let mut entropy = Vec::with_capacity(out.snapshots.len());
    for s in &out.snapshots {
        entropy.push(EntropyRecord {
            step: s.step,
            entropy: entropy_of(s, cfg)?,
            carried: s.carried(),
        });
    }
    let final_entropy = entropy_of(&out.final_placement, cfg)?;

    let labels: Vec<Option<String>> = table.rows.iter().map(|r| r.label.clone()).collect();
    let ids: Vec<u64> = table.rows.iter().map(|r| r.id).collect();
    let placement = table
        .rows
        .iter()
        .zip(&out.final_placement.positions)
        .map(|(r, pos)| PlacementRow {
            id: r.id,
            cell: pos.expect("every item is on the grid after the final drop"),
            label: r.label.clone(),
        })
        .collect();

    let mut classes = BTreeMap::new();
    for l in labels.iter().flatten() {
        let v = if cfg.highlight.as_deref() == Some(l.as_str()) {
            HIGHLIGHT_CELL
        } else {
            ITEM_CELL
        };
        classes.insert(l.clone(), v);
    }

    let manifest = Manifest {
        tool: format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
        seed: cfg.params.seed,
        params: cfg.params.clone(),
        block_size: cfg.block_size,
        snapshot_every: cfg.snapshot_every,
        normalize: cfg.normalize,
        highlight: cfg.highlight.clone(),
        input,
        classes,
        entropy,
        final_entropy,
    };
    Ok(ClusterOutput {
        placement,
        manifest,
        snapshots: out.snapshots,
        labels,
        ids,
        warnings,
    })
}

/// Reads, hashes and parses a features CSV, then clusters it.
pub fn cluster_file(path: &Path, cfg: &RunConfig) -> Result<ClusterOutput> {
    let bytes = fs::read(path)?;
    let table = FeatureTable::read_csv(bytes.as_slice())?;
    let input = InputRecord {
        file: path
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default(),
        sha256: sha256_hex(&bytes),
        items: table.rows.len(),
        features: table.columns.len(),
    };
    cluster(&table, input, cfg)
}

/// Re-runs a recorded experiment on `path`, refusing input whose hash differs.
pub fn replay(manifest: &Manifest, path: &Path) -> Result<ClusterOutput> {
    let bytes = fs::read(path)?;
    let digest = sha256_hex(&bytes);
    if digest != manifest.input.sha256 {
        return Err(Error::Format(format!(
            "input hash {digest} does not match manifest {}",
            manifest.input.sha256
        )));
    }
    cluster_file(path, &manifest.to_config())
}

pub fn write_placement<W: std::io::Write>(rows: &[PlacementRow], w: W) -> Result<()> {
    let mut w = csv_writer(w);
    w.write_record(["id", "row", "col", "label"])?;
    for r in rows {
        w.write_record([
            r.id.to_string(),
            r.cell.row.to_string(),
            r.cell.col.to_string(),
            r.label.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_placement<R: Read>(r: R) -> Result<Vec<PlacementRow>> {
    let mut rdr = csv::ReaderBuilder::new().from_reader(r);
    let header: Vec<String> = rdr.headers()?.iter().map(|h| h.trim().to_string()).collect();
    if header.is_empty() || header == [""] {
        return Ok(Vec::new());
    }
    if header != ["id", "row", "col", "label"] {
        return Err(Error::Format(format!(
            "placement header must be id,row,col,label, got {}",
            header.join(",")
        )));
    }
    let mut rows = Vec::new();
    for (n, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let num = |i: usize| -> Result<u64> {
            rec[i]
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("placement row {}: bad number `{}`", n + 2, &rec[i])))
        };
        rows.push(PlacementRow {
            id: num(0)?,
            cell: Cell::new(num(1)? as usize, num(2)? as usize),
            label: Some(rec[3].trim().to_string()).filter(|l| !l.is_empty()),
        });
    }
    Ok(rows)
}

/// Greymap of a snapshot: empty cells 0, items 128, the highlighted class 255.
pub fn render_snapshot(snap: &Snapshot, labels: &[Option<String>], cfg: &RunConfig) -> Vec<u8> {
    let p = &cfg.params;
    let mut px = vec![EMPTY_CELL; p.grid_rows * p.grid_cols];
    for (pos, label) in snap.positions.iter().zip(labels) {
        if let Some(c) = pos {
            let hot = cfg.highlight.is_some() && label.as_deref() == cfg.highlight.as_deref();
            px[c.row * p.grid_cols + c.col] = if hot { HIGHLIGHT_CELL } else { ITEM_CELL };
        }
    }
    px
}

/// Writes `placement.csv`, `manifest.json` and, when snapshots were taken,
/// `snapshots/step_<n>.{csv,pgm}` under `dir`.
pub fn write_cluster(out: &ClusterOutput, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    write_placement(&out.placement, fs::File::create(dir.join("placement.csv"))?)?;
    fs::write(dir.join("manifest.json"), out.manifest.to_json()?)?;
    if out.snapshots.is_empty() {
        return Ok(());
    }
    let snap_dir = dir.join("snapshots");
    fs::create_dir_all(&snap_dir)?;
    let cfg = out.manifest.to_config();
    let width = out.manifest.params.t_max.to_string().len();
    for s in &out.snapshots {
        let stem = format!("step_{:0width$}", s.step);
        let rows: Vec<PlacementRow> = s
            .positions
            .iter()
            .zip(out.ids.iter().zip(&out.labels))
            .filter_map(|(pos, (&id, label))| {
                pos.map(|cell| PlacementRow {
                    id,
                    cell,
                    label: label.clone(),
                })
            })
            .collect();
        write_placement(&rows, fs::File::create(snap_dir.join(format!("{stem}.csv")))?)?;
        netpbm::write_pgm(
            &snap_dir.join(format!("{stem}.pgm")),
            cfg.params.grid_rows,
            cfg.params.grid_cols,
            &render_snapshot(s, &out.labels, &cfg),
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub id: u64,
    pub predicted: String,
    pub truth: Option<String>,
}

impl Prediction {
    pub fn correct(&self) -> Option<bool> {
        self.truth.as_ref().map(|t| *t == self.predicted)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifyOutput {
    pub predictions: Vec<Prediction>,
    /// Predictions whose truth label is known.
    pub scored: usize,
    pub correct: usize,
}

impl ClassifyOutput {
    pub fn accuracy(&self) -> Option<f64> {
        (self.scored > 0).then(|| self.correct as f64 / self.scored as f64)
    }
}

/// Items with ids in `cfg.markers` vote with their labels; every other item is
/// classified and scored against its own label when it has one.
pub fn classify(rows: &[PlacementRow], cfg: &RunConfig) -> Result<ClassifyOutput> {
    let entries = rows
        .iter()
        .map(|r| PlacementEntry {
            id: r.id,
            cell: r.cell,
            label: if cfg.markers.contains(&r.id) {
                r.label.clone()
            } else {
                None
            },
        })
        .collect();
    let placement = Placement::new(entries, cfg.params.grid_rows, cfg.params.grid_cols)?;
    let truth: BTreeMap<u64, Option<String>> = rows.iter().map(|r| (r.id, r.label.clone())).collect();
    let predictions: Vec<Prediction> = knn_classify(&placement, cfg.k)?
        .into_iter()
        .map(|(id, predicted)| Prediction {
            id,
            predicted,
            truth: truth[&id].clone(),
        })
        .collect();
    let scored = predictions.iter().filter(|p| p.truth.is_some()).count();
    let correct = predictions.iter().filter(|p| p.correct() == Some(true)).count();
    Ok(ClassifyOutput {
        predictions,
        scored,
        correct,
    })
}

pub fn write_predictions<W: std::io::Write>(preds: &[Prediction], w: W) -> Result<()> {
    let mut w = csv_writer(w);
    w.write_record(["id", "predicted", "truth", "correct"])?;
    for p in preds {
        w.write_record([
            p.id.to_string(),
            p.predicted.clone(),
            p.truth.clone().unwrap_or_default(),
            p.correct().map(|c| c.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `correct/scored = accuracy` line for terminal output.
pub fn accuracy_line(out: &ClassifyOutput) -> String {
    match out.accuracy() {
        Some(a) => format!("accuracy {}/{} = {}", out.correct, out.scored, format_real(a)),
        None => "accuracy n/a (no labeled items outside the marker range)".to_string(),
    }
}
