//! Feature tables: the embedded larvae invariants, CSV I/O, the synthetic
//! multi-class generator and the two-column scatter export.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::shape_features::{minmax_normalize, FeatureVector};
use crate::swarm::rng::SwarmRng;

pub const SCALLOP: &str = "scallop";
pub const NON_SCALLOP: &str = "non-scallop";

/// Log-normalised Hu invariants `h1..h7` of the twenty reference larvae.
pub const TABLE1: [(u64, [f64; 7]); 20] = [
    (1, [-8.6940, -7.9026, -12.2217, -4.9005, 0.1141, -0.198, 0.0804]),
    (2, [-7.9710, -5.4640, -11.8688, -3.7754, -0.2349, -0.7533, -0.0871]),
    (3, [-8.4007, -6.8575, -11.5683, -6.0194, -0.0865, -0.3836, 0.0658]),
    (4, [-9.1047, -10.4998, -12.4660, -7.8341, -0.0486, -0.2176, 0.0245]),
    (5, [-9.3712, -13.8080, -12.8727, -9.2301, -0.0002, -0.0028, 0.0000]),
    (6, [-9.0280, -9.5743, -12.4695, -8.1891, 0.0332, -0.0844, 0.0218]),
    (7, [-8.7786, -8.2680, -12.0012, -6.3576, -0.0683, -0.1458, -0.0551]),
    (8, [-9.0596, -10.4306, -12.3343, -6.8460, -0.0597, -0.2134, 0.0425]),
    (9, [-9.1003, -9.2379, -12.8374, -8.7028, 0.0197, 0.1318, 0.0068]),
    (10, [-8.8725, -9.5835, -12.0148, -5.5173, -0.1274, -0.3880, 0.0646]),
    (11, [-8.9225, -8.3671, -12.7163, -8.1694, -0.0385, -0.2324, -0.0121]),
    (12, [-8.7167, -7.6808, -12.1323, -6.4967, 0.1003, 0.3857, 0.0381]),
    (13, [-8.4861, -6.3422, -12.8731, -9.0545, -0.0051, -0.0873, 0.0034]),
    (14, [-8.8416, -8.2991, -12.1866, -6.8248, 0.0825, 0.3249, 0.0398]),
    (15, [-8.5474, -6.4951, -12.8462, -8.8891, -0.0053, 0.0707, -0.0075]),
    (16, [-8.8622, -9.1319, -11.6367, -6.7841, 0.1023, 0.3345, 0.0218]),
    (17, [-8.5396, -7.8825, -11.4335, -3.9287, -0.2168, -0.5815, 0.1113]),
    (18, [-8.8719, -8.6952, -11.9684, -6.5917, 0.1032, 0.3574, -0.0280]),
    (19, [-8.2990, -6.0410, -12.2315, -5.7875, 0.1053, 0.3277, 0.0590]),
    (20, [-8.9878, -8.9661, -12.7607, -8.1713, -0.0348, -0.2139, -0.0149]),
];

pub const SCALLOP_IDS: [u64; 5] = [7, 12, 14, 16, 18];

pub const HU_COLUMNS: [&str; 7] = ["h1", "h2", "h3", "h4", "h5", "h6", "h7"];

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow {
    pub id: u64,
    pub values: Vec<f64>,
    pub label: Option<String>,
}

/// Named feature columns plus one row per item.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureTable {
    pub columns: Vec<String>,
    pub rows: Vec<FeatureRow>,
}

impl FeatureTable {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn vectors(&self) -> Vec<FeatureVector> {
        self.rows.iter().map(|r| FeatureVector(r.values.clone())).collect()
    }

    /// Min-max scales every column onto `[0, 1]` over all rows.
    pub fn normalized(&self) -> Result<Self> {
        let scaled = minmax_normalize(&self.vectors())?;
        let rows = self
            .rows
            .iter()
            .zip(scaled)
            .map(|(r, v)| FeatureRow {
                values: v.0,
                ..r.clone()
            })
            .collect();
        Ok(Self {
            columns: self.columns.clone(),
            rows,
        })
    }

    pub fn column(&self, name: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::UnknownColumn(name.to_string()))
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(false).from_reader(reader);
        let mut records = rdr.records();
        let Some(header) = records.next().transpose()? else {
            return Ok(Self::default());
        };
        let header: Vec<String> = header.iter().map(|h| h.trim().to_string()).collect();
        if header.first().map(String::as_str) != Some("id") {
            return Err(Error::Format("feature CSV must start with an `id` column".into()));
        }
        let labeled = header.last().map(String::as_str) == Some("label") && header.len() > 1;
        let end = if labeled { header.len() - 1 } else { header.len() };
        let columns = header[1..end].to_vec();

        let mut rows = Vec::new();
        for (line, rec) in records.enumerate() {
            let rec = rec?;
            if rec.len() != header.len() {
                return Err(Error::Format(format!(
                    "row {} has {} fields, header has {}",
                    line + 2,
                    rec.len(),
                    header.len()
                )));
            }
            let id = rec[0]
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("row {}: bad id `{}`", line + 2, &rec[0])))?;
            let values = (1..end)
                .map(|i| {
                    rec[i]
                        .trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Format(format!("row {}: bad number `{}`", line + 2, &rec[i])))
                })
                .collect::<Result<Vec<_>>>()?;
            let label = if labeled {
                Some(rec[end].trim().to_string()).filter(|l| !l.is_empty())
            } else {
                None
            };
            rows.push(FeatureRow { id, values, label });
        }
        Ok(Self { columns, rows })
    }

    /// Writes `id,<columns>,label` with lossless reals of at least nine
    /// significant digits.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(writer);
        let mut header = vec!["id".to_string()];
        header.extend(self.columns.iter().cloned());
        header.push("label".into());
        w.write_record(&header)?;
        for r in &self.rows {
            let mut rec = vec![r.id.to_string()];
            rec.extend(r.values.iter().map(|&v| format_real(v)));
            rec.push(r.label.clone().unwrap_or_default());
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Shortest round-trip decimal, padded with trailing zeros to at least nine
/// significant digits.
pub fn format_real(v: f64) -> String {
    const MIN_DIGITS: usize = 9;
    if !v.is_finite() {
        return v.to_string();
    }
    let mut s = v.to_string();
    let digits: String = s.chars().filter(|c| c.is_ascii_digit()).collect();
    let significant = if v == 0.0 {
        // "0" counts as one digit
        digits.len()
    } else {
        digits.trim_start_matches('0').len()
    };
    if significant < MIN_DIGITS {
        if !s.contains('.') {
            s.push('.');
        }
        s.extend(std::iter::repeat_n('0', MIN_DIGITS - significant));
    }
    s
}

/// The twenty reference rows, optionally repeated three times (ids 21-40 and
/// 41-60 copy 1-20) and optionally min-max normalised over the emitted set.
pub fn table1(triplicate: bool, normalize: bool) -> Result<FeatureTable> {
    let copies = if triplicate { 3 } else { 1 };
    let mut rows = Vec::with_capacity(20 * copies);
    for copy in 0..copies as u64 {
        for (id, values) in TABLE1 {
            let label = if SCALLOP_IDS.contains(&id) {
                SCALLOP
            } else {
                NON_SCALLOP
            };
            rows.push(FeatureRow {
                id: id + 20 * copy,
                values: values.to_vec(),
                label: Some(label.to_string()),
            });
        }
    }
    let table = FeatureTable {
        columns: HU_COLUMNS.iter().map(|s| s.to_string()).collect(),
        rows,
    };
    if normalize {
        table.normalized()
    } else {
        Ok(table)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub classes: usize,
    pub per_class: usize,
    pub features: usize,
    /// Distance of class centres from the middle of the unit cube, per axis,
    /// expressed as the full swing between the two sign levels.
    pub separation: f64,
    /// Half-width of the per-component uniform jitter.
    pub jitter: f64,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            classes: 4,
            per_class: 200,
            features: 7,
            separation: 0.85,
            jitter: 0.07,
            seed: 0,
        }
    }
}

/// Labeled clusters in `[0, 1]^F`. Class centres sit at `0.5 ± separation/2`
/// per axis, with sign patterns taken from Sylvester-Hadamard rows so that any
/// two centres differ on half of the axes.
pub fn synth(cfg: &SynthConfig) -> Result<FeatureTable> {
    if cfg.classes < 2 {
        return Err(Error::InvalidParams(format!(
            "need at least 2 classes, got {}",
            cfg.classes
        )));
    }
    if cfg.features == 0 {
        return Err(Error::InvalidParams("need at least one feature".into()));
    }
    if !(cfg.separation.is_finite() && cfg.jitter.is_finite() && cfg.separation >= 0.0 && cfg.jitter >= 0.0) {
        return Err(Error::InvalidParams(
            "separation and jitter must be finite and >= 0".into(),
        ));
    }
    let order = cfg.classes.max(cfg.features + 1).next_power_of_two();
    let sign = |row: usize, col: usize| {
        if (row & col).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    };

    let mut rng = SwarmRng::new(cfg.seed);
    let mut rows = Vec::with_capacity(cfg.classes * cfg.per_class);
    for class in 0..cfg.classes {
        let centre: Vec<f64> = (1..=cfg.features)
            .map(|col| 0.5 + 0.5 * cfg.separation * sign(class % order, col))
            .collect();
        for _ in 0..cfg.per_class {
            let values = centre
                .iter()
                .map(|&c| (c + cfg.jitter * (2.0 * rng.unit() - 1.0)).clamp(0.0, 1.0))
                .collect();
            rows.push(FeatureRow {
                id: rows.len() as u64 + 1,
                values,
                label: Some(format!("class{}", class + 1)),
            });
        }
    }
    Ok(FeatureTable {
        columns: (1..=cfg.features).map(|i| format!("f{i}")).collect(),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatterPoint {
    pub id: u64,
    pub x: f64,
    pub y: f64,
    pub label: Option<String>,
}

pub fn scatter(table: &FeatureTable, x: &str, y: &str) -> Result<Vec<ScatterPoint>> {
    let (xi, yi) = (table.column(x)?, table.column(y)?);
    Ok(table
        .rows
        .iter()
        .map(|r| ScatterPoint {
            id: r.id,
            x: r.values[xi],
            y: r.values[yi],
            label: r.label.clone(),
        })
        .collect())
}

pub fn write_scatter<W: Write>(points: &[ScatterPoint], writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    w.write_record(["id", "x", "y", "label"])?;
    for p in points {
        w.write_record([
            p.id.to_string(),
            format_real(p.x),
            format_real(p.y),
            p.label.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
