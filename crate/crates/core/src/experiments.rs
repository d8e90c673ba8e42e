//! Experiment campaigns and their CSV artifacts.
//!
//! Configuration is a flat `key=value` file; every key can also be set
//! individually (the CLI maps `--set key=value` onto [`ExperimentConfig::set`]).

use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::circuit::AnsatzKind;
use crate::error::{invalid, Error, Result};
use crate::graph::{
    connectedness_curve, count_unlabeled_graphs, generate_balanced_dataset, labeled_graph_count,
    write_curve_csv, CurvePoint, Dataset, DatasetMeta, Property,
};
use crate::training::{aggregate_seeds, train_run, EpochStats, MetricMode, RunRecord, TrainConfig};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "PERMQML_OUT_DIR";

pub fn default_output_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("out"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub property: Property,
    pub n_qubits: usize,
    pub ansatzes: Vec<AnsatzKind>,
    pub train: TrainConfig,
    pub dataset: PathBuf,
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let output_dir = default_output_dir();
        Self {
            property: Property::Connected,
            n_qubits: 8,
            ansatzes: AnsatzKind::ALL.to_vec(),
            train: TrainConfig::default(),
            dataset: output_dir.join("dataset.csv"),
            output_dir,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad value for {key}: {value:?}")))
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_num(key, s))
        .collect()
}

impl ExperimentConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let t = &mut self.train;
        match key.trim() {
            "property" => self.property = value.trim().parse()?,
            "n_qubits" => self.n_qubits = parse_num(key, value)?,
            "ansatzes" => {
                self.ansatzes = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(str::parse)
                    .collect::<Result<_>>()?
            }
            "learning_rate" => t.learning_rate = parse_num(key, value)?,
            "metric_regularizer" => t.metric_regularizer = parse_num(key, value)?,
            "epochs" => t.epochs = parse_num(key, value)?,
            "train_per_epoch" => t.train_per_epoch = parse_num(key, value)?,
            "minibatch" => t.minibatch = parse_num(key, value)?,
            "near_zero_epsilon" => t.near_zero_epsilon = parse_num(key, value)?,
            "seeds" => t.seeds = parse_list(key, value)?,
            "metric" => {
                t.metric_mode = match value.trim() {
                    "exact" => MetricMode::Exact,
                    "block_diagonal" => MetricMode::BlockDiagonal,
                    other => return Err(Error::Parse(format!("unknown metric mode {other:?}"))),
                }
            }
            "dataset" => self.dataset = PathBuf::from(value.trim()),
            "output_dir" => self.output_dir = PathBuf::from(value.trim()),
            other => return Err(Error::Parse(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Applies `key=value` lines; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key=value", i + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let t = &self.train;
        let join = |v: Vec<String>| v.join(",");
        let mut s = String::new();
        let _ = writeln!(s, "property={}", self.property);
        let _ = writeln!(s, "n_qubits={}", self.n_qubits);
        let _ = writeln!(
            s,
            "ansatzes={}",
            join(self.ansatzes.iter().map(|k| k.name().to_string()).collect())
        );
        let _ = writeln!(s, "learning_rate={}", t.learning_rate);
        let _ = writeln!(s, "metric_regularizer={}", t.metric_regularizer);
        let _ = writeln!(s, "epochs={}", t.epochs);
        let _ = writeln!(s, "train_per_epoch={}", t.train_per_epoch);
        let _ = writeln!(s, "minibatch={}", t.minibatch);
        let _ = writeln!(s, "near_zero_epsilon={}", t.near_zero_epsilon);
        let _ = writeln!(s, "seeds={}", join(t.seeds.iter().map(u64::to_string).collect()));
        let metric = match t.metric_mode {
            MetricMode::Exact => "exact",
            MetricMode::BlockDiagonal => "block_diagonal",
        };
        let _ = writeln!(s, "metric={metric}");
        let _ = writeln!(s, "dataset={}", self.dataset.display());
        let _ = writeln!(s, "output_dir={}", self.output_dir.display());
        s
    }

    pub fn validate(&self) -> Result<()> {
        if self.ansatzes.is_empty() {
            return Err(invalid("no ansatz selected"));
        }
        if self.n_qubits < 3 {
            return Err(invalid("n_qubits must be at least 3"));
        }
        if self.train.seeds.len() < 2 {
            return Err(invalid("at least two seeds are needed for aggregate intervals"));
        }
        self.train.validate()
    }
}

/// Generates a balanced dataset and writes it with its metadata sidecar.
pub fn cmd_gen(property: Property, n: usize, total: usize, seed: u64, out_path: &Path) -> Result<DatasetMeta> {
    let ds = generate_balanced_dataset(property, n, total, &mut ChaCha8Rng::seed_from_u64(seed))?;
    if let Some(dir) = out_path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    ds.save(out_path, seed)?;
    let (positives, negatives) = ds.class_counts();
    Ok(DatasetMeta {
        property,
        n,
        seed,
        positives,
        negatives,
    })
}

/// One row of a raw run file.
#[derive(Clone, Debug, PartialEq)]
pub struct RawRow {
    pub epoch: usize,
    pub ansatz: AnsatzKind,
    pub seed: u64,
    pub loss: f64,
    pub train_acc: f64,
    pub val_acc: f64,
    pub near_zero_frac: f64,
}

pub const RAW_HEADER: [&str; 7] = ["epoch", "ansatz", "seed", "loss", "train_acc", "val_acc", "near_zero_frac"];

pub fn write_raw_csv<W: Write>(record: &RunRecord, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(RAW_HEADER)?;
    for e in &record.epochs {
        out.write_record([
            e.epoch.to_string(),
            record.ansatz.name().to_string(),
            record.seed.to_string(),
            e.loss.to_string(),
            e.train_acc.to_string(),
            e.val_acc.to_string(),
            e.near_zero_frac.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_raw_csv<R: Read>(r: R) -> Result<Vec<RawRow>> {
    let mut rdr = csv::Reader::from_reader(r);
    if rdr.headers()?.iter().collect::<Vec<_>>() != RAW_HEADER {
        return Err(Error::Parse("unexpected raw run header".into()));
    }
    rdr.records()
        .map(|rec| {
            let rec = rec?;
            let f = |i: usize| rec.get(i).unwrap_or("");
            Ok(RawRow {
                epoch: parse_num("epoch", f(0))?,
                ansatz: f(1).parse()?,
                seed: parse_num("seed", f(2))?,
                loss: parse_num("loss", f(3))?,
                train_acc: parse_num("train_acc", f(4))?,
                val_acc: parse_num("val_acc", f(5))?,
                near_zero_frac: parse_num("near_zero_frac", f(6))?,
            })
        })
        .collect()
}

/// Rebuilds per-seed records from raw rows (parameters are not stored).
pub fn records_from_raw(rows: &[RawRow], property: Property) -> Vec<RunRecord> {
    let mut out: Vec<RunRecord> = Vec::new();
    for r in rows {
        let stats = EpochStats {
            epoch: r.epoch,
            loss: r.loss,
            train_acc: r.train_acc,
            val_acc: r.val_acc,
            near_zero_frac: r.near_zero_frac,
        };
        match out.iter_mut().find(|rec| rec.ansatz == r.ansatz && rec.seed == r.seed) {
            Some(rec) => rec.epochs.push(stats),
            None => out.push(RunRecord {
                seed: r.seed,
                ansatz: r.ansatz,
                property,
                epochs: vec![stats],
                final_params: vec![],
            }),
        }
    }
    out
}

/// Aggregate table: one row per epoch, `<stem>_mean,<stem>_ci95` per kind.
#[derive(Clone, Debug, PartialEq)]
pub struct AggregateTable {
    pub kinds: Vec<AnsatzKind>,
    /// `rows[e] = (epoch, [(mean, ci95) per kind])`.
    pub rows: Vec<(usize, Vec<(f64, f64)>)>,
}

impl AggregateTable {
    /// Groups `records` by ansatz (in `kinds` order) and aggregates seeds.
    pub fn from_records(kinds: &[AnsatzKind], records: &[RunRecord]) -> Result<Self> {
        let mut per_kind = Vec::with_capacity(kinds.len());
        for &k in kinds {
            let runs: Vec<RunRecord> = records.iter().filter(|r| r.ansatz == k).cloned().collect();
            per_kind.push(aggregate_seeds(&runs)?);
        }
        let epochs = per_kind.first().map_or(0, Vec::len);
        if per_kind.iter().any(|a| a.len() != epochs) {
            return Err(invalid("ansatzes were trained for different epoch counts"));
        }
        let rows = (0..epochs)
            .map(|e| {
                (
                    per_kind[0][e].epoch,
                    per_kind.iter().map(|a| (a[e].mean, a[e].ci95)).collect(),
                )
            })
            .collect();
        Ok(Self {
            kinds: kinds.to_vec(),
            rows,
        })
    }

    pub fn header(&self) -> Vec<String> {
        let mut h = vec!["epoch".to_string()];
        for k in &self.kinds {
            h.push(format!("{}_mean", k.column_stem()));
            h.push(format!("{}_ci95", k.column_stem()));
        }
        h
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(self.header())?;
        for (epoch, cols) in &self.rows {
            let mut rec = vec![epoch.to_string()];
            for (m, c) in cols {
                rec.push(m.to_string());
                rec.push(c.to_string());
            }
            out.write_record(rec)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
        if header.first().map(String::as_str) != Some("epoch") || header.len() % 2 != 1 {
            return Err(Error::Parse("unexpected aggregate header".into()));
        }
        let kinds = header[1..]
            .chunks(2)
            .map(|pair| {
                let stem = pair[0]
                    .strip_suffix("_mean")
                    .ok_or_else(|| Error::Parse(format!("expected a _mean column, got {}", pair[0])))?;
                if pair[1] != format!("{stem}_ci95") {
                    return Err(Error::Parse(format!("expected {stem}_ci95, got {}", pair[1])));
                }
                stem.parse()
            })
            .collect::<Result<Vec<AnsatzKind>>>()?;
        let rows = rdr
            .records()
            .map(|rec| {
                let rec = rec?;
                let epoch = parse_num("epoch", rec.get(0).unwrap_or(""))?;
                let cols = (0..kinds.len())
                    .map(|i| {
                        Ok((
                            parse_num("mean", rec.get(1 + 2 * i).unwrap_or(""))?,
                            parse_num("ci95", rec.get(2 + 2 * i).unwrap_or(""))?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((epoch, cols))
            })
            .collect::<Result<_>>()?;
        Ok(Self { kinds, rows })
    }
}

pub struct TrainOutputs {
    pub records: Vec<RunRecord>,
    pub raw_paths: Vec<PathBuf>,
    pub aggregate_path: PathBuf,
    pub aggregate: AggregateTable,
}

pub fn raw_path(dir: &Path, kind: AnsatzKind, seed: u64) -> PathBuf {
    dir.join(format!("raw_{}_seed{}.csv", kind.name(), seed))
}

/// Trains every requested ansatz for every seed on the configured dataset
/// and writes one raw CSV per run plus `aggregate.csv`.
pub fn cmd_train(config: &ExperimentConfig) -> Result<TrainOutputs> {
    config.validate()?;
    let (dataset, meta) = Dataset::load(&config.dataset)?;
    if meta.property != config.property || dataset.n != config.n_qubits {
        return Err(invalid(format!(
            "dataset holds {} graphs on {} nodes but the config asks for {} on {}",
            meta.property, dataset.n, config.property, config.n_qubits
        )));
    }
    run_campaign(config, &dataset)
}

/// [`cmd_train`] on an in-memory dataset.
pub fn run_campaign(config: &ExperimentConfig, dataset: &Dataset) -> Result<TrainOutputs> {
    config.validate()?;
    let jobs: Vec<(AnsatzKind, u64)> = config
        .ansatzes
        .iter()
        .flat_map(|&k| config.train.seeds.iter().map(move |&s| (k, s)))
        .collect();
    let records = jobs
        .par_iter()
        .map(|&(k, s)| train_run(k, dataset, &config.train, s))
        .collect::<Result<Vec<_>>>()?;

    fs::create_dir_all(&config.output_dir)?;
    let mut raw_paths = Vec::with_capacity(records.len());
    for r in &records {
        let path = raw_path(&config.output_dir, r.ansatz, r.seed);
        write_raw_csv(r, BufWriter::new(File::create(&path)?))?;
        raw_paths.push(path);
    }
    let aggregate = AggregateTable::from_records(&config.ansatzes, &records)?;
    let aggregate_path = config.output_dir.join("aggregate.csv");
    aggregate.write_csv(BufWriter::new(File::create(&aggregate_path)?))?;
    Ok(TrainOutputs {
        records,
        raw_paths,
        aggregate_path,
        aggregate,
    })
}

/// Evenly spaced grid `0, 1/(points-1), …, 1`.
pub fn unit_grid(points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![0.0],
        _ => (0..points).map(|i| i as f64 / (points - 1) as f64).collect(),
    }
}

/// Writes the `p,connectedness` curve for `G(n, p)` over `grid`.
pub fn cmd_curve(n: usize, grid: &[f64], samples: usize, seed: u64, out_path: &Path) -> Result<Vec<CurvePoint>> {
    let pts = connectedness_curve(n, grid, samples, &mut ChaCha8Rng::seed_from_u64(seed))?;
    if let Some(dir) = out_path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    write_curve_csv(&pts, BufWriter::new(File::create(out_path)?))?;
    Ok(pts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphCounts {
    pub labeled: u128,
    pub unlabeled: u64,
}

/// Labeled and unlabeled graph counts on `n <= 7` nodes.
pub fn cmd_count(n: usize) -> Result<GraphCounts> {
    Ok(GraphCounts {
        labeled: labeled_graph_count(n),
        unlabeled: count_unlabeled_graphs(n)?,
    })
}
