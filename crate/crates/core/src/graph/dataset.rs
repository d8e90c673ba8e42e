use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::Rng;

use super::{erdos_renyi, Graph, Property};
use crate::error::{invalid, Error, Result};

/// Class label, `+1` when the property holds and `-1` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Label::Positive
        } else {
            Label::Negative
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Label::Positive => 1.0,
            Label::Negative => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Label::Positive => 1,
            Label::Negative => -1,
        }
    }

    pub fn from_i8(v: i8) -> Result<Self> {
        match v {
            1 => Ok(Label::Positive),
            -1 => Ok(Label::Negative),
            other => Err(Error::Parse(format!("label must be 1 or -1, got {other}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphSample {
    pub graph: Graph,
    pub label: Label,
    pub property: Property,
}

impl GraphSample {
    /// Labels `graph` with the oracle for `property`.
    pub fn labeled(graph: Graph, property: Property) -> Self {
        Self {
            graph,
            label: Label::from_bool(property.holds(&graph)),
            property,
        }
    }
}

/// Ordered samples; the first `train_per_epoch` form the training set and the
/// remainder is the validation set.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub property: Property,
    pub n: usize,
    pub samples: Vec<GraphSample>,
    pub train_per_epoch: usize,
}

/// Sidecar metadata written next to a dataset CSV.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetMeta {
    pub property: Property,
    pub n: usize,
    pub seed: u64,
    pub positives: usize,
    pub negatives: usize,
}

pub const DEFAULT_TRAIN_PER_EPOCH: usize = 100;

impl Dataset {
    pub fn train(&self) -> &[GraphSample] {
        &self.samples[..self.train_per_epoch.min(self.samples.len())]
    }

    pub fn validation(&self) -> &[GraphSample] {
        &self.samples[self.train_per_epoch.min(self.samples.len())..]
    }

    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self
            .samples
            .iter()
            .filter(|s| s.label == Label::Positive)
            .count();
        (pos, self.samples.len() - pos)
    }

    pub fn with_train_per_epoch(mut self, train_per_epoch: usize) -> Self {
        self.train_per_epoch = train_per_epoch;
        self
    }

    /// Re-runs the oracle over every sample; returns the first mismatch index.
    pub fn verify_labels(&self) -> std::result::Result<(), usize> {
        match self
            .samples
            .iter()
            .position(|s| Label::from_bool(s.property.holds(&s.graph)) != s.label)
        {
            Some(i) => Err(i),
            None => Ok(()),
        }
    }

    /// Same dataset with every graph relabeled by `perm`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Dataset> {
        let samples = self
            .samples
            .iter()
            .map(|s| {
                Ok(GraphSample {
                    graph: s.graph.relabeled(perm)?,
                    ..*s
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Dataset {
            samples,
            ..self.clone()
        })
    }

    /// Writes `id,n,edges,label` rows.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["id", "n", "edges", "label"])?;
        for (id, s) in self.samples.iter().enumerate() {
            out.write_record([
                id.to_string(),
                s.graph.n().to_string(),
                s.graph.to_string(),
                s.label.as_i8().to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reads rows written by [`Dataset::write_csv`]. Labels are checked
    /// against the oracle for `property`.
    pub fn read_csv<R: Read>(r: R, property: Property) -> Result<Dataset> {
        let mut rdr = csv::Reader::from_reader(r);
        let headers = rdr.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["id", "n", "edges", "label"] {
            return Err(Error::Parse(format!("unexpected dataset header {headers:?}")));
        }
        let mut samples = Vec::new();
        let mut n_all = None;
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let field = |i: usize| rec.get(i).unwrap_or("");
            let id: usize = field(0)
                .parse()
                .map_err(|_| Error::Parse(format!("row {row}: bad id")))?;
            if id != row {
                return Err(Error::Parse(format!("row {row}: id {id} out of sequence")));
            }
            let n: usize = field(1)
                .parse()
                .map_err(|_| Error::Parse(format!("row {row}: bad n")))?;
            if *n_all.get_or_insert(n) != n {
                return Err(Error::Parse(format!("row {row}: mixed node counts")));
            }
            let graph = Graph::parse_edges(n, field(2))?;
            let label = Label::from_i8(
                field(3)
                    .parse()
                    .map_err(|_| Error::Parse(format!("row {row}: bad label")))?,
            )?;
            samples.push(GraphSample {
                graph,
                label,
                property,
            });
        }
        let n = n_all.ok_or_else(|| Error::Parse("dataset has no rows".into()))?;
        let ds = Dataset {
            property,
            n,
            samples,
            train_per_epoch: DEFAULT_TRAIN_PER_EPOCH,
        };
        if let Err(i) = ds.verify_labels() {
            return Err(Error::Parse(format!(
                "row {i}: stored label disagrees with the {property} oracle"
            )));
        }
        Ok(ds)
    }

    /// Writes the CSV to `path` and the metadata to [`meta_path`]`(path)`.
    pub fn save(&self, path: &Path, seed: u64) -> Result<()> {
        self.write_csv(io::BufWriter::new(File::create(path)?))?;
        let (positives, negatives) = self.class_counts();
        DatasetMeta {
            property: self.property,
            n: self.n,
            seed,
            positives,
            negatives,
        }
        .write(File::create(meta_path(path))?)
    }

    /// Loads a dataset saved by [`Dataset::save`], reading the property from
    /// its metadata file.
    pub fn load(path: &Path) -> Result<(Dataset, DatasetMeta)> {
        let meta = DatasetMeta::read(File::open(meta_path(path))?)?;
        let ds = Dataset::read_csv(BufReader::new(File::open(path)?), meta.property)?;
        if ds.n != meta.n || ds.class_counts() != (meta.positives, meta.negatives) {
            return Err(Error::Parse(format!(
                "{} does not match its metadata",
                path.display()
            )));
        }
        Ok((ds, meta))
    }
}

/// `data.csv` -> `data.csv.meta`.
pub fn meta_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

impl DatasetMeta {
    pub fn write<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "property={}", self.property)?;
        writeln!(w, "n={}", self.n)?;
        writeln!(w, "seed={}", self.seed)?;
        writeln!(w, "positives={}", self.positives)?;
        writeln!(w, "negatives={}", self.negatives)?;
        Ok(())
    }

    pub fn read<R: Read>(r: R) -> Result<Self> {
        let mut property = None;
        let (mut n, mut seed, mut pos, mut neg) = (None, None, None, None);
        for line in BufReader::new(r).lines() {
            let line = line?;
            let Some((k, v)) = line.split_once('=') else {
                continue;
            };
            let num = || {
                v.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad value for {k}: {v:?}")))
            };
            match k.trim() {
                "property" => property = Some(v.trim().parse()?),
                "n" => n = Some(num()? as usize),
                "seed" => seed = Some(num()?),
                "positives" => pos = Some(num()? as usize),
                "negatives" => neg = Some(num()? as usize),
                _ => {}
            }
        }
        let missing = |k: &str| Error::Parse(format!("metadata is missing {k}"));
        Ok(DatasetMeta {
            property: property.ok_or_else(|| missing("property"))?,
            n: n.ok_or_else(|| missing("n"))?,
            seed: seed.ok_or_else(|| missing("seed"))?,
            positives: pos.ok_or_else(|| missing("positives"))?,
            negatives: neg.ok_or_else(|| missing("negatives"))?,
        })
    }
}

/// Rejection-samples `G(n, p)` graphs with `p ~ U(0, 1)` per draw until each
/// class holds `total / 2` samples, then shuffles.
pub fn generate_balanced_dataset<R: Rng + ?Sized>(
    property: Property,
    n: usize,
    total: usize,
    rng: &mut R,
) -> Result<Dataset> {
    if total == 0 || total % 2 != 0 {
        return Err(invalid(format!("dataset size must be positive and even, got {total}")));
    }
    let half = total / 2;
    let budget = 10_000 + 1_000 * total;
    let mut pos = Vec::with_capacity(half);
    let mut neg = Vec::with_capacity(half);
    let mut attempts = 0;
    while pos.len() < half || neg.len() < half {
        if attempts == budget {
            return Err(Error::GenerationFailure(format!(
                "{property} at n = {n}: {} positive and {} negative samples after {attempts} draws",
                pos.len(),
                neg.len()
            )));
        }
        attempts += 1;
        let p: f64 = rng.gen();
        let sample = GraphSample::labeled(erdos_renyi(n, p, rng)?, property);
        let bucket = match sample.label {
            Label::Positive => &mut pos,
            Label::Negative => &mut neg,
        };
        if bucket.len() < half {
            bucket.push(sample);
        }
    }
    let mut samples = pos;
    samples.append(&mut neg);
    samples.shuffle(rng);
    Ok(Dataset {
        property,
        n,
        samples,
        train_per_epoch: DEFAULT_TRAIN_PER_EPOCH.min(total),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn balanced_small_bipartite() {
        let ds = generate_balanced_dataset(Property::Bipartite, 4, 20, &mut ChaCha8Rng::seed_from_u64(1))
            .unwrap();
        assert_eq!(ds.class_counts(), (10, 10));
        assert_eq!(ds.verify_labels(), Ok(()));
    }

    #[test]
    fn default_split() {
        let ds = generate_balanced_dataset(Property::Connected, 8, 3000, &mut ChaCha8Rng::seed_from_u64(3))
            .unwrap();
        assert_eq!(ds.class_counts(), (1500, 1500));
        assert_eq!(ds.train().len(), 100);
        assert_eq!(ds.validation().len(), 2900);
    }

    #[test]
    fn odd_total_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(generate_balanced_dataset(Property::Connected, 5, 7, &mut rng).is_err());
    }

    #[test]
    fn unreachable_class_reports_stall() {
        // no graph on two nodes has a Hamiltonian cycle
        let err = generate_balanced_dataset(
            Property::HamiltonianCycle,
            2,
            4,
            &mut ChaCha8Rng::seed_from_u64(0),
        )
        .unwrap_err();
        assert!(matches!(err, Error::GenerationFailure(_)));
    }

    #[test]
    fn csv_round_trip_and_tamper_detection() {
        let ds = generate_balanced_dataset(Property::HamiltonianPath, 6, 40, &mut ChaCha8Rng::seed_from_u64(9))
            .unwrap();
        let mut buf = Vec::new();
        ds.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("id,n,edges,label\n"));
        let back = Dataset::read_csv(&buf[..], Property::HamiltonianPath).unwrap();
        assert_eq!(back.samples, ds.samples);

        let flipped = text.replacen(",1\n", ",-1\n", 1);
        assert!(Dataset::read_csv(flipped.as_bytes(), Property::HamiltonianPath).is_err());
    }

    #[test]
    fn meta_round_trip() {
        let meta = DatasetMeta {
            property: Property::Bipartite,
            n: 4,
            seed: 1,
            positives: 5,
            negatives: 5,
        };
        let mut buf = Vec::new();
        meta.write(&mut buf).unwrap();
        assert_eq!(DatasetMeta::read(&buf[..]).unwrap(), meta);
    }
}
