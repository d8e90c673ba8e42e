use std::io::{Read, Write};

use rand::Rng;

use super::{erdos_renyi, is_connected};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub p: f64,
    pub connectedness: f64,
}

/// Monte-Carlo estimate of `P(G(n, p) is connected)` at each grid point.
pub fn connectedness_curve<R: Rng + ?Sized>(
    n: usize,
    p_grid: &[f64],
    samples_per_point: usize,
    rng: &mut R,
) -> Result<Vec<CurvePoint>> {
    if samples_per_point == 0 {
        return Err(invalid("samples_per_point must be positive"));
    }
    p_grid
        .iter()
        .map(|&p| {
            let mut hits = 0usize;
            for _ in 0..samples_per_point {
                if is_connected(&erdos_renyi(n, p, rng)?) {
                    hits += 1;
                }
            }
            Ok(CurvePoint {
                p,
                connectedness: hits as f64 / samples_per_point as f64,
            })
        })
        .collect()
}

pub fn write_curve_csv<W: Write>(points: &[CurvePoint], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["p", "connectedness"])?;
    for pt in points {
        out.write_record([pt.p.to_string(), pt.connectedness.to_string()])?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_curve_csv<R: Read>(r: R) -> Result<Vec<CurvePoint>> {
    let mut rdr = csv::Reader::from_reader(r);
    if rdr.headers()?.iter().collect::<Vec<_>>() != ["p", "connectedness"] {
        return Err(Error::Parse("curve header must be p,connectedness".into()));
    }
    rdr.records()
        .map(|rec| {
            let rec = rec?;
            let num = |i: usize| {
                rec.get(i)
                    .unwrap_or("")
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad number in curve row {rec:?}")))
            };
            Ok(CurvePoint {
                p: num(0)?,
                connectedness: num(1)?,
            })
        })
        .collect()
}
