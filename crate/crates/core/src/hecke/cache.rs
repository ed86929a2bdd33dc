//! On-disk cache of Kazhdan–Lusztig data, one JSON-lines file per `(n, a, b)`.
//!
//! The first line is a header `{"version":…, "n":…, "a":…, "b":…}`; every
//! further line is `{"w":…, "coeffs":[{"y":…, "poly":{…}}, …], "edges":[…]}`.

use std::collections::HashMap;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{LaurentPolynomial, WeightFunction};
use crate::error::{Error, Result};
use crate::wgroup::SignedPermutation;

const VERSION: u32 = 1;

#[derive(Serialize, Deserialize, PartialEq)]
struct Header {
    version: u32,
    n: usize,
    a: u32,
    b: u32,
}

#[derive(Serialize, Deserialize)]
struct Coeff {
    y: String,
    poly: LaurentPolynomial,
}

#[derive(Serialize, Deserialize)]
struct Record {
    w: String,
    coeffs: Vec<Coeff>,
    edges: Vec<String>,
}

pub(super) type Basis = Vec<Vec<(usize, LaurentPolynomial)>>;

pub(super) fn file_name(dir: &Path, n: usize, l: WeightFunction) -> PathBuf {
    dir.join(format!("kl-n{n}-a{}-b{}.jsonl", l.a, l.b))
}

fn parse_perm(s: &str, index: &HashMap<SignedPermutation, usize>) -> Result<usize> {
    let w: SignedPermutation = s.parse()?;
    index.get(&w).copied().ok_or_else(|| Error::Cache(format!("element {s} is outside the group")))
}

/// Returns `None` when no cache file exists.
pub(super) fn load(
    dir: &Path,
    n: usize,
    l: WeightFunction,
    index: &HashMap<SignedPermutation, usize>,
) -> Result<Option<(Basis, Vec<Vec<usize>>)>> {
    let path = file_name(dir, n, l);
    if !path.exists() {
        return Ok(None);
    }
    let mut lines = BufReader::new(File::open(&path)?).lines();
    let header: Header = serde_json::from_str(&lines.next().ok_or_else(|| Error::Cache("empty file".into()))??)?;
    if header != (Header { version: VERSION, n, a: l.a, b: l.b }) {
        return Err(Error::Cache(format!("{} has a mismatched header", path.display())));
    }
    let size = index.len();
    let mut c = vec![Vec::new(); size];
    let mut edges = vec![Vec::new(); size];
    let mut seen = 0;
    for line in lines {
        let rec: Record = serde_json::from_str(&line?)?;
        let i = parse_perm(&rec.w, index)?;
        c[i] = rec.coeffs.into_iter().map(|k| Ok((parse_perm(&k.y, index)?, k.poly))).collect::<Result<_>>()?;
        edges[i] = rec.edges.iter().map(|e| parse_perm(e, index)).collect::<Result<_>>()?;
        seen += 1;
    }
    if seen != size || c.iter().any(Vec::is_empty) {
        return Err(Error::Cache(format!("{} is incomplete", path.display())));
    }
    Ok(Some((c, edges)))
}

pub(super) fn save(
    dir: &Path,
    n: usize,
    l: WeightFunction,
    elems: &[SignedPermutation],
    c: &Basis,
    edges: &[Vec<usize>],
) -> Result<()> {
    fs::create_dir_all(dir)?;
    let path = file_name(dir, n, l);
    // write to a sibling file first so a crash never leaves a torn cache
    let tmp = path.with_extension("jsonl.tmp");
    {
        let mut out = BufWriter::new(File::create(&tmp)?);
        serde_json::to_writer(&mut out, &Header { version: VERSION, n, a: l.a, b: l.b })?;
        writeln!(out)?;
        for (i, w) in elems.iter().enumerate() {
            let rec = Record {
                w: w.to_string(),
                coeffs: c[i].iter().map(|(y, p)| Coeff { y: elems[*y].to_string(), poly: p.clone() }).collect(),
                edges: edges[i].iter().map(|z| elems[*z].to_string()).collect(),
            };
            serde_json::to_writer(&mut out, &rec)?;
            writeln!(out)?;
        }
        out.flush()?;
    }
    fs::rename(tmp, path)?;
    Ok(())
}
