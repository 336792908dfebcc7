//! Published reference data: the printed form lists, cell labels, stated
//! positivity and stated Zariski support sizes, as plain-text tables
//! compiled into the crate.

use crate::enumeration::canonical_form;
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceModel};
use crate::positivity::Verdict;
use crate::structure::StructuralTag;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::OnceLock;

const FORMS: &str = include_str!("../data/forms.txt");
const LONGTABLE: &str = include_str!("../data/longtable.txt");
const SUPPORTS: &str = include_str!("../data/supports.txt");

pub type Cell = (i64, i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrintedLabel {
    Tag(StructuralTag),
    /// The cell only points at a list of forms.
    ExplicitForms,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StatedVerdict {
    Uniform(Verdict),
    /// Different families of the cell behave differently.
    Mixed,
    /// Empty cell.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellEntry {
    pub label: PrintedLabel,
    pub verdict: StatedVerdict,
    pub remark: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StatedSupport {
    pub cell: Cell,
    pub multiple: i64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcription {
    /// Canonical forms as printed, per cell.
    pub forms: BTreeMap<Cell, Vec<DivisorClass>>,
    pub cells: BTreeMap<Cell, CellEntry>,
    pub supports: Vec<StatedSupport>,
}

impl Transcription {
    pub fn entry(&self, d: i64, m: i64, n: i64) -> Option<&CellEntry> {
        self.cells.get(&(d, m, n))
    }

    pub fn printed_forms(&self, d: i64, m: i64, n: i64) -> &[DivisorClass] {
        self.forms.get(&(d, m, n)).map(Vec::as_slice).unwrap_or(&[])
    }
}

pub fn transcription() -> &'static Transcription {
    static T: OnceLock<Transcription> = OnceLock::new();
    T.get_or_init(|| parse_all().expect("embedded reference data is well formed"))
}

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_cell(s: &str) -> Result<Cell> {
    let v: Vec<i64> = s
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad cell {s:?}"))))
        .collect::<Result<_>>()?;
    match v.as_slice() {
        &[d, m, n] => Ok((d, m, n)),
        _ => Err(Error::Parse(format!("bad cell {s:?}"))),
    }
}

/// Parses `a;b1,b2^k,...`, padding with zeros and sorting.
pub fn parse_compact_form(s: SurfaceModel, text: &str) -> Result<DivisorClass> {
    let bad = || Error::Parse(format!("bad form {text:?}"));
    let (a, rest) = text.trim().split_once(';').ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let mut b = Vec::new();
    for tok in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (v, k) = match tok.split_once('^') {
            Some((v, k)) => (v, k.parse::<usize>().map_err(|_| bad())?),
            None => (tok, 1),
        };
        let v: i64 = v.parse().map_err(|_| bad())?;
        b.extend(std::iter::repeat_n(v, k));
    }
    if b.len() > s.blowup_points() {
        return Err(Error::Length { expected: s.blowup_points(), got: b.len() });
    }
    b.resize(s.blowup_points(), 0);
    Ok(canonical_form(&DivisorClass::new(s, a, b)?).0)
}

fn parse_all() -> Result<Transcription> {
    let mut forms = BTreeMap::new();
    for line in data_lines(FORMS) {
        let (head, rest) = line.split_once(':').ok_or_else(|| Error::Parse(line.into()))?;
        let cell = parse_cell(head)?;
        let s = SurfaceModel::new(cell.0)?;
        let v = rest
            .split('|')
            .map(str::trim)
            .filter(|f| !f.is_empty())
            .map(|f| parse_compact_form(s, f))
            .collect::<Result<Vec<_>>>()?;
        forms.insert(cell, v);
    }
    let mut cells = BTreeMap::new();
    for line in data_lines(LONGTABLE) {
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        if parts.len() < 3 {
            return Err(Error::Parse(line.into()));
        }
        let cell = parse_cell(parts[0])?;
        let label = match parts[1] {
            "ExplicitForms" => PrintedLabel::ExplicitForms,
            t => PrintedLabel::Tag(t.parse()?),
        };
        let verdict = match parts[2] {
            "Mixed" => StatedVerdict::Mixed,
            "-" => StatedVerdict::None,
            v => StatedVerdict::Uniform(v.parse().map_err(Error::Parse)?),
        };
        let remark = parts.get(3).map(|r| r.to_string());
        cells.insert(cell, CellEntry { label, verdict, remark });
    }
    let mut supports = Vec::new();
    for line in data_lines(SUPPORTS) {
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        let [cell, k, count] = parts.as_slice() else {
            return Err(Error::Parse(line.into()));
        };
        supports.push(StatedSupport {
            cell: parse_cell(cell)?,
            multiple: k.parse().map_err(|_| Error::Parse(line.into()))?,
            count: count.parse().map_err(|_| Error::Parse(line.into()))?,
        });
    }
    Ok(Transcription { forms, cells, supports })
}
