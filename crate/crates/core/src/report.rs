//! Table generation and comparison against the reference transcription,
//! with JSON, CSV and Markdown renderings.

use crate::enumeration::{irreducible_families, CurveFamily, EnumerationQuery};
use crate::error::{Error, Result};
use crate::lattice::{anticanonical_degree, arithmetic_genus, canonical_class, DivisorClass, SurfaceModel};
use crate::positivity::{classify_boundary, PositivityVerdict, Verdict};
use crate::rational;
use crate::reference::{transcription, PrintedLabel, StatedVerdict, Transcription};
use crate::structure::{cell_tag, feasible_self_intersections, structural_tag, StructuralTag};
use crate::zariski::zariski_decompose;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Index names used when a form stands for a whole orbit.
const INDEX_NAMES: [&str; 8] = ["i", "j", "k", "l", "m", "n", "p", "q"];

/// `4H - 2E_i - E_j`: the canonical form with symbolic distinct indices.
pub fn render_family_form(c: &DivisorClass) -> String {
    let mut terms: Vec<(i64, String)> = Vec::new();
    if c.a() != 0 {
        terms.push((c.a(), "H".into()));
    }
    let mut idx = 0;
    for &b in c.b() {
        if b != 0 {
            terms.push((-b, format!("E_{}", INDEX_NAMES[idx])));
            idx += 1;
        }
    }
    render_terms(&terms)
}

fn render_terms(terms: &[(i64, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (k, name)) in terms.iter().enumerate() {
        let mag = k.unsigned_abs();
        let body = if mag == 1 { name.clone() } else { format!("{mag}{name}") };
        match (i, *k < 0) {
            (0, false) => out.push_str(&body),
            (0, true) => write!(out, "-{body}").unwrap(),
            (_, false) => write!(out, " + {body}").unwrap(),
            (_, true) => write!(out, " - {body}").unwrap(),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum CellVerdict {
    Uniform(Verdict),
    Mixed,
}

impl fmt::Display for CellVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellVerdict::Uniform(v) => v.fmt(f),
            CellVerdict::Mixed => f.write_str("Mixed"),
        }
    }
}

impl From<CellVerdict> for String {
    fn from(v: CellVerdict) -> String {
        v.to_string()
    }
}

impl TryFrom<String> for CellVerdict {
    type Error = String;
    fn try_from(s: String) -> std::result::Result<Self, String> {
        if s == "Mixed" {
            Ok(CellVerdict::Mixed)
        } else {
            s.parse().map(CellVerdict::Uniform)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub form: String,
    pub representative: DivisorClass,
    pub orbit_size: u64,
    pub tag: StructuralTag,
    pub positivity: Option<PositivityVerdict>,
}

impl FamilyReport {
    pub fn new(f: &CurveFamily) -> Self {
        FamilyReport {
            form: render_family_form(&f.representative),
            representative: f.representative.clone(),
            orbit_size: f.orbit_size,
            tag: structural_tag(f),
            positivity: classify_boundary(&f.representative).ok(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub d: i64,
    pub m: i64,
    pub n: i64,
    pub forms: Vec<String>,
    pub family_count: usize,
    pub curve_count: u64,
    pub tag: StructuralTag,
    pub description: String,
    pub verdict: Option<CellVerdict>,
    pub families: Vec<FamilyReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NoteKind {
    /// The printed cell label differs from the computed tag.
    TableLabel,
    /// The printed form list differs from the enumerated one.
    FormList,
    /// The stated positivity differs from the computed verdict.
    Verdict,
    /// The cell is missing from a summary of stated verdicts.
    SummaryOmission,
    /// Families in one cell carry different tags.
    MixedFamilies,
    /// A stated Zariski support size differs from the computed one.
    ZariskiSupport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyNote {
    pub kind: NoteKind,
    pub d: i64,
    pub m: i64,
    pub n: i64,
    pub message: String,
}

impl fmt::Display for DiscrepancyNote {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}] d={} m={} n={}: {}", self.kind, self.d, self.m, self.n, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub degrees: Vec<i64>,
    pub rows: Vec<TableRow>,
    pub discrepancy_notes: Vec<DiscrepancyNote>,
}

pub fn build_row(s: SurfaceModel, m: i64, n: i64) -> TableRow {
    let fams = irreducible_families(&EnumerationQuery::new(s, m, n));
    let families: Vec<FamilyReport> = fams.iter().map(FamilyReport::new).collect();
    let tag = cell_tag(&fams);
    let verdicts: BTreeSet<Verdict> =
        families.iter().filter_map(|f| f.positivity.as_ref().map(|p| p.verdict)).collect();
    let verdict = match verdicts.len() {
        0 => None,
        1 => verdicts.first().copied().map(CellVerdict::Uniform),
        _ => Some(CellVerdict::Mixed),
    };
    TableRow {
        d: s.degree(),
        m,
        n,
        forms: families.iter().map(|f| f.form.clone()).collect(),
        family_count: families.len(),
        curve_count: families.iter().map(|f| f.orbit_size).sum(),
        tag,
        description: tag.description(),
        verdict,
        families,
    }
}

/// Rows for `m ≤ 2d` and every feasible `n`, ordered by `(d, m, n)`.
pub fn build_rows(degrees: &[i64]) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for &d in degrees {
        let s = SurfaceModel::new(d)?;
        if d > 5 {
            return Err(Error::UnsupportedDegree(d));
        }
        for m in 1..=2 * d {
            for n in feasible_self_intersections(d, m) {
                rows.push(build_row(s, m, n));
            }
        }
    }
    rows.sort_by_key(|r| (r.d, r.m, r.n));
    Ok(rows)
}

pub fn build_report(degrees: &[i64]) -> Result<ReportDocument> {
    let mut degrees = degrees.to_vec();
    degrees.sort_unstable();
    degrees.dedup();
    let rows = build_rows(&degrees)?;
    let discrepancy_notes = discrepancy_notes(&rows, transcription());
    Ok(ReportDocument { tool_version: TOOL_VERSION.to_string(), degrees, rows, discrepancy_notes })
}

fn note(kind: NoteKind, r: &TableRow, message: String) -> DiscrepancyNote {
    DiscrepancyNote { kind, d: r.d, m: r.m, n: r.n, message }
}

/// Compares rows with the transcription. Notes follow row order, then kind.
pub fn discrepancy_notes(rows: &[TableRow], t: &Transcription) -> Vec<DiscrepancyNote> {
    let mut notes = Vec::new();
    for r in rows {
        let mut here = Vec::new();
        if let Some(entry) = t.entry(r.d, r.m, r.n) {
            match entry.label {
                PrintedLabel::Tag(p) if p != r.tag => here.push(note(
                    NoteKind::TableLabel,
                    r,
                    format!("printed {p} ({}), computed {} ({})", p.description(), r.tag, r.description),
                )),
                PrintedLabel::ExplicitForms => here.push(note(
                    NoteKind::TableLabel,
                    r,
                    format!("printed only as explicit forms, computed {} over forms {}", r.tag, r.forms.join("; ")),
                )),
                _ => {}
            }
            let computed = r.verdict.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
            let stated = match entry.verdict {
                StatedVerdict::Uniform(v) => v.to_string(),
                StatedVerdict::Mixed => "Mixed".into(),
                StatedVerdict::None => "-".into(),
            };
            if stated != computed {
                here.push(note(NoteKind::Verdict, r, format!("stated {stated}, computed {computed}")));
            }
            if let Some(remark) = &entry.remark {
                here.push(note(NoteKind::SummaryOmission, r, format!("{remark}; computed {computed}")));
            }
        }
        here.extend(form_list_notes(r, t));
        let tags: BTreeSet<String> = r.families.iter().map(|f| f.tag.to_string()).collect();
        if tags.len() > 1 {
            let detail: Vec<String> = r.families.iter().map(|f| format!("{} -> {}", f.form, f.tag)).collect();
            here.push(note(NoteKind::MixedFamilies, r, format!("reported {}; {}", r.tag, detail.join("; "))));
        }
        here.extend(support_notes(r, t));
        here.sort_by_key(|x| x.kind);
        notes.extend(here);
    }
    notes
}

fn form_list_notes(r: &TableRow, t: &Transcription) -> Vec<DiscrepancyNote> {
    let Some(printed) = t.forms.get(&(r.d, r.m, r.n)) else {
        return Vec::new();
    };
    let printed: BTreeSet<&DivisorClass> = printed.iter().collect();
    let computed: BTreeSet<&DivisorClass> = r.families.iter().map(|f| &f.representative).collect();
    let mut out = Vec::new();
    for c in printed.difference(&computed) {
        let (m, n) = (anticanonical_degree(c), c.square());
        let reason = if (m, n) != (r.m, r.n) {
            format!("has -K.C = {m} and C^2 = {n}")
        } else if let Some(e) = crate::enumeration::neg_curve_classes(c.surface()).iter().find(|e| c.dot(e) < 0) {
            format!("is not nef: meets the (-1)-curve {e} in {}", c.dot(e))
        } else {
            "is not an irreducible class".into()
        };
        out.push(note(NoteKind::FormList, r, format!("printed form {} {reason}", render_family_form(c))));
    }
    for c in computed.difference(&printed) {
        out.push(note(
            NoteKind::FormList,
            r,
            format!(
                "missing form {}: nef with arithmetic genus {}",
                render_family_form(c),
                rational::format(&arithmetic_genus(c))
            ),
        ));
    }
    out
}

fn support_notes(r: &TableRow, t: &Transcription) -> Vec<DiscrepancyNote> {
    let mut out = Vec::new();
    for st in t.supports.iter().filter(|s| s.cell == (r.d, r.m, r.n)) {
        for f in &r.families {
            let c = &f.representative;
            let adj = c.scale(st.multiple).plus(&canonical_class(c.surface()));
            let got = zariski_decompose(&adj).map(|z| z.negative_part.len());
            let k = if st.multiple == 1 { String::new() } else { st.multiple.to_string() };
            match got {
                Ok(g) if g == st.count => {}
                Ok(g) => out.push(note(
                    NoteKind::ZariskiSupport,
                    r,
                    format!("stated {} support curves for {k}C + K, family {} gives {g}", st.count, f.form),
                )),
                Err(e) => out.push(note(
                    NoteKind::ZariskiSupport,
                    r,
                    format!("stated {} support curves for {k}C + K, family {} fails: {e}", st.count, f.form),
                )),
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Markdown),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

impl ReportDocument {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Markdown => self.to_markdown(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["d", "m", "n", "family_count", "curve_count", "tag", "description", "verdict", "forms"])
            .expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.d.to_string(),
                r.m.to_string(),
                r.n.to_string(),
                r.family_count.to_string(),
                r.curve_count.to_string(),
                r.tag.to_string(),
                r.description.clone(),
                r.verdict.map(|v| v.to_string()).unwrap_or_default(),
                r.forms.join("; "),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# Curve classes of small anticanonical degree\n").unwrap();
        writeln!(out, "Generated by dpcurves {}.\n", self.tool_version).unwrap();
        for &d in &self.degrees {
            writeln!(out, "## Degree {d}\n").unwrap();
            writeln!(out, "| m | n | curves | tag | description | verdict at 1/2 | forms |").unwrap();
            writeln!(out, "|---|---|---|---|---|---|---|").unwrap();
            for r in self.rows.iter().filter(|r| r.d == d) {
                let verdict = r.verdict.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
                let forms: Vec<String> = r.families.iter().map(|f| format!("{} ({})", f.form, f.orbit_size)).collect();
                writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} |",
                    r.m,
                    r.n,
                    r.curve_count,
                    r.tag,
                    r.description,
                    verdict,
                    if forms.is_empty() { "-".into() } else { forms.join("; ") }
                )
                .unwrap();
            }
            writeln!(out).unwrap();
        }
        if !self.discrepancy_notes.is_empty() {
            writeln!(out, "## Discrepancy notes\n").unwrap();
            for n in &self.discrepancy_notes {
                writeln!(out, "- {n}").unwrap();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_forms() {
        let s = SurfaceModel::new(4).unwrap();
        let c = DivisorClass::new(s, 4, vec![2, 2, 2, 1, 1]).unwrap();
        assert_eq!(render_family_form(&c), "4H - 2E_i - 2E_j - 2E_k - E_l - E_m");
        assert_eq!(render_family_form(&DivisorClass::exceptional(s, 0)), "E_i");
        assert_eq!(render_family_form(&DivisorClass::hyperplane(s)), "H");
        assert_eq!(render_family_form(&DivisorClass::zero(s)), "0");
    }

    #[test]
    fn rows_and_notes() {
        let doc = build_report(&[5]).unwrap();
        let empty = doc.rows.iter().find(|r| (r.m, r.n) == (10, 10)).unwrap();
        assert_eq!(empty.tag, StructuralTag::NoCurve);
        assert!(empty.forms.is_empty() && empty.verdict.is_none());
        let labels: Vec<(i64, i64, i64)> =
            doc.discrepancy_notes.iter().filter(|n| n.kind == NoteKind::TableLabel).map(|n| (n.d, n.m, n.n)).collect();
        assert_eq!(labels, vec![(5, 10, 16), (5, 10, 18)]);
        assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
        assert!(build_report(&[6]).is_err());
    }
}
