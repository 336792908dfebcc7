use dpcurves::positivity::Verdict;
use dpcurves::reference::{transcription, Cell, PrintedLabel, StatedVerdict};
use dpcurves::report::{build_report, CellVerdict, NoteKind, ReportDocument, TableRow};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::LazyLock;

static REPORT: LazyLock<ReportDocument> = LazyLock::new(|| build_report(&[1, 2, 3, 4, 5]).unwrap());

fn rows() -> BTreeMap<Cell, &'static TableRow> {
    REPORT.rows.iter().map(|r| ((r.d, r.m, r.n), r)).collect()
}

fn cells(v: &[Cell]) -> BTreeSet<Cell> {
    v.iter().copied().collect()
}

#[test]
fn same_cells_as_printed_table() {
    let t = transcription();
    let computed: BTreeSet<Cell> = rows().keys().copied().collect();
    let printed: BTreeSet<Cell> = t.cells.keys().copied().collect();
    assert_eq!(computed, printed);
    assert_eq!(computed.len(), 75);
    let per_degree: Vec<usize> = (1..=5).map(|d| computed.iter().filter(|c| c.0 == d).count()).collect();
    assert_eq!(per_degree, vec![5, 9, 14, 20, 27]);
}

#[test]
fn forms_agree_up_to_three_known_cells() {
    let t = transcription();
    let mut differing = Vec::new();
    for (cell, r) in rows() {
        let computed: BTreeSet<_> = r.families.iter().map(|f| f.representative.clone()).collect();
        let printed: BTreeSet<_> = t.printed_forms(cell.0, cell.1, cell.2).iter().cloned().collect();
        if computed != printed {
            differing.push(cell);
        }
    }
    assert_eq!(differing, vec![(4, 5, 5), (4, 8, 8), (4, 8, 12)]);
}

#[test]
fn tags_agree_up_to_two_flagged_cells() {
    let t = transcription();
    let mut differing = Vec::new();
    for (cell, r) in rows() {
        let entry = t.entry(cell.0, cell.1, cell.2).unwrap();
        if entry.label != PrintedLabel::Tag(r.tag) {
            differing.push(cell);
        }
    }
    assert_eq!(differing, vec![(5, 10, 16), (5, 10, 18)]);
    let flagged: BTreeSet<Cell> =
        REPORT.discrepancy_notes.iter().filter(|n| n.kind == NoteKind::TableLabel).map(|n| (n.d, n.m, n.n)).collect();
    assert_eq!(flagged, cells(&differing));
}

#[test]
fn verdicts_agree_everywhere() {
    let t = transcription();
    for (cell, r) in rows() {
        let entry = t.entry(cell.0, cell.1, cell.2).unwrap();
        let expected = match entry.verdict {
            StatedVerdict::Uniform(v) => Some(CellVerdict::Uniform(v)),
            StatedVerdict::Mixed => Some(CellVerdict::Mixed),
            StatedVerdict::None => None,
        };
        assert_eq!(r.verdict, expected, "{cell:?}");
    }
    assert!(!REPORT.discrepancy_notes.iter().any(|n| n.kind == NoteKind::Verdict));
}

#[test]
fn mixed_cell_families() {
    let r = rows()[&(5, 6, 4)];
    let by_form: BTreeMap<&str, Verdict> =
        r.families.iter().map(|f| (f.form.as_str(), f.positivity.as_ref().unwrap().verdict)).collect();
    for (form, v) in &by_form {
        let expected = match *form {
            "2H" | "4H - 2E_i - 2E_j - 2E_k" => Verdict::NefNotBigAtHalf,
            _ => Verdict::NeverNef,
        };
        assert_eq!(*v, expected, "{form}");
    }
    assert!(by_form.contains_key("2H") && by_form.contains_key("4H - 2E_i - 2E_j - 2E_k"));
}

#[test]
fn note_inventory() {
    let count = |k: NoteKind| REPORT.discrepancy_notes.iter().filter(|n| n.kind == k).count();
    assert_eq!(count(NoteKind::TableLabel), 2);
    assert_eq!(count(NoteKind::FormList), 4);
    assert_eq!(count(NoteKind::Verdict), 0);
    assert_eq!(count(NoteKind::SummaryOmission), 1);
}

/// Classical counts: conic classes number 2160, 126, 27, 10, 5 and the
/// classes of twisted cubics `-K - E` on the quartic surface number 16.
#[test]
fn classical_curve_counts() {
    let r = rows();
    let conics: Vec<u64> = (1..=5).map(|d| r[&(d, 2, 0)].curve_count).collect();
    assert_eq!(conics, vec![2160, 126, 27, 10, 5]);
    let lines: Vec<u64> = (1..=5).map(|d| r[&(d, 1, -1)].curve_count).collect();
    assert_eq!(lines, vec![240, 56, 27, 16, 10]);
    assert_eq!(r[&(4, 3, 1)].curve_count, 16);
    assert_eq!(r[&(3, 3, 1)].curve_count, 72);
}
