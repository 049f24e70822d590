//! Recomputes the filling tables from catalog braid words and compares the
//! results with the expectations stored in the catalog.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::batch;
use crate::catalog::{CatalogEntry, Expectation, TableId};
use crate::geography::{
    betti_resolution, gates, predict, BettiNumbers, FillingPrediction, GateKind, GateReport, GeographyError, B1,
};
use crate::lt::{bennequin_seifert, lt_sums, LtError};

#[derive(Debug, Error)]
pub enum ReproduceError {
    #[error("{name}: {source}")]
    Lt {
        name: String,
        #[source]
        source: LtError,
    },
    #[error("{name}: {source}")]
    Geography {
        name: String,
        #[source]
        source: GeographyError,
    },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone)]
pub struct TableRow {
    pub name: String,
    pub r: u32,
    pub n: i64,
    pub m: i64,
    pub sigma_sum: i64,
    pub eta_sum: i64,
    pub gates: GateReport,
    pub kind: GateKind,
    pub prediction: Result<FillingPrediction, GeographyError>,
    /// Betti split from the expected (or predicted exact) `b₁`.
    pub betti: Option<Result<BettiNumbers, GeographyError>>,
    pub has_hat: bool,
    pub expected: Expectation,
    pub mismatches: Vec<String>,
}

impl TableRow {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// The `(Σσ, Ση)` pair at this row's cover order.
    pub fn sums(&self) -> (i64, i64) {
        (self.sigma_sum, self.eta_sum)
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub id: TableId,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(TableRow::matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(|r| !r.matches())
    }

    pub fn row(&self, name: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    fn cells(&self) -> Vec<[String; 15]> {
        self.rows.iter().map(row_cells).collect()
    }

    /// Comma-separated output with a header line; stable across runs.
    pub fn to_csv(&self) -> Result<String, ReproduceError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(HEADER)?;
        for c in self.cells() {
            w.write_record(&c)?;
        }
        let bytes = w.into_inner().map_err(|e| ReproduceError::Csv(e.into_error().into()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Aligned plain text, followed by one line per mismatch.
    pub fn to_text(&self) -> String {
        let cells = self.cells();
        let mut width = HEADER.map(|h| h.chars().count());
        for row in &cells {
            for (w, c) in width.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let mut line = |row: &[&str]| {
            let padded: Vec<String> = row
                .iter()
                .zip(width)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            out.push_str(padded.join("  ").trim_end());
            out.push('\n');
        };
        line(&HEADER);
        for row in &cells {
            line(&row.iter().map(String::as_str).collect::<Vec<_>>());
        }
        let bad = self.mismatches().count();
        let _ = writeln!(out, "theorem {}: {} rows, {} mismatched", self.id, self.rows.len(), bad);
        for r in self.mismatches() {
            let _ = writeln!(out, "MISMATCH {}: {}", r.name, r.mismatches.join("; "));
        }
        out
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

const HEADER: [&str; 15] = [
    "name", "r", "n", "m", "Σσ", "Ση", "gateT11", "gateT12", "χ", "σ", "b1", "b2+", "b2−", "caveat", "match",
];

fn row_cells(r: &TableRow) -> [String; 15] {
    let t11 = if r.gates.general_passes() { "pass" } else { "fail" };
    let t12 = match r.gates.nullity_free_passes() {
        Some(true) => "pass",
        Some(false) => "fail",
        None => "-",
    };
    let (chi, sigma, b1) = match &r.prediction {
        Ok(p) => (p.chi.to_string(), p.sigma.to_string(), p.b1.to_string()),
        Err(_) => ("-".into(), "-".into(), "-".into()),
    };
    let (bp, bm) = match &r.betti {
        Some(Ok(b)) => (b.b2plus.to_string(), b.b2minus.to_string()),
        _ => ("-".into(), "-".into()),
    };
    let caveat = match &r.prediction {
        Ok(FillingPrediction { caveat: Some(c), .. }) => c.to_string(),
        _ => "-".into(),
    };
    [
        r.name.clone(),
        r.r.to_string(),
        r.n.to_string(),
        r.m.to_string(),
        r.sigma_sum.to_string(),
        r.eta_sum.to_string(),
        t11.into(),
        t12.into(),
        chi,
        sigma,
        b1,
        bp,
        bm,
        caveat,
        if r.matches() { "yes" } else { "no" }.into(),
    ]
}

/// Computes one row. Knots use the nullity-free gates; links use whichever
/// gates their nullity sum allows.
pub fn reproduce_row(entry: &CatalogEntry, id: TableId, expected: Expectation) -> Result<TableRow, ReproduceError> {
    let r = id.order();
    let name = entry.name.clone();
    let seifert = bennequin_seifert(&entry.word);
    let (sigma_sum, eta_sum) = lt_sums(&seifert, r).map_err(|source| ReproduceError::Lt {
        name: name.clone(),
        source,
    })?;
    let (n, m) = (entry.strands() as i64, entry.band_count());
    let g = gates(r, n, m, sigma_sum, eta_sum).map_err(|source| ReproduceError::Geography {
        name: name.clone(),
        source,
    })?;
    let kind = match id {
        TableId::Knots(_) => GateKind::NullityFree,
        TableId::Links(_) => g.natural_kind(),
    };
    let prediction = predict(r, n, m, sigma_sum, eta_sum, kind, true);
    let has_hat = entry.hats().contains(&id.required_hat());

    let mut bad = Vec::new();
    if !has_hat {
        bad.push(format!("no verified {} hat", id.required_hat()));
    }
    let b1 = match &prediction {
        Err(e) => {
            bad.push(e.to_string());
            expected.b1
        }
        Ok(p) => {
            if (p.chi, p.sigma) != (expected.chi, expected.sigma) {
                bad.push(format!(
                    "(χ, σ) = ({}, {}), expected ({}, {})",
                    p.chi, p.sigma, expected.chi, expected.sigma
                ));
            }
            if p.caveat != expected.caveat {
                bad.push(format!("caveat {:?}, expected {:?}", p.caveat, expected.caveat));
            }
            match (expected.b1, p.b1) {
                (Some(b), range) if !range.contains(b) => {
                    bad.push(format!("b1 = {b} outside {range}"));
                    Some(b)
                }
                (Some(b), _) => Some(b),
                (None, B1::Exact(b)) => Some(b),
                (None, B1::Range(..)) => None,
            }
        }
    };
    let betti = b1.map(|b1| betti_resolution(expected.chi, expected.sigma, b1, expected.b2plus.is_some()));
    if let (Some(bp), Some(bm)) = (expected.b2plus, expected.b2minus) {
        match &betti {
            Some(Ok(b)) if (b.b2plus, b.b2minus, b.b2zero) == (bp, bm, 0) => {}
            Some(Ok(b)) => bad.push(format!(
                "b2± = ({}, {}), expected ({bp}, {bm})",
                b.b2plus, b.b2minus
            )),
            Some(Err(e)) => bad.push(e.to_string()),
            None => bad.push("b2± expected but b1 unknown".into()),
        }
    }
    Ok(TableRow {
        name,
        r,
        n,
        m,
        sigma_sum,
        eta_sum,
        gates: g,
        kind,
        prediction,
        betti,
        has_hat,
        expected,
        mismatches: bad,
    })
}

/// One row per catalog entry that carries an expectation for `id`, ordered
/// by name.
pub fn reproduce_table(entries: &[CatalogEntry], id: TableId, parallel: bool) -> Result<Table, ReproduceError> {
    let selected: Vec<(&CatalogEntry, Expectation)> = entries
        .iter()
        .filter_map(|e| e.expected.get(&id).map(|x| (e, *x)))
        .collect();
    let mut rows = batch::map(&selected, parallel, |(e, x)| reproduce_row(e, id, *x))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(Table { id, rows })
}
