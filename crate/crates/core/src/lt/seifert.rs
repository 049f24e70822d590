use std::fmt;

use thiserror::Error;

use crate::braid::BraidWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeifertError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("matrix has {rows} rows but the header declares size {declared}")]
    SizeMismatch { rows: usize, declared: usize },
    #[error("component count must be at least 1")]
    ZeroComponents,
}

/// Integer Seifert matrix together with the number of surface components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertData {
    matrix: Vec<Vec<i64>>,
    b0: usize,
}

impl SeifertData {
    pub fn new(matrix: Vec<Vec<i64>>, b0: usize) -> Result<Self, SeifertError> {
        if b0 == 0 {
            return Err(SeifertError::ZeroComponents);
        }
        let g = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != g {
                return Err(SeifertError::Parse {
                    line: i + 2,
                    message: format!("expected {g} entries, found {}", row.len()),
                });
            }
        }
        Ok(SeifertData { matrix, b0 })
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn b0(&self) -> usize {
        self.b0
    }

    /// `A ↦ −Aᵀ`.
    pub fn mirror(&self) -> SeifertData {
        let g = self.size();
        let matrix = (0..g)
            .map(|i| (0..g).map(|j| -self.matrix[j][i]).collect())
            .collect();
        SeifertData {
            matrix,
            b0: self.b0,
        }
    }

    /// Reads `g b0` followed by `g` rows of `g` integers. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, SeifertError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or(SeifertError::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let head = ints(hl, header)?;
        if head.len() != 2 || head[0] < 0 || head[1] < 1 {
            return Err(SeifertError::Parse {
                line: hl,
                message: "header must be `g b0` with g ≥ 0 and b0 ≥ 1".into(),
            });
        }
        let g = head[0] as usize;
        let mut rows = Vec::with_capacity(g);
        for (ln, l) in lines {
            let row = ints(ln, l)?;
            if row.len() != g {
                return Err(SeifertError::Parse {
                    line: ln,
                    message: format!("expected {g} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        if rows.len() != g {
            return Err(SeifertError::SizeMismatch {
                rows: rows.len(),
                declared: g,
            });
        }
        SeifertData::new(rows, head[1] as usize)
    }
}

fn ints(line: usize, text: &str) -> Result<Vec<i64>, SeifertError> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<i64>().map_err(|_| SeifertError::Parse {
                line,
                message: format!("`{t}` is not an integer"),
            })
        })
        .collect()
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.size(), self.b0)?;
        for row in &self.matrix {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Components of the strand graph where strands `i` and `i+1` are joined
/// whenever `σ_i^{±1}` occurs in `w`.
pub fn surface_components(w: &BraidWord) -> usize {
    let n = w.strands();
    if n == 0 {
        return 0;
    }
    let mut used = vec![false; n.saturating_sub(1)];
    for l in w.letters() {
        used[l.index() as usize - 1] = true;
    }
    1 + used.iter().filter(|u| !**u).count()
}

/// Seifert matrix of the surface built from one disk per strand and one
/// twisted band per letter.
///
/// The basis has one cycle per pair of consecutive bands in the same column.
/// The diagonal is `−1` for two positive bands, `+1` for two negative bands
/// and `0` for mixed signs. Cycles sharing a band, and cycles in adjacent
/// columns whose band intervals interleave, contribute one off-diagonal `±1`.
pub fn bennequin_seifert(w: &BraidWord) -> SeifertData {
    struct Cycle {
        column: u32,
        start: usize,
        end: usize,
    }

    let letters = w.letters();
    let mut last: Vec<Option<usize>> = vec![None; w.strands()];
    let mut cycles: Vec<Cycle> = Vec::new();
    for (pos, l) in letters.iter().enumerate() {
        let c = l.index() as usize;
        if let Some(prev) = last[c] {
            cycles.push(Cycle {
                column: c as u32,
                start: prev,
                end: pos,
            });
        }
        last[c] = Some(pos);
    }
    cycles.sort_by_key(|c| c.start);

    let g = cycles.len();
    let mut a = vec![vec![0i64; g]; g];
    for x in 0..g {
        let cx = &cycles[x];
        let sa = letters[cx.start].sign();
        let sb = letters[cx.end].sign();
        a[x][x] = -((sa + sb).signum() as i64);
        for y in x + 1..g {
            let cy = &cycles[y];
            if cy.start > cx.end {
                break;
            }
            if cy.start == cx.end {
                if cy.column != cx.column {
                    continue;
                }
                if letters[cy.start].is_positive() {
                    a[x][y] = 1;
                } else {
                    a[y][x] = -1;
                }
            } else if cy.end > cx.end {
                if cy.column == cx.column + 1 {
                    a[x][y] = -1;
                } else if cy.column + 1 == cx.column {
                    a[y][x] = 1;
                }
            }
        }
    }
    SeifertData {
        matrix: a,
        b0: surface_components(w),
    }
}
