//! Markov moves, band insertions and cobordism-chain certificates.

mod cert;
mod hats;

use std::fmt;

use thiserror::Error;

use crate::braid::{
    closure_stats, left_normal_form, torus_braid, BraidError, BraidLetter, BraidWord,
    ClosureStats, GarsideNormalForm,
};

pub use cert::{load_certificate, parse_certificate, CertError};
pub use hats::{hat_bridges, infer_hats, HatError, HatSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrandEnd {
    Top,
    Bottom,
}

impl fmt::Display for StrandEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrandEnd::Top => "top",
            StrandEnd::Bottom => "bot",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepKind {
    Equal,
    Rotate(i64),
    Conjugate(BraidWord),
    Destabilize { end: StrandEnd, sign: i32 },
    Stabilize { end: StrandEnd, sign: i32 },
    InsertPositive(Vec<(usize, u32)>),
}

impl StepKind {
    /// Strand count after the step, given the count before it.
    pub fn output_strands(&self, input: usize) -> usize {
        match self {
            StepKind::Destabilize { .. } => input.saturating_sub(1),
            StepKind::Stabilize { .. } => input + 1,
            _ => input,
        }
    }

    pub fn is_insertion(&self) -> bool {
        matches!(self, StepKind::InsertPositive(_))
    }
}

/// One rewrite together with the word displayed after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep {
    pub kind: StepKind,
    pub expected: BraidWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainTarget {
    Torus { p: usize, q: usize },
    Word(BraidWord),
}

impl ChainTarget {
    pub fn word(&self) -> Result<BraidWord, BraidError> {
        match self {
            ChainTarget::Torus { p, q } => torus_braid(*p, *q),
            ChainTarget::Word(w) => Ok(w.clone()),
        }
    }

    pub fn torus(&self) -> Option<(usize, usize)> {
        match self {
            ChainTarget::Torus { p, q } => Some((*p, *q)),
            ChainTarget::Word(_) => None,
        }
    }
}

impl fmt::Display for ChainTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainTarget::Torus { p, q } => write!(f, "T({p},{q})"),
            ChainTarget::Word(w) => write!(f, "{w}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CobordismChain {
    pub name: String,
    pub source: BraidWord,
    pub steps: Vec<ChainStep>,
    pub target: ChainTarget,
    pub declared_sl: Option<i64>,
}

impl CobordismChain {
    pub fn strands(&self) -> usize {
        self.source.strands()
    }

    pub fn insertion_count(&self) -> usize {
        self.steps
            .iter()
            .map(|s| match &s.kind {
                StepKind::InsertPositive(v) => v.len(),
                _ => 0,
            })
            .sum()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("the step produces {found} strands but the displayed word has {expected}")]
    Strands { found: usize, expected: usize },
    #[error("the words are different braids")]
    NotEqual,
    #[error("no cyclic rotation of the reduced word equals the displayed word")]
    NotRotation,
    #[error("σ{generator} must occur exactly once with sign {sign:+} and never with the opposite sign (found {positive} positive, {negative} negative)")]
    Boundary {
        generator: u32,
        sign: i32,
        positive: usize,
        negative: usize,
    },
    #[error("cannot destabilize a braid on {0} strand(s)")]
    TooFewStrands(usize),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// A rejected step: the violated rule and the normal forms that disagreed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{violation}; got {got}, expected {expected}")]
pub struct StepFailure {
    pub violation: Violation,
    pub got: String,
    pub expected: String,
}

fn nf_text(w: &BraidWord) -> String {
    format!("B{} {}", w.strands(), left_normal_form(w))
}

fn failure(violation: Violation, got: &BraidWord, expected: &BraidWord) -> StepFailure {
    StepFailure {
        violation,
        got: nf_text(got),
        expected: nf_text(expected),
    }
}

/// True iff some cyclic rotation of `u` is the same braid as `v`.
pub fn equal_up_to_rotation(u: &BraidWord, v: &BraidWord) -> bool {
    if u.strands() != v.strands() {
        return false;
    }
    if u.exponent_sum() != v.exponent_sum() {
        return false;
    }
    let target: GarsideNormalForm = left_normal_form(v);
    (0..u.len().max(1)).any(|k| left_normal_form(&u.rotate(k as i64)) == target)
}

/// Removes the single boundary letter of `w` and returns the word on one
/// fewer strand obtained by rotating that letter to the end and deleting it.
/// Bottom removal shifts every remaining index down by one.
pub fn destabilize(w: &BraidWord, end: StrandEnd, sign: i32) -> Result<BraidWord, Violation> {
    let n = w.strands();
    if n < 2 {
        return Err(Violation::TooFewStrands(n));
    }
    let red = w.free_reduce();
    let generator = match end {
        StrandEnd::Top => (n - 1) as u32,
        StrandEnd::Bottom => 1,
    };
    let hits: Vec<usize> = red
        .letters()
        .iter()
        .enumerate()
        .filter(|(_, l)| l.index() == generator)
        .map(|(i, _)| i)
        .collect();
    let positive = hits.iter().filter(|&&i| red.letters()[i].is_positive()).count();
    let negative = hits.len() - positive;
    let (same, other) = if sign > 0 { (positive, negative) } else { (negative, positive) };
    if same != 1 || other != 0 {
        return Err(Violation::Boundary {
            generator,
            sign,
            positive,
            negative,
        });
    }
    let rotated = red.rotate(hits[0] as i64 + 1);
    let body = &rotated.letters()[..rotated.len() - 1];
    let letters: Vec<BraidLetter> = match end {
        StrandEnd::Top => body.to_vec(),
        StrandEnd::Bottom => body
            .iter()
            .map(|l| BraidLetter::new(l.index() - 1, l.is_positive()))
            .collect(),
    };
    Ok(BraidWord::new(n - 1, letters)?)
}

/// Checks one step against the current word and returns the displayed word.
pub fn verify_step(current: &BraidWord, step: &ChainStep) -> Result<BraidWord, StepFailure> {
    let expected = &step.expected;
    let want = step.kind.output_strands(current.strands());
    if expected.strands() != want {
        return Err(failure(
            Violation::Strands {
                found: want,
                expected: expected.strands(),
            },
            current,
            expected,
        ));
    }
    let same = |got: &BraidWord| -> Result<(), StepFailure> {
        if left_normal_form(got) == left_normal_form(expected) {
            Ok(())
        } else {
            Err(failure(Violation::NotEqual, got, expected))
        }
    };
    match &step.kind {
        StepKind::Equal => same(current)?,
        StepKind::Rotate(k) => same(&current.rotate(*k))?,
        StepKind::Conjugate(c) => {
            let got = current
                .conjugate_by(c)
                .map_err(|e| failure(e.into(), current, expected))?;
            same(&got)?
        }
        StepKind::InsertPositive(ins) => {
            let got = current
                .insert_positive(ins)
                .map_err(|e| failure(e.into(), current, expected))?;
            same(&got)?
        }
        StepKind::Destabilize { end, sign } => {
            let got = destabilize(current, *end, *sign).map_err(|v| failure(v, current, expected))?;
            if !equal_up_to_rotation(&got, expected) {
                return Err(failure(Violation::NotRotation, &got, expected));
            }
        }
        StepKind::Stabilize { end, sign } => {
            let back = destabilize(expected, *end, *sign).map_err(|v| failure(v, current, expected))?;
            if !equal_up_to_rotation(&back, current) {
                return Err(failure(Violation::NotRotation, &back, current));
            }
        }
    }
    Ok(expected.clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepStatus {
    Ok,
    Failed(StepFailure),
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetStatus {
    Ok,
    NotReached,
    Mismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub name: String,
    pub steps: Vec<StepStatus>,
    pub total_insertions: usize,
    /// Change in Euler characteristic of the band surface, `−b`.
    pub euler_delta: i64,
    pub source_stats: ClosureStats,
    pub target_stats: ClosureStats,
    pub target: TargetStatus,
    /// `e − n` bookkeeping across insertions and (de)stabilizations.
    pub bookkeeping_ok: bool,
    pub sl_check: Option<bool>,
}

impl VerificationReport {
    pub fn accepted(&self) -> bool {
        self.steps.iter().all(|s| *s == StepStatus::Ok)
            && self.target == TargetStatus::Ok
            && self.bookkeeping_ok
            && self.sl_check != Some(false)
    }

    pub fn first_failure(&self) -> Option<(usize, &StepFailure)> {
        self.steps.iter().enumerate().find_map(|(i, s)| match s {
            StepStatus::Failed(f) => Some((i, f)),
            _ => None,
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.accepted() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {}: {} steps, {} insertions, sl {}",
            self.name,
            self.steps.len(),
            self.total_insertions,
            self.source_stats.self_linking
        )?;
        if let Some((i, e)) = self.first_failure() {
            write!(f, "\n  step {}: {e}", i + 1)?;
        }
        if let TargetStatus::Mismatch(m) = &self.target {
            write!(f, "\n  target: {m}")?;
        }
        if !self.bookkeeping_ok {
            write!(f, "\n  exponent-sum bookkeeping does not balance")?;
        }
        if self.sl_check == Some(false) {
            write!(f, "\n  declared self-linking does not match e - n")?;
        }
        Ok(())
    }
}

pub fn verify_chain(chain: &CobordismChain) -> VerificationReport {
    let mut current = chain.source.clone();
    let mut steps = Vec::with_capacity(chain.steps.len());
    let mut failed = false;
    let mut balance = chain.source.exponent_sum();
    for step in &chain.steps {
        if failed {
            steps.push(StepStatus::Skipped);
            continue;
        }
        match verify_step(&current, step) {
            Ok(next) => {
                balance += match &step.kind {
                    StepKind::InsertPositive(v) => v.len() as i64,
                    StepKind::Stabilize { sign, .. } => *sign as i64,
                    StepKind::Destabilize { sign, .. } => -(*sign as i64),
                    _ => 0,
                };
                current = next;
                steps.push(StepStatus::Ok);
            }
            Err(e) => {
                failed = true;
                steps.push(StepStatus::Failed(e));
            }
        }
    }

    let target = if failed {
        TargetStatus::NotReached
    } else {
        match chain.target.word() {
            Err(e) => TargetStatus::Mismatch(e.to_string()),
            Ok(t) if t.strands() != current.strands() => TargetStatus::Mismatch(format!(
                "final word has {} strands, target {} has {}",
                current.strands(),
                chain.target,
                t.strands()
            )),
            Ok(t) if equal_up_to_rotation(&current, &t) => TargetStatus::Ok,
            Ok(_) => TargetStatus::Mismatch(format!(
                "no rotation of {current} equals {}",
                chain.target
            )),
        }
    };

    let total_insertions = chain.insertion_count();
    let source_stats = closure_stats(&chain.source, None);
    let target_stats = closure_stats(&current, None);
    let bookkeeping_ok = failed
        || (balance == current.exponent_sum()
            && target_stats.band_surface_euler - source_stats.band_surface_euler
                == -(total_insertions as i64));
    VerificationReport {
        name: chain.name.clone(),
        steps,
        total_insertions,
        euler_delta: -(total_insertions as i64),
        source_stats,
        target_stats,
        target,
        bookkeeping_ok,
        sl_check: chain
            .declared_sl
            .map(|sl| sl == source_stats.self_linking),
    }
}
