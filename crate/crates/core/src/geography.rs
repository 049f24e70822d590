//! Euler characteristic, signature and Betti arithmetic for exact fillings of
//! cyclic branched covers, together with the gate inequalities that decide
//! when a K3 cap pins those numbers down.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeographyError {
    #[error("cover order {0} is not supported (use 2, 3 or 4)")]
    UnsupportedOrder(u32),
    #[error("the nullity-free gates need Ση = 0, got {0}")]
    NonzeroNullity(i64),
    #[error("gate `{gate}` fails: {value} > {threshold}")]
    GateFailed {
        gate: &'static str,
        value: i64,
        threshold: i64,
    },
    #[error("inconsistent Betti data: {0}")]
    Inconsistent(String),
}

/// One inequality `value ≤ threshold`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gate {
    pub value: i64,
    pub threshold: i64,
}

impl Gate {
    fn new(value: i64, threshold: i64) -> Self {
        Gate { value, threshold }
    }

    pub fn passes(&self) -> bool {
        self.value <= self.threshold
    }

    fn check(&self, gate: &'static str) -> Result<(), GeographyError> {
        if self.passes() {
            Ok(())
        } else {
            Err(GeographyError::GateFailed {
                gate,
                value: self.value,
                threshold: self.threshold,
            })
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.passes() { "≤" } else { ">" };
        write!(f, "{} {op} {}", self.value, self.threshold)
    }
}

/// Which pair of gate inequalities is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    /// `X + 2H + S ≤ 3` and `X + 2H − S ≤ 25`; any nullity.
    General,
    /// `X + S ≤ 2` and `X ≤ 15`; needs `H = 0`.
    NullityFree,
}

/// `X = (r−1)(1−n+m)`, `H = Ση`, `S = Σσ` and the gates built from them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GateReport {
    pub x: i64,
    pub h: i64,
    pub s: i64,
    pub t11_a: Gate,
    pub t11_b: Gate,
    /// Only evaluated when `h = 0`.
    pub t12_a: Option<Gate>,
    pub t12_b: Option<Gate>,
    pub eta_zero: bool,
}

impl GateReport {
    pub fn general_passes(&self) -> bool {
        self.t11_a.passes() && self.t11_b.passes()
    }

    /// `None` when the nullity-free gates do not apply.
    pub fn nullity_free_passes(&self) -> Option<bool> {
        match (self.t12_a, self.t12_b) {
            (Some(a), Some(b)) => Some(a.passes() && b.passes()),
            _ => None,
        }
    }

    /// The gate kind normally used: nullity-free when `H = 0`.
    pub fn natural_kind(&self) -> GateKind {
        if self.eta_zero {
            GateKind::NullityFree
        } else {
            GateKind::General
        }
    }

    pub fn passes(&self, kind: GateKind) -> bool {
        match kind {
            GateKind::General => self.general_passes(),
            GateKind::NullityFree => self.nullity_free_passes().unwrap_or(false),
        }
    }
}

fn check_order(r: u32) -> Result<(), GeographyError> {
    if (2..=4).contains(&r) {
        Ok(())
    } else {
        Err(GeographyError::UnsupportedOrder(r))
    }
}

pub fn gates(r: u32, n: i64, m: i64, sigma_sum: i64, eta_sum: i64) -> Result<GateReport, GeographyError> {
    check_order(r)?;
    let x = (r as i64 - 1) * (1 - n + m);
    let (h, s) = (eta_sum, sigma_sum);
    let eta_zero = h == 0;
    Ok(GateReport {
        x,
        h,
        s,
        t11_a: Gate::new(x + 2 * h + s, 3),
        t11_b: Gate::new(x + 2 * h - s, 25),
        t12_a: eta_zero.then(|| Gate::new(x + s, 2)),
        t12_b: eta_zero.then(|| Gate::new(x, 15)),
        eta_zero,
    })
}

/// First Betti number of the filling as far as the gates determine it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum B1 {
    Exact(i64),
    Range(i64, i64),
}

impl B1 {
    pub fn contains(&self, v: i64) -> bool {
        match *self {
            B1::Exact(x) => v == x,
            B1::Range(lo, hi) => (lo..=hi).contains(&v),
        }
    }
}

impl fmt::Display for B1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            B1::Exact(x) => write!(f, "{x}"),
            B1::Range(lo, hi) => write!(f, "[{lo},{hi}]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Caveat {
    /// The cap has `b₂⁺ = 1`; the values hold unless the filling is negative definite.
    NegativeDefinite,
}

impl fmt::Display for Caveat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Caveat::NegativeDefinite => write!(f, "negdef"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FillingPrediction {
    pub spin: bool,
    pub chi: i64,
    pub sigma: i64,
    pub b1: B1,
    pub caveat: Option<Caveat>,
}

/// `χ = r − (r−1)(n−m)`: Euler characteristic of the branched cover of the
/// ball along the pushed-in band surface.
pub fn cover_euler(r: u32, n: i64, m: i64) -> i64 {
    r as i64 - (r as i64 - 1) * (n - m)
}

/// `b₂⁺(C) = 3 − (X + S)/2` for the cap when `H = 0`.
fn cap_b2plus_exact(report: &GateReport) -> Option<i64> {
    let t = report.x + report.s;
    (report.eta_zero && t % 2 == 0).then(|| 3 - t / 2)
}

/// Predicted `χ`, `σ` and `b₁` of any exact filling.
///
/// With `allow_caveat`, a failing nullity-free gate whose cap still has
/// `b₂ ≥ 7` and `b₂⁺ = 1` yields a prediction flagged
/// [`Caveat::NegativeDefinite`] instead of an error. `r = 1` is the ball.
pub fn predict(
    r: u32,
    n: i64,
    m: i64,
    sigma_sum: i64,
    eta_sum: i64,
    kind: GateKind,
    allow_caveat: bool,
) -> Result<FillingPrediction, GeographyError> {
    if r == 1 {
        return Ok(FillingPrediction {
            spin: true,
            chi: 1,
            sigma: 0,
            b1: B1::Exact(0),
            caveat: None,
        });
    }
    let g = gates(r, n, m, sigma_sum, eta_sum)?;
    let chi = cover_euler(r, n, m);
    match kind {
        GateKind::General => {
            g.t11_a.check("X+2H+S")?;
            g.t11_b.check("X+2H-S")?;
            Ok(FillingPrediction {
                spin: true,
                chi,
                sigma: sigma_sum,
                b1: if eta_sum == 0 { B1::Exact(0) } else { B1::Range(0, eta_sum) },
                caveat: None,
            })
        }
        GateKind::NullityFree => {
            let (Some(a), Some(b)) = (g.t12_a, g.t12_b) else {
                return Err(GeographyError::NonzeroNullity(eta_sum));
            };
            b.check("X")?;
            let mut caveat = None;
            if let Err(e) = a.check("X+S") {
                if allow_caveat && cap_b2plus_exact(&g) == Some(1) {
                    caveat = Some(Caveat::NegativeDefinite);
                } else {
                    return Err(e);
                }
            }
            Ok(FillingPrediction {
                spin: caveat.is_none(),
                chi,
                sigma: sigma_sum,
                b1: B1::Exact(0),
                caveat,
            })
        }
    }
}

/// Lower bounds on the Betti numbers of the K3 cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapBounds {
    pub b2_lower: i64,
    pub b2plus_lower: i64,
    pub b2minus_lower: i64,
}

fn ceil_half(v: i64) -> i64 {
    v.div_euclid(2) + v.rem_euclid(2)
}

pub fn cap_bounds(r: u32, n: i64, m: i64, sigma_sum: i64, eta_sum: i64) -> CapBounds {
    let x = (r as i64 - 1) * (1 - n + m);
    let (h, s) = (eta_sum, sigma_sum);
    CapBounds {
        b2_lower: 22 - x - h,
        b2plus_lower: ceil_half(6 - x - 2 * h - s),
        b2minus_lower: ceil_half(38 - x - 2 * h + s),
    }
}

/// Second Betti numbers of a filling, assuming `b₀ = 1` and `b₃ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BettiNumbers {
    pub b1: i64,
    pub b2plus: i64,
    pub b2minus: i64,
    pub b2zero: i64,
}

impl BettiNumbers {
    pub fn b2(&self) -> i64 {
        self.b2plus + self.b2minus + self.b2zero
    }

    pub fn chi(&self) -> i64 {
        1 - self.b1 + self.b2()
    }

    pub fn sigma(&self) -> i64 {
        self.b2plus - self.b2minus
    }
}

/// Splits `b₂ = χ − 1 + b₁` into `b₂^±` using `σ`. With `b2zero_is_zero`
/// set, a parity mismatch between `b₂` and `σ` is an error; otherwise it is
/// absorbed by `b₂⁰ = 1`.
pub fn betti_resolution(chi: i64, sigma: i64, b1: i64, b2zero_is_zero: bool) -> Result<BettiNumbers, GeographyError> {
    if b1 < 0 {
        return Err(GeographyError::Inconsistent(format!("b1 = {b1} is negative")));
    }
    let b2 = chi - 1 + b1;
    if b2 < sigma.abs() {
        return Err(GeographyError::Inconsistent(format!(
            "b2 = {b2} is smaller than |σ| = {}",
            sigma.abs()
        )));
    }
    if (b2 + sigma) % 2 != 0 {
        if b2zero_is_zero {
            return Err(GeographyError::Inconsistent(format!(
                "b2 = {b2} and σ = {sigma} have different parity"
            )));
        }
        // one null direction absorbs the odd part
        return Ok(BettiNumbers {
            b1,
            b2plus: (b2 - 1 + sigma) / 2,
            b2minus: (b2 - 1 - sigma) / 2,
            b2zero: 1,
        });
    }
    Ok(BettiNumbers {
        b1,
        b2plus: (b2 + sigma) / 2,
        b2minus: (b2 - sigma) / 2,
        b2zero: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_examples() {
        // T(2,9): n = 2, m = 9
        let g = gates(2, 2, 9, -8, 0).unwrap();
        assert_eq!(g.t12_a.unwrap(), Gate::new(0, 2));
        assert_eq!(g.t12_b.unwrap(), Gate::new(8, 15));
        assert_eq!(g.nullity_free_passes(), Some(true));

        let g = gates(3, 2, 7, -8, 0).unwrap();
        assert_eq!(g.x, 12);
        assert!(!g.t12_a.unwrap().passes());

        let g = gates(2, 4, 2, 0, 1).unwrap();
        assert_eq!((g.x, g.t11_a.value, g.t11_b.value), (-1, 1, 1));
        assert!(g.general_passes());
        assert_eq!(g.t12_a, None);
        assert!(gates(5, 2, 3, 0, 0).is_err());
    }

    #[test]
    fn prediction_examples() {
        let p = predict(2, 2, 3, -2, 0, GateKind::NullityFree, false).unwrap();
        assert_eq!((p.chi, p.sigma, p.b1), (3, -2, B1::Exact(0)));
        let p = predict(4, 4, 2, 0, 3, GateKind::General, false).unwrap();
        assert_eq!((p.chi, p.sigma, p.b1), (-2, 0, B1::Range(0, 3)));
        let p = predict(1, 5, 2, 0, 0, GateKind::General, false).unwrap();
        assert_eq!((p.chi, p.sigma), (1, 0));
    }

    #[test]
    fn caveat_only_when_cap_has_one_positive() {
        assert!(matches!(
            predict(3, 2, 7, -8, 0, GateKind::NullityFree, false),
            Err(GeographyError::GateFailed { gate: "X+S", .. })
        ));
        let p = predict(3, 2, 7, -8, 0, GateKind::NullityFree, true).unwrap();
        assert_eq!(p.caveat, Some(Caveat::NegativeDefinite));
        assert_eq!((p.chi, p.sigma), (13, -8));
        // X + S = 6 leaves b2+(C) = 0: no fallback
        assert!(predict(3, 2, 7, -6, 0, GateKind::NullityFree, true).is_err());
        assert!(matches!(
            predict(2, 2, 3, -2, 1, GateKind::NullityFree, true),
            Err(GeographyError::NonzeroNullity(1))
        ));
    }

    #[test]
    fn cap_bound_examples() {
        let c = cap_bounds(2, 2, 3, -2, 0);
        assert_eq!((c.b2plus_lower, c.b2minus_lower), (3, 17));
        // X + 2H + S = 3 gives the ceiling 2
        assert_eq!(cap_bounds(2, 1, 2, 1, 0).b2plus_lower, 2);
        // X + 2H − S = 25
        let c = cap_bounds(2, 1, 25, 0, 0);
        assert_eq!(c.b2minus_lower, 7);
        assert_eq!(ceil_half(-3), -1);
    }

    #[test]
    fn betti_examples() {
        let b = betti_resolution(1, -1, 1, true).unwrap();
        assert_eq!((b.b2plus, b.b2minus, b.b2zero), (0, 1, 0));
        let b = betti_resolution(-2, 0, 3, true).unwrap();
        assert_eq!(b.b2(), 0);
        let b = betti_resolution(1, 0, 0, true).unwrap();
        assert_eq!(b.b2(), 0);
        assert!(betti_resolution(1, -2, 0, true).is_err());
        assert!(betti_resolution(2, 0, 0, true).is_err());
        let b = betti_resolution(2, 0, 0, false).unwrap();
        assert_eq!((b.chi(), b.sigma(), b.b2zero), (2, 0, 1));
    }
}
