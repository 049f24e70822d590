use nalgebra::{DMatrix, SymmetricEigen};
use thiserror::Error;

use super::cyclo::{CycloOrder, CycloScalar};
use super::hermitian::{signature_nullity, HermitianMatrix};
use super::seifert::SeifertData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LtError {
    #[error("order {0} has no exact code path (use 2, 3 or 4)")]
    UnsupportedOrder(u32),
    #[error("exponent {exponent} is not in 1..{order}")]
    TrivialRoot { order: u32, exponent: u32 },
}

/// `ζ_r^k` with `1 ≤ k ≤ r − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    order: CycloOrder,
    exponent: u32,
}

impl RootOfUnity {
    pub fn new(order: u32, exponent: u32) -> Result<Self, LtError> {
        let o = CycloOrder::from_order(order).ok_or(LtError::UnsupportedOrder(order))?;
        if exponent == 0 || exponent >= order {
            return Err(LtError::TrivialRoot { order, exponent });
        }
        Ok(RootOfUnity { order: o, exponent })
    }

    pub fn minus_one() -> Self {
        RootOfUnity {
            order: CycloOrder::Two,
            exponent: 1,
        }
    }

    pub fn order(self) -> u32 {
        self.order.order()
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }

    pub fn conj(self) -> Self {
        RootOfUnity {
            order: self.order,
            exponent: self.order.order() - self.exponent,
        }
    }

    pub fn value(self) -> CycloScalar {
        CycloScalar::root_power(self.order, self.exponent as i64)
    }

    /// Position on the circle as a fraction of a full turn.
    pub fn turn(self) -> f64 {
        self.exponent as f64 / self.order.order() as f64
    }
}

/// `σ_L(ω)` and `η_L(ω)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LTValue {
    pub sigma: i64,
    pub eta: i64,
}

/// `(1 − ω)A + (1 − ω̄)Aᵀ`.
pub fn lt_form(s: &SeifertData, omega: RootOfUnity) -> HermitianMatrix {
    let order = omega.order;
    let one = CycloScalar::from_int(order, 1);
    let w = omega.value();
    let c = &one - &w;
    let cbar = c.conj();
    let a = s.matrix();
    let g = s.size();
    let rows = (0..g)
        .map(|i| {
            (0..g)
                .map(|j| {
                    let x = &c * &CycloScalar::from_int(order, a[i][j]);
                    let y = &cbar * &CycloScalar::from_int(order, a[j][i]);
                    &x + &y
                })
                .collect()
        })
        .collect();
    HermitianMatrix::new(order, rows).expect("LT form is Hermitian by construction")
}

pub fn lt_value(s: &SeifertData, omega: RootOfUnity) -> LTValue {
    let (sigma, nullity) = signature_nullity(&lt_form(s, omega));
    LTValue {
        sigma,
        eta: nullity + s.b0() as i64 - 1,
    }
}

/// `(Σσ, Ση)` over `ζ_r^k`, `k = 1..r−1`.
pub fn lt_sums(s: &SeifertData, r: u32) -> Result<(i64, i64), LtError> {
    let mut sig = 0;
    let mut eta = 0;
    for k in 1..r {
        let v = lt_value(s, RootOfUnity::new(r, k)?);
        sig += v.sigma;
        eta += v.eta;
    }
    Ok((sig, eta))
}

/// Invariants of the `r`-fold cyclic branched covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverInvariants {
    /// `b₁` of the cover of `S³` branched along the link.
    pub b1_cover: i64,
    /// Signature of the cover of `B⁴` branched along the pushed-in surface.
    pub signature: i64,
}

pub fn branched_cover_invariants(s: &SeifertData, r: u32) -> Result<CoverInvariants, LtError> {
    let (sig, eta) = lt_sums(s, r)?;
    Ok(CoverInvariants {
        b1_cover: eta,
        signature: sig,
    })
}

/// Signature of a satellite with pattern winding number `q`, from the values
/// of the pattern at `ω` and the companion at `ω^q`. Pass `None` for the
/// companion when `ω^q = 1`.
pub fn satellite_sigma(pattern: i64, companion_at_power: Option<i64>) -> i64 {
    pattern + companion_at_power.unwrap_or(0)
}

/// `ω^q` as a root of the same order, or `None` when it is 1.
pub fn root_power(omega: RootOfUnity, q: u32) -> Option<RootOfUnity> {
    let r = omega.order();
    let e = (omega.exponent * q) % r;
    (e != 0).then_some(RootOfUnity {
        order: omega.order,
        exponent: e,
    })
}

/// Floating-point signature and nullity at `ω = e^{2πis}`, for sampling the
/// signature function. Eigenvalues within `tol` of zero count as null.
/// Approximate; the exact path is [`lt_value`].
pub fn sample_signature(s: &SeifertData, turn: f64, tol: f64) -> (i64, i64) {
    let g = s.size();
    if g == 0 {
        return (0, 0);
    }
    let theta = 2.0 * std::f64::consts::PI * turn;
    let (c, sn) = (theta.cos(), theta.sin());
    // (1 − ω) = (1 − c) − i s ; (1 − ω̄) = (1 − c) + i s
    let a = s.matrix();
    let mut big = DMatrix::<f64>::zeros(2 * g, 2 * g);
    for i in 0..g {
        for j in 0..g {
            let re = (1.0 - c) * (a[i][j] + a[j][i]) as f64;
            let im = -sn * (a[i][j] - a[j][i]) as f64;
            big[(i, j)] = re;
            big[(i + g, j + g)] = re;
            big[(i, j + g)] = -im;
            big[(i + g, j)] = im;
        }
    }
    let eig = SymmetricEigen::new(big).eigenvalues;
    let pos = eig.iter().filter(|v| **v > tol).count() as i64;
    let neg = eig.iter().filter(|v| **v < -tol).count() as i64;
    let zero = 2 * g as i64 - pos - neg;
    ((pos - neg) / 2, zero / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::lt::bennequin_seifert;

    fn trefoil() -> SeifertData {
        bennequin_seifert(&BraidWord::parse("1 1 1", 2).unwrap())
    }

    #[test]
    fn form_examples() {
        let s = SeifertData::new(vec![vec![-1, 1], vec![0, -1]], 1).unwrap();
        let m = lt_form(&s, RootOfUnity::minus_one());
        let want = HermitianMatrix::from_integers(CycloOrder::Two, &[vec![-4, 2], vec![2, -4]]).unwrap();
        assert_eq!(m, want);
        let one = SeifertData::new(vec![vec![-1]], 1).unwrap();
        let m = lt_form(&one, RootOfUnity::new(4, 1).unwrap());
        assert_eq!(m.get(0, 0), &CycloScalar::from_int(CycloOrder::Four, -2));
        let empty = SeifertData::new(vec![], 1).unwrap();
        assert_eq!(lt_form(&empty, RootOfUnity::new(3, 2).unwrap()).size(), 0);
    }

    #[test]
    fn trefoil_values() {
        let t = trefoil();
        for (r, k) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3)] {
            let v = lt_value(&t, RootOfUnity::new(r, k).unwrap());
            assert_eq!(v, LTValue { sigma: -2, eta: 0 }, "r={r} k={k}");
        }
        assert_eq!(lt_sums(&t, 3).unwrap(), (-4, 0));
        assert_eq!(lt_sums(&t, 4).unwrap(), (-6, 0));
        assert_eq!(lt_value(&t.mirror(), RootOfUnity::minus_one()).sigma, 2);
    }

    #[test]
    fn hopf_link() {
        let h = bennequin_seifert(&BraidWord::parse("1 1", 2).unwrap());
        assert_eq!(lt_value(&h, RootOfUnity::minus_one()), LTValue { sigma: -1, eta: 0 });
    }

    #[test]
    fn unknot_is_zero() {
        let u = SeifertData::new(vec![], 1).unwrap();
        for r in 2..=4 {
            assert_eq!(lt_sums(&u, r).unwrap(), (0, 0));
        }
    }

    #[test]
    fn float_sampling_of_trefoil() {
        let t = trefoil();
        assert_eq!(sample_signature(&t, 0.1, 1e-9), (0, 0));
        assert_eq!(sample_signature(&t, 0.5, 1e-9), (-2, 0));
        // the jump at 1/6 is a root of the Alexander polynomial
        assert_eq!(sample_signature(&t, 1.0 / 6.0, 1e-9).1, 1);
    }

    #[test]
    fn roots_and_errors() {
        assert!(RootOfUnity::new(5, 1).is_err());
        assert!(RootOfUnity::new(3, 0).is_err());
        assert!(RootOfUnity::new(3, 3).is_err());
        let w = RootOfUnity::new(4, 1).unwrap();
        assert_eq!(w.conj().exponent(), 3);
        assert_eq!(root_power(w, 2).map(|x| x.turn()), Some(0.5));
        assert_eq!(root_power(w, 4), None);
        assert_eq!(satellite_sigma(-2, None), -2);
    }
}
