//! Exact arithmetic in `Q(ζ_r)` for `r ∈ {2, 3, 4}`.
//!
//! Every element is `a + b·ζ` with rational `a, b`. The minimal relations are
//! `ζ = −1` (r = 2), `ζ² = −1 − ζ` (r = 3) and `ζ² = −1` (r = 4).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The cyclotomic orders with an exact code path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycloOrder {
    Two,
    Three,
    Four,
}

impl CycloOrder {
    pub fn from_order(r: u32) -> Option<Self> {
        match r {
            2 => Some(CycloOrder::Two),
            3 => Some(CycloOrder::Three),
            4 => Some(CycloOrder::Four),
            _ => None,
        }
    }

    pub fn order(self) -> u32 {
        match self {
            CycloOrder::Two => 2,
            CycloOrder::Three => 3,
            CycloOrder::Four => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloScalar {
    order: CycloOrder,
    a: BigRational,
    b: BigRational,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl CycloScalar {
    pub fn zero(order: CycloOrder) -> Self {
        CycloScalar {
            order,
            a: BigRational::zero(),
            b: BigRational::zero(),
        }
    }

    pub fn from_int(order: CycloOrder, v: i64) -> Self {
        CycloScalar {
            order,
            a: rat(v),
            b: BigRational::zero(),
        }
    }

    pub fn from_rational(order: CycloOrder, v: BigRational) -> Self {
        CycloScalar {
            order,
            a: v,
            b: BigRational::zero(),
        }
    }

    /// `ζ^k` with `ζ = e^{2πi/r}`.
    pub fn root_power(order: CycloOrder, k: i64) -> Self {
        let r = order.order() as i64;
        let k = k.rem_euclid(r);
        let mut x = Self::from_int(order, 1);
        let zeta = Self::zeta(order);
        for _ in 0..k {
            x = &x * &zeta;
        }
        x
    }

    fn zeta(order: CycloOrder) -> Self {
        match order {
            CycloOrder::Two => Self::from_int(order, -1),
            _ => CycloScalar {
                order,
                a: BigRational::zero(),
                b: BigRational::one(),
            },
        }
    }

    pub fn order(&self) -> CycloOrder {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `Some(q)` when the element is the rational `q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn conj(&self) -> Self {
        match self.order {
            CycloOrder::Two => self.clone(),
            // conj(ζ₃) = ζ₃² = −1 − ζ₃
            CycloOrder::Three => CycloScalar {
                order: self.order,
                a: &self.a - &self.b,
                b: -self.b.clone(),
            },
            CycloOrder::Four => CycloScalar {
                order: self.order,
                a: self.a.clone(),
                b: -self.b.clone(),
            },
        }
    }

    /// `x · x̄`, always a nonnegative rational.
    pub fn norm(&self) -> BigRational {
        let p = self * &self.conj();
        debug_assert!(p.b.is_zero());
        p.a
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(CycloScalar {
            order: self.order,
            a: &c.a / &n,
            b: &c.b / &n,
        })
    }

    /// Real and imaginary parts as floats.
    pub fn to_complex(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        match self.order {
            CycloOrder::Two => (a, 0.0),
            CycloOrder::Three => (a - 0.5 * b, b * 3f64.sqrt() / 2.0),
            CycloOrder::Four => (a, b),
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order, other.order, "mixed cyclotomic orders");
    }
}

impl Add for &CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        self.check(rhs);
        CycloScalar {
            order: self.order,
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        self.check(rhs);
        CycloScalar {
            order: self.order,
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            order: self.order,
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }
}

impl Mul for &CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        self.check(rhs);
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let cross = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        match self.order {
            CycloOrder::Two => CycloScalar {
                order: self.order,
                a: ac - bd,
                b: BigRational::zero(),
            },
            // (a + bζ)(c + dζ) = ac + (ad + bc)ζ + bd(−1 − ζ)
            CycloOrder::Three => CycloScalar {
                order: self.order,
                a: &ac - &bd,
                b: cross - bd,
            },
            CycloOrder::Four => CycloScalar {
                order: self.order,
                a: ac - bd,
                b: cross,
            },
        }
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sym = match self.order {
            CycloOrder::Four => "i",
            _ => "ζ",
        };
        if self.a.is_zero() {
            write!(f, "{}{}", self.b, sym)
        } else if self.b.is_negative() {
            write!(f, "{}-{}{}", self.a, -self.b.clone(), sym)
        } else {
            write!(f, "{}+{}{}", self.a, self.b, sym)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_have_the_right_order() {
        for order in [CycloOrder::Two, CycloOrder::Three, CycloOrder::Four] {
            let r = order.order() as i64;
            let one = CycloScalar::from_int(order, 1);
            assert_eq!(CycloScalar::root_power(order, r), one);
            for k in 1..r {
                assert_ne!(CycloScalar::root_power(order, k), one);
                // conjugation is inversion on the unit circle
                let z = CycloScalar::root_power(order, k);
                assert_eq!(z.conj(), CycloScalar::root_power(order, r - k));
                assert_eq!(z.norm(), rat(1));
            }
        }
    }

    #[test]
    fn zeta3_relation() {
        let z = CycloScalar::root_power(CycloOrder::Three, 1);
        let z2 = &z * &z;
        let sum = &(&CycloScalar::from_int(CycloOrder::Three, 1) + &z) + &z2;
        assert!(sum.is_zero());
    }

    #[test]
    fn inverse_times_self_is_one() {
        let o = CycloOrder::Three;
        let x = &CycloScalar::from_int(o, 3) + &CycloScalar::root_power(o, 1);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, CycloScalar::from_int(o, 1));
        assert!(CycloScalar::zero(o).inv().is_none());
    }

    #[test]
    fn complex_embedding() {
        let (re, im) = CycloScalar::root_power(CycloOrder::Three, 1).to_complex();
        assert!((re + 0.5).abs() < 1e-12);
        assert!((im - 3f64.sqrt() / 2.0).abs() < 1e-12);
        let (re, im) = CycloScalar::root_power(CycloOrder::Four, 3).to_complex();
        assert!(re.abs() < 1e-12 && (im + 1.0).abs() < 1e-12);
    }
}
