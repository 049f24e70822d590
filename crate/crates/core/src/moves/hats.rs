use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HatSpec {
    Projective { degree: u32 },
    Hirzebruch { d1: u32, d2: u32 },
}

impl fmt::Display for HatSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HatSpec::Projective { degree } => write!(f, "projective({degree})"),
            HatSpec::Hirzebruch { d1, d2 } => write!(f, "hirzebruch({d1},{d2})"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HatError {
    #[error("no hat facts for torus links T({0},q); supported p are 2, 3 and 5")]
    UnsupportedStrands(usize),
}

const P4: HatSpec = HatSpec::Projective { degree: 4 };
const P6: HatSpec = HatSpec::Projective { degree: 6 };
const H33: HatSpec = HatSpec::Hirzebruch { d1: 3, d2: 3 };

/// Largest `q` for which `T(p,q)` carries each hat directly.
const BASE: &[(usize, usize, HatSpec)] = &[(5, 6, P6), (3, 11, P6), (3, 4, P4), (2, 7, P4), (3, 5, H33)];

/// `((2, a), (3, b))`: a cobordism `T(2,a) → T(3,b)`.
pub type Bridge = ((usize, usize), (usize, usize));

/// Cobordisms `T(2,a) → T(3,b)` backed by bundled certificates.
const BRIDGES: &[Bridge] = &[((2, 8), (3, 5)), ((2, 10), (3, 8))];

/// The `T(2,a) → T(3,b)` bridges used by [`infer_hats`].
pub fn hat_bridges() -> &'static [Bridge] {
    BRIDGES
}

fn direct(p: usize, q: usize) -> BTreeSet<HatSpec> {
    BASE.iter()
        .filter(|(bp, bq, _)| *bp == p && q <= *bq)
        .map(|(_, _, h)| *h)
        .collect()
}

/// Hats worn by `T(p,q)`: a hat at `T(p,q')` passes down to every `q ≤ q'`,
/// and across each bridge from `T(2,a)` to `T(3,b)`.
pub fn infer_hats(p: usize, q: usize) -> Result<BTreeSet<HatSpec>, HatError> {
    if ![2, 3, 5].contains(&p) {
        return Err(HatError::UnsupportedStrands(p));
    }
    let mut out = direct(p, q);
    if p == 2 {
        for &((_, a), (bp, bq)) in BRIDGES {
            if q <= a {
                out.extend(direct(bp, bq));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[HatSpec]) -> BTreeSet<HatSpec> {
        v.iter().copied().collect()
    }

    #[test]
    fn examples() {
        assert_eq!(infer_hats(3, 5).unwrap(), set(&[P6, H33]));
        assert_eq!(infer_hats(2, 7).unwrap(), set(&[P4, P6, H33]));
        assert_eq!(infer_hats(3, 6).unwrap(), set(&[P6]));
        assert_eq!(infer_hats(3, 4).unwrap(), set(&[P4, P6, H33]));
        assert_eq!(infer_hats(2, 8).unwrap(), set(&[P6, H33]));
        assert_eq!(infer_hats(2, 10).unwrap(), set(&[P6]));
        assert_eq!(infer_hats(5, 6).unwrap(), set(&[P6]));
        assert!(infer_hats(3, 12).unwrap().is_empty());
        assert!(infer_hats(2, 11).unwrap().is_empty());
        assert!(infer_hats(4, 3).is_err());
    }
}
