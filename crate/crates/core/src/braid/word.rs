use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("token {position} ({token:?}): not an integer")]
    NotAnInteger { position: usize, token: String },
    #[error("token {position}: zero is not a generator")]
    ZeroToken { position: usize },
    #[error("token {position}: generator {index} out of range for {strands} strands")]
    OutOfRange {
        position: usize,
        index: u32,
        strands: usize,
    },
    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("torus braid needs p >= 2 and q >= 1, got ({p}, {q})")]
    BadTorusParams { p: usize, q: usize },
}

/// A generator letter `σ_i^{±1}`, stored as a signed 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidLetter(i32);

impl BraidLetter {
    pub fn new(index: u32, positive: bool) -> Self {
        assert!(index >= 1, "generator index is 1-based");
        let i = index as i32;
        BraidLetter(if positive { i } else { -i })
    }

    pub fn from_signed(value: i32) -> Self {
        assert!(value != 0, "zero is not a generator");
        BraidLetter(value)
    }

    pub fn index(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn sign(self) -> i32 {
        self.0.signum()
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub fn inverse(self) -> Self {
        BraidLetter(-self.0)
    }
}

/// A word in the braid group `B_n`. The strand count is part of the value:
/// the same letters on different strand counts are different braids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn identity(strands: usize) -> Self {
        assert!(strands >= 1);
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for (position, l) in letters.iter().enumerate() {
            if l.index() as usize >= strands {
                return Err(BraidError::OutOfRange {
                    position,
                    index: l.index(),
                    strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Builds a word from signed generator indices (`-2` is `σ_2⁻¹`).
    pub fn from_signed(strands: usize, values: &[i32]) -> Result<Self, BraidError> {
        let mut letters = Vec::with_capacity(values.len());
        for (position, &v) in values.iter().enumerate() {
            if v == 0 {
                return Err(BraidError::ZeroToken { position });
            }
            letters.push(BraidLetter(v));
        }
        Self::new(strands, letters)
    }

    /// Parses whitespace-separated nonzero integers.
    pub fn parse(text: &str, strands: usize) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        let mut values = Vec::new();
        for (position, token) in text.split_whitespace().enumerate() {
            let v: i32 = token.parse().map_err(|_| BraidError::NotAnInteger {
                position,
                token: token.to_string(),
            })?;
            if v == 0 {
                return Err(BraidError::ZeroToken { position });
            }
            if v.unsigned_abs() as usize >= strands {
                return Err(BraidError::OutOfRange {
                    position,
                    index: v.unsigned_abs(),
                    strands,
                });
            }
            values.push(v);
        }
        Self::from_signed(strands, &values)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn signed(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.signed()).collect()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign() as i64).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.is_positive())
    }

    /// Number of components of the closure (cycles of the strand permutation).
    pub fn closure_components(&self) -> usize {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            let i = l.index() as usize - 1;
            perm.swap(i, i + 1);
        }
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for s in 0..self.strands {
            if !seen[s] {
                cycles += 1;
                let mut t = s;
                while !seen[t] {
                    seen[t] = true;
                    t = perm[t];
                }
            }
        }
        cycles
    }

    fn check_same(&self, other: &BraidWord) -> Result<(), BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        Ok(())
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        self.check_same(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `c · self · c⁻¹`
    pub fn conjugate_by(&self, c: &BraidWord) -> Result<BraidWord, BraidError> {
        c.concat(self)?.concat(&c.invert())
    }

    /// Cyclic shift. Positive `k` moves the first `k` letters to the end,
    /// negative `k` moves the last `|k|` letters to the front.
    pub fn rotate(&self, k: i64) -> BraidWord {
        let n = self.letters.len();
        if n == 0 {
            return self.clone();
        }
        let shift = k.rem_euclid(n as i64) as usize;
        let mut letters = self.letters.clone();
        letters.rotate_left(shift);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Removes adjacent `σ_i σ_i⁻¹` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<BraidLetter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    /// Same letters on one more strand.
    pub fn add_strand(&self) -> BraidWord {
        BraidWord {
            strands: self.strands + 1,
            letters: self.letters.clone(),
        }
    }

    /// Inserts positive letters; positions refer to the word as it was
    /// before any of the insertions, and equal positions keep their order.
    pub fn insert_positive(&self, insertions: &[(usize, u32)]) -> Result<BraidWord, BraidError> {
        let mut sorted: Vec<(usize, usize, u32)> = insertions
            .iter()
            .enumerate()
            .map(|(k, &(p, g))| (p, k, g))
            .collect();
        sorted.sort();
        let mut letters = Vec::with_capacity(self.letters.len() + insertions.len());
        let mut next = sorted.iter().peekable();
        for pos in 0..=self.letters.len() {
            while let Some(&&(p, k, g)) = next.peek() {
                if p != pos {
                    break;
                }
                if g == 0 || g as usize >= self.strands {
                    return Err(BraidError::OutOfRange {
                        position: k,
                        index: g,
                        strands: self.strands,
                    });
                }
                letters.push(BraidLetter::new(g, true));
                next.next();
            }
            if pos < self.letters.len() {
                letters.push(self.letters[pos]);
            }
        }
        if let Some(&&(_, k, g)) = next.peek() {
            return Err(BraidError::OutOfRange {
                position: k,
                index: g,
                strands: self.strands,
            });
        }
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// The Garside element `Δ = (σ_1 … σ_{n-1})(σ_1 … σ_{n-2}) … σ_1`.
    pub fn half_twist(strands: usize) -> BraidWord {
        let mut letters = Vec::new();
        for top in (1..strands).rev() {
            for i in 1..=top {
                letters.push(BraidLetter::new(i as u32, true));
            }
        }
        BraidWord { strands, letters }
    }

    /// The space-separated signed-integer text form accepted by [`BraidWord::parse`].
    pub fn to_text(&self) -> String {
        self.letters
            .iter()
            .map(|l| l.signed().to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        // run-length compressed: s1^3 s2^-1
        let mut i = 0;
        let mut first = true;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let count = (j - i) as i64 * l.sign() as i64;
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if count == 1 {
                write!(f, "s{}", l.index())?;
            } else {
                write!(f, "s{}^{}", l.index(), count)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// `(σ_1 σ_2 … σ_{p-1})^q` on `p` strands; its closure is the torus link `T_{p,q}`.
pub fn torus_braid(p: usize, q: usize) -> Result<BraidWord, BraidError> {
    if p < 2 || q < 1 {
        return Err(BraidError::BadTorusParams { p, q });
    }
    let mut letters = Vec::with_capacity((p - 1) * q);
    for _ in 0..q {
        for i in 1..p {
            letters.push(BraidLetter::new(i as u32, true));
        }
    }
    Ok(BraidWord { strands: p, letters })
}

/// Counts read off a braid word for its closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureStats {
    pub strands: i64,
    pub exponent_sum: i64,
    /// Number of bands `m` of the quasipositive factorization.
    pub band_count: i64,
    /// `e − n`, which is `m − n` for a quasipositive band product.
    pub self_linking: i64,
    /// `n − m`, the Euler characteristic of the band surface.
    pub band_surface_euler: i64,
}

/// Closure statistics. Without an explicit `band_count`, `m` defaults to the
/// exponent sum, which is exact for quasipositive band products.
pub fn closure_stats(w: &BraidWord, band_count: Option<i64>) -> ClosureStats {
    let n = w.strands() as i64;
    let e = w.exponent_sum();
    let m = band_count.unwrap_or(e);
    ClosureStats {
        strands: n,
        exponent_sum: e,
        band_count: m,
        self_linking: e - n,
        band_surface_euler: n - m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, v: &[i32]) -> BraidWord {
        BraidWord::from_signed(n, v).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(BraidWord::parse("1 1 1", 2).unwrap(), w(2, &[1, 1, 1]));
        let id = BraidWord::parse("", 4).unwrap();
        assert!(id.is_empty());
        assert_eq!(id.strands(), 4);
        assert_eq!(BraidWord::parse("1 2 -1", 3).unwrap().signed(), vec![1, 2, -1]);
    }

    #[test]
    fn parse_errors_name_position() {
        assert_eq!(
            BraidWord::parse("1 0 2", 3),
            Err(BraidError::ZeroToken { position: 1 })
        );
        assert!(matches!(
            BraidWord::parse("1 3", 3),
            Err(BraidError::OutOfRange { position: 1, index: 3, .. })
        ));
        assert!(matches!(
            BraidWord::parse("1 x", 3),
            Err(BraidError::NotAnInteger { position: 1, .. })
        ));
        assert!(BraidWord::parse("1", 1).is_err());
    }

    #[test]
    fn group_ops() {
        assert_eq!(w(3, &[2, 1, -2, 2]).free_reduce(), w(3, &[2, 1]));
        assert_eq!(w(3, &[1, 2]).invert(), w(3, &[-2, -1]));
        // σ₁²σ₂²σ₁ with its tail letter moved to the front
        assert_eq!(w(3, &[1, 1, 2, 2, 1]).rotate(-1), w(3, &[1, 1, 1, 2, 2]));
        let u = w(4, &[1, -3, 2]);
        assert_eq!(u.rotate(u.len() as i64), u);
        assert_eq!(u.rotate(1), w(4, &[-3, 2, 1]));
        assert_eq!(
            w(3, &[1]).conjugate_by(&w(3, &[2])).unwrap(),
            w(3, &[2, 1, -2])
        );
        assert!(w(3, &[1]).concat(&w(4, &[1])).is_err());
    }

    #[test]
    fn free_reduce_reaches_fixed_point() {
        let u = w(3, &[1, 2, -2, -1, 1]);
        assert_eq!(u.free_reduce(), w(3, &[1]));
    }

    #[test]
    fn insertions_use_original_positions() {
        let u = w(3, &[1, 1, 2, -2]);
        let v = u.insert_positive(&[(4, 2), (0, 2)]).unwrap();
        assert_eq!(v, w(3, &[2, 1, 1, 2, -2, 2]));
        assert!(u.insert_positive(&[(5, 1)]).is_err());
        assert!(u.insert_positive(&[(0, 3)]).is_err());
    }

    #[test]
    fn torus_braids() {
        assert_eq!(torus_braid(2, 3).unwrap(), w(2, &[1, 1, 1]));
        assert_eq!(torus_braid(3, 5).unwrap().len(), 10);
        assert_eq!(torus_braid(2, 1).unwrap(), w(2, &[1]));
        assert!(torus_braid(1, 3).is_err());
        assert_eq!(torus_braid(2, 4).unwrap().closure_components(), 2);
        assert_eq!(torus_braid(3, 6).unwrap().closure_components(), 3);
        assert_eq!(torus_braid(3, 5).unwrap().closure_components(), 1);
        assert_eq!(BraidWord::identity(3).closure_components(), 3);
    }

    #[test]
    fn closure_stats_examples() {
        let s = closure_stats(&w(2, &[1, 1, 1]), None);
        assert_eq!((s.strands, s.exponent_sum, s.band_count, s.self_linking), (2, 3, 3, 1));
        let s = closure_stats(&w(3, &[1, 1, 2, 2, 1, -2]), None);
        assert_eq!((s.strands, s.exponent_sum, s.band_surface_euler), (3, 4, -1));
        let s = closure_stats(&BraidWord::identity(1), None);
        assert_eq!((s.strands, s.exponent_sum, s.self_linking), (1, 0, -1));
    }

    #[test]
    fn display_compresses_runs() {
        assert_eq!(w(3, &[1, 1, 2, -1]).to_string(), "s1^2 s2 s1^-1");
        assert_eq!(BraidWord::identity(2).to_string(), "e");
    }
}
