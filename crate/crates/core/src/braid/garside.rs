//! Garside left normal form `Δ^p · A_1 ⋯ A_k` for braid words.
//!
//! Positive permutation braids are stored as permutations of strand
//! positions: `perm[j]` is the final position of the strand that starts at
//! position `j` (0-based). The product `A·B` (A first) has permutation
//! `perm_B ∘ perm_A`.

use std::fmt;

use super::word::{BraidLetter, BraidWord};

/// A positive permutation braid (simple element, a left divisor of `Δ`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutationFactor {
    perm: Vec<u8>,
}

impl PermutationFactor {
    pub fn identity(n: usize) -> Self {
        PermutationFactor {
            perm: (0..n as u8).collect(),
        }
    }

    pub fn delta(n: usize) -> Self {
        PermutationFactor {
            perm: (0..n as u8).rev().collect(),
        }
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut f = Self::identity(n);
        f.perm.swap(i - 1, i);
        f
    }

    /// One-line images, 1-based: strand starting at `j` ends at `images[j-1]`.
    pub fn images(&self) -> Vec<usize> {
        self.perm.iter().map(|&p| p as usize + 1).collect()
    }

    pub fn strands(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| j == p as usize)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.perm.len();
        self.perm.iter().enumerate().all(|(j, &p)| p as usize == n - 1 - j)
    }

    fn inverse_perm(&self) -> Vec<u8> {
        let mut inv = vec![0u8; self.perm.len()];
        for (j, &p) in self.perm.iter().enumerate() {
            inv[p as usize] = j as u8;
        }
        inv
    }

    /// Indices `i` (1-based) with `σ_i` a left divisor.
    pub fn starting_set(&self) -> Vec<usize> {
        (1..self.perm.len())
            .filter(|&i| self.perm[i - 1] > self.perm[i])
            .collect()
    }

    /// Indices `i` (1-based) with `σ_i` a right divisor.
    pub fn finishing_set(&self) -> Vec<usize> {
        let inv = self.inverse_perm();
        (1..inv.len()).filter(|&i| inv[i - 1] > inv[i]).collect()
    }

    fn starts_with(&self, i: usize) -> bool {
        self.perm[i - 1] > self.perm[i]
    }

    fn finishes_with(&self, i: usize) -> bool {
        let a = self.perm.iter().position(|&p| p as usize == i - 1).unwrap();
        let b = self.perm.iter().position(|&p| p as usize == i).unwrap();
        a > b
    }

    /// `self · σ_i`; caller guarantees the result is still simple.
    fn append_generator(&mut self, i: usize) {
        for p in self.perm.iter_mut() {
            if *p as usize == i - 1 {
                *p = i as u8;
            } else if *p as usize == i {
                *p = (i - 1) as u8;
            }
        }
    }

    /// `σ_i⁻¹ · self`; caller guarantees `σ_i` is a left divisor.
    fn strip_leading_generator(&mut self, i: usize) {
        self.perm.swap(i - 1, i);
    }

    /// Conjugation by `Δ`: `σ_i ↦ σ_{n−i}`.
    fn flip(&self) -> Self {
        let n = self.perm.len();
        let mut perm = vec![0u8; n];
        for j in 0..n {
            perm[j] = (n - 1 - self.perm[n - 1 - j] as usize) as u8;
        }
        PermutationFactor { perm }
    }

    /// The simple element `Δ σ_i⁻¹`.
    fn delta_without(n: usize, i: usize) -> Self {
        // X σ_i = Δ, so perm_X = s_i ∘ perm_Δ
        let mut f = Self::delta(n);
        for p in f.perm.iter_mut() {
            if *p as usize == i - 1 {
                *p = i as u8;
            } else if *p as usize == i {
                *p = (i - 1) as u8;
            }
        }
        f
    }

    /// A positive word for this factor (bubble-sort crossing order).
    pub fn to_letters(&self) -> Vec<BraidLetter> {
        let n = self.perm.len();
        let mut target: Vec<u8> = self.perm.clone();
        // track current arrangement: position -> strand final position
        let mut letters = Vec::new();
        loop {
            let mut swapped = false;
            for i in 1..n {
                if target[i - 1] > target[i] {
                    target.swap(i - 1, i);
                    letters.push(BraidLetter::new(i as u32, true));
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        letters
    }
}

impl fmt::Display for PermutationFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imgs: Vec<String> = self.images().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", imgs.join(" "))
    }
}

/// The unique left-weighted representative of a braid element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GarsideNormalForm {
    pub strands: usize,
    pub delta_power: i64,
    pub factors: Vec<PermutationFactor>,
}

impl GarsideNormalForm {
    /// Canonical length (number of non-Δ simple factors).
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    /// A word representing the same element: `Δ^p` followed by the factors.
    pub fn to_word(&self) -> BraidWord {
        let delta = BraidWord::half_twist(self.strands);
        let mut letters = Vec::new();
        let piece = if self.delta_power >= 0 {
            delta.letters().to_vec()
        } else {
            delta.invert().letters().to_vec()
        };
        for _ in 0..self.delta_power.unsigned_abs() {
            letters.extend_from_slice(&piece);
        }
        for f in &self.factors {
            letters.extend(f.to_letters());
        }
        BraidWord::new(self.strands, letters).expect("factor letters are in range")
    }
}

impl fmt::Display for GarsideNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ^{}", self.delta_power)?;
        for factor in &self.factors {
            write!(f, " {factor}")?;
        }
        Ok(())
    }
}

/// Makes the pair `(a, b)` left-weighted in place. Returns whether anything moved.
fn left_weight_pair(a: &mut PermutationFactor, b: &mut PermutationFactor) -> bool {
    let n = a.strands();
    let mut changed = false;
    loop {
        let mut moved = false;
        for i in 1..n {
            if b.starts_with(i) && !a.finishes_with(i) {
                a.append_generator(i);
                b.strip_leading_generator(i);
                moved = true;
                changed = true;
            }
        }
        if !moved {
            break;
        }
    }
    changed
}

pub fn left_normal_form(w: &BraidWord) -> GarsideNormalForm {
    let n = w.strands();
    let mut delta_power: i64 = 0;
    let mut factors: Vec<PermutationFactor> = Vec::new();

    if n >= 2 {
        for l in w.letters() {
            let i = l.index() as usize;
            if l.is_positive() {
                factors.push(PermutationFactor::generator(n, i));
            } else {
                // A_1⋯A_k Δ⁻¹ = Δ⁻¹ τ(A_1)⋯τ(A_k), then σ_i⁻¹ = Δ⁻¹ (Δσ_i⁻¹)
                for f in factors.iter_mut() {
                    *f = f.flip();
                }
                delta_power -= 1;
                factors.push(PermutationFactor::delta_without(n, i));
            }
        }
    }
    // the factor list is now Δ^p A_1 ... A_k with positive simple A's
    // (factors collected left to right, with the Δ⁻¹ already pulled to the front)

    loop {
        let mut changed = false;
        for k in (0..factors.len().saturating_sub(1)).rev() {
            let (left, right) = factors.split_at_mut(k + 1);
            if left_weight_pair(&mut left[k], &mut right[0]) {
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let leading = factors.iter().take_while(|f| f.is_delta()).count();
    delta_power += leading as i64;
    factors.drain(..leading);
    while factors.last().is_some_and(|f| f.is_identity()) {
        factors.pop();
    }
    debug_assert!(factors.iter().all(|f| !f.is_identity() && !f.is_delta()));

    GarsideNormalForm {
        strands: n,
        delta_power,
        factors,
    }
}

/// True iff `u` and `v` are the same element of `B_n`.
pub fn words_equal(u: &BraidWord, v: &BraidWord) -> Result<bool, super::BraidError> {
    if u.strands() != v.strands() {
        return Err(super::BraidError::StrandMismatch {
            left: u.strands(),
            right: v.strands(),
        });
    }
    Ok(left_normal_form(u) == left_normal_form(v))
}

/// True iff the normal form's adjacent factors are all left-weighted.
pub fn is_left_weighted(nf: &GarsideNormalForm) -> bool {
    nf.factors.windows(2).all(|pair| {
        let fin = pair[0].finishing_set();
        pair[1].starting_set().iter().all(|i| fin.contains(i))
    })
}
