use crate::error::{Error, Result};

/// Parity of a basis index: 0 for positive, 1 for negative.
pub fn parity(i: i32) -> usize {
    usize::from(i < 0)
}

/// Checks `1 ≤ |i| ≤ n`.
pub fn check_index(i: i32, n: usize) -> Result<()> {
    if i == 0 || i.unsigned_abs() as usize > n {
        return Err(Error::IndexOutOfRange(i as i64, n));
    }
    Ok(())
}

/// All indices `1, …, N, -1, …, -N`.
pub fn indices(n: usize) -> Vec<i32> {
    let n = n as i32;
    (1..=n).chain((1..=n).map(|i| -i)).collect()
}

/// The tensor power `(C^{N|N})^{⊗arity}` with basis vectors encoded as
/// base-`2N` integers, slot 1 most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    pub n_half: usize,
    pub arity: usize,
}

pub type Code = u32;

impl Space {
    pub fn new(n_half: usize, arity: usize) -> Self {
        assert!(n_half >= 1, "N must be positive");
        let dim = (2 * n_half as u64).pow(arity as u32);
        assert!(dim <= u32::MAX as u64, "tensor space too large");
        Space { n_half, arity }
    }

    fn base(&self) -> u32 {
        2 * self.n_half as u32
    }

    pub fn dim(&self) -> usize {
        (self.base() as usize).pow(self.arity as u32)
    }

    pub fn digit(&self, i: i32) -> u32 {
        if i > 0 {
            (i - 1) as u32
        } else {
            self.n_half as u32 + (-i - 1) as u32
        }
    }

    pub fn index_of_digit(&self, d: u32) -> i32 {
        let n = self.n_half as u32;
        if d < n {
            d as i32 + 1
        } else {
            -((d - n) as i32 + 1)
        }
    }

    pub fn encode(&self, idx: &[i32]) -> Code {
        debug_assert_eq!(idx.len(), self.arity);
        idx.iter().fold(0, |acc, &i| acc * self.base() + self.digit(i))
    }

    pub fn checked_encode(&self, idx: &[i32]) -> Result<Code> {
        if idx.len() != self.arity {
            return Err(Error::ArityMismatch(idx.len(), self.arity));
        }
        for &i in idx {
            check_index(i, self.n_half)?;
        }
        Ok(self.encode(idx))
    }

    pub fn decode(&self, mut code: Code) -> Vec<i32> {
        let mut out = vec![0; self.arity];
        for k in (0..self.arity).rev() {
            out[k] = self.index_of_digit(code % self.base());
            code /= self.base();
        }
        out
    }

    /// Index in slot `k` (0-based).
    pub fn slot(&self, code: Code, k: usize) -> i32 {
        let shift = self.base().pow((self.arity - 1 - k) as u32);
        self.index_of_digit((code / shift) % self.base())
    }

    pub fn with_slot(&self, code: Code, k: usize, i: i32) -> Code {
        let shift = self.base().pow((self.arity - 1 - k) as u32);
        let old = (code / shift) % self.base();
        code - old * shift + self.digit(i) * shift
    }

    /// Total parity of a basis vector.
    pub fn parity_of(&self, code: Code) -> usize {
        self.decode(code).iter().map(|&i| parity(i)).sum::<usize>() % 2
    }

    pub fn basis(&self) -> impl Iterator<Item = Code> {
        0..self.dim() as Code
    }
}

/// Sign exponent relating the tensor coefficient of
/// `E_{r1c1}⊗…⊗E_{rncn}` to the matrix entry of its left action:
/// `Σ_{a<b} c̄_a (r̄_b + c̄_b)`.
pub fn left_sign(rows: &[i32], cols: &[i32]) -> usize {
    let mut e = 0;
    let mut prefix = 0;
    for b in 0..rows.len() {
        e += prefix * (parity(rows[b]) + parity(cols[b]));
        prefix += parity(cols[b]);
    }
    e % 2
}

/// Right-action counterpart: `e_r · (E_{r1c1}⊗…)` carries
/// `Σ_{a<b} r̄_b (r̄_a + c̄_a)`.
pub fn right_sign(rows: &[i32], cols: &[i32]) -> usize {
    let mut e = 0;
    let mut prefix = 0;
    for b in 0..rows.len() {
        e += parity(rows[b]) * prefix;
        prefix += parity(rows[b]) + parity(cols[b]);
    }
    e % 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_round_trip() {
        let s = Space::new(2, 3);
        assert_eq!(s.dim(), 64);
        for c in s.basis() {
            assert_eq!(s.encode(&s.decode(c)), c);
        }
        let c = s.encode(&[1, -2, 2]);
        assert_eq!(s.slot(c, 1), -2);
        assert_eq!(s.decode(s.with_slot(c, 1, -1)), vec![1, -1, 2]);
        assert_eq!(s.parity_of(c), 1);
    }

    #[test]
    fn index_checks() {
        assert!(check_index(0, 2).is_err());
        assert!(check_index(-3, 2).is_err());
        assert!(check_index(-2, 2).is_ok());
        assert_eq!(indices(2), vec![1, 2, -1, -2]);
        let s = Space::new(1, 2);
        assert!(s.checked_encode(&[1]).is_err());
        assert!(s.checked_encode(&[1, 2]).is_err());
    }
}
