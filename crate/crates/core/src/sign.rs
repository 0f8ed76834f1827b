//! Orientation signs.

use std::fmt;
use std::ops::{Mul, MulAssign, Neg};

use crate::rational::Rational;

/// A sign `±1`, used for orientation comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^n`
    pub fn from_parity(n: usize) -> Self {
        if n % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_rational(self) -> Rational {
        Rational::from_integer(self.to_i64().into())
    }

    /// Parity of the permutation `p` given in one-line notation.
    pub fn of_permutation(p: &[usize]) -> Self {
        let mut seen = vec![false; p.len()];
        let mut transpositions = 0;
        for start in 0..p.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = p[x];
                len += 1;
            }
            transpositions += len - 1;
        }
        Sign::from_parity(transpositions)
    }

    /// Sign of the permutation carrying the sequence `from` to the sequence
    /// `to`. Both must list the same distinct elements of `0..from.len()`.
    pub fn between_orderings(from: &[usize], to: &[usize]) -> Self {
        debug_assert_eq!(from.len(), to.len());
        let mut position = vec![0; from.len()];
        for (i, &x) in from.iter().enumerate() {
            position[x] = i;
        }
        let p: Vec<usize> = to.iter().map(|&x| position[x]).collect();
        Sign::of_permutation(&p)
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => f.write_str("+1"),
            Sign::Minus => f.write_str("-1"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_parity() {
        assert_eq!(Sign::of_permutation(&[0, 1, 2]), Sign::Plus);
        assert_eq!(Sign::of_permutation(&[1, 0, 2]), Sign::Minus);
        assert_eq!(Sign::of_permutation(&[1, 2, 0]), Sign::Plus);
        assert_eq!(Sign::of_permutation(&[3, 0, 1, 2]), Sign::Minus);
    }

    #[test]
    fn orderings() {
        assert_eq!(Sign::between_orderings(&[2, 0, 1], &[2, 0, 1]), Sign::Plus);
        assert_eq!(Sign::between_orderings(&[2, 0, 1], &[0, 2, 1]), Sign::Minus);
        assert_eq!(Sign::between_orderings(&[0, 1, 2, 3], &[3, 0, 1, 2]), Sign::Minus);
    }
}
