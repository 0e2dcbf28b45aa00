use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{factorial, Rational};
use crate::error::{check_dim, Result};

/// Exponent vector `alpha` in `N^n`.
///
/// Ordered graded-lexicographically: total degree first, then the vector
/// with the larger leading exponent comes first, so `1 < x1 < x2 < x1^2 <
/// x1*x2 < x2^2`. All serializations use this order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u16>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit multi-index `e_k` (0-based position).
    pub fn unit(n: usize, k: usize) -> Self {
        let mut e = vec![0; n];
        e[k] = 1;
        MultiIndex(e)
    }

    pub fn from_exponents(exponents: Vec<u16>) -> Self {
        MultiIndex(exponents)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: usize) -> u16 {
        self.0[k]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// `|alpha|`
    pub fn total(&self) -> u32 {
        self.0.iter().map(|&a| a as u32).sum()
    }

    /// `u_alpha`, the largest position with a nonzero exponent.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.0.iter().rposition(|&a| a != 0)
    }

    /// `alpha!` as an exact integer.
    pub fn factorial(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &a| acc * factorial(a as u32))
    }

    pub fn factorial_rational(&self) -> Rational {
        Rational::from_integer(self.factorial())
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        check_dim(self.len(), other.len())?;
        Ok(self.add(other))
    }

    pub(crate) fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` when some exponent would go negative.
    pub fn sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn with_incremented(&self, k: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[k] += 1;
        MultiIndex(e)
    }

    pub fn with_decremented(&self, k: usize) -> Option<MultiIndex> {
        let mut e = self.0.clone();
        e[k] = e[k].checked_sub(1)?;
        Some(MultiIndex(e))
    }

    /// Positions in fold order: `alpha_1` copies of 0, then `alpha_2`
    /// copies of 1, and so on.
    pub fn expand(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(k, &a)| std::iter::repeat_n(k, a as usize))
            .collect()
    }

    /// Every multi-index of length `n` whose weighted degree is at most
    /// `budget`, in canonical order.
    pub fn enumerate_weighted(degrees: &[usize], budget: usize) -> Vec<MultiIndex> {
        fn rec(degrees: &[usize], pos: usize, budget: usize, cur: &mut Vec<u16>, out: &mut Vec<MultiIndex>) {
            if pos == degrees.len() {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            let d = degrees[pos].max(1);
            let mut a = 0u16;
            while (a as usize) * d <= budget {
                cur[pos] = a;
                rec(degrees, pos + 1, budget - (a as usize) * d, cur, out);
                a += 1;
            }
            cur[pos] = 0;
        }
        let mut out = Vec::new();
        rec(degrees, 0, budget, &mut vec![0; degrees.len()], &mut out);
        out.sort();
        out
    }

    /// Every multi-index of length `n` with `|alpha| <= max_total`.
    pub fn enumerate_total(n: usize, max_total: usize) -> Vec<MultiIndex> {
        Self::enumerate_weighted(&vec![1; n], max_total)
    }
}

/// `d(alpha) = sum_j alpha_j d(j)`.
pub fn weighted_degree(alpha: &MultiIndex, degrees: &[usize]) -> Result<usize> {
    check_dim(degrees.len(), alpha.len())?;
    Ok(alpha.0.iter().zip(degrees).map(|(&a, &d)| a as usize * d).sum())
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn mi(e: &[u16]) -> MultiIndex {
        MultiIndex::from_exponents(e.to_vec())
    }

    #[test]
    fn factorial_of_multi_index() {
        assert_eq!(mi(&[0, 0, 0]).factorial_rational(), int(1));
        assert_eq!(mi(&[3, 0, 0, 0]).factorial_rational(), int(6));
        // 2! * 1! * 2!
        assert_eq!(mi(&[2, 1, 2]).factorial_rational(), int(4));
    }

    #[test]
    fn weighted_degrees() {
        let rank2 = [1, 1, 2, 3, 3, 4, 4, 4];
        assert_eq!(weighted_degree(&MultiIndex::unit(8, 0), &rank2).unwrap(), 1);
        assert_eq!(weighted_degree(&MultiIndex::unit(8, 3), &rank2).unwrap(), 3);
        assert_eq!(weighted_degree(&mi(&[2, 0, 1, 0, 0, 0, 0, 0]), &rank2).unwrap(), 4);
        assert!(weighted_degree(&mi(&[1, 0]), &rank2).is_err());
    }

    #[test]
    fn graded_lex_order() {
        let mut v = vec![
            mi(&[0, 2]),
            mi(&[1, 0]),
            mi(&[0, 0]),
            mi(&[2, 0]),
            mi(&[1, 1]),
            mi(&[0, 1]),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                mi(&[0, 0]),
                mi(&[1, 0]),
                mi(&[0, 1]),
                mi(&[2, 0]),
                mi(&[1, 1]),
                mi(&[0, 2])
            ]
        );
    }

    #[test]
    fn helpers() {
        let a = mi(&[2, 0, 1]);
        assert_eq!(a.total(), 3);
        assert_eq!(a.last_nonzero(), Some(2));
        assert_eq!(MultiIndex::zero(3).last_nonzero(), None);
        assert_eq!(a.expand(), vec![0, 0, 2]);
        assert!(mi(&[1, 0, 1]).le(&a));
        assert!(!mi(&[0, 1, 0]).le(&a));
        assert_eq!(a.sub(&mi(&[1, 0, 1])), Some(mi(&[1, 0, 0])));
        assert_eq!(a.sub(&mi(&[0, 1, 0])), None);
        assert_eq!(MultiIndex::enumerate_total(2, 2).len(), 6);
        assert_eq!(MultiIndex::enumerate_weighted(&[1, 2], 2).len(), 4);
    }
}
