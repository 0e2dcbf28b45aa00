//! Hall basis of the free nilpotent Lie algebra of rank `r` and step `s`,
//! with canonical chains and bracket admissibility.
//!
//! Indices are 0-based in the API and 1-based in every rendered form
//! (text, JSON), so `X1` is element 0.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::MultiIndex;

/// Default bound on the dimension of a requested algebra.
pub const DEFAULT_MAX_DIM: usize = 1000;

/// One basis element `X_index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement {
    pub index: usize,
    pub degree: usize,
    /// `(i, j)` with `X_index = [X_i, X_j]`; `None` for generators.
    pub children: Option<(usize, usize)>,
    /// Generator at the bottom of the left spine.
    pub ell0: usize,
    /// `l_1 <= ... <= l_h` with `X_index = [X_{l0}, X_{l1}, ..., X_{lh}]`.
    pub chain: Vec<usize>,
    /// Multiplicities of the chain entries.
    pub multi: MultiIndex,
}

impl HallElement {
    pub fn is_generator(&self) -> bool {
        self.children.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallBasis {
    r: usize,
    s: usize,
    elements: Vec<HallElement>,
    layer_dims: Vec<usize>,
    lookup: HashMap<(usize, usize), usize>,
}

fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Layer dimensions `n_1, ..., n_s` of the free Lie algebra on `r`
/// generators, by the Witt formula. Saturates on overflow.
pub fn witt_dimensions(r: usize, s: usize) -> Vec<usize> {
    (1..=s)
        .map(|d| {
            let mut total: i128 = 0;
            for e in (1..=d).filter(|e| d % e == 0) {
                let mu = mobius(e) as i128;
                if mu == 0 {
                    continue;
                }
                let p = (r as i128).checked_pow((d / e) as u32).unwrap_or(i128::MAX / 4);
                total += mu * p;
            }
            usize::try_from(total / d as i128).unwrap_or(usize::MAX)
        })
        .collect()
}

impl HallBasis {
    /// Builds the basis through degree `s`, refusing dimensions above
    /// [`DEFAULT_MAX_DIM`].
    pub fn build(r: usize, s: usize) -> Result<Self> {
        Self::build_with_cap(r, s, DEFAULT_MAX_DIM)
    }

    pub fn build_with_cap(r: usize, s: usize, cap: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParameters(format!("rank must be at least 2, got {r}")));
        }
        if s < 1 {
            return Err(Error::InvalidParameters("step must be at least 1".into()));
        }
        let layer_dims = witt_dimensions(r, s);
        let dim = layer_dims.iter().fold(0usize, |a, &b| a.saturating_add(b));
        if dim > cap {
            return Err(Error::ResourceCap { r, s, dim, cap });
        }

        let mut shape: Vec<(usize, Option<(usize, usize)>)> = (0..r).map(|_| (1, None)).collect();
        for d in 2..=s {
            let mut layer = Vec::new();
            for i in 0..shape.len() {
                for j in 0..i {
                    if shape[i].0 + shape[j].0 != d {
                        continue;
                    }
                    if let Some((_, k)) = shape[i].1 {
                        if k > j {
                            continue;
                        }
                    }
                    layer.push((shape[j].0, i, j));
                }
            }
            layer.sort_unstable();
            shape.extend(layer.into_iter().map(|(_, i, j)| (d, Some((i, j)))));
        }
        let n = shape.len();

        let mut elements: Vec<HallElement> = Vec::with_capacity(n);
        let mut lookup = HashMap::with_capacity(n);
        for (index, &(degree, children)) in shape.iter().enumerate() {
            let (ell0, chain) = match children {
                None => (index, Vec::new()),
                Some((i, j)) => {
                    lookup.insert((i, j), index);
                    let mut chain = elements[i].chain.clone();
                    chain.push(j);
                    (elements[i].ell0, chain)
                }
            };
            let mut exps = vec![0u16; n];
            for &c in &chain {
                exps[c] += 1;
            }
            elements.push(HallElement {
                index,
                degree,
                children,
                ell0,
                chain,
                multi: MultiIndex::from_exponents(exps),
            });
        }
        debug_assert_eq!(n, dim);
        Ok(HallBasis {
            r,
            s,
            elements,
            layer_dims,
            lookup,
        })
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn step(&self) -> usize {
        self.s
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[HallElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> Result<&HallElement> {
        self.elements.get(i).ok_or(Error::IndexOutOfRange {
            index: i + 1,
            len: self.dim(),
        })
    }

    pub fn layer_dims(&self) -> &[usize] {
        &self.layer_dims
    }

    /// `d(i)` for every element.
    pub fn degrees(&self) -> Vec<usize> {
        self.elements.iter().map(|e| e.degree).collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.elements[i].degree
    }

    /// Number of elements of degree at most `d`.
    pub fn dim_through(&self, d: usize) -> usize {
        self.layer_dims.iter().take(d).sum()
    }

    /// `(l0, I(l), chain)` for element `l`.
    pub fn canonical_chain(&self, l: usize) -> Result<(usize, &MultiIndex, &[usize])> {
        let e = self.element(l)?;
        Ok((e.ell0, &e.multi, &e.chain))
    }

    /// Index of `[X_i, X_j]` when it is itself a basis element.
    pub fn bracket_index(&self, i: usize, j: usize) -> Option<usize> {
        self.lookup.get(&(i, j)).copied()
    }

    /// Whether `[X_l, X_k]` satisfies the Hall conditions, i.e.
    /// `u_{I(l)} <= k < l`. The bracket may still lie beyond the step.
    pub fn is_hall_bracket(&self, l: usize, k: usize) -> Result<bool> {
        let e = self.element(l)?;
        self.element(k)?;
        let lower = e.chain.last().copied().unwrap_or(0);
        Ok(lower <= k && k < l)
    }

    /// `j ≺ l`: `X_j` appears on the left spine of `X_l` (reflexive).
    pub fn precedes(&self, j: usize, l: usize) -> Result<bool> {
        self.element(j)?;
        let mut cur = self.element(l)?;
        loop {
            if cur.index == j {
                return Ok(true);
            }
            match cur.children {
                Some((left, _)) => cur = &self.elements[left],
                None => return Ok(false),
            }
        }
    }

    /// Re-derives every chain from scratch: rebuilds `X_l` by bracketing
    /// `X_{l0}` successively with the chain entries and checks the chain
    /// conditions along the way.
    pub fn validate_chains(&self) -> Result<()> {
        for e in &self.elements {
            let bad = |why: &str| Err(Error::Residual(format!("chain of X{}: {why}", e.index + 1)));
            if e.is_generator() {
                if e.ell0 != e.index || !e.chain.is_empty() || !e.multi.is_zero() || e.degree != 1 {
                    return bad("generator data inconsistent");
                }
                continue;
            }
            if e.ell0 >= self.r || e.chain.is_empty() {
                return bad("missing generator start");
            }
            if e.chain[0] >= e.ell0 || self.degree(e.chain[0]) != 1 {
                return bad("first chain entry must be a smaller generator");
            }
            if e.chain.windows(2).any(|w| w[0] > w[1]) {
                return bad("chain not nondecreasing");
            }
            let mut k = e.ell0;
            for &c in &e.chain {
                if c >= k && k != e.ell0 {
                    return bad("prefix index not above next entry");
                }
                match self.bracket_index(k, c) {
                    Some(next) => k = next,
                    None => return bad("prefix bracket is not a basis element"),
                }
            }
            if k != e.index {
                return bad("chain does not rebuild the element");
            }
            let degree: usize = 1 + e.chain.iter().map(|&c| self.degree(c)).sum::<usize>();
            if degree != e.degree {
                return bad("degree mismatch");
            }
            if e.multi.total() as usize != e.chain.len() || e.multi.last_nonzero() != e.chain.last().copied() {
                return bad("multiplicity vector inconsistent");
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Vec<HallElementJson> {
        self.elements.iter().map(HallElementJson::from).collect()
    }
}

/// Serialized form of an element, with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallElementJson {
    pub index: usize,
    pub degree: usize,
    pub children: Option<[usize; 2]>,
    pub ell0: usize,
    pub chain: Vec<usize>,
    #[serde(rename = "I")]
    pub multi: Vec<u16>,
}

impl From<&HallElement> for HallElementJson {
    fn from(e: &HallElement) -> Self {
        HallElementJson {
            index: e.index + 1,
            degree: e.degree,
            children: e.children.map(|(i, j)| [i + 1, j + 1]),
            ell0: e.ell0 + 1,
            chain: e.chain.iter().map(|c| c + 1).collect(),
            multi: e.multi.exponents().to_vec(),
        }
    }
}

impl fmt::Display for HallElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.children {
            None => write!(f, "X{} generator  d={}", self.index + 1, self.degree)?,
            Some((i, j)) => write!(f, "X{} = [X{}, X{}]  d={}", self.index + 1, i + 1, j + 1, self.degree)?,
        }
        let exps = self.multi.exponents();
        let shown = self.multi.last_nonzero().map_or(0, |u| u + 1).max(3).min(exps.len());
        let body: Vec<String> = exps[..shown].iter().map(u16::to_string).collect();
        let tail = if shown < exps.len() { ",..." } else { "" };
        write!(f, "  I=({}{tail})", body.join(","))
    }
}

impl fmt::Display for HallBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.elements {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn children(b: &HallBasis) -> Vec<(usize, usize)> {
        b.elements()
            .iter()
            .filter_map(|e| e.children.map(|(i, j)| (i + 1, j + 1)))
            .collect()
    }

    #[test]
    fn witt_small_cases() {
        assert_eq!(witt_dimensions(2, 6), vec![2, 1, 2, 3, 6, 9]);
        assert_eq!(witt_dimensions(3, 4), vec![3, 3, 8, 18]);
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
    }

    #[test]
    fn rank_two_step_six_labels() {
        let b = HallBasis::build(2, 6).unwrap();
        assert_eq!(b.dim(), 23);
        let expected = vec![
            (2, 1),
            (3, 1),
            (3, 2),
            (4, 1),
            (4, 2),
            (5, 2),
            (6, 1),
            (6, 2),
            (7, 2),
            (8, 2),
            (4, 3),
            (5, 3),
            (9, 1),
            (9, 2),
            (10, 2),
            (11, 2),
            (12, 2),
            (6, 3),
            (7, 3),
            (8, 3),
            (5, 4),
        ];
        assert_eq!(children(&b), expected);
        b.validate_chains().unwrap();
    }

    #[test]
    fn rank_three_step_four_labels() {
        let b = HallBasis::build(3, 4).unwrap();
        assert_eq!(b.dim(), 32);
        let c = children(&b);
        assert_eq!(&c[..3], &[(2, 1), (3, 1), (3, 2)]);
        assert_eq!(
            &c[3..11],
            &[(4, 1), (4, 2), (4, 3), (5, 1), (5, 2), (5, 3), (6, 2), (6, 3)]
        );
        assert_eq!(c[26], (5, 4));
        assert_eq!(c[27], (6, 4));
        assert_eq!(c[28], (6, 5));
        b.validate_chains().unwrap();
    }

    #[test]
    fn chains_and_predicates() {
        let b = HallBasis::build(2, 4).unwrap();
        let (l0, multi, chain) = b.canonical_chain(5).unwrap();
        assert_eq!((l0, chain), (1, &[0, 0, 0][..]));
        assert_eq!(multi.exponents()[..3], [3, 0, 0]);
        // X5 = [[X2, X1], X2]
        let (l0, multi, _) = b.canonical_chain(4).unwrap();
        assert_eq!(l0, 1);
        assert_eq!(multi.exponents()[..3], [1, 1, 0]);
        assert!(b.is_hall_bracket(2, 0).unwrap());
        assert_eq!(b.bracket_index(2, 0), Some(3));
        assert!(!b.is_hall_bracket(3, 3).unwrap());
        assert!(b.precedes(2, 3).unwrap());
        assert!(b.precedes(1, 4).unwrap());
        assert!(b.precedes(2, 4).unwrap());
        assert!(!b.precedes(3, 4).unwrap());
        assert!(!b.precedes(0, 4).unwrap());
        assert!(b.precedes(4, 4).unwrap());
        assert!(b.canonical_chain(99).is_err());

        let b3 = HallBasis::build(3, 4).unwrap();
        // X6 = [X3, X2] with X3 a generator
        let (l0, multi, _) = b3.canonical_chain(5).unwrap();
        assert_eq!(l0, 2);
        assert_eq!(multi.exponents()[..3], [0, 1, 0]);
        assert!(!b3.is_hall_bracket(5, 0).unwrap());
        assert!(b3.is_hall_bracket(5, 1).unwrap());
    }

    #[test]
    fn resource_cap_and_bad_parameters() {
        assert!(matches!(
            HallBasis::build_with_cap(4, 6, 100),
            Err(Error::ResourceCap { dim: 964, .. })
        ));
        assert!(HallBasis::build(1, 3).is_err());
        assert!(HallBasis::build(2, 0).is_err());
    }

    #[test]
    fn text_rendering() {
        let b = HallBasis::build(2, 4).unwrap();
        assert_eq!(b.elements()[5].to_string(), "X6 = [X4, X1]  d=4  I=(3,0,0,...)");
    }
}
