//! Sparse vectors over tensor-power bases.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::scalar::Scalar;

/// A basis multi-index `(i_1, ..., i_n)` into `A^{⊗n}`.
pub type Multi = SmallVec<[u16; 10]>;

pub fn multi(indices: &[usize]) -> Multi {
    indices.iter().map(|&i| i as u16).collect()
}

pub fn format_multi(m: &Multi) -> String {
    m.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_multi(text: &str) -> Option<Multi> {
    if text.trim().is_empty() {
        return Some(Multi::new());
    }
    text.split(',').map(|t| t.trim().parse::<u16>().ok()).collect()
}

/// Position of a multi-index in the lexicographic enumeration of `[0,d)^n`.
pub fn flat_index(m: &[u16], d: usize) -> usize {
    m.iter().fold(0usize, |acc, &i| acc * d + i as usize)
}

/// Inverse of [`flat_index`].
pub fn unflatten(mut index: usize, d: usize, len: usize) -> Multi {
    let mut out: Multi = SmallVec::from_elem(0, len);
    for slot in (0..len).rev() {
        out[slot] = (index % d) as u16;
        index /= d;
    }
    out
}

/// Every multi-index of `[0,d)^len` in flat order.
pub fn all_multis(d: usize, len: usize) -> impl Iterator<Item = Multi> {
    let count = d.pow(len as u32);
    (0..count).map(move |k| unflatten(k, d, len))
}

/// Sparse linear combination of basis tensors of a fixed length. No zero
/// coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorVector {
    len: usize,
    terms: BTreeMap<Multi, Scalar>,
}

impl TensorVector {
    pub fn zero(len: usize) -> Self {
        TensorVector {
            len,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(key: Multi, coeff: Scalar) -> Self {
        let mut v = Self::zero(key.len());
        v.add_term(key, coeff);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multi, &Scalar)> {
        self.terms.iter()
    }

    pub fn get(&self, key: &[u16]) -> Option<&Scalar> {
        self.terms.get(key)
    }

    /// Terms whose key starts with `prefix`.
    pub fn with_prefix<'a>(&'a self, prefix: &'a [u16]) -> impl Iterator<Item = (&'a Multi, &'a Scalar)> {
        let start: Multi = prefix.iter().copied().collect();
        self.terms
            .range(start..)
            .take_while(move |(k, _)| k.starts_with(prefix))
    }

    pub fn add_term(&mut self, key: Multi, coeff: Scalar) {
        debug_assert_eq!(key.len(), self.len, "tensor length mismatch");
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let s = &*e.get() + &coeff;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &TensorVector) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), c * v);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.len);
        }
        TensorVector {
            len: self.len,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), c * v)).collect(),
        }
    }

    /// Applies `f` to every key, summing collisions.
    pub fn map_keys(&self, new_len: usize, mut f: impl FnMut(&Multi) -> Multi) -> Self {
        let mut out = Self::zero(new_len);
        for (k, v) in &self.terms {
            out.add_term(f(k), v.clone());
        }
        out
    }

    /// Keeps only the terms whose key satisfies `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&Multi) -> bool) -> Self {
        TensorVector {
            len: self.len,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{v}·({})", format_multi(k))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    #[test]
    fn cancellation_removes_terms() {
        let q = FieldSpec::Rationals;
        let mut v = TensorVector::basis(multi(&[0, 1]), q.one());
        v.add_term(multi(&[0, 1]), q.from_i64(-1));
        assert!(v.is_zero());
    }

    #[test]
    fn flat_round_trip() {
        for (k, m) in all_multis(3, 4).enumerate() {
            assert_eq!(flat_index(&m, 3), k);
        }
    }

    #[test]
    fn prefix_scan() {
        let q = FieldSpec::Rationals;
        let mut v = TensorVector::zero(3);
        v.add_term(multi(&[0, 1, 0]), q.one());
        v.add_term(multi(&[0, 1, 1]), q.from_i64(2));
        v.add_term(multi(&[1, 1, 1]), q.from_i64(3));
        assert_eq!(v.with_prefix(&[0, 1]).count(), 2);
        assert_eq!(v.with_prefix(&[1]).count(), 1);
    }
}
