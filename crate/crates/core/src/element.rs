//! Hochschild chains and cochains over a basis, and the vector-space trait
//! shared by every graded element the abstract layers manipulate.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::SparseVec;
use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar, ScalarText};
use crate::tensor::{format_multi, parse_multi, Multi, TensorVector};

/// A homogeneous element of a graded vector space.
pub trait Vector: Clone + PartialEq + fmt::Display + Send + Sync {
    fn field(&self) -> FieldSpec;

    /// Arity for operad elements, degree for module elements.
    fn grade(&self) -> usize;

    fn is_zero(&self) -> bool;

    /// `self += c · other`.
    fn add_scaled(&mut self, c: &Scalar, other: &Self);

    fn scaled(&self, c: &Scalar) -> Self;

    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&self.field().one(), other);
        out
    }

    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&self.field().from_i64(-1), other);
        out
    }

    fn negated(&self) -> Self {
        self.scaled(&self.field().from_i64(-1))
    }
}

// ---------------------------------------------------------------------------

/// An element of `C_n(A,A) = A^{⊗(n+1)}`.
#[derive(Clone, Debug)]
pub struct Chain {
    field: FieldSpec,
    degree: usize,
    tensor: TensorVector,
}

impl Chain {
    pub fn zero(field: FieldSpec, degree: usize) -> Self {
        Chain {
            field,
            degree,
            tensor: TensorVector::zero(degree + 1),
        }
    }

    /// The basis tensor `(a_{i_0}, ..., a_{i_n})`.
    pub fn basis(field: FieldSpec, key: Multi) -> Self {
        assert!(!key.is_empty(), "a chain tensor has at least one factor");
        let degree = key.len() - 1;
        Chain {
            field,
            degree,
            tensor: TensorVector::basis(key, field.one()),
        }
    }

    pub fn from_tensor(field: FieldSpec, tensor: TensorVector) -> Self {
        assert!(tensor.len() >= 1);
        Chain {
            field,
            degree: tensor.len() - 1,
            tensor,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn tensor(&self) -> &TensorVector {
        &self.tensor
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multi, &Scalar)> {
        self.tensor.terms()
    }

    pub fn add_term(&mut self, key: Multi, coeff: Scalar) {
        self.tensor.add_term(key, coeff);
    }

    pub fn to_file(&self) -> ChainFile {
        ChainFile {
            degree: self.degree,
            terms: self
                .terms()
                .map(|(k, v)| (format_multi(k), ScalarText::from_scalar(v)))
                .collect(),
        }
    }

    pub fn from_file(file: &ChainFile, field: FieldSpec, dim: usize) -> Result<Self> {
        let mut c = Chain::zero(field, file.degree);
        for (key, value) in &file.terms {
            let m = parse_multi(key)
                .ok_or_else(|| Error::Input(format!("bad chain key {key:?}")))?;
            if m.len() != file.degree + 1 {
                return Err(Error::Input(format!(
                    "chain key {key:?} has {} factors; degree {} needs {}",
                    m.len(),
                    file.degree,
                    file.degree + 1
                )));
            }
            if m.iter().any(|&i| i as usize >= dim) {
                return Err(Error::Input(format!("chain key {key:?} leaves the basis")));
            }
            c.add_term(m, value.parse(field)?);
        }
        Ok(c)
    }
}

/// Zero elements compare equal whatever their nominal degree, so that the
/// degenerate arities of the vanishing conventions do not matter.
impl PartialEq for Chain {
    fn eq(&self, other: &Self) -> bool {
        (self.is_zero() && other.is_zero())
            || (self.degree == other.degree && self.tensor == other.tensor)
    }
}

impl Vector for Chain {
    fn field(&self) -> FieldSpec {
        self.field
    }

    fn grade(&self) -> usize {
        self.degree
    }

    fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }

    fn add_scaled(&mut self, c: &Scalar, other: &Self) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.scaled(c);
            return;
        }
        assert_eq!(self.degree, other.degree, "adding chains of different degree");
        self.tensor.add_scaled(c, &other.tensor);
    }

    fn scaled(&self, c: &Scalar) -> Self {
        Chain {
            field: self.field,
            degree: self.degree,
            tensor: self.tensor.scaled(c),
        }
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[C{}] {}", self.degree, self.tensor)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainFile {
    pub degree: usize,
    pub terms: BTreeMap<String, ScalarText>,
}

// ---------------------------------------------------------------------------

/// Which algebra a cochain takes values in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Codomain {
    A,
    V,
}

/// A multilinear map `A^{⊗p} → V`, stored by its values on basis tuples.
///
/// Internally the value `φ(a_{i_1},…,a_{i_p}) = Σ c_k v_k` is kept as the
/// terms `(i_1,…,i_p,k) ↦ c_k` of a tensor of length `p + 1`.
#[derive(Clone, Debug)]
pub struct Cochain {
    field: FieldSpec,
    arity: usize,
    out_dim: usize,
    values: TensorVector,
}

impl Cochain {
    pub fn zero(field: FieldSpec, arity: usize, out_dim: usize) -> Self {
        Cochain {
            field,
            arity,
            out_dim,
            values: TensorVector::zero(arity + 1),
        }
    }

    /// The cochain sending the basis tuple `args` to `v_out` and every other
    /// basis tuple to zero.
    pub fn basis(field: FieldSpec, args: &[u16], out: usize, out_dim: usize) -> Self {
        let mut c = Self::zero(field, args.len(), out_dim);
        c.set(args, out, field.one());
        c
    }

    /// Cochain with values computed by `f` on every basis tuple.
    pub fn from_fn(
        field: FieldSpec,
        arity: usize,
        dim: usize,
        out_dim: usize,
        mut f: impl FnMut(&[u16]) -> SparseVec,
    ) -> Self {
        let mut c = Self::zero(field, arity, out_dim);
        for args in crate::tensor::all_multis(dim, arity) {
            for (k, v) in f(&args) {
                c.set(&args, k, v);
            }
        }
        c
    }

    pub(crate) fn from_values(field: FieldSpec, arity: usize, out_dim: usize, values: TensorVector) -> Self {
        debug_assert_eq!(values.len(), arity + 1);
        Cochain {
            field,
            arity,
            out_dim,
            values,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    /// Adds `coeff · v_out` to the value on `args`.
    pub fn set(&mut self, args: &[u16], out: usize, coeff: Scalar) {
        assert_eq!(args.len(), self.arity);
        assert!(out < self.out_dim);
        let mut key: Multi = args.iter().copied().collect();
        key.push(out as u16);
        self.values.add_term(key, coeff);
    }

    pub fn values(&self) -> &TensorVector {
        &self.values
    }

    /// Value on a basis tuple, as sparse coordinates in the codomain.
    pub fn evaluate(&self, args: &[u16]) -> Result<SparseVec> {
        if args.len() != self.arity {
            return Err(Error::Usage(format!(
                "cochain of arity {} applied to {} arguments",
                self.arity,
                args.len()
            )));
        }
        Ok(self
            .values
            .with_prefix(args)
            .map(|(k, v)| (k[self.arity] as usize, v.clone()))
            .collect())
    }

    /// Multilinear extension to a tensor of length `arity`.
    pub fn evaluate_tensor(&self, args: &TensorVector) -> Result<SparseVec> {
        if args.len() != self.arity {
            return Err(Error::Usage(format!(
                "cochain of arity {} applied to a tensor of length {}",
                self.arity,
                args.len()
            )));
        }
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (key, c) in args.terms() {
            for (k, v) in self.evaluate(key)? {
                let prod = c * &v;
                match acc.get_mut(&k) {
                    Some(e) => *e = &*e + &prod,
                    None => {
                        acc.insert(k, prod);
                    }
                }
            }
        }
        Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Distinct argument tuples with a nonzero value.
    pub fn support(&self) -> Vec<Multi> {
        let mut out: Vec<Multi> = Vec::new();
        for (k, _) in self.values.terms() {
            let args: Multi = k[..self.arity].iter().copied().collect();
            if out.last() != Some(&args) {
                out.push(args);
            }
        }
        out
    }

    pub fn to_file(&self, codomain: Codomain) -> CochainFile {
        let mut values: BTreeMap<String, Vec<ScalarText>> = BTreeMap::new();
        for args in self.support() {
            let mut row = vec![ScalarText::Int(0); self.out_dim];
            for (k, v) in self.evaluate(&args).expect("arity matches") {
                row[k] = ScalarText::from_scalar(&v);
            }
            values.insert(format_multi(&args), row);
        }
        CochainFile {
            arity: self.arity,
            codomain,
            values,
        }
    }

    /// Reads a cochain file; `dim` bounds argument indices and `out_dim` is
    /// the dimension of the declared codomain.
    pub fn from_file(file: &CochainFile, field: FieldSpec, dim: usize, out_dim: usize) -> Result<Self> {
        let mut c = Cochain::zero(field, file.arity, out_dim);
        for (key, row) in &file.values {
            let args = parse_multi(key)
                .ok_or_else(|| Error::Input(format!("bad cochain key {key:?}")))?;
            if args.len() != file.arity {
                return Err(Error::Input(format!(
                    "cochain key {key:?} does not have {} arguments",
                    file.arity
                )));
            }
            if args.iter().any(|&i| i as usize >= dim) {
                return Err(Error::Input(format!("cochain key {key:?} leaves the basis")));
            }
            if row.len() != out_dim {
                return Err(Error::Input(format!(
                    "value at {key:?} has {} coordinates, expected {out_dim}",
                    row.len()
                )));
            }
            for (k, s) in row.iter().enumerate() {
                c.set(&args, k, s.parse(field)?);
            }
        }
        Ok(c)
    }

    /// Post-composes with a linear map given by columns.
    pub fn map_values(&self, new_out_dim: usize, columns: impl Fn(usize) -> SparseVec) -> Cochain {
        let mut c = Cochain::zero(self.field, self.arity, new_out_dim);
        for (k, v) in self.values.terms() {
            let args = &k[..self.arity];
            for (j, s) in columns(k[self.arity] as usize) {
                c.set(args, j, v * &s);
            }
        }
        c
    }
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        (self.is_zero() && other.is_zero())
            || (self.arity == other.arity && self.out_dim == other.out_dim && self.values == other.values)
    }
}

impl Vector for Cochain {
    fn field(&self) -> FieldSpec {
        self.field
    }

    fn grade(&self) -> usize {
        self.arity
    }

    fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    fn add_scaled(&mut self, c: &Scalar, other: &Self) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.scaled(c);
            return;
        }
        assert_eq!(self.arity, other.arity, "adding cochains of different arity");
        self.values.add_scaled(c, &other.values);
    }

    fn scaled(&self, c: &Scalar) -> Self {
        Cochain {
            field: self.field,
            arity: self.arity,
            out_dim: self.out_dim,
            values: self.values.scaled(c),
        }
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[O{}] ", self.arity)?;
        if self.values.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in self.values.terms() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            let args: Multi = k[..self.arity].iter().copied().collect();
            write!(f, "({}) ↦ {v}·v{}", format_multi(&args), k[self.arity])?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CochainFile {
    pub arity: usize,
    pub codomain: Codomain,
    pub values: BTreeMap<String, Vec<ScalarText>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::multi;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn euler() -> Cochain {
        // E(1) = 0, E(x) = x on the dual numbers.
        Cochain::basis(Q, &[1], 1, 2)
    }

    #[test]
    fn euler_derivation_values() {
        let e = euler();
        assert_eq!(e.evaluate(&[1]).unwrap(), vec![(1, Q.one())]);
        assert!(e.evaluate(&[0]).unwrap().is_empty());
        // E(1 + 2x) = 2x
        let mut arg = TensorVector::zero(1);
        arg.add_term(multi(&[0]), Q.one());
        arg.add_term(multi(&[1]), Q.from_i64(2));
        assert_eq!(e.evaluate_tensor(&arg).unwrap(), vec![(1, Q.from_i64(2))]);
    }

    #[test]
    fn arity_mismatch_is_a_usage_error() {
        assert!(matches!(euler().evaluate(&[0, 1]), Err(Error::Usage(_))));
    }

    #[test]
    fn zero_arity_cochain_is_an_element() {
        let c = Cochain::basis(Q, &[], 1, 2);
        assert_eq!(c.evaluate(&[]).unwrap(), vec![(1, Q.one())]);
        let file = c.to_file(Codomain::A);
        assert!(file.values.contains_key(""));
        assert_eq!(Cochain::from_file(&file, Q, 2, 2).unwrap(), c);
    }

    #[test]
    fn chain_file_round_trip() {
        let mut c = Chain::zero(Q, 2);
        c.add_term(multi(&[1, 0, 1]), Q.from_i64(3));
        c.add_term(multi(&[0, 1, 1]), Q.parse_scalar("-1/2").unwrap());
        let file = c.to_file();
        assert_eq!(Chain::from_file(&file, Q, 2).unwrap(), c);
        let bad = ChainFile {
            degree: 1,
            terms: [("0,1,1".to_string(), ScalarText::Int(1))].into_iter().collect(),
        };
        assert!(Chain::from_file(&bad, Q, 2).is_err());
    }
}
