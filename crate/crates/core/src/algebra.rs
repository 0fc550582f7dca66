//! Finite-dimensional unital associative algebras given by structure
//! constants, and the coefficient pairs `(V, γ)` cochains take values in.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar, ScalarText};

/// Sparse coordinate vector over some basis.
pub type SparseVec = Vec<(usize, Scalar)>;

/// A unital associative algebra over a field with a chosen basis whose
/// element 0 is the unit.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra {
    name: String,
    field: FieldSpec,
    basis_names: Vec<String>,
    /// `products[i][j]` = coordinates of `b_i · b_j`.
    products: Vec<Vec<SparseVec>>,
}

/// Outcome of a single named check inside a validation report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckOutcome {
    pub fn pass(check: &str, checked: usize) -> Self {
        CheckOutcome {
            check: check.to_string(),
            passed: true,
            checked,
            witness: None,
            detail: None,
        }
    }

    pub fn fail(check: &str, checked: usize, witness: Vec<usize>, detail: String) -> Self {
        CheckOutcome {
            check: check.to_string(),
            passed: false,
            checked,
            witness: Some(witness),
            detail: Some(detail),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>, checks: Vec<CheckOutcome>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        ValidationReport {
            subject: subject.into(),
            passed,
            checks,
        }
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn dense(field: FieldSpec, d: usize, v: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); d];
    for (i, c) in v {
        out[*i] = &out[*i] + c;
    }
    out
}

fn sparse(v: Vec<Scalar>) -> SparseVec {
    v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}

impl Algebra {
    /// Builds an algebra from dense structure constants
    /// `constants[i][j][k]` = coefficient of `b_k` in `b_i b_j`.
    pub fn new(
        name: impl Into<String>,
        field: FieldSpec,
        basis_names: Vec<String>,
        constants: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        let d = basis_names.len();
        if d == 0 {
            return Err(Error::Input("algebra must have positive dimension".into()));
        }
        if d > u16::MAX as usize {
            return Err(Error::Input("algebra dimension too large".into()));
        }
        if constants.len() != d || constants.iter().any(|row| row.len() != d) {
            return Err(Error::Input(format!(
                "structure constants must be a {d}×{d} array"
            )));
        }
        let mut products = Vec::with_capacity(d);
        for (i, row) in constants.into_iter().enumerate() {
            let mut prow = Vec::with_capacity(d);
            for (j, entry) in row.into_iter().enumerate() {
                if entry.len() != d {
                    return Err(Error::Input(format!(
                        "structure constant entry ({i},{j}) has length {} instead of {d}",
                        entry.len()
                    )));
                }
                if let Some(bad) = entry.iter().find(|s| s.field() != field) {
                    return Err(Error::Input(format!(
                        "scalar {bad} is not in field {field}"
                    )));
                }
                prow.push(sparse(entry));
            }
            products.push(prow);
        }
        Ok(Algebra {
            name: name.into(),
            field,
            basis_names,
            products,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// Always 0; inputs with the unit elsewhere are rejected on load.
    pub fn unit_index(&self) -> usize {
        0
    }

    /// Coordinates of `b_i · b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i][j]
    }

    pub fn structure_constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        let d = self.dim();
        self.products
            .iter()
            .map(|row| row.iter().map(|e| dense(self.field, d, e)).collect())
            .collect()
    }

    /// Product of two dense coordinate vectors.
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        let d = self.dim();
        if u.len() != d || v.len() != d {
            return Err(Error::Usage(format!(
                "vectors of length {} and {} in an algebra of dimension {d}",
                u.len(),
                v.len()
            )));
        }
        let mut out = vec![self.field.zero(); d];
        for (i, ui) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = ui * vj;
                for (k, s) in &self.products[i][j] {
                    out[*k] = &out[*k] + &(&c * s);
                }
            }
        }
        Ok(out)
    }

    /// Product of two sparse coordinate vectors.
    pub fn multiply_sparse(&self, u: &[(usize, Scalar)], v: &[(usize, Scalar)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, ui) in u {
            for (j, vj) in v {
                let c = ui * vj;
                for (k, s) in &self.products[*i][*j] {
                    let e = acc.entry(*k).or_insert_with(|| self.field.zero());
                    *e = &*e + &(&c * s);
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn unit_vector(&self) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[0] = self.field.one();
        v
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// Checks the unit law and associativity on all basis elements.
    pub fn validate(&self) -> ValidationReport {
        let d = self.dim();
        let mut checks = Vec::new();

        let mut unit = CheckOutcome::pass("unit law", 2 * d);
        for j in 0..d {
            let e = vec![(j, self.field.one())];
            let left = self.multiply_sparse(&[(0, self.field.one())], &e);
            let right = self.multiply_sparse(&e, &[(0, self.field.one())]);
            if left != e || right != e {
                unit = CheckOutcome::fail(
                    "unit law",
                    2 * (j + 1),
                    vec![0, j],
                    format!(
                        "1·{0} = {1}, {0}·1 = {2}",
                        self.basis_names[j],
                        self.format(&left),
                        self.format(&right)
                    ),
                );
                break;
            }
        }
        checks.push(unit);

        let mut assoc = CheckOutcome::pass("associativity", d * d * d);
        'outer: for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let ij = self.multiply_sparse(&[(i, self.field.one())], &[(j, self.field.one())]);
                    let jk = self.multiply_sparse(&[(j, self.field.one())], &[(k, self.field.one())]);
                    let left = self.multiply_sparse(&ij, &[(k, self.field.one())]);
                    let right = self.multiply_sparse(&[(i, self.field.one())], &jk);
                    if left != right {
                        assoc = CheckOutcome::fail(
                            "associativity",
                            (i * d + j) * d + k + 1,
                            vec![i, j, k],
                            format!("(b{i}b{j})b{k} = {} but b{i}(b{j}b{k}) = {}", self.format(&left), self.format(&right)),
                        );
                        break 'outer;
                    }
                }
            }
        }
        checks.push(assoc);
        ValidationReport::new(format!("algebra {}", self.name), checks)
    }

    pub fn format(&self, v: &[(usize, Scalar)]) -> String {
        if v.is_empty() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| format!("{c}·{}", self.basis_names[*i]))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Same algebra with structure constants reinterpreted in `field`.
    pub fn over_field(&self, field: FieldSpec) -> Result<Algebra> {
        let constants = self
            .structure_constants()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| e.iter().map(|s| field.coerce(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Algebra::new(self.name.clone(), field, self.basis_names.clone(), constants)
    }

    /// Same algebra with basis relabelled: new basis element `k` is old
    /// element `perm[k]`. `perm[0]` must be 0.
    pub fn permuted(&self, perm: &[usize]) -> Result<Algebra> {
        let d = self.dim();
        if perm.len() != d || perm[0] != 0 {
            return Err(Error::Usage("basis permutation must fix the unit".into()));
        }
        let mut inv = vec![0; d];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut constants = vec![vec![vec![self.field.zero(); d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                for (k, c) in &self.products[perm[i]][perm[j]] {
                    constants[i][j][inv[*k]] = c.clone();
                }
            }
        }
        let names = perm.iter().map(|&o| self.basis_names[o].clone()).collect();
        Algebra::new(self.name.clone(), self.field, names, constants)
    }

    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            name: self.name.clone(),
            field: self.field,
            dim: self.dim(),
            basis_names: self.basis_names.clone(),
            unit_index: 0,
            structure_constants: self
                .structure_constants()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| e.iter().map(ScalarText::from_scalar).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str, field_override: Option<FieldSpec>) -> Result<Algebra> {
        let file: AlgebraFile = serde_json::from_str(text)?;
        file.into_algebra(field_override)
    }
}

/// On-disk JSON layout of an algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub field: FieldSpec,
    pub dim: usize,
    pub basis_names: Vec<String>,
    pub unit_index: usize,
    pub structure_constants: Vec<Vec<Vec<ScalarText>>>,
}

impl AlgebraFile {
    pub fn into_algebra(self, field_override: Option<FieldSpec>) -> Result<Algebra> {
        if self.unit_index != 0 {
            return Err(Error::Input(
                "unit_index must be 0: the unit has to be the first basis vector".into(),
            ));
        }
        if self.basis_names.len() != self.dim {
            return Err(Error::Input(format!(
                "dim is {} but {} basis names were given",
                self.dim,
                self.basis_names.len()
            )));
        }
        let field = field_override.unwrap_or(self.field);
        let constants = self
            .structure_constants
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        e.iter()
                            .map(|s| s.parse(self.field).and_then(|x| field.coerce(&x)))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Algebra::new(self.name, field, self.basis_names, constants)
    }
}

// ---------------------------------------------------------------------------
// Stock algebras

fn table(field: FieldSpec, d: usize, entries: &[(usize, usize, usize, i64)]) -> Vec<Vec<Vec<Scalar>>> {
    let mut c = vec![vec![vec![field.zero(); d]; d]; d];
    for &(i, j, k, v) in entries {
        c[i][j][k] = field.from_i64(v);
    }
    c
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// The ground field itself.
pub fn ground_field(field: FieldSpec) -> Algebra {
    Algebra::new("k", field, names(&["1"]), table(field, 1, &[(0, 0, 0, 1)])).unwrap()
}

/// `k[x]/(x²)` on the basis `{1, x}`.
pub fn dual_numbers(field: FieldSpec) -> Algebra {
    let c = table(field, 2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]);
    Algebra::new("dual_numbers", field, names(&["1", "x"]), c).unwrap()
}

/// `k[x]/(x² − 1)`, the group algebra of ℤ/2, on the basis `{1, x}`.
pub fn cyclic_group_algebra(field: FieldSpec) -> Algebra {
    let c = table(
        field,
        2,
        &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)],
    );
    Algebra::new("z2_group_algebra", field, names(&["1", "x"]), c).unwrap()
}

/// `M_n(k)` on the basis `{I} ∪ {e_ij : (i,j) ≠ (n,n)}`.
pub fn matrix_algebra(field: FieldSpec, n: usize) -> Algebra {
    assert!(n >= 1);
    let units: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| (i, j) != (n - 1, n - 1))
        .collect();
    let d = n * n;
    // Coordinates of the matrix unit e_ij in the chosen basis.
    let coords = |i: usize, j: usize| -> Vec<(usize, i64)> {
        if (i, j) == (n - 1, n - 1) {
            let mut v = vec![(0usize, 1i64)];
            for k in 0..n - 1 {
                let pos = units.iter().position(|&u| u == (k, k)).unwrap();
                v.push((pos + 1, -1));
            }
            v
        } else {
            vec![(units.iter().position(|&u| u == (i, j)).unwrap() + 1, 1)]
        }
    };
    let mut c = vec![vec![vec![field.zero(); d]; d]; d];
    // basis element 0 is I
    for k in 0..d {
        c[0][k][k] = field.one();
        c[k][0][k] = field.one();
    }
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            if j == k {
                for (pos, v) in coords(i, l) {
                    c[a + 1][b + 1][pos] = &c[a + 1][b + 1][pos] + &field.from_i64(v);
                }
            }
        }
    }
    let mut basis = vec!["1".to_string()];
    basis.extend(units.iter().map(|(i, j)| format!("e{}{}", i + 1, j + 1)));
    Algebra::new(format!("M{n}"), field, basis, c).unwrap()
}

// ---------------------------------------------------------------------------
// Coefficient pairs

/// A unital algebra `V` with structure maps `η: A → V` (the A-ring structure)
/// and `γ: V → A`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientPair {
    v: Algebra,
    /// `gamma[j]` = coordinates in A of `γ(v_j)`.
    gamma: Vec<SparseVec>,
    /// `eta[i]` = coordinates in V of `η(a_i)`.
    eta: Vec<SparseVec>,
    identity: bool,
}

impl CoefficientPair {
    /// `V = A`, `γ = η = id`.
    pub fn identity(a: &Algebra) -> Self {
        let one = a.field().one();
        let id: Vec<SparseVec> = (0..a.dim()).map(|i| vec![(i, one.clone())]).collect();
        CoefficientPair {
            v: a.clone(),
            gamma: id.clone(),
            eta: id,
            identity: true,
        }
    }

    pub fn new(a: &Algebra, v: Algebra, gamma: Vec<Vec<Scalar>>, eta: Vec<Vec<Scalar>>) -> Result<Self> {
        if v.field() != a.field() {
            return Err(Error::Input("coefficient algebra over a different field".into()));
        }
        if gamma.len() != v.dim() || gamma.iter().any(|c| c.len() != a.dim()) {
            return Err(Error::Input(format!(
                "gamma must list {} columns of length {}",
                v.dim(),
                a.dim()
            )));
        }
        if eta.len() != a.dim() || eta.iter().any(|c| c.len() != v.dim()) {
            return Err(Error::Input(format!(
                "eta must list {} columns of length {}",
                a.dim(),
                v.dim()
            )));
        }
        Ok(CoefficientPair {
            v,
            gamma: gamma.into_iter().map(sparse).collect(),
            eta: eta.into_iter().map(sparse).collect(),
            identity: false,
        })
    }

    pub fn v(&self) -> &Algebra {
        &self.v
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    pub fn gamma(&self, j: usize) -> &[(usize, Scalar)] {
        &self.gamma[j]
    }

    pub fn eta(&self, i: usize) -> &[(usize, Scalar)] {
        &self.eta[i]
    }

    pub fn apply_gamma(&self, v: &[(usize, Scalar)]) -> SparseVec {
        apply_columns(&self.gamma, v)
    }

    pub fn apply_eta(&self, a: &[(usize, Scalar)]) -> SparseVec {
        apply_columns(&self.eta, a)
    }

    /// Checks that `γ` and `η` are unital algebra maps and that
    /// `γ(v)·v' = v·v' = v·γ(v')` with A acting on V through η, together
    /// with γ being an A-bimodule map.
    pub fn validate(&self, a: &Algebra) -> ValidationReport {
        let one = a.field().one();
        let dv = self.v.dim();
        let da = a.dim();
        let mut checks = Vec::new();

        let g1 = self.gamma[0].clone();
        checks.push(if g1 == vec![(0, one.clone())] {
            CheckOutcome::pass("gamma unital", 1)
        } else {
            CheckOutcome::fail("gamma unital", 1, vec![0], format!("γ(1) = {}", a.format(&g1)))
        });
        let e1 = self.eta[0].clone();
        checks.push(if e1 == vec![(0, one.clone())] {
            CheckOutcome::pass("eta unital", 1)
        } else {
            CheckOutcome::fail("eta unital", 1, vec![0], format!("η(1) = {}", self.v.format(&e1)))
        });

        let mut mult = CheckOutcome::pass("gamma multiplicative", dv * dv);
        'g: for i in 0..dv {
            for j in 0..dv {
                let lhs = a.multiply_sparse(&self.gamma[i], &self.gamma[j]);
                let rhs = self.apply_gamma(self.v.basis_product(i, j));
                if lhs != rhs {
                    mult = CheckOutcome::fail("gamma multiplicative", i * dv + j + 1, vec![i, j], format!("{} ≠ {}", a.format(&lhs), a.format(&rhs)));
                    break 'g;
                }
            }
        }
        checks.push(mult);

        let mut emult = CheckOutcome::pass("eta multiplicative", da * da);
        'e: for i in 0..da {
            for j in 0..da {
                let lhs = self.v.multiply_sparse(&self.eta[i], &self.eta[j]);
                let rhs = self.apply_eta(a.basis_product(i, j));
                if lhs != rhs {
                    emult = CheckOutcome::fail("eta multiplicative", i * da + j + 1, vec![i, j], format!("{} ≠ {}", self.v.format(&lhs), self.v.format(&rhs)));
                    break 'e;
                }
            }
        }
        checks.push(emult);

        let mut ring = CheckOutcome::pass("gamma(v)v' = vv' = v gamma(v')", dv * dv);
        'r: for i in 0..dv {
            for j in 0..dv {
                let vv: SparseVec = self.v.basis_product(i, j).to_vec();
                let left = self
                    .v
                    .multiply_sparse(&self.apply_eta(&self.gamma[i]), &[(j, one.clone())]);
                let right = self
                    .v
                    .multiply_sparse(&[(i, one.clone())], &self.apply_eta(&self.gamma[j]));
                if left != vv || right != vv {
                    ring = CheckOutcome::fail(
                        "gamma(v)v' = vv' = v gamma(v')",
                        i * dv + j + 1,
                        vec![i, j],
                        format!("{} / {} / {}", self.v.format(&left), self.v.format(&vv), self.v.format(&right)),
                    );
                    break 'r;
                }
            }
        }
        checks.push(ring);

        let mut bimod = CheckOutcome::pass("gamma bimodule map", 2 * da * dv);
        'b: for i in 0..da {
            for j in 0..dv {
                let av = self.v.multiply_sparse(&self.eta[i], &[(j, one.clone())]);
                let va = self.v.multiply_sparse(&[(j, one.clone())], &self.eta[i]);
                let lhs_l = self.apply_gamma(&av);
                let rhs_l = a.multiply_sparse(&[(i, one.clone())], &self.gamma[j]);
                let lhs_r = self.apply_gamma(&va);
                let rhs_r = a.multiply_sparse(&self.gamma[j], &[(i, one.clone())]);
                if lhs_l != rhs_l || lhs_r != rhs_r {
                    bimod = CheckOutcome::fail("gamma bimodule map", i * dv + j + 1, vec![i, j], "γ(a·v) ≠ a·γ(v) or γ(v·a) ≠ γ(v)·a".into());
                    break 'b;
                }
            }
        }
        checks.push(bimod);

        ValidationReport::new("coefficient pair", checks)
    }

    pub fn from_json(a: &Algebra, text: &str) -> Result<Self> {
        let file: PairFile = serde_json::from_str(text)?;
        let v = file.v.into_algebra(Some(a.field()))?;
        let parse = |cols: &Vec<Vec<ScalarText>>| -> Result<Vec<Vec<Scalar>>> {
            cols.iter()
                .map(|c| c.iter().map(|s| s.parse(a.field())).collect())
                .collect()
        };
        CoefficientPair::new(a, v, parse(&file.gamma)?, parse(&file.eta)?)
    }
}

fn apply_columns(cols: &[SparseVec], v: &[(usize, Scalar)]) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (j, c) in v {
        for (k, s) in &cols[*j] {
            let prod = c * s;
            match acc.get_mut(k) {
                Some(e) => *e = &*e + &prod,
                None => {
                    acc.insert(*k, prod);
                }
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// On-disk layout of a coefficient pair: the algebra `V` inline, `gamma` as
/// one column per V-basis vector, `eta` as one column per A-basis vector.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairFile {
    pub v: AlgebraFile,
    pub gamma: Vec<Vec<ScalarText>>,
    pub eta: Vec<Vec<ScalarText>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn stock_algebras_validate() {
        for a in [
            ground_field(Q),
            dual_numbers(Q),
            cyclic_group_algebra(Q),
            matrix_algebra(Q, 2),
            matrix_algebra(Q, 3),
        ] {
            let r = a.validate();
            assert!(r.passed, "{} failed: {:?}", a.name(), r.first_failure());
        }
    }

    #[test]
    fn broken_unit_law_is_reported() {
        // x·x = x but 1·x declared 0.
        let c = table(Q, 2, &[(0, 0, 0, 1), (1, 0, 1, 1), (1, 1, 1, 1)]);
        let a = Algebra::new("broken", Q, names(&["1", "x"]), c).unwrap();
        let r = a.validate();
        assert!(!r.passed);
        let f = r.first_failure().unwrap();
        assert_eq!(f.check, "unit law");
        assert_eq!(f.witness.as_deref(), Some(&[0, 1][..]));
    }

    #[test]
    fn nonassociative_constants_are_reported() {
        // 1 unit, x·x = 1 + x, y·y = x, x·y = y·x = 0: (yy)y = xy = 0, y(yy) = yx = 0,
        // but (xx)y = (1+x)y = y while x(xy) = 0.
        let c = table(
            Q,
            3,
            &[
                (0, 0, 0, 1),
                (0, 1, 1, 1),
                (1, 0, 1, 1),
                (0, 2, 2, 1),
                (2, 0, 2, 1),
                (1, 1, 0, 1),
                (1, 1, 1, 1),
                (2, 2, 1, 1),
            ],
        );
        let a = Algebra::new("bad", Q, names(&["1", "x", "y"]), c).unwrap();
        let r = a.validate();
        assert_eq!(r.first_failure().unwrap().check, "associativity");
    }

    #[test]
    fn dual_number_products() {
        let d = dual_numbers(Q);
        let x = d.basis_vector(1);
        assert_eq!(d.multiply(&x, &x).unwrap(), vec![Q.zero(), Q.zero()]);
        let one_plus_x = vec![Q.one(), Q.one()];
        let one_minus_x = vec![Q.one(), Q.from_i64(-1)];
        assert_eq!(d.multiply(&one_plus_x, &one_minus_x).unwrap(), d.unit_vector());
        assert!(d.multiply(&x, &[Q.one()]).is_err());
    }

    #[test]
    fn matrix_units_multiply() {
        let m = matrix_algebra(Q, 2);
        let idx = |n: &str| m.basis_names().iter().position(|b| b == n).unwrap();
        let p = m.basis_product(idx("e12"), idx("e21"));
        assert_eq!(p, &[(idx("e11"), Q.one())][..]);
    }

    #[test]
    fn identity_pair_is_compatible() {
        for a in [dual_numbers(Q), matrix_algebra(Q, 2), cyclic_group_algebra(Q)] {
            let r = CoefficientPair::identity(&a).validate(&a);
            assert!(r.passed, "{:?}", r.first_failure());
        }
    }

    #[test]
    fn json_round_trip_and_unit_rejection() {
        let d = dual_numbers(Q);
        let text = serde_json::to_string(&d.to_file()).unwrap();
        assert_eq!(Algebra::from_json(&text, None).unwrap(), d);
        let mut file = d.to_file();
        file.unit_index = 1;
        let text = serde_json::to_string(&file).unwrap();
        assert!(matches!(Algebra::from_json(&text, None), Err(Error::Input(_))));
    }

    #[test]
    fn field_override_reduces_constants() {
        let g = cyclic_group_algebra(Q);
        let text = serde_json::to_string(&g.to_file()).unwrap();
        let g7 = Algebra::from_json(&text, Some(FieldSpec::Prime(7))).unwrap();
        assert_eq!(g7.field(), FieldSpec::Prime(7));
        assert!(g7.validate().passed);
    }
}
