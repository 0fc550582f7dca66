//! Exact matrices of graded operators, kernels and images by sparse
//! elimination, (co)homology with representatives, boundary membership with
//! certificates, and Connes' cyclic homology.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::SparseVec;
use crate::comp_module::{is_cyclic, CompModule, Complex, Operators};
use crate::element::Vector;
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::operad::Operad;
use crate::scalar::{FieldSpec, Scalar};

pub type Column = BTreeMap<usize, Scalar>;

fn column(coords: SparseVec) -> Column {
    coords.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn axpy(target: &mut Column, c: &Scalar, v: &Column) {
    for (k, x) in v {
        let e = target.entry(*k).or_insert_with(|| c.field().zero());
        *e = &*e + &(c * x);
        if e.is_zero() {
            target.remove(k);
        }
    }
}

// ---------------------------------------------------------------------------
// Graded spaces

/// A graded vector space with a fixed basis in each degree.
pub trait GradedSpace: Sync {
    type Elem: Vector;

    fn field(&self) -> FieldSpec;

    fn label(&self) -> String;

    fn fingerprint(&self) -> Option<String>;

    fn top(&self) -> usize;

    fn dim(&self, n: usize) -> usize;

    fn basis(&self, n: usize) -> Vec<Self::Elem>;

    fn coords(&self, x: &Self::Elem) -> SparseVec;

    fn from_coords(&self, n: usize, coords: &[(usize, Scalar)]) -> Self::Elem;
}

/// The chains of a comp module, full or normalized.
pub struct Chains<'a, M> {
    pub module: &'a M,
    pub complex: Complex,
}

impl<M: CompModule> GradedSpace for Chains<'_, M> {
    type Elem = M::Elem;

    fn field(&self) -> FieldSpec {
        self.module.field()
    }

    fn label(&self) -> String {
        format!("{} ({:?})", self.module.name(), self.complex).to_lowercase()
    }

    fn fingerprint(&self) -> Option<String> {
        self.module.fingerprint().map(|f| format!("chains|{:?}|{f}", self.complex))
    }

    fn top(&self) -> usize {
        self.module.degree_cap()
    }

    fn dim(&self, n: usize) -> usize {
        self.module.dim(n, self.complex)
    }

    fn basis(&self, n: usize) -> Vec<M::Elem> {
        self.module.basis(n, self.complex)
    }

    fn coords(&self, x: &M::Elem) -> SparseVec {
        self.module.coords(x, self.complex)
    }

    fn from_coords(&self, n: usize, coords: &[(usize, Scalar)]) -> M::Elem {
        self.module.from_coords(n, self.complex, coords)
    }
}

/// The cochains of an operad, graded by arity.
pub struct Cochains<'a, O> {
    pub operad: &'a O,
    pub complex: Complex,
}

impl<O: Operad> GradedSpace for Cochains<'_, O> {
    type Elem = O::Elem;

    fn field(&self) -> FieldSpec {
        self.operad.field()
    }

    fn label(&self) -> String {
        format!("cochains ({:?})", self.complex).to_lowercase()
    }

    fn fingerprint(&self) -> Option<String> {
        self.operad.fingerprint().map(|f| format!("cochains|{:?}|{f}", self.complex))
    }

    fn top(&self) -> usize {
        self.operad.arity_cap()
    }

    fn dim(&self, n: usize) -> usize {
        self.operad.dim(n, self.complex)
    }

    fn basis(&self, n: usize) -> Vec<O::Elem> {
        self.operad.basis_of(n, self.complex)
    }

    fn coords(&self, x: &O::Elem) -> SparseVec {
        self.operad.coords(x, self.complex)
    }

    fn from_coords(&self, n: usize, coords: &[(usize, Scalar)]) -> O::Elem {
        self.operad.from_coords(n, self.complex, coords)
    }
}

// ---------------------------------------------------------------------------
// Matrices

/// An exact matrix stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    pub name: String,
    pub field: FieldSpec,
    pub source_degree: usize,
    pub target_degree: usize,
    pub rows: usize,
    pub columns: Vec<Column>,
}

impl OperatorMatrix {
    pub fn zero(name: &str, field: FieldSpec, source: (usize, usize), target: (usize, usize)) -> Self {
        OperatorMatrix {
            name: name.to_string(),
            field,
            source_degree: source.0,
            target_degree: target.0,
            rows: target.1,
            columns: vec![Column::new(); source.1],
        }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.columns[c].get(&r).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, v: &Column) -> Column {
        let mut out = Column::new();
        for (k, c) in v {
            axpy(&mut out, c, &self.columns[*k]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if other.rows != self.cols() {
            return Err(Error::Usage(format!(
                "cannot compose {} ({} columns) after {} ({} rows)",
                self.name,
                self.cols(),
                other.name,
                other.rows
            )));
        }
        Ok(OperatorMatrix {
            name: format!("{}∘{}", self.name, other.name),
            field: self.field,
            source_degree: other.source_degree,
            target_degree: self.target_degree,
            rows: self.rows,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.field);
        for (k, c) in self.columns.iter().enumerate() {
            e.insert(c.clone(), Column::from([(k, self.field.one())]));
        }
        e.rank()
    }

    /// Text form: a header, then one line per row listing `column:value`.
    pub fn to_text(&self, key: &str) -> String {
        let mut by_row: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, x) in col {
                by_row[*r].push((c, x));
            }
        }
        let mut s = String::new();
        let _ = writeln!(s, "opcalc-matrix 1");
        let _ = writeln!(s, "key {key}");
        let _ = writeln!(s, "name {}", self.name);
        let _ = writeln!(s, "field {}", self.field);
        let _ = writeln!(s, "degrees {} {}", self.source_degree, self.target_degree);
        let _ = writeln!(s, "shape {} {}", self.rows, self.cols());
        for row in by_row {
            let cells: Vec<String> = row.iter().map(|(c, x)| format!("{c}:{x}")).collect();
            let _ = writeln!(s, "{}", cells.join(" "));
        }
        s
    }

    /// Parses [`OperatorMatrix::to_text`] output, returning the key line too.
    pub fn from_text(text: &str) -> Result<(String, OperatorMatrix)> {
        let bad = |what: &str| Error::Input(format!("malformed matrix file: {what}"));
        let mut lines = text.lines();
        if lines.next() != Some("opcalc-matrix 1") {
            return Err(bad("header"));
        }
        let mut field_line = |prefix: &str| -> Result<String> {
            lines
                .next()
                .and_then(|l| l.strip_prefix(prefix))
                .map(str::to_string)
                .ok_or_else(|| bad(prefix.trim()))
        };
        let key = field_line("key ")?;
        let name = field_line("name ")?;
        let field: FieldSpec = field_line("field ")?.parse()?;
        let pair = |s: String| -> Result<(usize, usize)> {
            let mut it = s.split(' ').map(|t| t.parse::<usize>());
            match (it.next(), it.next()) {
                (Some(Ok(a)), Some(Ok(b))) => Ok((a, b)),
                _ => Err(bad("dimensions")),
            }
        };
        let (source_degree, target_degree) = pair(field_line("degrees ")?)?;
        let (rows, cols) = pair(field_line("shape ")?)?;
        let mut columns = vec![Column::new(); cols];
        for r in 0..rows {
            let line = lines.next().ok_or_else(|| bad("missing row"))?;
            for cell in line.split_whitespace() {
                let (c, x) = cell.split_once(':').ok_or_else(|| bad("cell"))?;
                let c: usize = c.parse().map_err(|_| bad("column index"))?;
                if c >= cols {
                    return Err(bad("column index out of range"));
                }
                columns[c].insert(r, field.parse_scalar(x)?);
            }
        }
        Ok((
            key,
            OperatorMatrix {
                name,
                field,
                source_degree,
                target_degree,
                rows,
                columns,
            },
        ))
    }
}

/// On-disk matrix cache: `<root>/<instance hash>/<op>-<degree>.mat`.
#[derive(Clone, Debug)]
pub struct MatrixCache {
    root: PathBuf,
}

impl MatrixCache {
    pub fn new(root: impl AsRef<Path>) -> Self {
        MatrixCache {
            root: root.as_ref().to_path_buf(),
        }
    }

    pub fn hash(fingerprint: &str) -> String {
        Sha256::digest(fingerprint.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    fn path(&self, hash: &str, op: &str, degree: usize) -> PathBuf {
        let op: String = op.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
        self.root.join(hash).join(format!("{op}-{degree}.mat"))
    }

    /// A cached matrix whose stored key matches; anything unreadable is a
    /// miss.
    pub fn load(&self, hash: &str, op: &str, degree: usize) -> Option<OperatorMatrix> {
        let text = fs::read_to_string(self.path(hash, op, degree)).ok()?;
        let (key, m) = OperatorMatrix::from_text(&text).ok()?;
        (key == format!("{hash} {op}")).then_some(m)
    }

    pub fn store(&self, hash: &str, op: &str, degree: usize, m: &OperatorMatrix) -> Result<()> {
        let path = self.path(hash, op, degree);
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, m.to_text(&format!("{hash} {op}")))?;
        Ok(())
    }
}

/// Matrix of `f` from degree `source` to degree `target` of `space`, one
/// column per basis vector.
pub fn assemble<S, F>(space: &S, name: &str, source: usize, target: usize, f: F, strategy: Strategy) -> Result<OperatorMatrix>
where
    S: GradedSpace,
    F: Fn(&S::Elem) -> Result<S::Elem> + Sync + Send,
{
    let basis = space.basis(source);
    let columns = exec::map(strategy, &basis, |x| -> Result<Column> {
        let y = f(x)?;
        if !y.is_zero() && y.grade() != target {
            return Err(Error::Usage(format!("{name} sent degree {source} to {} instead of {target}", y.grade())));
        }
        Ok(column(space.coords(&y)))
    });
    Ok(OperatorMatrix {
        name: name.to_string(),
        field: space.field(),
        source_degree: source,
        target_degree: target,
        rows: space.dim(target),
        columns: columns.into_iter().collect::<Result<_>>()?,
    })
}

/// Like [`assemble`], going through `cache` when the space has a
/// fingerprint.
pub fn assemble_cached<S, F>(
    space: &S,
    name: &str,
    source: usize,
    target: usize,
    f: F,
    strategy: Strategy,
    cache: Option<&MatrixCache>,
) -> Result<OperatorMatrix>
where
    S: GradedSpace,
    F: Fn(&S::Elem) -> Result<S::Elem> + Sync + Send,
{
    let keyed = cache.zip(space.fingerprint().map(|f| MatrixCache::hash(&f)));
    if let Some((cache, hash)) = &keyed {
        if let Some(m) = cache.load(hash, name, source) {
            if m.rows == space.dim(target) && m.cols() == space.dim(source) && m.field == space.field() {
                return Ok(m);
            }
        }
    }
    let m = assemble(space, name, source, target, f, strategy)?;
    if let Some((cache, hash)) = &keyed {
        cache.store(hash, name, source, &m)?;
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// Elimination

/// Row echelon form built one vector at a time. Each stored vector carries a
/// tag: its expression as a combination of the inserted inputs.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    /// Pivot row (the largest row index of the vector) ↦ (vector, tag).
    pivots: BTreeMap<usize, (Column, Column)>,
}

impl Echelon {
    pub fn new(field: FieldSpec) -> Self {
        Echelon {
            field,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_pivot(&self, row: usize) -> bool {
        self.pivots.contains_key(&row)
    }

    /// Splits `v = residual + span part`; the residual has no entry in a
    /// pivot row and the second value expresses the span part in the inputs.
    pub fn reduce(&self, mut v: Column) -> (Column, Column) {
        let mut combination = Column::new();
        let mut bound = usize::MAX;
        loop {
            let hit = v.range(..bound).rev().find(|(k, _)| self.pivots.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((row, c)) = hit else { break };
            let (pv, tag) = &self.pivots[&row];
            let factor = c.try_div(&pv[&row]).expect("pivot entries are nonzero");
            axpy(&mut v, &-&factor, pv);
            axpy(&mut combination, &factor, tag);
            bound = row;
        }
        (v, combination)
    }

    /// Inserts `v`, whose expression in the inputs is `tag`. Returns the
    /// relation among inputs when `v` is already in the span.
    pub fn insert(&mut self, v: Column, tag: Column) -> Option<Column> {
        let (residual, combination) = self.reduce(v);
        let mut relation = tag;
        axpy(&mut relation, &-self.field.one(), &combination);
        match residual.keys().next_back().copied() {
            None => Some(relation),
            Some(row) => {
                self.pivots.insert(row, (residual, relation));
                None
            }
        }
    }
}

/// Kernel basis and image echelon of a matrix.
fn eliminate(m: &OperatorMatrix) -> (Vec<Column>, Echelon) {
    let mut e = Echelon::new(m.field);
    let mut kernel = Vec::new();
    for (k, c) in m.columns.iter().enumerate() {
        if let Some(rel) = e.insert(c.clone(), Column::from([(k, m.field.one())])) {
            kernel.push(rel);
        }
    }
    (kernel, e)
}

// ---------------------------------------------------------------------------
// Homology

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: usize,
    /// Dimension of the (co)chains in this degree.
    pub chains: usize,
    pub kernel: usize,
    /// Dimension of the image of the incoming differential.
    pub image: usize,
    pub dimension: usize,
    pub representatives: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub kind: String,
    pub instance: String,
    pub field: String,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyReport {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dimension).collect()
    }

    /// `degree,dimension` table.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("degree,dimension\n");
        for d in &self.degrees {
            let _ = writeln!(s, "{},{}", d.degree, d.dimension);
        }
        s
    }
}

/// A computed (co)homology with representatives as elements.
#[derive(Clone, Debug)]
pub struct Homology<E> {
    pub report: HomologyReport,
    pub representatives: Vec<Vec<E>>,
}

/// Direction of a differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `d: C_n → C_{n−1}`.
    Lowering,
    /// `δ: C^n → C^{n+1}`.
    Raising,
}

/// Computes (co)homology of `space` with differential `d` in degrees
/// `0..=max`. Asserts `d² = 0` on every pair of matrices used.
pub fn homology<S, F>(
    space: &S,
    kind: &str,
    op_name: &str,
    d: F,
    direction: Direction,
    max: usize,
    strategy: Strategy,
    cache: Option<&MatrixCache>,
) -> Result<Homology<S::Elem>>
where
    S: GradedSpace,
    F: Fn(&S::Elem) -> Result<S::Elem> + Sync + Send,
{
    if max + 1 > space.top() {
        return Err(Error::Capacity {
            what: "graded space",
            degree: max + 1,
            cap: space.top(),
        });
    }
    // out[n]: the differential leaving degree n, for n = 0..=max+1 as needed.
    let field = space.field();
    let leaving = |n: usize| -> Result<OperatorMatrix> {
        match direction {
            Direction::Lowering if n == 0 => Ok(OperatorMatrix::zero(op_name, field, (0, space.dim(0)), (0, 0))),
            Direction::Lowering => assemble_cached(space, op_name, n, n - 1, &d, strategy, cache),
            Direction::Raising => assemble_cached(space, op_name, n, n + 1, &d, strategy, cache),
        }
    };
    let top = match direction {
        Direction::Lowering => max + 1,
        Direction::Raising => max,
    };
    let mats: Vec<OperatorMatrix> = (0..=top).map(leaving).collect::<Result<_>>()?;
    for w in mats.windows(2) {
        let sq = match direction {
            Direction::Lowering => w[0].compose(&w[1])?,
            Direction::Raising => w[1].compose(&w[0])?,
        };
        if !sq.is_zero() {
            return Err(Error::Refused(format!("{op_name} does not square to zero")));
        }
    }
    let eliminated: Vec<(Vec<Column>, Echelon)> = exec::map(strategy, &mats, eliminate);
    let mut degrees = Vec::new();
    let mut reps = Vec::new();
    for n in 0..=max {
        let (kernel, _) = &eliminated[n];
        let incoming = match direction {
            Direction::Lowering => Some(&eliminated[n + 1].1),
            Direction::Raising => n.checked_sub(1).map(|m| &eliminated[m].1),
        };
        let mut span = incoming.cloned().unwrap_or_else(|| Echelon::new(field));
        let image = span.rank();
        let mut here = Vec::new();
        for z in kernel {
            // Express the kernel vector as a chain; tags index the source basis.
            if span.insert(z.clone(), Column::new()).is_none() {
                here.push(space.from_coords(n, &z.iter().map(|(k, c)| (*k, c.clone())).collect::<Vec<_>>()));
            }
        }
        degrees.push(DegreeHomology {
            degree: n,
            chains: space.dim(n),
            kernel: kernel.len(),
            image,
            dimension: here.len(),
            representatives: here.iter().map(|x| x.to_string()).collect(),
        });
        reps.push(here);
    }
    Ok(Homology {
        report: HomologyReport {
            kind: kind.to_string(),
            instance: space.label(),
            field: field.to_string(),
            degrees,
        },
        representatives: reps,
    })
}

/// A basis of the kernel of `d` in degree `n`.
pub fn kernel_basis<S, F>(space: &S, d: F, n: usize, strategy: Strategy) -> Result<Vec<S::Elem>>
where
    S: GradedSpace,
    F: Fn(&S::Elem) -> Result<S::Elem> + Sync + Send,
{
    if n == 0 {
        return Ok(space.basis(0));
    }
    let m = assemble(space, "d", n, n - 1, d, strategy)?;
    let (kernel, _) = eliminate(&m);
    Ok(kernel
        .into_iter()
        .map(|z| space.from_coords(n, &z.into_iter().collect::<Vec<_>>()))
        .collect())
}

/// Hochschild homology of a comp module: homology of `b` on normalized chains.
pub fn hochschild_homology<M: CompModule>(
    module: &M,
    max: usize,
    strategy: Strategy,
    cache: Option<&MatrixCache>,
) -> Result<Homology<M::Elem>> {
    let ops = Operators::new(module, Complex::Normalized);
    let space = Chains { module, complex: Complex::Normalized };
    homology(&space, "HH", "b", |x| ops.b(x), Direction::Lowering, max, strategy, cache)
}

/// Cohomology of `δ = {μ, ·}` on normalized cochains.
pub fn hochschild_cohomology<O: Operad>(
    operad: &O,
    max: usize,
    strategy: Strategy,
    cache: Option<&MatrixCache>,
) -> Result<Homology<O::Elem>> {
    let space = Cochains { operad, complex: Complex::Normalized };
    homology(&space, "HH^", "delta", |x| operad.delta(x), Direction::Raising, max, strategy, cache)
}

pub fn is_cocycle<O: Operad>(operad: &O, phi: &O::Elem) -> Result<bool> {
    Ok(operad.delta(phi)?.is_zero())
}

/// Outcome of a boundary membership test.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryResult<E> {
    pub is_boundary: bool,
    /// `y` with `d(y) = z`, when `z` is a boundary.
    pub certificate: Option<E>,
}

/// Decides whether `z` lies in the image of `d` from degree `n + 1`, where
/// `n` is the degree of `z`, and returns a verified preimage.
pub fn is_boundary<S, F>(space: &S, d: F, z: &S::Elem, strategy: Strategy) -> Result<BoundaryResult<S::Elem>>
where
    S: GradedSpace,
    F: Fn(&S::Elem) -> Result<S::Elem> + Sync + Send,
{
    let n = z.grade();
    if z.is_zero() {
        return Ok(BoundaryResult {
            is_boundary: true,
            certificate: Some(space.from_coords(n + 1, &[])),
        });
    }
    let m = assemble(space, "d", n + 1, n, &d, strategy)?;
    let (_, e) = eliminate(&m);
    let (residual, combination) = e.reduce(column(space.coords(z)));
    if !residual.is_empty() {
        return Ok(BoundaryResult {
            is_boundary: false,
            certificate: None,
        });
    }
    let y = space.from_coords(n + 1, &combination.into_iter().collect::<Vec<_>>());
    if &d(&y)? != z {
        return Err(Error::Refused(format!("boundary certificate failed to verify for {z}")));
    }
    Ok(BoundaryResult {
        is_boundary: true,
        certificate: Some(y),
    })
}

/// [`is_boundary`] for `b` on normalized chains.
pub fn is_hochschild_boundary<M: CompModule>(module: &M, z: &M::Elem, strategy: Strategy) -> Result<BoundaryResult<M::Elem>> {
    let ops = Operators::new(module, Complex::Normalized);
    let space = Chains { module, complex: Complex::Normalized };
    let z = module.project_normalized(z);
    is_boundary(&space, |x| ops.b(x), &z, strategy)
}

// ---------------------------------------------------------------------------
// Cyclic homology

fn refuse_characteristic(field: FieldSpec, top: usize) -> Result<()> {
    let p = field.characteristic();
    if p != 0 && (1..=top as u64 + 1).any(|k| k % p == 0) {
        return Err(Error::Refused(format!(
            "Connes' complex needs n + 1 invertible for n ≤ {top}; characteristic {p} divides one of them"
        )));
    }
    Ok(())
}

/// The quotient `C_n / im(1 − λ)` with `λ = (−1)ⁿ t`, presented by the
/// non-pivot rows of an echelon form of the image.
struct LambdaQuotient {
    image: Echelon,
    /// Row of `C_n` ↦ index in the quotient basis.
    index: BTreeMap<usize, usize>,
    rows: Vec<usize>,
}

impl LambdaQuotient {
    fn project(&self, v: Column) -> Column {
        let (residual, _) = self.image.reduce(v);
        residual.into_iter().map(|(k, c)| (self.index[&k], c)).collect()
    }
}

fn lambda_quotient<M: CompModule>(module: &M, n: usize, strategy: Strategy) -> Result<LambdaQuotient> {
    let space = Chains { module, complex: Complex::Full };
    let field = module.field();
    let sign = field.sign(n as i64);
    let m = assemble(
        &space,
        "1-lambda",
        n,
        n,
        |x| {
            let mut y = x.clone();
            y.add_scaled(&-&sign, &module.t(x));
            Ok(y)
        },
        strategy,
    )?;
    let (_, image) = eliminate(&m);
    let rows: Vec<usize> = (0..space.dim(n)).filter(|r| !image.is_pivot(*r)).collect();
    let index = rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    Ok(LambdaQuotient { image, index, rows })
}

/// Connes' cyclic homology: homology of `b` on `C_n / im(1 − λ)`.
/// Refused on para-cyclic modules and when some `n + 1 ≤ max + 2` is zero in
/// the field.
pub fn connes_cyclic_homology<M: CompModule>(module: &M, max: usize, strategy: Strategy) -> Result<Homology<M::Elem>> {
    let field = module.field();
    refuse_characteristic(field, max + 1)?;
    if max + 1 > module.degree_cap() {
        return Err(Error::Capacity {
            what: "chains",
            degree: max + 1,
            cap: module.degree_cap(),
        });
    }
    if !is_cyclic(module, max + 1) {
        return Err(Error::Refused(format!("{} is para-cyclic: t^(n+1) ≠ id", module.name())));
    }
    let ops = Operators::new(module, Complex::Full);
    let space = Chains { module, complex: Complex::Full };
    let quotients: Vec<LambdaQuotient> = (0..=max + 1).map(|n| lambda_quotient(module, n, strategy)).collect::<Result<_>>()?;
    // Induced b on quotient bases, leaving degree n.
    let mut mats = Vec::new();
    for n in 0..=max + 1 {
        let q = &quotients[n];
        let columns: Vec<Column> = if n == 0 {
            vec![Column::new(); q.rows.len()]
        } else {
            let basis: Vec<M::Elem> = q.rows.iter().map(|r| space.from_coords(n, &[(*r, field.one())])).collect();
            exec::map(strategy, &basis, |x| -> Result<Column> { Ok(quotients[n - 1].project(column(space.coords(&ops.b(x)?)))) })
                .into_iter()
                .collect::<Result<_>>()?
        };
        mats.push(OperatorMatrix {
            name: "b".into(),
            field,
            source_degree: n,
            target_degree: n.saturating_sub(1),
            rows: if n == 0 { 0 } else { quotients[n - 1].rows.len() },
            columns,
        });
    }
    let eliminated: Vec<(Vec<Column>, Echelon)> = exec::map(strategy, &mats, eliminate);
    let mut degrees = Vec::new();
    let mut reps = Vec::new();
    for n in 0..=max {
        let (kernel, _) = &eliminated[n];
        let mut span = eliminated[n + 1].1.clone();
        let image = span.rank();
        let mut here = Vec::new();
        for z in kernel {
            if span.insert(z.clone(), Column::new()).is_none() {
                let lifted: Vec<(usize, Scalar)> = z.iter().map(|(k, c)| (quotients[n].rows[*k], c.clone())).collect();
                here.push(space.from_coords(n, &lifted));
            }
        }
        degrees.push(DegreeHomology {
            degree: n,
            chains: quotients[n].rows.len(),
            kernel: kernel.len(),
            image,
            dimension: here.len(),
            representatives: here.iter().map(|x| x.to_string()).collect(),
        });
        reps.push(here);
    }
    Ok(Homology {
        report: HomologyReport {
            kind: "HC".into(),
            instance: format!("{} (connes)", module.name()).to_lowercase(),
            field: field.to_string(),
            degrees,
        },
        representatives: reps,
    })
}

/// Checks `b(im(1 − λ)) ⊆ im(1 − λ)` in degrees `1..=max`.
pub fn connes_well_defined<M: CompModule>(module: &M, max: usize, strategy: Strategy) -> Result<bool> {
    let ops = Operators::new(module, Complex::Full);
    let space = Chains { module, complex: Complex::Full };
    for n in 1..=max {
        let lower = lambda_quotient(module, n - 1, strategy)?;
        let sign = module.field().sign(n as i64);
        for x in space.basis(n) {
            let mut y = x.clone();
            y.add_scaled(&-&sign, &module.t(&x));
            if !lower.project(column(space.coords(&ops.b(&y)?))).is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, ground_field, matrix_algebra};
    use crate::hochschild::{build_hochschild, Caps, HochschildModule};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn d_module() -> HochschildModule {
        build_hochschild(&dual_numbers(Q), None, Caps::default()).unwrap()
    }

    #[test]
    fn hochschild_dimensions() {
        let m = d_module();
        for s in [Strategy::Sequential, Strategy::Parallel] {
            assert_eq!(hochschild_homology(&m, 4, s, None).unwrap().report.dims(), vec![2, 1, 1, 1, 1]);
        }
        let m2 = build_hochschild(&matrix_algebra(Q, 2), None, Caps::default()).unwrap();
        assert_eq!(hochschild_homology(&m2, 3, Strategy::Parallel, None).unwrap().report.dims(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn first_cohomology_of_dual_numbers_is_spanned_by_euler() {
        let m = d_module();
        let op = m.operad();
        let h = hochschild_cohomology(op, 2, Strategy::Parallel, None).unwrap();
        assert_eq!(h.report.dims()[..2], [2, 1]);
        let rep = &h.representatives[1][0];
        let e = op.cochain(1, |a| if a[0] == 1 { vec![(1, Q.one())] } else { vec![] });
        let c = rep.evaluate(&[1]).unwrap()[0].1.clone();
        assert_eq!(rep, &e.scaled(&c));
        assert!(is_cocycle(op, &e).unwrap());
    }

    #[test]
    fn boundary_membership() {
        let m = d_module();
        let xx = m.chain(&[1, 1]);
        let r = is_hochschild_boundary(&m, &xx, Strategy::Sequential).unwrap();
        assert!(r.is_boundary);
        let half = Q.parse_scalar("1/2").unwrap();
        assert_eq!(r.certificate.unwrap(), m.chain(&[0, 1, 1]).scaled(&half));
        assert!(!is_hochschild_boundary(&m, &m.chain(&[0, 1]), Strategy::Sequential).unwrap().is_boundary);
        let zero = is_hochschild_boundary(&m, &m.zero(2), Strategy::Sequential).unwrap();
        assert!(zero.is_boundary);
        assert!(zero.certificate.unwrap().is_zero());
    }

    #[test]
    fn cyclic_homology() {
        let k = build_hochschild(&ground_field(Q), None, Caps::default()).unwrap();
        assert_eq!(connes_cyclic_homology(&k, 4, Strategy::Parallel).unwrap().report.dims(), vec![1, 0, 1, 0, 1]);
        let m = d_module();
        let hc = connes_cyclic_homology(&m, 3, Strategy::Parallel).unwrap();
        assert_eq!(hc.report.dims()[0], 2);
        assert!(connes_well_defined(&m, 4, Strategy::Parallel).unwrap());
        let f5 = build_hochschild(&ground_field(FieldSpec::Prime(5)), None, Caps::default()).unwrap();
        assert!(matches!(connes_cyclic_homology(&f5, 4, Strategy::Parallel), Err(Error::Refused(_))));
        assert!(connes_cyclic_homology(&f5, 2, Strategy::Parallel).is_ok());
    }

    #[test]
    fn matrices_and_cache() {
        let m = d_module();
        let ops = Operators::new(&m, Complex::Full);
        let space = Chains { module: &m, complex: Complex::Full };
        let b1 = assemble(&space, "b", 1, 0, |x| ops.b(x), Strategy::Sequential).unwrap();
        assert_eq!((b1.rows, b1.cols()), (2, 4));
        // column of (1,x)
        assert!(b1.columns[1].is_empty());
        let b2 = assemble(&space, "b", 2, 1, |x| ops.b(x), Strategy::Parallel).unwrap();
        assert!(b1.compose(&b2).unwrap().is_zero());
        let t = assemble(&space, "t", 2, 2, |x| Ok(m.t(x)), Strategy::Sequential).unwrap();
        let t3 = t.compose(&t).unwrap().compose(&t).unwrap();
        assert!((0..8).all(|i| t3.columns[i] == Column::from([(i, Q.one())])));
        assert!(!t.compose(&t).unwrap().columns.iter().enumerate().all(|(i, c)| c == &Column::from([(i, Q.one())])));

        let dir = tempfile::tempdir().unwrap();
        let cache = MatrixCache::new(dir.path());
        let first = assemble_cached(&space, "b", 2, 1, |x| ops.b(x), Strategy::Parallel, Some(&cache)).unwrap();
        let hash = MatrixCache::hash(&space.fingerprint().unwrap());
        let path = dir.path().join(&hash).join("b-2.mat");
        assert!(path.exists());
        let again = assemble_cached(&space, "b", 2, 1, |_| unreachable!(), Strategy::Parallel, Some(&cache)).unwrap();
        assert_eq!(first, again);
        let (_, parsed) = OperatorMatrix::from_text(&std::fs::read_to_string(path).unwrap()).unwrap();
        assert_eq!(parsed, b2);
        let h = hochschild_homology(&m, 3, Strategy::Parallel, Some(&cache)).unwrap();
        assert_eq!(h.report.dims(), vec![2, 1, 1, 1]);
    }
}
