//! Reading instances and operands from disk.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use opcalc_core::algebra::{dual_numbers, Algebra, CoefficientPair};
use opcalc_core::element::{Chain, ChainFile, Cochain, CochainFile, Codomain};
use opcalc_core::hochschild::{build_hochschild, Caps, HochschildModule};
use opcalc_core::scalar::FieldSpec;

use crate::Failure;

/// Paths and caps describing one instance. Relative paths inside a
/// manifest are resolved against the manifest's directory.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    algebra: PathBuf,
    #[serde(default)]
    coefficients: Option<PathBuf>,
    #[serde(default)]
    pi: Option<PathBuf>,
    #[serde(default)]
    caps: Option<ManifestCaps>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestCaps {
    arity: usize,
    degree: usize,
}

pub struct Instance {
    pub algebra: Algebra,
    pub pair: Option<CoefficientPair>,
    pub pi: Option<PathBuf>,
    pub caps: Option<Caps>,
}

pub struct Sources<'a> {
    pub algebra: Option<&'a Path>,
    pub coefficients: Option<&'a Path>,
    pub manifest: Option<&'a Path>,
    pub pi: Option<&'a Path>,
    pub field: Option<&'a str>,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn at(path: &Path) -> impl Fn(opcalc_core::Error) -> Failure + '_ {
    move |e| {
        let f = Failure::from(e);
        Failure { message: format!("{}: {}", path.display(), f.message), ..f }
    }
}

/// Resolves command-line flags and an optional manifest into an instance.
/// With neither `--algebra` nor `--manifest` the dual numbers over ℚ are used.
pub fn load(src: &Sources) -> Result<Instance, Failure> {
    let field = src.field.map(|f| f.parse::<FieldSpec>()).transpose()?;
    let mut algebra_path = src.algebra.map(Path::to_path_buf);
    let mut pair_path = src.coefficients.map(Path::to_path_buf);
    let mut pi = src.pi.map(Path::to_path_buf);
    let mut caps = None;
    if let Some(mpath) = src.manifest {
        let m: Manifest = serde_json::from_str(&read(mpath)?)
            .map_err(|e| Failure::input(format!("{}: {e}", mpath.display())))?;
        let dir = mpath.parent().unwrap_or(Path::new("."));
        algebra_path = algebra_path.or(Some(dir.join(m.algebra)));
        pair_path = pair_path.or(m.coefficients.map(|p| dir.join(p)));
        pi = pi.or(m.pi.map(|p| dir.join(p)));
        caps = m.caps.map(|c| Caps { arity: c.arity, degree: c.degree });
        if matches!(caps, Some(c) if c.arity == 0 || c.degree == 0) {
            return Err(Failure::input(format!("{}: caps must be at least 1", mpath.display())));
        }
    }
    let algebra = match &algebra_path {
        Some(p) => Algebra::from_json(&read(p)?, field).map_err(at(p))?,
        None => dual_numbers(field.unwrap_or(FieldSpec::Rationals)),
    };
    let pair = match &pair_path {
        Some(p) => Some(CoefficientPair::from_json(&algebra, &read(p)?).map_err(at(p))?),
        None => None,
    };
    Ok(Instance { algebra, pair, pi, caps })
}

impl Instance {
    /// Builds the Hochschild instance with caps at least `need`.
    pub fn build(&self, need: Caps) -> Result<HochschildModule, Failure> {
        let caps = match self.caps {
            Some(c) => Caps { arity: c.arity.max(need.arity), degree: c.degree.max(need.degree) },
            None => need,
        };
        Ok(build_hochschild(&self.algebra, self.pair.as_ref(), caps)?)
    }

    pub fn codomain(&self) -> Codomain {
        if self.pair.as_ref().map_or(true, |p| p.is_identity()) {
            Codomain::A
        } else {
            Codomain::V
        }
    }

    pub fn cochain(&self, path: &Path) -> Result<Cochain, Failure> {
        let file: CochainFile = serde_json::from_str(&read(path)?)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        let identity = self.codomain() == Codomain::A;
        if file.codomain == Codomain::A && !identity {
            return Err(Failure::input(format!(
                "{}: cochains take values in V when a coefficient pair is given",
                path.display()
            )));
        }
        let out_dim = match &self.pair {
            Some(p) if file.codomain == Codomain::V => p.v().dim(),
            _ => self.algebra.dim(),
        };
        Cochain::from_file(&file, self.algebra.field(), self.algebra.dim(), out_dim).map_err(at(path))
    }

    pub fn chain(&self, path: &Path) -> Result<Chain, Failure> {
        let file: ChainFile = serde_json::from_str(&read(path)?)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        Chain::from_file(&file, self.algebra.field(), self.algebra.dim()).map_err(at(path))
    }

    pub fn pi(&self) -> Result<Cochain, Failure> {
        let path = self.pi.as_ref().ok_or_else(|| Failure::input("--pi is required".into()))?;
        let pi = self.cochain(path)?;
        if pi.arity() != 2 {
            return Err(Failure::input(format!("{}: π must have arity 2, got {}", path.display(), pi.arity())));
        }
        Ok(pi)
    }
}
