//! Instance file format: a JSON document with named sections for algebras,
//! modules, correspondences, and representations, cross-referenced by string
//! identifiers. Complex scalars are `[re, im]` pairs of decimal floats;
//! matrices are row-major nested arrays with explicit `rows`/`cols`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::CStarAlgebra;
use crate::correspondence::Correspondence;
use crate::linalg::{ComplexMatrix, HilbertSpace, OperatorSubspace, Tolerances, C64};
use crate::module::ConcreteModule;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixSpec {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixSpec {
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.entries.len() != self.rows {
            return Err(Error::Instance(format!(
                "matrix declares {} rows but has {} entry rows",
                self.rows,
                self.entries.len()
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                return Err(Error::Instance(format!(
                    "matrix row {i} has {} entries, expected {}",
                    row.len(),
                    self.cols
                )));
            }
            for &[re, im] in row {
                if !re.is_finite() || !im.is_finite() {
                    return Err(Error::Instance(format!(
                        "matrix row {i} contains a non-finite entry"
                    )));
                }
                entries.push(C64::new(re, im));
            }
        }
        ComplexMatrix::new(self.rows, self.cols, entries)
    }

    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let entries = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| {
                        let z = m.at(i, j);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub blocks: Vec<usize>,
    /// One concrete image per block matrix unit; defaults to the identity
    /// block representation when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<MatrixSpec>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleSpec {
    #[serde(rename = "H0")]
    pub h0: usize,
    #[serde(rename = "H1")]
    pub h1: usize,
    /// Spanning set; kept verbatim as the basis when already orthonormal,
    /// orthonormalized otherwise.
    pub span: Vec<MatrixSpec>,
    pub algebra: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorrespondenceSpec {
    pub module: String,
    pub left_algebra: String,
    /// Coordinate action on the module basis, one matrix per generator of
    /// the left algebra.
    pub phi: Vec<MatrixSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepresentationSpec {
    pub algebra: String,
    /// One representing matrix per generator.
    pub rho: Vec<MatrixSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub correspondences: BTreeMap<String, CorrespondenceSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub representations: BTreeMap<String, RepresentationSpec>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Instance(format!("parse error: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Instance(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files serialize")
    }

    /// File tolerances override the provided base.
    pub fn effective_tolerances(&self, base: Tolerances) -> Tolerances {
        self.tolerances.unwrap_or(base)
    }

    /// Builds and validates every section, resolving cross-references.
    pub fn resolve(&self, base: Tolerances) -> Result<ResolvedInstance> {
        let tol = self.effective_tolerances(base);
        let mut algebras = BTreeMap::new();
        for (id, spec) in &self.algebras {
            let algebra = build_algebra(id, spec, &tol)?;
            algebras.insert(id.clone(), algebra);
        }
        let mut modules = BTreeMap::new();
        for (id, spec) in &self.modules {
            let algebra = algebras.get(&spec.algebra).ok_or_else(|| {
                Error::Instance(format!(
                    "module '{id}' references unknown algebra '{}'",
                    spec.algebra
                ))
            })?;
            let module = build_module(id, spec, algebra, &tol)?;
            modules.insert(id.clone(), module);
        }
        let mut correspondences = BTreeMap::new();
        for (id, spec) in &self.correspondences {
            let module = modules.get(&spec.module).ok_or_else(|| {
                Error::Instance(format!(
                    "correspondence '{id}' references unknown module '{}'",
                    spec.module
                ))
            })?;
            let left = algebras.get(&spec.left_algebra).ok_or_else(|| {
                Error::Instance(format!(
                    "correspondence '{id}' references unknown algebra '{}'",
                    spec.left_algebra
                ))
            })?;
            let actions = spec
                .phi
                .iter()
                .map(|m| m.to_matrix())
                .collect::<Result<Vec<_>>>()?;
            let c = Correspondence::new(module.clone(), left.clone(), actions)?;
            correspondences.insert(id.clone(), c);
        }
        let mut representations = BTreeMap::new();
        for (id, spec) in &self.representations {
            let algebra = algebras.get(&spec.algebra).ok_or_else(|| {
                Error::Instance(format!(
                    "representation '{id}' references unknown algebra '{}'",
                    spec.algebra
                ))
            })?;
            let mats = spec
                .rho
                .iter()
                .map(|m| m.to_matrix())
                .collect::<Result<Vec<_>>>()?;
            algebra.is_representation(&mats, &tol)?;
            representations.insert(
                id.clone(),
                ResolvedRepresentation {
                    algebra_id: spec.algebra.clone(),
                    matrices: mats,
                },
            );
        }
        Ok(ResolvedInstance {
            tolerances: tol,
            algebras,
            modules,
            correspondences,
            representations,
        })
    }
}

pub fn build_algebra(id: &str, spec: &AlgebraSpec, tol: &Tolerances) -> Result<CStarAlgebra> {
    if spec.blocks.is_empty() || spec.blocks.contains(&0) {
        return Err(Error::Instance(format!(
            "algebra '{id}' must have nonempty blocks of positive size"
        )));
    }
    match &spec.embedding {
        None => Ok(CStarAlgebra::identity_rep(spec.blocks.clone())),
        Some(images) => {
            let mats = images
                .iter()
                .map(|m| m.to_matrix())
                .collect::<Result<Vec<_>>>()?;
            let dim = mats
                .first()
                .map(|m| m.rows())
                .ok_or_else(|| Error::Instance(format!("algebra '{id}' has an empty embedding")))?;
            CStarAlgebra::with_embedding(spec.blocks.clone(), HilbertSpace::new(dim), mats, tol)
        }
    }
}

pub fn build_module(
    id: &str,
    spec: &ModuleSpec,
    algebra: &CStarAlgebra,
    tol: &Tolerances,
) -> Result<ConcreteModule> {
    if spec.h0 == 0 || spec.h1 == 0 {
        return Err(Error::Instance(format!(
            "module '{id}' requires positive Hilbert-space dimensions"
        )));
    }
    let space = build_space(spec, tol)?;
    ConcreteModule::validate(space, algebra.clone(), *tol)
}

/// Keeps an already orthonormal spanning set verbatim (so that coordinate
/// matrices in the file refer to it), orthonormalizing otherwise.
pub fn build_space(spec: &ModuleSpec, tol: &Tolerances) -> Result<OperatorSubspace> {
    let domain = HilbertSpace::new(spec.h0);
    let codomain = HilbertSpace::new(spec.h1);
    let mats = spec
        .span
        .iter()
        .map(|m| m.to_matrix())
        .collect::<Result<Vec<_>>>()?;
    match OperatorSubspace::from_orthonormal(domain, codomain, mats.clone(), tol) {
        Ok(space) => Ok(space),
        Err(Error::NotOrthonormal { .. }) => OperatorSubspace::span(domain, codomain, &mats, tol),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug)]
pub struct ResolvedRepresentation {
    pub algebra_id: String,
    pub matrices: Vec<ComplexMatrix>,
}

#[derive(Clone, Debug)]
pub struct ResolvedInstance {
    pub tolerances: Tolerances,
    pub algebras: BTreeMap<String, CStarAlgebra>,
    pub modules: BTreeMap<String, ConcreteModule>,
    pub correspondences: BTreeMap<String, Correspondence>,
    pub representations: BTreeMap<String, ResolvedRepresentation>,
}
