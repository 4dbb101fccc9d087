//! JSON scheme files and construction specs.

use serde::{Deserialize, Serialize};

use crate::code::{LinearCode, NestedPair, ShareSet};
use crate::constructions::{self, HermitianCurve, OnePointCurve, RationalLine};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FiniteField};
use crate::linalg::{Matrix, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrsVariant {
    /// `C₂ = GRS_{n,k−L}(α, α^L)`, secret on `1, …, x^{L−1}`.
    Ogawa,
    /// `C₂ = GRS_{n,k−L}(α, 1)`, secret on `x^{k−L}, …, x^{k−1}`.
    Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSelection {
    Keyword(String),
    Indices(Vec<usize>),
}

impl Default for PointSelection {
    fn default() -> Self {
        PointSelection::Keyword("all".into())
    }
}

impl PointSelection {
    fn resolve(&self, available: usize) -> Result<Vec<usize>> {
        match self {
            PointSelection::Keyword(k) if k == "all" => Ok((0..available).collect()),
            PointSelection::Keyword(k) => Err(Error::InvalidSpec(format!("unknown point selection {k:?}"))),
            PointSelection::Indices(ix) => Ok(ix.clone()),
        }
    }
}

/// Construction input for `build`. Point indices are 0-based positions in
/// the curve's canonical point order; on the rational line the index of a
/// point is its field element's integer code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ConstructionSpec {
    Grs {
        q: u64,
        n: usize,
        k: usize,
        #[serde(rename = "L")]
        l: usize,
        alpha: Vec<u32>,
        #[serde(default = "default_variant")]
        variant: GrsVariant,
    },
    Hermitian {
        r: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        m1: usize,
        m2: usize,
        #[serde(default)]
        points: PointSelection,
    },
    Rational {
        q: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        m1: usize,
        m2: usize,
        #[serde(default)]
        points: PointSelection,
    },
}

fn default_variant() -> GrsVariant {
    GrsVariant::Ogawa
}

/// A one-point AG instance recovered from a spec.
pub struct AgInstance {
    pub curve: Box<dyn OnePointCurve>,
    pub m1: usize,
    pub m2: usize,
    pub points: Vec<usize>,
}

impl AgInstance {
    pub fn genus(&self) -> usize {
        self.curve.genus()
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn pair(&self) -> Result<NestedPair> {
        constructions::ag_pair(self.curve.as_ref(), self.m1, self.m2, &self.points)
    }

    pub fn theorem2_threshold(&self) -> i64 {
        constructions::theorem2_threshold(self.genus(), self.m1, self.m2, self.n())
    }

    pub fn theorem3_qudits(&self, j: &ShareSet) -> Result<usize> {
        constructions::theorem3_qudits(self.curve.as_ref(), self.m1, self.m2, &self.points, j)
    }
}

impl ConstructionSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    /// The AG view of this spec, if it is a curve construction.
    pub fn ag_instance(&self) -> Result<Option<AgInstance>> {
        let (curve, m1, m2, points, n): (Box<dyn OnePointCurve>, _, _, _, _) = match self {
            ConstructionSpec::Grs { .. } => return Ok(None),
            ConstructionSpec::Hermitian { r, q, n, m1, m2, points } => {
                if let Some(q) = q {
                    if *q != (*r as u64).pow(2) {
                        return Err(Error::InvalidSpec(format!("q = {q} but a Hermitian curve with r = {r} lives over F_{}", r * r)));
                    }
                }
                (Box::new(HermitianCurve::new(*r)?), *m1, *m2, points, *n)
            }
            ConstructionSpec::Rational { q, n, m1, m2, points } => {
                let field = FiniteField::with_order(*q)?;
                (Box::new(RationalLine::new(&field)), *m1, *m2, points, *n)
            }
        };
        let points = points.resolve(curve.points().len())?;
        if let Some(n) = n {
            if n != points.len() {
                return Err(Error::InvalidSpec(format!("n = {n} but {} points selected", points.len())));
            }
        }
        Ok(Some(AgInstance { curve, m1, m2, points }))
    }

    pub fn build(&self) -> Result<NestedPair> {
        match self {
            ConstructionSpec::Grs { q, n, k, l, alpha, variant } => match variant {
                GrsVariant::Ogawa => constructions::ogawa_pair(*q, *n, *k, *l, alpha),
                GrsVariant::Monomial => constructions::grs_monomial_pair(*q, *n, *k, *l, alpha),
            },
            _ => self.ag_instance()?.expect("curve spec").pair(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: ConstructionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem2_threshold: Option<i64>,
}

/// On-disk scheme: field descriptor, canonical RREF rows of C₁ and C₂ and
/// the secret labelling rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeFile {
    pub field: FieldDescriptor,
    pub n: usize,
    #[serde(rename = "C1")]
    pub c1: Vec<Vec<u32>>,
    #[serde(rename = "C2")]
    pub c2: Vec<Vec<u32>>,
    pub f_reps: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

#[derive(Clone, Debug)]
pub struct Scheme {
    pub pair: NestedPair,
    pub provenance: Option<Provenance>,
}

impl Scheme {
    pub fn build(spec: &ConstructionSpec) -> Result<Self> {
        let pair = spec.build()?;
        let ag = spec.ag_instance()?;
        Ok(Scheme {
            pair,
            provenance: Some(Provenance {
                construction: spec.clone(),
                genus: ag.as_ref().map(|a| a.genus()),
                theorem2_threshold: ag.as_ref().map(|a| a.theorem2_threshold()),
            }),
        })
    }

    pub fn ag_instance(&self) -> Result<Option<AgInstance>> {
        match &self.provenance {
            Some(p) => p.construction.ag_instance(),
            None => Ok(None),
        }
    }

    pub fn to_file(&self) -> SchemeFile {
        let p = &self.pair;
        SchemeFile {
            field: p.field().descriptor(),
            n: p.n(),
            c1: p.c1().generator().to_u32_rows(),
            c2: p.c2().generator().to_u32_rows(),
            f_reps: p.representative_matrix().to_u32_rows(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn from_file(file: &SchemeFile) -> Result<Self> {
        let field = FiniteField::from_descriptor(&file.field)?;
        let rows = |r: &[Vec<u32>]| -> Result<Vec<Vector>> {
            Ok(Matrix::from_u32_rows(&field, file.n, r)?.row_vectors())
        };
        let c1 = LinearCode::new(&field, file.n, &rows(&file.c1)?)?;
        let c2 = LinearCode::new(&field, file.n, &rows(&file.c2)?)?;
        let pair = NestedPair::with_representatives(c1, c2, rows(&file.f_reps)?)?;
        Ok(Scheme {
            pair,
            provenance: file.provenance.clone(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SchemeFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }
}
