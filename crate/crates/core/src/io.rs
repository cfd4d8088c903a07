//! JSON file formats for curves, families and kernel specs. Every file
//! carries `"schema": 1`; rationals are `"num/den"` strings.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{CurveError, HoloCurve};
use crate::family::{CurveFamily, FamilyError};
use crate::kernel::{KernelError, KernelSpec};
use crate::poly::ExactPoly;
use crate::scalar::GaussianRational;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IoError {
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("unsupported schema version {found} (expected {SCHEMA_VERSION})")]
    Schema { found: u32 },
    #[error("invalid curve: {0}")]
    Curve(#[from] CurveError),
    #[error("invalid kernel spec: {0}")]
    Kernel(#[from] KernelError),
    #[error("invalid family: {0}")]
    Family(#[from] FamilyError),
}

fn check_schema(found: u32) -> Result<(), IoError> {
    if found == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(IoError::Schema { found })
    }
}

fn parse<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T, IoError> {
    serde_json::from_str(s).map_err(|e| IoError::Parse(e.to_string()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub schema: u32,
    pub p0: ExactPoly,
    pub p1: ExactPoly,
    pub p2: ExactPoly,
}

impl CurveFile {
    pub fn from_curve(f: &HoloCurve) -> Self {
        let [p0, p1, p2] = f.components().clone();
        Self {
            schema: SCHEMA_VERSION,
            p0,
            p1,
            p2,
        }
    }
}

pub fn parse_curve(s: &str) -> Result<HoloCurve, IoError> {
    let file: CurveFile = parse(s)?;
    check_schema(file.schema)?;
    Ok(HoloCurve::validate(file.p0, file.p1, file.p2)?)
}

pub fn curve_to_json(f: &HoloCurve) -> String {
    serde_json::to_string_pretty(&CurveFile::from_curve(f)).expect("serializable")
}

/// Coefficient tables: entry `j` of `p0` is the coefficient of `zʲ`, itself a
/// polynomial in `t`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyTables {
    pub p0: Vec<ExactPoly>,
    pub p1: Vec<ExactPoly>,
    pub p2: Vec<ExactPoly>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub schema: u32,
    pub name: String,
    pub tables: FamilyTables,
    #[serde(with = "interval")]
    pub domain: (BigRational, BigRational),
}

mod interval {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::scalar::{format_rational, parse_rational};

    pub fn serialize<S: Serializer>(
        d: &(BigRational, BigRational),
        s: S,
    ) -> Result<S::Ok, S::Error> {
        [format_rational(&d.0), format_rational(&d.1)].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<(BigRational, BigRational), D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let p = |s: &str| parse_rational(s).map_err(serde::de::Error::custom);
        Ok((p(&lo)?, p(&hi)?))
    }
}

pub fn parse_family(s: &str) -> Result<CurveFamily, IoError> {
    let file: FamilyFile = parse(s)?;
    check_schema(file.schema)?;
    let FamilyTables { p0, p1, p2 } = file.tables;
    Ok(CurveFamily::new(file.name, [p0, p1, p2], file.domain)?)
}

pub fn family_to_json(fam: &CurveFamily) -> String {
    let [p0, p1, p2] = fam.tables.clone();
    let file = FamilyFile {
        schema: SCHEMA_VERSION,
        name: fam.name.clone(),
        tables: FamilyTables { p0, p1, p2 },
        domain: fam.domain.clone(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootEntry {
    pub root: GaussianRational,
    pub multiplicity: usize,
}

/// Either `a` or `roots` must be present; both may be, if they agree.
/// With `normalize`, `a` and `p0` are first scaled to be monic.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelFile {
    pub schema: u32,
    pub p0: ExactPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<ExactPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<RootEntry>>,
    #[serde(default)]
    pub normalize: bool,
}

pub fn parse_kernel_spec(s: &str) -> Result<KernelSpec, IoError> {
    let file: KernelFile = parse(s)?;
    check_schema(file.schema)?;
    let roots = file.roots.map(|r| {
        r.into_iter()
            .map(|e| (e.root, e.multiplicity))
            .collect::<Vec<_>>()
    });
    let a = match (&file.a, &roots) {
        (Some(a), _) => a.clone(),
        (None, Some(r)) => ExactPoly::from_roots(r),
        (None, None) => return Err(IoError::Parse("kernel file needs `a` or `roots`".into())),
    };
    let spec = if file.normalize {
        KernelSpec::normalized(a, file.p0)?
    } else {
        KernelSpec::new(a, file.p0)?
    };
    Ok(match roots {
        Some(r) => spec.with_roots(r)?,
        None => spec,
    })
}
