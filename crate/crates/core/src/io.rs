//! JSON file formats for spaces, subsets, families, relations and reports.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::correspondence::GhResult;
use crate::covers::{LowerBound, SubsetFamily};
use crate::error::{Error, Result};
use crate::metric::{EuclideanPointSet, FiniteMetricSpace, Metric, SubsetRef, DEFAULT_TOL};

/// On-disk form of a space.
///
/// `{"kind":"matrix","n":N,"d":[[...]]}` or
/// `{"kind":"points2d","pts":[[x,y],...],"labels":[...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpaceFile {
    Matrix {
        n: usize,
        d: Vec<Vec<f64>>,
    },
    Points2d {
        pts: Vec<[f64; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
}

/// A loaded and validated space.
#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Matrix(FiniteMetricSpace),
    Points(EuclideanPointSet),
}

impl Space {
    pub fn from_file(file: SpaceFile, tol: f64) -> Result<Self> {
        match file {
            SpaceFile::Matrix { n, d } => {
                if d.len() != n {
                    return Err(Error::InvalidParameter(format!(
                        "matrix declares n = {n} but has {} rows",
                        d.len()
                    )));
                }
                Ok(Space::Matrix(FiniteMetricSpace::from_matrix(&d, tol)?))
            }
            SpaceFile::Points2d { pts, labels } => {
                Ok(Space::Points(EuclideanPointSet::new(pts, labels)?))
            }
        }
    }

    pub fn to_file(&self) -> SpaceFile {
        match self {
            Space::Matrix(m) => SpaceFile::Matrix {
                n: m.len(),
                d: m.to_matrix(),
            },
            Space::Points(p) => SpaceFile::Points2d {
                pts: p.points().to_vec(),
                labels: p.labels().map(<[String]>::to_vec),
            },
        }
    }

    pub fn as_points(&self) -> Option<&EuclideanPointSet> {
        match self {
            Space::Points(p) => Some(p),
            Space::Matrix(_) => None,
        }
    }
}

impl From<EuclideanPointSet> for Space {
    fn from(p: EuclideanPointSet) -> Self {
        Space::Points(p)
    }
}

impl From<FiniteMetricSpace> for Space {
    fn from(m: FiniteMetricSpace) -> Self {
        Space::Matrix(m)
    }
}

impl Metric for Space {
    fn len(&self) -> usize {
        match self {
            Space::Matrix(m) => m.len(),
            Space::Points(p) => p.len(),
        }
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> f64 {
        match self {
            Space::Matrix(m) => m.dist(i, j),
            Space::Points(p) => p.dist(i, j),
        }
    }

    fn coords(&self, i: usize) -> Option<[f64; 2]> {
        match self {
            Space::Matrix(_) => None,
            Space::Points(p) => Some(p.point(i)),
        }
    }
}

/// A families file holds one family object or an array of them.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum FamiliesFile {
    One(SubsetFamily),
    Many(Vec<SubsetFamily>),
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn load_space(path: &Path) -> Result<Space> {
    Space::from_file(read_json(path)?, DEFAULT_TOL)
}

pub fn save_space(path: &Path, space: &Space) -> Result<()> {
    write_json(path, &space.to_file())
}

/// Reads every family from each of `paths`, in order.
pub fn load_families(paths: &[impl AsRef<Path>]) -> Result<Vec<SubsetFamily>> {
    let mut out = Vec::new();
    for p in paths {
        match read_json::<FamiliesFile>(p.as_ref())? {
            FamiliesFile::One(f) => out.push(f),
            FamiliesFile::Many(v) => out.extend(v),
        }
    }
    Ok(out)
}

/// Reads a subset file (a sorted index array), or the whole space for
/// the literal `all`.
pub fn load_subset(spec: &str, n: usize) -> Result<SubsetRef> {
    if spec == "all" {
        return Ok(SubsetRef::all(n));
    }
    let s: SubsetRef = read_json(Path::new(spec))?;
    s.check_in(n)?;
    Ok(s)
}

/// `{"dgh":v,"dis":2v,"optimal_pairs":[...],"nodes":k,"optimal":bool}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GhReport {
    pub dgh: f64,
    pub dis: f64,
    pub optimal_pairs: Vec<[usize; 2]>,
    pub nodes: u64,
    pub optimal: bool,
}

impl From<&GhResult> for GhReport {
    fn from(r: &GhResult) -> Self {
        GhReport {
            dgh: r.value,
            dis: r.distortion,
            optimal_pairs: r.correspondence.pairs().iter().map(|&(i, j)| [i, j]).collect(),
            nodes: r.nodes,
            optimal: r.optimal,
        }
    }
}

/// `{k, r, C, strictness, model, bound, trace}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub k: usize,
    pub r: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub strictness: String,
    pub model: String,
    pub bound: f64,
    pub trace: Vec<String>,
}

impl From<&LowerBound> for CertificateReport {
    fn from(b: &LowerBound) -> Self {
        CertificateReport {
            k: b.k,
            r: b.r,
            c: b.c,
            strictness: b.strictness.as_str().to_string(),
            model: b.model.clone(),
            bound: b.value,
            trace: b.trace.clone(),
        }
    }
}
