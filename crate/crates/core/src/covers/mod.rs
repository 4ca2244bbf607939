//! r-disjoint uniformly bounded families, cover certificates, and the
//! asymptotic-dimension lower bound on the Gromov-Hausdorff distance.
//!
//! The lower bound works as follows. If a space `A` is covered by `k`
//! families, each `r`-disjoint with uniformly bounded members, and `X` is a
//! model space with `asdim X >= n >= k` admitting a dilation `lambda > 1`,
//! then every correspondence `R` between `A` and `X` has `dis R >= r`. With
//! `dis R = D < r` the images `R(U)` would form `k` families covering `X`
//! that are `(r - D)`-disjoint with diameters at most `C + D`; rescaling by
//! `lambda^m` makes them arbitrarily separated while staying uniformly
//! bounded, which would force `asdim X <= k - 1`. Hence `d_GH(A, X) >= r/2`.
//!
//! [`make_certificate`] machine-checks the hypotheses on a finite window,
//! [`gh_lower_bound`] applies the gate on `k` and the model space, and
//! [`pushforward_family`] / [`scale_family`] replay the two proof steps on
//! concrete data.

mod registry;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::metric::{diam_unchecked, set_distance_unchecked, EuclideanPointSet, Metric, SubsetRef, DEFAULT_TOL};

pub use registry::{euclidean, integer_lattice_2d, lookup_model, model_registry, ModelSpaceDescriptor};

/// How `r`-disjointness compares the gap against `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strictness {
    /// `d(U, U') > r`
    Strict,
    /// `d(U, U') >= r - 1e-9`
    NonStrict,
}

impl Strictness {
    pub fn admits(self, gap: f64, r: f64) -> bool {
        match self {
            Strictness::Strict => gap > r,
            Strictness::NonStrict => gap >= r - DEFAULT_TOL,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Strictness::Strict => "strict",
            Strictness::NonStrict => "non-strict",
        }
    }
}

/// A labeled list of pairwise distinct subsets of one ambient space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr")]
pub struct SubsetFamily {
    label: String,
    members: Vec<SubsetRef>,
}

#[derive(Deserialize)]
struct FamilyRepr {
    label: String,
    members: Vec<SubsetRef>,
}

impl TryFrom<FamilyRepr> for SubsetFamily {
    type Error = Error;
    fn try_from(r: FamilyRepr) -> Result<Self> {
        SubsetFamily::new(r.label, r.members)
    }
}

impl SubsetFamily {
    pub fn new(label: impl Into<String>, members: Vec<SubsetRef>) -> Result<Self> {
        let mut seen: HashMap<&SubsetRef, usize> = HashMap::with_capacity(members.len());
        for (k, m) in members.iter().enumerate() {
            if let Some(&first) = seen.get(m) {
                return Err(Error::DuplicateMember(first, k));
            }
            seen.insert(m, k);
        }
        Ok(SubsetFamily {
            label: label.into(),
            members,
        })
    }

    /// Images of a family keep their source indexing, so two members may
    /// coincide.
    fn images(label: String, members: Vec<SubsetRef>) -> Self {
        SubsetFamily { label, members }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn members(&self) -> &[SubsetRef] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn check_in(&self, n: usize) -> Result<()> {
        self.members.iter().try_for_each(|m| m.check_in(n))
    }
}

/// Result of [`check_r_disjoint`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DisjointReport {
    pub passed: bool,
    /// Smallest set distance between two distinct members; `None` when the
    /// family has fewer than two members.
    pub min_gap: Option<f64>,
    /// Member positions realizing `min_gap` (lexicographically first on ties).
    pub witness: Option<(usize, usize)>,
}

fn bbox<M: Metric + ?Sized>(space: &M, s: &SubsetRef) -> Option<[f64; 4]> {
    let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
    for i in s.iter() {
        let p = space.coords(i)?;
        b[0] = b[0].min(p[0]);
        b[1] = b[1].min(p[1]);
        b[2] = b[2].max(p[0]);
        b[3] = b[3].max(p[1]);
    }
    Some(b)
}

fn box_gap(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    let dx = (b[0] - a[2]).max(a[0] - b[2]).max(0.0);
    let dy = (b[1] - a[3]).max(a[1] - b[3]).max(0.0);
    (dx * dx + dy * dy).sqrt()
}

/// Smallest pairwise set distance among `members` with its witnessing pair.
///
/// On planar spaces member pairs are visited in order of bounding-box gap,
/// which lower-bounds the true gap, and the scan stops once that bound
/// exceeds the best gap found.
pub(crate) fn min_gap<M: Metric + ?Sized>(space: &M, members: &[SubsetRef]) -> Option<(f64, usize, usize)> {
    if members.len() < 2 {
        return None;
    }
    let mut best: Option<(f64, usize, usize)> = None;
    fn offer(best: &mut Option<(f64, usize, usize)>, gap: f64, a: usize, b: usize) {
        match *best {
            Some((g, ba, bb)) if gap > g || (gap == g && (a, b) > (ba, bb)) => {}
            _ => *best = Some((gap, a, b)),
        }
    }
    let boxes: Option<Vec<[f64; 4]>> = members.iter().map(|m| bbox(space, m)).collect();
    match boxes {
        None => {
            for a in 0..members.len() {
                for b in (a + 1)..members.len() {
                    offer(
                        &mut best,
                        set_distance_unchecked(space, members[a].as_slice(), members[b].as_slice()),
                        a,
                        b,
                    );
                }
            }
        }
        Some(boxes) => {
            let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
            for a in 0..members.len() {
                for b in (a + 1)..members.len() {
                    pairs.push((box_gap(&boxes[a], &boxes[b]), a, b));
                }
            }
            pairs.sort_by(|p, q| p.0.total_cmp(&q.0).then((p.1, p.2).cmp(&(q.1, q.2))));
            for (lower, a, b) in pairs {
                if matches!(best, Some((g, _, _)) if lower > g) {
                    break;
                }
                offer(
                    &mut best,
                    set_distance_unchecked(space, members[a].as_slice(), members[b].as_slice()),
                    a,
                    b,
                );
            }
        }
    }
    best
}

/// Checks that distinct members of `fam` are at set distance above `r`
/// (strict) or at least `r` up to `1e-9` (non-strict). Overlapping members
/// make the check fail with gap 0.
pub fn check_r_disjoint<M: Metric + ?Sized>(
    space: &M,
    fam: &SubsetFamily,
    r: f64,
    strictness: Strictness,
) -> Result<DisjointReport> {
    fam.check_in(space.len())?;
    let found = min_gap(space, &fam.members);
    Ok(DisjointReport {
        passed: found.is_none_or(|(g, _, _)| strictness.admits(g, r)),
        min_gap: found.map(|f| f.0),
        witness: found.map(|f| (f.1, f.2)),
    })
}

/// Largest member diameter; zero for an empty family.
pub fn check_uniform_bound<M: Metric + ?Sized>(space: &M, fam: &SubsetFamily) -> Result<f64> {
    fam.check_in(space.len())?;
    Ok(fam
        .members
        .iter()
        .map(|m| diam_unchecked(space, m.as_slice()))
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub covered: bool,
    pub uncovered: Vec<usize>,
}

fn membership_counts<M: Metric + ?Sized>(
    space: &M,
    families: &[SubsetFamily],
) -> Result<Vec<usize>> {
    let mut count = vec![0usize; space.len()];
    for fam in families {
        fam.check_in(space.len())?;
        for m in &fam.members {
            for i in m.iter() {
                count[i] += 1;
            }
        }
    }
    Ok(count)
}

/// Whether every point of `target` lies in some member of some family.
pub fn check_cover<M: Metric + ?Sized>(
    space: &M,
    families: &[SubsetFamily],
    target: &SubsetRef,
) -> Result<CoverReport> {
    target.check_in(space.len())?;
    let count = membership_counts(space, families)?;
    let uncovered: Vec<usize> = target.iter().filter(|&i| count[i] == 0).collect();
    Ok(CoverReport {
        covered: uncovered.is_empty(),
        uncovered,
    })
}

/// Largest number of members (across all families) containing a single
/// target point.
pub fn multiplicity<M: Metric + ?Sized>(
    space: &M,
    families: &[SubsetFamily],
    target: &SubsetRef,
) -> Result<usize> {
    target.check_in(space.len())?;
    let count = membership_counts(space, families)?;
    Ok(target.iter().map(|i| count[i]).max().unwrap_or(0))
}

/// A verified cover of `target` by `k` families that are `r`-disjoint with
/// member diameters at most `C`. Only [`make_certificate`] builds one.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverCertificate {
    families: Vec<SubsetFamily>,
    r: f64,
    c: f64,
    target: SubsetRef,
    strictness: Strictness,
    gaps: Vec<DisjointReport>,
}

impl CoverCertificate {
    pub fn k(&self) -> usize {
        self.families.len()
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Measured uniform diameter bound.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn families(&self) -> &[SubsetFamily] {
        &self.families
    }

    pub fn target(&self) -> &SubsetRef {
        &self.target
    }

    pub fn strictness(&self) -> Strictness {
        self.strictness
    }

    /// Per-family disjointness reports, in family order.
    pub fn gaps(&self) -> &[DisjointReport] {
        &self.gaps
    }

    /// Smallest within-family gap over all families.
    pub fn min_gap(&self) -> Option<f64> {
        self.gaps.iter().filter_map(|g| g.min_gap).reduce(f64::min)
    }
}

/// Runs the disjointness, boundedness and coverage checks and packages the
/// result. `C` is the measured largest member diameter.
pub fn make_certificate<M: Metric + ?Sized>(
    space: &M,
    families: Vec<SubsetFamily>,
    r: f64,
    strictness: Strictness,
    target: SubsetRef,
) -> Result<CoverCertificate> {
    if families.is_empty() {
        return Err(Error::EmptyFamilyList);
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidSeparation(r));
    }
    let mut gaps = Vec::with_capacity(families.len());
    for fam in &families {
        let report = check_r_disjoint(space, fam, r, strictness)?;
        if !report.passed {
            return Err(Error::NotDisjoint {
                family: fam.label.clone(),
                pair: report.witness.expect("failing check has a witness"),
                gap: report.min_gap.expect("failing check has a gap"),
            });
        }
        gaps.push(report);
    }
    let cover = check_cover(space, &families, &target)?;
    if !cover.covered {
        return Err(Error::NotCovering {
            indices: cover.uncovered,
        });
    }
    let mut c = 0.0f64;
    for fam in &families {
        c = c.max(check_uniform_bound(space, fam)?);
    }
    Ok(CoverCertificate {
        families,
        r,
        c,
        target,
        strictness,
        gaps,
    })
}

/// A lower bound on `d_GH(A, X)` with the reasoning that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowerBound {
    pub value: f64,
    pub model: String,
    pub k: usize,
    pub r: f64,
    pub c: f64,
    pub strictness: Strictness,
    pub trace: Vec<String>,
}

/// Applies the asymptotic-dimension bound `d_GH(A, X) >= r/2`.
///
/// Fails with [`Error::TooManyFamilies`] when `k > asdim_lower` and with
/// [`Error::TrivialStabilizer`] when the model admits no nontrivial
/// dilation; in both cases no bound is emitted.
pub fn gh_lower_bound(cert: &CoverCertificate, model: &ModelSpaceDescriptor) -> Result<LowerBound> {
    let (k, n) = (cert.k(), model.asdim_lower);
    if k > n {
        return Err(Error::TooManyFamilies { k, n });
    }
    if !model.stabilizer_nontrivial {
        return Err(Error::TrivialStabilizer(model.name.clone()));
    }
    let mut trace = vec![format!(
        "model {}: asdim >= {n}, nontrivial stabilizer (registry: {})",
        model.name, model.provenance
    )];
    let rel = match cert.strictness {
        Strictness::Strict => ">",
        Strictness::NonStrict => ">=",
    };
    for (fam, gap) in cert.families.iter().zip(&cert.gaps) {
        trace.push(match gap.min_gap {
            Some(g) => format!(
                "family '{}': {} members, min gap {g} {rel} r = {}",
                fam.label,
                fam.len(),
                cert.r
            ),
            None => format!("family '{}': {} member(s), no pairs to separate", fam.label, fam.len()),
        });
    }
    trace.push(format!("uniformly bounded: every member has diameter <= C = {}", cert.c));
    trace.push(format!(
        "cover: the {k} families cover all {} target points",
        cert.target.len()
    ));
    trace.push(format!("family count k = {k} <= n = {n}, k >= 1"));
    if cert.strictness == Strictness::NonStrict {
        trace.push(
            "separation checked non-strictly: the families are strictly r'-disjoint for every \
             r' < r, each giving d_GH >= r'/2, and the supremum over r' is r/2"
                .into(),
        );
    }
    let value = cert.r / 2.0;
    trace.push(format!(
        "conclusion: any correspondence between the covered space and {} has distortion >= r, \
         so d_GH >= r/2 = {value} (a statement about the unbounded model space)",
        model.name
    ));
    Ok(LowerBound {
        value,
        model: model.name.clone(),
        k,
        r: cert.r,
        c: cert.c,
        strictness: cert.strictness,
        trace,
    })
}

/// Measurements taken by [`pushforward_family`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PushforwardReport {
    pub distortion: f64,
    pub source_max_diam: f64,
    pub source_min_gap: Option<f64>,
    pub image_max_diam: f64,
    pub image_min_gap: Option<f64>,
}

/// Member-wise image `V_a = R(U_a)` of a family on `x` under `rel`, with the
/// diameters and gaps needed to compare against `C + dis R` and `r - dis R`.
pub fn pushforward_family<X, Y>(
    x: &X,
    y: &Y,
    rel: &Correspondence,
    fam: &SubsetFamily,
) -> Result<(SubsetFamily, PushforwardReport)>
where
    X: Metric + ?Sized,
    Y: Metric + ?Sized,
{
    rel.check_spaces(x.len(), y.len())?;
    fam.check_in(x.len())?;
    let images = fam
        .members
        .iter()
        .map(|u| rel.pushforward(u))
        .collect::<Result<Vec<_>>>()?;
    let image_family = SubsetFamily::images(format!("R({})", fam.label), images);
    let report = PushforwardReport {
        distortion: rel.distortion(x, y)?,
        source_max_diam: check_uniform_bound(x, fam)?,
        source_min_gap: min_gap(x, &fam.members).map(|g| g.0),
        image_max_diam: check_uniform_bound(y, &image_family)?,
        image_min_gap: min_gap(y, &image_family.members).map(|g| g.0),
    };
    Ok((image_family, report))
}

/// Multiplies the coordinates of `pts` by `lambda`; the families carry over
/// unchanged since they refer to points by index.
pub fn scale_family(
    pts: &EuclideanPointSet,
    fams: &[SubsetFamily],
    lambda: f64,
) -> Result<(EuclideanPointSet, Vec<SubsetFamily>)> {
    let scaled = pts.scale(lambda)?;
    for f in fams {
        f.check_in(pts.len())?;
    }
    Ok((scaled, fams.to_vec()))
}

/// One rung of [`scale_ladder`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LadderStep {
    pub m: u32,
    pub factor: f64,
    /// Smallest within-family gap over all families.
    pub min_gap: Option<f64>,
    pub max_diam: f64,
}

/// Applies `lambda` repeatedly (`m = 0..=steps`) and re-measures gaps and
/// diameters after every application. Requires `lambda > 1`.
pub fn scale_ladder(
    pts: &EuclideanPointSet,
    fams: &[SubsetFamily],
    lambda: f64,
    steps: u32,
) -> Result<Vec<LadderStep>> {
    if !(lambda > 1.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "ladder factor must exceed 1, got {lambda}"
        )));
    }
    let mut current = pts.clone();
    let mut factor = 1.0;
    let mut out = Vec::with_capacity(steps as usize + 1);
    for m in 0..=steps {
        if m > 0 {
            current = scale_family(&current, fams, lambda)?.0;
            factor *= lambda;
        }
        let mut min_g: Option<f64> = None;
        let mut max_d = 0.0f64;
        for f in fams {
            if let Some((g, _, _)) = min_gap(&current, &f.members) {
                min_g = Some(min_g.map_or(g, |v| v.min(g)));
            }
            max_d = max_d.max(check_uniform_bound(&current, f)?);
        }
        out.push(LadderStep {
            m,
            factor,
            min_gap: min_g,
            max_diam: max_d,
        });
    }
    Ok(out)
}
