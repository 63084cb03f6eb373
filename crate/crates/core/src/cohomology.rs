//! Global Lie algebroid cohomology dimensions of a surface with a star
//! divisor, with a named summand for every piece.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::divisor::{choose, CurveId, DivisorError, StarDivisorModel};
use crate::frames::LineArrangement;
use crate::pages::{page_cohomology_dims, PageModel, Theory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CohomologyTheory {
    B,
    Zero,
    Poisson,
}

impl CohomologyTheory {
    pub const ALL: [CohomologyTheory; 3] = [Self::B, Self::Zero, Self::Poisson];
}

impl fmt::Display for CohomologyTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::B => "b",
            Self::Zero => "zero",
            Self::Poisson => "poisson",
        })
    }
}

impl std::str::FromStr for CohomologyTheory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "b" => Ok(Self::B),
            "zero" | "0" => Ok(Self::Zero),
            "poisson" => Ok(Self::Poisson),
            other => Err(format!("unknown theory {other:?} (expected b, zero or poisson)")),
        }
    }
}

/// Where a summand lives. Curves are named by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "lowercase", deny_unknown_fields)]
pub enum Source {
    Surface,
    Curve { curve: String },
    /// One point together with a subset of the curves through it.
    Subset { point: String, curves: Vec<String> },
    /// The whole intersection `∩ Z_i` over a subset of curves.
    Stratum { curves: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    #[serde(flatten)]
    pub source: Source,
    pub dim: usize,
    pub tag: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub theory: CohomologyTheory,
    pub dims: [usize; 3],
    #[serde(with = "by_degree")]
    pub breakdown: [Vec<Summand>; 3],
}

mod by_degree {
    use super::Summand;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(v: &[Vec<Summand>; 3], s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, &Vec<Summand>> = v.iter().enumerate().map(|(d, l)| (d.to_string(), l)).collect();
        map.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Vec<Summand>; 3], D::Error> {
        let mut map = BTreeMap::<String, Vec<Summand>>::deserialize(d)?;
        let mut out: [Vec<Summand>; 3] = Default::default();
        for (deg, slot) in out.iter_mut().enumerate() {
            *slot = map.remove(&deg.to_string()).unwrap_or_default();
        }
        if let Some(k) = map.keys().next() {
            return Err(D::Error::custom(format!("unexpected degree {k:?} in breakdown")));
        }
        Ok(out)
    }
}

impl CohomologyReport {
    fn from_breakdown(theory: CohomologyTheory, breakdown: [Vec<Summand>; 3]) -> Self {
        let dims = [0, 1, 2].map(|d| breakdown[d].iter().map(|s| s.dim).sum());
        Self { theory, dims, breakdown }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.dims[0], self.dims[1], self.dims[2])
    }

    /// True when every degree's summands add up to the reported dimension.
    pub fn is_consistent(&self) -> bool {
        (0..3).all(|d| self.breakdown[d].iter().map(|s| s.dim).sum::<usize>() == self.dims[d])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// The intersection numbers the closed formulas depend on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntersectionCounts {
    /// Pairs: `Σ_p C(deg p, 2)`.
    pub pairs: usize,
    /// Triples: `Σ_p C(deg p, 3)`.
    pub triples: usize,
    /// Subsets of four or more curves through a common point.
    pub higher: usize,
}

pub fn intersection_counts(divisor: &StarDivisorModel) -> IntersectionCounts {
    let mut c = IntersectionCounts::default();
    for p in divisor.points() {
        let d = p.degree();
        c.pairs += choose(d, 2);
        c.triples += choose(d, 3);
        c.higher += (4..=d).map(|m| choose(d, m)).sum::<usize>();
    }
    c
}

fn names(divisor: &StarDivisorModel, ids: &[CurveId]) -> Vec<String> {
    ids.iter().map(|&c| divisor.label(c).to_string()).collect()
}

/// Degrees 0 and 1 plus the surface and curve part of degree 2; these are
/// shared by all three theories.
fn common_part(divisor: &StarDivisorModel) -> [Vec<Summand>; 3] {
    let g = divisor.genus() as usize;
    let mut out: [Vec<Summand>; 3] = Default::default();
    out[0].push(Summand { source: Source::Surface, dim: 1, tag: "H⁰(S)".into() });
    out[1].push(Summand { source: Source::Surface, dim: 2 * g, tag: "H¹(S)".into() });
    out[2].push(Summand { source: Source::Surface, dim: 1, tag: "H²(S)".into() });
    for c in divisor.curves() {
        let curve = || Source::Curve { curve: c.label.clone() };
        out[1].push(Summand { source: curve(), dim: 1, tag: format!("H⁰({})", c.label) });
        out[2].push(Summand { source: curve(), dim: 1, tag: format!("H¹({})", c.label) });
    }
    out
}

/// Every subset of at least two curves through each point, points in file
/// order and subsets in size then divisor order.
fn point_subsets(divisor: &StarDivisorModel) -> Vec<(String, Vec<CurveId>)> {
    let mut out = Vec::new();
    for p in divisor.points() {
        let curves = p.ordered_curves();
        let mut subsets = crate::divisor::subsets_of_size_at_least(&curves, 2);
        subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out.extend(subsets.into_iter().map(|s| (p.id.clone(), s)));
    }
    out
}

fn point_tag(point: &str, labels: &[String]) -> String {
    format!("H⁰({}:{})", point, labels.join(":"))
}

pub fn b_cohomology(divisor: &StarDivisorModel) -> Result<CohomologyReport, DivisorError> {
    divisor.ensure_valid()?;
    let mut parts = common_part(divisor);
    for (point, subset) in point_subsets(divisor) {
        if subset.len() == 2 {
            let labels = names(divisor, &subset);
            let tag = point_tag(&point, &labels);
            parts[2].push(Summand { source: Source::Subset { point, curves: labels }, dim: 1, tag });
        }
    }
    Ok(CohomologyReport::from_breakdown(CohomologyTheory::B, parts))
}

/// Number of degree-2 classes a subset of `m` curves through one point
/// contributes in the zero (equivalently Poisson) theory.
pub fn zero_multiplicity(m: usize) -> usize {
    match m {
        0 | 1 => 0,
        2 => 2,
        3 => 3,
        _ => 4,
    }
}

pub fn poisson_cohomology(divisor: &StarDivisorModel) -> Result<CohomologyReport, DivisorError> {
    divisor.ensure_valid()?;
    let mut parts = common_part(divisor);
    for (point, subset) in point_subsets(divisor) {
        let labels = names(divisor, &subset);
        let dim = zero_multiplicity(subset.len());
        let tag = format!("{}^{dim}", point_tag(&point, &labels));
        parts[2].push(Summand { source: Source::Subset { point, curves: labels }, dim, tag });
    }
    Ok(CohomologyReport::from_breakdown(CohomologyTheory::Poisson, parts))
}

fn density(labels: &[&String]) -> String {
    labels.iter().map(|l| format!("|N*{l}|⁻¹")).collect::<Vec<_>>().join("⊗")
}

/// Density-bundle twists of `H⁰(∩ Z_i)` contributed by one stratum, in the
/// order they are listed for pairs, triples and larger subsets.
pub fn density_twists(labels: &[String]) -> Vec<Option<String>> {
    let all: Vec<&String> = labels.iter().collect();
    let without = |skip: &[usize]| -> Vec<&String> {
        all.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, l)| *l).collect()
    };
    match labels.len() {
        0 | 1 => vec![],
        2 => vec![None, Some(density(&all))],
        3 => vec![Some(density(&all)), Some(density(&without(&[0]))), Some(density(&without(&[1])))],
        _ => vec![
            Some(density(&all)),
            Some(density(&without(&[0]))),
            Some(density(&without(&[1]))),
            Some(density(&without(&[0, 1]))),
        ],
    }
}

pub fn zero_cohomology(divisor: &StarDivisorModel) -> Result<CohomologyReport, DivisorError> {
    divisor.ensure_valid()?;
    let mut parts = common_part(divisor);
    let mut strata: BTreeMap<(usize, Vec<CurveId>), usize> = BTreeMap::new();
    for (_, subset) in point_subsets(divisor) {
        *strata.entry((subset.len(), subset)).or_default() += 1;
    }
    for ((_, subset), count) in strata {
        let labels = names(divisor, &subset);
        let set = labels.join("∩");
        for twist in density_twists(&labels) {
            let tag = match twist {
                None => format!("H⁰({set})"),
                Some(t) => format!("H⁰({set};{t})"),
            };
            parts[2].push(Summand { source: Source::Stratum { curves: labels.clone() }, dim: count, tag });
        }
    }
    Ok(CohomologyReport::from_breakdown(CohomologyTheory::Zero, parts))
}

pub fn cohomology(divisor: &StarDivisorModel, theory: CohomologyTheory) -> Result<CohomologyReport, DivisorError> {
    match theory {
        CohomologyTheory::B => b_cohomology(divisor),
        CohomologyTheory::Zero => zero_cohomology(divisor),
        CohomologyTheory::Poisson => poisson_cohomology(divisor),
    }
}

/// Degree-2 Poisson directions with no counterpart among the b-summands.
pub fn non_b_deformation_count(divisor: &StarDivisorModel) -> Result<usize, DivisorError> {
    let p = poisson_cohomology(divisor)?;
    let b = b_cohomology(divisor)?;
    Ok(p.dims[2] - b.dims[2])
}

/// `k` lines through the origin: the two axes, then `x + j y` for
/// `j = 1, 2, …`.
pub fn standard_arrangement(k: usize) -> LineArrangement {
    let lines: Vec<(i64, i64)> = (1..=k.saturating_sub(2) as i64).map(|j| (1, j)).collect();
    LineArrangement::from_ints(&lines).expect("distinct slopes")
}

/// Rebuilds `h2` from local zero-page computations at every point and
/// compares it with the closed formula.
pub fn local_global_consistency(divisor: &StarDivisorModel) -> Result<bool, DivisorError> {
    let global = poisson_cohomology(divisor)?.dims[2];
    let mut page_h2: BTreeMap<usize, usize> = BTreeMap::new();
    let mut local = 1 + divisor.curve_count();
    for p in divisor.points() {
        let d = p.degree();
        for m in 2..=d {
            let h2 = *page_h2.entry(m).or_insert_with(|| {
                let model = PageModel::new(Theory::Zero, standard_arrangement(m)).expect("k ≥ 2");
                page_cohomology_dims(&model).expect("page computation").h2
            });
            local += choose(d, m) * h2;
        }
    }
    Ok(local == global)
}
