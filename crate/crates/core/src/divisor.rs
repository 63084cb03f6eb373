//! Compact connected oriented surfaces carrying a star divisor, as pure
//! incidence data.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, rat, serde_rational, Rational};

#[derive(Debug, thiserror::Error)]
pub enum DivisorError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed divisor file: {0}")]
    Parse(String),
    #[error("invalid divisor: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("unknown curve {0:?}")]
    UnknownCurve(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("a multi-intersection needs at least two curves, got {0}")]
    SubsetTooSmall(usize),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceModel {
    pub genus: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl SurfaceModel {
    pub fn of_genus(genus: u32) -> Self {
        Self { genus, name: None }
    }
}

/// de Rham Betti numbers `(b0, b1, b2)` of a closed orientable surface.
pub fn surface_betti(surface: &SurfaceModel) -> (usize, usize, usize) {
    (1, 2 * surface.genus as usize, 1)
}

/// Position of a curve in the divisor's total order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub id: CurveId,
    pub label: String,
}

/// Chart slope `(A, B)` of a curve through a point: the curve is locally
/// `A x + B y = 0`.
pub type Slope = (Rational, Rational);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub id: String,
    /// Incident curves as listed in the source; validation requires them to
    /// be distinct.
    pub incident: Vec<CurveId>,
    pub slopes: Option<BTreeMap<CurveId, Slope>>,
}

impl IntersectionPoint {
    pub fn degree(&self) -> usize {
        self.incident.len()
    }

    /// Incident curves in divisor order.
    pub fn ordered_curves(&self) -> Vec<CurveId> {
        let set: BTreeSet<CurveId> = self.incident.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn contains_all(&self, subset: &[CurveId]) -> bool {
        subset.iter().all(|c| self.incident.contains(c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateCurve(String),
    DuplicatePoint(String),
    UnknownCurve { point: String, curve: String },
    LowDegree { point: String, degree: usize },
    RepeatedIncidence { point: String, curve: String },
    SlopeForNonIncidentCurve { point: String, curve: String },
    DegenerateSlope { point: String, curve: String },
    ChartAxis { point: String, curve: String, expected: &'static str },
    ProportionalLines { point: String, first: String, second: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DuplicateCurve(c) => write!(f, "curve {c:?}: duplicate curve label"),
            Self::DuplicatePoint(p) => write!(f, "point {p:?}: duplicate point id"),
            Self::UnknownCurve { point, curve } => {
                write!(f, "point {point:?}: unknown curve {curve:?}")
            }
            Self::LowDegree { point, degree } => {
                write!(f, "point {point:?}: degree < 2 (has {degree} incident curve(s))")
            }
            Self::RepeatedIncidence { point, curve } => {
                write!(f, "point {point:?}: curve {curve:?} listed twice (self-intersection)")
            }
            Self::SlopeForNonIncidentCurve { point, curve } => {
                write!(f, "point {point:?}: slope given for non-incident curve {curve:?}")
            }
            Self::DegenerateSlope { point, curve } => {
                write!(f, "point {point:?}: slope of {curve:?} is (0, 0)")
            }
            Self::ChartAxis { point, curve, expected } => {
                write!(f, "point {point:?}: curve {curve:?} must have chart slope {expected}")
            }
            Self::ProportionalLines { point, first, second } => {
                write!(f, "point {point:?}: proportional lines for {first:?} and {second:?}")
            }
        }
    }
}

/// A surface together with its star divisor. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarDivisorModel {
    pub surface: SurfaceModel,
    curves: Vec<Curve>,
    points: Vec<IntersectionPoint>,
}

fn proportional(a: &Slope, b: &Slope) -> bool {
    &a.0 * &b.1 == &a.1 * &b.0
}

impl StarDivisorModel {
    /// Builds a model from curve labels and `(point id, incident labels)`.
    /// Unknown labels are rejected; every other invariant is left to
    /// [`validate`](Self::validate).
    pub fn new<C, P, S>(genus: u32, curves: C, points: P) -> Result<Self, DivisorError>
    where
        C: IntoIterator<Item = S>,
        P: IntoIterator<Item = (S, Vec<S>)>,
        S: Into<String>,
    {
        let file = DivisorFile {
            surface: SurfaceModel::of_genus(genus),
            curves: curves.into_iter().map(Into::into).collect(),
            points: points
                .into_iter()
                .map(|(id, cs)| PointEntry {
                    id: id.into(),
                    curves: cs.into_iter().map(Into::into).collect(),
                    slopes: None,
                })
                .collect(),
        };
        file.into_model()
    }

    pub fn from_parts(surface: SurfaceModel, labels: Vec<String>, points: Vec<IntersectionPoint>) -> Self {
        let curves = labels
            .into_iter()
            .enumerate()
            .map(|(i, label)| Curve { id: CurveId(i), label })
            .collect();
        Self { surface, curves, points }
    }

    pub fn genus(&self) -> u32 {
        self.surface.genus
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn points(&self) -> &[IntersectionPoint] {
        &self.points
    }

    pub fn curve_count(&self) -> usize {
        self.curves.len()
    }

    pub fn label(&self, id: CurveId) -> &str {
        self.curves.get(id.0).map_or("?", |c| c.label.as_str())
    }

    pub fn curve_id(&self, label: &str) -> Result<CurveId, DivisorError> {
        self.curves
            .iter()
            .find(|c| c.label == label)
            .map(|c| c.id)
            .ok_or_else(|| DivisorError::UnknownCurve(label.to_string()))
    }

    pub fn point(&self, id: &str) -> Result<&IntersectionPoint, DivisorError> {
        self.points
            .iter()
            .find(|p| p.id == id)
            .ok_or_else(|| DivisorError::UnknownPoint(id.to_string()))
    }

    /// Number of points lying on every curve of `subset`.
    pub fn multi_intersection_count(&self, subset: &[CurveId]) -> Result<usize, DivisorError> {
        if subset.len() < 2 {
            return Err(DivisorError::SubsetTooSmall(subset.len()));
        }
        if let Some(bad) = subset.iter().find(|c| c.0 >= self.curves.len()) {
            return Err(DivisorError::UnknownCurve(format!("#{}", bad.0)));
        }
        Ok(self.points.iter().filter(|p| p.contains_all(subset)).count())
    }

    pub fn multi_intersection_count_by_label(&self, labels: &[&str]) -> Result<usize, DivisorError> {
        let ids = labels.iter().map(|l| self.curve_id(l)).collect::<Result<Vec<_>, _>>()?;
        self.multi_intersection_count(&ids)
    }

    /// `|Z_i ∩ Z_j|` for `i != j`.
    pub fn pairwise_count(&self, i: CurveId, j: CurveId) -> usize {
        if i == j {
            return 0;
        }
        self.points.iter().filter(|p| p.contains_all(&[i, j])).count()
    }

    /// Map from point degree to the number of points of that degree.
    pub fn degree_census(&self) -> BTreeMap<usize, usize> {
        let mut census = BTreeMap::new();
        for p in &self.points {
            *census.entry(p.degree()).or_insert(0) += 1;
        }
        census
    }

    /// Every curve subset of size at least two that meets in some point,
    /// with the points (in divisor order) where it does.
    pub fn intersection_strata(&self) -> BTreeMap<Vec<CurveId>, Vec<String>> {
        let mut out: BTreeMap<Vec<CurveId>, Vec<String>> = BTreeMap::new();
        for p in &self.points {
            for subset in subsets_of_size_at_least(&p.ordered_curves(), 2) {
                out.entry(subset).or_default().push(p.id.clone());
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        let mut labels = BTreeSet::new();
        for c in &self.curves {
            if !labels.insert(c.label.as_str()) {
                violations.push(Violation::DuplicateCurve(c.label.clone()));
            }
        }
        let mut ids = BTreeSet::new();
        for p in &self.points {
            if !ids.insert(p.id.as_str()) {
                violations.push(Violation::DuplicatePoint(p.id.clone()));
            }
            self.check_point(p, &mut violations);
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    pub fn ensure_valid(&self) -> Result<(), DivisorError> {
        self.validate().map_err(DivisorError::Invalid)
    }

    fn check_point(&self, p: &IntersectionPoint, out: &mut Vec<Violation>) {
        let point = || p.id.clone();
        let mut seen = BTreeSet::new();
        for c in &p.incident {
            if c.0 >= self.curves.len() {
                out.push(Violation::UnknownCurve { point: point(), curve: format!("#{}", c.0) });
            } else if !seen.insert(*c) {
                out.push(Violation::RepeatedIncidence { point: point(), curve: self.label(*c).into() });
            }
        }
        if p.degree() < 2 {
            out.push(Violation::LowDegree { point: point(), degree: p.degree() });
        }
        let Some(slopes) = &p.slopes else { return };
        let ordered = p.ordered_curves();
        for (c, s) in slopes {
            if !seen.contains(c) {
                out.push(Violation::SlopeForNonIncidentCurve { point: point(), curve: self.label(*c).into() });
            } else if s.0.is_zero() && s.1.is_zero() {
                out.push(Violation::DegenerateSlope { point: point(), curve: self.label(*c).into() });
            }
        }
        let axes: [(Slope, &'static str); 2] =
            [((Rational::one(), Rational::zero()), "(1, 0)"), ((Rational::zero(), Rational::one()), "(0, 1)")];
        for (c, (axis, name)) in ordered.iter().zip(axes.iter()) {
            if let Some(s) = slopes.get(c) {
                if s != axis {
                    out.push(Violation::ChartAxis { point: point(), curve: self.label(*c).into(), expected: name });
                }
            }
        }
        let resolved = self.resolve_slopes(p);
        for (a, (ca, sa)) in resolved.iter().enumerate() {
            for (cb, sb) in &resolved[a + 1..] {
                let degenerate = |s: &Slope| s.0.is_zero() && s.1.is_zero();
                if !degenerate(sa) && !degenerate(sb) && proportional(sa, sb) {
                    out.push(Violation::ProportionalLines {
                        point: point(),
                        first: self.label(*ca).into(),
                        second: self.label(*cb).into(),
                    });
                }
            }
        }
    }

    /// Chart slopes of every incident curve, in divisor order. Given slopes
    /// are used verbatim; the two lowest curves default to the axes, and the
    /// rest default to the first unused line among `(1,1), (1,2), (1,3), ...`.
    pub fn resolve_slopes(&self, p: &IntersectionPoint) -> Vec<(CurveId, Slope)> {
        let given = p.slopes.clone().unwrap_or_default();
        let ordered = p.ordered_curves();
        let mut out: Vec<(CurveId, Option<Slope>)> = ordered
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let default = match n {
                    0 => Some((rat(1), rat(0))),
                    1 => Some((rat(0), rat(1))),
                    _ => None,
                };
                (*c, given.get(c).cloned().or(default))
            })
            .collect();
        let mut used: Vec<Slope> = out.iter().filter_map(|(_, s)| s.clone()).collect();
        let mut next = 1i64;
        for (_, slot) in out.iter_mut() {
            if slot.is_some() {
                continue;
            }
            loop {
                let candidate = (rat(1), rat(next));
                next += 1;
                if !used.iter().any(|u| proportional(u, &candidate)) {
                    used.push(candidate.clone());
                    *slot = Some(candidate);
                    break;
                }
            }
        }
        out.into_iter().map(|(c, s)| (c, s.expect("every slot assigned"))).collect()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, DivisorError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| DivisorError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, DivisorError> {
        let file: DivisorFile = serde_json::from_str(text).map_err(|e| DivisorError::Parse(e.to_string()))?;
        file.into_model()
    }

    pub fn to_file(&self) -> DivisorFile {
        DivisorFile {
            surface: self.surface.clone(),
            curves: self.curves.iter().map(|c| c.label.clone()).collect(),
            points: self
                .points
                .iter()
                .map(|p| PointEntry {
                    id: p.id.clone(),
                    curves: p.incident.iter().map(|c| self.label(*c).to_string()).collect(),
                    slopes: p.slopes.as_ref().map(|m| {
                        m.iter()
                            .map(|(c, s)| (self.label(*c).to_string(), SlopeEntry(s.0.clone(), s.1.clone())))
                            .collect()
                    }),
                })
                .collect(),
        }
    }
}

/// All subsets of `items` with at least `min` elements, each in input order.
pub fn subsets_of_size_at_least<T: Clone>(items: &[T], min: usize) -> Vec<Vec<T>> {
    let n = items.len();
    assert!(n < 32, "too many curves through one point");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if (mask.count_ones() as usize) < min {
            continue;
        }
        out.push((0..n).filter(|i| mask & (1 << i) != 0).map(|i| items[i].clone()).collect());
    }
    out.sort_by_key(Vec::len);
    out
}

/// Binomial coefficient.
pub fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// On-disk JSON form of a divisor.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorFile {
    pub surface: SurfaceModel,
    #[serde(default)]
    pub curves: Vec<String>,
    #[serde(default)]
    pub points: Vec<PointEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointEntry {
    pub id: String,
    pub curves: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slopes: Option<BTreeMap<String, SlopeEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeEntry(
    #[serde(with = "serde_rational")] pub Rational,
    #[serde(with = "serde_rational")] pub Rational,
);

impl fmt::Display for SlopeEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.0), format_rational(&self.1))
    }
}

impl DivisorFile {
    pub fn into_model(self) -> Result<StarDivisorModel, DivisorError> {
        let index: BTreeMap<&str, CurveId> =
            self.curves.iter().enumerate().map(|(i, l)| (l.as_str(), CurveId(i))).collect();
        let mut unknown = Vec::new();
        let mut points = Vec::new();
        for entry in &self.points {
            let mut incident = Vec::new();
            for label in &entry.curves {
                match index.get(label.as_str()) {
                    Some(id) => incident.push(*id),
                    None => unknown.push(Violation::UnknownCurve { point: entry.id.clone(), curve: label.clone() }),
                }
            }
            let slopes = match &entry.slopes {
                None => None,
                Some(map) => {
                    let mut out = BTreeMap::new();
                    for (label, SlopeEntry(a, b)) in map {
                        match index.get(label.as_str()) {
                            Some(id) => {
                                out.insert(*id, (a.clone(), b.clone()));
                            }
                            None => unknown
                                .push(Violation::UnknownCurve { point: entry.id.clone(), curve: label.clone() }),
                        }
                    }
                    Some(out)
                }
            };
            points.push(IntersectionPoint { id: entry.id.clone(), incident, slopes });
        }
        if !unknown.is_empty() {
            return Err(DivisorError::Invalid(unknown));
        }
        Ok(StarDivisorModel::from_parts(self.surface, self.curves, points))
    }
}

/// Reference divisors used throughout the tests and the CLI docs.
pub mod samples {
    use super::StarDivisorModel;

    /// Three great circles through both poles of the sphere.
    pub fn sphere_three_circles() -> StarDivisorModel {
        StarDivisorModel::new(
            0,
            ["Z1", "Z2", "Z3"],
            [("N", vec!["Z1", "Z2", "Z3"]), ("S", vec!["Z1", "Z2", "Z3"])],
        )
        .expect("static sample")
    }

    /// Two circles on the sphere crossing transversally twice.
    pub fn sphere_two_crossing_circles() -> StarDivisorModel {
        StarDivisorModel::new(0, ["Z1", "Z2"], [("P", vec!["Z1", "Z2"]), ("Q", vec!["Z1", "Z2"])])
            .expect("static sample")
    }

    pub fn empty(genus: u32) -> StarDivisorModel {
        StarDivisorModel::new(genus, Vec::<String>::new(), Vec::<(String, Vec<String>)>::new())
            .expect("static sample")
    }

    /// `n` pairwise disjoint circles on a genus `g` surface.
    pub fn disjoint_circles(genus: u32, n: usize) -> StarDivisorModel {
        let labels: Vec<String> = (1..=n).map(|i| format!("Z{i}")).collect();
        StarDivisorModel::new(genus, labels, Vec::<(String, Vec<String>)>::new()).expect("static sample")
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;
    use crate::algebra::ratio;

    #[test]
    fn betti_numbers() {
        assert_eq!(surface_betti(&SurfaceModel::of_genus(0)), (1, 0, 1));
        assert_eq!(surface_betti(&SurfaceModel::of_genus(1)), (1, 2, 1));
        assert_eq!(surface_betti(&SurfaceModel::of_genus(2)), (1, 4, 1));
    }

    #[test]
    fn sphere_counts() {
        let d = sphere_three_circles();
        assert_eq!(d.multi_intersection_count_by_label(&["Z1", "Z2"]).unwrap(), 2);
        assert_eq!(d.multi_intersection_count_by_label(&["Z1", "Z2", "Z3"]).unwrap(), 2);
        assert_eq!(d.degree_census(), BTreeMap::from([(3, 2)]));
        assert!(d.validate().is_ok());
    }

    #[test]
    fn disjoint_pair_meets_nowhere() {
        let d = disjoint_circles(1, 2);
        assert_eq!(d.multi_intersection_count_by_label(&["Z1", "Z2"]).unwrap(), 0);
    }

    #[test]
    fn census_of_small_divisors() {
        assert_eq!(sphere_two_crossing_circles().degree_census(), BTreeMap::from([(2, 2)]));
        assert!(empty(3).degree_census().is_empty());
    }

    #[test]
    fn count_errors() {
        let d = sphere_three_circles();
        assert!(matches!(d.multi_intersection_count_by_label(&["Z1", "Z9"]), Err(DivisorError::UnknownCurve(_))));
        assert!(matches!(d.multi_intersection_count(&[CurveId(0)]), Err(DivisorError::SubsetTooSmall(1))));
        assert!(matches!(
            d.multi_intersection_count(&[CurveId(0), CurveId(7)]),
            Err(DivisorError::UnknownCurve(_))
        ));
    }

    #[test]
    fn single_curve_point_is_rejected() {
        let d = StarDivisorModel::new(0, ["Z1", "Z2"], [("P", vec!["Z1"])]).unwrap();
        let v = d.validate().unwrap_err();
        assert!(v.iter().any(|v| v.to_string().contains("degree < 2")), "{v:?}");
    }

    #[test]
    fn proportional_slopes_are_rejected() {
        let json = r#"{"surface":{"genus":0},"curves":["Z1","Z2","Z3"],
            "points":[{"id":"P","curves":["Z1","Z2","Z3"],"slopes":{"Z1":[1,0],"Z3":[2,0]}}]}"#;
        let d = StarDivisorModel::from_json(json).unwrap();
        let v = d.validate().unwrap_err();
        assert!(v.iter().any(|v| v.to_string().contains("proportional lines")), "{v:?}");
    }

    #[test]
    fn repeated_and_unknown_curves() {
        let d = StarDivisorModel::new(0, ["Z1", "Z2"], [("P", vec!["Z1", "Z1"])]).unwrap();
        assert!(d.validate().unwrap_err().iter().any(|v| matches!(v, Violation::RepeatedIncidence { .. })));
        let err = StarDivisorModel::new(0, ["Z1"], [("P", vec!["Z1", "Q"])]).unwrap_err();
        assert!(err.to_string().contains("unknown curve \"Q\""), "{err}");
    }

    #[test]
    fn duplicate_ids() {
        let d = StarDivisorModel::new(0, ["Z1", "Z1"], [("P", vec!["Z1", "Z1"]), ("P", vec!["Z1", "Z1"])]);
        // the label index keeps the last occurrence; both duplicates are still flagged
        let v = d.unwrap().validate().unwrap_err();
        assert!(v.contains(&Violation::DuplicateCurve("Z1".into())));
        assert!(v.contains(&Violation::DuplicatePoint("P".into())));
    }

    #[test]
    fn axis_slopes_are_enforced() {
        let json = r#"{"surface":{"genus":0},"curves":["Z1","Z2"],
            "points":[{"id":"P","curves":["Z1","Z2"],"slopes":{"Z2":[1,1]}}]}"#;
        let v = StarDivisorModel::from_json(json).unwrap().validate().unwrap_err();
        assert!(matches!(v[0], Violation::ChartAxis { .. }), "{v:?}");
    }

    #[test]
    fn schema_rejects_extra_structure() {
        let json = r#"{"surface":{"genus":0,"components":2},"curves":[],"points":[]}"#;
        assert!(matches!(StarDivisorModel::from_json(json), Err(DivisorError::Parse(_))));
        let json = r#"{"surface":{"genus":-1},"curves":[],"points":[]}"#;
        assert!(matches!(StarDivisorModel::from_json(json), Err(DivisorError::Parse(_))));
    }

    #[test]
    fn documented_file_parses_and_resolves_slopes() {
        let json = r#"{"surface": {"genus": 0}, "curves": ["Z1","Z2","Z3"],
            "points": [{"id":"N","curves":["Z1","Z2","Z3"], "slopes": {"Z3": [1, 1]}},
                       {"id":"S","curves":["Z1","Z2","Z3"]}]}"#;
        let d = StarDivisorModel::from_json(json).unwrap();
        assert!(d.validate().is_ok());
        let n = d.resolve_slopes(d.point("N").unwrap());
        assert_eq!(n[2].1, (rat(1), rat(1)));
        let json = r#"{"surface": {"genus": 0}, "curves": ["Z1","Z2","Z3","Z4"],
            "points": [{"id":"N","curves":["Z4","Z1","Z2","Z3"], "slopes": {"Z3": ["1/2", "0.5"]}}]}"#;
        let d = StarDivisorModel::from_json(json).unwrap();
        let s = d.resolve_slopes(&d.points()[0]);
        // Z3 given as (1/2, 1/2), so Z4 skips the proportional (1, 1)
        assert_eq!(s[2].1, (ratio(1, 2), ratio(1, 2)));
        assert_eq!(s[3].1, (rat(1), rat(2)));
        assert!(d.validate().is_ok());
    }

    #[test]
    fn file_round_trip() {
        let d = sphere_three_circles();
        let text = serde_json::to_string(&d.to_file()).unwrap();
        assert_eq!(StarDivisorModel::from_json(&text).unwrap(), d);
    }

    #[test]
    fn binomials() {
        assert_eq!(choose(5, 2), 10);
        assert_eq!(choose(3, 3), 1);
        assert_eq!(choose(2, 3), 0);
        assert_eq!(subsets_of_size_at_least(&[1, 2, 3], 2).len(), 4);
    }
}
