//! Deciding when two star log symplectic forms on the same divisor are
//! symplectomorphic, and the local normal form at an intersection point.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, ratio, serde_rational, sign, Poly2, Rational};
use crate::divisor::{CurveId, DivisorError, Slope, StarDivisorModel};

#[derive(Debug, thiserror::Error)]
pub enum ClassificationError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed invariant file: {0}")]
    Parse(String),
    #[error("invariant does not match the divisor: {}", .0.join("; "))]
    Structure(Vec<String>),
    #[error("tolerance must be non-negative")]
    NegativeTolerance,
    #[error(transparent)]
    Divisor(#[from] DivisorError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Self::Positive => Self::Negative,
            Self::Negative => Self::Positive,
        }
    }

    pub fn sign(self) -> i8 {
        self.into()
    }
}

impl From<Orientation> for i8 {
    fn from(o: Orientation) -> i8 {
        match o {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }
}

impl TryFrom<i8> for Orientation {
    type Error = String;

    fn try_from(v: i8) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(Self::Positive),
            -1 => Ok(Self::Negative),
            other => Err(format!("orientation must be 1 or -1, got {other}")),
        }
    }
}

mod rational_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Coord(#[serde(with = "serde_rational")] Rational);

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, Rational>, s: S) -> Result<S::Ok, S::Error> {
        let out: BTreeMap<&String, Coord> = m.iter().map(|(k, v)| (k, Coord(v.clone()))).collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, Rational>, D::Error> {
        let raw = BTreeMap::<String, Coord>::deserialize(d)?;
        Ok(raw.into_iter().map(|(k, Coord(v))| (k, v)).collect())
    }
}

/// Coordinates of a degree-2 b-cohomology class in the fixed summand basis,
/// plus the orientation the form induces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BInvariant {
    pub orientation: Orientation,
    #[serde(with = "serde_rational")]
    pub volume: Rational,
    /// Keyed by curve label.
    #[serde(with = "rational_map")]
    pub periods: BTreeMap<String, Rational>,
    /// Keyed by [`residue_key`].
    #[serde(with = "rational_map")]
    pub residues: BTreeMap<String, Rational>,
}

/// `point:lower:higher`, curves in divisor order.
pub fn residue_key(divisor: &StarDivisorModel, point: &str, a: CurveId, b: CurveId) -> String {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    format!("{}:{}:{}", point, divisor.label(lo), divisor.label(hi))
}

/// Every residue key of the divisor, points in file order and pairs in
/// lexicographic curve order.
pub fn residue_keys(divisor: &StarDivisorModel) -> Vec<String> {
    let mut out = Vec::new();
    for p in divisor.points() {
        let cs = p.ordered_curves();
        for (i, a) in cs.iter().enumerate() {
            for b in &cs[i + 1..] {
                out.push(residue_key(divisor, &p.id, *a, *b));
            }
        }
    }
    out
}

impl BInvariant {
    /// All coordinates zero.
    pub fn zero(divisor: &StarDivisorModel, orientation: Orientation) -> Self {
        Self {
            orientation,
            volume: Rational::zero(),
            periods: divisor.curves().iter().map(|c| (c.label.clone(), Rational::zero())).collect(),
            residues: residue_keys(divisor).into_iter().map(|k| (k, Rational::zero())).collect(),
        }
    }

    /// Small random rationals in every coordinate.
    pub fn random<R: Rng + ?Sized>(divisor: &StarDivisorModel, rng: &mut R) -> Self {
        let coord = |rng: &mut R| ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        let orientation = if rng.gen_bool(0.5) { Orientation::Positive } else { Orientation::Negative };
        let volume = coord(rng);
        let periods = divisor.curves().iter().map(|c| (c.label.clone(), coord(rng))).collect();
        let residues = residue_keys(divisor).into_iter().map(|k| (k, coord(rng))).collect();
        Self { orientation, volume, periods, residues }
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self, ClassificationError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| ClassificationError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, ClassificationError> {
        serde_json::from_str(text).map_err(|e| ClassificationError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("invariant serializes")
    }

    /// Checks that the key sets are exactly the ones the divisor determines.
    pub fn check_structure(&self, divisor: &StarDivisorModel) -> Result<(), ClassificationError> {
        let mut problems = Vec::new();
        let mut compare = |what: &str, expected: Vec<String>, got: &BTreeMap<String, Rational>| {
            for k in &expected {
                if !got.contains_key(k) {
                    problems.push(format!("missing {what} {k:?}"));
                }
            }
            for k in got.keys() {
                if !expected.contains(k) {
                    problems.push(format!("unexpected {what} {k:?}"));
                }
            }
        };
        compare("period", divisor.curves().iter().map(|c| c.label.clone()).collect(), &self.periods);
        compare("residue", residue_keys(divisor), &self.residues);
        if problems.is_empty() {
            Ok(())
        } else {
            Err(ClassificationError::Structure(problems))
        }
    }

    /// Every coordinate as `(name, value)`, in the order `classify` compares
    /// them.
    pub fn coordinates(&self, divisor: &StarDivisorModel) -> Vec<(Coordinate, &Rational)> {
        let mut out = vec![(Coordinate::Volume, &self.volume)];
        for c in divisor.curves() {
            if let Some(v) = self.periods.get(&c.label) {
                out.push((Coordinate::Period(c.label.clone()), v));
            }
        }
        for k in residue_keys(divisor) {
            if let Some(v) = self.residues.get(&k) {
                out.push((Coordinate::Residue(k), v));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coordinate {
    Orientation,
    Volume,
    Period(String),
    Residue(String),
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Orientation => f.write_str("orientation"),
            Self::Volume => f.write_str("volume"),
            Self::Period(c) => write!(f, "period {c}"),
            Self::Residue(k) => write!(f, "residue {k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic(Coordinate),
}

impl Verdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Self::Isomorphic)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Isomorphic => f.write_str("Isomorphic"),
            Self::NotIsomorphic(c) => write!(f, "NotIsomorphic: {c}"),
        }
    }
}

/// Exact comparison.
pub fn classify(divisor: &StarDivisorModel, inv0: &BInvariant, inv1: &BInvariant) -> Result<Verdict, ClassificationError> {
    classify_with_tolerance(divisor, inv0, inv1, &Rational::zero())
}

/// Coordinates within `tol` of each other count as equal. Orientation is
/// compared first.
pub fn classify_with_tolerance(
    divisor: &StarDivisorModel,
    inv0: &BInvariant,
    inv1: &BInvariant,
    tol: &Rational,
) -> Result<Verdict, ClassificationError> {
    if tol.is_negative() {
        return Err(ClassificationError::NegativeTolerance);
    }
    inv0.check_structure(divisor)?;
    inv1.check_structure(divisor)?;
    if inv0.orientation != inv1.orientation {
        return Ok(Verdict::NotIsomorphic(Coordinate::Orientation));
    }
    for ((name, a), (_, b)) in inv0.coordinates(divisor).into_iter().zip(inv1.coordinates(divisor)) {
        if (a - b).abs() > *tol {
            return Ok(Verdict::NotIsomorphic(name));
        }
    }
    Ok(Verdict::Isomorphic)
}

/// Parameters of the local normal form
/// `(1/(xy ∏ ℓ_i) + P) dx∧dy` at one point, lines numbered from 1 in
/// divisor order with lines 1 and 2 the axes `x` and `y`.
///
/// `lambda[i]` multiplies `1/(x ℓ_i)`, `delta[i]` multiplies `1/(y ℓ_i)` and
/// `nu[(i, j)]` multiplies `1/(ℓ_i ℓ_j)`, all for `i, j ≥ 3`; `xy_term`
/// multiplies `1/(xy)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarChartNormalForm {
    pub point: String,
    pub lines: Vec<(CurveId, Slope)>,
    pub xy_term: Rational,
    pub lambda: BTreeMap<usize, Rational>,
    pub delta: BTreeMap<usize, Rational>,
    pub nu: BTreeMap<(usize, usize), Rational>,
}

impl StarChartNormalForm {
    pub fn degree(&self) -> usize {
        self.lines.len()
    }

    fn form(&self, i: usize) -> Poly2 {
        let (a, b) = &self.lines[i - 1].1;
        Poly2::linear(a, b)
    }

    fn product_except(&self, skip: &[usize]) -> Poly2 {
        (1..=self.degree()).filter(|i| !skip.contains(i)).fold(Poly2::one(), |acc, i| &acc * &self.form(i))
    }

    /// The coefficient multiplied by `x y ∏_{i≥3} ℓ_i`: a polynomial whose
    /// sign is the orientation the form induces on the b-tangent bundle.
    pub fn scaled_coefficient(&self) -> Poly2 {
        let mut out = Poly2::one();
        out = &out + &self.product_except(&[1, 2]).scale(&self.xy_term);
        for (i, c) in &self.lambda {
            out = &out + &self.product_except(&[1, *i]).scale(c);
        }
        for (i, c) in &self.delta {
            out = &out + &self.product_except(&[2, *i]).scale(c);
        }
        for ((i, j), c) in &self.nu {
            out = &out + &self.product_except(&[*i, *j]).scale(c);
        }
        out
    }

    /// Residue coordinates this normal form carries, keyed as in
    /// [`BInvariant::residues`].
    pub fn residues(&self, divisor: &StarDivisorModel) -> BTreeMap<String, Rational> {
        let id = |i: usize| self.lines[i - 1].0;
        let key = |i: usize, j: usize| residue_key(divisor, &self.point, id(i), id(j));
        let mut out = BTreeMap::new();
        if self.degree() >= 2 {
            out.insert(key(1, 2), self.xy_term.clone());
        }
        for (i, c) in &self.lambda {
            out.insert(key(1, *i), c.clone());
        }
        for (i, c) in &self.delta {
            out.insert(key(2, *i), c.clone());
        }
        for ((i, j), c) in &self.nu {
            out.insert(key(*i, *j), c.clone());
        }
        out
    }
}

/// Residues of `inv` at one point.
pub fn point_residues(divisor: &StarDivisorModel, inv: &BInvariant, point: &str) -> Result<BTreeMap<String, Rational>, ClassificationError> {
    let p = divisor.point(point)?;
    let cs = p.ordered_curves();
    let mut out = BTreeMap::new();
    for (i, a) in cs.iter().enumerate() {
        for b in &cs[i + 1..] {
            let k = residue_key(divisor, point, *a, *b);
            let v = inv.residues.get(&k).ok_or_else(|| ClassificationError::Structure(vec![format!("missing residue {k:?}")]))?;
            out.insert(k, v.clone());
        }
    }
    Ok(out)
}

pub fn normal_form_of(divisor: &StarDivisorModel, inv: &BInvariant, point: &str) -> Result<StarChartNormalForm, ClassificationError> {
    let p = divisor.point(point)?;
    let lines = divisor.resolve_slopes(p);
    let residues = point_residues(divisor, inv, point)?;
    let value = |i: usize, j: usize| residues[&residue_key(divisor, point, lines[i - 1].0, lines[j - 1].0)].clone();
    let k = lines.len();
    let mut nf = StarChartNormalForm {
        point: point.to_string(),
        xy_term: if k >= 2 { value(1, 2) } else { Rational::zero() },
        lambda: BTreeMap::new(),
        delta: BTreeMap::new(),
        nu: BTreeMap::new(),
        lines: lines.clone(),
    };
    for i in 3..=k {
        nf.lambda.insert(i, value(1, i));
        nf.delta.insert(i, value(2, i));
        for j in i + 1..=k {
            nf.nu.insert((i, j), value(i, j));
        }
    }
    Ok(nf)
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrientationCheck {
    Ok,
    /// First sample whose sign disagrees with the declared orientation.
    Warning { point: String, x: Rational, y: Rational, value: Rational },
}

impl fmt::Display for OrientationCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ok => f.write_str("ok"),
            Self::Warning { point, x, y, value } => write!(
                f,
                "warning: at point {point}, sample ({}, {}) has coefficient sign opposite to the orientation (scaled value {})",
                format_rational(x),
                format_rational(y),
                format_rational(value)
            ),
        }
    }
}

/// Sample grid `{±1/4, ±2/4, …, ±1}²` used in every chart.
pub fn sample_grid() -> Vec<(Rational, Rational)> {
    let steps: Vec<Rational> = (-4..=4).filter(|i| *i != 0).map(|i| ratio(i, 4)).collect();
    steps.iter().flat_map(|x| steps.iter().map(move |y| (x.clone(), y.clone()))).collect()
}

/// Evaluates each point's normal-form coefficient, rescaled to the b-frame,
/// on [`sample_grid`] off the lines and compares its sign with the declared
/// orientation.
pub fn orientation_consistency_check(divisor: &StarDivisorModel, inv: &BInvariant) -> Result<OrientationCheck, ClassificationError> {
    inv.check_structure(divisor)?;
    let grid = sample_grid();
    for p in divisor.points() {
        let nf = normal_form_of(divisor, inv, &p.id)?;
        let psi = nf.scaled_coefficient();
        let product = nf.product_except(&[]);
        for (x, y) in &grid {
            if product.eval(x, y).is_zero() {
                continue;
            }
            let value = psi.eval(x, y);
            if sign(&value) != inv.orientation.sign() {
                return Ok(OrientationCheck::Warning { point: p.id.clone(), x: x.clone(), y: y.clone(), value });
            }
        }
    }
    Ok(OrientationCheck::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::divisor::samples::*;
    use rand::SeedableRng;

    fn sphere_invariant() -> BInvariant {
        BInvariant::from_json(
            r#"{"orientation": 1, "volume": "5/2",
                "periods": {"Z1": "1", "Z2": "0", "Z3": "-3/4"},
                "residues": {"N:Z1:Z2": "1/2", "N:Z1:Z3": "0", "N:Z2:Z3": "0",
                             "S:Z1:Z2": "0", "S:Z1:Z3": "0", "S:Z2:Z3": "0"}}"#,
        )
        .unwrap()
    }

    #[test]
    fn parses_documented_format() {
        let inv = sphere_invariant();
        assert_eq!(inv.volume, ratio(5, 2));
        assert_eq!(inv.periods["Z3"], ratio(-3, 4));
        inv.check_structure(&sphere_three_circles()).unwrap();
        assert_eq!(BInvariant::from_json(&inv.to_json()).unwrap(), inv);
    }

    #[test]
    fn decimal_and_integer_coordinates() {
        let inv = BInvariant::from_json(
            r#"{"orientation": -1, "volume": 0.25, "periods": {"Z1": 2, "Z2": "1e-1"},
                "residues": {"P:Z1:Z2": "-0.5", "Q:Z1:Z2": 0}}"#,
        )
        .unwrap();
        assert_eq!(inv.volume, ratio(1, 4));
        assert_eq!(inv.periods["Z2"], ratio(1, 10));
        assert_eq!(inv.orientation, Orientation::Negative);
        inv.check_structure(&sphere_two_crossing_circles()).unwrap();
    }

    #[test]
    fn bad_orientation_and_unknown_field() {
        assert!(BInvariant::from_json(r#"{"orientation": 0, "volume": 1, "periods": {}, "residues": {}}"#).is_err());
        let err = BInvariant::from_json(r#"{"orientation": 1, "volume": 1, "periods": {}, "residues": {}, "x": 1}"#)
            .unwrap_err();
        assert!(err.to_string().contains('x'), "{err}");
    }

    #[test]
    fn structure_mismatch() {
        let d = sphere_three_circles();
        let mut inv = sphere_invariant();
        inv.residues.remove("S:Z2:Z3");
        inv.residues.insert("S:Z3:Z2".into(), rat(0));
        let err = inv.check_structure(&d).unwrap_err().to_string();
        assert!(err.contains("missing residue \"S:Z2:Z3\""), "{err}");
        assert!(err.contains("unexpected residue \"S:Z3:Z2\""), "{err}");
        assert!(classify(&d, &inv, &sphere_invariant()).is_err());
    }

    #[test]
    fn verdicts() {
        let d = sphere_three_circles();
        let a = sphere_invariant();
        assert_eq!(classify(&d, &a, &a).unwrap(), Verdict::Isomorphic);
        let mut flipped = a.clone();
        flipped.orientation = flipped.orientation.flipped();
        assert_eq!(classify(&d, &a, &flipped).unwrap().to_string(), "NotIsomorphic: orientation");
        let mut bumped = a.clone();
        *bumped.residues.get_mut("S:Z1:Z3").unwrap() += rat(1);
        assert_eq!(classify(&d, &a, &bumped).unwrap(), Verdict::NotIsomorphic(Coordinate::Residue("S:Z1:Z3".into())));
        let mut both = bumped.clone();
        both.volume += rat(1);
        assert_eq!(classify(&d, &a, &both).unwrap(), Verdict::NotIsomorphic(Coordinate::Volume));
    }

    #[test]
    fn tolerance() {
        let d = sphere_three_circles();
        let a = sphere_invariant();
        let mut b = a.clone();
        *b.periods.get_mut("Z2").unwrap() += ratio(1, 1000);
        assert!(!classify(&d, &a, &b).unwrap().is_isomorphic());
        assert!(classify_with_tolerance(&d, &a, &b, &ratio(1, 100)).unwrap().is_isomorphic());
        assert!(matches!(
            classify_with_tolerance(&d, &a, &b, &rat(-1)),
            Err(ClassificationError::NegativeTolerance)
        ));
    }

    #[test]
    fn normal_form_zero_residues() {
        let d = sphere_three_circles();
        let nf = normal_form_of(&d, &BInvariant::zero(&d, Orientation::Positive), "N").unwrap();
        assert!(nf.lambda.values().chain(nf.delta.values()).chain(nf.nu.values()).all(Zero::is_zero));
        assert_eq!(nf.lambda.keys().copied().collect::<Vec<_>>(), vec![3]);
        assert_eq!(nf.scaled_coefficient(), Poly2::one());
    }

    #[test]
    fn normal_form_degree_two() {
        let d = sphere_two_crossing_circles();
        let nf = normal_form_of(&d, &BInvariant::zero(&d, Orientation::Positive), "P").unwrap();
        assert!(nf.lambda.is_empty() && nf.delta.is_empty() && nf.nu.is_empty());
    }

    #[test]
    fn normal_form_single_residue() {
        let d = sphere_three_circles();
        let mut inv = BInvariant::zero(&d, Orientation::Positive);
        *inv.residues.get_mut("N:Z2:Z3").unwrap() = ratio(7, 2);
        let nf = normal_form_of(&d, &inv, "N").unwrap();
        assert_eq!(nf.delta[&3], ratio(7, 2));
        assert!(nf.lambda[&3].is_zero() && nf.xy_term.is_zero());
        assert_eq!(nf.residues(&d), point_residues(&d, &inv, "N").unwrap());
        assert!(matches!(normal_form_of(&d, &inv, "Q"), Err(ClassificationError::Divisor(_))));
    }

    #[test]
    fn normal_form_round_trip_random() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let d = StarDivisorModel::new(
            1,
            ["A", "B", "C", "D", "E"],
            [("p", vec!["E", "B", "A", "D", "C"]), ("q", vec!["C", "D"]), ("r", vec!["A", "C", "E"])],
        )
        .unwrap();
        for _ in 0..20 {
            let inv = BInvariant::random(&d, &mut rng);
            for p in ["p", "q", "r"] {
                let nf = normal_form_of(&d, &inv, p).unwrap();
                assert_eq!(nf.residues(&d), point_residues(&d, &inv, p).unwrap());
            }
        }
    }

    #[test]
    fn orientation_check_examples() {
        let d = sphere_three_circles();
        let inv = BInvariant::zero(&d, Orientation::Positive);
        assert_eq!(orientation_consistency_check(&d, &inv).unwrap(), OrientationCheck::Ok);
        let neg = BInvariant::zero(&d, Orientation::Negative);
        assert!(matches!(orientation_consistency_check(&d, &neg).unwrap(), OrientationCheck::Warning { .. }));
        let mut huge = inv.clone();
        *huge.residues.get_mut("N:Z1:Z2").unwrap() = rat(1000);
        // 1 + 1000 (x + y) is negative at (-1/4, -1/4)
        assert!(matches!(
            orientation_consistency_check(&d, &huge).unwrap(),
            OrientationCheck::Warning { ref point, .. } if point == "N"
        ));
    }

    #[test]
    fn scaled_coefficient_matches_direct_evaluation() {
        let d = sphere_three_circles();
        let mut rng = rand::rngs::StdRng::seed_from_u64(9);
        let inv = BInvariant::random(&d, &mut rng);
        let nf = normal_form_of(&d, &inv, "S").unwrap();
        // lines x, y, x + y
        let (x, y) = (ratio(1, 3), ratio(-2, 5));
        let l3 = &x + &y;
        let direct = Rational::from_integer(1.into()) / (&x * &y * &l3)
            + &nf.xy_term / (&x * &y)
            + &nf.lambda[&3] / (&x * &l3)
            + &nf.delta[&3] / (&y * &l3);
        assert_eq!(nf.scaled_coefficient().eval(&x, &y), direct * (&x * &y * &l3));
    }

    #[test]
    fn equivalence_laws_random() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(21);
        let d = sphere_three_circles();
        for _ in 0..200 {
            let a = BInvariant::random(&d, &mut rng);
            let mut b = a.clone();
            if rng.gen_bool(0.5) {
                b = BInvariant::random(&d, &mut rng);
            }
            let ab = classify(&d, &a, &b).unwrap().is_isomorphic();
            let ba = classify(&d, &b, &a).unwrap().is_isomorphic();
            assert_eq!(ab, ba);
            assert!(classify(&d, &a, &a).unwrap().is_isomorphic());
            assert_eq!(ab, a == b);
        }
    }
}
