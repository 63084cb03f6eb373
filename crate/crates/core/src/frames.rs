//! Polynomial vector fields tangent to `k` lines through the origin, and the
//! two-field frame `V = x∂x + y∂y`, `W̃ = Π_{i≥3} ℓ_i · (x∂x − y∂y)` that
//! generates them.

use std::fmt;
use std::ops::Add;

use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::{
    nullspace, rank, rat, ratio, solve_linear, AlgebraError, LinearSolution, Poly2, RatFunc2, Rational,
};
use crate::divisor::Slope;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrameError {
    #[error("an arrangement needs at least two lines, got {0}")]
    TooFewLines(usize),
    #[error("line {index} must be {expected}")]
    Axis { index: usize, expected: &'static str },
    #[error("line {0} is (0, 0)")]
    DegenerateLine(usize),
    #[error("lines {0} and {1} are proportional")]
    Proportional(usize, usize),
    #[error("unsupported chart: {0}")]
    UnsupportedChart(String),
    #[error("vector field is not tangent to line {0}")]
    NotTangent(usize),
    #[error("transition data: {0}")]
    Transition(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `k >= 2` pairwise distinct lines `A_i x + B_i y = 0` through the origin,
/// the first two being `x = 0` and `y = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineArrangement {
    lines: Vec<Slope>,
}

impl LineArrangement {
    pub fn new(lines: Vec<Slope>) -> Result<Self, FrameError> {
        if lines.len() < 2 {
            return Err(FrameError::TooFewLines(lines.len()));
        }
        if lines[0] != (rat(1), rat(0)) {
            return Err(FrameError::Axis { index: 1, expected: "(1, 0)" });
        }
        if lines[1] != (rat(0), rat(1)) {
            return Err(FrameError::Axis { index: 2, expected: "(0, 1)" });
        }
        for (i, l) in lines.iter().enumerate() {
            if l.0.is_zero() && l.1.is_zero() {
                return Err(FrameError::DegenerateLine(i + 1));
            }
            for (j, m) in lines[..i].iter().enumerate() {
                if &l.0 * &m.1 == &l.1 * &m.0 {
                    return Err(FrameError::Proportional(j + 1, i + 1));
                }
            }
        }
        Ok(Self { lines })
    }

    /// The axes followed by `extra`.
    pub fn with_extra_lines(extra: impl IntoIterator<Item = Slope>) -> Result<Self, FrameError> {
        let mut lines = vec![(rat(1), rat(0)), (rat(0), rat(1))];
        lines.extend(extra);
        Self::new(lines)
    }

    /// Convenience for integer slopes.
    pub fn from_ints(extra: &[(i64, i64)]) -> Result<Self, FrameError> {
        Self::with_extra_lines(extra.iter().map(|&(a, b)| (rat(a), rat(b))))
    }

    /// `k` lines whose extra slopes are random small rationals with both
    /// entries nonzero.
    pub fn random<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Self {
        assert!(k >= 2);
        let mut lines = vec![(rat(1), rat(0)), (rat(0), rat(1))];
        while lines.len() < k {
            let mut entry = || {
                let mut n = 0;
                while n == 0 {
                    n = rng.gen_range(-9..=9);
                }
                ratio(n, rng.gen_range(1..=4))
            };
            let cand = (entry(), entry());
            if lines.iter().all(|l| &l.0 * &cand.1 != &l.1 * &cand.0) {
                lines.push(cand);
            }
        }
        Self { lines }
    }

    pub fn k(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Slope] {
        &self.lines
    }

    /// Linear form of line `i` (0-based).
    pub fn form(&self, i: usize) -> Poly2 {
        let (a, b) = &self.lines[i];
        Poly2::linear(a, b)
    }

    /// `Π_{i >= start} ℓ_i` with 0-based `start`; 1 for an empty product.
    pub fn product_from(&self, start: usize) -> Poly2 {
        (start..self.k()).fold(Poly2::one(), |acc, i| &acc * &self.form(i))
    }

    /// `R = Π_{i>=3} ℓ_i` in 1-based numbering.
    pub fn extra_product(&self) -> Poly2 {
        self.product_from(2)
    }

    pub fn frame(&self) -> FramePair {
        FramePair::new(self)
    }
}

impl fmt::Display for LineArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lines.iter().map(|(a, b)| format!("{}x+{}y", a, b)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `a ∂x + b ∂y` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    pub a: Poly2,
    pub b: Poly2,
}

impl PolyVectorField {
    pub fn new(a: Poly2, b: Poly2) -> Self {
        Self { a, b }
    }

    pub fn euler() -> Self {
        Self::new(Poly2::x(), Poly2::y())
    }

    /// `x∂x − y∂y`.
    pub fn hyperbolic() -> Self {
        Self::new(Poly2::x(), -Poly2::y())
    }

    pub fn scale_by(&self, p: &Poly2) -> Self {
        Self::new(p * &self.a, p * &self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Coefficient vector in the monomial basis of homogeneous degree `m`:
    /// `[a_{m,0}, a_{m-1,1}, .., a_{0,m}, b_{m,0}, .., b_{0,m}]`.
    pub fn to_coords(&self, m: u32) -> Vec<Rational> {
        [&self.a, &self.b].iter().flat_map(|p| (0..=m).map(move |j| p.coeff((m - j, j)))).collect()
    }

    pub fn from_coords(m: u32, coords: &[Rational]) -> Self {
        let n = m as usize + 1;
        let build = |cs: &[Rational]| Poly2::from_terms((0..=m).map(|j| ((m - j, j), cs[j as usize].clone())));
        Self::new(build(&coords[..n]), build(&coords[n..]))
    }
}

impl Add for &PolyVectorField {
    type Output = PolyVectorField;
    fn add(self, rhs: &PolyVectorField) -> PolyVectorField {
        PolyVectorField::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})∂x + ({})∂y", self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramePair {
    pub v: PolyVectorField,
    pub w_tilde: PolyVectorField,
}

impl FramePair {
    pub fn new(arr: &LineArrangement) -> Self {
        Self {
            v: PolyVectorField::euler(),
            w_tilde: PolyVectorField::hyperbolic().scale_by(&arr.extra_product()),
        }
    }
}

/// Exact tangency: `ℓ_i | A_i a + B_i b` for every line (for the axes this
/// is `x | a` and `y | b`).
pub fn is_tangent(arr: &LineArrangement, v: &PolyVectorField) -> bool {
    first_non_tangent_line(arr, v).is_none()
}

fn first_non_tangent_line(arr: &LineArrangement, v: &PolyVectorField) -> Option<usize> {
    (0..arr.k()).find(|&i| {
        let (a, b) = &arr.lines[i];
        let normal = &v.a.scale(a) + &v.b.scale(b);
        !matches!(normal.exact_div(&arr.form(i)), Ok(Some(_)))
    })
}

/// One linear condition per line on the coefficients of a homogeneous
/// degree `m` field: `A a(B, −A) + B b(B, −A) = 0`, i.e. the normal
/// component vanishes along the line.
fn tangency_constraints(arr: &LineArrangement, m: u32) -> Vec<Vec<Rational>> {
    arr.lines
        .iter()
        .map(|(a, b)| {
            let point = (b.clone(), -a.clone());
            let monomials: Vec<Rational> = (0..=m)
                .map(|j| num_traits::pow(point.0.clone(), (m - j) as usize) * num_traits::pow(point.1.clone(), j as usize))
                .collect();
            monomials.iter().map(|v| a * v).chain(monomials.iter().map(|v| b * v)).collect()
        })
        .collect()
}

/// Basis of the tangent fields whose coefficients are homogeneous of degree
/// `m`, computed as the kernel of the tangency conditions.
pub fn tangent_basis(arr: &LineArrangement, m: u32) -> Vec<PolyVectorField> {
    let cols = 2 * (m as usize + 1);
    nullspace(&tangency_constraints(arr, m), cols)
        .expect("constraint rows have the right width")
        .iter()
        .map(|c| PolyVectorField::from_coords(m, c))
        .collect()
}

fn monomials_of_degree(d: u32) -> impl Iterator<Item = Poly2> {
    (0..=d).map(move |j| Poly2::term(Rational::one(), (d - j, j)))
}

/// The spanning set `{p V : deg p = m−1} ∪ {q W̃ : deg q = m−k+1}`.
pub fn frame_span_generators(arr: &LineArrangement, m: u32) -> Vec<PolyVectorField> {
    let frame = arr.frame();
    let mut out = Vec::new();
    if m >= 1 {
        out.extend(monomials_of_degree(m - 1).map(|p| frame.v.scale_by(&p)));
    }
    let w_degree = arr.k() as u32 - 1;
    if m >= w_degree {
        out.extend(monomials_of_degree(m - w_degree).map(|q| frame.w_tilde.scale_by(&q)));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub degree: u32,
    pub tangent_dim: usize,
    pub span_dim: usize,
    /// Span generators that fail tangency; always empty unless the frame is
    /// wrong.
    pub escaped: Vec<PolyVectorField>,
    /// A tangent field outside the frame span, when one exists.
    pub counterexample: Option<PolyVectorField>,
}

impl DegreeComparison {
    pub fn equal(&self) -> bool {
        self.tangent_dim == self.span_dim && self.escaped.is_empty() && self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameReport {
    pub arrangement: LineArrangement,
    pub degrees: Vec<DegreeComparison>,
}

impl FrameReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(DegreeComparison::equal)
    }
}

/// Compares, degree by degree, the tangent space with the module generated
/// by `V` and `W̃`.
pub fn verify_frame_generation(arr: &LineArrangement, max_degree: u32) -> FrameReport {
    let degrees = (1..=max_degree).map(|m| compare_degree(arr, m)).collect();
    FrameReport { arrangement: arr.clone(), degrees }
}

pub fn compare_degree(arr: &LineArrangement, m: u32) -> DegreeComparison {
    let tangent = tangent_basis(arr, m);
    let generators = frame_span_generators(arr, m);
    let escaped = generators.iter().filter(|g| !is_tangent(arr, g)).cloned().collect();
    let rows: Vec<Vec<Rational>> = generators.iter().map(|g| g.to_coords(m)).collect();
    let span_dim = rank(&rows);
    let mut counterexample = None;
    if span_dim < tangent.len() {
        // columns of the system are the generators
        let cols = rows.len();
        let system: Vec<Vec<Rational>> =
            (0..2 * (m as usize + 1)).map(|r| rows.iter().map(|g| g[r].clone()).collect()).collect();
        counterexample = tangent.iter().find(|t| {
            matches!(solve_linear(&system, cols, &t.to_coords(m)), Ok(LinearSolution::Inconsistent { .. }))
        }).cloned();
    }
    DegreeComparison { degree: m, tangent_dim: tangent.len(), span_dim, escaped, counterexample }
}

/// `m + max(0, m − k + 2)`: the tangent dimension at homogeneous degree `m`.
pub fn expected_tangent_dim(k: usize, m: u32) -> usize {
    let m = m as i64;
    (m + (m - k as i64 + 2).max(0)) as usize
}

/// Functions `h`, `c3` with
/// `a = x (h y Q / A3 + c3)` and `b = y (c3 − h x Q / B3)`, `Q = Π_{i>=4} ℓ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimParameters {
    pub h: Poly2,
    pub c3: Poly2,
}

impl ClaimParameters {
    pub fn reconstruct(&self, arr: &LineArrangement) -> PolyVectorField {
        let (a3, b3) = &arr.lines[2];
        let q = arr.product_from(3);
        let hq = &self.h * &q;
        let a = &Poly2::x() * &(&(&hq * &Poly2::y()).scale(&a3.recip()) + &self.c3);
        let b = &Poly2::y() * &(&self.c3 - &(&hq * &Poly2::x()).scale(&b3.recip()));
        PolyVectorField::new(a, b)
    }
}

pub fn claim_parametrization(arr: &LineArrangement, v: &PolyVectorField) -> Result<ClaimParameters, FrameError> {
    if arr.k() < 3 {
        return Err(FrameError::UnsupportedChart("the parametrisation needs a third line".into()));
    }
    let (a3, b3) = arr.lines[2].clone();
    if a3.is_zero() || b3.is_zero() {
        return Err(FrameError::UnsupportedChart("A3·B3 = 0".into()));
    }
    if let Some(i) = first_non_tangent_line(arr, v) {
        return Err(FrameError::NotTangent(i + 1));
    }
    let div = |p: &Poly2, d: &Poly2, line: usize| -> Result<Poly2, FrameError> {
        p.exact_div(d)?.ok_or(FrameError::NotTangent(line))
    };
    let a_prime = div(&v.a, &Poly2::x(), 1)?;
    let normal = &v.a.scale(&a3) + &v.b.scale(&b3);
    let c3 = div(&normal, &arr.form(2), 3)?;
    let q = arr.product_from(3);
    let h = div(&(&a_prime - &c3).scale(&a3), &(&Poly2::y() * &q), 4)?;
    let params = ClaimParameters { h, c3 };
    if params.reconstruct(arr) != *v {
        return Err(FrameError::NotTangent(4));
    }
    Ok(params)
}

/// Pairing matrix `[[⟨V*,V⟩, ⟨V*,W̃⟩], [⟨W̃*,V⟩, ⟨W̃*,W̃⟩]]` with
/// `V* = dx/x + dy/y` and `W̃* = R⁻¹ (dx/x − dy/y)`.
pub fn coframe_pairing(arr: &LineArrangement) -> [[RatFunc2; 2]; 2] {
    let x = Poly2::x();
    let y = Poly2::y();
    let r = arr.extra_product();
    let coframe = |scale: &Poly2, sign: i64| -> (RatFunc2, RatFunc2) {
        (
            RatFunc2::new(Poly2::one(), scale * &x).expect("nonzero"),
            RatFunc2::new(Poly2::constant(rat(sign)), scale * &y).expect("nonzero"),
        )
    };
    let covectors = [coframe(&Poly2::one(), 1), coframe(&r, -1)];
    let frame = arr.frame();
    let fields = [&frame.v, &frame.w_tilde];
    covectors.map(|(dx, dy)| {
        fields.map(|f| {
            &(&dx * &RatFunc2::from_poly(f.a.clone())) + &(&dy * &RatFunc2::from_poly(f.b.clone()))
        })
    })
}

/// True when the coframe pairs nondegenerately with the frame off the lines.
pub fn coframe_duality_check(arr: &LineArrangement) -> bool {
    let m = coframe_pairing(arr);
    let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
    !det.is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionCheck {
    /// `f(0)/g(0)`, the only constant `f/g` can take on a line through 0.
    pub ratio: Rational,
    /// `a_i B_i / (A_i b_i)` per line `i >= 3`.
    pub forced: Vec<Rational>,
    pub failures: Vec<String>,
}

impl TransitionCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the constraints a transition `x̃ = f x`, `ỹ = g y` must satisfy
/// when it maps source line `a_i x + b_i y = 0` onto `A_i x̃ + B_i ỹ = 0`:
/// on each line `f = (a_i B_i / (A_i b_i)) g`, and the constant is shared by
/// all lines. `images[n]` is the target of source line `n + 3`.
/// `technical_line` is an extra line on which `f/g` must take the same
/// constant.
pub fn transition_line_ratio_check(
    arr: &LineArrangement,
    f: &Poly2,
    g: &Poly2,
    images: &[Slope],
    technical_line: Option<&Slope>,
) -> Result<TransitionCheck, FrameError> {
    let f0 = f.constant_term();
    let g0 = g.constant_term();
    if f0.is_zero() || g0.is_zero() {
        return Err(FrameError::Transition("f and g must not vanish at the origin".into()));
    }
    if images.len() != arr.k() - 2 {
        return Err(FrameError::Transition(format!(
            "expected {} image lines, got {}",
            arr.k() - 2,
            images.len()
        )));
    }
    let ratio = &f0 / &g0;
    let mut failures = Vec::new();
    let mut forced = Vec::new();
    let restricts_to_ratio = |line: &Slope| -> bool {
        let diff = f - &g.scale(&ratio);
        diff.restrict_to_line(&line.0, &line.1).is_empty()
    };
    for (n, (source, target)) in arr.lines[2..].iter().zip(images).enumerate() {
        let index = n + 3;
        if target.0.is_zero() || target.1.is_zero() {
            return Err(FrameError::Transition(format!("image of line {index} is an axis")));
        }
        let k_i = (&source.0 * &target.1) / (&target.0 * &source.1);
        if !restricts_to_ratio(source) {
            failures.push(format!("f/g is not constant on line {index}"));
        } else if k_i != ratio {
            failures.push(format!("line {index}: f/g = {ratio} but the images force {k_i}"));
        }
        forced.push(k_i);
    }
    if forced.windows(2).any(|w| w[0] != w[1]) {
        failures.push("lines force different constants".into());
    }
    if let Some(line) = technical_line {
        if !restricts_to_ratio(line) {
            failures.push("f/g is not the common constant on the extra line".into());
        }
    }
    Ok(TransitionCheck { ratio, forced, failures })
}
