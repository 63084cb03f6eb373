//! Local models of the associated graded complexes at a point where `k`
//! divisor curves meet, for the b- and 0-tangent algebroids.
//!
//! Forms are sums of terms `N / (x^a y^b R^c)` times `1`, `dx`, `dy` or
//! `dx∧dy`, with `R = Π_{i>=3} ℓ_i` treated as a single block. Terms are
//! grouped by basis element and `R`-order; inside a group they are combined
//! over a common `x^a y^b` and cleared of common factors. Projection onto a
//! page keeps only the groups whose `R`-order equals the page's, and inside
//! them only the numerator monomials that keep the page's full `x`/`y`
//! pole order. Everything else is lower filtration.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{rank, Poly2, RatFunc2, Rational};
use crate::frames::{FrameError, LineArrangement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PageError {
    #[error("pages are modelled for k >= 2 lines, got {0}")]
    TooFewLines(usize),
    #[error("exterior derivative of a {0}-form leaves the complex")]
    DegreeTooHigh(u8),
    #[error("forms live over different arrangements")]
    ArrangementMismatch,
    #[error("term {0} is more singular than the page")]
    BeyondPage(String),
    #[error("unsupported chart: {0}")]
    UnsupportedChart(String),
    #[error("the witness needs the zero theory at k = 3")]
    WrongModel,
    #[error("witness image {0} does not match the target direction")]
    WitnessFailed(String),
    #[error(transparent)]
    Frame(#[from] FrameError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    B,
    Zero,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::B => "b",
            Theory::Zero => "zero",
        })
    }
}

/// The coordinate forms a term multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    One,
    Dx,
    Dy,
    DxDy,
}

impl Basis {
    fn degree(self) -> u8 {
        match self {
            Basis::One => 0,
            Basis::Dx | Basis::Dy => 1,
            Basis::DxDy => 2,
        }
    }
}

/// `R` and its partials for an arrangement.
#[derive(Debug, PartialEq, Eq)]
struct Chart {
    arrangement: LineArrangement,
    r: Poly2,
    r_x: Poly2,
    r_y: Poly2,
}

impl Chart {
    fn new(arrangement: &LineArrangement) -> Self {
        let r = arrangement.extra_product();
        Self { arrangement: arrangement.clone(), r_x: r.partial_x(), r_y: r.partial_y(), r }
    }

    /// With only two lines `R = 1` carries no poles.
    fn trivial_block(&self) -> bool {
        self.arrangement.k() == 2
    }
}

/// One term `numerator / (x^x_order y^y_order R^r_order) · basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub numerator: Poly2,
    pub x_order: u32,
    pub y_order: u32,
    pub r_order: u32,
    pub basis: Basis,
}

#[derive(Clone, Debug)]
pub struct LogLaurentForm {
    chart: Arc<Chart>,
    degree: u8,
    /// `(basis, R-order) -> (numerator, x order, y order)`
    groups: BTreeMap<(Basis, u32), (Poly2, u32, u32)>,
}

impl PartialEq for LogLaurentForm {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.chart.arrangement == other.chart.arrangement && self.groups == other.groups
    }
}

fn x_divides(p: &Poly2) -> bool {
    p.terms().all(|((i, _), _)| *i > 0)
}

fn y_divides(p: &Poly2) -> bool {
    p.terms().all(|((_, j), _)| *j > 0)
}

impl LogLaurentForm {
    pub fn zero(arrangement: &LineArrangement, degree: u8) -> Self {
        Self::zero_on(Arc::new(Chart::new(arrangement)), degree)
    }

    fn zero_on(chart: Arc<Chart>, degree: u8) -> Self {
        Self { chart, degree, groups: BTreeMap::new() }
    }

    fn same_chart(&self, degree: u8) -> Self {
        Self::zero_on(self.chart.clone(), degree)
    }

    /// Builds a form from `(numerator, x order, y order, R order, basis)`
    /// terms; all bases must share one degree.
    pub fn from_terms(
        arrangement: &LineArrangement,
        terms: impl IntoIterator<Item = (Poly2, u32, u32, u32, Basis)>,
    ) -> Self {
        let mut terms = terms.into_iter().peekable();
        let degree = terms.peek().map_or(0, |t| t.4.degree());
        let mut form = Self::zero(arrangement, degree);
        for (n, a, b, c, basis) in terms {
            assert_eq!(basis.degree(), degree, "mixed-degree terms");
            form.push(basis, n, a, b, c);
        }
        form
    }

    pub fn arrangement(&self) -> &LineArrangement {
        &self.chart.arrangement
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn terms(&self) -> Vec<Term> {
        self.groups
            .iter()
            .map(|((basis, r_order), (n, a, b))| Term {
                numerator: n.clone(),
                x_order: *a,
                y_order: *b,
                r_order: *r_order,
                basis: *basis,
            })
            .collect()
    }

    /// Adds a term, clearing common factors and merging with the group of
    /// the same basis and `R`-order.
    fn push(&mut self, basis: Basis, mut n: Poly2, mut a: u32, mut b: u32, mut c: u32) {
        if self.chart.trivial_block() {
            c = 0;
        }
        loop {
            if n.is_zero() {
                return;
            }
            while a > 0 && x_divides(&n) {
                n = n.exact_div(&Poly2::x()).expect("nonzero").expect("checked");
                a -= 1;
            }
            while b > 0 && y_divides(&n) {
                n = n.exact_div(&Poly2::y()).expect("nonzero").expect("checked");
                b -= 1;
            }
            while c > 0 {
                match n.exact_div(&self.chart.r).expect("R is nonzero") {
                    Some(q) => {
                        n = q;
                        c -= 1;
                    }
                    None => break,
                }
            }
            match self.groups.remove(&(basis, c)) {
                None => {
                    self.groups.insert((basis, c), (n, a, b));
                    return;
                }
                Some((m, ma, mb)) => {
                    let (ta, tb) = (a.max(ma), b.max(mb));
                    n = &n.shift(ta - a, tb - b) + &m.shift(ta - ma, tb - mb);
                    a = ta;
                    b = tb;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PageError> {
        if self.chart.arrangement != other.chart.arrangement || self.degree != other.degree {
            return Err(PageError::ArrangementMismatch);
        }
        let mut out = self.clone();
        for ((basis, c), (n, a, b)) in &other.groups {
            out.push(*basis, n.clone(), *a, *b, *c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = self.same_chart(self.degree);
        for ((basis, c), (n, a, b)) in &self.groups {
            out.push(*basis, n.scale(s), *a, *b, *c);
        }
        out
    }

    /// The coefficient of `basis` as a single rational function.
    pub fn coefficient(&self, basis: Basis) -> RatFunc2 {
        let mut total = RatFunc2::constant(Rational::zero());
        for ((bs, c), (n, a, b)) in &self.groups {
            if *bs == basis {
                let den = &Poly2::term(Rational::one(), (*a, *b)) * &self.chart.r.pow(*c);
                total = &total + &RatFunc2::new(n.clone(), den).expect("nonzero denominator");
            }
        }
        total
    }

    /// True when every coefficient vanishes as a rational function.
    pub fn is_zero_function(&self) -> bool {
        [Basis::One, Basis::Dx, Basis::Dy, Basis::DxDy].into_iter().all(|b| self.coefficient(b).is_zero())
    }

    /// Pushes `∂/∂x` (`wrt_x`) or `∂/∂y` of one term, times `sign`, into
    /// `out` under `basis`.
    fn push_partial(
        &self,
        out: &mut Self,
        basis: Basis,
        (n, a, b, c): (&Poly2, u32, u32, u32),
        wrt_x: bool,
        sign: &Rational,
    ) {
        let (dn, block) = if wrt_x { (n.partial_x(), &self.chart.r_x) } else { (n.partial_y(), &self.chart.r_y) };
        out.push(basis, dn.scale(sign), a, b, c);
        if wrt_x && a > 0 {
            out.push(basis, n.scale(&(sign * Rational::from_integer((-(a as i64)).into()))), a + 1, b, c);
        }
        if !wrt_x && b > 0 {
            out.push(basis, n.scale(&(sign * Rational::from_integer((-(b as i64)).into()))), a, b + 1, c);
        }
        if c > 0 {
            let coeff = sign * Rational::from_integer((-(c as i64)).into());
            out.push(basis, (n * block).scale(&coeff), a, b, c + 1);
        }
    }
}

/// Exterior derivative of a 0- or 1-form.
pub fn exterior_d(form: &LogLaurentForm) -> Result<LogLaurentForm, PageError> {
    let one = Rational::one();
    let minus = -Rational::one();
    let mut out = form.same_chart(form.degree + 1);
    match form.degree {
        0 => {
            for ((_, c), (n, a, b)) in &form.groups {
                form.push_partial(&mut out, Basis::Dx, (n, *a, *b, *c), true, &one);
                form.push_partial(&mut out, Basis::Dy, (n, *a, *b, *c), false, &one);
            }
        }
        1 => {
            // d(f dx + g dy) = (∂x g − ∂y f) dx∧dy
            for ((basis, c), (n, a, b)) in &form.groups {
                match basis {
                    Basis::Dx => form.push_partial(&mut out, Basis::DxDy, (n, *a, *b, *c), false, &minus),
                    Basis::Dy => form.push_partial(&mut out, Basis::DxDy, (n, *a, *b, *c), true, &one),
                    _ => unreachable!("1-forms only carry dx and dy"),
                }
            }
        }
        d => return Err(PageError::DegreeTooHigh(d)),
    }
    Ok(out)
}

/// The graded piece of filtration level `k` at one point, modelled on an
/// arrangement of `k` lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageModel {
    pub theory: Theory,
    pub arrangement: LineArrangement,
}

impl PageModel {
    pub fn new(theory: Theory, arrangement: LineArrangement) -> Result<Self, PageError> {
        if arrangement.k() < 2 {
            return Err(PageError::TooFewLines(arrangement.k()));
        }
        Ok(Self { theory, arrangement })
    }

    pub fn k(&self) -> usize {
        self.arrangement.k()
    }

    /// Pole pattern `(x, y, R)` of a maximally singular 2-form on the page.
    fn top_pattern(&self) -> (u32, u32, u32) {
        let r = if self.k() == 2 { 0 } else { 1 };
        match self.theory {
            Theory::B => (1, 1, r),
            Theory::Zero => (2, 2, 2 * r),
        }
    }

    /// Numerators, over the top pattern's denominator, of the 2-form basis.
    fn top_numerators(&self) -> Vec<(u32, u32)> {
        match self.theory {
            Theory::B => vec![(0, 0)],
            Theory::Zero => vec![(0, 0), (1, 0), (0, 1), (1, 1)],
        }
    }

    /// Coordinates of a 2-form in the page's top basis after discarding
    /// lower filtration.
    pub fn project(&self, form: &LogLaurentForm) -> Result<Vec<Rational>, PageError> {
        let (px, py, pr) = self.top_pattern();
        let slots = self.top_numerators();
        let mut coords = vec![Rational::zero(); slots.len()];
        for term in form.terms() {
            if term.basis != Basis::DxDy || term.r_order < pr {
                continue;
            }
            if term.r_order > pr || term.x_order > px || term.y_order > py {
                return Err(PageError::BeyondPage(format!("{:?}", term)));
            }
            let lifted = term.numerator.shift(px - term.x_order, py - term.y_order);
            for (slot, m) in coords.iter_mut().zip(&slots) {
                *slot += lifted.coeff(*m);
            }
        }
        Ok(coords)
    }
}

/// The finite generating set of the page in degree `p`.
pub fn page_basis(model: &PageModel, p: u8) -> Vec<LogLaurentForm> {
    let arr = &model.arrangement;
    let one = Poly2::one;
    match (model.theory, p) {
        (_, 0) => vec![],
        (Theory::B, 1) if model.k() == 2 => vec![],
        (Theory::B, 1) => vec![LogLaurentForm::from_terms(
            arr,
            [(one(), 1, 0, 1, Basis::Dx), (-one(), 0, 1, 1, Basis::Dy)],
        )],
        (Theory::B, 2) => vec![LogLaurentForm::from_terms(arr, [(one(), 1, 1, 1, Basis::DxDy)])],
        (Theory::Zero, 1) => vec![
            LogLaurentForm::from_terms(arr, [(one(), 1, 1, 1, Basis::Dx)]),
            LogLaurentForm::from_terms(arr, [(one(), 1, 1, 1, Basis::Dy)]),
        ],
        (Theory::Zero, 2) => model
            .top_numerators()
            .into_iter()
            .map(|m| LogLaurentForm::from_terms(arr, [(Poly2::term(Rational::one(), m), 2, 2, 2, Basis::DxDy)]))
            .collect(),
        _ => vec![],
    }
}

/// Dimensions of the page's cohomology, with the ranks they come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageCohomology {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    /// Rank of `d` on 1-forms as a map into all 2-forms.
    pub full_rank: usize,
    /// Rank of `d` on 1-forms after projection to the page.
    pub projected_rank: usize,
}

impl PageCohomology {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.h0, self.h1, self.h2)
    }
}

/// Coefficient rows of the 2-forms' `dx∧dy` parts over a common
/// denominator, one row per form.
fn full_coordinates(forms: &[LogLaurentForm]) -> Vec<Vec<Rational>> {
    let terms: Vec<Vec<Term>> = forms.iter().map(|f| f.terms()).collect();
    let all = terms.iter().flatten();
    let (ma, mb, mc) = all.fold((0, 0, 0), |(a, b, c), t| (a.max(t.x_order), b.max(t.y_order), c.max(t.r_order)));
    let numerators: Vec<Poly2> = forms
        .iter()
        .zip(&terms)
        .map(|(f, ts)| {
            ts.iter().fold(Poly2::zero(), |acc, t| {
                let lift = &t.numerator.shift(ma - t.x_order, mb - t.y_order) * &f.chart.r.pow(mc - t.r_order);
                &acc + &lift
            })
        })
        .collect();
    let mut monomials: Vec<_> = numerators.iter().flat_map(|n| n.terms().map(|(m, _)| *m)).collect();
    monomials.sort();
    monomials.dedup();
    numerators.iter().map(|n| monomials.iter().map(|m| n.coeff(*m)).collect()).collect()
}

/// Cohomology of the page. `h2` is the cokernel of the projected
/// differential; `h1` is the kernel of the differential on the page's
/// 1-forms taken in the full complex, which is how the local proofs read off
/// injectivity.
pub fn page_cohomology_dims(model: &PageModel) -> Result<PageCohomology, PageError> {
    let ones = page_basis(model, 1);
    let twos = page_basis(model, 2);
    let images = ones.iter().map(exterior_d).collect::<Result<Vec<_>, _>>()?;
    let projected = images.iter().map(|f| model.project(f)).collect::<Result<Vec<_>, _>>()?;
    let projected_rank = rank(&projected);
    let full = full_coordinates(&images);
    let full_rank = if full.first().is_some_and(|r| !r.is_empty()) { rank(&full) } else { 0 };
    Ok(PageCohomology {
        h0: 0,
        h1: ones.len() - full_rank,
        h2: twos.len() - projected_rank,
        full_rank,
        projected_rank,
    })
}

/// Dimensions the local vanishing and obstruction computations predict.
pub fn expected_page_dims(theory: Theory, k: usize) -> (usize, usize, usize) {
    match (theory, k) {
        (Theory::B, 2) => (0, 0, 1),
        (Theory::B, _) => (0, 0, 0),
        (Theory::Zero, 2) => (0, 0, 2),
        (Theory::Zero, 3) => (0, 0, 3),
        (Theory::Zero, _) => (0, 0, 4),
    }
}

/// At a triple point the `xy` direction of the zero page is exact:
/// `d(α dx/(xyR))` with `α = δ/B` projects to `δ · xy dx∧dy/(x²y²R²)`.
pub fn k3_solvability_witness(model: &PageModel, delta: &Rational) -> Result<(Rational, Rational), PageError> {
    if model.theory != Theory::Zero || model.k() != 3 {
        return Err(PageError::WrongModel);
    }
    let b3 = &model.arrangement.lines()[2].1;
    if b3.is_zero() {
        return Err(PageError::UnsupportedChart("B = 0 on the third line".into()));
    }
    let alpha = delta / b3;
    let beta = Rational::zero();
    let ones = page_basis(model, 1);
    let primitive = ones[0].scale(&alpha).add(&ones[1].scale(&beta))?;
    let image = model.project(&exterior_d(&primitive)?)?;
    let target = vec![Rational::zero(), Rational::zero(), Rational::zero(), delta.clone()];
    if image != target {
        return Err(PageError::WitnessFailed(format!("{image:?}")));
    }
    Ok((alpha, beta))
}
