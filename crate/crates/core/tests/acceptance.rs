//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any failed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use starlog::algebra::{rat, Poly2, RatFunc2};
use starlog::classification::{classify, BInvariant, Coordinate, Verdict};
use starlog::cohomology::{
    b_cohomology, cohomology, local_global_consistency, non_b_deformation_count, poisson_cohomology,
    standard_arrangement, CohomologyTheory,
};
use starlog::divisor::samples::{disjoint_circles, empty, sphere_three_circles, sphere_two_crossing_circles};
use starlog::divisor::StarDivisorModel;
use starlog::frames::{claim_parametrization, expected_tangent_dim, tangent_basis, verify_frame_generation, LineArrangement, PolyVectorField};
use starlog::pages::{exterior_d, page_cohomology_dims, Basis, LogLaurentForm, PageModel, Theory};

const SEED: u64 = 0x5747;

/// Wall-clock budgets per criterion.
const LIMIT_SPHERE: Duration = Duration::from_secs(1);
const LIMIT_COFRAME: Duration = Duration::from_secs(10);
const LIMIT_PAGES: Duration = Duration::from_secs(30);
const LIMIT_FRAMES: Duration = Duration::from_secs(60);

/// Sizes of the randomized criteria.
const COFRAME_ARRANGEMENTS_PER_K: usize = 20;
const FRAME_ARRANGEMENTS: usize = 100;
const FRAME_MAX_DEGREE: u32 = 8;
const INVARIANT_PAIRS: usize = 1000;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn sphere_poisson() -> Check {
    let start = Instant::now();
    let d = sphere_three_circles();
    let dims = poisson_cohomology(&d).map_err(|e| e.to_string())?.dims();
    ensure(dims == (1, 3, 22), || format!("poisson dims {dims:?}"))?;
    let t = within(start, LIMIT_SPHERE)?;
    Ok(format!("poisson {dims:?} in {t:?}"))
}

fn sphere_b() -> Check {
    let start = Instant::now();
    let d = sphere_three_circles();
    let dims = b_cohomology(&d).map_err(|e| e.to_string())?.dims();
    ensure(dims == (1, 3, 10), || format!("b dims {dims:?}"))?;
    let extra = non_b_deformation_count(&d).map_err(|e| e.to_string())?;
    ensure(extra == 12, || format!("non-b count {extra}"))?;
    let t = within(start, LIMIT_SPHERE)?;
    Ok(format!("b {dims:?}, non-b directions {extra}, in {t:?}"))
}

/// Independent route: quotient rule on plain rational functions.
fn partial(f: &RatFunc2, wrt_x: bool) -> RatFunc2 {
    let d = |p: &Poly2| if wrt_x { p.partial_x() } else { p.partial_y() };
    let (n, m) = (f.numerator(), f.denominator());
    RatFunc2::new(&(&d(n) * m) - &(n * &d(m)), m * m).expect("nonzero denominator")
}

fn coframe_identity() -> Check {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut count = 0;
    for k in 3..=8usize {
        for _ in 0..COFRAME_ARRANGEMENTS_PER_K {
            let arr = LineArrangement::random(k, &mut rng);
            // R^{-1} (dx/x - dy/y)
            let generator = LogLaurentForm::from_terms(
                &arr,
                [(Poly2::one(), 1, 0, 1, Basis::Dx), (-Poly2::one(), 0, 1, 1, Basis::Dy)],
            );
            let d = exterior_d(&generator).map_err(|e| e.to_string())?;
            let volume = LogLaurentForm::from_terms(&arr, [(Poly2::constant(rat(k as i64 - 2)), 1, 1, 1, Basis::DxDy)]);
            ensure(d == volume, || format!("k={k} {arr:?}: got {d:?}"))?;
            let r = arr.extra_product();
            let (x, y) = (Poly2::x(), Poly2::y());
            let f = RatFunc2::new(Poly2::one(), &x * &r).expect("nonzero");
            let g = RatFunc2::new(-Poly2::one(), &y * &r).expect("nonzero");
            let oracle = &partial(&g, true) - &partial(&f, false);
            let target = RatFunc2::new(Poly2::constant(rat(k as i64 - 2)), &(&x * &y) * &r).expect("nonzero");
            ensure(oracle == target && d.coefficient(Basis::DxDy) == target, || format!("k={k}: oracle disagrees"))?;
            count += 1;
        }
    }
    let t = within(start, LIMIT_COFRAME)?;
    Ok(format!("{count} arrangements, k=3..8, in {t:?}"))
}

fn page_dimensions() -> Check {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(SEED + 1);
    let mut checked = 0;
    for (theory, k, expected) in (2..=8).flat_map(|k| {
        let b = if k == 2 { (0, 0, 1) } else { (0, 0, 0) };
        let z = match k {
            2 => (0, 0, 2),
            3 => (0, 0, 3),
            _ => (0, 0, 4),
        };
        [(Theory::B, k, b), (Theory::Zero, k, z)]
    }) {
        for arr in [standard_arrangement(k), LineArrangement::random(k, &mut rng)] {
            let model = PageModel::new(theory, arr.clone()).map_err(|e| e.to_string())?;
            let dims = page_cohomology_dims(&model).map_err(|e| e.to_string())?.dims();
            ensure(dims == expected, || format!("{theory} k={k}: {dims:?}, expected {expected:?}"))?;
            checked += 1;
        }
    }
    let t = within(start, LIMIT_PAGES)?;
    Ok(format!("{checked} page complexes, k=2..8, in {t:?}"))
}

fn random_arrangements() -> Vec<LineArrangement> {
    let mut rng = StdRng::seed_from_u64(SEED + 2);
    (0..FRAME_ARRANGEMENTS).map(|i| LineArrangement::random(2 + i % 5, &mut rng)).collect()
}

fn frame_generation() -> Check {
    let start = Instant::now();
    let arrangements = random_arrangements();
    for arr in &arrangements {
        let report = verify_frame_generation(arr, FRAME_MAX_DEGREE);
        for c in &report.degrees {
            ensure(c.equal(), || format!("{arr:?} degree {}: tangent {} span {}", c.degree, c.tangent_dim, c.span_dim))?;
            let closed = expected_tangent_dim(arr.k(), c.degree);
            ensure(c.tangent_dim == closed, || format!("{arr:?} degree {}: {} vs closed form {closed}", c.degree, c.tangent_dim))?;
        }
    }
    let t = within(start, LIMIT_FRAMES)?;
    Ok(format!("{} arrangements, k=2..6, m=1..{FRAME_MAX_DEGREE}, in {t:?}", arrangements.len()))
}

fn claim_round_trip() -> Check {
    let mut fields = 0;
    for arr in random_arrangements().iter().filter(|a| a.k() >= 3) {
        let (a3, b3) = &arr.lines()[2];
        if a3 == &rat(0) || b3 == &rat(0) {
            continue;
        }
        for m in 1..=FRAME_MAX_DEGREE {
            let basis = tangent_basis(arr, m);
            let combo = basis.iter().enumerate().fold(PolyVectorField::new(Poly2::zero(), Poly2::zero()), |acc, (i, v)| {
                &acc + &v.scale_by(&Poly2::constant(rat(i as i64 + 1)))
            });
            for v in basis.iter().chain(std::iter::once(&combo)) {
                let params = claim_parametrization(arr, v).map_err(|e| format!("{arr:?} m={m}: {e}"))?;
                ensure(&params.reconstruct(arr) == v, || format!("{arr:?} m={m}: reconstruction differs"))?;
                fields += 1;
            }
        }
    }
    Ok(format!("{fields} tangent fields reconstructed exactly"))
}

fn random_divisor(rng: &mut StdRng) -> StarDivisorModel {
    let n = rng.gen_range(2..=5usize);
    let labels: Vec<String> = (1..=n).map(|i| format!("Z{i}")).collect();
    let points: Vec<(String, Vec<String>)> = (0..rng.gen_range(0..=4))
        .map(|p| {
            let mut cs: Vec<String> = labels.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
            while cs.len() < 2 {
                let l = labels[rng.gen_range(0..n)].clone();
                if !cs.contains(&l) {
                    cs.push(l);
                }
            }
            (format!("p{p}"), cs)
        })
        .collect();
    StarDivisorModel::new(rng.gen_range(0..3), labels, points).expect("known labels")
}

fn perturb_one(d: &StarDivisorModel, inv: &BInvariant, rng: &mut StdRng) -> (BInvariant, Coordinate) {
    let mut out = inv.clone();
    let coords = inv.coordinates(d);
    let (name, _) = coords[rng.gen_range(0..coords.len())].clone();
    let bump = rat(if rng.gen_bool(0.5) { 1 } else { -3 });
    match &name {
        Coordinate::Volume => out.volume += bump,
        Coordinate::Period(c) => *out.periods.get_mut(c).expect("key") += bump,
        Coordinate::Residue(k) => *out.residues.get_mut(k).expect("key") += bump,
        Coordinate::Orientation => unreachable!(),
    }
    (out, name)
}

fn classification_laws() -> Check {
    let mut rng = StdRng::seed_from_u64(SEED + 3);
    let iso = |d: &StarDivisorModel, a: &BInvariant, b: &BInvariant| -> Result<bool, String> {
        classify(d, a, b).map(|v| v.is_isomorphic()).map_err(|e| e.to_string())
    };
    let mut transitive_chains = 0;
    for _ in 0..INVARIANT_PAIRS {
        let d = random_divisor(&mut rng);
        let a = BInvariant::random(&d, &mut rng);
        let b = if rng.gen_bool(0.5) { a.clone() } else { BInvariant::random(&d, &mut rng) };
        let c = if rng.gen_bool(0.5) { b.clone() } else { BInvariant::random(&d, &mut rng) };
        ensure(iso(&d, &a, &a)?, || "not reflexive".into())?;
        ensure(iso(&d, &a, &b)? == iso(&d, &b, &a)?, || "not symmetric".into())?;
        if iso(&d, &a, &b)? && iso(&d, &b, &c)? {
            transitive_chains += 1;
            ensure(iso(&d, &a, &c)?, || "not transitive".into())?;
        }
        let mut flipped = a.clone();
        flipped.orientation = flipped.orientation.flipped();
        let v = classify(&d, &a, &flipped).map_err(|e| e.to_string())?;
        ensure(v == Verdict::NotIsomorphic(Coordinate::Orientation), || format!("flip gave {v}"))?;
        let (moved, name) = perturb_one(&d, &a, &mut rng);
        let v = classify(&d, &a, &moved).map_err(|e| e.to_string())?;
        ensure(v == Verdict::NotIsomorphic(name.clone()), || format!("perturbing {name} gave {v}"))?;
    }
    Ok(format!("{INVARIANT_PAIRS} random pairs, {transitive_chains} transitive chains"))
}

fn degenerate_cases() -> Check {
    for g in 0..=5u32 {
        for t in CohomologyTheory::ALL {
            let dims = cohomology(&empty(g), t).map_err(|e| e.to_string())?.dims();
            ensure(dims == (1, 2 * g as usize, 1), || format!("empty genus {g} {t}: {dims:?}"))?;
        }
    }
    for n in 0..=8 {
        let h2 = poisson_cohomology(&disjoint_circles(0, n)).map_err(|e| e.to_string())?.dims[2];
        ensure(h2 == 1 + n, || format!("{n} disjoint circles: h2 = {h2}"))?;
    }
    let mut divisors = vec![sphere_three_circles(), sphere_two_crossing_circles(), empty(0), empty(3), disjoint_circles(2, 4)];
    let mut rng = StdRng::seed_from_u64(SEED + 4);
    divisors.extend((0..40).map(|_| random_divisor(&mut rng)));
    for d in &divisors {
        ensure(local_global_consistency(d).map_err(|e| e.to_string())?, || format!("local/global mismatch on {d:?}"))?;
    }
    Ok(format!("genus 0..5, 0..8 disjoint circles, {} consistency divisors", divisors.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 sphere poisson cohomology", sphere_poisson),
        ("2 sphere b cohomology and non-b count", sphere_b),
        ("3 coframe derivative identity", coframe_identity),
        ("4 page dimensions", page_dimensions),
        ("5 frame generation", frame_generation),
        ("6 claim round trip", claim_round_trip),
        ("7 classification laws", classification_laws),
        ("8 degenerate and consistency suite", degenerate_cases),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
