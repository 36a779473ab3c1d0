//! The acceptance criteria, each checked against an oracle that does not go
//! through the code path under test (trig values, the chord formula, Euler's
//! totient, sign scans on dense grids).

use std::f64::consts::PI;

use hendecagon_core::construction::{hendecagon_script, run_script, VERTEX_IDS};
use hendecagon_core::cyclotomic::{classify_constructible, halved_cyclotomic};
use hendecagon_core::fold::{
    eliminate_to_quintic, gamma_line_from_s, gamma_line_from_t, s_from_t, solve_single_fold,
    solve_two_fold, SingleFoldProblem, TwoFoldConfig,
};
use hendecagon_core::geom::{
    line_through, perpendicular_bisector, reflect_line, reflect_point, Line, Point,
};
use hendecagon_core::poly::RatPoly;
use hendecagon_core::Rational;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ROOT_TOL: f64 = 1e-9;
pub const INCIDENCE_TOL: f64 = 1e-9;
pub const PARAMETERIZATION_TOL: f64 = 1e-10;
pub const FLOAT_REFLECTION_TOL: f64 = 1e-12;
pub const CONSTRUCTION_TOL: f64 = 1e-9;

const SEED: u64 = 0x11_0b;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub number: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{verdict}] {}. {}: {}",
            self.number, self.name, self.detail
        )
    }
}

fn outcome(number: u32, name: &'static str, result: Result<String, String>) -> Outcome {
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome {
        number,
        name,
        passed,
        detail,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn trig_roots(n: u64) -> Vec<f64> {
    let mut v: Vec<f64> = (1..=(n - 1) / 2)
        .map(|k| 2.0 * (2.0 * PI * k as f64 / n as f64).cos())
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn quintic_reproduction() -> Outcome {
    let result = (|| {
        let expected = RatPoly::from_ints(&[1, 3, -3, -4, 1, 1]);
        let cyclo = halved_cyclotomic(11).map_err(|e| e.to_string())?.poly;
        let elim = eliminate_to_quintic(&TwoFoldConfig::hendecagon()).map_err(|e| e.to_string())?;
        ensure(cyclo == expected, || {
            format!("halved cyclotomic gave {cyclo}")
        })?;
        ensure(elim == expected, || format!("elimination gave {elim}"))?;
        Ok(format!("both routes give {expected}"))
    })();
    outcome(1, "exact quintic", result)
}

pub fn root_census() -> Outcome {
    let result = (|| {
        let quintic = RatPoly::from_ints(&[1, 3, -3, -4, 1, 1]);
        let intervals = quintic.isolate_real_roots();
        ensure(intervals.len() == 5, || {
            format!("{} isolating intervals", intervals.len())
        })?;
        let mut roots: Vec<f64> = intervals
            .iter()
            .map(|iv| quintic.refine_root(iv, 1e-12))
            .collect();
        roots.sort_by(f64::total_cmp);
        let oracle = trig_roots(11);
        let gap = roots
            .iter()
            .zip(&oracle)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        ensure(gap <= ROOT_TOL, || format!("root gap {gap:e}"))?;
        let largest = roots[4];
        let printed = (largest * 1e4).round() / 1e4;
        ensure(printed == 1.6825, || {
            format!("largest root {largest} rounds to {printed}")
        })?;
        Ok(format!(
            "5 roots, max gap to 2cos(2πk/11) {gap:.1e}, largest {largest:.10}"
        ))
    })();
    outcome(2, "root census", result)
}

pub fn two_fold_residuals() -> Outcome {
    let result = (|| {
        let solutions = solve_two_fold(&TwoFoldConfig::hendecagon(), INCIDENCE_TOL)
            .map_err(|e| e.to_string())?;
        let (p, q) = (Point::new(-2.5, -3.0), Point::new(0.0, 1.0));
        let ell = Line::vertical(0.0);
        let (m, n) = (Line::vertical(-1.5), Line::horizontal(-1.0));
        let mut worst = 0.0f64;
        for sol in &solutions {
            let residuals = [
                n.evaluate(&reflect_point(&q, &sol.delta)).abs(),
                m.evaluate(&reflect_point(&p, &sol.gamma)).abs(),
                reflect_line(&ell, &sol.delta).defect(&sol.gamma),
            ];
            worst = residuals.iter().copied().fold(worst, f64::max);
        }
        ensure(solutions.len() == 5, || {
            format!("{} solutions", solutions.len())
        })?;
        ensure(worst <= INCIDENCE_TOL, || {
            format!("worst residual {worst:e}")
        })?;
        Ok(format!("5 solutions, worst residual {worst:.1e}"))
    })();
    outcome(3, "two-fold incidence", result)
}

pub fn gamma_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = (0.0f64, 0.0f64);
    let mut errors = 0;
    let mut sampled = 0;
    while sampled < 1000 {
        let t: f64 = rng.gen_range(-3.0..3.0);
        if t.abs() < 1e-6 || (t.abs() - 1.0).abs() < 1e-6 {
            continue;
        }
        sampled += 1;
        let lines = s_from_t(&t)
            .and_then(|s| gamma_line_from_s(&s))
            .and_then(|from_s| Ok((from_s, gamma_line_from_t(&t)?)));
        let Ok((from_s, from_t)) = lines else {
            errors += 1;
            continue;
        };
        let (a1, b1, c1) = from_s.coefficients();
        let (a2, b2, c2) = from_t.coefficients();
        let gap = (a1 - a2).abs().max((b1 - b2).abs()).max((c1 - c2).abs());
        if gap > worst.0 {
            worst = (gap, t);
        }
    }
    let passed = errors == 0 && worst.0 <= PARAMETERIZATION_TOL;
    let at_roots = trig_roots(11)
        .into_iter()
        .filter_map(|t| {
            let from_s = gamma_line_from_s(&s_from_t(&t).ok()?).ok()?;
            Some(from_s.defect(&gamma_line_from_t(&t).ok()?))
        })
        .fold(0.0, f64::max);
    let detail = format!(
        "1000 random t, max coefficient gap {:.3e} at t = {:.6}, {errors} singular; \
         gap at the 5 quintic roots {at_roots:.1e}",
        worst.0, worst.1
    );
    Outcome {
        number: 4,
        name: "γ parameterizations agree",
        passed,
        detail,
    }
}

fn totient(n: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

pub fn constructibility_table() -> Outcome {
    let result = (|| {
        let failing: Vec<u64> = (3..=31)
            .filter(|&n| !classify_constructible(n).single_fold_constructible)
            .collect();
        ensure(failing == [11, 22, 23, 25, 29, 31], || {
            format!("non-constructible: {failing:?}")
        })?;
        for n in [7, 9] {
            ensure(classify_constructible(n).single_fold_constructible, || {
                format!("{n} rejected")
            })?;
        }
        // A polygon is single-fold constructible iff φ(n) is 3-smooth.
        for n in 3..=100u64 {
            let mut phi = totient(n);
            for p in [2, 3] {
                while phi.is_multiple_of(p) {
                    phi /= p;
                }
            }
            let expected = phi == 1;
            ensure(
                classify_constructible(n).single_fold_constructible == expected,
                || format!("n = {n} disagrees with the totient test"),
            )?;
        }
        Ok("non-constructible {11, 22, 23, 25, 29, 31}; 7 and 9 constructible".into())
    })();
    outcome(5, "constructibility table", result)
}

pub fn end_to_end() -> Outcome {
    let result = (|| {
        let state =
            run_script(&hendecagon_script(), CONSTRUCTION_TOL).map_err(|e| e.to_string())?;
        let max = state.max_residual();
        ensure(max <= CONSTRUCTION_TOL, || format!("max residual {max:e}"))?;
        let center = Point::new(0.0, -1.0);
        let qp = state.point("Qp").ok_or("Q' missing")?;
        let q_gap = (qp.distance_squared(&center).sqrt() - 4.0 * (2.0 * PI / 11.0).cos()).abs();
        ensure(q_gap <= CONSTRUCTION_TOL, || {
            format!("|Q' - O| off by {q_gap:e}")
        })?;
        let mut vertices = Vec::new();
        for (k, id) in VERTEX_IDS.iter().enumerate() {
            let v = state.point(id).ok_or_else(|| format!("{id} missing"))?;
            let angle = 2.0 * PI * k as f64 / 11.0;
            let oracle = Point::new(4.0 * angle.cos(), -1.0 + 4.0 * angle.sin());
            let gap = v.distance_squared(&oracle).sqrt();
            ensure(gap <= CONSTRUCTION_TOL, || format!("{id} off by {gap:e}"))?;
            vertices.push(v.clone());
        }
        let chord = 8.0 * (PI / 11.0).sin();
        let side_gap = (0..11)
            .map(|k| (vertices[k].distance_squared(&vertices[(k + 1) % 11]).sqrt() - chord).abs())
            .fold(0.0, f64::max);
        ensure(side_gap <= CONSTRUCTION_TOL, || {
            format!("side length off by {side_gap:e}")
        })?;
        Ok(format!(
            "{} steps, max residual {max:.1e}, side gap {side_gap:.1e}",
            state.records.len()
        ))
    })();
    outcome(6, "end-to-end construction", result)
}

fn rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(-60..=60)),
        BigInt::from(rng.gen_range(1..=12)),
    )
}

fn reflection_properties(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..200 {
        let p = Point::new(rational(rng), rational(rng));
        let q = Point::new(rational(rng), rational(rng));
        let (a, b) = (
            Point::new(rational(rng), rational(rng)),
            Point::new(rational(rng), rational(rng)),
        );
        let Ok(axis) = line_through(&a, &b) else {
            continue;
        };
        let rp = reflect_point(&p, &axis);
        ensure(reflect_point(&rp, &axis) == p, || "exact involution".into())?;
        ensure(
            rp.distance_squared(&reflect_point(&q, &axis)) == p.distance_squared(&q),
            || "exact isometry".into(),
        )?;
    }
    for _ in 0..2000 {
        let mut pt = || Point::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let (p, q, a, b) = (pt(), pt(), pt(), pt());
        if a.distance_squared(&b) < 1e-2 {
            continue;
        }
        let axis = line_through(&a, &b).map_err(|e| e.to_string())?;
        let rp = reflect_point(&p, &axis);
        let back = reflect_point(&rp, &axis).distance_squared(&p).sqrt();
        ensure(back <= FLOAT_REFLECTION_TOL, || {
            format!("float involution drift {back:e}")
        })?;
        let stretch = (rp.distance_squared(&reflect_point(&q, &axis)).sqrt()
            - p.distance_squared(&q).sqrt())
        .abs();
        ensure(stretch <= FLOAT_REFLECTION_TOL, || {
            format!("float isometry drift {stretch:e}")
        })?;
    }
    Ok(())
}

fn sturm_properties(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..200 {
        // Distinct rational roots with multiplicities, optionally times x² + c.
        let mut roots: Vec<(Rational, u32)> = Vec::new();
        let quadratic = rng.gen_bool(0.5).then(|| rng.gen_range(1..=5i64));
        let mut degree = if quadratic.is_some() { 2 } else { 0 };
        for _ in 0..rng.gen_range(0..=4) {
            let r = Rational::new(
                BigInt::from(rng.gen_range(-20..=20)),
                BigInt::from(rng.gen_range(1..=3)),
            );
            let m = rng.gen_range(1..=3u32);
            if degree + m <= 6 && roots.iter().all(|(s, _)| *s != r) {
                degree += m;
                roots.push((r, m));
            }
        }
        let mut poly = RatPoly::from_ints(&[1]);
        for (r, m) in &roots {
            poly =
                &poly * &RatPoly::new(vec![-r.clone(), Rational::from_integer(1.into())]).pow(*m);
        }
        if let Some(c) = quadratic {
            poly = &poly * &RatPoly::from_ints(&[c, 0, 1]);
        }
        if poly.is_constant() {
            continue;
        }
        let float_roots: Vec<f64> = roots.iter().filter_map(|(r, _)| r.to_f64()).collect();
        let square_free = |x: f64| {
            let v: f64 = float_roots.iter().map(|r| x - r).product();
            v * quadratic.map_or(1.0, |c| x * x + c as f64)
        };
        let scanned = sign_changes(|x| Some(square_free(x)), -25.0, 25.0, 100_000);
        let counted = poly.count_real_roots();
        ensure(scanned == counted && counted == roots.len(), || {
            format!(
                "{poly}: Sturm {counted}, scan {scanned}, built {}",
                roots.len()
            )
        })?;
    }
    Ok(())
}

fn sign_changes(f: impl Fn(f64) -> Option<f64>, lo: f64, hi: f64, samples: usize) -> usize {
    let step = (hi - lo) / samples as f64;
    let mut count = 0;
    let mut prev: Option<f64> = None;
    for i in 0..samples {
        let Some(v) = f(lo + step * (i as f64 + 0.414_213_562)) else {
            continue;
        };
        if prev.is_some_and(|p| p.signum() != v.signum()) {
            count += 1;
        }
        prev = Some(v);
    }
    count
}

fn single_fold_census(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let pt = |rng: &mut ChaCha8Rng| Point::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
    let mut instances = 0;
    while instances < 100 {
        let (p1, p2) = (pt(rng), pt(rng));
        let (a, b, c, d) = (pt(rng), pt(rng), pt(rng), pt(rng));
        if a.distance_squared(&b) < 0.25 || c.distance_squared(&d) < 0.25 {
            continue;
        }
        let l1 = line_through(&a, &b).map_err(|e| e.to_string())?;
        let l2 = line_through(&c, &d).map_err(|e| e.to_string())?;
        if l1.evaluate(&p1).abs() < 0.1
            || l2.evaluate(&p2).abs() < 0.1
            || p1.distance_squared(&p2) < 0.25
        {
            continue;
        }
        instances += 1;
        // Two points onto two lines: creases sending p1 to foot + tan(φ)·dir on l1.
        let (foot, _) = l1.two_points();
        let (dx, dy) = l1.direction();
        let scan = sign_changes(
            |phi| {
                let tau = phi.tan();
                let u = Point::new(foot.x + tau * dx, foot.y + tau * dy);
                let crease = perpendicular_bisector(&p1, &u).ok()?;
                Some(l2.evaluate(&reflect_point(&p2, &crease)))
            },
            -PI / 2.0,
            PI / 2.0,
            20_000,
        );
        let problem = SingleFoldProblem::TwoPointsOntoTwoLines {
            p1: p1.clone(),
            l1: l1.clone(),
            p2: p2.clone(),
            l2,
        };
        let found = solve_single_fold(&problem).map(|v| v.len()).unwrap_or(0);
        ensure(found == scan, || {
            format!("{problem:?}: solver {found}, scan {scan}")
        })?;

        // Point onto line with a crease through a point: creases at angle θ.
        let through = p2;
        let scan = sign_changes(
            |theta| {
                let dir = Point::new(through.x + f64::cos(theta), through.y + f64::sin(theta));
                let crease = line_through(&through, &dir).ok()?;
                Some(l1.evaluate(&reflect_point(&p1, &crease)))
            },
            0.0,
            PI,
            20_000,
        );
        let problem = SingleFoldProblem::PointOntoLineThrough {
            point: p1,
            line: l1,
            through,
        };
        let found = solve_single_fold(&problem).map(|v| v.len()).unwrap_or(0);
        ensure(found == scan + scan % 2, || {
            format!("{problem:?}: solver {found}, scan {scan}")
        })?;
    }
    Ok(())
}

pub fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let result = reflection_properties(&mut rng)
        .and_then(|_| sturm_properties(&mut rng))
        .and_then(|_| single_fold_census(&mut rng))
        .map(|_| {
            "reflections, Sturm counts and single-fold census agree with their oracles".into()
        });
    outcome(7, "property suites", result)
}

pub fn run_all() -> Vec<Outcome> {
    vec![
        quintic_reproduction(),
        root_census(),
        two_fold_residuals(),
        gamma_identity(),
        constructibility_table(),
        end_to_end(),
        property_suites(),
    ]
}
