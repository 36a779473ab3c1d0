//! Solution counts of the single-crease solvers against dense sampling of
//! each problem's one-parameter family of candidate creases.

use std::f64::consts::PI;

use hendecagon_core::fold::{solve_single_fold, SingleFoldProblem};
use hendecagon_core::geom::{line_through, perpendicular_bisector, reflect_point, Line, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 40_000;

fn sign_changes(f: impl Fn(f64) -> Option<f64>, lo: f64, hi: f64) -> usize {
    let step = (hi - lo) / SAMPLES as f64;
    let mut count = 0;
    let mut prev: Option<f64> = None;
    for i in 0..SAMPLES {
        let Some(v) = f(lo + step * (i as f64 + 0.5)) else {
            continue;
        };
        if let Some(p) = prev {
            if p.signum() != v.signum() {
                count += 1;
            }
        }
        prev = Some(v);
    }
    count
}

fn random_point(rng: &mut ChaCha8Rng) -> Point<f64> {
    Point::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0))
}

fn random_line(rng: &mut ChaCha8Rng) -> Line<f64> {
    loop {
        let (p, q) = (random_point(rng), random_point(rng));
        if p.distance_squared(&q) > 0.25 {
            return line_through(&p, &q).unwrap();
        }
    }
}

fn check_residuals(problem: &SingleFoldProblem, folds: &[Line<f64>]) {
    for f in folds {
        assert!(
            problem.residual(f) < 1e-8,
            "{problem:?}: residual {}",
            problem.residual(f)
        );
    }
}

#[test]
fn point_onto_line_through_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let (point, line, through) = (
            random_point(&mut rng),
            random_line(&mut rng),
            random_point(&mut rng),
        );
        if point.distance_squared(&through) < 0.25 || line.evaluate(&point).abs() < 0.1 {
            continue;
        }
        // Creases through `through` at angle θ ∈ [0, π).
        let scan = sign_changes(
            |theta| {
                let dir = Point::new(through.x + theta.cos(), through.y + theta.sin());
                let crease = line_through(&through, &dir).ok()?;
                Some(line.evaluate(&reflect_point(&point, &crease)))
            },
            0.0,
            PI,
        );
        // The angle is periodic: an odd count means a crossing at the seam.
        let problem = SingleFoldProblem::PointOntoLineThrough {
            point,
            line,
            through,
        };
        let folds = solve_single_fold(&problem).unwrap_or_default();
        assert_eq!(folds.len(), scan + scan % 2, "{problem:?}");
        check_residuals(&problem, &folds);
    }
}

#[test]
fn two_points_onto_two_lines() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut by_count = [0usize; 4];
    let mut tested = 0;
    while tested < 100 {
        let (p1, l1, p2, l2) = (
            random_point(&mut rng),
            random_line(&mut rng),
            random_point(&mut rng),
            random_line(&mut rng),
        );
        if l1.evaluate(&p1).abs() < 0.1
            || l2.evaluate(&p2).abs() < 0.1
            || p1.distance_squared(&p2) < 0.25
        {
            continue;
        }
        tested += 1;
        // Creases sending p1 to u = foot + tan(φ)·dir on l1.
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
        );
        let problem = SingleFoldProblem::TwoPointsOntoTwoLines { p1, l1, p2, l2 };
        let folds = solve_single_fold(&problem).unwrap_or_default();
        assert_eq!(folds.len(), scan, "{problem:?}");
        assert!(folds.len() <= 3);
        by_count[folds.len()] += 1;
        check_residuals(&problem, &folds);
    }
    assert!(by_count[3] > 0 && by_count[1] > 0, "{by_count:?}");
}

#[test]
fn line_onto_line() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..100 {
        let from = random_line(&mut rng);
        let to = if i % 10 == 0 {
            let (a, b, c) = from.coefficients();
            Line::new(a, b, c + rng.gen_range(0.5..2.0)).unwrap()
        } else {
            random_line(&mut rng)
        };
        let (fa, fb) = from.direction();
        let (ta, tb) = to.direction();
        let (alpha, beta) = (fb.atan2(fa), tb.atan2(ta));
        // A crease at angle θ maps direction α to 2θ − α.
        let scan = sign_changes(|theta| Some((2.0 * theta - alpha - beta).sin()), 0.0, PI);
        let expected = if from.is_parallel(&to) {
            1
        } else {
            scan + scan % 2
        };
        let problem = SingleFoldProblem::LineOntoLine { from, to };
        let folds = solve_single_fold(&problem).unwrap();
        assert_eq!(folds.len(), expected, "{problem:?}");
        check_residuals(&problem, &folds);
    }
}

#[test]
fn point_onto_line_perpendicular() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let (point, line, perpendicular_to) = (
            random_point(&mut rng),
            random_line(&mut rng),
            random_line(&mut rng),
        );
        let expected = if line.is_parallel(&perpendicular_to) {
            0
        } else {
            1
        };
        let problem = SingleFoldProblem::PointOntoLinePerpendicular {
            point,
            line,
            perpendicular_to,
        };
        let folds = solve_single_fold(&problem).unwrap_or_default();
        assert_eq!(folds.len(), expected, "{problem:?}");
        check_residuals(&problem, &folds);
    }
}

#[test]
fn solutions_are_sorted_and_distinct() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let problem = SingleFoldProblem::TwoPointsOntoTwoLines {
            p1: random_point(&mut rng),
            l1: random_line(&mut rng),
            p2: random_point(&mut rng),
            l2: random_line(&mut rng),
        };
        let Ok(folds) = solve_single_fold(&problem) else {
            continue;
        };
        for w in folds.windows(2) {
            assert!(w[0].defect(&w[1]) > 1e-9);
        }
        assert_eq!(solve_single_fold(&problem).unwrap(), folds);
    }
}
