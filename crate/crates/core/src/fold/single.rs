//! The seven single-crease alignment problems.
//!
//! Problems with several solutions return them sorted by line coefficients
//! `(a, b, c)`, so callers can select one by index deterministically.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::FoldError;
use crate::geom::{
    line_through, perpendicular_bisector, reflect_line, reflect_point, GeomError, Line, Point,
};
use crate::poly::{RatPoly, DEFAULT_REFINE_WIDTH};

/// Lines closer than this are reported once.
const DUPLICATE_TOL: f64 = 1e-9;

/// Which alignment a single crease must achieve.
#[derive(Debug, Clone, PartialEq)]
pub enum SingleFoldProblem {
    /// Crease through two points.
    ThroughPoints { p: Point<f64>, q: Point<f64> },
    /// Bring point `p` onto point `q`.
    PointOntoPoint { p: Point<f64>, q: Point<f64> },
    /// Bring line `from` onto line `to`.
    LineOntoLine { from: Line<f64>, to: Line<f64> },
    /// Crease through `point` perpendicular to `line`.
    PerpendicularThrough { point: Point<f64>, line: Line<f64> },
    /// Bring `point` onto `line` with a crease through `through`.
    PointOntoLineThrough {
        point: Point<f64>,
        line: Line<f64>,
        through: Point<f64>,
    },
    /// Bring `p1` onto `l1` and `p2` onto `l2` with one crease.
    TwoPointsOntoTwoLines {
        p1: Point<f64>,
        l1: Line<f64>,
        p2: Point<f64>,
        l2: Line<f64>,
    },
    /// Bring `point` onto `line` with a crease perpendicular to `perpendicular_to`.
    PointOntoLinePerpendicular {
        point: Point<f64>,
        line: Line<f64>,
        perpendicular_to: Line<f64>,
    },
}

/// Tag for the alignment variants, shared with the script format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    ThroughPoints,
    PointOntoPoint,
    LineOntoLine,
    PerpendicularThrough,
    PointOntoLineThrough,
    TwoPointsOntoTwoLines,
    PointOntoLinePerpendicular,
}

impl SingleFoldProblem {
    pub fn axiom(&self) -> Axiom {
        match self {
            SingleFoldProblem::ThroughPoints { .. } => Axiom::ThroughPoints,
            SingleFoldProblem::PointOntoPoint { .. } => Axiom::PointOntoPoint,
            SingleFoldProblem::LineOntoLine { .. } => Axiom::LineOntoLine,
            SingleFoldProblem::PerpendicularThrough { .. } => Axiom::PerpendicularThrough,
            SingleFoldProblem::PointOntoLineThrough { .. } => Axiom::PointOntoLineThrough,
            SingleFoldProblem::TwoPointsOntoTwoLines { .. } => Axiom::TwoPointsOntoTwoLines,
            SingleFoldProblem::PointOntoLinePerpendicular { .. } => {
                Axiom::PointOntoLinePerpendicular
            }
        }
    }

    /// How far `fold` is from achieving the alignment (0 for an exact fold).
    pub fn residual(&self, fold: &Line<f64>) -> f64 {
        let on = |p: &Point<f64>, l: &Line<f64>| l.evaluate(p).abs();
        match self {
            SingleFoldProblem::ThroughPoints { p, q } => on(p, fold).max(on(q, fold)),
            SingleFoldProblem::PointOntoPoint { p, q } => {
                reflect_point(p, fold).distance_squared(q).sqrt()
            }
            SingleFoldProblem::LineOntoLine { from, to } => reflect_line(from, fold).defect(to),
            SingleFoldProblem::PerpendicularThrough { point, line } => {
                let (a, b, _) = fold.coefficients();
                let (c, d, _) = line.coefficients();
                on(point, fold).max((a * c + b * d).abs())
            }
            SingleFoldProblem::PointOntoLineThrough {
                point,
                line,
                through,
            } => on(&reflect_point(point, fold), line).max(on(through, fold)),
            SingleFoldProblem::TwoPointsOntoTwoLines { p1, l1, p2, l2 } => {
                on(&reflect_point(p1, fold), l1).max(on(&reflect_point(p2, fold), l2))
            }
            SingleFoldProblem::PointOntoLinePerpendicular {
                point,
                line,
                perpendicular_to,
            } => {
                let (a, b, _) = fold.coefficients();
                let (c, d, _) = perpendicular_to.coefficients();
                on(&reflect_point(point, fold), line).max((a * c + b * d).abs())
            }
        }
    }
}

/// Every crease achieving the alignment described by `problem`.
pub fn solve_single_fold(problem: &SingleFoldProblem) -> Result<Vec<Line<f64>>, FoldError> {
    let mut lines = match problem {
        SingleFoldProblem::ThroughPoints { p, q } => {
            vec![line_through(p, q).map_err(|_| degenerate("fold through coincident points"))?]
        }
        SingleFoldProblem::PointOntoPoint { p, q } => {
            vec![perpendicular_bisector(p, q).map_err(|_| degenerate("point onto itself"))?]
        }
        SingleFoldProblem::LineOntoLine { from, to } => line_onto_line(from, to)?,
        SingleFoldProblem::PerpendicularThrough { point, line } => {
            let (a, b, _) = line.coefficients();
            vec![Line::new(-b, a, b * point.x - a * point.y)?]
        }
        SingleFoldProblem::PointOntoLineThrough {
            point,
            line,
            through,
        } => point_onto_line_through(point, line, through)?,
        SingleFoldProblem::TwoPointsOntoTwoLines { p1, l1, p2, l2 } => {
            two_points_onto_two_lines(p1, l1, p2, l2)?
        }
        SingleFoldProblem::PointOntoLinePerpendicular {
            point,
            line,
            perpendicular_to,
        } => point_onto_line_perpendicular(point, line, perpendicular_to)?,
    };
    lines.sort_by(|l, m| {
        let (a, b) = (l.coefficients(), m.coefficients());
        a.0.total_cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.total_cmp(&b.2))
    });
    lines.dedup_by(|l, m| l.defect(m) < DUPLICATE_TOL);
    Ok(lines)
}

fn degenerate(what: &'static str) -> FoldError {
    FoldError::DegenerateProblem(what)
}

fn line_onto_line(from: &Line<f64>, to: &Line<f64>) -> Result<Vec<Line<f64>>, FoldError> {
    let (a1, b1, c1) = from.coefficients();
    let (a2, b2, c2) = to.coefficients();
    if from.is_parallel(to) {
        if from.defect(to) < DUPLICATE_TOL {
            return Err(degenerate("line onto itself"));
        }
        // Align orientation before averaging the offsets.
        let s = if a1 * a2 + b1 * b2 < 0.0 { -1.0 } else { 1.0 };
        return Ok(vec![Line::new(a1, b1, (c1 + s * c2) / 2.0)?]);
    }
    Ok(vec![
        Line::new(a1 - a2, b1 - b2, c1 - c2)?,
        Line::new(a1 + a2, b1 + b2, c1 + c2)?,
    ])
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite coordinate")
}

/// `(anchor, direction)` of a line, both exact.
fn exact_param(l: &Line<f64>) -> ((BigRational, BigRational), (BigRational, BigRational)) {
    let (p, _) = l.two_points();
    let (dx, dy) = l.direction();
    ((exact(p.x), exact(p.y)), (exact(dx), exact(dy)))
}

/// Coordinates of `anchor + u·dir` as linear polynomials in `u`.
fn param_coords(
    anchor: &(BigRational, BigRational),
    dir: &(BigRational, BigRational),
) -> (RatPoly, RatPoly) {
    (
        RatPoly::new(vec![anchor.0.clone(), dir.0.clone()]),
        RatPoly::new(vec![anchor.1.clone(), dir.1.clone()]),
    )
}

/// Creases carrying `p` to the images `anchor + u·dir` for each real root `u`.
fn creases_from_images(
    p: &Point<f64>,
    line: &Line<f64>,
    roots: Vec<f64>,
    fallback: impl Fn() -> Result<Line<f64>, GeomError>,
) -> Result<Vec<Line<f64>>, FoldError> {
    let (anchor, _) = line.two_points();
    let (dx, dy) = line.direction();
    let mut out = Vec::new();
    for u in roots {
        let image = Point::new(anchor.x + u * dx, anchor.y + u * dy);
        match perpendicular_bisector(p, &image) {
            Ok(l) => out.push(l),
            Err(GeomError::CoincidentPoints) => out.push(fallback()?),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn point_onto_line_through(
    p: &Point<f64>,
    line: &Line<f64>,
    through: &Point<f64>,
) -> Result<Vec<Line<f64>>, FoldError> {
    if p.coincides(through) {
        return Err(degenerate("pivot coincides with the moving point"));
    }
    // Image p' = anchor + u·dir lies on the circle about `through` of radius |p − through|.
    let (anchor, dir) = exact_param(line);
    let (x, y) = param_coords(&anchor, &dir);
    let (tx, ty) = (exact(through.x), exact(through.y));
    let (rx, ry) = (exact(p.x) - &tx, exact(p.y) - &ty);
    let radius_sq = &rx * &rx + &ry * &ry;
    let dxp = &x - &RatPoly::constant(tx.clone());
    let dyp = &y - &RatPoly::constant(ty.clone());
    let eq = &(&(&dxp * &dxp) + &(&dyp * &dyp)) - &RatPoly::constant(radius_sq);
    let roots = eq.real_roots(DEFAULT_REFINE_WIDTH);
    creases_from_images(p, line, roots, || line_through(p, through))
}

fn two_points_onto_two_lines(
    p1: &Point<f64>,
    l1: &Line<f64>,
    p2: &Point<f64>,
    l2: &Line<f64>,
) -> Result<Vec<Line<f64>>, FoldError> {
    // Image p1' = anchor + u·dir on l1. The crease is the perpendicular
    // bisector w·X = k with w = p1' − p1 and k = (|p1'|² − |p1|²)/2. Requiring
    // the reflection of p2 to land on l2, scaled by |w|², gives a cubic in u:
    //   |w|²·l2(p2) − 2·(w·p2 − k)·(a2·w_x + b2·w_y) = 0.
    let (anchor, dir) = exact_param(l1);
    let (x, y) = param_coords(&anchor, &dir);
    let (p1x, p1y) = (exact(p1.x), exact(p1.y));
    let (p2x, p2y) = (exact(p2.x), exact(p2.y));
    let (a2, b2, c2) = l2.coefficients();
    let (a2, b2, c2) = (exact(a2), exact(b2), exact(c2));

    let wx = &x - &RatPoly::constant(p1x.clone());
    let wy = &y - &RatPoly::constant(p1y.clone());
    let half = BigRational::new(1.into(), 2.into());
    let k =
        (&(&(&x * &x) + &(&y * &y)) - &RatPoly::constant(&p1x * &p1x + &p1y * &p1y)).scale(&half);
    let norm_sq = &(&wx * &wx) + &(&wy * &wy);
    let l2_at_p2 = &a2 * &p2x + &b2 * &p2y + &c2;
    let along = &(&wx.scale(&p2x) + &wy.scale(&p2y)) - &k;
    let normal_dot = &wx.scale(&a2) + &wy.scale(&b2);
    let two = BigRational::from_integer(2.into());
    let eq = &norm_sq.scale(&l2_at_p2) - &(&along * &normal_dot).scale(&two);
    if eq.is_zero() {
        return Err(degenerate(
            "two-point alignment has infinitely many creases",
        ));
    }
    // Roots with p1' = p1 are spurious: |w|² vanishes there.
    let roots = eq
        .real_roots(DEFAULT_REFINE_WIDTH)
        .into_iter()
        .filter(|&u| {
            let (a, _) = l1.two_points();
            let (dx, dy) = l1.direction();
            !Point::new(a.x + u * dx, a.y + u * dy).coincides(p1)
        })
        .collect();
    creases_from_images(p1, l1, roots, || Err(GeomError::CoincidentPoints))
}

fn point_onto_line_perpendicular(
    p: &Point<f64>,
    line: &Line<f64>,
    perpendicular_to: &Line<f64>,
) -> Result<Vec<Line<f64>>, FoldError> {
    // The crease normal is the direction of `perpendicular_to`, so p moves along it.
    let (dx, dy) = perpendicular_to.direction();
    let (a, b, _) = line.coefficients();
    let along = a * dx + b * dy;
    let offset = line.evaluate(p);
    if along.abs() <= 1e-12 {
        return if offset.abs() <= 1e-12 {
            Err(degenerate("point already on a line parallel to the motion"))
        } else {
            Ok(Vec::new())
        };
    }
    let lambda = -offset / along;
    let foot = Point::new(p.x + lambda / 2.0 * dx, p.y + lambda / 2.0 * dy);
    Ok(vec![Line::new(dx, dy, -(dx * foot.x + dy * foot.y))?])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Point<f64> {
        Point::new(x, y)
    }

    fn check_all(problem: &SingleFoldProblem, lines: &[Line<f64>]) {
        for l in lines {
            assert!(
                problem.residual(l) < 1e-9,
                "{problem:?} residual {}",
                problem.residual(l)
            );
        }
    }

    #[test]
    fn point_onto_point_gives_line_n() {
        let prob = SingleFoldProblem::PointOntoPoint {
            p: pt(0.0, 1.0),
            q: pt(0.0, -3.0),
        };
        let lines = solve_single_fold(&prob).unwrap();
        assert_eq!(lines, vec![Line::horizontal(-1.0)]);
        let same = SingleFoldProblem::PointOntoPoint {
            p: pt(1.0, 1.0),
            q: pt(1.0, 1.0),
        };
        assert!(matches!(
            solve_single_fold(&same),
            Err(FoldError::DegenerateProblem(_))
        ));
    }

    #[test]
    fn line_onto_line_gives_m() {
        let prob = SingleFoldProblem::LineOntoLine {
            from: Line::vertical(0.0),
            to: Line::vertical(-3.0),
        };
        assert_eq!(
            solve_single_fold(&prob).unwrap(),
            vec![Line::vertical(-1.5)]
        );
        let crossing = SingleFoldProblem::LineOntoLine {
            from: Line::vertical(0.0),
            to: Line::horizontal(0.0),
        };
        let lines = solve_single_fold(&crossing).unwrap();
        assert_eq!(lines.len(), 2);
        check_all(&crossing, &lines);
        let same = SingleFoldProblem::LineOntoLine {
            from: Line::vertical(2.0),
            to: Line::vertical(2.0),
        };
        assert!(solve_single_fold(&same).is_err());
    }

    #[test]
    fn perpendicular_through_origin() {
        let prob = SingleFoldProblem::PerpendicularThrough {
            point: pt(0.0, 0.0),
            line: Line::horizontal(0.0),
        };
        assert_eq!(solve_single_fold(&prob).unwrap(), vec![Line::vertical(0.0)]);
    }

    #[test]
    fn point_onto_line_through_pivot() {
        // Rotate A = (4, -1) about O = (0, -1) onto x = 2.
        let prob = SingleFoldProblem::PointOntoLineThrough {
            point: pt(4.0, -1.0),
            line: Line::vertical(2.0),
            through: pt(0.0, -1.0),
        };
        let lines = solve_single_fold(&prob).unwrap();
        assert_eq!(lines.len(), 2);
        check_all(&prob, &lines);
        let far = SingleFoldProblem::PointOntoLineThrough {
            point: pt(1.0, 0.0),
            line: Line::vertical(5.0),
            through: pt(0.0, 0.0),
        };
        assert!(solve_single_fold(&far).unwrap().is_empty());
    }

    #[test]
    fn point_onto_line_already_on_line() {
        // p lies on the target line: folding through p and the pivot keeps it there.
        let prob = SingleFoldProblem::PointOntoLineThrough {
            point: pt(0.0, 0.0),
            line: Line::horizontal(0.0),
            through: pt(0.0, 3.0),
        };
        let lines = solve_single_fold(&prob).unwrap();
        check_all(&prob, &lines);
        assert!(lines.iter().any(|l| l.defect(&Line::vertical(0.0)) < 1e-12));
    }

    #[test]
    fn two_points_onto_two_lines_solves_cubic() {
        let prob = SingleFoldProblem::TwoPointsOntoTwoLines {
            p1: pt(-1.0, 0.0),
            l1: Line::vertical(1.0),
            p2: pt(0.0, -2.0),
            l2: Line::horizontal(2.0),
        };
        let lines = solve_single_fold(&prob).unwrap();
        assert!(!lines.is_empty() && lines.len() <= 3);
        check_all(&prob, &lines);
    }

    #[test]
    fn perpendicular_alignment() {
        let prob = SingleFoldProblem::PointOntoLinePerpendicular {
            point: pt(1.0, 2.0),
            line: Line::horizontal(-1.0),
            perpendicular_to: Line::vertical(0.0),
        };
        let lines = solve_single_fold(&prob).unwrap();
        assert_eq!(lines.len(), 1);
        assert!(lines[0].defect(&Line::horizontal(0.5)) < 1e-15);
        let parallel = SingleFoldProblem::PointOntoLinePerpendicular {
            point: pt(1.0, 2.0),
            line: Line::vertical(-1.0),
            perpendicular_to: Line::vertical(0.0),
        };
        assert!(solve_single_fold(&parallel).unwrap().is_empty());
    }
}
