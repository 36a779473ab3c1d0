//! Declarative fold scripts and the built-in hendecagon construction.
//!
//! A [`FoldScript`] is an ordered list of [`FoldStep`]s over named
//! landmarks (points and crease lines) on a flat sheet. Folds are modelled
//! as reflections in the plane; paper layers are not tracked. Each step may
//! declare expected landmark values, which [`run_script`] checks as soon as
//! the step has run.
//!
//! Step ids start with the number of the instruction diagram they belong to
//! (`"7"`, `"7a"`, `"7b"`), which is how the renderer groups them.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fold::single::Axiom;
use crate::fold::{
    solve_single_fold, solve_two_fold, FoldError, SingleFoldProblem, TwoFoldConfig, TwoFoldSolution,
};
use crate::geom::{
    intersect, line_through, perpendicular_bisector, reflect_point, snap_rational, GeomError, Line,
    Point, Rect, DEFAULT_TOL,
};
use crate::script::Num;

/// Vertex landmark ids of the hendecagon, `v0` (the vertex `A`) first.
pub const VERTEX_IDS: [&str; 11] = [
    "v0", "v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "v9", "v10",
];

pub const HENDECAGON_RADIUS: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("step {step}: expectation on `{landmark}` missed by {residual:e}")]
    StepFailed {
        step: String,
        landmark: String,
        residual: f64,
    },
    #[error("step {step}: unknown landmark `{landmark}`")]
    UnknownLandmark { step: String, landmark: String },
    #[error("step {step}: landmark `{landmark}` is not a {expected}")]
    WrongLandmarkKind {
        step: String,
        landmark: String,
        expected: &'static str,
    },
    #[error("step {step}: landmark `{landmark}` already exists")]
    DuplicateLandmark { step: String, landmark: String },
    #[error("step {step}: expected {expected} references or outputs, found {found}")]
    Arity {
        step: String,
        expected: usize,
        found: usize,
    },
    #[error("step {step}: solution {pick} requested but only {found} exist")]
    NoSuchSolution {
        step: String,
        pick: usize,
        found: usize,
    },
    #[error("step {step}: {source}")]
    Fold { step: String, source: FoldError },
    #[error("step {step}: {source}")]
    Geometry { step: String, source: GeomError },
}

/// The square sheet: center and side length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub center: [Num; 2],
    pub side: Num,
}

impl Frame {
    /// Side 8 centered at `(0, −1)`, so the sheet spans `[−4, 4] × [−5, 3]`.
    pub fn standard() -> Self {
        Frame {
            center: [Num(0.0), Num(-1.0)],
            side: Num(8.0),
        }
    }

    pub fn center(&self) -> Point<f64> {
        Point::new(self.center[0].0, self.center[1].0)
    }

    pub fn rect(&self) -> Rect {
        Rect::square(&self.center(), self.side.0)
    }

    /// Corners and edges, available to every script before its first step.
    pub fn landmarks(&self) -> Vec<(String, Landmark)> {
        let r = self.rect();
        let pt = |x, y| Landmark::Point(Point::new(x, y));
        vec![
            ("corner_bl".into(), pt(r.min_x, r.min_y)),
            ("corner_br".into(), pt(r.max_x, r.min_y)),
            ("corner_tr".into(), pt(r.max_x, r.max_y)),
            ("corner_tl".into(), pt(r.min_x, r.max_y)),
            ("edge_left".into(), Landmark::Line(Line::vertical(r.min_x))),
            ("edge_right".into(), Landmark::Line(Line::vertical(r.max_x))),
            (
                "edge_bottom".into(),
                Landmark::Line(Line::horizontal(r.min_y)),
            ),
            ("edge_top".into(), Landmark::Line(Line::horizontal(r.max_y))),
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Landmark {
    Point(Point<f64>),
    Line(Line<f64>),
}

/// How a crease is folded, for diagram styling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Crease {
    Valley,
    Mountain,
    /// A pinch or reference crease.
    Construction,
    #[default]
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum StepKind {
    /// One crease; `refs` follow the field order of the matching
    /// [`SingleFoldProblem`] variant.
    SingleFold {
        axiom: Axiom,
        refs: Vec<String>,
        #[serde(default)]
        pick: usize,
    },
    /// Outputs `[γ, δ]`; solutions are ordered by descending `t`.
    TwoFold {
        p: String,
        q: String,
        ell: String,
        m: String,
        n: String,
        #[serde(default)]
        pick: usize,
    },
    /// A crease drawn only between two points; its output is the full line.
    CreaseSegment { from: String, to: String },
    /// Intersection of two lines.
    MarkPoint { first: String, second: String },
    /// Reflects `from` across `axis`; with `axis` through `center` this turns
    /// the length `center → from` about `center`.
    RotateLength {
        center: String,
        from: String,
        axis: String,
    },
    /// No geometry; the diagram highlights existing landmarks.
    Display {
        #[serde(default)]
        highlight: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Expectation {
    Point {
        landmark: String,
        x: Num,
        y: Num,
    },
    Line {
        landmark: String,
        a: Num,
        b: Num,
        c: Num,
    },
}

impl Expectation {
    pub fn point(landmark: &str, p: &Point<f64>) -> Self {
        Expectation::Point {
            landmark: landmark.into(),
            x: Num(p.x),
            y: Num(p.y),
        }
    }

    pub fn line(landmark: &str, l: &Line<f64>) -> Self {
        let (a, b, c) = l.coefficients();
        Expectation::Line {
            landmark: landmark.into(),
            a: Num(a),
            b: Num(b),
            c: Num(c),
        }
    }

    pub fn landmark(&self) -> &str {
        match self {
            Expectation::Point { landmark, .. } | Expectation::Line { landmark, .. } => landmark,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldStep {
    pub id: String,
    #[serde(default)]
    pub annotation: String,
    #[serde(default)]
    pub mv: Crease,
    #[serde(default)]
    pub outputs: Vec<String>,
    pub kind: StepKind,
    #[serde(default)]
    pub expect: Vec<Expectation>,
}

impl FoldStep {
    /// Instruction diagram number: the leading digits of the id.
    pub fn diagram(&self) -> Option<u32> {
        let digits: String = self.id.chars().take_while(char::is_ascii_digit).collect();
        digits.parse().ok()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoldScript {
    pub frame: Frame,
    pub steps: Vec<FoldStep>,
}

impl FoldScript {
    /// The steps belonging to diagrams `1..=last`.
    pub fn truncated(&self, last: u32) -> FoldScript {
        FoldScript {
            frame: self.frame.clone(),
            steps: self
                .steps
                .iter()
                .filter(|s| s.diagram().is_some_and(|d| d <= last))
                .cloned()
                .collect(),
        }
    }

    pub fn last_diagram(&self) -> u32 {
        self.steps
            .iter()
            .filter_map(FoldStep::diagram)
            .max()
            .unwrap_or(0)
    }
}

/// A step as executed, with the landmark ids it created.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub step: FoldStep,
    pub produced: Vec<String>,
}

/// Landmarks after running a script. All values are `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionState {
    pub frame: Frame,
    pub landmarks: BTreeMap<String, Landmark>,
    /// `(step id:landmark or check, residual)` in execution order.
    pub residual_log: Vec<(String, f64)>,
    pub records: Vec<StepRecord>,
    /// The selected solution of each two-fold step, by step id.
    pub two_folds: BTreeMap<String, TwoFoldSolution>,
}

impl ConstructionState {
    fn new(frame: &Frame) -> Self {
        ConstructionState {
            frame: frame.clone(),
            landmarks: frame.landmarks().into_iter().collect(),
            residual_log: Vec::new(),
            records: Vec::new(),
            two_folds: BTreeMap::new(),
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.residual_log
            .iter()
            .map(|(_, r)| *r)
            .fold(0.0, f64::max)
    }

    pub fn point(&self, id: &str) -> Option<&Point<f64>> {
        match self.landmarks.get(id)? {
            Landmark::Point(p) => Some(p),
            Landmark::Line(_) => None,
        }
    }

    pub fn line(&self, id: &str) -> Option<&Line<f64>> {
        match self.landmarks.get(id)? {
            Landmark::Line(l) => Some(l),
            Landmark::Point(_) => None,
        }
    }

    /// Point landmarks lying outside the sheet.
    pub fn off_sheet_points(&self, tol: f64) -> Vec<String> {
        let sheet = self.frame.rect();
        self.landmarks
            .iter()
            .filter_map(|(id, l)| match l {
                Landmark::Point(p) if !sheet.contains(p, tol) => Some(id.clone()),
                _ => None,
            })
            .collect()
    }

    fn get(&self, step: &str, id: &str) -> Result<&Landmark, ConstructionError> {
        self.landmarks
            .get(id)
            .ok_or_else(|| ConstructionError::UnknownLandmark {
                step: step.into(),
                landmark: id.into(),
            })
    }

    fn get_point(&self, step: &str, id: &str) -> Result<Point<f64>, ConstructionError> {
        match self.get(step, id)? {
            Landmark::Point(p) => Ok(p.clone()),
            Landmark::Line(_) => Err(ConstructionError::WrongLandmarkKind {
                step: step.into(),
                landmark: id.into(),
                expected: "point",
            }),
        }
    }

    fn get_line(&self, step: &str, id: &str) -> Result<Line<f64>, ConstructionError> {
        match self.get(step, id)? {
            Landmark::Line(l) => Ok(l.clone()),
            Landmark::Point(_) => Err(ConstructionError::WrongLandmarkKind {
                step: step.into(),
                landmark: id.into(),
                expected: "line",
            }),
        }
    }
}

fn arity(step: &FoldStep, expected: usize, found: usize) -> Result<(), ConstructionError> {
    if expected == found {
        Ok(())
    } else {
        Err(ConstructionError::Arity {
            step: step.id.clone(),
            expected,
            found,
        })
    }
}

fn single_problem(
    state: &ConstructionState,
    step: &FoldStep,
    axiom: Axiom,
    refs: &[String],
) -> Result<SingleFoldProblem, ConstructionError> {
    let id = step.id.as_str();
    let pt = |i: usize| state.get_point(id, &refs[i]);
    let ln = |i: usize| state.get_line(id, &refs[i]);
    let expected = match axiom {
        Axiom::ThroughPoints | Axiom::PointOntoPoint | Axiom::LineOntoLine => 2,
        Axiom::PerpendicularThrough => 2,
        Axiom::PointOntoLineThrough | Axiom::PointOntoLinePerpendicular => 3,
        Axiom::TwoPointsOntoTwoLines => 4,
    };
    arity(step, expected, refs.len())?;
    Ok(match axiom {
        Axiom::ThroughPoints => SingleFoldProblem::ThroughPoints {
            p: pt(0)?,
            q: pt(1)?,
        },
        Axiom::PointOntoPoint => SingleFoldProblem::PointOntoPoint {
            p: pt(0)?,
            q: pt(1)?,
        },
        Axiom::LineOntoLine => SingleFoldProblem::LineOntoLine {
            from: ln(0)?,
            to: ln(1)?,
        },
        Axiom::PerpendicularThrough => SingleFoldProblem::PerpendicularThrough {
            point: pt(0)?,
            line: ln(1)?,
        },
        Axiom::PointOntoLineThrough => SingleFoldProblem::PointOntoLineThrough {
            point: pt(0)?,
            line: ln(1)?,
            through: pt(2)?,
        },
        Axiom::TwoPointsOntoTwoLines => SingleFoldProblem::TwoPointsOntoTwoLines {
            p1: pt(0)?,
            l1: ln(1)?,
            p2: pt(2)?,
            l2: ln(3)?,
        },
        Axiom::PointOntoLinePerpendicular => SingleFoldProblem::PointOntoLinePerpendicular {
            point: pt(0)?,
            line: ln(1)?,
            perpendicular_to: ln(2)?,
        },
    })
}

/// Exact copy of a float landmark, snapped to the simplest nearby rational.
fn exact_point(p: &Point<f64>) -> Option<Point<crate::Rational>> {
    Some(Point::new(
        snap_rational(p.x, 1e-12)?,
        snap_rational(p.y, 1e-12)?,
    ))
}

fn exact_line(l: &Line<f64>) -> Option<Line<crate::Rational>> {
    let (a, b, c) = l.coefficients();
    Line::new(
        snap_rational(a, 1e-12)?,
        snap_rational(b, 1e-12)?,
        snap_rational(c, 1e-12)?,
    )
    .ok()
}

/// Reflection of `from` across `fold_axis`. When the axis passes through
/// `center` the distance to `center` is unchanged.
pub fn rotate_length(center: &Point<f64>, from: &Point<f64>, fold_axis: &Line<f64>) -> Point<f64> {
    debug_assert!(!from.coincides(center), "rotating a zero length");
    reflect_point(from, fold_axis)
}

fn execute_step(
    state: &mut ConstructionState,
    step: &FoldStep,
    tol: f64,
) -> Result<Vec<(String, Landmark)>, ConstructionError> {
    let id = step.id.as_str();
    let fold_err = |source| ConstructionError::Fold {
        step: id.into(),
        source,
    };
    let geom_err = |source| ConstructionError::Geometry {
        step: id.into(),
        source,
    };
    let pick_from = |n: usize, pick: usize| {
        if pick < n {
            Ok(())
        } else {
            Err(ConstructionError::NoSuchSolution {
                step: id.into(),
                pick,
                found: n,
            })
        }
    };
    let out = |i: usize| step.outputs[i].clone();

    match &step.kind {
        StepKind::SingleFold { axiom, refs, pick } => {
            arity(step, 1, step.outputs.len())?;
            let problem = single_problem(state, step, *axiom, refs)?;
            let lines = solve_single_fold(&problem).map_err(fold_err)?;
            pick_from(lines.len(), *pick)?;
            let line = lines[*pick].clone();
            state
                .residual_log
                .push((format!("{id}:alignment"), problem.residual(&line)));
            Ok(vec![(out(0), Landmark::Line(line))])
        }
        StepKind::TwoFold {
            p,
            q,
            ell,
            m,
            n,
            pick,
        } => {
            arity(step, 2, step.outputs.len())?;
            let unsupported = |what| fold_err(FoldError::UnsupportedConfiguration(what));
            let config = TwoFoldConfig {
                p: exact_point(&state.get_point(id, p)?).ok_or_else(|| unsupported("P"))?,
                q: exact_point(&state.get_point(id, q)?).ok_or_else(|| unsupported("Q"))?,
                ell: exact_line(&state.get_line(id, ell)?).ok_or_else(|| unsupported("ℓ"))?,
                m: exact_line(&state.get_line(id, m)?).ok_or_else(|| unsupported("m"))?,
                n: exact_line(&state.get_line(id, n)?).ok_or_else(|| unsupported("n"))?,
            };
            let solutions = solve_two_fold(&config, tol).map_err(fold_err)?;
            pick_from(solutions.len(), *pick)?;
            let sol = solutions[*pick].clone();
            for (check, r) in &sol.residuals {
                state.residual_log.push((format!("{id}:{check}"), *r));
            }
            let lines = vec![
                (out(0), Landmark::Line(sol.gamma.clone())),
                (out(1), Landmark::Line(sol.delta.clone())),
            ];
            state.two_folds.insert(id.into(), sol);
            Ok(lines)
        }
        StepKind::CreaseSegment { from, to } => {
            arity(step, 1, step.outputs.len())?;
            let (a, b) = (state.get_point(id, from)?, state.get_point(id, to)?);
            let line = line_through(&a, &b).map_err(geom_err)?;
            Ok(vec![(out(0), Landmark::Line(line))])
        }
        StepKind::MarkPoint { first, second } => {
            arity(step, 1, step.outputs.len())?;
            let (l1, l2) = (state.get_line(id, first)?, state.get_line(id, second)?);
            let p = intersect(&l1, &l2).map_err(geom_err)?;
            Ok(vec![(out(0), Landmark::Point(p))])
        }
        StepKind::RotateLength { center, from, axis } => {
            arity(step, 1, step.outputs.len())?;
            let c = state.get_point(id, center)?;
            let f = state.get_point(id, from)?;
            let axis = state.get_line(id, axis)?;
            if f.coincides(&c) {
                return Err(geom_err(GeomError::CoincidentPoints));
            }
            let image = rotate_length(&c, &f, &axis);
            let drift = (image.distance_squared(&c).sqrt() - f.distance_squared(&c).sqrt()).abs();
            state.residual_log.push((format!("{id}:length"), drift));
            Ok(vec![(out(0), Landmark::Point(image))])
        }
        StepKind::Display { highlight } => {
            arity(step, 0, step.outputs.len())?;
            for h in highlight {
                state.get(id, h)?;
            }
            Ok(Vec::new())
        }
    }
}

fn check_expectation(
    state: &ConstructionState,
    step: &str,
    e: &Expectation,
) -> Result<f64, ConstructionError> {
    let id = e.landmark();
    match e {
        Expectation::Point { x, y, .. } => {
            let p = state.get_point(step, id)?;
            Ok(p.distance_squared(&Point::new(x.0, y.0)).sqrt())
        }
        Expectation::Line { a, b, c, .. } => {
            let l = state.get_line(step, id)?;
            let expected =
                Line::new(a.0, b.0, c.0).map_err(|source| ConstructionError::Geometry {
                    step: step.into(),
                    source,
                })?;
            Ok(l.defect(&expected))
        }
    }
}

/// Runs every step in order, checking declared expectations within `tol`.
///
/// Stops at the first failing step.
pub fn run_script(script: &FoldScript, tol: f64) -> Result<ConstructionState, ConstructionError> {
    let mut state = ConstructionState::new(&script.frame);
    for step in &script.steps {
        let produced = execute_step(&mut state, step, tol)?;
        let mut ids = Vec::with_capacity(produced.len());
        for (name, landmark) in produced {
            if state.landmarks.contains_key(&name) {
                return Err(ConstructionError::DuplicateLandmark {
                    step: step.id.clone(),
                    landmark: name,
                });
            }
            state.landmarks.insert(name.clone(), landmark);
            ids.push(name);
        }
        for e in &step.expect {
            let residual = check_expectation(&state, &step.id, e)?;
            state
                .residual_log
                .push((format!("{}:{}", step.id, e.landmark()), residual));
            if residual > tol || residual.is_nan() {
                return Err(ConstructionError::StepFailed {
                    step: step.id.clone(),
                    landmark: e.landmark().into(),
                    residual,
                });
            }
        }
        state.records.push(StepRecord {
            step: step.clone(),
            produced: ids,
        });
    }
    Ok(state)
}

/// Vertices `center + radius·(cos(phase + 2πk/n), sin(phase + 2πk/n))`.
pub fn regular_polygon(
    center: &Point<f64>,
    radius: f64,
    phase: f64,
    sides: usize,
) -> Vec<Point<f64>> {
    (0..sides)
        .map(|k| {
            let angle = phase + 2.0 * PI * k as f64 / sides as f64;
            Point::new(
                center.x + radius * angle.cos(),
                center.y + radius * angle.sin(),
            )
        })
        .collect()
}

/// The 11 vertices of the regular hendecagon.
pub fn expected_vertices(center: &Point<f64>, radius: f64, phase: f64) -> Vec<Point<f64>> {
    regular_polygon(center, radius, phase, 11)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub max_error: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Compares the vertex landmarks against the radius-4 hendecagon about the
/// sheet center with vertex `v0` on the `+x` axis.
pub fn verify_hendecagon(state: &ConstructionState, tol: f64) -> VerificationReport {
    let center = state.frame.center();
    let expected = expected_vertices(&center, HENDECAGON_RADIUS, 0.0);
    let found: Vec<Option<&Point<f64>>> = VERTEX_IDS.iter().map(|id| state.point(id)).collect();
    let mut checks = Vec::new();
    let mut push = |name: &str, max_error: f64| {
        checks.push(Check {
            name: name.into(),
            max_error,
            passed: max_error <= tol,
        })
    };
    let present = found.iter().all(Option::is_some);
    push(
        "vertices present",
        if present { 0.0 } else { f64::INFINITY },
    );
    if present {
        let v: Vec<&Point<f64>> = found.into_iter().flatten().collect();
        let position = v
            .iter()
            .zip(&expected)
            .map(|(p, e)| p.distance_squared(e).sqrt())
            .fold(0.0, f64::max);
        let side = 2.0 * HENDECAGON_RADIUS * (PI / 11.0).sin();
        let sides = (0..11)
            .map(|k| (v[k].distance_squared(v[(k + 1) % 11]).sqrt() - side).abs())
            .fold(0.0, f64::max);
        let radius = v
            .iter()
            .map(|p| (p.distance_squared(&center).sqrt() - HENDECAGON_RADIUS).abs())
            .fold(0.0, f64::max);
        push("vertex positions", position);
        push("side lengths", sides);
        push("circumradius", radius);
    }
    VerificationReport { checks }
}

/// The folding sequence for the regular hendecagon on the standard sheet.
///
/// Diagrams 1–7 lay out `ℓ`, `n`, `Q`, `m` and `P`; diagram 8 is the
/// simultaneous fold producing `γ` and `δ`; diagrams 10–14 carry the root
/// `t = 2cos(2π/11)` to the first vertices and 15–20 finish the polygon.
/// Creases for diagrams whose exact mechanics are not given in words are
/// reconstructions that reach the stated landmark.
pub fn hendecagon_script() -> FoldScript {
    let frame = Frame::standard();
    let center = frame.center();
    let t = 2.0 * (2.0 * PI / 11.0).cos();
    let vertices = expected_vertices(&center, HENDECAGON_RADIUS, 0.0);
    let q_image = Point::new(2.0 * t, -1.0);
    let q = Point::new(0.0, 1.0);

    let mut steps = Vec::new();
    let mut add = |id: &str,
                   kind: StepKind,
                   outputs: &[&str],
                   mv: Crease,
                   note: &str,
                   expect: Vec<Expectation>| {
        steps.push(FoldStep {
            id: id.into(),
            annotation: note.into(),
            mv,
            outputs: outputs.iter().map(|s| s.to_string()).collect(),
            kind,
            expect,
        })
    };
    let single = |axiom: Axiom, refs: &[&str], pick: usize| StepKind::SingleFold {
        axiom,
        refs: refs.iter().map(|s| s.to_string()).collect(),
        pick,
    };
    let mark = |a: &str, b: &str| StepKind::MarkPoint {
        first: a.into(),
        second: b.into(),
    };
    let rotate = |from: &str, axis: &str| StepKind::RotateLength {
        center: "O".into(),
        from: from.into(),
        axis: axis.into(),
    };
    use Expectation as E;

    add(
        "1a",
        single(Axiom::LineOntoLine, &["edge_left", "edge_right"], 0),
        &["ell"],
        Crease::Valley,
        "Fold in half vertically: line ℓ",
        vec![E::line("ell", &Line::vertical(0.0))],
    );
    add(
        "1b",
        single(Axiom::LineOntoLine, &["edge_bottom", "edge_top"], 0),
        &["n"],
        Crease::Valley,
        "Fold in half horizontally: line n",
        vec![E::line("n", &Line::horizontal(-1.0))],
    );
    add(
        "1c",
        mark("ell", "n"),
        &["O"],
        Crease::None,
        "Center of the sheet",
        vec![E::point("O", &center)],
    );
    add(
        "2",
        single(Axiom::LineOntoLine, &["edge_top", "n"], 0),
        &["y_1"],
        Crease::Construction,
        "Bring the top edge to line n and pinch",
        vec![E::line("y_1", &Line::horizontal(1.0))],
    );
    add(
        "3",
        mark("ell", "y_1"),
        &["Q"],
        Crease::None,
        "The crease meets ℓ at Q",
        vec![E::point("Q", &q)],
    );
    add(
        "4",
        single(Axiom::LineOntoLine, &["edge_left", "ell"], 0),
        &["x_neg2"],
        Crease::Valley,
        "Bring the left edge to ℓ",
        vec![E::line("x_neg2", &Line::vertical(-2.0))],
    );
    add(
        "5a",
        single(Axiom::LineOntoLine, &["ell", "x_neg2"], 0),
        &["x_neg1"],
        Crease::Construction,
        "Bring ℓ to the last crease and pinch",
        vec![E::line("x_neg1", &Line::vertical(-1.0))],
    );
    add(
        "5b",
        single(Axiom::LineOntoLine, &["x_neg2", "x_neg1"], 0),
        &["m"],
        Crease::Construction,
        "Small crease at the bottom: line m",
        vec![E::line("m", &Line::vertical(-1.5))],
    );
    add(
        "6",
        single(Axiom::LineOntoLine, &["edge_bottom", "n"], 0),
        &["y_neg3"],
        Crease::Mountain,
        "Fold the bottom edge behind to line n",
        vec![E::line("y_neg3", &Line::horizontal(-3.0))],
    );
    add(
        "7a",
        single(Axiom::LineOntoLine, &["edge_left", "x_neg1"], 0),
        &["x_neg5_2"],
        Crease::Construction,
        "Bring the left edge to the pinch at x = -1",
        vec![E::line("x_neg5_2", &Line::vertical(-2.5))],
    );
    add(
        "7b",
        mark("x_neg5_2", "y_neg3"),
        &["P"],
        Crease::None,
        "Point P",
        vec![E::point("P", &Point::new(-2.5, -3.0))],
    );

    let gamma = line_through(&q_image, &Point::new(0.0, -t * t)).expect("distinct points");
    let delta = perpendicular_bisector(&q, &q_image).expect("distinct points");
    add(
        "8",
        StepKind::TwoFold {
            p: "P".into(),
            q: "Q".into(),
            ell: "ell".into(),
            m: "m".into(),
            n: "n".into(),
            pick: 0,
        },
        &["gamma", "delta"],
        Crease::Valley,
        "Fold simultaneously: P onto m along γ, Q onto n along δ with ℓ onto γ",
        vec![E::line("gamma", &gamma), E::line("delta", &delta)],
    );
    add(
        "9",
        StepKind::Display {
            highlight: vec!["delta".into()],
        },
        &[],
        Crease::None,
        "Unfold: crease δ crosses the horizontal at t = 2cos(2π/11)",
        vec![],
    );
    add(
        "10",
        mark("gamma", "n"),
        &["Qp"],
        Crease::None,
        "Q' is where γ meets n",
        vec![E::point("Qp", &q_image)],
    );
    add(
        "11a",
        single(Axiom::PerpendicularThrough, &["Qp", "n"], 0),
        &["x_qp"],
        Crease::Valley,
        "Vertical fold through Q'",
        vec![E::line("x_qp", &Line::vertical(2.0 * t))],
    );
    add(
        "11b",
        mark("n", "edge_right"),
        &["v0"],
        Crease::None,
        "Vertex A",
        vec![E::point("v0", &vertices[0])],
    );

    let half_turn = Point::new(center.x + (PI / 11.0).cos(), center.y + (PI / 11.0).sin());
    let axis_1 = line_through(&center, &half_turn).expect("distinct points");
    add(
        "12",
        single(Axiom::PointOntoLineThrough, &["v0", "x_qp", "O"], 0),
        &["axis_1"],
        Crease::Valley,
        "Fold through the center bringing A onto the vertical crease",
        vec![E::line("axis_1", &axis_1)],
    );
    add(
        "13",
        rotate("v0", "axis_1"),
        &["v1"],
        Crease::None,
        "A lands on vertex D",
        vec![E::point("v1", &vertices[1])],
    );
    add(
        "14",
        rotate("v1", "n"),
        &["v10"],
        Crease::None,
        "Mirror D across n",
        vec![E::point("v10", &vertices[10])],
    );

    // Each round folds along the radius to vertex k and turns vertex k−1
    // onto vertex k+1, then mirrors it across n.
    for (round, k) in (15..=18).zip(1usize..) {
        let ray = format!("ray_{k}");
        let next = format!("v{}", k + 1);
        let mirror = format!("v{}", 10 - k);
        let radius_line = line_through(&center, &vertices[k]).expect("distinct points");
        add(
            &format!("{round}a"),
            single(Axiom::ThroughPoints, &["O", VERTEX_IDS[k]], 0),
            &[&ray],
            Crease::Construction,
            &format!("Crease the radius through v{k}"),
            vec![E::line(&ray, &radius_line)],
        );
        add(
            &format!("{round}b"),
            rotate(VERTEX_IDS[k - 1], &ray),
            &[&next],
            Crease::None,
            &format!("Turn v{} about the center onto v{}", k - 1, k + 1),
            vec![E::point(&next, &vertices[k + 1])],
        );
        add(
            &format!("{round}c"),
            rotate(&next, "n"),
            &[&mirror],
            Crease::None,
            &format!("Mirror v{} across n", k + 1),
            vec![E::point(&mirror, &vertices[10 - k])],
        );
    }

    for k in 0..11 {
        let round = if k < 6 { 19 } else { 20 };
        let side = format!("side_{k}");
        let (a, b) = (VERTEX_IDS[k], VERTEX_IDS[(k + 1) % 11]);
        let side_line =
            line_through(&vertices[k], &vertices[(k + 1) % 11]).expect("distinct points");
        add(
            &format!("{round}.{k}"),
            StepKind::CreaseSegment {
                from: a.into(),
                to: b.into(),
            },
            &[&side],
            Crease::Valley,
            &format!("Fold side {a}–{b}"),
            vec![E::line(&side, &side_line)],
        );
    }

    FoldScript { frame, steps }
}

/// Default tolerance for [`run_script`].
pub const DEFAULT_SCRIPT_TOL: f64 = DEFAULT_TOL;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn script_shape() {
        let script = hendecagon_script();
        let two_folds = script
            .steps
            .iter()
            .filter(|s| matches!(s.kind, StepKind::TwoFold { .. }))
            .count();
        assert_eq!(two_folds, 1);
        let diagrams: std::collections::BTreeSet<u32> =
            script.steps.iter().filter_map(FoldStep::diagram).collect();
        assert_eq!(diagrams, (1..=20).collect());
    }

    #[test]
    fn full_run() {
        let state = run_script(&hendecagon_script(), 1e-9).unwrap();
        assert!(state.max_residual() <= 1e-9);
        let qp = state.point("Qp").unwrap();
        let dist = qp.distance_squared(&Point::new(0.0, -1.0)).sqrt();
        assert!((dist - 4.0 * (2.0 * PI / 11.0).cos()).abs() < 1e-9);
        assert!((dist - 3.365).abs() < 1e-3);
        assert_eq!(
            VERTEX_IDS
                .iter()
                .filter(|id| state.point(id).is_some())
                .count(),
            11
        );
        assert!(verify_hendecagon(&state, 1e-9).passed());
        assert!(state.off_sheet_points(1e-9).is_empty());
    }

    #[test]
    fn truncated_run_has_configuration() {
        let state = run_script(&hendecagon_script().truncated(7), 1e-9).unwrap();
        assert_eq!(state.point("P"), Some(&Point::new(-2.5, -3.0)));
        assert_eq!(state.point("Q"), Some(&Point::new(0.0, 1.0)));
        assert_eq!(state.line("ell"), Some(&Line::vertical(0.0)));
        assert_eq!(state.line("m"), Some(&Line::vertical(-1.5)));
        assert_eq!(state.line("n"), Some(&Line::horizontal(-1.0)));
        assert!(state.line("gamma").is_none());
    }

    #[test]
    fn unknown_landmark() {
        let mut script = hendecagon_script().truncated(1);
        script.steps.push(FoldStep {
            id: "2".into(),
            annotation: String::new(),
            mv: Crease::None,
            outputs: vec!["X".into()],
            kind: StepKind::MarkPoint {
                first: "ell".into(),
                second: "nowhere".into(),
            },
            expect: vec![],
        });
        assert!(matches!(
            run_script(&script, 1e-9),
            Err(ConstructionError::UnknownLandmark { landmark, .. }) if landmark == "nowhere"
        ));
    }

    #[test]
    fn failed_expectation_stops_the_run() {
        let mut script = hendecagon_script();
        if let Expectation::Point { x, .. } = &mut script.steps[2].expect[0] {
            x.0 += 1e-6;
        }
        assert!(matches!(
            run_script(&script, 1e-9),
            Err(ConstructionError::StepFailed { step, .. }) if step == "1c"
        ));
    }

    #[test]
    fn expected_vertex_examples() {
        let v = expected_vertices(&Point::new(0.0, -1.0), 4.0, 0.0);
        assert_eq!(v.len(), 11);
        assert_eq!(v[0], Point::new(4.0, -1.0));
        assert!((v[1].x - 3.365).abs() < 1e-3);
        let side = 8.0 * (PI / 11.0).sin();
        assert!((side - 2.25386).abs() < 1e-5);
        for k in 0..11 {
            assert!((v[k].distance_squared(&v[(k + 1) % 11]).sqrt() - side).abs() < 1e-12);
        }
    }

    #[test]
    fn rotate_length_examples() {
        let o = Point::new(0.0, -1.0);
        let a = Point::new(4.0, -1.0);
        let angle = PI / 11.0;
        let axis = line_through(&o, &Point::new(angle.cos(), -1.0 + angle.sin())).unwrap();
        let d = rotate_length(&o, &a, &axis);
        let expected = Point::new(
            4.0 * (2.0 * PI / 11.0).cos(),
            -1.0 + 4.0 * (2.0 * PI / 11.0).sin(),
        );
        assert!(d.distance_squared(&expected).sqrt() < 1e-12);
        let fixed = rotate_length(&o, &a, &line_through(&o, &a).unwrap());
        assert!(fixed.distance_squared(&a).sqrt() < 1e-15);
    }

    #[test]
    fn verification_sensitivity() {
        let center = Point::new(0.0, -1.0);
        let mut state = ConstructionState::new(&Frame::standard());
        for (id, p) in VERTEX_IDS.iter().zip(expected_vertices(&center, 4.0, 0.0)) {
            state.landmarks.insert(id.to_string(), Landmark::Point(p));
        }
        assert!(verify_hendecagon(&state, 1e-12).passed());
        if let Some(Landmark::Point(p)) = state.landmarks.get_mut("v3") {
            p.x += 1e-6;
        }
        let report = verify_hendecagon(&state, 1e-9);
        let sides = report
            .checks
            .iter()
            .find(|c| c.name == "side lengths")
            .unwrap();
        assert!(!sides.passed);
    }

    #[test]
    fn missing_vertices_fail_verification() {
        let state = run_script(&hendecagon_script().truncated(14), 1e-9).unwrap();
        assert!(!verify_hendecagon(&state, 1e-9).passed());
    }
}
