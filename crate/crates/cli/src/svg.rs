//! SVG instruction diagrams for a construction run.
//!
//! One document per instruction diagram, plus a final view of the polygon.
//! Sheet coordinates are used directly (y flipped), so one user unit is one
//! sheet unit. All numbers are written with six decimals, which makes the
//! output byte-identical for identical states.

use std::fmt::Write as _;
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use hendecagon_core::construction::{ConstructionState, Crease, Landmark, StepKind, VERTEX_IDS};
use hendecagon_core::geom::{Line, Point, Rect};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("viewport does not contain the sheet")]
    ViewportTooSmall,
    #[error("could not write {path}: {source}")]
    IoFailure {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Dash patterns in sheet units; an empty string draws a solid stroke.
#[derive(Debug, Clone, PartialEq)]
pub struct Style {
    pub valley: String,
    pub mountain: String,
    pub construction: String,
    pub labels: bool,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            valley: "0.240000 0.120000".into(),
            mountain: "0.240000 0.080000 0.040000 0.080000".into(),
            construction: "0.060000 0.060000".into(),
            labels: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagramSpec {
    steps: RangeInclusive<u32>,
    viewport: Rect,
    pub style: Style,
    pub out_dir: Option<PathBuf>,
}

impl DiagramSpec {
    /// Fails unless `viewport` contains the whole sheet.
    pub fn new(
        steps: RangeInclusive<u32>,
        viewport: Rect,
        sheet: &Rect,
    ) -> Result<Self, RenderError> {
        if !viewport.contains_rect(sheet) {
            return Err(RenderError::ViewportTooSmall);
        }
        Ok(DiagramSpec {
            steps,
            viewport,
            style: Style::default(),
            out_dir: None,
        })
    }

    /// Every diagram of `state`, with a half-unit margin around the sheet.
    pub fn for_state(state: &ConstructionState) -> Self {
        let sheet = state.frame.rect();
        let last = state
            .records
            .iter()
            .filter_map(|r| r.step.diagram())
            .max()
            .unwrap_or(0);
        let viewport = Rect {
            min_x: sheet.min_x - 0.5,
            min_y: sheet.min_y - 0.5,
            max_x: sheet.max_x + 0.5,
            max_y: sheet.max_y + 0.5,
        };
        DiagramSpec {
            steps: 1..=last,
            viewport,
            style: Style::default(),
            out_dir: None,
        }
    }

    pub fn steps(&self) -> &RangeInclusive<u32> {
        &self.steps
    }

    pub fn viewport(&self) -> &Rect {
        &self.viewport
    }

    pub fn with_steps(mut self, steps: RangeInclusive<u32>) -> Self {
        self.steps = steps;
        self
    }

    pub fn with_out_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.out_dir = Some(dir.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvgDoc {
    pub file_name: String,
    pub content: String,
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Label shown next to a landmark.
fn label(id: &str) -> String {
    match id {
        "v0" => "A".into(),
        "v1" => "D".into(),
        "Qp" => "Q'".into(),
        "ell" => "ℓ".into(),
        "gamma" => "γ".into(),
        "delta" => "δ".into(),
        _ => id.into(),
    }
}

struct Canvas {
    body: String,
    sheet: Rect,
}

impl Canvas {
    fn new(spec: &DiagramSpec, sheet: &Rect, title: &str) -> Self {
        let v = &spec.viewport;
        let mut body = String::new();
        let _ = writeln!(body, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            body,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="600" height="600">"#,
            num(v.min_x),
            num(-v.max_y),
            num(v.width()),
            num(v.height())
        );
        let _ = writeln!(body, "<title>{}</title>", escape(title));
        let _ = writeln!(
            body,
            r##"<rect class="sheet" x="{}" y="{}" width="{}" height="{}" fill="#fffdf5" stroke="#000000" stroke-width="0.040000"/>"##,
            num(sheet.min_x),
            num(-sheet.max_y),
            num(sheet.width()),
            num(sheet.height())
        );
        Canvas {
            body,
            sheet: *sheet,
        }
    }

    fn segment(
        &mut self,
        class: &str,
        a: &Point<f64>,
        b: &Point<f64>,
        color: &str,
        width: f64,
        dash: &str,
    ) {
        let dash = if dash.is_empty() {
            String::new()
        } else {
            format!(r#" stroke-dasharray="{dash}""#)
        };
        let _ = writeln!(
            self.body,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="{}"{dash}/>"#,
            num(a.x),
            num(-a.y),
            num(b.x),
            num(-b.y),
            num(width)
        );
    }

    fn crease(&mut self, class: &str, line: &Line<f64>, color: &str, width: f64, dash: &str) {
        if let Some((a, b)) = self.sheet.clip(line) {
            self.segment(class, &a, &b, color, width, dash);
        }
    }

    fn point(&mut self, id: &str, p: &Point<f64>, color: &str, labels: bool) {
        let _ = writeln!(
            self.body,
            r#"<circle class="landmark" cx="{}" cy="{}" r="0.070000" fill="{color}"/>"#,
            num(p.x),
            num(-p.y)
        );
        if labels {
            let _ = writeln!(
                self.body,
                r#"<text class="label" x="{}" y="{}" font-size="0.300000" font-family="sans-serif">{}</text>"#,
                num(p.x + 0.1),
                num(-p.y - 0.1),
                escape(&label(id))
            );
        }
    }

    fn line_label(&mut self, id: &str, line: &Line<f64>) {
        if let Some((a, _)) = self.sheet.clip(line) {
            let _ = writeln!(
                self.body,
                r##"<text class="label" x="{}" y="{}" font-size="0.300000" font-family="sans-serif" fill="#1f4e9c">{}</text>"##,
                num(a.x + 0.08),
                num(-a.y - 0.08),
                escape(&label(id))
            );
        }
    }

    fn caption(&mut self, text: &str) {
        let _ = writeln!(
            self.body,
            r#"<text class="caption" x="{}" y="{}" font-size="0.280000" font-family="sans-serif">{}</text>"#,
            num(self.sheet.min_x),
            num(-self.sheet.min_y + 0.4),
            escape(text)
        );
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

fn dash_for(style: &Style, mv: Crease) -> &str {
    match mv {
        Crease::Valley => &style.valley,
        Crease::Mountain => &style.mountain,
        Crease::Construction | Crease::None => &style.construction,
    }
}

fn diagram(state: &ConstructionState, spec: &DiagramSpec, k: u32) -> SvgDoc {
    let sheet = state.frame.rect();
    let current: Vec<_> = state
        .records
        .iter()
        .filter(|r| r.step.diagram() == Some(k))
        .collect();
    let notes: Vec<&str> = current
        .iter()
        .map(|r| r.step.annotation.as_str())
        .filter(|a| !a.is_empty())
        .collect();
    let mut canvas = Canvas::new(spec, &sheet, &format!("Step {k}"));

    // Earlier creases in grey, then this diagram's in color.
    for record in state
        .records
        .iter()
        .filter(|r| r.step.diagram().is_some_and(|d| d < k))
    {
        for id in &record.produced {
            if let Some(Landmark::Line(l)) = state.landmarks.get(id) {
                canvas.crease("previous", l, "#b0b0b0", 0.02, "");
            }
        }
    }
    let mut highlighted = Vec::new();
    for record in &current {
        let dash = dash_for(&spec.style, record.step.mv);
        for id in &record.produced {
            if let Some(Landmark::Line(l)) = state.landmarks.get(id) {
                let class = match record.step.mv {
                    Crease::Valley => "valley",
                    Crease::Mountain => "mountain",
                    _ => "construction",
                };
                canvas.crease(class, l, "#1f4e9c", 0.035, dash);
                if spec.style.labels {
                    canvas.line_label(id, l);
                }
            }
        }
        if let StepKind::Display { highlight } = &record.step.kind {
            highlighted.extend(highlight.iter().cloned());
        }
    }
    for id in &highlighted {
        if let Some(Landmark::Line(l)) = state.landmarks.get(id) {
            canvas.crease("highlight", l, "#c0392b", 0.045, "");
            if spec.style.labels {
                canvas.line_label(id, l);
            }
        }
    }
    for record in state
        .records
        .iter()
        .filter(|r| r.step.diagram().is_some_and(|d| d <= k))
    {
        for id in &record.produced {
            if let Some(Landmark::Point(p)) = state.landmarks.get(id) {
                let fresh = record.step.diagram() == Some(k);
                let color = if fresh { "#c0392b" } else { "#000000" };
                canvas.point(id, p, color, spec.style.labels);
            }
        }
    }
    canvas.caption(&notes.join("; "));
    SvgDoc {
        file_name: format!("step-{k:02}.svg"),
        content: canvas.finish(),
    }
}

fn final_polygon(state: &ConstructionState, spec: &DiagramSpec) -> Option<SvgDoc> {
    let vertices: Vec<&Point<f64>> = VERTEX_IDS
        .iter()
        .map(|id| state.point(id))
        .collect::<Option<_>>()?;
    let sheet = state.frame.rect();
    let mut canvas = Canvas::new(spec, &sheet, "Regular hendecagon");
    for k in 0..vertices.len() {
        let next = (k + 1) % vertices.len();
        canvas.segment("side", vertices[k], vertices[next], "#1f4e9c", 0.05, "");
    }
    for (id, p) in VERTEX_IDS.iter().zip(&vertices) {
        canvas.point(id, p, "#000000", spec.style.labels);
    }
    canvas.caption("Regular hendecagon of radius 4");
    Some(SvgDoc {
        file_name: "final.svg".into(),
        content: canvas.finish(),
    })
}

/// Renders the diagrams in `spec`'s step range, writing them to
/// `spec.out_dir` when set. The final polygon view is added when the range
/// reaches the last diagram and every vertex exists.
pub fn emit_svg(state: &ConstructionState, spec: &DiagramSpec) -> Result<Vec<SvgDoc>, RenderError> {
    let mut docs: Vec<SvgDoc> = spec
        .steps
        .clone()
        .filter(|k| state.records.iter().any(|r| r.step.diagram() == Some(*k)))
        .map(|k| diagram(state, spec, k))
        .collect();
    let last = state.records.iter().filter_map(|r| r.step.diagram()).max();
    if !spec.steps.is_empty() && last.is_some_and(|l| spec.steps.contains(&l)) {
        docs.extend(final_polygon(state, spec));
    }
    if let Some(dir) = &spec.out_dir {
        write_all(dir, &docs)?;
    }
    Ok(docs)
}

fn write_all(dir: &Path, docs: &[SvgDoc]) -> Result<(), RenderError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| RenderError::IoFailure { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    for doc in docs {
        let path = dir.join(&doc.file_name);
        fs::write(&path, &doc.content).map_err(io(&path))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use hendecagon_core::construction::{hendecagon_script, run_script};

    #[test]
    fn number_format() {
        assert_eq!(num(-0.0000001), "0.000000");
        assert_eq!(num(1.5), "1.500000");
        assert_eq!(num(-3.25), "-3.250000");
    }

    #[test]
    fn escapes_markup() {
        assert_eq!(escape("a<b & \"c\">"), "a&lt;b &amp; &quot;c&quot;&gt;");
    }

    #[test]
    fn viewport_must_hold_sheet() {
        let sheet = Rect::square(&Point::new(0.0, -1.0), 8.0);
        let small = Rect::square(&Point::new(0.0, -1.0), 7.0);
        assert!(matches!(
            DiagramSpec::new(1..=20, small, &sheet),
            Err(RenderError::ViewportTooSmall)
        ));
        assert!(DiagramSpec::new(1..=20, sheet, &sheet).is_ok());
    }

    #[test]
    fn full_run_diagrams() {
        let state = run_script(&hendecagon_script(), 1e-9).unwrap();
        let spec = DiagramSpec::for_state(&state);
        assert_eq!(
            spec.viewport(),
            &Rect {
                min_x: -4.5,
                min_y: -5.5,
                max_x: 4.5,
                max_y: 3.5
            }
        );
        let docs = emit_svg(&state, &spec).unwrap();
        assert_eq!(docs.len(), 21);
        assert!(docs[0]
            .content
            .contains(r#"viewBox="-4.500000 -3.500000 9.000000 9.000000""#));
        assert_eq!(docs[20].content.matches(r#"class="side""#).count(), 11);
        let empty = spec.clone().with_steps(RangeInclusive::new(5, 4));
        assert!(emit_svg(&state, &empty).unwrap().is_empty());
        let partial = emit_svg(&state, &spec.with_steps(3..=5)).unwrap();
        let names: Vec<&str> = partial.iter().map(|d| d.file_name.as_str()).collect();
        assert_eq!(names, ["step-03.svg", "step-04.svg", "step-05.svg"]);
    }
}
