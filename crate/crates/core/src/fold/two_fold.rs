//! Two simultaneous folds: crease `γ` places `P` onto `m`; crease `δ`
//! places `Q` onto `n` and carries `ℓ` onto `γ`.
//!
//! Within the canonical family (`ℓ: x = 0`, `n: y = −1`, `Q = (0, 1)`, `m`
//! vertical) the crease `δ` is parameterized by its x-intercept `t`:
//! `Q' = (2t, −1)` and `δ: y = t(x − t)`. The crease `γ` has two descriptions,
//! one through `Q'` and `S = δ ∩ ℓ`, one as the perpendicular bisector of `P`
//! and `P' = (m₀, 2s)`. Equating them and eliminating `s` leaves a
//! polynomial in `t`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::FoldError;
use crate::construction::Frame;
use crate::geom::{
    intersect, midpoint, perpendicular_bisector, reflect_line, reflect_point, Line, Point, Scalar,
};
use crate::poly::{RatFunc, RatPoly, DEFAULT_REFINE_WIDTH};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The points and lines of a two-fold instance, in exact arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoFoldConfig {
    pub p: Point<BigRational>,
    pub q: Point<BigRational>,
    pub ell: Line<BigRational>,
    pub m: Line<BigRational>,
    pub n: Line<BigRational>,
}

impl TwoFoldConfig {
    /// `P(−5/2, −3)`, `Q(0, 1)`, `ℓ: x = 0`, `m: x = −3/2`, `n: y = −1`.
    pub fn hendecagon() -> Self {
        TwoFoldConfig {
            p: Point::new(q(-5, 2), q(-3, 1)),
            q: Point::new(q(0, 1), q(1, 1)),
            ell: Line::vertical(q(0, 1)),
            m: Line::vertical(q(-3, 2)),
            n: Line::horizontal(q(-1, 1)),
        }
    }

    /// The family member with `P = p` and `m: x = m_x`.
    pub fn canonical(p: Point<BigRational>, m_x: BigRational) -> Self {
        TwoFoldConfig {
            p,
            m: Line::vertical(m_x),
            ..TwoFoldConfig::hendecagon()
        }
    }

    /// x-coordinate of `m`, after checking membership in the canonical family.
    pub fn m_offset(&self) -> Result<BigRational, FoldError> {
        let base = TwoFoldConfig::hendecagon();
        if self.ell != base.ell {
            return Err(FoldError::UnsupportedConfiguration("ℓ must be x = 0"));
        }
        if self.n != base.n {
            return Err(FoldError::UnsupportedConfiguration("n must be y = -1"));
        }
        if self.q != base.q {
            return Err(FoldError::UnsupportedConfiguration("Q must be (0, 1)"));
        }
        if !self.m.b().is_zero() {
            return Err(FoldError::UnsupportedConfiguration("m must be vertical"));
        }
        let m_x = -self.m.c().clone() / self.m.a().clone();
        if self.p.x == m_x {
            return Err(FoldError::UnsupportedConfiguration("P lies on m"));
        }
        Ok(m_x)
    }

    /// `s` for which `γ` from `P' = (m₀, 2s)` has the slope of `γ` from `t`.
    pub fn s_from_t<T: Scalar>(&self, t: &T) -> Result<T, FoldError> {
        let m_x = T::from_rational(&self.m_offset()?);
        let (px, py) = (T::from_rational(&self.p.x), T::from_rational(&self.p.y));
        let denom = t.clone() * t.clone() - T::one();
        if t.is_zero() || denom.is_zero() {
            return Err(FoldError::DegenerateParameter(t.to_f64()));
        }
        Ok(py / T::from_i64(2) - (m_x - px) * t.clone() / denom)
    }

    pub fn p_image<T: Scalar>(&self, s: &T) -> Result<Point<T>, FoldError> {
        let m_x = T::from_rational(&self.m_offset()?);
        Ok(Point::new(m_x, T::from_i64(2) * s.clone()))
    }

    /// Perpendicular bisector of `P` and `P' = (m₀, 2s)`.
    ///
    /// Fails where `γ` would be vertical, which has no slope-intercept form.
    pub fn gamma_from_s<T: Scalar>(&self, s: &T) -> Result<Line<T>, FoldError> {
        let p = Point::new(T::from_rational(&self.p.x), T::from_rational(&self.p.y));
        let image = self.p_image(s)?;
        if (image.y.clone() - p.y.clone()).is_zero() {
            return Err(FoldError::DegenerateParameter(s.to_f64()));
        }
        Ok(perpendicular_bisector(&p, &image)?)
    }

    /// y-intercept of `γ(s)` as a rational function of `s`:
    /// `(2s² + (m₀² − pₓ² − p_y²)/2) / (2s − p_y)`.
    fn gamma_intercept(&self, m_x: &BigRational) -> RatFunc {
        let (px, py) = (&self.p.x, &self.p.y);
        let constant = (m_x * m_x - px * px - py * py) / q(2, 1);
        RatFunc::new(
            RatPoly::new(vec![constant, BigRational::zero(), q(2, 1)]),
            RatPoly::new(vec![-py.clone(), q(2, 1)]),
        )
        .expect("denominator has degree one")
    }

    /// `s(t) = p_y/2 − (m₀ − pₓ)·t/(t² − 1)`.
    fn s_of_t(&self, m_x: &BigRational) -> RatFunc {
        let k = m_x - &self.p.x;
        RatFunc::new(
            RatPoly::new(vec![BigRational::zero(), -k]),
            RatPoly::from_ints(&[-1, 0, 1]),
        )
        .expect("t² − 1 is nonzero")
        .add(&RatFunc::constant(&self.p.y / q(2, 1)))
    }
}

/// `δ: y = t(x − t)`, the perpendicular bisector of `Q(0, 1)` and `(2t, −1)`.
pub fn delta_line<T: Scalar>(t: &T) -> Result<Line<T>, FoldError> {
    if t.is_zero() {
        return Err(FoldError::DegenerateParameter(0.0));
    }
    Ok(Line::new(t.clone(), -T::one(), -(t.clone() * t.clone()))?)
}

/// `γ: y = (t² − 1)/(2t)·x − t²`, the line through `(2t, −1)` and `(0, −t²)`.
pub fn gamma_line_from_t<T: Scalar>(t: &T) -> Result<Line<T>, FoldError> {
    if t.is_zero() {
        return Err(FoldError::DegenerateParameter(0.0));
    }
    let t2 = t.clone() * t.clone();
    let two = T::from_i64(2);
    Ok(Line::new(
        t2.clone() - T::one(),
        -(two.clone() * t.clone()),
        -(two * t2 * t.clone()),
    )?)
}

/// `γ` for the hendecagon instance from the height parameter `s` of `P'`.
pub fn gamma_line_from_s<T: Scalar>(s: &T) -> Result<Line<T>, FoldError> {
    TwoFoldConfig::hendecagon().gamma_from_s(s)
}

/// `s = −t/(t² − 1) − 3/2` for the hendecagon instance.
pub fn s_from_t<T: Scalar>(t: &T) -> Result<T, FoldError> {
    TwoFoldConfig::hendecagon().s_from_t(t)
}

/// Monic polynomial in `t` whose real roots are the valid `δ` intercepts.
///
/// Built by exact substitution of `s(t)` into the intercept of `γ(s)` and
/// equating with the intercept `−t²` of `γ(t)`.
pub fn eliminate_to_quintic(config: &TwoFoldConfig) -> Result<RatPoly, FoldError> {
    let m_x = config.m_offset()?;
    let intercept = config
        .gamma_intercept(&m_x)
        .substitute(&config.s_of_t(&m_x))?;
    let t_sq = RatFunc::from(RatPoly::var().pow(2));
    Ok(intercept.add(&t_sq).num().monic())
}

/// One simultaneous fold pair, with its auxiliary points and alignment
/// residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoFoldSolution {
    /// x-intercept of `δ`.
    pub t: f64,
    /// Half the height of `P'` on `m`.
    pub s: f64,
    pub gamma: Line<f64>,
    pub delta: Line<f64>,
    /// `Q'`, the image of `Q` across `δ`.
    pub q_image: Point<f64>,
    /// `P'`, the image of `P` across `γ`.
    pub p_image: Point<f64>,
    /// `R = (t, 0)`, midpoint of `Q` and `Q'`.
    pub r: Point<f64>,
    /// `S = δ ∩ ℓ`.
    pub s_point: Point<f64>,
    /// `T`, midpoint of `P` and `P'`.
    pub t_point: Point<f64>,
    pub residuals: BTreeMap<&'static str, f64>,
    /// Auxiliary points that fall outside the 8×8 sheet.
    pub off_sheet: Vec<&'static str>,
}

impl TwoFoldSolution {
    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }
}

/// Residual names checked for every solution.
pub const Q_ONTO_N: &str = "q_onto_n";
pub const P_ONTO_M: &str = "p_onto_m";
pub const ELL_ONTO_GAMMA: &str = "ell_onto_gamma";
pub const Q_IMAGE_POSITION: &str = "q_image_position";
pub const GAMMA_PARAMETERIZATIONS: &str = "gamma_s_vs_t";

/// All fold pairs for `config`, sorted by descending `t`.
pub fn solve_two_fold(config: &TwoFoldConfig, tol: f64) -> Result<Vec<TwoFoldSolution>, FoldError> {
    let quintic = eliminate_to_quintic(config)?;
    let mut out = Vec::new();
    for t in quintic.real_roots(DEFAULT_REFINE_WIDTH) {
        if [0.0, 1.0, -1.0].iter().any(|v| (t - v).abs() < tol) {
            log::warn!("discarding singular two-fold parameter t = {t}");
            continue;
        }
        out.push(build_solution(config, t, tol)?);
    }
    if out.is_empty() {
        return Err(FoldError::NoRealSolutions);
    }
    out.sort_by(|a, b| b.t.total_cmp(&a.t));
    Ok(out)
}

fn build_solution(config: &TwoFoldConfig, t: f64, tol: f64) -> Result<TwoFoldSolution, FoldError> {
    let p = config.p.to_f64();
    let qp = config.q.to_f64();
    let ell = config.ell.to_f64();
    let m = config.m.to_f64();
    let n = config.n.to_f64();

    let delta = delta_line(&t)?;
    let gamma = gamma_line_from_t(&t)?;
    let s = config.s_from_t(&t)?;
    let q_image = reflect_point(&qp, &delta);
    let p_image = reflect_point(&p, &gamma);
    let s_point = intersect(&delta, &ell)?;
    let r = midpoint(&qp, &q_image);
    let t_point = midpoint(&p, &p_image);

    let mut residuals = BTreeMap::new();
    residuals.insert(Q_ONTO_N, n.evaluate(&q_image).abs());
    residuals.insert(P_ONTO_M, m.evaluate(&p_image).abs());
    residuals.insert(ELL_ONTO_GAMMA, reflect_line(&ell, &delta).defect(&gamma));
    residuals.insert(
        Q_IMAGE_POSITION,
        q_image.distance_squared(&Point::new(2.0 * t, -1.0)).sqrt(),
    );
    let gamma_s_defect = match config.gamma_from_s(&s) {
        Ok(g) => g.defect(&gamma),
        // Vertical γ: compare P' against its predicted position instead.
        Err(FoldError::DegenerateParameter(_)) => {
            p_image.distance_squared(&config.p_image(&s)?).sqrt()
        }
        Err(e) => return Err(e),
    };
    residuals.insert(GAMMA_PARAMETERIZATIONS, gamma_s_defect);

    for (&check, &residual) in &residuals {
        if residual > tol || residual.is_nan() {
            return Err(FoldError::ResidualExceeded { t, check, residual });
        }
    }

    let sheet = Frame::standard().rect();
    let off_sheet = [
        ("Q'", &q_image),
        ("P'", &p_image),
        ("R", &r),
        ("S", &s_point),
        ("T", &t_point),
    ]
    .into_iter()
    .filter(|(_, pt)| !sheet.contains(pt, tol))
    .map(|(name, _)| name)
    .collect();

    Ok(TwoFoldSolution {
        t,
        s,
        gamma,
        delta,
        q_image,
        p_image,
        r,
        s_point,
        t_point,
        residuals,
        off_sheet,
    })
}
