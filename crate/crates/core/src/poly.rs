//! Univariate polynomials and rational functions over ℚ, with
//! Sturm-certified real root isolation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Bisection stops once a root bracket is this narrow.
pub const DEFAULT_REFINE_WIDTH: f64 = 1e-12;

const MAX_NEWTON_STEPS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("denominator vanishes identically after substitution")]
    IdenticallyZeroDenominator,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Polynomial with rational coefficients in ascending degree order.
///
/// The leading coefficient is nonzero; the zero polynomial has no
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    /// Ascending integer coefficients: `from_ints(&[1, 0, 1])` is `1 + t²`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        RatPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        RatPoly::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn var() -> Self {
        RatPoly::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, k: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides through by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => RatPoly::zero(),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &RatPoly) -> RatPoly {
        self.coeffs.iter().rev().fold(RatPoly::zero(), |acc, c| {
            &(&acc * inner) + &RatPoly::constant(c.clone())
        })
    }

    pub fn pow(&self, k: u32) -> RatPoly {
        (0..k).fold(RatPoly::constant(rat(1)), |acc, _| &acc * self)
    }

    pub fn div_rem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lc_inv = divisor.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() * &lc_inv;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &factor * c;
            }
            quot[k] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((RatPoly::new(quot), RatPoly::new(rem)))
    }

    pub fn rem(&self, divisor: &RatPoly) -> Result<RatPoly, PolyError> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, each simple.
    pub fn square_free_part(&self) -> RatPoly {
        if self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g)
            .expect("gcd of a nonzero polynomial is nonzero")
            .0
    }

    fn sign_at(&self, x: &BigRational) -> Ordering {
        self.eval(x).cmp(&BigRational::zero())
    }

    /// Sign as `x → +∞` (`positive = true`) or `x → −∞`.
    fn sign_at_infinity(&self, positive: bool) -> Ordering {
        let Some(lc) = self.leading() else {
            return Ordering::Equal;
        };
        let s = lc.cmp(&BigRational::zero());
        if positive || self.degree().unwrap().is_multiple_of(2) {
            s
        } else {
            s.reverse()
        }
    }

    /// Strict upper bound on the absolute value of every root.
    pub fn cauchy_bound(&self) -> BigRational {
        let Some(lc) = self.leading() else {
            return rat(1);
        };
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lc).abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        rat(1) + max
    }

    /// Number of distinct real roots, by Sturm's theorem over `(−∞, ∞)`.
    pub fn count_real_roots(&self) -> usize {
        if self.is_constant() {
            return 0;
        }
        let sturm = SturmSequence::new(self);
        sturm.variations_at_infinity(false) - sturm.variations_at_infinity(true)
    }

    /// Disjoint certified brackets, one per distinct real root, ascending.
    pub fn isolate_real_roots(&self) -> Vec<RootInterval> {
        if self.is_constant() {
            return Vec::new();
        }
        let sqf = self.square_free_part();
        let sturm = SturmSequence::new(&sqf);
        let repeated = self.gcd(&self.derivative());
        let repeated_sturm = (!repeated.is_constant()).then(|| SturmSequence::new(&repeated));

        let bound = sqf.cauchy_bound();
        let mut stack = vec![(-bound.clone(), bound)];
        let mut out = Vec::new();
        while let Some((lo, hi)) = stack.pop() {
            let count = sturm.count_in(&lo, &hi);
            match count {
                0 => {}
                1 => {
                    let simple = repeated_sturm
                        .as_ref()
                        .is_none_or(|s| s.count_in(&lo, &hi) == 0);
                    out.push(RootInterval { lo, hi, simple });
                }
                _ => {
                    let mid = split_point(&sqf, &lo, &hi);
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        out.sort_by(|a, b| a.lo.cmp(&b.lo));
        out
    }

    /// Narrows `iv` to width `tol` by exact bisection, then polishes with at
    /// most three Newton steps that must stay inside the bracket.
    pub fn refine_root(&self, iv: &RootInterval, tol: f64) -> f64 {
        let sqf = self.square_free_part();
        let width = BigRational::from_float(tol.max(f64::MIN_POSITIVE))
            .unwrap_or_else(|| BigRational::new(1.into(), BigInt::from(10).pow(12)));
        let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
        let hi_sign = sqf.sign_at(&hi);
        if hi_sign == Ordering::Equal {
            return hi.to_f64().unwrap_or(f64::NAN);
        }
        let two = rat(2);
        while &hi - &lo > width {
            let mid = (&lo + &hi) / &two;
            match sqf.sign_at(&mid) {
                Ordering::Equal => return mid.to_f64().unwrap_or(f64::NAN),
                s if s == hi_sign => hi = mid,
                _ => lo = mid,
            }
        }
        let (lo_f, hi_f) = (lo.to_f64().unwrap(), hi.to_f64().unwrap());
        let deriv = sqf.derivative();
        let mut x = ((&lo + &hi) / &two).to_f64().unwrap();
        for _ in 0..MAX_NEWTON_STEPS {
            let slope = deriv.eval_f64(x);
            if slope == 0.0 || !slope.is_finite() {
                break;
            }
            let next = x - sqf.eval_f64(x) / slope;
            if !(lo_f..=hi_f).contains(&next) {
                break;
            }
            x = next;
        }
        x.clamp(lo_f, hi_f)
    }

    /// Isolates and refines every distinct real root, ascending.
    pub fn real_roots(&self, tol: f64) -> Vec<f64> {
        self.isolate_real_roots()
            .iter()
            .map(|iv| self.refine_root(iv, tol))
            .collect()
    }
}

/// First of `1/2, 1/3, 2/3, 1/4, …` along `(lo, hi)` that is not a root.
fn split_point(p: &RatPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let width = hi - lo;
    for den in 2i64.. {
        for num in 1..den {
            let mid = lo + &width * BigRational::new(num.into(), den.into());
            if p.sign_at(&mid) != Ordering::Equal {
                return mid;
            }
        }
    }
    unreachable!("a nonzero polynomial has finitely many roots")
}

struct SturmSequence {
    chain: Vec<RatPoly>,
}

impl SturmSequence {
    /// Built from the square-free part, so it counts distinct roots.
    fn new(p: &RatPoly) -> Self {
        let p0 = p.square_free_part();
        let mut chain = vec![p0.clone(), p0.derivative()];
        loop {
            let n = chain.len();
            let r = chain[n - 2]
                .rem(&chain[n - 1])
                .expect("chain members are nonzero");
            if r.is_zero() {
                break;
            }
            // Positive rescaling keeps signs and keeps coefficients small.
            let lc = r.leading().unwrap().abs();
            chain.push(-r.scale(&lc.recip()));
        }
        SturmSequence { chain }
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_infinity(positive)))
    }

    /// Distinct roots in `(lo, hi]`.
    fn count_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at(lo)
            .saturating_sub(self.variations_at(hi))
    }
}

/// A bracket `(lo, hi]` holding exactly one distinct real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    /// The root has multiplicity one in the original polynomial.
    pub simple: bool,
}

impl RootInterval {
    pub fn contains(&self, x: f64) -> bool {
        let (lo, hi) = (self.lo.to_f64().unwrap(), self.hi.to_f64().unwrap());
        lo <= x && x <= hi
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;

    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        RatPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;

    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self + &(-rhs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        -&self
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;

    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident, $ty:ty) => {
        impl $tr for $ty {
            type Output = $ty;

            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add, RatPoly);
forward_owned!(Sub, sub, RatPoly);
forward_owned!(Mul, mul, RatPoly);

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", crate::geom::format_rational(&mag))?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Reduced quotient of polynomials: coprime, monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: RatPoly,
    den: RatPoly,
}

impl RatFunc {
    pub fn new(num: RatPoly, den: RatPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let g = num.gcd(&den);
        let g = if g.is_zero() {
            RatPoly::constant(rat(1))
        } else {
            g
        };
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lc_inv = den.leading().unwrap().recip();
        Ok(RatFunc {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        })
    }

    pub fn constant(c: BigRational) -> Self {
        RatFunc::from(RatPoly::constant(c))
    }

    pub fn var() -> Self {
        RatFunc::from(RatPoly::var())
    }

    pub fn num(&self) -> &RatPoly {
        &self.num
    }

    pub fn den(&self) -> &RatPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("product of nonzero denominators is nonzero")
    }

    pub fn sub(&self, rhs: &RatFunc) -> RatFunc {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators is nonzero")
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc, PolyError> {
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// `None` where the denominator vanishes.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Replaces the variable with `value`, returning a reduced function of
    /// the variable of `value`.
    pub fn substitute(&self, value: &RatFunc) -> Result<RatFunc, PolyError> {
        let horner = |p: &RatPoly| {
            p.coeffs()
                .iter()
                .rev()
                .fold(RatFunc::from(RatPoly::zero()), |acc, c| {
                    acc.mul(value).add(&RatFunc::constant(c.clone()))
                })
        };
        let num = horner(&self.num);
        let den = horner(&self.den);
        if den.is_zero() {
            return Err(PolyError::IdenticallyZeroDenominator);
        }
        num.div(&den)
    }
}

impl From<RatPoly> for RatFunc {
    fn from(p: RatPoly) -> Self {
        RatFunc {
            num: p,
            den: RatPoly::constant(rat(1)),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
