//! Ground-field scalars.
//!
//! Three representations share one type so that algebras, matrices and
//! elements stay monomorphic:
//!
//! * exact rationals,
//! * exact elements `p + q·√d` of a quadratic extension (Gaussian rationals
//!   are the case `d = -1`),
//! * complex floating-point values carrying a zero tolerance `ε`.
//!
//! Binary operations promote: rational ⊂ quadratic ⊂ float. Two quadratic
//! values over different extensions meet in the float representation, which
//! is then no longer certified.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{EacpError, Result};

/// Default zero tolerance of the float backend.
pub const DEFAULT_EPSILON: f64 = 1e-12;

#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    /// `re + im·√d` with `d` squarefree, `d ∉ {0, 1}` and `im ≠ 0`.
    Quadratic { re: BigRational, im: BigRational, d: i64 },
    /// Complex float; values with modulus `≤ eps` count as zero.
    Float { re: f64, im: f64, eps: f64 },
}

/// Field an algebra is declared over.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Field {
    Rational,
    Gaussian,
    Quadratic(i64),
    Float(f64),
}

impl Field {
    pub fn name(&self) -> &'static str {
        match self {
            Field::Rational => "rational",
            Field::Gaussian => "gaussian",
            Field::Quadratic(_) => "quadratic",
            Field::Float(_) => "float",
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Field::Float(_))
    }

    /// Smallest field containing every scalar in `values`.
    pub fn infer<'a, I: IntoIterator<Item = &'a Scalar>>(values: I) -> Result<Field> {
        let mut field = Field::Rational;
        for v in values {
            field = field.join(v.field())?;
        }
        Ok(field)
    }

    fn join(self, other: Field) -> Result<Field> {
        use Field::*;
        match (self, other) {
            (Rational, f) | (f, Rational) => Ok(f),
            (Float(a), Float(b)) => Ok(Float(a.max(b))),
            (Float(_), _) | (_, Float(_)) => Err(EacpError::MixedBackends(
                "float entries cannot be mixed with exact entries".into(),
            )),
            (a, b) if a.quadratic_d() == b.quadratic_d() => Ok(a),
            (a, b) => Err(EacpError::MixedBackends(format!(
                "entries from Q(sqrt({})) and Q(sqrt({}))",
                a.quadratic_d().unwrap_or(0),
                b.quadratic_d().unwrap_or(0)
            ))),
        }
    }

    fn quadratic_d(&self) -> Option<i64> {
        match self {
            Field::Gaussian => Some(-1),
            Field::Quadratic(d) => Some(*d),
            _ => None,
        }
    }

    /// Maps `value` into this field, failing when it does not embed.
    pub fn embed(&self, value: &Scalar) -> Result<Scalar> {
        match (self, value) {
            (Field::Float(eps), v) => {
                let (re, im) = v.to_complex();
                Ok(Scalar::Float { re, im, eps: v.eps().unwrap_or(0.0).max(*eps) })
            }
            (_, Scalar::Rational(_)) => Ok(value.clone()),
            (f, Scalar::Quadratic { d, .. }) if f.quadratic_d() == Some(*d) => Ok(value.clone()),
            (f, v) => Err(EacpError::MixedBackends(format!(
                "value {v} does not belong to the {} field",
                f.name()
            ))),
        }
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `n / d`; panics on `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Scalar::Rational(rat(n, d))
    }

    pub fn rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    /// `re + im·√d`, normalising square factors out of `d`.
    pub fn quadratic(re: BigRational, im: BigRational, d: i64) -> Self {
        if im.is_zero() || d == 0 {
            return Scalar::Rational(re);
        }
        let (s, core) = squarefree_i64(d);
        let im = im * BigRational::from_integer(BigInt::from(s));
        if core == 1 {
            return Scalar::Rational(re + im);
        }
        Scalar::Quadratic { re, im, d: core }
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        Scalar::quadratic(re, im, -1)
    }

    pub fn float(re: f64, im: f64, eps: f64) -> Self {
        Scalar::Float { re, im, eps }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Quadratic { d: -1, .. } => Field::Gaussian,
            Scalar::Quadratic { d, .. } => Field::Quadratic(*d),
            Scalar::Float { eps, .. } => Field::Float(*eps),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Float { .. })
    }

    pub fn eps(&self) -> Option<f64> {
        match self {
            Scalar::Float { eps, .. } => Some(*eps),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Quadratic { re, im, .. } => re.is_zero() && im.is_zero(),
            Scalar::Float { re, im, eps } => re.hypot(*im) <= *eps,
        }
    }

    pub fn is_one(&self) -> bool {
        (self - &Scalar::one()).is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Sign of a real exact value: rationals and `Q(√d)` with `d > 0`.
    pub fn real_sign(&self) -> Option<Ordering> {
        match self {
            Scalar::Rational(r) => Some(r.cmp(&BigRational::zero())),
            Scalar::Quadratic { re, im, d } if *d > 0 => {
                // sign of re + im·√d
                let sr = re.cmp(&BigRational::zero());
                let si = im.cmp(&BigRational::zero());
                if sr == si || sr == Ordering::Equal {
                    return Some(si);
                }
                if si == Ordering::Equal {
                    return Some(sr);
                }
                let lhs = re * re;
                let rhs = im * im * BigRational::from_integer(BigInt::from(*d));
                Some(if lhs > rhs { sr } else { si })
            }
            _ => None,
        }
    }

    pub fn to_complex(&self) -> (f64, f64) {
        match self {
            Scalar::Rational(r) => (r.to_f64().unwrap_or(f64::NAN), 0.0),
            Scalar::Quadratic { re, im, d } => {
                let re = re.to_f64().unwrap_or(f64::NAN);
                let im = im.to_f64().unwrap_or(f64::NAN);
                let root = (d.unsigned_abs() as f64).sqrt();
                if *d < 0 {
                    (re, im * root)
                } else {
                    (re + im * root, 0.0)
                }
            }
            Scalar::Float { re, im, .. } => (*re, *im),
        }
    }

    pub fn to_float(&self, eps: f64) -> Scalar {
        let (re, im) = self.to_complex();
        Scalar::Float { re, im, eps: self.eps().unwrap_or(0.0).max(eps) }
    }

    pub fn abs_f64(&self) -> f64 {
        let (re, im) = self.to_complex();
        re.hypot(im)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Quadratic { re, im, d } => {
                let norm = re * re - im * im * BigRational::from_integer(BigInt::from(*d));
                Scalar::quadratic(re / &norm, -(im / &norm), *d)
            }
            Scalar::Float { re, im, eps } => {
                let m = re * re + im * im;
                Scalar::Float { re: re / m, im: -im / m, eps: *eps }
            }
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact square root inside `Q` or a quadratic extension of `Q`.
    pub fn sqrt_exact(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => sqrt_rational(r),
            Scalar::Quadratic { re, im, d } => sqrt_quadratic(re, im, *d),
            Scalar::Float { .. } => None,
        }
    }

    /// Square root; falls back to the float backend when no exact root exists.
    pub fn sqrt(&self, eps: f64) -> Scalar {
        if let Some(s) = self.sqrt_exact() {
            return s;
        }
        let (re, im) = self.to_complex();
        let c = num_complex::Complex64::new(re, im).sqrt();
        Scalar::Float { re: c.re, im: c.im, eps: self.eps().unwrap_or(0.0).max(eps) }
    }

    /// Deterministic total order used for sorting output.
    pub fn total_cmp(&self, other: &Scalar) -> Ordering {
        fn rank(s: &Scalar) -> u8 {
            match s {
                Scalar::Rational(_) => 0,
                Scalar::Quadratic { .. } => 1,
                Scalar::Float { .. } => 2,
            }
        }
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (
                Scalar::Quadratic { re: a, im: ai, d: da },
                Scalar::Quadratic { re: b, im: bi, d: db },
            ) => da.cmp(db).then(a.cmp(b)).then(ai.cmp(bi)),
            (Scalar::Float { re: a, im: ai, .. }, Scalar::Float { re: b, im: bi, .. }) => {
                a.total_cmp(b).then(ai.total_cmp(bi))
            }
            _ => rank(self).cmp(&rank(other)),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_i64(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

enum Promoted {
    Rat(BigRational, BigRational),
    Quad(BigRational, BigRational, BigRational, BigRational, i64),
    Flt(f64, f64, f64, f64, f64),
}

fn promote(a: &Scalar, b: &Scalar) -> Promoted {
    use Scalar::*;
    match (a, b) {
        (Rational(x), Rational(y)) => Promoted::Rat(x.clone(), y.clone()),
        (Rational(x), Quadratic { re, im, d }) => {
            Promoted::Quad(x.clone(), BigRational::zero(), re.clone(), im.clone(), *d)
        }
        (Quadratic { re, im, d }, Rational(y)) => {
            Promoted::Quad(re.clone(), im.clone(), y.clone(), BigRational::zero(), *d)
        }
        (Quadratic { re: r1, im: i1, d: d1 }, Quadratic { re: r2, im: i2, d: d2 }) if d1 == d2 => {
            Promoted::Quad(r1.clone(), i1.clone(), r2.clone(), i2.clone(), *d1)
        }
        _ => {
            let eps = a.eps().unwrap_or(0.0).max(b.eps().unwrap_or(0.0));
            let eps = if eps == 0.0 { DEFAULT_EPSILON } else { eps };
            let (ar, ai) = a.to_complex();
            let (br, bi) = b.to_complex();
            Promoted::Flt(ar, ai, br, bi, eps)
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match promote(self, rhs) {
            Promoted::Rat(a, b) => Scalar::Rational(a + b),
            Promoted::Quad(a, ai, b, bi, d) => Scalar::quadratic(a + b, ai + bi, d),
            Promoted::Flt(a, ai, b, bi, eps) => Scalar::Float { re: a + b, im: ai + bi, eps },
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match promote(self, rhs) {
            Promoted::Rat(a, b) => Scalar::Rational(a - b),
            Promoted::Quad(a, ai, b, bi, d) => Scalar::quadratic(a - b, ai - bi, d),
            Promoted::Flt(a, ai, b, bi, eps) => Scalar::Float { re: a - b, im: ai - bi, eps },
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match promote(self, rhs) {
            Promoted::Rat(a, b) => Scalar::Rational(a * b),
            Promoted::Quad(a, ai, b, bi, d) => {
                let dd = BigRational::from_integer(BigInt::from(d));
                let re = &a * &b + &ai * &bi * dd;
                let im = a * bi + ai * b;
                Scalar::quadratic(re, im, d)
            }
            Promoted::Flt(a, ai, b, bi, eps) => Scalar::Float {
                re: a * b - ai * bi,
                im: a * bi + ai * b,
                eps,
            },
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quadratic { re, im, d } => Scalar::Quadratic { re: -re, im: -im, d: *d },
            Scalar::Float { re, im, eps } => Scalar::Float { re: -re, im: -im, eps: *eps },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &'a Scalar) -> Scalar { (&self).$f(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar { self.$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Quadratic { re, im, d } => {
                let unit = if *d == -1 { "i".to_string() } else { format!("sqrt({d})") };
                let im_part = if im.is_one() {
                    unit
                } else if (-im).is_one() {
                    format!("-{unit}")
                } else {
                    format!("{}*{unit}", fmt_rational(im))
                };
                if re.is_zero() {
                    write!(f, "{im_part}")
                } else if let Some(rest) = im_part.strip_prefix('-') {
                    write!(f, "{} - {rest}", fmt_rational(re))
                } else {
                    write!(f, "{} + {im_part}", fmt_rational(re))
                }
            }
            Scalar::Float { re, im, .. } => {
                if *im == 0.0 {
                    write!(f, "{re:e}")
                } else {
                    write!(f, "{re:e}{im:+e}i")
                }
            }
        }
    }
}

pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"`, `"p/q"` or a decimal such as `"-0.25"`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = |msg: &str| EacpError::Parse { field: text.to_string(), message: msg.to_string() };
    if s.is_empty() {
        return Err(bad("empty number"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad("bad numerator"))?;
        let q: BigInt = q.trim().parse().map_err(|_| bad("bad denominator"))?;
        if q.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int_digits = int.trim().trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac.is_empty())
        {
            return Err(bad("bad decimal"));
        }
        let digits = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac);
        let n: BigInt = digits.parse().map_err(|_| bad("bad decimal"))?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(n, d);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().map_err(|_| bad("not a rational number"))?;
    Ok(BigRational::from_integer(n))
}

/// `n = s²·core` with `core` squarefree (sign kept on `core`).
fn squarefree_i64(n: i64) -> (i64, i64) {
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut s: u64 = 1;
    let mut core: u64 = 1;
    let mut p: u64 = 2;
    while p * p <= m && p < 1_000_000 {
        while m.is_multiple_of(p * p) {
            m /= p * p;
            s *= p;
        }
        if m.is_multiple_of(p) {
            m /= p;
            core *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    core *= m;
    (s as i64, sign * core as i64)
}

/// Factors `n = s²·core` with `core` squarefree; `None` when `n` is too large
/// to decide by trial division.
pub(crate) fn squarefree_part(n: &BigUint) -> Option<(BigUint, BigUint)> {
    const BOUND: u128 = 100_000;
    let mut m = n.to_u128()?;
    if m == 0 {
        return Some((BigUint::zero(), BigUint::one()));
    }
    let mut s: u128 = 1;
    let mut core: u128 = 1;
    let mut p: u128 = 2;
    while p <= BOUND && p * p <= m {
        while m % (p * p) == 0 {
            m /= p * p;
            s *= p;
        }
        if m % p == 0 {
            m /= p;
            core *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        let r = m.sqrt();
        if r * r == m {
            s *= r;
        } else if m < BOUND * BOUND * BOUND || p * p > m {
            // no prime factor ≤ BOUND: m is p, p·q (p ≠ q) or p²
            core = core.checked_mul(m)?;
        } else {
            return None;
        }
    }
    Some((BigUint::from(s), BigUint::from(core)))
}

fn sqrt_bigint_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn sqrt_rational_exact(r: &BigRational) -> Option<BigRational> {
    Some(BigRational::new(sqrt_bigint_exact(r.numer())?, sqrt_bigint_exact(r.denom())?))
}

fn sqrt_rational(r: &BigRational) -> Option<Scalar> {
    if r.is_zero() {
        return Some(Scalar::zero());
    }
    let neg = r.is_negative();
    let a = r.abs();
    if let Some(s) = sqrt_rational_exact(&a) {
        return Some(if neg { Scalar::gaussian(BigRational::zero(), s) } else { Scalar::Rational(s) });
    }
    // sqrt(p/q) = sqrt(p·q)/q
    let pq = (a.numer() * a.denom()).to_biguint()?;
    let (s, core) = squarefree_part(&pq)?;
    let core = core.to_i64()?;
    let coeff = BigRational::new(BigInt::from_biguint(Sign::Plus, s), a.denom().clone());
    Some(Scalar::quadratic(BigRational::zero(), coeff, if neg { -core } else { core }))
}

fn sqrt_quadratic(re: &BigRational, im: &BigRational, d: i64) -> Option<Scalar> {
    // (x + y√d)² = re + im√d  ⇔  x² + d·y² = re, 2xy = im, so x² = (re ± √N)/2
    let dd = BigRational::from_integer(BigInt::from(d));
    let norm = re * re - im * im * &dd;
    let s = sqrt_rational_exact(&norm)?;
    let two = rat(2, 1);
    for cand in [(re + &s) / &two, (re - &s) / &two] {
        if cand.is_zero() {
            continue;
        }
        if let Some(x) = sqrt_rational_exact(&cand) {
            let y = im / (&two * &x);
            return Some(Scalar::quadratic(x, y, d));
        }
    }
    None
}
