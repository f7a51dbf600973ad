//! Characteristic polynomials and their roots.
//!
//! Roots are found exactly whenever they live in `Q` or in a quadratic
//! extension reachable by the quadratic formula; anything else comes back as
//! an uncertified float approximation in [`Roots::approximate`].

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::Matrix;
use crate::scalar::{Scalar, DEFAULT_EPSILON};

/// Polynomial coefficients, lowest degree first.
pub type Poly = Vec<Scalar>;

#[derive(Clone, Debug, Default)]
pub struct Roots {
    /// Distinct exact roots with multiplicities.
    pub exact: Vec<(Scalar, usize)>,
    /// Roots that could only be approximated.
    pub approximate: Vec<Scalar>,
}

impl Roots {
    pub fn is_complete(&self) -> bool {
        self.approximate.is_empty()
    }

    pub fn distinct_exact(&self) -> Vec<Scalar> {
        self.exact.iter().map(|(r, _)| r.clone()).collect()
    }

    fn push_exact(&mut self, r: Scalar) {
        match self.exact.iter_mut().find(|(x, _)| *x == r) {
            Some((_, m)) => *m += 1,
            None => self.exact.push((r, 1)),
        }
    }
}

/// Monic characteristic polynomial `det(xI − A)` (Faddeev–LeVerrier).
pub fn charpoly(a: &Matrix) -> Poly {
    assert!(a.is_square());
    let n = a.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m).expect("square").add(&Matrix::identity(n).scale(&coeffs[n - k + 1]));
        let am = a.mul(&m).expect("square");
        coeffs[n - k] = -(am.trace() / Scalar::from_i64(k as i64));
    }
    coeffs
}

pub fn eval(p: &[Scalar], x: &Scalar) -> Scalar {
    p.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
}

fn trim(p: &[Scalar]) -> Poly {
    let mut p = p.to_vec();
    while p.len() > 1 && p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

/// Divides by `(x − r)`; the caller guarantees `r` is a root.
fn deflate(p: &[Scalar], r: &Scalar) -> Poly {
    let d = p.len() - 1;
    let mut q = vec![Scalar::zero(); d];
    let mut carry = Scalar::zero();
    for i in (0..d).rev() {
        carry = &p[i + 1] + &(&carry * r);
        q[i] = carry.clone();
    }
    q
}

/// All roots of `p` (not identically zero).
pub fn roots(p: &[Scalar]) -> Roots {
    let mut p = trim(p);
    let mut out = Roots::default();
    if p.len() <= 1 {
        return out;
    }
    while p.len() > 1 && p[0].is_zero() {
        out.push_exact(Scalar::zero());
        p.remove(0);
    }
    if p.iter().all(Scalar::is_exact) {
        for r in rational_root_candidates(&p) {
            while p.len() > 1 && eval(&p, &r).is_zero() {
                out.push_exact(r.clone());
                p = deflate(&p, &r);
            }
        }
    }
    match p.len() - 1 {
        0 => {}
        1 => out.push_exact(-(&p[0] / &p[1])),
        2 => {
            let disc = &p[1] * &p[1] - Scalar::from_i64(4) * &p[0] * &p[2];
            let two_a = Scalar::from_i64(2) * &p[2];
            let s = disc.sqrt(DEFAULT_EPSILON);
            let r1 = (-&p[1] + &s) / &two_a;
            let r2 = (-&p[1] - &s) / &two_a;
            if s.is_exact() {
                out.push_exact(r1);
                out.push_exact(r2);
            } else {
                out.approximate.push(r1);
                out.approximate.push(r2);
            }
        }
        _ => {
            let eps = p.iter().filter_map(Scalar::eps).fold(DEFAULT_EPSILON, f64::max);
            for z in numeric_roots(&p) {
                out.approximate.push(Scalar::float(z.re, z.im, eps));
            }
        }
    }
    out
}

/// Candidate rational roots of an exact polynomial.
fn rational_root_candidates(p: &[Scalar]) -> Vec<Scalar> {
    // a rational root of p over Q(√d) is a common root of its rational
    // and irrational parts
    let mut re = Vec::with_capacity(p.len());
    let mut im = Vec::with_capacity(p.len());
    for c in p {
        match c {
            Scalar::Rational(r) => {
                re.push(r.clone());
                im.push(BigRational::zero());
            }
            Scalar::Quadratic { re: a, im: b, .. } => {
                re.push(a.clone());
                im.push(b.clone());
            }
            Scalar::Float { .. } => return Vec::new(),
        }
    }
    let part = if re.iter().skip(1).any(|c| !c.is_zero()) { re } else { im };
    let part = trim_rat(part);
    if part.len() <= 1 {
        return Vec::new();
    }
    let ints = clear_denominators(&part);
    integer_rational_roots(&ints).into_iter().map(Scalar::Rational).collect()
}

fn trim_rat(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
    }
    p
}

fn clear_denominators(p: &[BigRational]) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect()
}

fn eval_int(p: &[BigInt], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots of an integer polynomial with nonzero constant term.
fn integer_rational_roots(p: &[BigInt]) -> Vec<BigRational> {
    const DIVISOR_LIMIT: u64 = 1_000_000_000_000;
    let c0 = p[0].abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT);
    let cn = p[p.len() - 1].abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT);
    let mut found: Vec<BigRational> = Vec::new();
    let test = |cand: BigRational, found: &mut Vec<BigRational>| {
        if !found.contains(&cand) && eval_int(p, &cand).is_zero() {
            found.push(cand);
        }
    };
    if let (Some(c0), Some(cn)) = (c0, cn) {
        let dp = divisors(c0);
        let dq = divisors(cn);
        if dp.len() * dq.len() <= 50_000 {
            for &a in &dp {
                for &b in &dq {
                    for sign in [1i64, -1] {
                        let cand = BigRational::new(BigInt::from(a) * sign, BigInt::from(b));
                        test(cand, &mut found);
                    }
                }
            }
            return found;
        }
    }
    // numeric guidance for large coefficients: round approximate real roots
    // to nearby fractions and verify exactly
    let approx: Vec<Complex64> = numeric_roots(
        &p.iter().map(|c| Scalar::Rational(BigRational::from_integer(c.clone()))).collect::<Vec<_>>(),
    );
    for z in approx {
        if z.im.abs() > 1e-6 * z.norm().max(1.0) {
            continue;
        }
        for cand in convergents(z.re, 1_000_000_000) {
            test(cand, &mut found);
        }
    }
    found
}

/// Continued-fraction convergents of `x` with denominators up to `max_den`.
fn convergents(x: f64, max_den: i64) -> Vec<BigRational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..40 {
        if !v.is_finite() || v.abs() > 1e15 {
            break;
        }
        let a = v.floor() as i128;
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        out.push(BigRational::new(BigInt::from(h2), BigInt::from(k2)));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - v.floor();
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    out
}

/// Aberth–Ehrlich iteration on a polynomial with `deg ≥ 1`.
pub fn numeric_roots(p: &[Scalar]) -> Vec<Complex64> {
    let c: Vec<Complex64> = p
        .iter()
        .map(|s| {
            let (re, im) = s.to_complex();
            Complex64::new(re, im)
        })
        .collect();
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let radius = 1.0 + monic[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    let evalc = |x: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::zero();
        let mut dv = Complex64::zero();
        for a in monic.iter().rev() {
            dv = dv * x + v;
            v = v * x + a;
        }
        (v, dv)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, dv) = evalc(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::one() - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm());
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn charpoly_of_companion_matrix() {
        // x^2 - x - 1
        let a = Matrix::from_ratios(&[&[(1, 1), (1, 1)], &[(1, 1), (0, 1)]]).unwrap();
        assert_eq!(charpoly(&a), vec![q(-1, 1), q(-1, 1), q(1, 1)]);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // (x - 1/2)^2 (x + 3) = x^3 + 2x^2 - 11/4 x + 3/4
        let p = vec![q(3, 4), q(-11, 4), q(2, 1), q(1, 1)];
        let r = roots(&p);
        assert!(r.is_complete());
        assert!(r.exact.contains(&(q(1, 2), 2)));
        assert!(r.exact.contains(&(q(-3, 1), 1)));
    }

    #[test]
    fn quadratic_irrational_roots_are_exact() {
        // x^2 - x - 1: golden ratio, lives in Q(√5)
        let r = roots(&[q(-1, 1), q(-1, 1), q(1, 1)]);
        assert!(r.is_complete());
        assert_eq!(r.exact.len(), 2);
        for (x, _) in &r.exact {
            assert!(matches!(x, Scalar::Quadratic { d: 5, .. }));
            assert!(eval(&[q(-1, 1), q(-1, 1), q(1, 1)], x).is_zero());
        }
        // x^2 + 1 over the Gaussian rationals
        let r = roots(&[q(1, 1), q(0, 1), q(1, 1)]);
        assert!(r.exact.iter().all(|(x, _)| matches!(x, Scalar::Quadratic { d: -1, .. })));
    }

    #[test]
    fn irreducible_cubic_is_approximate() {
        // x^3 - 2
        let r = roots(&[q(-2, 1), q(0, 1), q(0, 1), q(1, 1)]);
        assert!(!r.is_complete());
        assert_eq!(r.approximate.len(), 3);
        let real = r.approximate.iter().find(|z| z.to_complex().1.abs() < 1e-9).unwrap();
        assert!((real.to_complex().0 - 2f64.cbrt()).abs() < 1e-9);
    }

    #[test]
    fn large_coefficients_use_numeric_guidance() {
        // (x - 123457/1000003) (x^2 + 1)
        let r0 = BigRational::new(BigInt::from(123457), BigInt::from(1000003));
        let root = Scalar::Rational(r0);
        let p = vec![-root.clone(), q(1, 1), -root, q(1, 1)];
        let r = roots(&p);
        assert!(r.is_complete(), "{r:?}");
        assert_eq!(r.exact.len(), 3);
    }
}
