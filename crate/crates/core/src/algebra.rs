//! Structural constants, elements and the EACP product.
//!
//! Generators are indexed from zero internally (`Generator::H(0)` is `h1`);
//! user-facing text uses one-based names.

use std::fmt;

use crate::error::{EacpError, Result};
use crate::matrix::{self, Matrix};
use crate::scalar::{Field, Scalar};

/// `M = A ⊕ b`: the `n × (n+1)` matrix of structural constants.
#[derive(Clone, Debug, PartialEq)]
pub struct StructuralMatrix {
    a: Matrix,
    b: Vec<Scalar>,
}

impl StructuralMatrix {
    pub fn new(a: Matrix, b: Vec<Scalar>) -> Result<Self> {
        if !a.is_square() {
            return Err(EacpError::DimensionMismatch(format!(
                "A must be square, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        if b.len() != a.rows() {
            return Err(EacpError::DimensionMismatch(format!(
                "b has length {}, expected {}",
                b.len(),
                a.rows()
            )));
        }
        Ok(StructuralMatrix { a, b })
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &[Scalar] {
        &self.b
    }

    /// The rectangular `n × (n+1)` matrix `[A | b]`.
    pub fn to_matrix(&self) -> Matrix {
        let rows = (0..self.n())
            .map(|i| {
                let mut row = self.a.row(i).to_vec();
                row.push(self.b[i].clone());
                row
            })
            .collect();
        Matrix::from_rows(rows).expect("rectangular")
    }

    /// `[A | b]` padded with a zero last row to `(n+1) × (n+1)`.
    pub fn padded(&self) -> Matrix {
        let mut rows = self.to_matrix().to_rows();
        rows.push(vec![Scalar::zero(); self.n() + 1]);
        Matrix::from_rows(rows).expect("square")
    }

    /// `MH = AB ⊕ Ac` for `M = A ⊕ b`, `H = B ⊕ c`.
    pub fn oplus_product(&self, other: &StructuralMatrix) -> Result<StructuralMatrix> {
        if self.n() != other.n() {
            return Err(EacpError::DimensionMismatch(format!(
                "⊕-product of sizes {} and {}",
                self.n(),
                other.n()
            )));
        }
        let ab = self.a.mul(&other.a)?;
        let ac = self.a.mul_vec(&other.b);
        StructuralMatrix::new(ab, ac)
    }

    /// `M^m = A^m ⊕ A^(m-1) b` for `m ≥ 1`.
    pub fn oplus_power(&self, m: u64) -> Result<StructuralMatrix> {
        if m == 0 {
            return Err(EacpError::InvalidArgument("⊕-power needs m ≥ 1".into()));
        }
        let prev = self.a.pow(m - 1)?;
        let am = prev.mul(&self.a)?;
        let col = prev.mul_vec(&self.b);
        StructuralMatrix::new(am, col)
    }
}

/// Basis generator of an EACP.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    H(usize),
    R,
}

impl Generator {
    pub fn name(&self, n: usize) -> String {
        match self {
            Generator::H(_) if n == 1 => "h".to_string(),
            Generator::H(i) => format!("h{}", i + 1),
            Generator::R => "r".to_string(),
        }
    }
}

/// `x = Σ α_i h_i + β r`.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    alpha: Vec<Scalar>,
    beta: Scalar,
}

impl Element {
    pub fn new(alpha: Vec<Scalar>, beta: Scalar) -> Self {
        Element { alpha, beta }
    }

    pub fn zero(n: usize) -> Self {
        Element { alpha: vec![Scalar::zero(); n], beta: Scalar::zero() }
    }

    pub fn generator(n: usize, g: Generator) -> Self {
        let mut x = Element::zero(n);
        match g {
            Generator::H(i) => x.alpha[i] = Scalar::one(),
            Generator::R => x.beta = Scalar::one(),
        }
        x
    }

    pub fn h(n: usize, i: usize) -> Self {
        Element::generator(n, Generator::H(i))
    }

    pub fn r(n: usize) -> Self {
        Element::generator(n, Generator::R)
    }

    /// Element from its `n+1` coordinates `(α_1, …, α_n, β)`.
    pub fn from_coords(coords: &[Scalar]) -> Self {
        let (beta, alpha) = coords.split_last().expect("at least the r coordinate");
        Element { alpha: alpha.to_vec(), beta: beta.clone() }
    }

    pub fn coords(&self) -> Vec<Scalar> {
        let mut v = self.alpha.clone();
        v.push(self.beta.clone());
        v
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[Scalar] {
        &self.alpha
    }

    pub fn beta(&self) -> &Scalar {
        &self.beta
    }

    pub fn coefficient(&self, g: Generator) -> &Scalar {
        match g {
            Generator::H(i) => &self.alpha[i],
            Generator::R => &self.beta,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.beta.is_zero() && matrix::is_zero_vec(&self.alpha)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element { alpha: matrix::add_vec(&self.alpha, &other.alpha), beta: &self.beta + &other.beta }
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element { alpha: matrix::sub_vec(&self.alpha, &other.alpha), beta: &self.beta - &other.beta }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element { alpha: matrix::scale_vec(&self.alpha, s), beta: &self.beta * s }
    }

    /// Rescaled so the first nonzero coordinate is 1.
    pub fn normalized(&self) -> Element {
        Element::from_coords(&matrix::normalize_vec(&self.coords()))
    }

    /// Human-readable linear combination, e.g. `1/2 h1 - r`.
    pub fn display(&self) -> String {
        crate::expr::format_element(self)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// An EACP given by its structural constants. Immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra {
    m: StructuralMatrix,
    field: Field,
    label: Option<String>,
}

impl Algebra {
    /// Builds the algebra with `h_i r = Σ a_ij h_j + b_i r`.
    pub fn new(a: Matrix, b: Vec<Scalar>) -> Result<Self> {
        let m = StructuralMatrix::new(a, b)?;
        let field = Field::infer(m.a.entries().chain(m.b.iter()))?;
        Ok(Algebra { m, field, label: None })
    }

    /// Builds the algebra over a declared field, embedding every entry.
    pub fn with_field(a: Matrix, b: Vec<Scalar>, field: Field) -> Result<Self> {
        let rows = a
            .to_rows()
            .into_iter()
            .map(|row| row.iter().map(|x| field.embed(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let b = b.iter().map(|x| field.embed(x)).collect::<Result<Vec<_>>>()?;
        let m = StructuralMatrix::new(Matrix::from_rows(rows)?, b)?;
        Ok(Algebra { m, field, label: None })
    }

    pub fn from_rows(a: Vec<Vec<Scalar>>, b: Vec<Scalar>) -> Result<Self> {
        let n = b.len();
        if a.len() != n || a.iter().any(|row| row.len() != n) {
            return Err(EacpError::DimensionMismatch(format!(
                "A must be {n}x{n} to match b; got ragged or mis-sized rows"
            )));
        }
        Algebra::new(Matrix::from_rows(a)?, b)
    }

    /// Shorthand for rational data given as `(num, den)` pairs.
    pub fn from_ratios(a: &[&[(i64, i64)]], b: &[(i64, i64)]) -> Result<Self> {
        Algebra::from_rows(
            a.iter().map(|r| r.iter().map(|&(p, q)| Scalar::ratio(p, q)).collect()).collect(),
            b.iter().map(|&(p, q)| Scalar::ratio(p, q)).collect(),
        )
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of `h` generators.
    pub fn n(&self) -> usize {
        self.m.n()
    }

    /// Total dimension `n + 1`.
    pub fn dim(&self) -> usize {
        self.m.n() + 1
    }

    pub fn structural(&self) -> &StructuralMatrix {
        &self.m
    }

    pub fn a(&self) -> &Matrix {
        &self.m.a
    }

    pub fn b(&self) -> &[Scalar] {
        &self.m.b
    }

    pub fn generators(&self) -> Vec<Generator> {
        (0..self.n()).map(Generator::H).chain(std::iter::once(Generator::R)).collect()
    }

    pub fn element(&self, g: Generator) -> Element {
        Element::generator(self.n(), g)
    }

    pub fn check_generator(&self, g: Generator) -> Result<()> {
        match g {
            Generator::H(i) if i >= self.n() => Err(EacpError::IndexOutOfRange(format!(
                "h{} in an algebra with n = {}",
                i + 1,
                self.n()
            ))),
            _ => Ok(()),
        }
    }

    fn check(&self, x: &Element) -> Result<()> {
        if x.n() != self.n() {
            return Err(EacpError::DimensionMismatch(format!(
                "element has {} h-coordinates, algebra has n = {}",
                x.n(),
                self.n()
            )));
        }
        Ok(())
    }

    /// Product of `x = Σα_i h_i + βr` and `y = Σγ_i h_i + νr`:
    /// `Σ_i (α_i ν + β γ_i)(Σ_j a_ij h_j + b_i r)`.
    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        let w: Vec<Scalar> = x
            .alpha
            .iter()
            .zip(&y.alpha)
            .map(|(a, g)| a * &y.beta + &x.beta * g)
            .collect();
        Ok(self.combine_rows(&w))
    }

    /// `Σ_i w_i (h_i r)`.
    fn combine_rows(&self, w: &[Scalar]) -> Element {
        let alpha = self.m.a.vec_mul(w);
        let beta = matrix::dot(w, &self.m.b);
        Element { alpha, beta }
    }

    pub fn square(&self, x: &Element) -> Result<Element> {
        self.multiply(x, x)
    }

    /// `x^k = x^(k-1)·x`, `k ≥ 1`.
    pub fn principal_power(&self, x: &Element, k: u64) -> Result<Element> {
        self.check(x)?;
        if k == 0 {
            return Err(EacpError::InvalidArgument("principal power needs k ≥ 1 (no unit element)".into()));
        }
        let mut acc = x.clone();
        for _ in 1..k {
            if acc.is_zero() {
                break;
            }
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// `x^[1] = x·x`, `x^[m] = x^[m-1]·x^[m-1]`.
    pub fn plenary_power(&self, x: &Element, m: u64) -> Result<Element> {
        self.check(x)?;
        if m == 0 {
            return Err(EacpError::InvalidArgument("plenary power needs m ≥ 1".into()));
        }
        let mut acc = self.square(x)?;
        for _ in 1..m {
            if acc.is_zero() {
                break;
            }
            acc = self.square(&acc)?;
        }
        Ok(acc)
    }

    /// `R_a^m(x)` where `R_a(x) = x·a`.
    pub fn right_operator_iterate(&self, x: &Element, a: &Element, m: u64) -> Result<Element> {
        self.check(x)?;
        self.check(a)?;
        let mut acc = x.clone();
        for _ in 0..m {
            if acc.is_zero() {
                break;
            }
            acc = self.multiply(&acc, a)?;
        }
        Ok(acc)
    }

    /// Whether generator `g` occurs in `x` (nonzero coefficient).
    pub fn occurs(&self, x: &Element, g: Generator) -> Result<bool> {
        self.check(x)?;
        self.check_generator(g)?;
        Ok(!x.coefficient(g).is_zero())
    }

    /// Matrix `N` of `R_g` acting on row coordinate vectors: `x·g = x N`.
    pub fn right_operator_matrix(&self, g: Generator) -> Matrix {
        let dim = self.dim();
        let rows = (0..dim)
            .map(|k| {
                let basis = Element::from_coords(&matrix::unit(dim, k));
                self.multiply(&basis, &self.element(g)).expect("same algebra").coords()
            })
            .collect();
        Matrix::from_rows(rows).expect("square")
    }

    /// `dim C² = rank M`.
    pub fn derived_dimension(&self) -> usize {
        self.m.to_matrix().rank()
    }

    /// Re-expresses the algebra in a new basis.
    ///
    /// Row `k` of `p` gives the `k`-th new basis vector in old coordinates;
    /// the last row is the new `r`. Fails unless `p` is invertible and the
    /// new basis is natural.
    pub fn change_basis(&self, p: &Matrix) -> Result<Algebra> {
        let dim = self.dim();
        if p.rows() != dim || p.cols() != dim {
            return Err(EacpError::DimensionMismatch(format!("basis change must be {dim}x{dim}")));
        }
        let inv = p.inverse().ok_or(EacpError::DependentVectors)?;
        let new: Vec<Element> = (0..dim).map(|k| Element::from_coords(p.row(k))).collect();
        let (rp, hs) = new.split_last().expect("dim ≥ 1");
        for (i, hi) in hs.iter().enumerate() {
            for (j, hj) in hs.iter().enumerate().skip(i) {
                let prod = self.multiply(hi, hj)?;
                if !prod.is_zero() {
                    return Err(EacpError::NotNaturalBasis(format!(
                        "h{}'·h{}' = {} ≠ 0",
                        i + 1,
                        j + 1,
                        prod
                    )));
                }
            }
        }
        let rr = self.square(rp)?;
        if !rr.is_zero() {
            return Err(EacpError::NotNaturalBasis(format!("r'·r' = {rr} ≠ 0")));
        }
        let mut a_rows = Vec::with_capacity(dim - 1);
        let mut b = Vec::with_capacity(dim - 1);
        for hi in hs {
            let prod = self.multiply(hi, rp)?;
            let mut c = inv.vec_mul(&prod.coords());
            b.push(c.pop().expect("r coordinate"));
            a_rows.push(c);
        }
        let mut out = Algebra::new(Matrix::from_rows(a_rows)?, b)?;
        out.field = self.field;
        out.label = self.label.clone();
        Ok(out)
    }
}
