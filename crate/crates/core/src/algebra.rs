//! Finite multi-matrix algebras `A = M_{n_1} × … × M_{n_k}` with a faithful
//! tracial state, their tensor squares, and the structural maps between them.
//!
//! Elements of `A ⊗ A` are stored as one flat coefficient array over the
//! matrix-unit basis `E^{(i)}_{ab} ⊗ E^{(j)}_{cd}`. Blocks are laid out by
//! lexicographic factor pair `(i, j)`; inside a block the index `(a, b, c, d)`
//! is row-major and zero-based. This ordering is the serialization order used
//! everywhere else in the crate.

use std::ops::{Add, AddAssign, Mul, Neg, Range, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A finite product of full matrix algebras together with the weights of
/// its tracial state `τ = Σ α_i τ_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Algebra {
    dims: Vec<usize>,
    weights: Vec<f64>,
    #[serde(skip)]
    elem_offsets: Vec<usize>,
    #[serde(skip)]
    pair_offsets: Vec<usize>,
}

impl Algebra {
    /// Builds `∏ M_{n_i}`. Weights default to uniform and are renormalized to
    /// sum exactly to 1 after validation.
    pub fn new(dims: &[usize], weights: Option<&[f64]>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::EmptyFactors);
        }
        if let Some(&bad) = dims.iter().find(|&&n| n == 0) {
            return Err(Error::NonPositiveDim(bad));
        }
        let k = dims.len();
        let weights = match weights {
            None => vec![1.0 / k as f64; k],
            Some(w) => {
                if w.len() != k {
                    return Err(Error::WeightCount { expected: k, got: w.len() });
                }
                if w.iter().any(|&x| x <= 0.0 || !x.is_finite()) {
                    return Err(Error::NonPositiveWeight);
                }
                let sum: f64 = w.iter().sum();
                if (sum - 1.0).abs() > 1e-9 {
                    return Err(Error::WeightSum(sum));
                }
                w.iter().map(|x| x / sum).collect()
            }
        };
        let mut elem_offsets = Vec::with_capacity(k + 1);
        let mut acc = 0;
        for &n in dims {
            elem_offsets.push(acc);
            acc += n * n;
        }
        elem_offsets.push(acc);
        let mut pair_offsets = Vec::with_capacity(k * k + 1);
        let mut acc = 0;
        for &ni in dims {
            for &nj in dims {
                pair_offsets.push(acc);
                acc += ni * ni * nj * nj;
            }
        }
        pair_offsets.push(acc);
        Ok(Self { dims: dims.to_vec(), weights, elem_offsets, pair_offsets })
    }

    /// Single matrix algebra `M_n` with its normalized trace.
    pub fn matrix(n: usize) -> Result<Self> {
        Self::new(&[n], None)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn num_factors(&self) -> usize {
        self.dims.len()
    }

    /// `D₁ = Σ n_i²`.
    pub fn element_dim(&self) -> usize {
        self.elem_offsets[self.dims.len()]
    }

    /// `D₂ = D₁²`.
    pub fn tensor_dim(&self) -> usize {
        self.pair_offsets[self.dims.len() * self.dims.len()]
    }

    pub fn block_range(&self, i: usize, j: usize) -> Range<usize> {
        let k = self.dims.len();
        let p = i * k + j;
        self.pair_offsets[p]..self.pair_offsets[p + 1]
    }

    /// `‖E^{(i)}_{ab} ⊗ E^{(j)}_{cd}‖²_τ = α_i α_j / (n_i n_j)`.
    pub fn block_weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i] * self.weights[j] / (self.dims[i] * self.dims[j]) as f64
    }

    /// Flat index of `E^{(i)}_{ab} ⊗ E^{(j)}_{cd}`.
    pub fn index(&self, i: usize, j: usize, a: usize, b: usize, c: usize, d: usize) -> usize {
        let (ni, nj) = (self.dims[i], self.dims[j]);
        self.block_range(i, j).start + ((a * ni + b) * nj + c) * nj + d
    }

    /// Per-coordinate factor `√w` turning the τ-inner product into the
    /// Euclidean one.
    pub(crate) fn coord_scales(&self) -> Vec<f64> {
        let k = self.dims.len();
        let mut out = Vec::with_capacity(self.tensor_dim());
        for i in 0..k {
            for j in 0..k {
                let s = self.block_weight(i, j).sqrt();
                out.extend(std::iter::repeat_n(s, self.block_range(i, j).len()));
            }
        }
        out
    }

    pub(crate) fn check_element(&self, x: &Element) -> Result<()> {
        if x.blocks.len() != self.dims.len()
            || x.blocks.iter().zip(&self.dims).any(|(b, &n)| b.nrows() != n || b.ncols() != n)
        {
            return Err(Error::ShapeMismatch(format!(
                "element does not conform to factor sizes {:?}",
                self.dims
            )));
        }
        Ok(())
    }

    pub(crate) fn check_tensor(&self, t: &Tensor) -> Result<()> {
        if t.dims != self.dims {
            return Err(Error::ShapeMismatch(format!(
                "tensor over {:?} used with algebra {:?}",
                t.dims, self.dims
            )));
        }
        Ok(())
    }

    /// `τ(x) = Σ α_i tr(x_i) / n_i`.
    pub fn trace(&self, x: &Element) -> Result<C64> {
        self.check_element(x)?;
        Ok(x.blocks
            .iter()
            .zip(&self.weights)
            .zip(&self.dims)
            .map(|((b, &w), &n)| b.trace() * (w / n as f64))
            .sum())
    }

    /// `⟨x|y⟩_τ`, conjugate-linear in `x`, extending
    /// `⟨a⊗b|c⊗d⟩ = τ(a*c) τ(b*d)`.
    pub fn inner(&self, x: &Tensor, y: &Tensor) -> Result<C64> {
        self.check_tensor(x)?;
        self.check_tensor(y)?;
        let k = self.dims.len();
        let mut acc = ZERO;
        for i in 0..k {
            for j in 0..k {
                let r = self.block_range(i, j);
                let s: C64 = x.coeffs[r.clone()]
                    .iter()
                    .zip(&y.coeffs[r])
                    .map(|(u, v)| u.conj() * v)
                    .sum();
                acc += s * self.block_weight(i, j);
            }
        }
        Ok(acc)
    }

    pub fn norm(&self, x: &Tensor) -> Result<f64> {
        Ok(self.inner(x, x)?.re.max(0.0).sqrt())
    }

    /// The simple tensor `a ⊗ b`.
    pub fn tensor(&self, a: &Element, b: &Element) -> Result<Tensor> {
        self.check_element(a)?;
        self.check_element(b)?;
        let mut t = Tensor::zeros(self);
        let k = self.dims.len();
        for i in 0..k {
            for j in 0..k {
                let (ni, nj) = (self.dims[i], self.dims[j]);
                let (ai, bj) = (&a.blocks[i], &b.blocks[j]);
                let mut idx = self.block_range(i, j).start;
                for r in 0..ni {
                    for s in 0..ni {
                        let x = ai[(r, s)];
                        for u in 0..nj {
                            for v in 0..nj {
                                t.coeffs[idx] = x * bj[(u, v)];
                                idx += 1;
                            }
                        }
                    }
                }
            }
        }
        Ok(t)
    }

    /// Multiplication `a ⊗ b ↦ ab`. Cross blocks `(i ≠ j)` vanish.
    pub fn mu(&self, t: &Tensor) -> Result<Element> {
        self.check_tensor(t)?;
        let mut out = Element::zero(self);
        for (i, &n) in self.dims.iter().enumerate() {
            let base = self.block_range(i, i).start;
            let blk = &mut out.blocks[i];
            for a in 0..n {
                for b in 0..n {
                    for d in 0..n {
                        blk[(a, d)] += t.coeffs[base + ((a * n + b) * n + b) * n + d];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Opposite multiplication `a ⊗ b ↦ ba`.
    pub fn mu_op(&self, t: &Tensor) -> Result<Element> {
        self.check_tensor(t)?;
        let mut out = Element::zero(self);
        for (i, &n) in self.dims.iter().enumerate() {
            let base = self.block_range(i, i).start;
            let blk = &mut out.blocks[i];
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        blk[(c, b)] += t.coeffs[base + ((a * n + b) * n + c) * n + a];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `μ` (or `μ°`) from tensor coefficients to element
    /// coefficients, both in the canonical (unweighted) coordinates.
    pub fn multiplication_matrix(&self, opposite: bool) -> CMatrix {
        let mut m = CMatrix::zeros(self.element_dim(), self.tensor_dim());
        for (i, &n) in self.dims.iter().enumerate() {
            let e0 = self.elem_offsets[i];
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        for d in 0..n {
                            let col = self.index(i, i, a, b, c, d);
                            if !opposite && b == c {
                                m[(e0 + a * n + d, col)] += ONE;
                            }
                            if opposite && d == a {
                                m[(e0 + c * n + b, col)] += ONE;
                            }
                        }
                    }
                }
            }
        }
        m
    }

    /// Block representation of the enveloping algebra `A ⊗ A°`:
    /// `E_ab ⊗ E_cd ↦ E_ab ⊗ E_dc` acting on `C^{n_i} ⊗ C^{n_j}`, one square
    /// matrix of size `n_i n_j` per factor pair. This is an algebra
    /// isomorphism onto `⊕ End(C^{n_i} ⊗ C^{n_j})` intertwining adjoints.
    pub fn env_blocks(&self, t: &Tensor) -> Result<Vec<CMatrix>> {
        self.check_tensor(t)?;
        let k = self.dims.len();
        let mut out = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let (ni, nj) = (self.dims[i], self.dims[j]);
                let base = self.block_range(i, j).start;
                let mut m = CMatrix::zeros(ni * nj, ni * nj);
                for a in 0..ni {
                    for b in 0..ni {
                        for c in 0..nj {
                            for d in 0..nj {
                                m[(a * nj + d, b * nj + c)] =
                                    t.coeffs[base + ((a * ni + b) * nj + c) * nj + d];
                            }
                        }
                    }
                }
                out.push(m);
            }
        }
        Ok(out)
    }

    /// Inverse of [`Algebra::env_blocks`].
    pub fn from_env_blocks(&self, blocks: &[CMatrix]) -> Result<Tensor> {
        let k = self.dims.len();
        if blocks.len() != k * k {
            return Err(Error::ShapeMismatch(format!(
                "expected {} enveloping blocks, got {}",
                k * k,
                blocks.len()
            )));
        }
        let mut t = Tensor::zeros(self);
        for i in 0..k {
            for j in 0..k {
                let (ni, nj) = (self.dims[i], self.dims[j]);
                let m = &blocks[i * k + j];
                if m.nrows() != ni * nj || m.ncols() != ni * nj {
                    return Err(Error::ShapeMismatch(format!("enveloping block ({i},{j})")));
                }
                let base = self.block_range(i, j).start;
                for a in 0..ni {
                    for b in 0..ni {
                        for c in 0..nj {
                            for d in 0..nj {
                                t.coeffs[base + ((a * ni + b) * nj + c) * nj + d] =
                                    m[(a * nj + d, b * nj + c)];
                            }
                        }
                    }
                }
            }
        }
        Ok(t)
    }

    /// Product in `A^e = A ⊗ A°`: `(a⊗b)(c⊗d) = ac ⊗ db`.
    pub fn env_mul(&self, s: &Tensor, t: &Tensor) -> Result<Tensor> {
        let bs = self.env_blocks(s)?;
        let bt = self.env_blocks(t)?;
        let prod: Vec<CMatrix> = bs.iter().zip(&bt).map(|(x, y)| x * y).collect();
        self.from_env_blocks(&prod)
    }

    /// Partial trace with the unnormalized trace `n_j τ_j` of each factor:
    /// `Right` sends `a ⊗ b ↦ a · tr(b)`, `Left` sends `a ⊗ b ↦ tr(a) · b`.
    /// On a single factor `M_n` the right version is `id ⊗ nτ`.
    pub fn partial_trace(&self, t: &Tensor, side: Side) -> Result<Element> {
        self.check_tensor(t)?;
        let k = self.dims.len();
        let mut out = Element::zero(self);
        for i in 0..k {
            for j in 0..k {
                let (ni, nj) = (self.dims[i], self.dims[j]);
                let base = self.block_range(i, j).start;
                match side {
                    Side::Right => {
                        let blk = &mut out.blocks[i];
                        for a in 0..ni {
                            for b in 0..ni {
                                for c in 0..nj {
                                    blk[(a, b)] += t.coeffs[base + ((a * ni + b) * nj + c) * nj + c];
                                }
                            }
                        }
                    }
                    Side::Left => {
                        let blk = &mut out.blocks[j];
                        for a in 0..ni {
                            for c in 0..nj {
                                for d in 0..nj {
                                    blk[(c, d)] += t.coeffs[base + ((a * ni + a) * nj + c) * nj + d];
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn devectorize(&self, coeffs: Vec<C64>) -> Result<Tensor> {
        if coeffs.len() != self.tensor_dim() {
            return Err(Error::WrongLength { expected: self.tensor_dim(), got: coeffs.len() });
        }
        Ok(Tensor { dims: self.dims.clone(), coeffs })
    }

    /// Basis tensor `E^{(i)}_{ab} ⊗ E^{(j)}_{cd}`.
    pub fn unit_tensor(&self, i: usize, j: usize, a: usize, b: usize, c: usize, d: usize) -> Result<Tensor> {
        let k = self.dims.len();
        if i >= k || j >= k || a >= self.dims[i] || b >= self.dims[i] || c >= self.dims[j] || d >= self.dims[j] {
            return Err(Error::IndexOutOfRange(format!("unit tensor ({i},{j};{a},{b},{c},{d})")));
        }
        let mut t = Tensor::zeros(self);
        t.coeffs[self.index(i, j, a, b, c, d)] = ONE;
        Ok(t)
    }

    /// Weighted coordinates `√w ⊙ t`, in which `⟨−|−⟩_τ` is Euclidean.
    pub fn to_scaled(&self, t: &Tensor) -> Result<CVector> {
        self.check_tensor(t)?;
        let scales = self.coord_scales();
        Ok(CVector::from_iterator(
            t.coeffs.len(),
            t.coeffs.iter().zip(&scales).map(|(c, s)| c * *s),
        ))
    }

    pub fn from_scaled(&self, v: &[C64]) -> Result<Tensor> {
        if v.len() != self.tensor_dim() {
            return Err(Error::WrongLength { expected: self.tensor_dim(), got: v.len() });
        }
        let scales = self.coord_scales();
        let coeffs = v.iter().zip(&scales).map(|(c, s)| c / *s).collect();
        Ok(Tensor { dims: self.dims.clone(), coeffs })
    }
}

/// An element of `A`: one square block per factor.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    blocks: Vec<CMatrix>,
}

impl Element {
    pub fn zero(alg: &Algebra) -> Self {
        Self { blocks: alg.dims.iter().map(|&n| CMatrix::zeros(n, n)).collect() }
    }

    pub fn identity(alg: &Algebra) -> Self {
        Self { blocks: alg.dims.iter().map(|&n| CMatrix::identity(n, n)).collect() }
    }

    pub fn from_blocks(alg: &Algebra, blocks: Vec<CMatrix>) -> Result<Self> {
        let x = Self { blocks };
        alg.check_element(&x)?;
        Ok(x)
    }

    /// Matrix unit `e_{ab}` of factor `i` (zero-based).
    pub fn unit(alg: &Algebra, i: usize, a: usize, b: usize) -> Result<Self> {
        if i >= alg.num_factors() || a >= alg.dims[i] || b >= alg.dims[i] {
            return Err(Error::IndexOutOfRange(format!("matrix unit e_({a},{b}) of factor {i}")));
        }
        let mut x = Self::zero(alg);
        x.blocks[i][(a, b)] = ONE;
        Ok(x)
    }

    /// Embeds a single `n_i × n_i` matrix into factor `i`.
    pub fn in_factor(alg: &Algebra, i: usize, m: CMatrix) -> Result<Self> {
        if i >= alg.num_factors() {
            return Err(Error::IndexOutOfRange(format!("factor {i}")));
        }
        let mut x = Self::zero(alg);
        if m.shape() != x.blocks[i].shape() {
            return Err(Error::ShapeMismatch(format!("block for factor {i}")));
        }
        x.blocks[i] = m;
        Ok(x)
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &CMatrix {
        &self.blocks[i]
    }

    pub fn adjoint(&self) -> Self {
        Self { blocks: self.blocks.iter().map(|b| b.adjoint()).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { blocks: self.blocks.iter().map(|b| b * s).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.blocks.iter().map(|b| b.norm_squared()).sum::<f64>().sqrt()
    }

    /// `1 − self`.
    pub fn complement(&self) -> Self {
        Self {
            blocks: self
                .blocks
                .iter()
                .map(|b| CMatrix::identity(b.nrows(), b.ncols()) - b)
                .collect(),
        }
    }

    /// Coefficients in factor order, each block row-major.
    pub fn to_vec(&self) -> Vec<C64> {
        let mut out = Vec::new();
        for b in &self.blocks {
            for r in 0..b.nrows() {
                for c in 0..b.ncols() {
                    out.push(b[(r, c)]);
                }
            }
        }
        out
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CMatrix, &CMatrix) -> CMatrix) -> Self {
        assert_eq!(self.blocks.len(), other.blocks.len(), "element shape mismatch");
        Self { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect() }
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.zip_with(rhs, |a, b| a * b)
    }
}

/// An element of `A ⊗ A` in matrix-unit coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    dims: Vec<usize>,
    coeffs: Vec<C64>,
}

impl Tensor {
    pub fn zeros(alg: &Algebra) -> Self {
        Self { dims: alg.dims.clone(), coeffs: vec![ZERO; alg.tensor_dim()] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [C64] {
        &mut self.coeffs
    }

    pub fn vectorize(&self) -> Vec<C64> {
        self.coeffs.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    /// Unweighted Euclidean norm of the coefficient array.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    fn pair_starts(&self) -> Vec<usize> {
        let mut starts = Vec::with_capacity(self.dims.len() * self.dims.len());
        let mut acc = 0;
        for &ni in &self.dims {
            for &nj in &self.dims {
                starts.push(acc);
                acc += ni * ni * nj * nj;
            }
        }
        starts
    }

    /// Tensorand swap `σ(a ⊗ b) = b ⊗ a`.
    pub fn flip(&self) -> Self {
        let k = self.dims.len();
        let starts = self.pair_starts();
        let mut out = vec![ZERO; self.coeffs.len()];
        for i in 0..k {
            for j in 0..k {
                let (ni, nj) = (self.dims[i], self.dims[j]);
                let src = starts[i * k + j];
                let dst = starts[j * k + i];
                for a in 0..ni {
                    for b in 0..ni {
                        for c in 0..nj {
                            for d in 0..nj {
                                out[dst + ((c * nj + d) * ni + a) * ni + b] =
                                    self.coeffs[src + ((a * ni + b) * nj + c) * nj + d];
                            }
                        }
                    }
                }
            }
        }
        Self { dims: self.dims.clone(), coeffs: out }
    }

    /// Leg-wise adjoint `(a ⊗ b)* = a* ⊗ b*`, the involution of `A ⊗ A°`.
    pub fn adjoint(&self) -> Self {
        let k = self.dims.len();
        let starts = self.pair_starts();
        let mut out = vec![ZERO; self.coeffs.len()];
        for i in 0..k {
            for j in 0..k {
                let (ni, nj) = (self.dims[i], self.dims[j]);
                let base = starts[i * k + j];
                for a in 0..ni {
                    for b in 0..ni {
                        for c in 0..nj {
                            for d in 0..nj {
                                out[base + ((b * ni + a) * nj + d) * nj + c] =
                                    self.coeffs[base + ((a * ni + b) * nj + c) * nj + d].conj();
                            }
                        }
                    }
                }
            }
        }
        Self { dims: self.dims.clone(), coeffs: out }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { dims: self.dims.clone(), coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// `self += s · other`.
    pub fn axpy(&mut self, s: C64, other: &Tensor) {
        assert_eq!(self.dims, other.dims, "tensor shape mismatch");
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *x += s * y;
        }
    }

    /// Largest coefficient difference.
    pub fn max_abs_diff(&self, other: &Tensor) -> f64 {
        assert_eq!(self.dims, other.dims, "tensor shape mismatch");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    fn zip_with(&self, other: &Tensor, f: impl Fn(C64, C64) -> C64) -> Tensor {
        assert_eq!(self.dims, other.dims, "tensor shape mismatch");
        Tensor {
            dims: self.dims.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| f(*x, *y)).collect(),
        }
    }
}

impl Add for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        self.zip_with(rhs, |x, y| x + y)
    }
}

impl Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        self.zip_with(rhs, |x, y| x - y)
    }
}

impl Add for Tensor {
    type Output = Tensor;
    fn add(self, rhs: Tensor) -> Tensor {
        &self + &rhs
    }
}

impl Sub for Tensor {
    type Output = Tensor;
    fn sub(self, rhs: Tensor) -> Tensor {
        &self - &rhs
    }
}

impl AddAssign<&Tensor> for Tensor {
    fn add_assign(&mut self, rhs: &Tensor) {
        self.axpy(ONE, rhs);
    }
}

impl Neg for &Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        self.scale(-ONE)
    }
}

impl Mul<C64> for &Tensor {
    type Output = Tensor;
    fn mul(self, s: C64) -> Tensor {
        self.scale(s)
    }
}

impl Mul<f64> for &Tensor {
    type Output = Tensor;
    fn mul(self, s: f64) -> Tensor {
        self.scale(C64::new(s, 0.0))
    }
}
