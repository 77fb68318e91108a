//! Linear subspaces of `A ⊗ A` under the τ-weighted inner product.
//!
//! A [`Subspace`] keeps an orthonormal basis in weighted coordinates
//! (`√w ⊙ coefficients`), where `⟨−|−⟩_τ` becomes the Euclidean inner
//! product. Every rank decision goes through an SVD with a relative cutoff;
//! singular values within a factor 10 of the cutoff mark the result
//! inconclusive instead of being silently resolved.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, CMatrix, CVector, Tensor, C64};
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    /// Relative singular-value cutoff.
    pub rel: f64,
    /// Absolute floor for the cutoff.
    pub abs: f64,
    /// Principal-angle threshold (radians) for subspace equality and
    /// membership.
    pub angle: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self { rel: 1e-9, abs: 1e-12, angle: 1e-7 }
    }
}

impl TolerancePolicy {
    pub fn new(rel: f64, abs: f64, angle: f64) -> Result<Self> {
        let t = Self { rel, abs, angle };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("rel", self.rel), ("abs", self.abs), ("angle", self.angle)] {
            if v <= 0.0 || !v.is_finite() {
                return Err(Error::Tolerance(format!("{name} must be positive, got {v}")));
            }
        }
        if self.rel >= 1e-3 {
            return Err(Error::Tolerance(format!("rel must be below 1e-3, got {}", self.rel)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    /// `U ⊂ W` strictly.
    Subset,
    /// `W ⊂ U` strictly.
    Superset,
    Incomparable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Equal => "equal",
            Verdict::Subset => "subset",
            Verdict::Superset => "superset",
            Verdict::Incomparable => "incomparable",
        };
        f.write_str(s)
    }
}

/// Outcome of comparing two subspaces.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Relation {
    pub dim_u: usize,
    pub dim_w: usize,
    /// Largest principal angle of `U` measured against `W`.
    pub angle_u_in_w: f64,
    /// Largest principal angle of `W` measured against `U`.
    pub angle_w_in_u: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: Algebra,
    basis: CMatrix,
    tol: TolerancePolicy,
    inconclusive: bool,
}

impl Subspace {
    pub fn zero(alg: &Algebra, tol: TolerancePolicy) -> Self {
        Self { ambient: alg.clone(), basis: CMatrix::zeros(alg.tensor_dim(), 0), tol, inconclusive: false }
    }

    pub fn full(alg: &Algebra, tol: TolerancePolicy) -> Self {
        let d = alg.tensor_dim();
        Self { ambient: alg.clone(), basis: CMatrix::identity(d, d), tol, inconclusive: false }
    }

    /// Rank-revealing orthonormalization of `vectors`.
    pub fn span(alg: &Algebra, vectors: &[Tensor], tol: TolerancePolicy) -> Result<Self> {
        let m = scaled_columns(alg, vectors)?;
        Ok(Self::from_scaled_range(alg, &m, tol, 0.0, false))
    }

    fn from_scaled_range(alg: &Algebra, m: &CMatrix, tol: TolerancePolicy, floor: f64, inherited: bool) -> Self {
        let rr = linalg::orthonormal_range(m, &tol, floor);
        Self { ambient: alg.clone(), basis: rr.basis, tol, inconclusive: inherited || rr.banded }
    }

    /// `ker M` for a matrix acting on canonical tensor coordinates.
    pub fn kernel_of(alg: &Algebra, m: &CMatrix, tol: TolerancePolicy) -> Result<Self> {
        if m.ncols() != alg.tensor_dim() {
            return Err(Error::WrongLength { expected: alg.tensor_dim(), got: m.ncols() });
        }
        let scales = alg.coord_scales();
        let mut ms = m.clone();
        for (c, s) in scales.iter().enumerate() {
            ms.column_mut(c).scale_mut(1.0 / s);
        }
        let (basis, banded) = linalg::kernel(&ms, &tol);
        Ok(Self { ambient: alg.clone(), basis, tol, inconclusive: banded })
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient(&self) -> &Algebra {
        &self.ambient
    }

    pub fn tolerance(&self) -> &TolerancePolicy {
        &self.tol
    }

    /// True when some rank decision on the way to this subspace fell in the
    /// tolerance band.
    pub fn is_inconclusive(&self) -> bool {
        self.inconclusive
    }

    /// Wraps columns that are already orthonormal in weighted coordinates.
    pub(crate) fn from_orthonormal(alg: &Algebra, basis: CMatrix, tol: TolerancePolicy, inconclusive: bool) -> Self {
        debug_assert_eq!(basis.nrows(), alg.tensor_dim());
        Self { ambient: alg.clone(), basis, tol, inconclusive }
    }

    pub(crate) fn mark_inconclusive(&mut self) {
        self.inconclusive = true;
    }

    /// Orthonormal basis in weighted coordinates, one column per vector.
    pub fn scaled_basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn basis_tensors(&self) -> Vec<Tensor> {
        (0..self.dim())
            .map(|c| {
                let col: Vec<C64> = self.basis.column(c).iter().copied().collect();
                self.ambient.from_scaled(&col).expect("basis column has ambient length")
            })
            .collect()
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    /// Adds `vectors` to the span and returns the dimension gained.
    ///
    /// Only the part of each vector orthogonal to the current basis is
    /// rank-tested; the cutoff is relative to the larger of 1 (when the basis
    /// is non-empty) and the largest input norm.
    pub fn extend(&mut self, vectors: &[Tensor]) -> Result<usize> {
        if vectors.is_empty() {
            return Ok(0);
        }
        let m = scaled_columns(&self.ambient, vectors)?;
        let mut floor = (0..m.ncols()).map(|c| m.column(c).norm()).fold(0.0, f64::max);
        if self.dim() > 0 {
            floor = floor.max(1.0);
        }
        let mut residual = m;
        for _ in 0..2 {
            if self.dim() > 0 {
                let coeffs = self.basis.ad_mul(&residual);
                residual -= &self.basis * coeffs;
            }
        }
        let rr = linalg::orthonormal_range(&residual, &self.tol, floor);
        self.inconclusive |= rr.banded;
        let added = rr.basis.ncols();
        if added > 0 {
            let mut basis = rr.basis;
            // one more pass keeps the joined basis orthonormal to working precision
            if self.dim() > 0 {
                let c = self.basis.ad_mul(&basis);
                basis -= &self.basis * c;
                for k in 0..basis.ncols() {
                    let n = basis.column(k).norm();
                    basis.column_mut(k).scale_mut(1.0 / n);
                }
            }
            let d = self.basis.nrows();
            let old = self.dim();
            let mut joined = CMatrix::zeros(d, old + added);
            joined.columns_mut(0, old).copy_from(&self.basis);
            joined.columns_mut(old, added).copy_from(&basis);
            self.basis = joined;
        }
        Ok(added)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let d = self.basis.nrows();
        let mut m = CMatrix::zeros(d, self.dim() + other.dim());
        m.columns_mut(0, self.dim()).copy_from(&self.basis);
        m.columns_mut(self.dim(), other.dim()).copy_from(&other.basis);
        let inherited = self.inconclusive || other.inconclusive;
        Ok(Self::from_scaled_range(&self.ambient, &m, self.tol, 1.0, inherited))
    }

    /// Orthogonal complement within `A ⊗ A`.
    pub fn orthogonal_complement(&self) -> Subspace {
        Self {
            ambient: self.ambient.clone(),
            basis: linalg::complement(&self.basis),
            tol: self.tol,
            inconclusive: self.inconclusive,
        }
    }

    /// `U ∩ W` as the null space of the stacked complement projectors
    /// `[(1 − P_U); (1 − P_W)]`.
    ///
    /// When both subspaces are small this is evaluated inside `U` as
    /// `ker((1 − P_W)|_U)`; when both are large it is evaluated as
    /// `(U^⊥ + W^⊥)^⊥`. Both are the same null space.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let d = self.basis.nrows();
        let inherited = self.inconclusive || other.inconclusive;
        let (cu, cw) = (d - self.dim(), d - other.dim());
        if cu + cw < self.dim().min(other.dim()) {
            let s = self.orthogonal_complement().sum(&other.orthogonal_complement())?;
            let mut out = s.orthogonal_complement();
            out.inconclusive |= inherited;
            return Ok(out);
        }
        let (small, big) = if self.dim() <= other.dim() { (self, other) } else { (other, self) };
        if small.dim() == 0 {
            return Ok(Self { ambient: self.ambient.clone(), basis: CMatrix::zeros(d, 0), tol: self.tol, inconclusive: inherited });
        }
        let residual = big.residual_of(&small.basis);
        let (null, banded) = linalg::kernel_small(&residual, &self.tol, 1.0);
        let basis = &small.basis * null;
        Ok(Self { ambient: self.ambient.clone(), basis, tol: self.tol, inconclusive: inherited || banded })
    }

    /// `(1 − P) m` for a block of weighted-coordinate columns.
    fn residual_of(&self, m: &CMatrix) -> CMatrix {
        if self.dim() == 0 {
            return m.clone();
        }
        let c = self.basis.ad_mul(m);
        m - &self.basis * c
    }

    /// Largest principal angle between the orthonormal columns `m` and this
    /// subspace.
    fn max_angle_of(&self, m: &CMatrix) -> f64 {
        if m.ncols() == 0 {
            return 0.0;
        }
        linalg::spectral_norm(&self.residual_of(m)).min(1.0).asin()
    }

    pub fn relate(&self, other: &Subspace) -> Result<Relation> {
        self.check_same(other)?;
        let angle_u_in_w = other.max_angle_of(&self.basis);
        let angle_w_in_u = self.max_angle_of(&other.basis);
        let thr = self.tol.angle;
        let u_in_w = angle_u_in_w < thr;
        let w_in_u = angle_w_in_u < thr;
        let verdict = match (u_in_w, w_in_u) {
            (true, true) if self.dim() == other.dim() => Verdict::Equal,
            (true, _) => Verdict::Subset,
            (_, true) => Verdict::Superset,
            _ => Verdict::Incomparable,
        };
        Ok(Relation { dim_u: self.dim(), dim_w: other.dim(), angle_u_in_w, angle_w_in_u, verdict })
    }

    /// Images of the basis under `map`, in weighted coordinates.
    pub(crate) fn image_columns(&self, map: impl Fn(&Tensor) -> Tensor) -> Result<CMatrix> {
        let images: Vec<Tensor> = self.basis_tensors().iter().map(map).collect();
        scaled_columns(&self.ambient, &images)
    }

    /// `{u ∈ U : J u = sign · u}` for an involution `J` preserving `U`.
    pub fn involution_eigenspace(&self, involution: impl Fn(&Tensor) -> Tensor, sign: i32) -> Result<Subspace> {
        if sign != 1 && sign != -1 {
            return Err(Error::Precondition(format!("sign must be ±1, got {sign}")));
        }
        let images = self.image_columns(involution)?;
        let leak = self.max_angle_of_unnormalized(&images);
        if leak >= self.tol.angle {
            return Err(Error::NotInvariant(leak));
        }
        let s = sign as f64;
        let m = (&self.basis + images * C64::new(s, 0.0)) * C64::new(0.5, 0.0);
        Ok(Self::from_scaled_range(&self.ambient, &m, self.tol, 1.0, self.inconclusive))
    }

    /// Leakage angle of arbitrary (not necessarily orthonormal) columns.
    fn max_angle_of_unnormalized(&self, m: &CMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        let r = self.residual_of(m);
        for c in 0..m.ncols() {
            let n = m.column(c).norm();
            if n > 0.0 {
                worst = worst.max((r.column(c).norm() / n).min(1.0).asin());
            }
        }
        worst
    }

    /// Orthogonal projection of `t` onto the subspace.
    pub fn project(&self, t: &Tensor) -> Result<Tensor> {
        let v = self.ambient.to_scaled(t)?;
        let p: CVector = if self.dim() == 0 { CVector::zeros(v.len()) } else { &self.basis * self.basis.ad_mul(&v) };
        self.ambient.from_scaled(p.as_slice())
    }

    /// `‖t − P t‖_τ / ‖t‖_τ` (zero for `t = 0`).
    pub fn membership_residual(&self, t: &Tensor) -> Result<f64> {
        let v = self.ambient.to_scaled(t)?;
        let n = v.norm();
        if n == 0.0 {
            return Ok(0.0);
        }
        let r = if self.dim() == 0 { v.clone() } else { &v - &self.basis * self.basis.ad_mul(&v) };
        Ok(r.norm() / n)
    }

    pub fn contains(&self, t: &Tensor) -> Result<bool> {
        Ok(self.membership_residual(t)? < self.tol.angle)
    }

    /// Gram matrix of the stored basis minus the identity, in spectral norm.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.basis.ad_mul(&self.basis) - CMatrix::identity(self.dim(), self.dim());
        linalg::spectral_norm(&g)
    }
}

pub(crate) fn scaled_columns(alg: &Algebra, vectors: &[Tensor]) -> Result<CMatrix> {
    let d = alg.tensor_dim();
    let scales = alg.coord_scales();
    let mut m = linalg::zero_matrix(d, vectors.len());
    for (c, t) in vectors.iter().enumerate() {
        if t.dims() != alg.dims() {
            return Err(Error::ShapeMismatch(format!("tensor over {:?} used with algebra {:?}", t.dims(), alg.dims())));
        }
        for (r, (x, s)) in t.coeffs().iter().zip(&scales).enumerate() {
            m[(r, c)] = x * *s;
        }
    }
    Ok(m)
}
