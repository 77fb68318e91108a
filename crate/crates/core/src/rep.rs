//! The conjugation action of `∏ U(n_i)` on `A ⊗ A`, through the derivations
//! `D_E(a ⊗ b) = [E, a] ⊗ b + a ⊗ [E, b]` of the complexified Lie algebra.
//!
//! The group is connected, so invariants and invariant subspaces of the
//! group action coincide with those of the derivations. Haar averaging is
//! therefore exact orthogonal projection onto the joint kernel.

use std::fmt;

use crate::algebra::{Algebra, CMatrix, Element, Side, Tensor, C64, ZERO};
use crate::error::{Error, Result};
use crate::linalg;
use crate::qrel::{kernel_subspace, KernelKind};
use crate::subspace::{Subspace, TolerancePolicy};

/// Residual below which a vector counts as annihilated or as an eigenvector.
pub const WEIGHT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Torus,
    Raising,
    Lowering,
}

/// The matrix unit `E_{row,col}` of factor `factor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Generator {
    pub factor: usize,
    pub row: usize,
    pub col: usize,
    pub kind: GeneratorKind,
}

impl Generator {
    /// `E_{c,c+1}`.
    pub fn is_simple_raising(&self) -> bool {
        self.kind == GeneratorKind::Raising && self.col == self.row + 1
    }

    /// `E_{c,c+1}` or `E_{c+1,c}`. These generate every `sl(n_i)` as a Lie
    /// algebra, and the identities act trivially on `A ⊗ A`.
    pub fn is_simple_root(&self) -> bool {
        self.is_simple_raising() || (self.kind == GeneratorKind::Lowering && self.row == self.col + 1)
    }
}

/// All `Σ n_i²` derivations `D_E`, one per matrix unit of `⊕ gl(n_i)`.
#[derive(Clone, Debug)]
pub struct DerivationSet {
    alg: Algebra,
    generators: Vec<Generator>,
}

impl DerivationSet {
    pub fn new(alg: &Algebra) -> Self {
        let mut generators = Vec::new();
        for (factor, &n) in alg.dims().iter().enumerate() {
            for row in 0..n {
                for col in 0..n {
                    let kind = match row.cmp(&col) {
                        std::cmp::Ordering::Equal => GeneratorKind::Torus,
                        std::cmp::Ordering::Less => GeneratorKind::Raising,
                        std::cmp::Ordering::Greater => GeneratorKind::Lowering,
                    };
                    generators.push(Generator { factor, row, col, kind });
                }
            }
        }
        Self { alg: alg.clone(), generators }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn of_kind(&self, kind: GeneratorKind) -> impl Iterator<Item = &Generator> {
        self.generators.iter().filter(move |g| g.kind == kind)
    }

    pub fn apply(&self, g: &Generator, t: &Tensor) -> Result<Tensor> {
        if t.dims() != self.alg.dims() {
            return Err(Error::ShapeMismatch(format!("tensor over {:?} used with algebra {:?}", t.dims(), self.alg.dims())));
        }
        let mut out = Tensor::zeros(&self.alg);
        self.apply_into(g, t.coeffs(), out.coeffs_mut());
        Ok(out)
    }

    /// `D_E` on a raw coefficient array. Every `D_E` preserves the blocks of
    /// `A ⊗ A`, so it acts identically on weighted coordinates.
    pub(crate) fn apply_into(&self, g: &Generator, x: &[C64], out: &mut [C64]) {
        out.fill(ZERO);
        let dims = self.alg.dims();
        let (f, r, c) = (g.factor, g.row, g.col);
        for i in 0..dims.len() {
            for j in 0..dims.len() {
                if i != f && j != f {
                    continue;
                }
                let (ni, nj) = (dims[i], dims[j]);
                let base = self.alg.block_range(i, j).start;
                let at = |a: usize, b: usize, p: usize, q: usize| base + ((a * ni + b) * nj + p) * nj + q;
                if i == f {
                    // E·e_ab = δ_{c,a} e_rb and e_ab·E = δ_{b,r} e_ac
                    for m in 0..ni {
                        for p in 0..nj {
                            for q in 0..nj {
                                out[at(r, m, p, q)] += x[at(c, m, p, q)];
                                out[at(m, c, p, q)] -= x[at(m, r, p, q)];
                            }
                        }
                    }
                }
                if j == f {
                    for a in 0..ni {
                        for b in 0..ni {
                            for m in 0..nj {
                                out[at(a, b, r, m)] += x[at(a, b, c, m)];
                                out[at(a, b, m, c)] -= x[at(a, b, m, r)];
                            }
                        }
                    }
                }
            }
        }
    }

    fn apply_columns(&self, g: &Generator, basis: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(basis.nrows(), basis.ncols());
        let mut buf = vec![ZERO; basis.nrows()];
        for col in 0..basis.ncols() {
            let x: Vec<C64> = basis.column(col).iter().copied().collect();
            self.apply_into(g, &x, &mut buf);
            out.column_mut(col).copy_from_slice(&buf);
        }
        out
    }
}

/// Torus weight of the matrix-unit tensor at flat index `idx`.
fn unit_weight(alg: &Algebra, idx: usize) -> Vec<Vec<i64>> {
    let dims = alg.dims();
    let mut w: Vec<Vec<i64>> = dims.iter().map(|&n| vec![0; n]).collect();
    for i in 0..dims.len() {
        for j in 0..dims.len() {
            let range = alg.block_range(i, j);
            if !range.contains(&idx) {
                continue;
            }
            let (ni, nj) = (dims[i], dims[j]);
            let off = idx - range.start;
            let (d, rest) = (off % nj, off / nj);
            let (c, rest) = (rest % nj, rest / nj);
            let (b, a) = (rest % ni, rest / ni);
            w[i][a] += 1;
            w[i][b] -= 1;
            w[j][c] += 1;
            w[j][d] -= 1;
            return w;
        }
    }
    unreachable!("index inside the tensor square")
}

/// `∩_E ker D_E`: the vectors fixed by the conjugation action.
pub fn invariant_subspace(alg: &Algebra, tol: TolerancePolicy) -> Result<Subspace> {
    tol.validate()?;
    let d = alg.tensor_dim();
    // Torus generators are diagonal on matrix-unit tensors, so their joint
    // kernel is spanned by the weight-zero units.
    let zero_weight: Vec<usize> = (0..d).filter(|&x| unit_weight(alg, x).iter().flatten().all(|&v| v == 0)).collect();
    let mut basis = CMatrix::zeros(d, zero_weight.len());
    for (c, &x) in zero_weight.iter().enumerate() {
        basis[(x, c)] = C64::new(1.0, 0.0);
    }
    let ops = DerivationSet::new(alg);
    let mut banded = false;
    for g in ops.generators().iter().filter(|g| g.kind != GeneratorKind::Torus) {
        if basis.ncols() == 0 {
            break;
        }
        let image = ops.apply_columns(g, &basis);
        let (k, b) = linalg::kernel_small(&image, &tol, 1.0);
        banded |= b;
        basis = &basis * k;
    }
    Ok(Subspace::from_orthonormal(alg, basis, tol, banded))
}

/// Haar average of `t` over `∏ U(n_i)`, i.e. its orthogonal projection onto
/// the invariants.
pub fn haar_average(alg: &Algebra, t: &Tensor, tol: TolerancePolicy) -> Result<Tensor> {
    invariant_subspace(alg, tol)?.project(t)
}

/// Smallest derivation-invariant subspace containing `v`.
pub fn orbit_span(alg: &Algebra, v: &Tensor, tol: TolerancePolicy) -> Result<Subspace> {
    if v.is_zero() {
        return Err(Error::Precondition("orbit span of the zero tensor".into()));
    }
    let ops = DerivationSet::new(alg);
    let simple: Vec<&Generator> = ops.generators().iter().filter(|g| g.is_simple_root()).collect();
    let mut sub = Subspace::span(alg, std::slice::from_ref(v), tol)?;
    let mut frontier = sub.scaled_basis().clone();
    // Images of already-swept vectors are in the span, so each sweep only
    // needs the vectors added by the previous one.
    while frontier.ncols() > 0 {
        let mut images = Vec::with_capacity(frontier.ncols() * simple.len());
        for &g in &simple {
            let m = ops.apply_columns(g, &frontier);
            for c in 0..m.ncols() {
                let col: Vec<C64> = m.column(c).iter().copied().collect();
                images.push(alg.from_scaled(&col)?);
            }
        }
        let before = sub.dim();
        let added = sub.extend(&images)?;
        frontier = sub.scaled_basis().columns(before, added).into_owned();
    }
    Ok(sub)
}

/// Per-factor torus weights `λ^{(i)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub per_factor: Vec<Vec<i64>>,
}

impl Weight {
    pub fn single(lambda: Vec<i64>) -> Self {
        Self { per_factor: vec![lambda] }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .per_factor
            .iter()
            .map(|w| format!("({})", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// The simultaneous eigenvalues of the torus derivations `D_{E_cc}` on `v`,
/// or `None` when `v` is not a weight vector.
pub fn weight_of(alg: &Algebra, v: &Tensor) -> Result<Option<Weight>> {
    if v.is_zero() {
        return Err(Error::Precondition("weight of the zero tensor".into()));
    }
    let ops = DerivationSet::new(alg);
    let norm2: f64 = v.coeffs().iter().map(|c| c.norm_sqr()).sum();
    let norm = norm2.sqrt();
    let mut per_factor: Vec<Vec<i64>> = alg.dims().iter().map(|&n| vec![0; n]).collect();
    for g in ops.of_kind(GeneratorKind::Torus) {
        let dv = ops.apply(g, v)?;
        let lambda: C64 = v.coeffs().iter().zip(dv.coeffs()).map(|(x, y)| x.conj() * y).sum::<C64>() / norm2;
        let residual: f64 = v
            .coeffs()
            .iter()
            .zip(dv.coeffs())
            .map(|(x, y)| (y - lambda * x).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let rounded = lambda.re.round();
        if residual > WEIGHT_TOL * norm || (lambda - C64::new(rounded, 0.0)).norm() > WEIGHT_TOL {
            return Ok(None);
        }
        per_factor[g.factor][g.row] = rounded as i64;
    }
    Ok(Some(Weight { per_factor }))
}

/// True iff every simple raising derivation annihilates the weight vector
/// `v`.
pub fn is_highest_weight(alg: &Algebra, v: &Tensor) -> Result<bool> {
    if weight_of(alg, v)?.is_none() {
        return Err(Error::NotWeightVector);
    }
    let ops = DerivationSet::new(alg);
    let norm = v.coeff_norm();
    for g in ops.generators().iter().filter(|g| g.is_simple_raising()) {
        if ops.apply(g, v)?.coeff_norm() >= WEIGHT_TOL * norm {
            return Ok(false);
        }
    }
    Ok(true)
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Dimension `Π_{i<j} (λ_i − λ_j + j − i)/(j − i)` of the irreducible
/// `U(n)`-representation with highest weight `λ`.
pub fn weyl_dim(lambda: &[i64]) -> Result<u128> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NonMonotoneWeight(lambda.to_vec()));
    }
    let (mut num, mut den) = (1u128, 1u128);
    let n = lambda.len();
    for i in 0..n {
        for j in i + 1..n {
            let top = (lambda[i] as i128 - lambda[j] as i128 + (j - i) as i128) as u128;
            let bottom = (j - i) as u128;
            num = num.checked_mul(top).ok_or(Error::Overflow("weyl dimension"))?;
            den = den.checked_mul(bottom).ok_or(Error::Overflow("weyl dimension"))?;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    debug_assert_eq!(den, 1);
    Ok(num / den)
}

/// A highest-weight vector for one of the bulk summands of `g ⊗ g` inside
/// `M_n ⊗ M_n`.
#[derive(Clone, Debug)]
pub struct HighestWeightVector {
    pub label: &'static str,
    /// Lies in the flip-symmetric part.
    pub symmetric: bool,
    pub vector: Tensor,
    pub weight: Vec<i64>,
}

/// The bulk highest-weight vectors applicable at `n`: `g^(2)` for `n ≥ 2`,
/// the two wedge summands for `n ≥ 3` and `g^(1²)` for `n ≥ 4`.
pub fn bulk_highest_weight_vectors(alg: &Algebra) -> Result<Vec<HighestWeightVector>> {
    if alg.num_factors() != 1 {
        return Err(Error::Precondition("bulk highest-weight vectors need a single factor".into()));
    }
    let n = alg.dims()[0];
    let e = |a: usize, b: usize, c: usize, d: usize| alg.unit_tensor(0, 0, a - 1, b - 1, c - 1, d - 1);
    let weight = |entries: &[(usize, i64)]| {
        let mut w = vec![0i64; n];
        for &(at, v) in entries {
            w[at - 1] += v;
        }
        w
    };
    let mut out = Vec::new();
    if n >= 2 {
        out.push(HighestWeightVector {
            label: "g(2)",
            symmetric: true,
            vector: e(1, n, 1, n)?,
            weight: weight(&[(1, 2), (n, -2)]),
        });
    }
    if n >= 4 {
        // The two symmetrized pairs have the same image under E_12 and
        // E_{n-1,n}, so only their difference is killed by the raising operators.
        let v = e(1, n - 1, 2, n)? + e(2, n, 1, n - 1)? - e(1, n, 2, n - 1)? - e(2, n - 1, 1, n)?;
        out.push(HighestWeightVector {
            label: "g(1^2)",
            symmetric: true,
            vector: v,
            weight: weight(&[(1, 1), (2, 1), (n - 1, -1), (n, -1)]),
        });
    }
    if n >= 3 {
        out.push(HighestWeightVector {
            label: "g(1^2,2)",
            symmetric: false,
            vector: e(1, n, 1, n - 1)? - e(1, n - 1, 1, n)?,
            weight: weight(&[(1, 2), (n - 1, -1), (n, -1)]),
        });
        out.push(HighestWeightVector {
            label: "g(2,1^2)",
            symmetric: false,
            vector: e(1, n, 2, n)? - e(2, n, 1, n)?,
            weight: weight(&[(1, 1), (2, 1), (n, -2)]),
        });
    }
    Ok(out)
}

/// Flip eigenspace of `ker μ ∩ ker μ°`.
pub fn joint_part(alg: &Algebra, sign: i32, tol: TolerancePolicy) -> Result<Subspace> {
    kernel_subspace(alg, KernelKind::Joint, tol)?.involution_eigenspace(|t| t.flip(), sign)
}

/// The invariant vectors inside `ker μ ∩ ker μ°`.
pub fn invariant_line(alg: &Algebra, tol: TolerancePolicy) -> Result<Subspace> {
    invariant_subspace(alg, tol)?.intersect(&kernel_subspace(alg, KernelKind::Joint, tol)?)
}

/// The copy of the adjoint representation `g` inside the `sign`-part of
/// `ker μ ∩ ker μ°`: the orthogonal complement there of the kernel of the
/// right partial trace, with the invariant line removed.
pub fn g_summand(alg: &Algebra, sign: i32, tol: TolerancePolicy) -> Result<Subspace> {
    let part = joint_part(alg, sign, tol)?;
    let traced: Vec<Vec<C64>> = part
        .basis_tensors()
        .iter()
        .map(|t| alg.partial_trace(t, Side::Right).map(|x| x.to_vec()))
        .collect::<Result<_>>()?;
    let rows = alg.element_dim();
    let m = CMatrix::from_fn(rows, traced.len(), |r, c| traced[c][r]);
    let reference = linalg::spectral_norm(&m).max(1.0);
    let (ker, banded) = linalg::kernel_small(&m, &tol, reference);
    let detected = linalg::complement(&ker);
    let seen = part.scaled_basis() * detected;
    let located = Subspace::from_orthonormal(alg, seen, tol, banded || part.is_inconclusive());
    let invariants = invariant_subspace(alg, tol)?;
    located.intersect(&invariants.orthogonal_complement())
}

/// `‖μ(D_E t) − [E, μ(t)]‖_F` for the given generator.
pub fn mu_equivariance_residual(ops: &DerivationSet, g: &Generator, t: &Tensor) -> Result<f64> {
    let alg = ops.algebra();
    let lhs = alg.mu(&ops.apply(g, t)?)?;
    let e = Element::unit(alg, g.factor, g.row, g.col)?;
    let m = alg.mu(t)?;
    let rhs = &(&e * &m) - &(&m * &e);
    Ok((&lhs - &rhs).frobenius_norm())
}
