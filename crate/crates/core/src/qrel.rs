//! Quantum-relation constructions: projections and their inequality tensors
//! `m_p = p ⊗ (1 − p)`, the multiplication kernels, the saturated span of the
//! `m_p`, embedded block subspaces and the special elements used by the
//! constructive lemmas.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{Algebra, CMatrix, Element, Tensor, C64, ONE};
use crate::error::{Error, Result};
use crate::subspace::{Subspace, TolerancePolicy};

/// A self-adjoint idempotent of `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection(Element);

impl Projection {
    pub const DEFAULT_TOL: f64 = 1e-9;

    pub fn new(alg: &Algebra, p: Element) -> Result<Self> {
        Self::with_tolerance(alg, p, Self::DEFAULT_TOL)
    }

    /// Accepts `p` when `‖p² − p‖_F` and `‖p* − p‖_F` are both below `tol`.
    pub fn with_tolerance(alg: &Algebra, p: Element, tol: f64) -> Result<Self> {
        alg.check_element(&p)?;
        let (idempotence, adjoint) = Self::residuals(&p);
        if idempotence >= tol || adjoint >= tol {
            return Err(Error::InvalidProjection { idempotence, adjoint });
        }
        Ok(Self(p))
    }

    /// `(‖p² − p‖_F, ‖p* − p‖_F)`.
    pub fn residuals(p: &Element) -> (f64, f64) {
        ((&(p * p) - p).frobenius_norm(), (&p.adjoint() - p).frobenius_norm())
    }

    pub fn element(&self) -> &Element {
        &self.0
    }

    /// `1 − p`.
    pub fn complement(&self) -> Projection {
        Projection(self.0.complement())
    }
}

fn check_subset(alg: &Algebra, s: &[usize]) -> Result<()> {
    if let Some(&bad) = s.iter().find(|&&i| i >= alg.num_factors()) {
        return Err(Error::IndexOutOfRange(format!("factor {bad} (algebra has {})", alg.num_factors())));
    }
    Ok(())
}

/// Support projection `1_S`: the identity on the factors in `S`, zero
/// elsewhere.
pub fn subset_support(alg: &Algebra, s: &[usize]) -> Result<Projection> {
    check_subset(alg, s)?;
    let blocks = alg
        .dims()
        .iter()
        .enumerate()
        .map(|(i, &n)| if s.contains(&i) { CMatrix::identity(n, n) } else { CMatrix::zeros(n, n) })
        .collect();
    Ok(Projection(Element::from_blocks(alg, blocks)?))
}

fn subset_from_mask(k: usize, mask: u64) -> Vec<usize> {
    (0..k).filter(|i| mask >> i & 1 == 1).collect()
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of `diag(R)` moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let g = CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * scale, im * scale)
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for c in 0..n {
        let d = r[(c, c)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        for x in 0..n {
            q[(x, c)] *= phase;
        }
    }
    q
}

fn rank_projector(u: &CMatrix, rank: usize) -> CMatrix {
    let n = u.nrows();
    if rank == 0 {
        return CMatrix::zeros(n, n);
    }
    if rank == n {
        return CMatrix::identity(n, n);
    }
    let v = u.columns(0, rank);
    let p = v * v.adjoint();
    (&p + p.adjoint()) * C64::new(0.5, 0.0)
}

/// `U diag(1^{r_i}, 0) U*` per factor with Haar-random `U`.
pub fn random_projection<R: Rng + ?Sized>(alg: &Algebra, ranks: &[usize], rng: &mut R) -> Result<Projection> {
    if ranks.len() != alg.num_factors() {
        return Err(Error::ShapeMismatch(format!("{} ranks for {} factors", ranks.len(), alg.num_factors())));
    }
    let mut blocks = Vec::with_capacity(ranks.len());
    for (&r, &n) in ranks.iter().zip(alg.dims()) {
        if r > n {
            return Err(Error::RankOutOfRange { rank: r, size: n });
        }
        let u = haar_unitary(n, rng);
        blocks.push(rank_projector(&u, r));
    }
    Ok(Projection(Element::from_blocks(alg, blocks)?))
}

/// The quantum-inequality tensor `m_p = p ⊗ (1 − p)`.
pub fn m_p(alg: &Algebra, p: &Projection) -> Result<Tensor> {
    alg.tensor(p.element(), &p.element().complement())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelKind {
    Mu,
    MuOp,
    Joint,
}

/// `ker μ`, `ker μ°` or `ker μ ∩ ker μ°`.
pub fn kernel_subspace(alg: &Algebra, which: KernelKind, tol: TolerancePolicy) -> Result<Subspace> {
    match which {
        KernelKind::Mu => Subspace::kernel_of(alg, &alg.multiplication_matrix(false), tol),
        KernelKind::MuOp => Subspace::kernel_of(alg, &alg.multiplication_matrix(true), tol),
        KernelKind::Joint => {
            let a = kernel_subspace(alg, KernelKind::Mu, tol)?;
            let b = kernel_subspace(alg, KernelKind::MuOp, tol)?;
            a.intersect(&b)
        }
    }
}

/// A reproducible stream of projections: a deterministic core (support
/// projections `1_S` and per-factor diagonal projections), then one
/// Haar-conjugated projection for every rank vector, then Haar-conjugated
/// projections of uniformly random ranks.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionFamily {
    pub seed: u64,
    /// Projections per saturation batch.
    pub batch: usize,
    /// Consecutive non-growing random batches before declaring saturation.
    pub stall_limit: usize,
    pub hard_cap: usize,
    /// Include the deterministic core. Turning this off leaves the
    /// rank sweep and the random tail.
    pub core: bool,
}

impl ProjectionFamily {
    /// Support projections are enumerated only up to this many factors.
    pub const MAX_CORE_FACTORS: usize = 10;

    pub fn new(seed: u64) -> Self {
        Self { seed, batch: 8, stall_limit: 25, hard_cap: 5000, core: true }
    }

    pub fn stream(&self, alg: &Algebra) -> ProjectionStream {
        let mut core = VecDeque::new();
        if self.core {
            let k = alg.num_factors();
            if k <= Self::MAX_CORE_FACTORS {
                for mask in 0..(1u64 << k) {
                    core.push_back(subset_support(alg, &subset_from_mask(k, mask)).expect("indices in range"));
                }
            }
            for (i, &n) in alg.dims().iter().enumerate() {
                if n > 12 {
                    continue;
                }
                for mask in 1..(1u64 << n) - 1 {
                    let mut m = CMatrix::zeros(n, n);
                    for a in subset_from_mask(n, mask) {
                        m[(a, a)] = ONE;
                    }
                    core.push_back(Projection(Element::in_factor(alg, i, m).expect("factor in range")));
                }
            }
        }
        ProjectionStream {
            alg: alg.clone(),
            core,
            sweep: Some(vec![0; alg.num_factors()]),
            rng: ChaCha8Rng::seed_from_u64(self.seed),
        }
    }
}

pub struct ProjectionStream {
    alg: Algebra,
    core: VecDeque<Projection>,
    sweep: Option<Vec<usize>>,
    rng: ChaCha8Rng,
}

impl ProjectionStream {
    /// True once the deterministic core and the rank sweep are exhausted.
    pub fn in_random_phase(&self) -> bool {
        self.core.is_empty() && self.sweep.is_none()
    }

    fn advance_sweep(&mut self) -> Option<Vec<usize>> {
        let current = self.sweep.take()?;
        let mut next = current.clone();
        let dims = self.alg.dims();
        let mut carry = true;
        for i in (0..next.len()).rev() {
            if !carry {
                break;
            }
            if next[i] < dims[i] {
                next[i] += 1;
                carry = false;
            } else {
                next[i] = 0;
            }
        }
        if !carry {
            self.sweep = Some(next);
        }
        Some(current)
    }
}

impl Iterator for ProjectionStream {
    type Item = Projection;

    fn next(&mut self) -> Option<Projection> {
        if let Some(p) = self.core.pop_front() {
            return Some(p);
        }
        let ranks = match self.advance_sweep() {
            Some(r) => r,
            None => self.alg.dims().iter().map(|&n| self.rng.random_range(0..=n)).collect(),
        };
        Some(random_projection(&self.alg, &ranks, &mut self.rng).expect("ranks within factor sizes"))
    }
}

#[derive(Clone, Debug)]
pub struct SaturationResult {
    pub subspace: Subspace,
    pub projections_used: usize,
    /// The stall rule fired before the hard cap.
    pub stalled: bool,
    pub seeds: Vec<u64>,
    /// Dimension reached by the deterministic core alone.
    pub core_dim: usize,
}

/// Incremental span of `generator(p)` over the projection stream until
/// `stall_limit` consecutive random batches add nothing or `hard_cap`
/// projections have been used.
pub fn saturate(
    alg: &Algebra,
    family: &ProjectionFamily,
    tol: TolerancePolicy,
    mut generator: impl FnMut(&Projection) -> Result<Vec<Tensor>>,
) -> Result<SaturationResult> {
    let mut stream = family.stream(alg);
    let mut sub = Subspace::zero(alg, tol);
    let mut used = 0;
    let mut stalls = 0;
    let mut core_dim = None;
    let batch = family.batch.max(1);
    while used < family.hard_cap {
        let random_batch = stream.in_random_phase();
        if random_batch && core_dim.is_none() {
            core_dim = Some(sub.dim());
        }
        let mut vectors = Vec::new();
        for _ in 0..batch.min(family.hard_cap - used) {
            let p = stream.next().expect("stream is infinite");
            vectors.extend(generator(&p)?);
            used += 1;
        }
        let gained = sub.extend(&vectors)?;
        if gained > 0 {
            stalls = 0;
        } else if random_batch {
            stalls += 1;
            if stalls >= family.stall_limit {
                break;
            }
        }
    }
    let stalled = stalls >= family.stall_limit;
    if !stalled {
        sub.mark_inconclusive();
    }
    Ok(SaturationResult {
        core_dim: core_dim.unwrap_or(sub.dim()),
        subspace: sub,
        projections_used: used,
        stalled,
        seeds: vec![family.seed],
    })
}

/// Saturated `span{m_p}`.
pub fn inq_span(alg: &Algebra, family: &ProjectionFamily, tol: TolerancePolicy) -> Result<SaturationResult> {
    saturate(alg, family, tol, |p| Ok(vec![m_p(alg, p)?]))
}

/// Basis of the traceless part `sl_{n_i}` of factor `i`: off-diagonal units
/// and `e_aa − e_{a+1,a+1}`.
pub fn traceless_basis(alg: &Algebra, i: usize) -> Result<Vec<Element>> {
    if i >= alg.num_factors() {
        return Err(Error::IndexOutOfRange(format!("factor {i}")));
    }
    let n = alg.dims()[i];
    let mut out = Vec::with_capacity(n * n - 1);
    for a in 0..n {
        for b in 0..n {
            if a != b {
                out.push(Element::unit(alg, i, a, b)?);
            }
        }
    }
    for a in 0..n.saturating_sub(1) {
        out.push(&Element::unit(alg, i, a, a)? - &Element::unit(alg, i, a + 1, a + 1)?);
    }
    Ok(out)
}

fn factor_basis(alg: &Algebra, i: usize) -> Result<Vec<Element>> {
    let n = alg.dims()[i];
    (0..n * n).map(|x| Element::unit(alg, i, x / n, x % n)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Full,
    Sym,
    Antisym,
}

/// Embedded copy of `A_i ⊗ A_j` (or `g_i ⊗ g_j` when `traceless`) in
/// `A ⊗ A`. For `Sym`/`Antisym` this is the `±`-part of the σ-invariant
/// space generated by it, i.e. of `V ⊗ W ⊕ W ⊗ V` when `i ≠ j`.
pub fn block_subspace(alg: &Algebra, i: usize, j: usize, traceless: bool, part: Part, tol: TolerancePolicy) -> Result<Subspace> {
    let k = alg.num_factors();
    if i >= k || j >= k {
        return Err(Error::IndexOutOfRange(format!("factor pair ({i},{j})")));
    }
    let (bi, bj) = if traceless {
        (traceless_basis(alg, i)?, traceless_basis(alg, j)?)
    } else {
        (factor_basis(alg, i)?, factor_basis(alg, j)?)
    };
    let mut vectors = Vec::with_capacity(bi.len() * bj.len());
    for x in &bi {
        for y in &bj {
            let t = alg.tensor(x, y)?;
            vectors.push(match part {
                Part::Full => t,
                Part::Sym => &t + &t.flip(),
                Part::Antisym => &t - &t.flip(),
            });
        }
    }
    Subspace::span(alg, &vectors, tol)
}

/// `1^±_{S|T} = 1_S ⊗ 1_T ± 1_T ⊗ 1_S`.
pub fn sym_unit(alg: &Algebra, s: &[usize], t: &[usize], sign: i32) -> Result<Tensor> {
    let one_s = subset_support(alg, s)?;
    let one_t = subset_support(alg, t)?;
    let a = alg.tensor(one_s.element(), one_t.element())?;
    let b = alg.tensor(one_t.element(), one_s.element())?;
    Ok(&a + &(&b * sign as f64))
}

/// Largest factor count accepted by [`io_element`].
pub const IO_MAX_FACTORS: usize = 20;

/// `IO_{i|j} = Σ_{|S∩{i,j}|=1} 1^+_{S|Ŝ} − Σ_{|S∩{i,j}|∈{0,2}} 1^+_{S|Ŝ}`
/// over all `S ⊆ I`.
pub fn io_element(alg: &Algebra, i: usize, j: usize) -> Result<Tensor> {
    let k = alg.num_factors();
    if i == j {
        return Err(Error::Precondition("IO element needs two distinct factors".into()));
    }
    if i >= k || j >= k {
        return Err(Error::IndexOutOfRange(format!("factor pair ({i},{j})")));
    }
    if k > IO_MAX_FACTORS {
        return Err(Error::Precondition(format!("IO element limited to {IO_MAX_FACTORS} factors, got {k}")));
    }
    // 1^+_{S|Ŝ} = Σ_{a∈S, b∉S} (1_a ⊗ 1_b + 1_b ⊗ 1_a); accumulate the
    // coefficient of each 1_a ⊗ 1_b over all subsets.
    let mut coeff = vec![0i64; k * k];
    for mask in 0u64..(1u64 << k) {
        let inside = (mask >> i & 1) + (mask >> j & 1);
        let sign = if inside == 1 { 1 } else { -1 };
        for a in 0..k {
            if mask >> a & 1 == 0 {
                continue;
            }
            for b in 0..k {
                if mask >> b & 1 == 1 {
                    continue;
                }
                coeff[a * k + b] += sign;
                coeff[b * k + a] += sign;
            }
        }
    }
    let mut out = Tensor::zeros(alg);
    for a in 0..k {
        for b in 0..k {
            let c = coeff[a * k + b];
            if c != 0 {
                let t = alg.tensor(subset_support(alg, &[a])?.element(), subset_support(alg, &[b])?.element())?;
                out.axpy(C64::new(c as f64, 0.0), &t);
            }
        }
    }
    Ok(out)
}

/// `δ_{p_S} = p_S ⊗ 1_Ŝ − 1_Ŝ ⊗ (1_S − p_S)` for `p` supported in `S`.
pub fn delta_ps(alg: &Algebra, s: &[usize], p: &Projection) -> Result<Tensor> {
    check_subset(alg, s)?;
    alg.check_element(p.element())?;
    for (i, b) in p.element().blocks().iter().enumerate() {
        if !s.contains(&i) && b.norm() > 1e-12 {
            return Err(Error::SupportViolation);
        }
    }
    let complement: Vec<usize> = (0..alg.num_factors()).filter(|i| !s.contains(i)).collect();
    let one_s = subset_support(alg, s)?;
    let one_c = subset_support(alg, &complement)?;
    let first = alg.tensor(p.element(), one_c.element())?;
    let second = alg.tensor(one_c.element(), &(one_s.element() - p.element()))?;
    Ok(&first - &second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ZERO;
    use crate::subspace::Verdict;

    fn is_zero_element(x: &Element) -> bool {
        x.blocks().iter().all(|b| b.iter().all(|c| *c == ZERO))
    }

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn subset_support_examples() {
        let a = Algebra::new(&[2, 3], None).unwrap();
        let p = subset_support(&a, &[0]).unwrap();
        assert_eq!(p.element().block(0), &CMatrix::identity(2, 2));
        assert_eq!(p.element().block(1), &CMatrix::zeros(3, 3));
        assert!(is_zero_element(subset_support(&a, &[]).unwrap().element()));
        assert_eq!(subset_support(&a, &[0, 1]).unwrap().element(), &Element::identity(&a));
        let q = subset_support(&a, &[1]).unwrap();
        assert_eq!(&(p.element() + q.element()), &Element::identity(&a));
        assert!(subset_support(&a, &[2]).is_err());
    }

    #[test]
    fn random_projection_examples() {
        let a = Algebra::new(&[2, 3], None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(is_zero_element(random_projection(&a, &[0, 0], &mut rng).unwrap().element()));
        assert_eq!(random_projection(&a, &[2, 3], &mut rng).unwrap().element(), &Element::identity(&a));
        assert!(matches!(random_projection(&a, &[3, 0], &mut rng), Err(Error::RankOutOfRange { .. })));
        for _ in 0..1000 {
            let p = random_projection(&a, &[1, 2], &mut rng).unwrap();
            let (idem, adj) = Projection::residuals(p.element());
            assert!(idem < 1e-12 && adj < 1e-12);
        }
        let mut r1 = ChaCha8Rng::seed_from_u64(99);
        let mut r2 = ChaCha8Rng::seed_from_u64(99);
        assert_eq!(
            random_projection(&a, &[1, 1], &mut r1).unwrap(),
            random_projection(&a, &[1, 1], &mut r2).unwrap()
        );
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..6 {
            let u = haar_unitary(n, &mut rng);
            assert!((u.adjoint() * &u - CMatrix::identity(n, n)).norm() < 1e-12);
        }
    }

    #[test]
    fn projection_validation() {
        let a = Algebra::matrix(2).unwrap();
        let half = Element::identity(&a).scale(C64::new(0.5, 0.0));
        assert!(matches!(Projection::new(&a, half), Err(Error::InvalidProjection { .. })));
        let e12 = Element::unit(&a, 0, 0, 1).unwrap();
        assert!(Projection::new(&a, e12).is_err());
    }

    #[test]
    fn m_p_examples() {
        let a = Algebra::matrix(2).unwrap();
        let one = Projection::new(&a, Element::identity(&a)).unwrap();
        assert!(m_p(&a, &one).unwrap().is_zero());
        assert!(m_p(&a, &one.complement()).unwrap().is_zero());
        let e11 = Projection::new(&a, Element::unit(&a, 0, 0, 0).unwrap()).unwrap();
        assert_eq!(m_p(&a, &e11).unwrap(), a.tensor(&Element::unit(&a, 0, 0, 0).unwrap(), &Element::unit(&a, 0, 1, 1).unwrap()).unwrap());
        let b = Algebra::new(&[2, 3], Some(&[0.4, 0.6])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let ranks = [rng.random_range(0..=2), rng.random_range(0..=3)];
            let p = random_projection(&b, &ranks, &mut rng).unwrap();
            let t = m_p(&b, &p).unwrap();
            assert!(b.mu(&t).unwrap().frobenius_norm() < 1e-12);
            assert!(b.mu_op(&t).unwrap().frobenius_norm() < 1e-12);
            assert!(t.flip().max_abs_diff(&m_p(&b, &p.complement()).unwrap()) < 1e-14);
        }
    }

    #[test]
    fn kernel_examples() {
        let m2 = Algebra::matrix(2).unwrap();
        assert_eq!(kernel_subspace(&m2, KernelKind::Mu, tol()).unwrap().dim(), 12);
        assert_eq!(kernel_subspace(&m2, KernelKind::MuOp, tol()).unwrap().dim(), 12);
        assert_eq!(kernel_subspace(&m2, KernelKind::Joint, tol()).unwrap().dim(), 9);
        let ab = Algebra::new(&[1, 1], None).unwrap();
        let joint = kernel_subspace(&ab, KernelKind::Joint, tol()).unwrap();
        let want = Subspace::span(&ab, &[sym_unit(&ab, &[0], &[1], 1).unwrap(), sym_unit(&ab, &[0], &[1], -1).unwrap()], tol()).unwrap();
        assert_eq!(joint.relate(&want).unwrap().verdict, Verdict::Equal);
    }

    #[test]
    fn family_stream_is_deterministic() {
        let a = Algebra::new(&[1, 2], None).unwrap();
        let f = ProjectionFamily::new(17);
        let x: Vec<Projection> = f.stream(&a).take(40).collect();
        let y: Vec<Projection> = f.stream(&a).take(40).collect();
        assert_eq!(x, y);
        let z: Vec<Projection> = ProjectionFamily::new(18).stream(&a).take(40).collect();
        assert_ne!(x, z);
    }

    #[test]
    fn inq_span_small_cases() {
        let m1 = Algebra::matrix(1).unwrap();
        let r = inq_span(&m1, &ProjectionFamily::new(1), tol()).unwrap();
        assert_eq!(r.subspace.dim(), 0);
        assert!(r.stalled);
        let ab = Algebra::new(&[1, 1], None).unwrap();
        let r = inq_span(&ab, &ProjectionFamily::new(1), tol()).unwrap();
        assert_eq!(r.subspace.dim(), 2);
    }

    #[test]
    fn block_subspace_examples() {
        let a = Algebra::new(&[2, 3], None).unwrap();
        assert_eq!(block_subspace(&a, 0, 1, true, Part::Full, tol()).unwrap().dim(), 24);
        let m2 = Algebra::matrix(2).unwrap();
        assert_eq!(block_subspace(&m2, 0, 0, true, Part::Antisym, tol()).unwrap().dim(), 3);
        assert_eq!(block_subspace(&m2, 0, 0, true, Part::Sym, tol()).unwrap().dim(), 6);
        let sym = block_subspace(&a, 0, 1, true, Part::Sym, tol()).unwrap();
        let anti = block_subspace(&a, 0, 1, true, Part::Antisym, tol()).unwrap();
        let both = block_subspace(&a, 0, 1, true, Part::Full, tol())
            .unwrap()
            .sum(&block_subspace(&a, 1, 0, true, Part::Full, tol()).unwrap())
            .unwrap();
        assert_eq!(sym.sum(&anti).unwrap().relate(&both).unwrap().verdict, Verdict::Equal);
        assert!(block_subspace(&a, 0, 2, true, Part::Full, tol()).is_err());
    }

    #[test]
    fn sym_unit_examples() {
        let a = Algebra::new(&[1, 1], None).unwrap();
        let u = sym_unit(&a, &[0], &[1], 1).unwrap();
        let e1 = subset_support(&a, &[0]).unwrap();
        let e2 = subset_support(&a, &[1]).unwrap();
        let want = &a.tensor(e1.element(), e2.element()).unwrap() + &a.tensor(e2.element(), e1.element()).unwrap();
        assert_eq!(u, want);
        assert!(sym_unit(&a, &[0, 1], &[0, 1], -1).unwrap().is_zero());
        assert_eq!(u.flip(), u);
    }

    #[test]
    fn io_element_errors_and_symmetry() {
        let a = Algebra::new(&[1, 2, 1], None).unwrap();
        assert!(io_element(&a, 1, 1).is_err());
        assert!(io_element(&a, 0, 3).is_err());
        let io = io_element(&a, 0, 2).unwrap();
        assert_eq!(io.flip(), io);
        let big = Algebra::new(&[1; 21], None).unwrap();
        assert!(io_element(&big, 0, 1).is_err());
    }

    #[test]
    fn io_matches_literal_subset_sum() {
        let a = Algebra::new(&[1, 2, 1, 1], None).unwrap();
        let k = a.num_factors();
        for (i, j) in [(0, 1), (1, 3)] {
            let mut want = Tensor::zeros(&a);
            for mask in 0u64..(1 << k) {
                let s = subset_from_mask(k, mask);
                let c: Vec<usize> = (0..k).filter(|x| !s.contains(x)).collect();
                let inside = s.contains(&i) as u8 + s.contains(&j) as u8;
                let sign = if inside == 1 { 1.0 } else { -1.0 };
                want.axpy(C64::new(sign, 0.0), &sym_unit(&a, &s, &c, 1).unwrap());
            }
            assert!(io_element(&a, i, j).unwrap().max_abs_diff(&want) < 1e-12);
        }
    }

    #[test]
    fn delta_ps_examples() {
        let a = Algebra::new(&[2, 2], None).unwrap();
        let p = Projection::new(&a, Element::unit(&a, 0, 0, 0).unwrap()).unwrap();
        let d = delta_ps(&a, &[0], &p).unwrap();
        let h = &Element::unit(&a, 0, 0, 0).unwrap() - &Element::unit(&a, 0, 1, 1).unwrap();
        let one2 = subset_support(&a, &[1]).unwrap();
        let hp = &a.tensor(&h, one2.element()).unwrap() + &a.tensor(one2.element(), &h).unwrap();
        assert!((a.inner(&d, &hp).unwrap() - C64::new(0.25, 0.0)).norm() < 1e-15);
        let full = subset_support(&a, &[0]).unwrap();
        assert_eq!(delta_ps(&a, &[0], &full).unwrap(), a.tensor(full.element(), one2.element()).unwrap());
        assert_eq!(delta_ps(&a, &[1], &p).unwrap_err(), Error::SupportViolation);
    }
}
