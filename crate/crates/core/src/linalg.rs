//! Dense rank-revealing kernels shared by the subspace code.

use crate::algebra::{CMatrix, C64, ZERO};
use crate::subspace::TolerancePolicy;

/// Orthonormal basis of a column range together with the rank decision.
pub(crate) struct RankReveal {
    pub basis: CMatrix,
    /// True when some singular value sits within a factor 10 of the cutoff.
    pub banded: bool,
}

fn cutoff(tol: &TolerancePolicy, reference: f64) -> f64 {
    (tol.rel * reference).max(tol.abs)
}

fn in_band(s: f64, cut: f64) -> bool {
    s > cut / 10.0 && s < cut * 10.0
}

/// Thin SVD `m = U Σ V*` with singular values sorted descending.
///
/// The matrix is first reduced by a Householder QR of its taller
/// orientation, and the SVD runs on the square triangular factor. Called
/// directly on sparse, heavily clustered inputs, both nalgebra's and faer's
/// SVD were seen to report spurious singular values; the QR step removes
/// that failure mode, and callers certify the result anyway.
struct Svd {
    u: CMatrix,
    s: Vec<f64>,
    v: CMatrix,
}

fn to_faer(m: &CMatrix) -> faer::Mat<C64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn thin_svd(m: &CMatrix) -> Svd {
    let (r, c) = m.shape();
    let tall = r >= c;
    let fm = if tall { to_faer(m) } else { to_faer(&m.adjoint()) };
    // fm = Q R with R square, so m = Q R or m = R* Q*
    let qr = fm.qr();
    let q = qr.compute_thin_Q();
    let rf = if tall { qr.thin_R().to_owned() } else { qr.thin_R().adjoint().to_owned() };
    let svd = rf.thin_svd().expect("SVD converges on finite input");
    let (su, ss, sv) = (svd.U(), svd.S(), svd.V());
    let k = ss.dim();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| ss[b].re.total_cmp(&ss[a].re));
    let small_u = CMatrix::from_fn(k, k, |i, x| su[(i, order[x])]);
    let small_v = CMatrix::from_fn(k, k, |i, x| sv[(i, order[x])]);
    let qn = CMatrix::from_fn(q.nrows(), q.ncols(), |i, j| q[(i, j)]);
    let (u, v) = if tall { (&qn * small_u, small_v) } else { (small_u, &qn * small_v) };
    Svd { u, s: order.iter().map(|&x| ss[x].re).collect(), v }
}

/// Singular values of `m`, sorted descending.
pub(crate) fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    thin_svd(m).s
}

pub(crate) fn spectral_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Orthonormal basis of `range(m)`. Singular values at or below
/// `max(rel · max(σ_max, scale_floor), abs)` are treated as zero.
pub(crate) fn orthonormal_range(m: &CMatrix, tol: &TolerancePolicy, scale_floor: f64) -> RankReveal {
    let d = m.nrows();
    if d == 0 || m.ncols() == 0 {
        return RankReveal { basis: CMatrix::zeros(d, 0), banded: false };
    }
    let svd = thin_svd(m);
    let reference = svd.s.first().copied().unwrap_or(0.0).max(scale_floor);
    let cut = cutoff(tol, reference);
    let banded = svd.s.iter().any(|&x| in_band(x, cut));
    let kept = svd.s.iter().take_while(|&&x| x > cut).count();
    let basis = svd.u.columns(0, kept).into_owned();
    // Every kept direction must carry its claimed gain, and nothing of m may
    // be left outside the kept range beyond the cutoff.
    let gains = basis.ad_mul(m);
    let gain_ok = (0..kept).all(|k| (gains.row(k).norm() - svd.s[k]).abs() <= cut);
    let leftover = m - &basis * gains;
    let range_ok = (0..m.ncols()).all(|j| leftover.column(j).norm() <= 10.0 * cut);
    RankReveal { basis, banded: banded || !gain_ok || !range_ok }
}

/// Orthonormal basis of the orthogonal complement of the orthonormal
/// columns `q`: the trailing columns of a full Householder `Q` of `q`.
pub(crate) fn complement(q: &CMatrix) -> CMatrix {
    let (d, r) = q.shape();
    let k = d.saturating_sub(r);
    if k == 0 {
        return CMatrix::zeros(d, 0);
    }
    if r == 0 {
        return CMatrix::identity(d, d);
    }
    let full = to_faer(q).qr().compute_Q();
    CMatrix::from_fn(d, k, |i, j| full[(i, r + j)])
}

/// Orthonormal basis of `ker m` (columns live in the domain of `m`).
pub(crate) fn kernel(m: &CMatrix, tol: &TolerancePolicy) -> (CMatrix, bool) {
    let n = m.ncols();
    if m.nrows() == 0 {
        return (CMatrix::identity(n, n), false);
    }
    let rows = orthonormal_range(&m.adjoint(), tol, 0.0);
    (complement(&rows.basis), rows.banded)
}

/// Kernel of a tall matrix whose columns are expressed against an
/// orthonormal frame; singular values are compared against `reference`.
pub(crate) fn kernel_small(m: &CMatrix, tol: &TolerancePolicy, reference: f64) -> (CMatrix, bool) {
    let r = m.ncols();
    if r == 0 {
        return (CMatrix::zeros(0, 0), false);
    }
    if m.nrows() < r {
        let (k, b) = kernel(m, tol);
        return (k, b);
    }
    // m is tall here, so the thin V is square
    let svd = thin_svd(m);
    let cut = cutoff(tol, reference);
    let banded = svd.s.iter().any(|&x| in_band(x, cut));
    let rank = svd.s.iter().take_while(|&&x| x > cut).count();
    let out = svd.v.columns(rank, r - rank).into_owned();
    let image = m * &out;
    let certified = (0..out.ncols()).all(|k| image.column(k).norm() <= 10.0 * cut);
    let banded = banded || !certified;
    (out, banded)
}

pub(crate) fn zero_matrix(rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_element(rows, cols, ZERO)
}
