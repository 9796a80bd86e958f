//! Small dense complex linear algebra: matrix aliases and a cyclic Jacobi
//! eigensolver for Hermitian matrices.

use nalgebra::{SMatrix, SVector};

use crate::{Error, Result, C64};

pub type CMat9 = SMatrix<C64, 9, 9>;
pub type CVec9 = SVector<C64, 9>;

/// Largest allowed `‖m − m†‖∞` (max-element) for eigensolver input.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Convergence threshold on the off-diagonal Frobenius norm, relative to
/// `‖m‖_F`.
pub const JACOBI_REL_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// `max |m_ij − conj(m_ji)|`.
pub fn hermiticity_error<const N: usize>(m: &SMatrix<C64, N, N>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..N {
        for j in i..N {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn trace<const N: usize>(m: &SMatrix<C64, N, N>) -> C64 {
    (0..N).map(|i| m[(i, i)]).sum()
}

/// `(m + m†)/2`.
pub fn hermitian_part<const N: usize>(m: &SMatrix<C64, N, N>) -> SMatrix<C64, N, N> {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

pub fn frobenius_norm<const N: usize>(m: &SMatrix<C64, N, N>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigenvalues (ascending) and matching orthonormal eigenvectors (columns).
#[derive(Debug, Clone)]
pub struct HermitianEigen<const N: usize> {
    pub values: [f64; N],
    pub vectors: SMatrix<C64, N, N>,
    pub sweeps: usize,
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues<const N: usize>(m: &SMatrix<C64, N, N>) -> Result<[f64; N]> {
    Ok(hermitian_eigen(m)?.values)
}

/// Cyclic complex Jacobi diagonalization.
///
/// Each rotation first removes the phase of the pivot `m_pq` and then applies
/// a real Jacobi rotation, so `m ← G† m G` with `G` unitary. Sweeps stop when
/// the off-diagonal Frobenius norm falls below `JACOBI_REL_TOL · ‖m‖_F`.
pub fn hermitian_eigen<const N: usize>(m: &SMatrix<C64, N, N>) -> Result<HermitianEigen<N>> {
    let herm = hermiticity_error(m);
    if !(herm < HERMITIAN_TOL) {
        return Err(Error::Contract(format!("matrix is not Hermitian: max |m - m^H| = {herm:e}")));
    }
    let mut a = hermitian_part(m);
    let mut v = SMatrix::<C64, N, N>::identity();
    let scale = frobenius_norm(&a);
    let target = JACOBI_REL_TOL * scale;

    let mut sweeps = 0;
    while off_diagonal_norm(&a) > target {
        if sweeps == JACOBI_MAX_SWEEPS {
            log::warn!("Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps");
            break;
        }
        sweeps += 1;
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let mut values = [0.0; N];
    let mut vectors = SMatrix::<C64, N, N>::zeros();
    for (slot, &k) in order.iter().enumerate() {
        values[slot] = a[(k, k)].re;
        vectors.set_column(slot, &v.column(k));
    }
    Ok(HermitianEigen { values, vectors, sweeps })
}

fn off_diagonal_norm<const N: usize>(a: &SMatrix<C64, N, N>) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate<const N: usize>(a: &mut SMatrix<C64, N, N>, v: &mut SMatrix<C64, N, N>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 { 1.0 / (tau + (1.0 + tau * tau).sqrt()) } else { -1.0 / (-tau + (1.0 + tau * tau).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // G = diag(1, conj(phase)) · [[c, s], [−s, c]] on the (p, q) plane.
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = phase.conj() * (-s);
    let g_qq = phase.conj() * c;

    // a ← a G
    for k in 0..N {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    // a ← G† a
    for k in 0..N {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..N {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}
