"""
Dense complex-matrix kernel
"""
import logging
import numpy as np
from collections import namedtuple
from scipy import linalg
from ..tools import methods, messages

logger = logging.getLogger('pyhmt.handler')

DIM_CAP = 64


class Tolerance(namedtuple('Tolerance', ['rel', 'abs'])):
    """ Relative residual bound with an absolute floor

    The effective bound at scale s is max(abs, rel*s).
    """
    __slots__ = ()

    def __new__(cls, rel=1e-9, abs=1e-12):
        if rel < 0 or abs < 0:
            methods.raiseerror(messages.Errors.ConfigError,
                               'Tolerance must be nonnegative (rel={}, abs={})'.format(rel, abs))
        return super(Tolerance, cls).__new__(cls, float(rel), float(abs))

    def bound(self, scale):
        return max(self.abs, self.rel * float(scale))


DEFAULT_TOL = Tolerance()


def as_matrix(m, square=False):
    """ Validate and convert input to a complex 2-D array

    :param m:       array-like
    :param square:  require a square matrix
    :return: numpy.ndarray (complex128)
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or 0 in m.shape:
        methods.raiseerror(messages.Errors.ShapeMismatch,
                           'Matrix must be 2-D and nonempty, got shape {}'.format(m.shape))
    if max(m.shape) > DIM_CAP:
        methods.raiseerror(messages.Errors.DimensionCap,
                           'Matrix shape {} exceeds the cap {}'.format(m.shape, DIM_CAP))
    if not np.all(np.isfinite(m)):
        methods.raiseerror(messages.Errors.NonFinite, 'Matrix has NaN or Inf entries')
    if square and m.shape[0] != m.shape[1]:
        methods.raiseerror(messages.Errors.NotSquare,
                           'Square matrix is required, got shape {}'.format(m.shape))
    return m


def adj(m):
    return np.conj(np.transpose(m))


def fro_norm(m):
    return float(linalg.norm(m, 'fro'))


def op_norm(m):
    """ Operator norm (largest singular value)
    """
    return float(linalg.norm(m, 2))


def rel_residual(a, b):
    """ ||a - b||_F / max(||a||_F, ||b||_F, 1)
    """
    return fro_norm(a - b) / max(fro_norm(a), fro_norm(b), 1.0)


def hermitize(m):
    """ Symmetrize a square matrix as (M + M*)/2

    :param m: square matrix
    :return: Hermitian matrix
    """
    m = as_matrix(m, square=True)
    return (m + adj(m)) / 2


def check_hermitian(m, tol=DEFAULT_TOL):
    m = as_matrix(m, square=True)
    skew = fro_norm(m - adj(m))
    if skew > tol.bound(fro_norm(m)):
        methods.raiseerror(messages.Errors.NotHermitian,
                           'Matrix is not Hermitian (||M - M*||_F = {:.3e})'.format(skew))
    return m


def eig_hermitian(m, tol=DEFAULT_TOL):
    """ Eigendecomposition of a Hermitian matrix

    :param m:   Hermitian matrix (within tolerance)
    :param tol: Tolerance
    :return: (ascending eigenvalues, unitary eigenvectors)
    """
    m = check_hermitian(m, tol)
    w, u = linalg.eigh(hermitize(m))
    return w, u


def _spectral(u, values):
    return hermitize((u * values) @ adj(u))


def sqrt_psd(m, tol=DEFAULT_TOL):
    """ Unique positive square root of a positive semidefinite matrix

    Eigenvalues in [-tol*||M||, 0) are clamped to zero.

    :param m:   PSD matrix
    :param tol: Tolerance
    :return: PSD matrix R with R^2 = M
    """
    w, u = eig_hermitian(m, tol)
    scale = float(np.max(np.abs(w)))
    if w[0] < -tol.bound(scale):
        methods.raiseerror(messages.Errors.NotPositive,
                           'Matrix is not positive (lambda_min = {:.3e})'.format(w[0]), logger)
    if w[0] < 0:
        logger.debug('Spectral::Clamp lambda_min={:.3e} scale={:.3e}'.format(w[0], scale))
    return _spectral(u, np.sqrt(np.clip(w, 0, None)))


def inv_sqrt_pd(m, delta=0.05, tol=DEFAULT_TOL):
    """ Inverse square root of a well conditioned positive definite matrix

    :param m:       PD matrix with lambda_min >= delta*||M||
    :param delta:   conditioning floor
    :param tol:     Tolerance
    :return: PD matrix R with R M R = I
    """
    w, u = eig_hermitian(m, tol)
    scale = float(np.max(np.abs(w)))
    if w[0] <= 0 or w[0] < delta * scale:
        methods.raiseerror(messages.Errors.IllConditioned,
                           'lambda_min = {:.3e} is below the floor {} * {:.3e}'.format(w[0], delta, scale))
    return _spectral(u, 1.0 / np.sqrt(w))


def loewner_slack(a, b, tol=DEFAULT_TOL):
    """ lambda_min(B - A); A <= B in Loewner order iff the result is >= -tol*max(||A||, ||B||)

    :param a: Hermitian matrix
    :param b: Hermitian matrix of the same size
    :return: float
    """
    a = as_matrix(a, square=True)
    b = as_matrix(b, square=True)
    if a.shape != b.shape:
        methods.raiseerror(messages.Errors.ShapeMismatch,
                           'Size mismatch {} vs {}'.format(a.shape, b.shape))
    check_hermitian(a, tol)
    check_hermitian(b, tol)
    return float(linalg.eigvalsh(hermitize(b - a))[0])


def loewner_holds(a, b, tol=DEFAULT_TOL):
    scale = max(op_norm(a), op_norm(b))
    return loewner_slack(a, b, tol) >= -tol.bound(scale)


def complex_gaussian(shape, rng):
    """ Standard complex Gaussian array (E|z|^2 = 1)
    """
    rng = methods.as_rng(rng)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_unitary(n, seed):
    """ Haar distributed unitary by QR of a complex Ginibre matrix with phase fixing

    :param n:       dimension
    :param seed:    int seed (or numpy Generator)
    :return: n x n unitary
    """
    if int(n) != n or n < 1:
        methods.raiseerror(messages.Errors.ShapeMismatch, 'n must be a positive integer, got {}'.format(n))
    if n > DIM_CAP:
        methods.raiseerror(messages.Errors.DimensionCap, 'n = {} exceeds the cap {}'.format(n, DIM_CAP))
    z = complex_gaussian((int(n), int(n)), seed)
    q, r = linalg.qr(z)
    d = np.diag(r)
    ph = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1), 1)
    return q * ph


def random_isometry(rows, cols, seed):
    """ rows x cols matrix with orthonormal columns (rows >= cols)
    """
    if cols > rows:
        methods.raiseerror(messages.Errors.ShapeMismatch,
                           'Isometry needs rows >= cols, got {} x {}'.format(rows, cols))
    return random_unitary(rows, seed)[:, :cols]
