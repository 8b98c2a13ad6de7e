"""Finite-difference oracles shared by the gradient tests.

The checkers flatten a parameter container into one vector, perturb each
coordinate by +/-eps, and compare the central difference of the loss to
the analytic gradient.  They are deliberately independent of the gradient
code they verify: only the loss value is consumed.
"""

import numpy as np

from ddikg.kge import KgeParams
from ddikg.rc.head import _ARRAY_FIELDS, RcParams

EPS = 1e-5


def kge_params_to_vec(params: KgeParams) -> np.ndarray:
    parts = [params.entities.ravel()]
    if params.relations is not None:
        parts.append(params.relations.ravel())
    if params.relation_matrices is not None:
        parts.append(params.relation_matrices.ravel())
    return np.concatenate(parts)


def vec_to_kge_params(vec: np.ndarray, like: KgeParams) -> KgeParams:
    out = like.copy()
    i = 0
    for array in (out.entities, out.relations, out.relation_matrices):
        if array is None:
            continue
        n = array.size
        array[...] = vec[i : i + n].reshape(array.shape)
        i += n
    return out


def rc_params_to_vec(params: RcParams) -> np.ndarray:
    return np.concatenate([getattr(params, name).ravel() for name in _ARRAY_FIELDS])


def vec_to_rc_params(vec: np.ndarray, like: RcParams) -> RcParams:
    out = like.copy()
    i = 0
    for name in _ARRAY_FIELDS:
        array = getattr(out, name)
        n = array.size
        array[...] = vec[i : i + n].reshape(array.shape)
        i += n
    return out


def central_difference(loss_fn, x0: np.ndarray, eps: float = EPS) -> np.ndarray:
    grad = np.zeros_like(x0)
    for i in range(len(x0)):
        xp = x0.copy()
        xp[i] += eps
        xm = x0.copy()
        xm[i] -= eps
        grad[i] = (loss_fn(xp) - loss_fn(xm)) / (2 * eps)
    return grad


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    denom = max(np.linalg.norm(analytic), np.linalg.norm(numeric), 1e-12)
    return float(np.linalg.norm(analytic - numeric) / denom)
