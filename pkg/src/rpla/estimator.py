"""scikit-learn style front end: fit a reversible PLA to a Boolean truth table."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .cost import cost_report
from .pla import MintermCover, PlaSpec, expand_to_minterms
from .simulate import run
from .synth import Backend, synthesize_cover


def _check_binary(a: np.ndarray, what: str) -> np.ndarray:
    if a.size and not np.isin(a, (0, 1)).all():
        raise ValueError(f"{what} must contain only 0 and 1")
    return a.astype(np.uint8)


class ReversiblePLA(ClassifierMixin, BaseEstimator):
    """Synthesise a reversible PLA whose outputs reproduce ``y`` on ``X``.

    Each row of ``X`` is an input vector (column 0 is input 0); every row
    with ``y[:, j] == 1`` becomes a minterm of output ``j``.  Input vectors
    that never appear in ``X`` are mapped to 0.

    Parameters
    ----------
    backend : {"mux", "fredkin"}
        Gate family for the AND and OR roles.
    full_plane : bool
        Build every minterm of the AND plane, not only the used ones.

    Attributes
    ----------
    netlist_ : Netlist
    cover_ : MintermCover
    cost_ : CostReport
    n_features_in_ : int
    n_outputs_ : int
    """

    def __init__(self, backend: str = "mux", full_plane: bool = False):
        self.backend = backend
        self.full_plane = full_plane

    def fit(self, X, y):
        X = _check_binary(check_array(X, dtype=None, ensure_min_features=1), "X")
        y = np.asarray(y)
        single = y.ndim == 1
        Y = _check_binary(check_array(y.reshape(-1, 1) if single else y, dtype=None), "y")
        if len(Y) != len(X):
            raise ValueError(f"X has {len(X)} rows but y has {len(Y)}")
        n = X.shape[1]
        index = np.zeros(len(X), dtype=np.int64)
        for col in range(n):
            index = (index << 1) | X[:, col]
        seen = {}
        for v, row in zip(index.tolist(), map(tuple, Y.tolist())):
            if seen.setdefault(v, row) != row:
                raise ValueError(f"input vector {v:0{n}b} is given conflicting outputs")
        sets = [frozenset(v for v, row in seen.items() if row[j]) for j in range(Y.shape[1])]
        return self._fit_cover(MintermCover(n, tuple(sets)), single)

    def fit_spec(self, spec: PlaSpec):
        """Fit directly from a parsed ``.pla`` specification."""
        return self._fit_cover(expand_to_minterms(spec), single=False)

    def _fit_cover(self, cover: MintermCover, single: bool):
        self.cover_ = cover
        self.netlist_ = synthesize_cover(cover, Backend(self.backend), self.full_plane)
        self.cost_ = cost_report(self.netlist_)
        self.n_features_in_ = cover.n
        self.n_outputs_ = cover.m
        self._single_output = single
        return self

    def predict(self, X):
        check_is_fitted(self, "netlist_")
        X = _check_binary(check_array(X, dtype=None), "X")
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        out = run(self.netlist_, X)
        return out[:, 0] if self._single_output else out
