"""scikit-learn style wrappers around the transform and the bentness analysis.

Rows of X are value tables on a fixed domain; GFunction objects are
accepted too.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .analysis import BentCertificate, analyze
from .validation import check_batch, check_domain, check_positive_int
from .walsh import walsh_full_fast


class _TableEstimator(BaseEstimator):
    def __init__(self, p: int = 3, k: int = 1, domain: str = "dot:1"):
        self.p = p
        self.k = k
        self.domain = domain

    def _validate_params(self) -> None:
        check_positive_int("p", self.p)
        check_positive_int("k", self.k)
        self.spec_ = check_domain(self.domain, self.p)
        self.n_features_in_ = self.spec_.size

    def _batch(self, X):
        if not hasattr(self, "spec_"):
            self._validate_params()
        return check_batch(X, self.p, self.k, self.spec_)


class WalshTransformer(TransformerMixin, _TableEstimator):
    """Maps each value table to its exact spectrum, flattened over the integral basis.

    Output row length is p^n * (p-1) * p^(k-1).
    """

    def fit(self, X=None, y=None):
        self._validate_params()
        if X is not None:
            self._batch(X)
        return self

    def transform(self, X):
        fs = self._batch(X)
        rows = [walsh_full_fast(f).table.reshape(-1) for f in fs]
        return np.stack(rows).astype(object if any(r.dtype == object for r in rows) else np.int64)


class BentAnalyzer(_TableEstimator):
    """fit stores the certificate of the first table; predict flags gbent rows."""

    def fit(self, X, y=None):
        self._validate_params()
        fs = self._batch(X)
        self.certificate_: BentCertificate = analyze(fs[0])
        self.dual_ = self.certificate_.dual() if self.certificate_.is_gbent else None
        return self

    def predict(self, X) -> np.ndarray:
        return np.array([analyze(f).is_gbent for f in self._batch(X)], dtype=bool)

    def transform(self, X) -> np.ndarray:
        """Dual tables; rows for non-gbent inputs are filled with -1."""
        out = []
        for f in self._batch(X):
            cert = analyze(f)
            out.append(cert.dual_values if cert.is_gbent else np.full(f.spec.size, -1, dtype=np.int64))
        return np.stack(out)
