"""Median-based unit Rayleigh distribution toolkit."""
try:
    from . import _unitfit as _impl  # installed layout
except ImportError:  # in-tree builds put the extension on sys.path directly
    import _unitfit as _impl

__all__ = [
    "cdf",
    "dataset",
    "dataset_names",
    "describe",
    "fit",
    "fit_competitor",
    "gini",
    "gof",
    "hazard",
    "log_pdf",
    "mean_residual_life",
    "mode",
    "moments",
    "pdf",
    "quantile",
    "raw_moment",
    "renyi_entropy",
    "run_study",
    "sample",
    "stress_strength",
    "survival",
]

for _name in __all__:
    globals()[_name] = getattr(_impl, _name)
del _name
