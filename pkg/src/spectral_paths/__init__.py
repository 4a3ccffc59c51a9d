"""Spectral decomposition of level-l vertex-model paths and their characters."""
from ._kernels import BACKEND
from .qz_series import BivariateSeries, QSeries, ZLaurent, chi, q_binomial, q_pochhammer
from .spectral import SpectralKey, Spectrum, decode, encode
from .vertex_paths import FinitePath, ModelParams, SpinConfig, energy, weight

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BivariateSeries",
    "QSeries",
    "ZLaurent",
    "chi",
    "q_binomial",
    "q_pochhammer",
    "SpectralKey",
    "Spectrum",
    "decode",
    "encode",
    "FinitePath",
    "ModelParams",
    "SpinConfig",
    "energy",
    "weight",
]
