"""Exact local models and combinatorics of singular SL(2,C) Hitchin fibres."""
from .germ import Germ, GermError, IndeterminateError, format_germ, parse_germ
from .local_higgs import GermMatrix2, HiggsError, LocalHiggsData
from .hecke_moduli import ChartId, EvenHeckeParam, HeckeError, HeckeParam
from .strata import HiggsDivisor, QDProfile
from .wps import WPSPoint

__version__ = "0.1.0"

__all__ = [
    "ChartId", "EvenHeckeParam", "Germ", "GermError", "GermMatrix2", "HeckeError",
    "HeckeParam", "HiggsDivisor", "HiggsError", "IndeterminateError",
    "LocalHiggsData", "QDProfile", "WPSPoint", "format_germ", "parse_germ",
]
