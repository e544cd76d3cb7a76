from .main import app, run
from .config import load_config, Tolerances
from .operator_core import HermitianOperator, spectral_decompose
from .projection_lattice import Projection
from .logic_order import logic_leq
from .supremum import sup_exists, supremum

__all__ = [
    "app",
    "run",
    "load_config",
    "Tolerances",
    "HermitianOperator",
    "Projection",
    "spectral_decompose",
    "logic_leq",
    "sup_exists",
    "supremum",
]
