"""Finitely presented algebraic 2-theories, their free models, Kronecker
products and quasi-colimits of finite 2-diagrams."""
from importlib import resources

from .presentation import (
    Report, TermError, TheoryMorphismPresentation, TheoryPresentation, normal_form,
)
from .theories import THEORY_NAMES, build_theory, canonical_name, change_dimension

__version__ = "0.1.0"


def data_file(name: str) -> str:
    """Text of a shipped data file, e.g. ``"sMon.sexp"`` or ``"diagrams/point.sexp"``."""
    return resources.files(__name__).joinpath("data", name).read_text(encoding="utf-8")
