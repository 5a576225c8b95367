"""Zero counting for entire functions given by power series.

Series live in :mod:`lpzeros.catalog`, are evaluated with certified tails by
:mod:`lpzeros.evaluator`, and their zeros are located on the real line
(:mod:`lpzeros.realroots`), counted in rectangles (:mod:`lpzeros.winding`)
and tested for Laguerre-Polya membership (:mod:`lpzeros.jensen`).
"""
from .catalog import SeriesSpec, build
from .evaluator import EvalResult, evaluate
from .numerics import Precision

__all__ = ["EvalResult", "Precision", "SeriesSpec", "build", "evaluate"]
__version__ = "0.1.0"
