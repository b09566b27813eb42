import math
import os

from fractions import Fraction
from typing import Union

PathLike = Union[str, "os.PathLike[str]"]  #: File system path type.

Extended = Union[int, float]  #: A value in N u {inf}; only `math.inf` is a float.

Rational = Union[int, Fraction]  #: Exact rational input accepted by constructors.

INF = math.inf  #: The infinite value of N u {inf}.

__all__ = ["Extended", "INF", "PathLike", "Rational"]
