from .winding import *
from .demos import *
from ..morphisms.cuz import CuZElement, CuZKind
from . import exceptions

del winding
del demos
