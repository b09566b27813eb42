from .angle import *
from .lsc import *
from .arcs import *
from . import exceptions

del angle
del lsc
del arcs
