from .fd import *
from .graph import *
from . import exceptions

del fd
del graph
