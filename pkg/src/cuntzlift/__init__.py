from . import circle
from . import cli
from . import determinant
from . import graph
from . import lift
from . import morphisms
from . import schema
from . import spectral
from . import types
from .version import __version__

del version
