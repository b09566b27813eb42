from .metric import *
from .mesh import *
from .lsc import *
from .region import *
from .cover import *
from . import exceptions

del metric
del mesh
del lsc
del region
del cover
