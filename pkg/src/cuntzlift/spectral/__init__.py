from .unitary import *
from .field import *
from .matching import *
from .counting import *
from .transfer import *
from . import exceptions

del unitary
del field
del matching
del counting
del transfer
