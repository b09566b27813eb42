from .cuz import *
from .codomain import *
from .valuation import *
from .metrics import *
from .cauchy import *
from . import exceptions

del cuz
del codomain
del valuation
del metrics
del cauchy
