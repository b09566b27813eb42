from .config import *
from . import exceptions

del config
