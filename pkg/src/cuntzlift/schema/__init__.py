from .codec import *
from . import exceptions

del codec
