from . import errors
from . import serializing
