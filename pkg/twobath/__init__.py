from .__version__ import __version__

from .utils import logging

from . import aws
from . import config
from . import models
from . import interfaces
from .models.params import QuadratureSpec, SystemParams
from .units import LabParameters, toNaturalUnits, paramsFromConfig
from .evolution import evaluateMoments, relaxationSeries, timeGrid
from .fdt import fdtVariance, steadyState, scanLambda, scanTemperature
