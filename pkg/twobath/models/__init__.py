from . import params
from . import modes
from . import kinematics
from . import kernels
from . import moments
from . import manifest
