from .strata import Strata
from .extraction import QuiverLoader
from .structures import FDAlgebra, Module, DirectSum, ModuleMap
from .stratification import Stratification
from .tilting import characteristic_tilting, characteristic_cotilting
from .ringel import ringel_dual, two_step_tilting
from .duality import verify_duality
from .fdim import fdim_report
