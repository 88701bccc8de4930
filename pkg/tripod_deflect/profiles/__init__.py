from tripod_deflect.profiles.gaussian import Gaussian
from tripod_deflect.profiles.laguerre import LaguerreGauss
