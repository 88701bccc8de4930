from tripod_deflect.commands.chimap import ChiMap
from tripod_deflect.commands.divergence import Divergence
from tripod_deflect.commands.rays import Rays
from tripod_deflect.commands.spectrum import Spectrum
