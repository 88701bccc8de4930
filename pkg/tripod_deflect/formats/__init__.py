from tripod_deflect.formats.csv import CSV
from tripod_deflect.formats.json import JSON
