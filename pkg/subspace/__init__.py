from subspace.core import SubSpace
from subspace.core.env import configure, settings
from subspace.core.load import from_files, from_matrices
