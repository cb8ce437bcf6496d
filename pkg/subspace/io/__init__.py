from .export import export_csv, export_json
from .matrix import read_matrix, write_matrix
