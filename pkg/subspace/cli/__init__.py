from .main import CurveGrid, build_parser, cmd_constants, cmd_curves, main, run
