from subspace.cli.main import run

run()
