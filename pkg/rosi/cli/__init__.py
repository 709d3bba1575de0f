from rosi.cli.app import main, run_query_command
from rosi.cli.repl import Session, repl_step

__all__ = ["Session", "main", "repl_step", "run_query_command"]
