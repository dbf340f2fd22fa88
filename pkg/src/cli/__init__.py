from src.cli.document import Workspace, build_workspace, parse, serialize
from src.cli.dot import emit_dot, render
from src.cli.queries import Options
from src.cli.runner import run

__all__ = ["Options", "Workspace", "build_workspace", "emit_dot", "parse", "render", "run", "serialize"]
